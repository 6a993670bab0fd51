#include "robin/fields.hpp"

#include "robin/error.hpp"
#include "robin/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace robin {

BoundaryField BoundaryField::constant(double value)
{
    BoundaryField field;
    field.kind_ = Kind::constant;
    field.value_ = value;
    field.description_ = fmt::format("{:.17g}", value);
    return field;
}

BoundaryField BoundaryField::per_facet(std::vector<double> values)
{
    BoundaryField field;
    field.kind_ = Kind::per_facet;
    field.facet_values_ = std::move(values);
    field.description_ = "per_facet";
    return field;
}

BoundaryField BoundaryField::closure(ScalarFunction fn, std::string description)
{
    BoundaryField field;
    field.kind_ = Kind::closure;
    field.fn_ = std::move(fn);
    field.description_ = std::move(description);
    return field;
}

double BoundaryField::eval(std::size_t facet, const Point& p) const
{
    double value = 0.0;
    switch (kind_) {
    case Kind::constant: value = value_; break;
    case Kind::per_facet:
        if (facet >= facet_values_.size())
            throw Error(ErrorKind::invalid_argument,
                        fmt::format("facet {} outside per_facet table of size {}", facet,
                                    facet_values_.size()));
        value = facet_values_[facet];
        break;
    case Kind::closure: value = fn_(p); break;
    }
    if (!std::isfinite(value) || value < 0.0)
        throw Error(ErrorKind::invalid_coefficient,
                    fmt::format("beta = {} on facet {} (must be finite and >= 0)", value, facet));
    return value;
}

SourceField SourceField::constant(double value)
{
    SourceField field;
    field.kind_ = Kind::constant;
    field.value_ = value;
    field.description_ = fmt::format("{:.17g}", value);
    return field;
}

SourceField SourceField::closure(ScalarFunction fn, std::string description)
{
    SourceField field;
    field.kind_ = Kind::closure;
    field.fn_ = std::move(fn);
    field.description_ = std::move(description);
    return field;
}

double SourceField::eval(const Point& p) const
{
    const double value = kind_ == Kind::constant ? value_ : fn_(p);
    if (!std::isfinite(value))
        throw Error(ErrorKind::invalid_coefficient, "source evaluates to a non-finite value");
    return value;
}

SourceField SourceField::scaled(double factor) const
{
    if (kind_ == Kind::constant)
        return constant(value_ * factor);
    return closure([fn = fn_, factor](const Point& p) { return factor * fn(p); },
                   fmt::format("{:.17g}*({})", factor, description_));
}

double eval_boundary(const BoundaryField& field, std::size_t facet, const Point& p)
{
    return field.eval(facet, p);
}

namespace {

template <class Visit>
void for_each_facet_sample(const Mesh& mesh, int quad_order, Visit&& visit)
{
    const QuadratureRule rule = simplex_rule(mesh.dim() - 1, quad_order);
    for (std::size_t f = 0; f < mesh.num_boundary_facets(); ++f)
        for (const auto& bary : rule.points)
            visit(f, facet_point(mesh, f, bary));
}

} // namespace

double boundary_sup_diff(const BoundaryField& a, const BoundaryField& b, const Mesh& mesh,
                         int quad_order)
{
    double sup = 0.0;
    for_each_facet_sample(mesh, quad_order, [&](std::size_t f, const Point& p) {
        sup = std::max(sup, std::abs(a.eval(f, p) - b.eval(f, p)));
    });
    return sup;
}

double boundary_sup(const BoundaryField& field, const Mesh& mesh, int quad_order)
{
    double sup = -std::numeric_limits<double>::infinity();
    for_each_facet_sample(mesh, quad_order, [&](std::size_t f, const Point& p) {
        sup = std::max(sup, field.eval(f, p));
    });
    return sup;
}

double boundary_inf(const BoundaryField& field, const Mesh& mesh, int quad_order)
{
    double inf = std::numeric_limits<double>::infinity();
    for_each_facet_sample(mesh, quad_order, [&](std::size_t f, const Point& p) {
        inf = std::min(inf, field.eval(f, p));
    });
    return inf;
}

} // namespace robin
