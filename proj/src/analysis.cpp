#include "robin/analysis.hpp"

#include "robin/assembly.hpp"
#include "robin/error.hpp"
#include "robin/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace robin {

DiscreteSolution::DiscreteSolution(const Mesh& mesh, std::vector<double> nodal_values)
    : mesh_(&mesh), values_(std::move(nodal_values))
{
    if (values_.size() != mesh.num_vertices())
        throw Error(ErrorKind::invalid_argument,
                    fmt::format("{} nodal values for a mesh with {} vertices", values_.size(),
                                mesh.num_vertices()));
    for (double v : values_)
        if (!std::isfinite(v))
            throw Error(ErrorKind::numeric_breakdown, "non-finite nodal value");
}

double DiscreteSolution::eval_cell(std::size_t cell, const std::array<double, 4>& bary) const
{
    double value = 0.0;
    const auto verts = mesh_->cell(cell);
    for (std::size_t i = 0; i < verts.size(); ++i)
        value += bary[i] * values_[verts[i]];
    return value;
}

double DiscreteSolution::eval_facet(std::size_t facet, const std::array<double, 4>& bary) const
{
    double value = 0.0;
    const auto verts = mesh_->facet_vertices(facet);
    for (std::size_t i = 0; i < verts.size(); ++i)
        value += bary[i] * values_[verts[i]];
    return value;
}

DiscreteSolution operator-(const DiscreteSolution& a, const DiscreteSolution& b)
{
    if (&a.mesh() != &b.mesh())
        throw Error(ErrorKind::invalid_argument, "solutions live on different meshes");
    std::vector<double> diff(a.size());
    for (std::size_t i = 0; i < diff.size(); ++i)
        diff[i] = a[i] - b[i];
    return DiscreteSolution(a.mesh(), std::move(diff));
}

DiscreteSolution operator*(double factor, const DiscreteSolution& u)
{
    std::vector<double> values = u.values();
    for (double& v : values)
        v *= factor;
    return DiscreteSolution(u.mesh(), std::move(values));
}

Exponents exponents(int d)
{
    if (d < 3)
        throw Error(ErrorKind::unsupported_dimension,
                    fmt::format("Sobolev exponents need d >= 3, got {}", d));
    const double dd = d;
    return {d, 2.0 * dd / (dd - 2.0), 2.0 * (dd - 1.0) / (dd - 2.0)};
}

double sup_norm(const DiscreteSolution& u, Region region)
{
    double sup = 0.0;
    if (region == Region::closure) {
        for (double v : u.values())
            sup = std::max(sup, std::abs(v));
        return sup;
    }
    const auto boundary = boundary_vertex_indices(u.mesh());
    if (region == Region::boundary) {
        for (std::size_t i : boundary)
            sup = std::max(sup, std::abs(u[i]));
        return sup;
    }
    std::vector<bool> on_boundary(u.size(), false);
    for (std::size_t i : boundary)
        on_boundary[i] = true;
    for (std::size_t i = 0; i < u.size(); ++i)
        if (!on_boundary[i])
            sup = std::max(sup, std::abs(u[i]));
    return sup;
}

namespace {

void require_exponent(double p)
{
    if (!(p >= 1.0) || !std::isfinite(p))
        throw Error(ErrorKind::invalid_argument, fmt::format("L^p exponent {} must be >= 1", p));
}

/// Integral of g over the domain or boundary, g evaluated per (simplex, quadrature index).
template <class Integrand>
double integrate(const Mesh& mesh, Support support, const QuadratureRule& rule, Integrand&& g)
{
    double total = 0.0;
    if (support == Support::domain) {
        for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
            double local = 0.0;
            for (std::size_t q = 0; q < rule.size(); ++q)
                local += rule.weights[q] * g(c, rule.points[q]);
            total += mesh.cell_measure(c) * local;
        }
    } else {
        for (std::size_t f = 0; f < mesh.num_boundary_facets(); ++f) {
            double local = 0.0;
            for (std::size_t q = 0; q < rule.size(); ++q)
                local += rule.weights[q] * g(f, rule.points[q]);
            total += mesh.boundary_facet(f).measure * local;
        }
    }
    return total;
}

QuadratureRule rule_for(const Mesh& mesh, Support support, int quad_order)
{
    return simplex_rule(support == Support::domain ? mesh.dim() : mesh.dim() - 1, quad_order);
}

} // namespace

double lp_norm(const DiscreteSolution& u, double p, Support support, int quad_order)
{
    require_exponent(p);
    const QuadratureRule rule = rule_for(u.mesh(), support, quad_order);
    const double integral =
        integrate(u.mesh(), support, rule, [&](std::size_t s, const std::array<double, 4>& bary) {
            const double value =
                support == Support::domain ? u.eval_cell(s, bary) : u.eval_facet(s, bary);
            return std::pow(std::abs(value), p);
        });
    return std::pow(integral, 1.0 / p);
}

double lp_norm(const SourceField& f, const Mesh& mesh, double p, Support support, int quad_order)
{
    require_exponent(p);
    const QuadratureRule rule = rule_for(mesh, support, quad_order);
    const double integral =
        integrate(mesh, support, rule, [&](std::size_t s, const std::array<double, 4>& bary) {
            const Point x =
                support == Support::domain ? cell_point(mesh, s, bary) : facet_point(mesh, s, bary);
            return std::pow(std::abs(f.eval(x)), p);
        });
    return std::pow(integral, 1.0 / p);
}

double h1_norm(const DiscreteSolution& u)
{
    const double gradient = quadratic_form(assemble_stiffness(u.mesh()), u.values());
    const double mass = quadratic_form(assemble_mass(u.mesh(), false), u.values());
    return std::sqrt(std::max(gradient + mass, 0.0));
}

DiscreteSolution truncate(const DiscreteSolution& u, double k)
{
    if (!(k >= 0.0))
        throw Error(ErrorKind::invalid_argument, fmt::format("truncation level {} must be >= 0", k));
    std::vector<double> values(u.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double excess = std::max(std::abs(u[i]) - k, 0.0);
        values[i] = u[i] < 0.0 ? -excess : excess;
    }
    return DiscreteSolution(u.mesh(), std::move(values));
}

double level_set_measure(const DiscreteSolution& u, double k, Support support, int quad_order)
{
    if (!(k >= 0.0))
        throw Error(ErrorKind::invalid_argument, fmt::format("level {} must be >= 0", k));
    const QuadratureRule rule = rule_for(u.mesh(), support, quad_order);
    return integrate(u.mesh(), support, rule, [&](std::size_t s, const std::array<double, 4>& bary) {
        const double value = support == Support::domain ? u.eval_cell(s, bary) : u.eval_facet(s, bary);
        return std::abs(value) > k ? 1.0 : 0.0;
    });
}

std::vector<double> trace_values(const DiscreteSolution& u)
{
    const auto indices = boundary_vertex_indices(u.mesh());
    std::vector<double> trace;
    trace.reserve(indices.size());
    for (std::size_t i : indices)
        trace.push_back(u[i]);
    return trace;
}

double trace_constant_estimate(const DiscreteSolution& u, int d)
{
    const Exponents e = exponents(d);
    const double denominator = h1_norm(u);
    if (denominator == 0.0)
        throw Error(ErrorKind::invalid_argument, "trace constant of the zero function is undefined");
    return lp_norm(u, e.s, Support::boundary) / denominator;
}

} // namespace robin
