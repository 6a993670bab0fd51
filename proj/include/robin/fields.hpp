#pragma once

#include "robin/mesh.hpp"

#include <functional>
#include <string>
#include <vector>

namespace robin {

using ScalarFunction = std::function<double(const Point&)>;

/// The Robin coefficient beta on the boundary.
///
/// Closures must be reentrant. Negative or non-finite values are rejected when
/// they are evaluated, not when the field is built.
class BoundaryField {
public:
    enum class Kind { constant, per_facet, closure };

    static BoundaryField constant(double value);
    /// One value per boundary facet, aligned with Mesh::boundary_facets().
    static BoundaryField per_facet(std::vector<double> values);
    static BoundaryField closure(ScalarFunction fn, std::string description = {});

    Kind kind() const noexcept { return kind_; }
    double constant_value() const noexcept { return value_; }
    const std::vector<double>& facet_values() const noexcept { return facet_values_; }
    const std::string& description() const noexcept { return description_; }

    /// beta at a point of the given facet. per_facet ignores the point.
    double eval(std::size_t facet, const Point& p) const;

private:
    Kind kind_ = Kind::constant;
    double value_ = 0.0;
    std::vector<double> facet_values_;
    ScalarFunction fn_;
    std::string description_;
};

/// The source term f on the domain.
class SourceField {
public:
    enum class Kind { constant, closure };

    static SourceField constant(double value);
    static SourceField closure(ScalarFunction fn, std::string description = {});

    Kind kind() const noexcept { return kind_; }
    double constant_value() const noexcept { return value_; }
    const std::string& description() const noexcept { return description_; }

    double eval(const Point& p) const;

    /// Pointwise scaling, used for homogeneity checks.
    SourceField scaled(double factor) const;

private:
    Kind kind_ = Kind::constant;
    double value_ = 0.0;
    ScalarFunction fn_;
    std::string description_;
};

double eval_boundary(const BoundaryField& field, std::size_t facet, const Point& p);

/// max |a - b| over all facet quadrature points of the given order.
double boundary_sup_diff(const BoundaryField& a, const BoundaryField& b, const Mesh& mesh,
                         int quad_order = 2);
/// max of the field over all facet quadrature points.
double boundary_sup(const BoundaryField& field, const Mesh& mesh, int quad_order = 2);
/// min of the field over all facet quadrature points.
double boundary_inf(const BoundaryField& field, const Mesh& mesh, int quad_order = 2);

} // namespace robin
