#pragma once

#include "robin/fields.hpp"
#include "robin/mesh.hpp"

#include <array>
#include <span>
#include <vector>

namespace robin {

/// Nodal coefficients of a P1 function on a mesh. The mesh is not owned and
/// must outlive the solution.
class DiscreteSolution {
public:
    DiscreteSolution(const Mesh& mesh, std::vector<double> nodal_values);

    const Mesh& mesh() const noexcept { return *mesh_; }
    const std::vector<double>& values() const noexcept { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }
    std::size_t size() const noexcept { return values_.size(); }

    /// Value inside a cell at the given barycentric coordinates.
    double eval_cell(std::size_t cell, const std::array<double, 4>& bary) const;
    /// Value on a boundary facet at the given barycentric coordinates.
    double eval_facet(std::size_t facet, const std::array<double, 4>& bary) const;

private:
    const Mesh* mesh_;
    std::vector<double> values_;
};

/// Nodal difference; both operands must live on the same mesh.
DiscreteSolution operator-(const DiscreteSolution& a, const DiscreteSolution& b);
DiscreteSolution operator*(double factor, const DiscreteSolution& u);

enum class Region { closure, boundary, interior };
enum class Support { domain, boundary };

/// Sobolev exponent q = 2d/(d-2) and trace exponent s = 2(d-1)/(d-2), d >= 3.
struct Exponents {
    int d = 3;
    double q = 6.0;
    double s = 4.0;
};

Exponents exponents(int d);

/// Largest |u_i| over the vertices of the region (exact for P1).
double sup_norm(const DiscreteSolution& u, Region region = Region::closure);

/// (integral of |u|^p)^(1/p) by cell or facet quadrature.
double lp_norm(const DiscreteSolution& u, double p, Support support, int quad_order = 2);
double lp_norm(const SourceField& f, const Mesh& mesh, double p, Support support,
               int quad_order = 2);

/// sqrt(u^T K u + u^T M u) with the consistent mass matrix.
double h1_norm(const DiscreteSolution& u);

/// Nodal interpolant of (|u| - k)^+ sgn(u).
DiscreteSolution truncate(const DiscreteSolution& u, double k);

inline constexpr int level_set_quad_order = 3;

/// Quadrature estimate of the measure of {|u| > k} within the domain or on the
/// boundary: sum over simplices of measure times the weight fraction of
/// quadrature points where |u| > k.
double level_set_measure(const DiscreteSolution& u, double k, Support support,
                         int quad_order = level_set_quad_order);

/// Nodal values at boundary_vertex_indices(mesh), in that order.
std::vector<double> trace_values(const DiscreteSolution& u);

/// ||u||_{s, boundary} / ||u||_{H1} with s from exponents(d): an empirical lower
/// bound for the trace embedding constant.
double trace_constant_estimate(const DiscreteSolution& u, int d);

} // namespace robin
