#pragma once

#include <array>
#include <vector>

namespace robin {

/// Quadrature rule on the reference simplex of a given dimension.
///
/// Points are barycentric coordinates (first dim+1 entries used); weights are
/// normalised to sum to one, so an integral over a simplex S is
/// |S| * sum_q weight_q * g(x_q).
struct QuadratureRule {
    int dim = 0;
    std::vector<std::array<double, 4>> points;
    std::vector<double> weights;

    std::size_t size() const noexcept { return weights.size(); }
};

/// Rule exact for polynomials of total degree <= order on a dim-simplex, dim in 0..3.
///
/// order 1 is the centroid rule, order 2 the classical symmetric interior rules
/// (2-point Gauss on segments, 3 points on triangles, 4 points on tetrahedra),
/// higher orders use collapsed-coordinate Gauss-Legendre products. All weights
/// are positive. A 0-simplex (a point) has the trivial one-point rule.
QuadratureRule simplex_rule(int dim, int order);

/// Gauss-Legendre nodes and weights on [0, 1].
void gauss_legendre_unit(int count, std::vector<double>& nodes, std::vector<double>& weights);

} // namespace robin
