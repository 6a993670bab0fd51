#pragma once

#include "robin/fields.hpp"
#include "robin/mesh.hpp"
#include "robin/sparse.hpp"

#include <array>
#include <vector>

namespace robin {

using LoadVector = std::vector<double>;

/// Gradients of the P1 barycentric basis functions of a cell (constant per cell).
std::array<Point, 4> basis_gradients(const Mesh& mesh, std::size_t cell);

/// K_ij = integral of grad(phi_i) . grad(phi_j), exact per simplex.
SymmetricSparseMatrix assemble_stiffness(const Mesh& mesh);

/// Consistent P1 mass matrix, or its row-sum lumped diagonal.
SymmetricSparseMatrix assemble_mass(const Mesh& mesh, bool lumped = false);

/// B_ij = sum over boundary facets of the facet integral of beta phi_i phi_j.
/// In 1D this is diag(beta(0), beta(1)) at the endpoints.
SymmetricSparseMatrix assemble_boundary_mass(const Mesh& mesh, const BoundaryField& beta,
                                             int quad_order = 2);

/// F_i = integral of f phi_i over the domain.
LoadVector assemble_load(const Mesh& mesh, const SourceField& f, int quad_order = 2);

/// A = K + lambda M + B, the matrix of the Robin form. Throws singular-system
/// when lambda == 0 and B vanishes identically.
SymmetricSparseMatrix assemble_system(const Mesh& mesh, double lambda, const BoundaryField& beta,
                                      bool lumped = false, int quad_order = 2);

} // namespace robin
