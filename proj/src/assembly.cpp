#include "robin/assembly.hpp"

#include "robin/error.hpp"
#include "robin/quadrature.hpp"

#include <cmath>

#include <fmt/format.h>

namespace robin {

std::array<Point, 4> basis_gradients(const Mesh& mesh, std::size_t cell)
{
    const int d = mesh.dim();
    const auto verts = mesh.cell(cell);
    const Point& p0 = mesh.vertex(verts[0]);

    // Augmented Gauss-Jordan on J = [p1-p0, ..., pd-p0] (columns); rows of J^{-1}
    // are the gradients of lambda_1..lambda_d.
    double jac[3][6] = {};
    for (int col = 0; col < d; ++col) {
        const Point& p = mesh.vertex(verts[static_cast<std::size_t>(col + 1)]);
        for (int row = 0; row < d; ++row)
            jac[row][col] = p[static_cast<std::size_t>(row)] - p0[static_cast<std::size_t>(row)];
    }
    for (int row = 0; row < d; ++row)
        jac[row][d + row] = 1.0;

    for (int col = 0; col < d; ++col) {
        int pivot = col;
        for (int row = col + 1; row < d; ++row)
            if (std::abs(jac[row][col]) > std::abs(jac[pivot][col]))
                pivot = row;
        if (jac[pivot][col] == 0.0)
            throw Error(ErrorKind::degenerate_mesh, fmt::format("cell {} is degenerate", cell));
        if (pivot != col)
            for (int k = 0; k < 2 * d; ++k)
                std::swap(jac[pivot][k], jac[col][k]);
        const double diag = jac[col][col];
        for (int k = 0; k < 2 * d; ++k)
            jac[col][k] /= diag;
        for (int row = 0; row < d; ++row) {
            if (row == col)
                continue;
            const double factor = jac[row][col];
            for (int k = 0; k < 2 * d; ++k)
                jac[row][k] -= factor * jac[col][k];
        }
    }

    std::array<Point, 4> grads{};
    for (int i = 1; i <= d; ++i)
        for (int k = 0; k < d; ++k)
            grads[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = jac[i - 1][d + k];
    for (int k = 0; k < d; ++k)
        for (int i = 1; i <= d; ++i)
            grads[0][static_cast<std::size_t>(k)] -= grads[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
    return grads;
}

namespace {

void check_cell(const Mesh& mesh, std::size_t c)
{
    if (!(mesh.cell_measure(c) > 0.0))
        throw Error(ErrorKind::degenerate_mesh, fmt::format("cell {} has zero measure", c));
}

} // namespace

SymmetricSparseMatrix assemble_stiffness(const Mesh& mesh)
{
    const auto nv = static_cast<std::size_t>(mesh.dim() + 1);
    std::vector<Triplet> triplets;
    triplets.reserve(mesh.num_cells() * nv * (nv + 1) / 2);
    for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
        check_cell(mesh, c);
        const auto grads = basis_gradients(mesh, c);
        const auto verts = mesh.cell(c);
        const double measure = mesh.cell_measure(c);
        for (std::size_t a = 0; a < nv; ++a) {
            for (std::size_t b = a; b < nv; ++b) {
                double g = 0.0;
                for (int k = 0; k < mesh.dim(); ++k)
                    g += grads[a][static_cast<std::size_t>(k)] * grads[b][static_cast<std::size_t>(k)];
                triplets.push_back({verts[a], verts[b], measure * g});
            }
        }
    }
    return SymmetricSparseMatrix::from_triplets(mesh.num_vertices(), std::move(triplets));
}

SymmetricSparseMatrix assemble_mass(const Mesh& mesh, bool lumped)
{
    const int d = mesh.dim();
    const auto nv = static_cast<std::size_t>(d + 1);
    std::vector<Triplet> triplets;
    triplets.reserve(mesh.num_cells() * nv * (nv + 1) / 2);
    // Exact P1 element mass: |T| (1 + delta_ab) / ((d+1)(d+2)).
    const double scale = 1.0 / static_cast<double>((d + 1) * (d + 2));
    for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
        check_cell(mesh, c);
        const auto verts = mesh.cell(c);
        const double measure = mesh.cell_measure(c);
        if (lumped) {
            for (std::size_t a = 0; a < nv; ++a)
                triplets.push_back({verts[a], verts[a], measure / static_cast<double>(nv)});
            continue;
        }
        for (std::size_t a = 0; a < nv; ++a)
            for (std::size_t b = a; b < nv; ++b)
                triplets.push_back({verts[a], verts[b], measure * scale * (a == b ? 2.0 : 1.0)});
    }
    return SymmetricSparseMatrix::from_triplets(mesh.num_vertices(), std::move(triplets));
}

SymmetricSparseMatrix assemble_boundary_mass(const Mesh& mesh, const BoundaryField& beta,
                                             int quad_order)
{
    const QuadratureRule rule = simplex_rule(mesh.dim() - 1, quad_order);
    const auto nv = static_cast<std::size_t>(mesh.dim());
    std::vector<Triplet> triplets;
    triplets.reserve(mesh.num_boundary_facets() * nv * (nv + 1) / 2);
    for (std::size_t f = 0; f < mesh.num_boundary_facets(); ++f) {
        const auto verts = mesh.facet_vertices(f);
        const double measure = mesh.boundary_facet(f).measure;
        std::array<double, 6> local{};
        for (std::size_t q = 0; q < rule.size(); ++q) {
            const auto& bary = rule.points[q];
            const double w = measure * rule.weights[q] * beta.eval(f, facet_point(mesh, f, bary));
            std::size_t k = 0;
            for (std::size_t a = 0; a < nv; ++a)
                for (std::size_t b = a; b < nv; ++b)
                    local[k++] += w * bary[a] * bary[b];
        }
        std::size_t k = 0;
        for (std::size_t a = 0; a < nv; ++a)
            for (std::size_t b = a; b < nv; ++b)
                triplets.push_back({verts[a], verts[b], local[k++]});
    }
    return SymmetricSparseMatrix::from_triplets(mesh.num_vertices(), std::move(triplets));
}

LoadVector assemble_load(const Mesh& mesh, const SourceField& f, int quad_order)
{
    const QuadratureRule rule = simplex_rule(mesh.dim(), quad_order);
    const auto nv = static_cast<std::size_t>(mesh.dim() + 1);
    LoadVector load(mesh.num_vertices(), 0.0);
    for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
        const auto verts = mesh.cell(c);
        const double measure = mesh.cell_measure(c);
        for (std::size_t q = 0; q < rule.size(); ++q) {
            const auto& bary = rule.points[q];
            const double w = measure * rule.weights[q] * f.eval(cell_point(mesh, c, bary));
            for (std::size_t a = 0; a < nv; ++a)
                load[verts[a]] += w * bary[a];
        }
    }
    return load;
}

SymmetricSparseMatrix assemble_system(const Mesh& mesh, double lambda, const BoundaryField& beta,
                                      bool lumped, int quad_order)
{
    if (!std::isfinite(lambda) || lambda < 0.0)
        throw Error(ErrorKind::invalid_argument, fmt::format("lambda = {} must be >= 0", lambda));
    const SymmetricSparseMatrix boundary = assemble_boundary_mass(mesh, beta, quad_order);
    if (lambda == 0.0 && boundary.is_zero())
        throw Error(ErrorKind::singular_system,
                    "lambda = 0 with beta identically 0 leaves constants in the kernel");
    SymmetricSparseMatrix system = assemble_stiffness(mesh);
    if (lambda != 0.0)
        system = add_scaled(system, lambda, assemble_mass(mesh, lumped));
    return add_scaled(system, 1.0, boundary);
}

} // namespace robin
