#include "robin/mesh.hpp"

#include "robin/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <ostream>
#include <string>

#include <fmt/format.h>
#include <fmt/ranges.h>

namespace robin {

namespace {

Point sub(const Point& a, const Point& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

double dot(const Point& a, const Point& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Point cross(const Point& a, const Point& b)
{
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

void require_positive(std::size_t n)
{
    if (n == 0)
        throw Error(ErrorKind::invalid_argument, "mesh subdivision count must be >= 1");
}

} // namespace

Mesh::Mesh(int dim, std::size_t n, std::vector<Point> vertices,
           std::vector<std::array<std::size_t, 4>> cells)
    : dim_(dim), n_(n), h_(1.0 / static_cast<double>(n)), vertices_(std::move(vertices)),
      cells_(std::move(cells))
{
    compute_cell_measures();
    extract_boundary();
}

void Mesh::compute_cell_measures()
{
    cell_measures_.resize(cells_.size());
    const double factorial = dim_ == 1 ? 1.0 : (dim_ == 2 ? 2.0 : 6.0);
    for (std::size_t c = 0; c < cells_.size(); ++c) {
        const auto& v = cells_[c];
        const Point& p0 = vertices_[v[0]];
        double det = 0.0;
        if (dim_ == 1) {
            det = vertices_[v[1]][0] - p0[0];
        } else if (dim_ == 2) {
            const Point a = sub(vertices_[v[1]], p0);
            const Point b = sub(vertices_[v[2]], p0);
            det = a[0] * b[1] - a[1] * b[0];
        } else {
            det = dot(sub(vertices_[v[1]], p0),
                      cross(sub(vertices_[v[2]], p0), sub(vertices_[v[3]], p0)));
        }
        const double measure = std::abs(det) / factorial;
        if (!(measure > 0.0))
            throw Error(ErrorKind::degenerate_mesh, fmt::format("cell {} has zero measure", c));
        cell_measures_[c] = measure;
    }
}

void Mesh::extract_boundary()
{
    struct Incidence {
        int count = 0;
        std::size_t cell = 0;
    };
    // Ordered map keeps facet numbering deterministic.
    std::map<std::array<std::size_t, 3>, Incidence> incidence;
    const auto nv = static_cast<std::size_t>(dim_ + 1);
    for (std::size_t c = 0; c < cells_.size(); ++c) {
        for (std::size_t skip = 0; skip < nv; ++skip) {
            std::array<std::size_t, 3> key{};
            std::size_t k = 0;
            for (std::size_t i = 0; i < nv; ++i)
                if (i != skip)
                    key[k++] = cells_[c][i];
            std::sort(key.begin(), key.begin() + static_cast<std::ptrdiff_t>(k));
            auto& entry = incidence[key];
            ++entry.count;
            entry.cell = c;
        }
    }

    facets_.clear();
    for (const auto& [key, entry] : incidence) {
        if (entry.count > 2)
            throw Error(ErrorKind::degenerate_mesh, "facet shared by more than two cells");
        if (entry.count != 1)
            continue;

        BoundaryFacet facet;
        facet.vertices = key;
        facet.parent_cell = entry.cell;

        Point normal{};
        if (dim_ == 1) {
            facet.measure = 1.0;
            normal = {1.0, 0.0, 0.0};
        } else if (dim_ == 2) {
            const Point t = sub(vertices_[key[1]], vertices_[key[0]]);
            facet.measure = std::hypot(t[0], t[1]);
            normal = {t[1] / facet.measure, -t[0] / facet.measure, 0.0};
        } else {
            const Point c = cross(sub(vertices_[key[1]], vertices_[key[0]]),
                                  sub(vertices_[key[2]], vertices_[key[0]]));
            const double norm = std::sqrt(dot(c, c));
            facet.measure = 0.5 * norm;
            normal = {c[0] / norm, c[1] / norm, c[2] / norm};
        }
        if (!(facet.measure > 0.0))
            throw Error(ErrorKind::degenerate_mesh, "boundary facet has zero measure");

        facets_.push_back(facet);
        const Point outward = sub(facet_centroid(facets_.size() - 1), cell_centroid(entry.cell));
        if (dot(normal, outward) < 0.0)
            normal = {-normal[0], -normal[1], -normal[2]};
        for (double& component : normal)
            component += 0.0; // drop signed zeros
        facets_.back().outward_normal = normal;
    }
}

Point Mesh::cell_centroid(std::size_t c) const
{
    Point centroid{};
    for (std::size_t v : cell(c))
        for (int d = 0; d < 3; ++d)
            centroid[d] += vertices_[v][d];
    for (double& x : centroid)
        x /= static_cast<double>(dim_ + 1);
    return centroid;
}

Point Mesh::facet_centroid(std::size_t f) const
{
    Point centroid{};
    for (std::size_t v : facet_vertices(f))
        for (int d = 0; d < 3; ++d)
            centroid[d] += vertices_[v][d];
    for (double& x : centroid)
        x /= static_cast<double>(dim_);
    return centroid;
}

double Mesh::volume() const
{
    return std::accumulate(cell_measures_.begin(), cell_measures_.end(), 0.0);
}

double Mesh::boundary_measure() const
{
    double total = 0.0;
    for (const auto& f : facets_)
        total += f.measure;
    return total;
}

Mesh build_interval_mesh(std::size_t n)
{
    require_positive(n);
    std::vector<Point> vertices(n + 1);
    for (std::size_t i = 0; i <= n; ++i)
        vertices[i] = {static_cast<double>(i) / static_cast<double>(n), 0.0, 0.0};
    std::vector<std::array<std::size_t, 4>> cells(n);
    for (std::size_t i = 0; i < n; ++i)
        cells[i] = {i, i + 1, 0, 0};
    return Mesh(1, n, std::move(vertices), std::move(cells));
}

Mesh build_unit_square_mesh(std::size_t n)
{
    require_positive(n);
    const std::size_t stride = n + 1;
    std::vector<Point> vertices;
    vertices.reserve(stride * stride);
    for (std::size_t j = 0; j <= n; ++j)
        for (std::size_t i = 0; i <= n; ++i)
            vertices.push_back({static_cast<double>(i) / static_cast<double>(n),
                                static_cast<double>(j) / static_cast<double>(n), 0.0});

    std::vector<std::array<std::size_t, 4>> cells;
    cells.reserve(2 * n * n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t v00 = i + stride * j;
            const std::size_t v10 = v00 + 1;
            const std::size_t v01 = v00 + stride;
            const std::size_t v11 = v01 + 1;
            cells.push_back({v00, v10, v11, 0});
            cells.push_back({v00, v11, v01, 0});
        }
    }
    return Mesh(2, n, std::move(vertices), std::move(cells));
}

Mesh build_unit_cube_mesh(std::size_t n)
{
    require_positive(n);
    const std::size_t stride = n + 1;
    auto index = [stride](std::size_t i, std::size_t j, std::size_t k) {
        return i + stride * (j + stride * k);
    };

    std::vector<Point> vertices;
    vertices.reserve(stride * stride * stride);
    for (std::size_t k = 0; k <= n; ++k)
        for (std::size_t j = 0; j <= n; ++j)
            for (std::size_t i = 0; i <= n; ++i)
                vertices.push_back({static_cast<double>(i) / static_cast<double>(n),
                                    static_cast<double>(j) / static_cast<double>(n),
                                    static_cast<double>(k) / static_cast<double>(n)});

    // Kuhn: one tetrahedron per axis ordering, walking from corner (0,0,0) to (1,1,1).
    std::array<std::array<int, 3>, 6> orderings{{
        {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0},
    }};

    std::vector<std::array<std::size_t, 4>> cells;
    cells.reserve(6 * n * n * n);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t i = 0; i < n; ++i) {
                for (const auto& order : orderings) {
                    std::array<std::size_t, 3> corner{i, j, k};
                    std::array<std::size_t, 4> tet{};
                    tet[0] = index(corner[0], corner[1], corner[2]);
                    for (int step = 0; step < 3; ++step) {
                        ++corner[order[step]];
                        tet[step + 1] = index(corner[0], corner[1], corner[2]);
                    }
                    cells.push_back(tet);
                }
            }
        }
    }
    return Mesh(3, n, std::move(vertices), std::move(cells));
}

Mesh build_box_mesh(int dim, std::size_t n)
{
    switch (dim) {
    case 1: return build_interval_mesh(n);
    case 2: return build_unit_square_mesh(n);
    case 3: return build_unit_cube_mesh(n);
    default:
        throw Error(ErrorKind::unsupported_dimension, fmt::format("no box mesh in dimension {}", dim));
    }
}

Point cell_point(const Mesh& mesh, std::size_t c, const std::array<double, 4>& bary)
{
    Point p{};
    const auto verts = mesh.cell(c);
    for (std::size_t i = 0; i < verts.size(); ++i)
        for (int d = 0; d < 3; ++d)
            p[d] += bary[i] * mesh.vertex(verts[i])[d];
    return p;
}

Point facet_point(const Mesh& mesh, std::size_t f, const std::array<double, 4>& bary)
{
    Point p{};
    const auto verts = mesh.facet_vertices(f);
    for (std::size_t i = 0; i < verts.size(); ++i)
        for (int d = 0; d < 3; ++d)
            p[d] += bary[i] * mesh.vertex(verts[i])[d];
    return p;
}

std::vector<std::size_t> boundary_vertex_indices(const Mesh& mesh)
{
    std::vector<std::size_t> indices;
    for (std::size_t f = 0; f < mesh.num_boundary_facets(); ++f)
        for (std::size_t v : mesh.facet_vertices(f))
            indices.push_back(v);
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
    return indices;
}

void write_mesh_text(const Mesh& mesh, std::ostream& out)
{
    for (const Point& p : mesh.vertices())
        out << fmt::format("v {:.17g} {:.17g} {:.17g}\n", p[0], p[1], p[2]);
    for (std::size_t c = 0; c < mesh.num_cells(); ++c)
        out << fmt::format("c {}\n", fmt::join(mesh.cell(c), " "));
    for (std::size_t f = 0; f < mesh.num_boundary_facets(); ++f) {
        const auto& facet = mesh.boundary_facet(f);
        out << fmt::format("f {} | {:.17g} | {:.17g} {:.17g} {:.17g}\n",
                           fmt::join(mesh.facet_vertices(f), " "), facet.measure,
                           facet.outward_normal[0], facet.outward_normal[1],
                           facet.outward_normal[2]);
    }
}

} // namespace robin
