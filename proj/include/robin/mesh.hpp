#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace robin {

/// Coordinates padded to three components; entries beyond the mesh dimension are zero.
using Point = std::array<double, 3>;

struct BoundaryFacet {
    std::array<std::size_t, 3> vertices{}; ///< first `dim` entries are used
    double measure = 0.0;                  ///< sigma-measure (counting measure in 1D)
    Point outward_normal{};
    std::size_t parent_cell = 0;
};

/// Structured simplicial mesh of the unit box (0,1)^dim, dim in {1,2,3}.
///
/// Cells are segments, triangles or tetrahedra with positive orientation-free
/// measures. Boundary facets carry their sigma-measure, a unit outward normal and
/// the index of the unique cell they belong to. A Mesh is immutable after
/// construction.
class Mesh {
public:
    int dim() const noexcept { return dim_; }
    double h() const noexcept { return h_; }
    std::size_t subdivisions() const noexcept { return n_; }

    std::size_t num_vertices() const noexcept { return vertices_.size(); }
    std::size_t num_cells() const noexcept { return cell_measures_.size(); }
    std::size_t num_boundary_facets() const noexcept { return facets_.size(); }

    const std::vector<Point>& vertices() const noexcept { return vertices_; }
    const Point& vertex(std::size_t i) const { return vertices_[i]; }

    /// Vertex indices of a cell (dim+1 of them).
    std::span<const std::size_t> cell(std::size_t c) const
    {
        return {cells_[c].data(), static_cast<std::size_t>(dim_ + 1)};
    }
    double cell_measure(std::size_t c) const { return cell_measures_[c]; }
    const std::vector<double>& cell_measures() const noexcept { return cell_measures_; }

    const std::vector<BoundaryFacet>& boundary_facets() const noexcept { return facets_; }
    const BoundaryFacet& boundary_facet(std::size_t f) const { return facets_[f]; }
    std::span<const std::size_t> facet_vertices(std::size_t f) const
    {
        return {facets_[f].vertices.data(), static_cast<std::size_t>(dim_)};
    }

    Point cell_centroid(std::size_t c) const;
    Point facet_centroid(std::size_t f) const;

    /// Sum of cell measures, |Omega|.
    double volume() const;
    /// Sum of boundary facet measures, sigma(dOmega).
    double boundary_measure() const;

    friend Mesh build_interval_mesh(std::size_t n);
    friend Mesh build_unit_square_mesh(std::size_t n);
    friend Mesh build_unit_cube_mesh(std::size_t n);

private:
    Mesh(int dim, std::size_t n, std::vector<Point> vertices,
         std::vector<std::array<std::size_t, 4>> cells);

    void compute_cell_measures();
    void extract_boundary();

    int dim_ = 0;
    std::size_t n_ = 0;
    double h_ = 0.0;
    std::vector<Point> vertices_;
    std::vector<std::array<std::size_t, 4>> cells_;
    std::vector<double> cell_measures_;
    std::vector<BoundaryFacet> facets_;
};

Mesh build_interval_mesh(std::size_t n);
/// Every grid square is split along its (0,0)-(1,1) diagonal.
Mesh build_unit_square_mesh(std::size_t n);
/// Every grid cube is split into six tetrahedra sharing its main diagonal (Kuhn).
Mesh build_unit_cube_mesh(std::size_t n);

/// Builds the unit box mesh of the given dimension.
Mesh build_box_mesh(int dim, std::size_t n);

/// Physical point of a cell given barycentric coordinates.
Point cell_point(const Mesh& mesh, std::size_t c, const std::array<double, 4>& bary);
/// Physical point of a boundary facet given barycentric coordinates.
Point facet_point(const Mesh& mesh, std::size_t f, const std::array<double, 4>& bary);

/// Sorted, unique vertex indices that lie on a boundary facet.
std::vector<std::size_t> boundary_vertex_indices(const Mesh& mesh);

/// Plain-text dump: "v x y z", "c i0 i1 ...", "f i0 ... | measure | nx ny nz".
void write_mesh_text(const Mesh& mesh, std::ostream& out);

} // namespace robin
