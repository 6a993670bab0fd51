#include "robin/assembly.hpp"
#include "robin/error.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace robin;

namespace {

using Dense = std::vector<std::vector<double>>;

// Element-by-element hand assembly of 1D P1 matrices: stiffness (1/h)[[1,-1],[-1,1]],
// mass (h/6)[[2,1],[1,2]].
Dense hand_interval(std::size_t n, bool stiffness)
{
    const double h = 1.0 / static_cast<double>(n);
    Dense a(n + 1, std::vector<double>(n + 1, 0.0));
    for (std::size_t e = 0; e < n; ++e) {
        const double diag = stiffness ? 1.0 / h : h / 3.0;
        const double off = stiffness ? -1.0 / h : h / 6.0;
        a[e][e] += diag;
        a[e + 1][e + 1] += diag;
        a[e][e + 1] += off;
        a[e + 1][e] += off;
    }
    return a;
}

void expect_dense_near(const Dense& actual, const Dense& expected, double tol)
{
    ASSERT_EQ(actual.size(), expected.size());
    for (std::size_t i = 0; i < actual.size(); ++i)
        for (std::size_t j = 0; j < actual.size(); ++j)
            EXPECT_NEAR(actual[i][j], expected[i][j], tol) << "(" << i << "," << j << ")";
}

std::vector<Mesh> all_families()
{
    std::vector<Mesh> meshes;
    meshes.push_back(build_interval_mesh(5));
    meshes.push_back(build_unit_square_mesh(4));
    meshes.push_back(build_unit_cube_mesh(3));
    return meshes;
}

std::vector<double> random_vector(std::size_t n, std::mt19937& rng)
{
    std::normal_distribution<double> dist;
    std::vector<double> v(n);
    for (double& x : v)
        x = dist(rng);
    return v;
}

} // namespace

TEST(SparseMatrix, TripletCanonicalisationAndSymmetry)
{
    const auto m = SymmetricSparseMatrix::from_triplets(3, {{0, 1, 2.0}, {1, 0, 1.0}, {2, 2, 5.0}, {2, 2, 1.0}});
    EXPECT_DOUBLE_EQ(m.entry(0, 1), 3.0);
    EXPECT_DOUBLE_EQ(m.entry(1, 0), 3.0);
    EXPECT_DOUBLE_EQ(m.entry(2, 2), 6.0);
    EXPECT_DOUBLE_EQ(m.entry(0, 2), 0.0);
    EXPECT_EQ(m.stored_entries(), 2u);
    const std::vector<double> x{1.0, 2.0, 3.0};
    EXPECT_EQ(m * x, (std::vector<double>{6.0, 3.0, 18.0}));
    EXPECT_THROW(SymmetricSparseMatrix::from_triplets(2, {{0, 2, 1.0}}), Error);
}

TEST(Assembly, IntervalStiffnessMatchesHandAssembly)
{
    const Mesh mesh = build_interval_mesh(2);
    const Dense expected{{2, -2, 0}, {-2, 4, -2}, {0, -2, 2}};
    expect_dense_near(assemble_stiffness(mesh).to_dense(), expected, 1e-14);
    expect_dense_near(assemble_stiffness(build_interval_mesh(7)).to_dense(), hand_interval(7, true), 1e-12);
}

TEST(Assembly, StiffnessAnnihilatesConstants)
{
    for (const Mesh& mesh : all_families()) {
        const auto k = assemble_stiffness(mesh);
        const std::vector<double> ones(mesh.num_vertices(), 1.0);
        for (double v : k * ones)
            EXPECT_NEAR(v, 0.0, 1e-12);
    }
    const auto k = assemble_stiffness(build_unit_square_mesh(1)).to_dense();
    for (const auto& row : k) {
        double sum = 0.0;
        for (double v : row)
            sum += v;
        EXPECT_NEAR(sum, 0.0, 1e-12);
    }
}

TEST(Assembly, StiffnessReproducesGradientEnergyOfLinearFunction)
{
    // u = x + 2y - z has |grad u|^2 = 6 everywhere, so u^T K u = 6 |Omega| = 6.
    const Mesh mesh = build_unit_cube_mesh(3);
    std::vector<double> u(mesh.num_vertices());
    for (std::size_t i = 0; i < u.size(); ++i) {
        const Point& p = mesh.vertex(i);
        u[i] = p[0] + 2.0 * p[1] - p[2];
    }
    EXPECT_NEAR(quadratic_form(assemble_stiffness(mesh), u), 6.0, 1e-12);
}

TEST(Assembly, MassMatrices)
{
    for (const Mesh& mesh : all_families()) {
        const std::vector<double> ones(mesh.num_vertices(), 1.0);
        EXPECT_NEAR(quadratic_form(assemble_mass(mesh), ones), 1.0, 1e-12);
        EXPECT_NEAR(quadratic_form(assemble_mass(mesh, true), ones), 1.0, 1e-12);
    }
    const Mesh mesh = build_interval_mesh(2);
    Dense consistent{{2, 1, 0}, {1, 4, 1}, {0, 1, 2}};
    for (auto& row : consistent)
        for (double& v : row)
            v /= 12.0;
    expect_dense_near(assemble_mass(mesh).to_dense(), consistent, 1e-15);
    expect_dense_near(assemble_mass(build_interval_mesh(6)).to_dense(), hand_interval(6, false), 1e-14);

    // lumped = row sums of the consistent matrix
    const Dense lumped{{0.25, 0, 0}, {0, 0.5, 0}, {0, 0, 0.25}};
    expect_dense_near(assemble_mass(mesh, true).to_dense(), lumped, 1e-15);
}

TEST(Assembly, BoundaryMass)
{
    const Mesh interval = build_interval_mesh(2);
    const Dense expected{{1, 0, 0}, {0, 0, 0}, {0, 0, 1}};
    expect_dense_near(assemble_boundary_mass(interval, BoundaryField::constant(1.0)).to_dense(), expected, 0.0);
    EXPECT_TRUE(assemble_boundary_mass(interval, BoundaryField::constant(0.0)).is_zero());

    const Mesh square = build_unit_square_mesh(5);
    const std::vector<double> ones(square.num_vertices(), 1.0);
    EXPECT_NEAR(quadratic_form(assemble_boundary_mass(square, BoundaryField::constant(1.0)), ones), 4.0, 1e-12);

    const Mesh cube = build_unit_cube_mesh(2);
    const std::vector<double> cube_ones(cube.num_vertices(), 1.0);
    EXPECT_NEAR(quadratic_form(assemble_boundary_mass(cube, BoundaryField::constant(2.0)), cube_ones), 12.0, 1e-12);
}

TEST(Assembly, BoundaryMassFacetMatrixIsExactForPerFacetBeta)
{
    // On one edge of length h with beta = b the P1 facet mass is b h/6 [[2,1],[1,2]].
    const Mesh square = build_unit_square_mesh(3);
    std::vector<double> values(square.num_boundary_facets());
    for (std::size_t f = 0; f < values.size(); ++f)
        values[f] = 0.5 + static_cast<double>(f);
    const auto b = assemble_boundary_mass(square, BoundaryField::per_facet(values), 2);
    const auto b4 = assemble_boundary_mass(square, BoundaryField::per_facet(values), 4);
    Dense expected(square.num_vertices(), std::vector<double>(square.num_vertices(), 0.0));
    for (std::size_t f = 0; f < values.size(); ++f) {
        const auto v = square.facet_vertices(f);
        const double s = values[f] * square.boundary_facet(f).measure / 6.0;
        expected[v[0]][v[0]] += 2 * s;
        expected[v[1]][v[1]] += 2 * s;
        expected[v[0]][v[1]] += s;
        expected[v[1]][v[0]] += s;
    }
    expect_dense_near(b.to_dense(), expected, 1e-14);
    expect_dense_near(b4.to_dense(), expected, 1e-14);
}

TEST(Assembly, NegativeBetaRejected)
{
    const Mesh mesh = build_unit_square_mesh(2);
    try {
        assemble_boundary_mass(mesh, BoundaryField::closure([](const Point& p) { return p[0] - 0.5; }));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::invalid_coefficient);
    }
}

TEST(Assembly, LoadVector)
{
    for (const Mesh& mesh : all_families()) {
        const auto load = assemble_load(mesh, SourceField::constant(1.0));
        double sum = 0.0;
        for (double v : load)
            sum += v;
        EXPECT_NEAR(sum, 1.0, 1e-12);

        for (double v : assemble_load(mesh, SourceField::constant(0.0)))
            EXPECT_EQ(v, 0.0);

        const double c = 2.75;
        const auto fc = assemble_load(mesh, SourceField::constant(c));
        const std::vector<double> ones(mesh.num_vertices(), 1.0);
        const auto m1 = assemble_mass(mesh) * ones;
        for (std::size_t i = 0; i < fc.size(); ++i)
            EXPECT_NEAR(fc[i], c * m1[i], 1e-12);
    }
}

TEST(Assembly, DoublingQuadratureOrderLeavesConstantFieldsUnchanged)
{
    for (const Mesh& mesh : all_families()) {
        const auto b2 = assemble_boundary_mass(mesh, BoundaryField::constant(1.7), 2).to_dense();
        const auto b4 = assemble_boundary_mass(mesh, BoundaryField::constant(1.7), 4).to_dense();
        expect_dense_near(b2, b4, 1e-12);
        const auto f2 = assemble_load(mesh, SourceField::constant(3.0), 2);
        const auto f4 = assemble_load(mesh, SourceField::constant(3.0), 4);
        for (std::size_t i = 0; i < f2.size(); ++i)
            EXPECT_NEAR(f2[i], f4[i], 1e-12);
    }
}

TEST(Assembly, SystemMatrixIntervalLumped)
{
    const Mesh mesh = build_interval_mesh(2);
    const auto a = assemble_system(mesh, 1.0, BoundaryField::constant(1.0), true).to_dense();
    const Dense expected{{2 + 0.25 + 1, -2, 0}, {-2, 4 + 0.5, -2}, {0, -2, 2 + 0.25 + 1}};
    expect_dense_near(a, expected, 1e-14);
}

TEST(Assembly, SingularNeumannSystemRejected)
{
    const Mesh mesh = build_unit_square_mesh(2);
    try {
        assemble_system(mesh, 0.0, BoundaryField::constant(0.0));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::singular_system);
    }
    EXPECT_NO_THROW(assemble_system(mesh, 0.0, BoundaryField::constant(1.0)));
    EXPECT_THROW(assemble_system(mesh, -1.0, BoundaryField::constant(1.0)), Error);
}

TEST(Assembly, DiscreteCoercivityAndPositiveSemidefiniteness)
{
    std::mt19937 rng(42);
    for (const Mesh& mesh : all_families()) {
        const double lambda = 1.0;
        const auto k = assemble_stiffness(mesh);
        const auto m = assemble_mass(mesh);
        const auto b = assemble_boundary_mass(mesh, BoundaryField::constant(1.0));
        const auto a = assemble_system(mesh, lambda, BoundaryField::constant(1.0));
        for (int trial = 0; trial < 100; ++trial) {
            const auto v = random_vector(mesh.num_vertices(), rng);
            double norm2 = 0.0;
            for (double x : v)
                norm2 += x * x;
            EXPECT_GE(quadratic_form(k, v), -1e-10 * norm2);
            EXPECT_GE(quadratic_form(m, v), -1e-10 * norm2);
            EXPECT_GE(quadratic_form(b, v), -1e-10 * norm2);
            const double av = quadratic_form(a, v);
            EXPECT_GE(av, quadratic_form(k, v) + lambda * quadratic_form(m, v) - 1e-10);
            EXPECT_GT(av, 0.0);
        }
    }
}

TEST(Assembly, Deterministic)
{
    const Mesh mesh = build_unit_cube_mesh(3);
    const auto a1 = assemble_system(mesh, 1.0, BoundaryField::constant(1.3));
    const auto a2 = assemble_system(mesh, 1.0, BoundaryField::constant(1.3));
    EXPECT_EQ(a1.values(), a2.values());
    EXPECT_EQ(a1.columns(), a2.columns());
}
