#include "robin/error.hpp"
#include "robin/experiments.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

using namespace robin;

namespace {

RobinProblem problem(const Mesh& mesh, double lambda, BoundaryField beta, SourceField f, double tol = 1e-12)
{
    RobinProblem p;
    p.mesh = &mesh;
    p.lambda = lambda;
    p.beta = std::move(beta);
    p.f = std::move(f);
    p.solver.tol = tol;
    return p;
}

double max_nodal_error(const DiscreteSolution& u, const std::function<double(double)>& exact)
{
    double err = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i)
        err = std::max(err, std::abs(u[i] - exact(u.mesh().vertex(i)[0])));
    return err;
}

} // namespace

TEST(AnalyticOracle, ClosedFormValues)
{
    const auto u = analytic_interval_solution(1.0, 1.0, 1.0);
    EXPECT_NEAR(u(0.5), 1.0 - std::exp(-0.5), 1e-15);
    EXPECT_NEAR(u(0.0), 1.0 - std::exp(-0.5) * std::cosh(0.5), 1e-15);
    EXPECT_NEAR(u(0.5), 0.3934693, 1e-7);
    EXPECT_NEAR(u(0.0), 0.3160603, 1e-7);

    const auto neumann = analytic_interval_solution(2.0, 0.0, 3.0);
    for (double x : {0.0, 0.3, 1.0})
        EXPECT_DOUBLE_EQ(neumann(x), 1.5);
    EXPECT_THROW(analytic_interval_solution(0.0, 1.0, 1.0), Error);
}

TEST(AnalyticOracle, SatisfiesOdeAndRobinConditionsByFiniteDifferences)
{
    for (double lambda : {0.5, 1.0, 9.0})
        for (double beta : {0.0, 1.0, 4.0}) {
            const double f = 1.3;
            const auto u = analytic_interval_solution(lambda, beta, f);
            const double step = 1e-3;
            for (double x : {0.2, 0.5, 0.77}) {
                const double second = (u(x + step) - 2.0 * u(x) + u(x - step)) / (step * step);
                EXPECT_NEAR(-second + lambda * u(x) - f, 0.0, 1e-5);
            }
            // one-sided second-order differences at the endpoints
            const double d0 = (-3.0 * u(0.0) + 4.0 * u(step) - u(2 * step)) / (2 * step);
            const double d1 = (3.0 * u(1.0) - 4.0 * u(1.0 - step) + u(1.0 - 2 * step)) / (2 * step);
            EXPECT_NEAR(-d0 + beta * u(0.0), 0.0, 1e-5);
            EXPECT_NEAR(d1 + beta * u(1.0), 0.0, 1e-5);
        }
}

TEST(SolveRobin, ConstantSolutionWithoutBoundaryCoupling)
{
    for (const Mesh& mesh : {build_interval_mesh(16), build_unit_square_mesh(8), build_unit_cube_mesh(4)}) {
        const auto u = solve_robin(problem(mesh, 4.0, BoundaryField::constant(0.0), SourceField::constant(2.0)));
        for (double v : u.values())
            EXPECT_NEAR(v, 0.5, 1e-10);
    }
}

TEST(SolveRobin, ZeroSource)
{
    const Mesh mesh = build_unit_square_mesh(6);
    const auto u = solve_robin(problem(mesh, 1.0, BoundaryField::constant(1.0), SourceField::constant(0.0)));
    for (double v : u.values())
        EXPECT_EQ(v, 0.0);
}

TEST(SolveRobin, MatchesIntervalOracle)
{
    const Mesh mesh = build_interval_mesh(128);
    const auto result = solve_robin_with_report(
        problem(mesh, 1.0, BoundaryField::constant(1.0), SourceField::constant(1.0)));
    EXPECT_TRUE(result.report.converged);
    const auto exact = analytic_interval_solution(1.0, 1.0, 1.0);
    EXPECT_LE(max_nodal_error(result.solution, exact), 5e-4);
    EXPECT_NEAR(result.solution[0], 0.3160603, 5e-4);
    EXPECT_NEAR(result.solution[64], 0.3934693, 5e-4);
}

TEST(SolveRobin, RejectsNonPositiveLambda)
{
    const Mesh mesh = build_interval_mesh(4);
    for (double lambda : {0.0, -1.0}) {
        try {
            solve_robin(problem(mesh, lambda, BoundaryField::constant(1.0), SourceField::constant(1.0)));
            FAIL();
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::invalid_argument);
        }
    }
}

TEST(SolveRobin, ReportsNonConvergence)
{
    const Mesh mesh = build_unit_cube_mesh(4);
    auto p = problem(mesh, 1.0, BoundaryField::constant(1.0), SourceField::constant(1.0));
    p.solver.max_iter = 1;
    try {
        solve_robin(p);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::non_convergence);
    }
}

TEST(SolveRobin, LinearInSource)
{
    const Mesh mesh = build_unit_square_mesh(10);
    const double tol = 1e-12;
    const auto f1 = SourceField::closure([](const Point& p) { return 1.0 + p[0]; });
    const auto f2 = SourceField::closure([](const Point& p) { return p[1] * p[1] - 0.3; });
    const auto f12 = SourceField::closure([](const Point& p) { return 1.0 + p[0] + p[1] * p[1] - 0.3; });
    const auto beta = BoundaryField::constant(0.7);
    const auto u1 = solve_robin(problem(mesh, 2.0, beta, f1, tol));
    const auto u2 = solve_robin(problem(mesh, 2.0, beta, f2, tol));
    const auto u12 = solve_robin(problem(mesh, 2.0, beta, f12, tol));
    for (std::size_t i = 0; i < u1.size(); ++i)
        EXPECT_NEAR(u12[i], u1[i] + u2[i], 10 * tol * (1.0 + sup_norm(u12)));
}

TEST(SolveRobin, BoundaryValuesDecreaseWithBeta)
{
    const Mesh mesh = build_interval_mesh(64);
    double previous = std::numeric_limits<double>::infinity();
    double previous_exact = previous;
    for (double beta : {0.0, 0.5, 1.0, 2.0, 8.0}) {
        auto p = problem(mesh, 1.0, BoundaryField::constant(beta), SourceField::constant(1.0));
        p.solver.lumped = true;
        const auto u = solve_robin(p);
        const double exact = analytic_interval_solution(1.0, beta, 1.0)(0.0);
        EXPECT_LT(u[0], previous);
        EXPECT_LT(exact, previous_exact);
        previous = u[0];
        previous_exact = exact;
    }
}

TEST(StabilitySweep, IdenticalBetasHaveNoInformativePairs)
{
    const Mesh mesh = build_unit_square_mesh(6);
    const std::vector<BoundaryField> betas(3, BoundaryField::constant(1.2));
    SweepOptions opts;
    opts.solver.tol = 1e-12;
    const auto records = stability_sweep(mesh, 1.0, SourceField::constant(1.0), betas, opts);
    ASSERT_EQ(records.size(), 6u);
    for (const auto& r : records) {
        EXPECT_LE(r.diff_sup_closure, 2e-12);
        EXPECT_FALSE(r.ratio.has_value());
    }
    EXPECT_THROW(estimate_constant(records), Error);
}

TEST(StabilitySweep, TwoConstantsOnIntervalMatchOracleGap)
{
    const Mesh mesh = build_interval_mesh(128);
    const std::vector<BoundaryField> betas{BoundaryField::constant(1.0), BoundaryField::constant(1.5)};
    SweepOptions opts;
    opts.solver.tol = 1e-12;
    const auto records = stability_sweep(mesh, 1.0, SourceField::constant(1.0), betas, opts);
    ASSERT_EQ(records.size(), 2u);

    const auto u1 = analytic_interval_solution(1.0, 1.0, 1.0);
    const auto u15 = analytic_interval_solution(1.0, 1.5, 1.0);
    double gap = 0.0;
    for (std::size_t i = 0; i < mesh.num_vertices(); ++i) {
        const double x = mesh.vertex(i)[0];
        gap = std::max(gap, std::abs(u1(x) - u15(x)));
    }
    for (const auto& r : records) {
        EXPECT_NEAR(r.diff_sup_closure, gap, 1e-3);
        EXPECT_DOUBLE_EQ(r.beta_diff_sup, 0.5);
        ASSERT_TRUE(r.ratio.has_value());
    }
    EXPECT_EQ(records[0].n, 0u);
    EXPECT_EQ(records[0].m, 1u);
    // The bound is asymmetric: the normalisation uses ||u_n|| on the boundary.
    EXPECT_NE(records[0].un_sup_boundary, records[1].un_sup_boundary);
}

TEST(StabilitySweep, CubeOneOverKSequence)
{
    const Mesh mesh = build_unit_cube_mesh(8);
    const auto betas = one_over_k_sequence(1.0, 10);
    SweepOptions opts;
    opts.threads = 3;
    const auto records = stability_sweep(mesh, 1.0, SourceField::constant(1.0), betas, opts);
    ASSERT_EQ(records.size(), 90u);
    for (std::size_t i = 0; i < records.size(); ++i) {
        ASSERT_TRUE(records[i].ratio.has_value());
        EXPECT_TRUE(std::isfinite(*records[i].ratio));
        EXPECT_GT(*records[i].ratio, 0.0);
        if (i > 0) {
            const auto& a = records[i - 1];
            const auto& b = records[i];
            EXPECT_TRUE(a.n < b.n || (a.n == b.n && a.m < b.m));
        }
    }
    const double c_hat = estimate_constant(records);
    for (const auto& r : records)
        EXPECT_LE(r.diff_sup_closure, c_hat * r.un_sup_boundary * r.beta_diff_sup * (1.0 + 1e-12));

    // Thread count does not change the numbers.
    opts.threads = 1;
    const auto serial = stability_sweep(mesh, 1.0, SourceField::constant(1.0), betas, opts);
    for (std::size_t i = 0; i < records.size(); ++i)
        EXPECT_EQ(*serial[i].ratio, *records[i].ratio);
}

TEST(StabilitySweep, SolveFailureNamesTheIndex)
{
    const Mesh mesh = build_unit_square_mesh(3);
    const std::vector<BoundaryField> betas{BoundaryField::constant(1.0), BoundaryField::constant(-1.0)};
    try {
        stability_sweep(mesh, 1.0, SourceField::constant(1.0), betas);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::invalid_coefficient);
        EXPECT_NE(std::string(e.what()).find("beta index 1"), std::string::npos);
    }
}

TEST(EstimateConstant, MaxOfDefinedRatios)
{
    std::vector<StabilityRecord> one(1);
    one[0].ratio = 2.5;
    EXPECT_EQ(estimate_constant(one), 2.5);
    std::vector<StabilityRecord> three(3);
    three[0].ratio = 1.0;
    three[1].ratio = 3.0;
    EXPECT_EQ(estimate_constant(three), 3.0);
    std::vector<StabilityRecord> none(2);
    try {
        estimate_constant(none);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::no_informative_pairs);
    }
}

TEST(ConvergenceStudy, EqualBetasGiveZeroError)
{
    const Mesh mesh = build_interval_mesh(32);
    const std::vector<BoundaryField> betas(3, BoundaryField::constant(1.0));
    SweepOptions opts;
    opts.solver.tol = 1e-12;
    for (const auto& r : convergence_study(mesh, 1.0, SourceField::constant(1.0), betas,
                                           BoundaryField::constant(1.0), opts))
        EXPECT_LE(r.sup_err_closure, 2e-12);
}

TEST(ConvergenceStudy, OneOverKOnInterval)
{
    const Mesh mesh = build_interval_mesh(128);
    const auto betas = one_over_k_sequence(1.0, 33);
    SweepOptions opts;
    opts.solver.tol = 1e-12;
    const auto records =
        convergence_study(mesh, 1.0, SourceField::constant(1.0), betas, BoundaryField::constant(1.0), opts);
    ASSERT_EQ(records.size(), 33u);
    for (std::size_t i = 1; i < records.size(); ++i)
        EXPECT_LE(records[i].sup_err_closure, records[i - 1].sup_err_closure + 1e-12);
    EXPECT_LE(records[32].sup_err_closure / records[1].sup_err_closure, 0.1);

    // The pairs (beta_n, beta_limit) obey the stability bound with their own constant.
    double c = 0.0;
    for (const auto& r : records)
        c = std::max(c, r.sup_err_closure / (r.un_sup_boundary * r.beta_diff_sup));
    for (const auto& r : records)
        EXPECT_LE(r.sup_err_closure, c * r.un_sup_boundary * r.beta_diff_sup * (1.0 + 1e-12));
}

TEST(Theorem0Ratio, UnitSourceAndScaling)
{
    const Mesh cube = build_unit_cube_mesh(4);
    const auto u = solve_robin(problem(cube, 1.0, BoundaryField::constant(1.0), SourceField::constant(1.0)));
    EXPECT_NEAR(theorem0_ratio(u, SourceField::constant(1.0), 4.0), sup_norm(u), 1e-14);

    const auto f = SourceField::closure([](const Point& p) { return 1.0 + p[0]; });
    const auto uf = solve_robin(problem(cube, 1.0, BoundaryField::constant(1.0), f));
    const auto u2f = solve_robin(problem(cube, 1.0, BoundaryField::constant(1.0), f.scaled(2.0)));
    const double r1 = theorem0_ratio(uf, f, 4.0);
    const double r2 = theorem0_ratio(u2f, f.scaled(2.0), 4.0);
    EXPECT_NEAR(r2, r1, 1e-10 * r1);
    EXPECT_THROW(theorem0_ratio(uf, SourceField::constant(0.0), 4.0), Error);
}

TEST(LevelSetPipeline, ZeroDifference)
{
    const Mesh cube = build_unit_cube_mesh(2);
    const DiscreteSolution zero(cube, std::vector<double>(cube.num_vertices(), 0.0));
    const auto result = level_set_pipeline(zero, 3, 1.0);
    EXPECT_TRUE(result.report.hypothesis_ok);
    EXPECT_TRUE(result.report.conclusion_ok);
    EXPECT_EQ(result.report.predicted_gap, 0.0);
}

TEST(LevelSetPipeline, CubePair)
{
    const Mesh cube = build_unit_cube_mesh(6);
    const auto u1 = solve_robin(problem(cube, 1.0, BoundaryField::constant(1.0), SourceField::constant(1.0)));
    const auto u15 = solve_robin(problem(cube, 1.0, BoundaryField::constant(1.5), SourceField::constant(1.0)));
    const auto diff = u1 - u15;
    const auto result = level_set_pipeline(diff, 3, 0.0);
    EXPECT_TRUE(result.report.hypothesis_ok);
    EXPECT_DOUBLE_EQ(result.params.alpha, 4.0);
    EXPECT_DOUBLE_EQ(result.params.delta, 3.0);
    ASSERT_EQ(result.samples.ks.size(), level_set_grid_points);
    const double top = sup_norm(diff, Region::boundary);
    for (std::size_t i = 0; i < result.samples.ks.size(); ++i) {
        if (i > 0)
            EXPECT_LE(result.samples.values[i], result.samples.values[i - 1]);
        if (result.samples.ks[i] >= top)
            EXPECT_EQ(result.samples.values[i], 0.0);
    }
    EXPECT_NEAR(result.samples.values.front(), 6.0, 1e-12);
}
