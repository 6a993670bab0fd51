#include "robin/error.hpp"
#include "robin/expression.hpp"
#include "robin/fields.hpp"
#include "robin/quadrature.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

using namespace robin;

namespace {

// Exact integral of the monomial b0^e0 b1^e1 ... over the reference simplex,
// normalised by its volume: d! prod(e_i!) / (d + sum e_i)!.
double monomial_average(int dim, const std::array<int, 4>& e)
{
    auto fact = [](int k) { return std::tgamma(k + 1.0); };
    double num = fact(dim);
    int total = 0;
    for (int i = 0; i <= dim; ++i) {
        num *= fact(e[static_cast<std::size_t>(i)]);
        total += e[static_cast<std::size_t>(i)];
    }
    return num / fact(dim + total);
}

} // namespace

TEST(Quadrature, WeightsArePositiveAndSumToOne)
{
    for (int dim = 0; dim <= 3; ++dim) {
        for (int order = 1; order <= 6; ++order) {
            const QuadratureRule rule = simplex_rule(dim, order);
            EXPECT_NEAR(std::accumulate(rule.weights.begin(), rule.weights.end(), 0.0), 1.0, 1e-14);
            for (double w : rule.weights)
                EXPECT_GT(w, 0.0);
        }
    }
}

TEST(Quadrature, ExactForPolynomialsUpToOrder)
{
    for (int dim = 1; dim <= 3; ++dim) {
        for (int order = 1; order <= 6; ++order) {
            const QuadratureRule rule = simplex_rule(dim, order);
            // all exponent tuples on the first dim+1 barycentrics with total degree <= order
            for (int a = 0; a <= order; ++a)
                for (int b = 0; a + b <= order; ++b)
                    for (int c = 0; a + b + c <= order; ++c) {
                        if (dim < 2 && c > 0)
                            continue;
                        const std::array<int, 4> e{a, b, dim >= 2 ? c : 0, 0};
                        double sum = 0.0;
                        for (std::size_t q = 0; q < rule.size(); ++q) {
                            double v = rule.weights[q];
                            for (int i = 0; i <= dim; ++i)
                                v *= std::pow(rule.points[q][static_cast<std::size_t>(i)],
                                              e[static_cast<std::size_t>(i)]);
                            sum += v;
                        }
                        EXPECT_NEAR(sum, monomial_average(dim, e), 1e-14)
                            << "dim " << dim << " order " << order << " exps " << a << b << c;
                    }
        }
    }
}

TEST(Quadrature, RuleSizes)
{
    EXPECT_EQ(simplex_rule(0, 5).size(), 1u);
    EXPECT_EQ(simplex_rule(1, 1).size(), 1u);
    EXPECT_EQ(simplex_rule(1, 2).size(), 2u);
    EXPECT_EQ(simplex_rule(2, 2).size(), 3u);
    EXPECT_EQ(simplex_rule(3, 2).size(), 4u);
    EXPECT_THROW(simplex_rule(2, 0), Error);
}

TEST(Expression, ArithmeticAndPrecedence)
{
    const Point p{0.25, 2.0, -1.0};
    EXPECT_DOUBLE_EQ(Expression::parse("x + 1")(p), 1.25);
    EXPECT_DOUBLE_EQ(Expression::parse("1 + 2 * 3")(p), 7.0);
    EXPECT_DOUBLE_EQ(Expression::parse("(1 + 2) * 3")(p), 9.0);
    EXPECT_DOUBLE_EQ(Expression::parse("x*y - z/2")(p), 1.0);
    EXPECT_DOUBLE_EQ(Expression::parse("-x")(p), -0.25);
    EXPECT_DOUBLE_EQ(Expression::parse("--2")(p), 2.0);
    EXPECT_DOUBLE_EQ(Expression::parse("8 / 2 / 2")(p), 2.0);
    EXPECT_DOUBLE_EQ(Expression::parse("1.5e1 - .5")(p), 14.5);
    EXPECT_DOUBLE_EQ(Expression::parse(" 3 - 2 - 1 ")(p), 0.0);
}

TEST(Expression, RejectsMalformedInput)
{
    for (const char* bad : {"", "x +", "(x", "x)", "2 ^ 3", "w", "1 2", "sin(x)"}) {
        try {
            Expression::parse(bad);
            FAIL() << "accepted '" << bad << "'";
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::invalid_argument);
        }
    }
}

TEST(Fields, EvalBoundary)
{
    const Mesh interval = build_interval_mesh(2);
    EXPECT_DOUBLE_EQ(eval_boundary(BoundaryField::constant(1.0), 0, {}), 1.0);
    const auto table = BoundaryField::per_facet({0.5, 2.0});
    EXPECT_DOUBLE_EQ(eval_boundary(table, 1, interval.vertex(2)), 2.0);
    const auto shifted = BoundaryField::closure([](const Point& p) { return p[0] + 1.0; });
    EXPECT_DOUBLE_EQ(eval_boundary(shifted, 0, {0.25, 0.0, 0.0}), 1.25);
}

TEST(Fields, NegativeBetaRejectedAtEvaluation)
{
    const auto negative = BoundaryField::constant(-0.5); // construction succeeds
    try {
        eval_boundary(negative, 0, {});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::invalid_coefficient);
    }
    const auto closure = BoundaryField::closure([](const Point& p) { return p[0] - 0.5; });
    EXPECT_NO_THROW(eval_boundary(closure, 0, {0.75, 0.0, 0.0}));
    EXPECT_THROW(eval_boundary(closure, 0, {0.0, 0.0, 0.0}), Error);
}

TEST(Fields, BoundarySupDiff)
{
    const Mesh mesh = build_unit_square_mesh(3);
    const auto three = BoundaryField::constant(3.0);
    EXPECT_EQ(boundary_sup_diff(three, three, mesh), 0.0);
    EXPECT_DOUBLE_EQ(boundary_sup_diff(BoundaryField::constant(1.0), BoundaryField::constant(1.5), mesh), 0.5);
    const auto seq = [](int k) { return BoundaryField::constant(1.0 + 1.0 / (k + 1)); };
    EXPECT_DOUBLE_EQ(boundary_sup_diff(seq(1), seq(3), mesh), 0.25);
}

TEST(Fields, BoundarySupDiffIsAMetricOnSamples)
{
    const Mesh mesh = build_unit_square_mesh(4);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> coef(0.0, 2.0);
    auto random_field = [&] {
        const double a = coef(rng), b = coef(rng), c = coef(rng);
        return BoundaryField::closure([=](const Point& p) { return a + b * p[0] + c * p[1] * p[1]; });
    };
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = random_field();
        const auto b = random_field();
        const auto c = random_field();
        EXPECT_EQ(boundary_sup_diff(a, a, mesh), 0.0);
        EXPECT_EQ(boundary_sup_diff(a, b, mesh), boundary_sup_diff(b, a, mesh));
        EXPECT_LE(boundary_sup_diff(a, c, mesh),
                  boundary_sup_diff(a, b, mesh) + boundary_sup_diff(b, c, mesh) + 1e-15);
    }
}

TEST(Fields, BoundarySupAndInf)
{
    const Mesh interval = build_interval_mesh(2);
    EXPECT_DOUBLE_EQ(boundary_sup(BoundaryField::constant(2.0), interval), 2.0);
    const auto table = BoundaryField::per_facet({0.1, 7.0});
    EXPECT_DOUBLE_EQ(boundary_sup(table, interval), 7.0);
    EXPECT_DOUBLE_EQ(boundary_inf(table, interval), 0.1);

    // Constant fields are exact for every quadrature order.
    const Mesh cube = build_unit_cube_mesh(2);
    for (int order = 1; order <= 4; ++order)
        EXPECT_DOUBLE_EQ(boundary_sup(BoundaryField::constant(2.5), cube, order), 2.5);
}

TEST(Fields, ClosureSupMatchesBruteForceOverQuadraturePoints)
{
    const Mesh mesh = build_unit_square_mesh(8);
    const auto x1 = BoundaryField::closure([](const Point& p) { return p[0]; });
    for (int order : {1, 2, 3}) {
        const QuadratureRule rule = simplex_rule(1, order);
        double brute = 0.0;
        for (std::size_t f = 0; f < mesh.num_boundary_facets(); ++f) {
            const auto v = mesh.facet_vertices(f);
            for (const auto& b : rule.points)
                brute = std::max(brute, b[0] * mesh.vertex(v[0])[0] + b[1] * mesh.vertex(v[1])[0]);
        }
        const double sup = boundary_sup(x1, mesh, order);
        EXPECT_DOUBLE_EQ(sup, brute);
        EXPECT_NEAR(sup, 1.0, mesh.h());
    }
}

TEST(Fields, SourceScaling)
{
    const auto f = SourceField::closure([](const Point& p) { return 1.0 + p[0]; }, "1+x");
    const auto g = f.scaled(2.0);
    EXPECT_DOUBLE_EQ(g.eval({0.5, 0.0, 0.0}), 3.0);
    EXPECT_DOUBLE_EQ(SourceField::constant(1.5).scaled(2.0).constant_value(), 3.0);
    const auto bad = SourceField::closure([](const Point&) { return std::nan(""); });
    EXPECT_THROW(bad.eval({}), Error);
}
