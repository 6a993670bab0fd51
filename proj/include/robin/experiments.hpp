#pragma once

#include "robin/analysis.hpp"
#include "robin/fields.hpp"
#include "robin/linalg.hpp"
#include "robin/mesh.hpp"
#include "robin/stampacchia.hpp"

#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace robin {

struct SolverSettings {
    int quad_order = 2;
    bool lumped = false;
    double tol = 1e-10;
    int max_iter = 0; ///< 0 means 10 * dimension
    bool precondition = true;
};

/// -Laplace(u) + lambda u = f in the box, du/dnu + beta u = 0 on its boundary.
struct RobinProblem {
    const Mesh* mesh = nullptr;
    double lambda = 1.0;
    BoundaryField beta = BoundaryField::constant(1.0);
    SourceField f = SourceField::constant(1.0);
    SolverSettings solver;
};

struct RobinSolve {
    DiscreteSolution solution;
    SolveReport report;
};

/// Solves (K + lambda M + B) U = F. Requires lambda > 0; throws non-convergence
/// when CG misses the tolerance.
RobinSolve solve_robin_with_report(const RobinProblem& problem);
DiscreteSolution solve_robin(const RobinProblem& problem);

/// Closed-form solution on (0,1) for constant f and the same beta at both ends:
/// u(x) = f/lambda + A cosh(sqrt(lambda) (x - 1/2)),
/// A = -(beta f / lambda) / (sqrt(lambda) sinh(sqrt(lambda)/2) + beta cosh(sqrt(lambda)/2)).
std::function<double(double)> analytic_interval_solution(double lambda, double beta, double f_const);

/// beta_k = base + 1/(k+1) for k = 0..count-1, as constant fields.
std::vector<BoundaryField> one_over_k_sequence(double base, std::size_t count);

struct StabilityRecord {
    std::size_t n = 0;
    std::size_t m = 0;
    double diff_sup_closure = 0.0; ///< ||u_n - u_m|| on the closed domain
    double un_sup_boundary = 0.0;  ///< ||u_n|| on the boundary
    double beta_diff_sup = 0.0;    ///< ||beta_n - beta_m|| on the boundary
    std::optional<double> ratio;   ///< diff / (un * beta_diff), unset for uninformative pairs
};

struct SweepOptions {
    SolverSettings solver;
    unsigned threads = 1;
};

/// Solves once per beta and tabulates every ordered pair (n, m), n != m, sorted by (n, m).
std::vector<StabilityRecord> stability_sweep(const Mesh& mesh, double lambda, const SourceField& f,
                                             std::span<const BoundaryField> betas,
                                             const SweepOptions& options = {});

/// Largest defined ratio; throws no-informative-pairs if there is none.
double estimate_constant(std::span<const StabilityRecord> records);

struct ConvergenceRecord {
    std::size_t n = 0;
    double sup_err_closure = 0.0;  ///< ||u_n - u_limit|| on the closed domain
    double un_sup_boundary = 0.0;  ///< ||u_n|| on the boundary
    double beta_diff_sup = 0.0;    ///< ||beta_n - beta_limit|| on the boundary
};

/// Compares each u_n against the solution for beta_limit on the same mesh.
std::vector<ConvergenceRecord> convergence_study(const Mesh& mesh, double lambda,
                                                 const SourceField& f,
                                                 std::span<const BoundaryField> betas,
                                                 const BoundaryField& beta_limit,
                                                 const SweepOptions& options = {});

/// ||u|| on the closed domain over ||f||_p: an empirical lower bound for the
/// constant in the sup-norm bound of the solution operator.
double theorem0_ratio(const DiscreteSolution& u, const SourceField& f, double p, int quad_order = 2);

struct LevelSetPipelineResult {
    PhiSamples samples;
    StampacchiaParams params;
    DecayReport report;
};

inline constexpr std::size_t level_set_grid_points = 64;

/// Samples phi(k) = |boundary intersect {|u_diff| > k}| on a uniform grid over
/// [0, 1.5 ||u_diff||_boundary], fits c on the grid (taking the larger of the fit
/// and composite_c), and checks the decay lemma with the exponents of dimension d.
LevelSetPipelineResult level_set_pipeline(const DiscreteSolution& u_diff, int d, double composite_c,
                                          int quad_order = level_set_quad_order);

} // namespace robin
