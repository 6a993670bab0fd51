#include "robin/experiments.hpp"

#include "robin/assembly.hpp"
#include "robin/error.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

#include <fmt/format.h>

namespace robin {

RobinSolve solve_robin_with_report(const RobinProblem& problem)
{
    if (problem.mesh == nullptr)
        throw Error(ErrorKind::invalid_argument, "Robin problem without a mesh");
    if (!(problem.lambda > 0.0) || !std::isfinite(problem.lambda))
        throw Error(ErrorKind::invalid_argument,
                    fmt::format("lambda = {} must be > 0", problem.lambda));
    const Mesh& mesh = *problem.mesh;
    const SolverSettings& s = problem.solver;

    const SymmetricSparseMatrix a =
        assemble_system(mesh, problem.lambda, problem.beta, s.lumped, s.quad_order);
    const LoadVector load = assemble_load(mesh, problem.f, s.quad_order);

    CgResult cg = cg_solve(a, load, {s.tol, s.max_iter, s.precondition});
    if (!cg.report.converged)
        throw Error(ErrorKind::non_convergence,
                    fmt::format("CG stopped after {} iterations at relative residual {:.3e} (tol {:.3e})",
                                cg.report.iterations, cg.report.final_relative_residual, s.tol));
    return {DiscreteSolution(mesh, std::move(cg.x)), std::move(cg.report)};
}

DiscreteSolution solve_robin(const RobinProblem& problem)
{
    return solve_robin_with_report(problem).solution;
}

std::function<double(double)> analytic_interval_solution(double lambda, double beta, double f_const)
{
    if (!(lambda > 0.0))
        throw Error(ErrorKind::invalid_argument, fmt::format("lambda = {} must be > 0", lambda));
    if (!(beta >= 0.0))
        throw Error(ErrorKind::invalid_coefficient, fmt::format("beta = {} must be >= 0", beta));
    const double root = std::sqrt(lambda);
    const double amplitude = -(beta * f_const / lambda) /
                             (root * std::sinh(0.5 * root) + beta * std::cosh(0.5 * root));
    return [=](double x) { return f_const / lambda + amplitude * std::cosh(root * (x - 0.5)); };
}

std::vector<BoundaryField> one_over_k_sequence(double base, std::size_t count)
{
    std::vector<BoundaryField> betas;
    betas.reserve(count);
    for (std::size_t k = 0; k < count; ++k)
        betas.push_back(BoundaryField::constant(base + 1.0 / static_cast<double>(k + 1)));
    return betas;
}

namespace {

/// One solve per beta, spread over worker threads; results are index-addressed
/// so the output does not depend on scheduling.
std::vector<DiscreteSolution> solve_all(const Mesh& mesh, double lambda, const SourceField& f,
                                        std::span<const BoundaryField> betas,
                                        const SweepOptions& options)
{
    const std::size_t count = betas.size();
    std::vector<std::optional<DiscreteSolution>> solutions(count);
    std::vector<std::exception_ptr> failures(count);
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                RobinProblem problem{&mesh, lambda, betas[i], f, options.solver};
                solutions[i] = solve_robin(problem);
            } catch (...) {
                failures[i] = std::current_exception();
            }
        }
    };

    const unsigned threads = std::clamp<unsigned>(options.threads, 1, static_cast<unsigned>(std::max<std::size_t>(count, 1)));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back(worker);
    }

    for (std::size_t i = 0; i < count; ++i) {
        if (!failures[i])
            continue;
        try {
            std::rethrow_exception(failures[i]);
        } catch (const Error& e) {
            throw Error(e.kind(), fmt::format("solve failed for beta index {}: {}", i, e.what()));
        }
    }

    std::vector<DiscreteSolution> out;
    out.reserve(count);
    for (auto& s : solutions)
        out.push_back(std::move(*s));
    return out;
}

} // namespace

std::vector<StabilityRecord> stability_sweep(const Mesh& mesh, double lambda, const SourceField& f,
                                             std::span<const BoundaryField> betas,
                                             const SweepOptions& options)
{
    if (betas.size() < 2)
        throw Error(ErrorKind::invalid_argument, "a stability sweep needs at least two beta fields");
    const int quad_order = options.solver.quad_order;
    const std::vector<DiscreteSolution> solutions = solve_all(mesh, lambda, f, betas, options);

    std::vector<double> boundary_sup(betas.size());
    std::vector<double> beta_sup(betas.size());
    for (std::size_t i = 0; i < betas.size(); ++i) {
        boundary_sup[i] = sup_norm(solutions[i], Region::boundary);
        beta_sup[i] = robin::boundary_sup(betas[i], mesh, quad_order);
    }

    std::vector<StabilityRecord> records;
    records.reserve(betas.size() * (betas.size() - 1));
    for (std::size_t n = 0; n < betas.size(); ++n) {
        for (std::size_t m = 0; m < betas.size(); ++m) {
            if (n == m)
                continue;
            StabilityRecord r;
            r.n = n;
            r.m = m;
            r.diff_sup_closure = sup_norm(solutions[n] - solutions[m], Region::closure);
            r.un_sup_boundary = boundary_sup[n];
            r.beta_diff_sup = boundary_sup_diff(betas[n], betas[m], mesh, quad_order);
            const double denominator = r.un_sup_boundary * r.beta_diff_sup;
            if (r.beta_diff_sup > 1e-14 * (1.0 + beta_sup[n]) && denominator > 0.0)
                r.ratio = r.diff_sup_closure / denominator;
            records.push_back(r);
        }
    }
    return records;
}

double estimate_constant(std::span<const StabilityRecord> records)
{
    std::optional<double> best;
    for (const auto& r : records)
        if (r.ratio)
            best = std::max(best.value_or(*r.ratio), *r.ratio);
    if (!best)
        throw Error(ErrorKind::no_informative_pairs, "no record carries a defined ratio");
    return *best;
}

std::vector<ConvergenceRecord> convergence_study(const Mesh& mesh, double lambda,
                                                 const SourceField& f,
                                                 std::span<const BoundaryField> betas,
                                                 const BoundaryField& beta_limit,
                                                 const SweepOptions& options)
{
    std::vector<BoundaryField> all(betas.begin(), betas.end());
    all.push_back(beta_limit);
    const std::vector<DiscreteSolution> solutions = solve_all(mesh, lambda, f, all, options);
    const DiscreteSolution& limit = solutions.back();

    std::vector<ConvergenceRecord> records;
    records.reserve(betas.size());
    for (std::size_t n = 0; n < betas.size(); ++n) {
        ConvergenceRecord r;
        r.n = n;
        r.sup_err_closure = sup_norm(solutions[n] - limit, Region::closure);
        r.un_sup_boundary = sup_norm(solutions[n], Region::boundary);
        r.beta_diff_sup = boundary_sup_diff(betas[n], beta_limit, mesh, options.solver.quad_order);
        records.push_back(r);
    }
    return records;
}

double theorem0_ratio(const DiscreteSolution& u, const SourceField& f, double p, int quad_order)
{
    const double f_norm = lp_norm(f, u.mesh(), p, Support::domain, quad_order);
    if (f_norm == 0.0)
        throw Error(ErrorKind::invalid_argument, "source has zero L^p norm");
    return sup_norm(u, Region::closure) / f_norm;
}

LevelSetPipelineResult level_set_pipeline(const DiscreteSolution& u_diff, int d, double composite_c,
                                          int quad_order)
{
    LevelSetPipelineResult result;
    result.params = theorem_constants(d, composite_c);

    const double top = sup_norm(u_diff, Region::boundary);
    if (top == 0.0) {
        result.samples.ks = {0.0};
        result.samples.values = {0.0};
        result.report.hypothesis_ok = true;
        result.report.predicted_gap = 0.0;
        result.report.vanish_point = 0.0;
        result.report.conclusion_ok = true;
        return result;
    }

    const double upper = 1.5 * top;
    const std::size_t points = level_set_grid_points;
    result.samples.ks.resize(points);
    result.samples.values.resize(points);
    for (std::size_t i = 0; i < points; ++i) {
        const double k = upper * static_cast<double>(i) / static_cast<double>(points - 1);
        result.samples.ks[i] = k;
        result.samples.values[i] = level_set_measure(u_diff, k, Support::boundary, quad_order);
    }

    const double fitted = fit_minimal_c(result.samples, result.params.alpha, result.params.delta);
    result.params.c = std::max(composite_c, fitted);
    result.params.phi0 = result.samples.values.front();
    result.report = verify_decay(result.samples, result.params);
    return result;
}

} // namespace robin
