#pragma once

#include "robin/sparse.hpp"

#include <span>
#include <vector>

namespace robin {

struct SolveReport {
    int iterations = 0;
    double final_relative_residual = 0.0;
    bool converged = false;
    /// Relative residual ||r_k|| / ||b|| after each iteration, starting with r_0.
    std::vector<double> residual_history;
};

struct CgOptions {
    double tol = 1e-10;
    int max_iter = 0; ///< 0 means 10 * dimension
    bool precondition = true;
};

struct CgResult {
    std::vector<double> x;
    SolveReport report;
};

/// Conjugate gradients (optionally Jacobi preconditioned) from a zero initial guess.
///
/// Convergence is judged on the recursively updated residual, relative to ||b||.
/// A loss of positive curvature (p^T A p <= 0, e.g. a singular matrix) stops the
/// iteration and is reported as non-convergence. Non-finite values throw
/// numeric-breakdown.
CgResult cg_solve(const SymmetricSparseMatrix& a, std::span<const double> b,
                  const CgOptions& options = {});

} // namespace robin
