#include "robin/linalg.hpp"

#include "robin/error.hpp"

#include <cmath>

#include <fmt/format.h>

namespace robin {

namespace {

double dot(std::span<const double> a, std::span<const double> b)
{
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        sum += a[i] * b[i];
    return sum;
}

void require_finite(double value, const char* what, int iteration)
{
    if (!std::isfinite(value))
        throw Error(ErrorKind::numeric_breakdown,
                    fmt::format("non-finite {} at CG iteration {}", what, iteration));
}

} // namespace

CgResult cg_solve(const SymmetricSparseMatrix& a, std::span<const double> b, const CgOptions& options)
{
    const std::size_t n = a.dimension();
    if (b.size() != n)
        throw Error(ErrorKind::invalid_argument,
                    fmt::format("right-hand side of length {} for dimension {}", b.size(), n));
    if (!(options.tol > 0.0))
        throw Error(ErrorKind::invalid_argument, "CG tolerance must be positive");

    const int max_iter = options.max_iter > 0 ? options.max_iter : static_cast<int>(10 * n);

    CgResult result;
    result.x.assign(n, 0.0);
    SolveReport& report = result.report;

    const double b_norm = std::sqrt(dot(b, b));
    require_finite(b_norm, "right-hand side", 0);
    if (b_norm == 0.0) {
        report.converged = true;
        report.residual_history.push_back(0.0);
        return result;
    }

    std::vector<double> inv_diag(n, 1.0);
    if (options.precondition) {
        const auto diag = a.diagonal();
        for (std::size_t i = 0; i < n; ++i)
            inv_diag[i] = diag[i] > 0.0 ? 1.0 / diag[i] : 1.0;
    }

    std::vector<double> r(b.begin(), b.end());
    std::vector<double> z(n);
    std::vector<double> p(n);
    std::vector<double> ap(n);
    for (std::size_t i = 0; i < n; ++i)
        z[i] = inv_diag[i] * r[i];
    p = z;
    double rz = dot(r, z);

    double rel = 1.0;
    report.residual_history.push_back(rel);
    int it = 0;
    while (it < max_iter && rel > options.tol) {
        a.multiply(p, ap);
        const double curvature = dot(p, ap);
        require_finite(curvature, "curvature", it);
        if (curvature <= 0.0)
            break;
        const double alpha = rz / curvature;
        for (std::size_t i = 0; i < n; ++i) {
            result.x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        ++it;
        rel = std::sqrt(dot(r, r)) / b_norm;
        require_finite(rel, "residual", it);
        report.residual_history.push_back(rel);
        if (rel <= options.tol)
            break;

        for (std::size_t i = 0; i < n; ++i)
            z[i] = inv_diag[i] * r[i];
        const double rz_next = dot(r, z);
        const double beta = rz_next / rz;
        rz = rz_next;
        for (std::size_t i = 0; i < n; ++i)
            p[i] = z[i] + beta * p[i];
    }

    report.iterations = it;
    report.final_relative_residual = rel;
    report.converged = rel <= options.tol;
    return result;
}

} // namespace robin
