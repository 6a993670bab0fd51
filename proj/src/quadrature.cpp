#include "robin/quadrature.hpp"

#include "robin/error.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

namespace robin {

void gauss_legendre_unit(int count, std::vector<double>& nodes, std::vector<double>& weights)
{
    nodes.assign(static_cast<std::size_t>(count), 0.0);
    weights.assign(static_cast<std::size_t>(count), 0.0);
    for (int i = 0; i < count; ++i) {
        // Newton on P_count starting from the Chebyshev-like guess.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (count + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= count; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (count == 1) {
                p1 = x;
                p0 = 1.0;
            }
            dp = count * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16)
                break;
        }
        const auto idx = static_cast<std::size_t>(count - 1 - i);
        nodes[idx] = 0.5 * (x + 1.0);
        weights[idx] = 1.0 / ((1.0 - x * x) * dp * dp);
    }
}

namespace {

QuadratureRule collapsed_gauss(int dim, int order)
{
    const int count = (order + dim + 1) / 2;
    std::vector<double> x;
    std::vector<double> w;
    gauss_legendre_unit(count, x, w);

    QuadratureRule rule;
    rule.dim = dim;
    if (dim == 1) {
        for (int i = 0; i < count; ++i) {
            rule.points.push_back({1.0 - x[i], x[i], 0.0, 0.0});
            rule.weights.push_back(w[i]);
        }
    } else if (dim == 2) {
        for (int i = 0; i < count; ++i) {
            for (int j = 0; j < count; ++j) {
                const double a = x[i];
                const double b = x[j] * (1.0 - x[i]);
                rule.points.push_back({1.0 - a - b, a, b, 0.0});
                rule.weights.push_back(2.0 * w[i] * w[j] * (1.0 - x[i]));
            }
        }
    } else {
        for (int i = 0; i < count; ++i) {
            for (int j = 0; j < count; ++j) {
                for (int k = 0; k < count; ++k) {
                    const double a = x[i];
                    const double b = x[j] * (1.0 - x[i]);
                    const double c = x[k] * (1.0 - x[i]) * (1.0 - x[j]);
                    rule.points.push_back({1.0 - a - b - c, a, b, c});
                    rule.weights.push_back(6.0 * w[i] * w[j] * w[k] * (1.0 - x[i]) *
                                           (1.0 - x[i]) * (1.0 - x[j]));
                }
            }
        }
    }
    return rule;
}

} // namespace

QuadratureRule simplex_rule(int dim, int order)
{
    if (dim < 0 || dim > 3)
        throw Error(ErrorKind::unsupported_dimension, fmt::format("no quadrature in dimension {}", dim));
    if (order < 1)
        throw Error(ErrorKind::invalid_argument, fmt::format("quadrature order {} < 1", order));

    QuadratureRule rule;
    rule.dim = dim;
    if (dim == 0) {
        rule.points.push_back({1.0, 0.0, 0.0, 0.0});
        rule.weights.push_back(1.0);
        return rule;
    }
    if (order == 1) {
        const double c = 1.0 / (dim + 1);
        std::array<double, 4> p{};
        for (int i = 0; i <= dim; ++i)
            p[static_cast<std::size_t>(i)] = c;
        rule.points.push_back(p);
        rule.weights.push_back(1.0);
        return rule;
    }
    if (order == 2) {
        if (dim == 1)
            return collapsed_gauss(1, 2);
        if (dim == 2) {
            const double a = 2.0 / 3.0;
            const double b = 1.0 / 6.0;
            rule.points = {{a, b, b, 0.0}, {b, a, b, 0.0}, {b, b, a, 0.0}};
            rule.weights = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
            return rule;
        }
        const double a = 0.5854101966249685;
        const double b = 0.1381966011250105;
        rule.points = {{a, b, b, b}, {b, a, b, b}, {b, b, a, b}, {b, b, b, a}};
        rule.weights = {0.25, 0.25, 0.25, 0.25};
        return rule;
    }
    return collapsed_gauss(dim, order);
}

} // namespace robin
