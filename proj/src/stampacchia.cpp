#include "robin/stampacchia.hpp"

#include "robin/analysis.hpp"
#include "robin/error.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace robin {

void validate(const StampacchiaParams& params)
{
    if (!(params.c >= 0.0) || !std::isfinite(params.c))
        throw Error(ErrorKind::invalid_argument, fmt::format("c = {} must be finite and >= 0", params.c));
    if (!(params.alpha > 0.0))
        throw Error(ErrorKind::invalid_argument, fmt::format("alpha = {} must be > 0", params.alpha));
    if (!(params.delta > 1.0))
        throw Error(ErrorKind::invalid_argument, fmt::format("delta = {} must be > 1", params.delta));
    if (!(params.k0 >= 0.0))
        throw Error(ErrorKind::invalid_argument, fmt::format("k0 = {} must be >= 0", params.k0));
    if (!(params.phi0 >= 0.0))
        throw Error(ErrorKind::invalid_argument, fmt::format("phi0 = {} must be >= 0", params.phi0));
}

void validate(const PhiSamples& samples)
{
    if (samples.ks.size() != samples.values.size())
        throw Error(ErrorKind::invalid_argument, "phi samples: levels and values differ in length");
    for (std::size_t i = 0; i < samples.ks.size(); ++i) {
        if (samples.values[i] < 0.0 || !std::isfinite(samples.values[i]))
            throw Error(ErrorKind::invalid_argument, fmt::format("phi sample {} is negative", i));
        if (i == 0)
            continue;
        if (!(samples.ks[i] > samples.ks[i - 1]))
            throw Error(ErrorKind::invalid_argument, "phi sample levels must be strictly increasing");
        if (samples.values[i] > samples.values[i - 1] + 1e-12)
            throw Error(ErrorKind::invalid_argument,
                        fmt::format("phi increases between samples {} and {}", i - 1, i));
    }
}

double stampacchia_gap(const StampacchiaParams& params)
{
    validate(params);
    if (params.phi0 == 0.0 || params.c == 0.0)
        return 0.0;
    const double delta = params.delta;
    const double exponent = params.variant == GapVariant::paper
                                ? delta * (delta - 1.0)
                                : params.alpha * delta / (delta - 1.0);
    const double power = params.c * std::pow(params.phi0, delta - 1.0) * std::exp2(exponent);
    return std::pow(power, 1.0 / params.alpha);
}

double fit_minimal_c(const PhiSamples& samples, double alpha, double delta)
{
    validate(samples);
    if (samples.ks.size() < 2)
        throw Error(ErrorKind::invalid_argument, "fitting c needs at least two samples");
    if (!(alpha > 0.0) || !(delta > 1.0))
        throw Error(ErrorKind::invalid_argument, "fitting c needs alpha > 0 and delta > 1");

    double c = 0.0;
    const std::size_t n = samples.ks.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double phi_k = samples.values[i];
        if (phi_k <= 0.0)
            continue;
        const double denominator = std::pow(phi_k, delta);
        for (std::size_t j = i + 1; j < n; ++j) {
            const double phi_h = samples.values[j];
            if (phi_h == 0.0)
                continue;
            c = std::max(c, phi_h * std::pow(samples.ks[j] - samples.ks[i], alpha) / denominator);
        }
    }
    return c;
}

DecayReport verify_decay(const PhiSamples& samples, const StampacchiaParams& params)
{
    validate(samples);
    validate(params);
    if (samples.ks.empty())
        throw Error(ErrorKind::invalid_argument, "no phi samples");

    DecayReport report;
    report.predicted_gap = stampacchia_gap(params);

    constexpr double slack = 1e-9;
    report.hypothesis_ok = true;
    const std::size_t n = samples.ks.size();
    for (std::size_t i = 0; i < n && report.hypothesis_ok; ++i) {
        if (samples.ks[i] < params.k0)
            continue;
        const double bound_factor = params.c * std::pow(samples.values[i], params.delta);
        for (std::size_t j = i + 1; j < n; ++j) {
            const double bound =
                bound_factor * std::pow(samples.ks[j] - samples.ks[i], -params.alpha) * (1.0 + slack);
            if (samples.values[j] > bound) {
                report.hypothesis_ok = false;
                break;
            }
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        if (samples.ks[i] >= params.k0 && samples.values[i] == 0.0) {
            report.vanish_point = samples.ks[i];
            break;
        }
    }

    const double target = params.k0 + report.predicted_gap;
    if (report.vanish_point) {
        report.conclusion_ok = *report.vanish_point <= target * (1.0 + slack);
    } else {
        if (report.hypothesis_ok && samples.ks.back() < target)
            throw Error(ErrorKind::invalid_argument,
                        fmt::format("phi samples end at {} before k0 + gap = {}", samples.ks.back(), target));
        report.conclusion_ok = false;
    }
    return report;
}

StampacchiaParams theorem_constants(int d, double composite_c)
{
    const Exponents e = exponents(d);
    StampacchiaParams params;
    params.c = composite_c;
    params.alpha = e.s;
    params.delta = e.s - 1.0;
    params.k0 = 0.0;
    params.phi0 = 0.0;
    validate(params);
    return params;
}

} // namespace robin
