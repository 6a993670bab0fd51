#pragma once

#include <optional>
#include <vector>

namespace robin {

/// Which power of two appears in the vanishing-gap formula.
///  - paper:     d^alpha = c phi0^(delta-1) 2^(delta (delta-1))
///  - classical: d^alpha = c phi0^(delta-1) 2^(alpha delta / (delta-1))
/// The two agree when delta (delta-1) = alpha delta / (delta-1), e.g. (alpha, delta) = (4, 3).
enum class GapVariant { paper, classical };

/// Constants of the decay hypothesis phi(h) <= c (h-k)^-alpha phi(k)^delta, h > k >= k0.
struct StampacchiaParams {
    double c = 1.0;     ///< >= 0 (zero is allowed for degenerate composite constants)
    double alpha = 1.0; ///< > 0
    double delta = 2.0; ///< > 1
    double k0 = 0.0;    ///< >= 0
    double phi0 = 0.0;  ///< phi(k0) >= 0
    GapVariant variant = GapVariant::classical;
};

/// Sampled nonnegative, nonincreasing phi on an increasing grid of levels.
struct PhiSamples {
    std::vector<double> ks;
    std::vector<double> values;
};

struct DecayReport {
    bool hypothesis_ok = false;
    double predicted_gap = 0.0;
    std::optional<double> vanish_point;
    bool conclusion_ok = false;
};

void validate(const StampacchiaParams& params);
void validate(const PhiSamples& samples);

/// The gap d_gap such that phi(k0 + d_gap) = 0 under the decay hypothesis.
double stampacchia_gap(const StampacchiaParams& params);

/// Smallest c for which the decay hypothesis holds on every sampled pair h > k
/// with phi(k) > 0.
double fit_minimal_c(const PhiSamples& samples, double alpha, double delta);

/// Checks the decay hypothesis on all sampled pairs (relative slack 1e-9) and the
/// conclusion phi(k0 + d_gap) = 0 against the first sampled zero of phi.
///
/// Throws invalid-argument when the hypothesis holds but phi never vanishes on
/// the grid and the grid stops short of k0 + d_gap, since the conclusion is then
/// undecidable from the data.
DecayReport verify_decay(const PhiSamples& samples, const StampacchiaParams& params);

/// Parameters arising from the level-set argument in dimension d: alpha = s,
/// delta = s - 1, k0 = 0 and c = composite_c, with s the trace exponent.
StampacchiaParams theorem_constants(int d, double composite_c);

} // namespace robin
