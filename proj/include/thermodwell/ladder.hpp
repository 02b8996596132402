#pragma once

#include <iosfwd>
#include <span>
#include <vector>

namespace thermodwell {

// A reference level coupled with strength h to 2N+1 equispaced levels
// E_n − E_0 = nΔE, n = −N..N.
struct LadderConfig {
    int n_levels = 400;
    double delta_e = 0.05;
    double coupling = 0.05;
    double t_max = 50.0;
    int steps = 10000;
    int sample_every = 10;
    bool allow_recurrence = false;  // permit t_max > π/ΔE (half the recurrence time)

    void validate() const;
    double recurrence_time() const;
};

struct LadderSample {
    double t;
    double a0_abs;
    double total_prob;
};

struct LadderResult {
    double decay_rate;      // fitted rate of |a0|², comparable to 2πh²/ΔE
    double amplitude_rate;  // decay_rate / 2, the rate of |a0|
    double r_squared;
    double fit_t_end;
    double max_probability_drift;
    bool continuum_regime;
    std::vector<LadderSample> samples;
};

// Golden-rule survival-probability rate 2πh²/ΔE.
double golden_rule_rate(double coupling, double delta_e);

inline constexpr double kFitWindowFraction = 0.4;
inline constexpr double kMinRSquared = 0.999;

// Integrates the amplitude equations with RK4 and fits log|a0|² on
// [0, min(t_max, 0.4 · 2π/ΔE)]. Throws FitDomainError if the fit window holds
// fewer than two samples, and NumericalError if the decay is not exponential
// (R² ≤ 0.999) inside the continuum regime ΔE < rate < 0.1·NΔE.
LadderResult ladder_decay(const LadderConfig& cfg);

// Columns: t,a0_abs,total_prob
void write_ladder_csv(std::ostream& os, std::span<const LadderSample> rows);

}  // namespace thermodwell
