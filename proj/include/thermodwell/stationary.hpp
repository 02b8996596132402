#pragma once

#include <complex>

#include "thermodwell/dynamics.hpp"
#include "thermodwell/model.hpp"

namespace thermodwell {

// Denominator shared by the closed-form stationary values:
// (2N + 1)^2 + 2|Λ|^2 / (g Ω)^2.
double stationary_denominator(const SystemParams& sys, const BathParams& bath,
                              const DriveField& drive);

// Closed-form stationary expectation values, exactly as printed:
//   <σz> = -(2N+1)/D,  <σ+> = 2iΛ/(gΩD).
BlochState stationary_state(const SystemParams& sys, const BathParams& bath,
                            const DriveField& drive);

// Oscillation frequency α of the survival amplitude.
double oscillation_frequency(const SystemParams& sys, const BathParams& bath,
                             const DriveField& drive);

// Φ(t) = iαt − Γt, with Γ computed from the occupation number (no sign check).
std::complex<double> evolution_exponent(const SystemParams& sys, const BathParams& bath,
                                        const DriveField& drive, double t);

struct DecayBreakdown {
    double gamma;  // decay constant Γ = 1/(Π_th + Π_q)
    double alpha;  // oscillation frequency
    double pi_th;  // thermal timescale, ∝ coth²(Ω/2T)
    double pi_q;   // temperature-independent timescale
};

// Temperature-dependent decay constant and its thermal/quantum split.
// Throws DegenerateDecayError when Δ = 0 or Im Λ ≤ 0.
DecayBreakdown decay_constant(const SystemParams& sys, const BathParams& bath,
                              const DriveField& drive);

// Zero-temperature decay constant Γ₀ = (2Δ ImΛ/gΩ) / (1 + 2|Λ|²/g²Ω²).
double zero_temperature_decay(const SystemParams& sys, const DriveField& drive);

inline constexpr double kSettledTol = 1e-8;
inline constexpr double kUndrivenAgreementTol = 1e-6;

struct ConsistencyReport {
    BlochState closed_form;
    BlochState fixed_point;
    double abs_diff_sp;
    double abs_diff_sz;
    bool settled;
    bool driven;
    double horizon;
    int steps;
};

// Integrates the Bloch equations to `horizon`, then compares the settled state
// with the closed-form stationary values. Agreement is enforced for Λ = 0 only;
// the driven-case difference is recorded, not asserted.
// Throws ConvergenceError if the run has not settled (relative max-norm change
// over the final 10% of steps >= kSettledTol).
// steps = 0 picks the step count from max_generator_rate.
ConsistencyReport consistency_report(const SystemParams& sys, const BathParams& bath,
                                     const DriveField& drive, double horizon, int steps = 0);

}  // namespace thermodwell
