#pragma once

#include <complex>

#include "thermodwell/dynamics.hpp"
#include "thermodwell/model.hpp"

namespace thermodwell {

class BarrierWindow {
public:
    explicit BarrierWindow(double length);
    double length() const noexcept { return length_; }

private:
    double length_;
};

// 1 on [0, L), 0 elsewhere.
int barrier_indicator(double x, const BarrierWindow& window);

// diag(e^{iΩt/2}, e^{−iΩt/2})
Matrix2c free_evolution(double t, const SystemParams& sys);

// Pre-selection at t_i, post-selection into level k at t_f.
class MeasurementWindow {
public:
    MeasurementWindow(double t_i, double t_f, int k = 0, double delta_e = 0.0);

    double t_i() const noexcept { return t_i_; }
    double t_f() const noexcept { return t_f_; }
    double tau_m() const noexcept { return t_f_ - t_i_; }
    int k() const noexcept { return k_; }
    double delta_e() const noexcept { return delta_e_; }

private:
    double t_i_;
    double t_f_;
    int k_;
    double delta_e_;
};

// Survival element U₀₀(t) = e^{−Γt}.
std::complex<double> u00(double t, double gamma);

// Transition element U_n0(t) = i h (e^{(−Γ + inΔE)t} − 1)/(Γ − inΔE).
std::complex<double> un0(double t, int n, double gamma, double delta_e, double coupling);

inline constexpr double kDegenerateWindowTol = 1e-30;

// Weak value of the survival projector at t ∈ [t_i, t_f]. Real for k = 0.
std::complex<double> weak_projection(double t, const MeasurementWindow& window, double gamma);

inline constexpr double kDwellQuadratureTol = 1e-12;

// Adaptive Gauss-Kronrod integral of the k = 0 weak survival value over the window.
double dwell_integral(const MeasurementWindow& window, double gamma);

// (1/Γ)(1 − Γτ/(e^{Γτ} − 1)), switching to a series below Γτ = kDwellSeriesCutoff.
inline constexpr double kDwellSeriesCutoff = 1e-4;
double dwell_closed(double gamma, double tau_m);

// Second-order expansion 1/(2/τ + Γ). Warns when Γτ > kDwellApproxValidity.
inline constexpr double kDwellApproxValidity = 0.1;
double dwell_approx(double gamma, double tau_m);

// Expansion evaluated at τ = 1/Ω: 1/(2Ω + Γ).
double dwell_resonant(const SystemParams& sys, double gamma);

// (Π_th + Π_q)/(1 + 2Ω(Π_th + Π_q)) at the bath temperature.
double dwell_thermal(const SystemParams& sys, const BathParams& bath, const DriveField& drive);

// Zero-temperature dwell time in its printed closed form,
// Π_q(1 + g²Ω²/|Λ|²)/(1 + 2ΩΠ_q(1 + g²Ω²/|Λ|²)). Differs from
// dwell_thermal at T = 0; both are exposed so the gap can be reported.
double dwell_zero_temperature_printed(const SystemParams& sys, const DriveField& drive);

}  // namespace thermodwell
