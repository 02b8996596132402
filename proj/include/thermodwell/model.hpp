#pragma once

#include <complex>

namespace thermodwell {

// Natural units throughout: hbar = k_B = 1. Temperatures are energies and
// z = T / omega is the dimensionless temperature.

class SystemParams {
public:
    // Throws ParameterError unless omega > 0, g > 0, delta >= 0 (all finite).
    SystemParams(double omega, double delta, double g);

    double omega() const noexcept { return omega_; }
    double delta() const noexcept { return delta_; }
    double g() const noexcept { return g_; }

private:
    double omega_;
    double delta_;
    double g_;
};

// Complex amplitude of the classical drive component.
class DriveField {
public:
    DriveField() = default;
    DriveField(double lambda_re, double lambda_im);

    double re() const noexcept { return re_; }
    double im() const noexcept { return im_; }
    std::complex<double> lambda() const noexcept { return {re_, im_}; }
    double norm2() const noexcept { return re_ * re_ + im_ * im_; }

private:
    double re_ = 0.0;
    double im_ = 0.0;
};

class BathParams {
public:
    explicit BathParams(double temperature);

    double temperature() const noexcept { return temperature_; }
    double z(const SystemParams& sys) const noexcept { return temperature_ / sys.omega(); }

    static BathParams from_z(double z, const SystemParams& sys);

private:
    double temperature_;
};

// Bose occupation 1/(e^{omega/T} - 1); exactly 0 at T = 0.
double planck_occupation(double omega, double temperature);
double planck_occupation(const SystemParams& sys, const BathParams& bath);

// Above this value of omega/2T, coth^2 is returned as exactly 1
// (coth(20)^2 - 1 ~ 1.7e-17).
inline constexpr double kCothSaturation = 20.0;

// coth^2(omega / 2T) = (2N + 1)^2; exactly 1 at T = 0.
double thermal_weight(double omega, double temperature);
double thermal_weight(const SystemParams& sys, const BathParams& bath);

}  // namespace thermodwell
