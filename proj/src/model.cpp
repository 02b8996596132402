#include "thermodwell/model.hpp"

#include <cmath>
#include <string>

#include "thermodwell/errors.hpp"

namespace thermodwell {

namespace {

void check_omega(double omega) {
    if (!(omega > 0.0) || !std::isfinite(omega))
        throw ParameterError("omega must be positive and finite, got " + std::to_string(omega));
}

void check_temperature(double temperature) {
    if (!(temperature >= 0.0) || !std::isfinite(temperature))
        throw ParameterError("temperature must be nonnegative and finite, got " +
                             std::to_string(temperature));
}

}  // namespace

SystemParams::SystemParams(double omega, double delta, double g)
    : omega_(omega), delta_(delta), g_(g) {
    check_omega(omega);
    if (!(delta >= 0.0) || !std::isfinite(delta))
        throw ParameterError("delta must be nonnegative and finite, got " + std::to_string(delta));
    if (!(g > 0.0) || !std::isfinite(g))
        throw ParameterError("g must be positive and finite, got " + std::to_string(g));
}

DriveField::DriveField(double lambda_re, double lambda_im) : re_(lambda_re), im_(lambda_im) {
    if (!std::isfinite(lambda_re) || !std::isfinite(lambda_im))
        throw ParameterError("drive amplitude must be finite");
}

BathParams::BathParams(double temperature) : temperature_(temperature) {
    check_temperature(temperature);
}

BathParams BathParams::from_z(double z, const SystemParams& sys) {
    return BathParams(z * sys.omega());
}

double planck_occupation(double omega, double temperature) {
    check_omega(omega);
    check_temperature(temperature);
    if (temperature == 0.0) return 0.0;
    // expm1 keeps N ≈ T/Ω − 1/2 accurate when Ω/T is small; overflows to 1/inf = 0.
    return 1.0 / std::expm1(omega / temperature);
}

double planck_occupation(const SystemParams& sys, const BathParams& bath) {
    return planck_occupation(sys.omega(), bath.temperature());
}

double thermal_weight(double omega, double temperature) {
    check_omega(omega);
    check_temperature(temperature);
    if (temperature == 0.0) return 1.0;
    const double x = omega / (2.0 * temperature);
    if (x > kCothSaturation) return 1.0;
    const double coth = 1.0 / std::tanh(x);
    return coth * coth;
}

double thermal_weight(const SystemParams& sys, const BathParams& bath) {
    return thermal_weight(sys.omega(), bath.temperature());
}

}  // namespace thermodwell
