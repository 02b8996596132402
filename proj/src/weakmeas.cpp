#include "thermodwell/weakmeas.hpp"

#include <cmath>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "thermodwell/errors.hpp"
#include "thermodwell/format.hpp"
#include "thermodwell/stationary.hpp"

namespace thermodwell {

using namespace std::complex_literals;

namespace {

// e^w − 1 without cancellation for small |w|.
std::complex<double> cexpm1(std::complex<double> w) {
    const double a = w.real();
    const double b = w.imag();
    const double s = std::sin(0.5 * b);
    const double re = std::expm1(a) * std::cos(b) - 2.0 * s * s;
    const double im = std::exp(a) * std::sin(b);
    return {re, im};
}

void check_gamma(double gamma) {
    if (!(gamma > 0.0) || !std::isfinite(gamma))
        throw ParameterError("decay constant must be positive and finite, got " +
                             format_double(gamma));
}

void check_tau(double tau_m) {
    if (!(tau_m > 0.0) || !std::isfinite(tau_m))
        throw ParameterError("measurement time must be positive and finite, got " +
                             format_double(tau_m));
}

}  // namespace

BarrierWindow::BarrierWindow(double length) : length_(length) {
    if (!(length > 0.0) || !std::isfinite(length))
        throw ParameterError("barrier length must be positive and finite");
}

int barrier_indicator(double x, const BarrierWindow& window) {
    return (x >= 0.0 && x < window.length()) ? 1 : 0;
}

Matrix2c free_evolution(double t, const SystemParams& sys) {
    const double phase = 0.5 * sys.omega() * t;
    Matrix2c u = Matrix2c::Zero();
    u(0, 0) = std::polar(1.0, phase);
    u(1, 1) = std::polar(1.0, -phase);
    return u;
}

MeasurementWindow::MeasurementWindow(double t_i, double t_f, int k, double delta_e)
    : t_i_(t_i), t_f_(t_f), k_(k), delta_e_(delta_e) {
    if (!std::isfinite(t_i) || !std::isfinite(t_f))
        throw ParameterError("measurement window bounds must be finite");
    if (!(t_f > t_i)) throw ParameterError("measurement window requires t_f > t_i");
    if (!(delta_e >= 0.0) || !std::isfinite(delta_e))
        throw ParameterError("level spacing must be nonnegative and finite");
}

std::complex<double> u00(double t, double gamma) {
    check_gamma(gamma);
    if (!(t >= 0.0)) throw ParameterError("u00 requires t >= 0");
    return std::exp(-gamma * t);
}

std::complex<double> un0(double t, int n, double gamma, double delta_e, double coupling) {
    if (!(gamma >= 0.0) || !std::isfinite(gamma))
        throw ParameterError("decay constant must be nonnegative and finite");
    if (!(t >= 0.0)) throw ParameterError("un0 requires t >= 0");
    const std::complex<double> rate(gamma, -n * delta_e);
    if (rate == 0.0) throw ParameterError("singular denominator: gamma = i n delta_e");
    return 1.0i * coupling * cexpm1(-rate * t) / rate;
}

std::complex<double> weak_projection(double t, const MeasurementWindow& window, double gamma) {
    check_gamma(gamma);
    if (!(t >= window.t_i() && t <= window.t_f()))
        throw DomainError("t = " + format_double(t) + " lies outside [" +
                          format_double(window.t_i()) + ", " + format_double(window.t_f()) + "]");
    if (t == window.t_i()) return 1.0;
    if (t == window.t_f()) return 0.0;

    const double survival = std::exp(-gamma * (t - window.t_i()));
    if (window.k() == 0) {
        const double den = -std::expm1(-gamma * window.tau_m());
        if (std::abs(den) < kDegenerateWindowTol)
            throw DomainError("degenerate measurement window");
        return survival * (-std::expm1(-gamma * (window.t_f() - t))) / den;
    }
    const std::complex<double> c(-gamma, window.k() * window.delta_e());
    const std::complex<double> den = -cexpm1(c * window.tau_m());
    if (std::abs(den) < kDegenerateWindowTol) throw DomainError("degenerate measurement window");
    return survival * (-cexpm1(c * (window.t_f() - t))) / den;
}

double dwell_integral(const MeasurementWindow& window, double gamma) {
    check_gamma(gamma);
    if (window.k() != 0)
        throw ParameterError("dwell integral is defined for the k = 0 post-selection only");
    const auto integrand = [&](double t) { return weak_projection(t, window, gamma).real(); };

    // The integrand is bounded by 1, so its L1 norm is at most tau_m; a relative
    // tolerance of kDwellQuadratureTol / tau_m bounds the absolute error.
    double error = 0.0;
    const double result = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        integrand, window.t_i(), window.t_f(), 15, kDwellQuadratureTol / window.tau_m(), &error);
    if (!(error <= kDwellQuadratureTol) || !std::isfinite(result))
        throw QuadratureError("dwell quadrature error estimate " + format_double(error) +
                              " exceeds " + format_double(kDwellQuadratureTol));
    return result;
}

double dwell_closed(double gamma, double tau_m) {
    check_gamma(gamma);
    check_tau(tau_m);
    const double x = gamma * tau_m;
    if (x < kDwellSeriesCutoff) {
        // τ(1/2 − x/12 + x³/720)
        return tau_m * (0.5 - x / 12.0 + x * x * x / 720.0);
    }
    return (1.0 - x / std::expm1(x)) / gamma;
}

double dwell_approx(double gamma, double tau_m) {
    check_gamma(gamma);
    check_tau(tau_m);
    if (gamma * tau_m > kDwellApproxValidity)
        warn("dwell_approx outside its validity regime: gamma * tau_m = " +
             format_double(gamma * tau_m) + " > " + format_double(kDwellApproxValidity));
    return 1.0 / (2.0 / tau_m + gamma);
}

double dwell_resonant(const SystemParams& sys, double gamma) {
    check_gamma(gamma);
    return 1.0 / (2.0 * sys.omega() + gamma);
}

double dwell_thermal(const SystemParams& sys, const BathParams& bath, const DriveField& drive) {
    const DecayBreakdown b = decay_constant(sys, bath, drive);
    const double total = b.pi_th + b.pi_q;
    // S / (1 + 2ΩS) written as 1/(2Ω + 1/S): every operation is monotone in S,
    // so rounding cannot make the dwell time decrease with temperature.
    return 1.0 / (2.0 * sys.omega() + 1.0 / total);
}

double dwell_zero_temperature_printed(const SystemParams& sys, const DriveField& drive) {
    const double pi_q = decay_constant(sys, BathParams(0.0), drive).pi_q;
    const double g_omega = sys.g() * sys.omega();
    const double scaled = pi_q * (1.0 + g_omega * g_omega / drive.norm2());
    return scaled / (1.0 + 2.0 * sys.omega() * scaled);
}

}  // namespace thermodwell
