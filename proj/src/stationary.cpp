#include "thermodwell/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "thermodwell/errors.hpp"
#include "thermodwell/format.hpp"

namespace thermodwell {

using namespace std::complex_literals;

namespace {

// 2|Λ|²/(gΩ)²
double drive_ratio(const SystemParams& sys, const DriveField& drive) {
    const double g_omega = sys.g() * sys.omega();
    return 2.0 * drive.norm2() / (g_omega * g_omega);
}

double max_abs_diff(const BlochState& a, const BlochState& b) {
    return std::max(std::abs(a.sp - b.sp), std::abs(a.sz - b.sz));
}

double max_abs(const BlochState& s) {
    return std::max(std::abs(s.sp), std::abs(s.sz));
}

constexpr long long kMaxConsistencySteps = 50'000'000;

}  // namespace

double stationary_denominator(const SystemParams& sys, const BathParams& bath,
                              const DriveField& drive) {
    const double m = 2.0 * planck_occupation(sys, bath) + 1.0;
    return m * m + drive_ratio(sys, drive);
}

BlochState stationary_state(const SystemParams& sys, const BathParams& bath,
                            const DriveField& drive) {
    const double m = 2.0 * planck_occupation(sys, bath) + 1.0;
    const double d = stationary_denominator(sys, bath, drive);
    BlochState s;
    s.sz = -m / d;
    s.sp = 2.0i * drive.lambda() / (sys.g() * sys.omega() * d);
    return s;
}

double oscillation_frequency(const SystemParams& sys, const BathParams& bath,
                             const DriveField& drive) {
    const double m = 2.0 * planck_occupation(sys, bath) + 1.0;
    return 0.5 * sys.omega() * m / stationary_denominator(sys, bath, drive);
}

std::complex<double> evolution_exponent(const SystemParams& sys, const BathParams& bath,
                                        const DriveField& drive, double t) {
    if (!(t >= 0.0) || !std::isfinite(t))
        throw ParameterError("time must be nonnegative and finite");
    const double alpha = oscillation_frequency(sys, bath, drive);
    const double gamma = 2.0 * sys.delta() * drive.im() / (sys.g() * sys.omega()) /
                         stationary_denominator(sys, bath, drive);
    return {-gamma * t, alpha * t};
}

DecayBreakdown decay_constant(const SystemParams& sys, const BathParams& bath,
                              const DriveField& drive) {
    if (!(sys.delta() > 0.0))
        throw DegenerateDecayError("decay constant requires delta > 0");
    if (!(drive.im() > 0.0))
        throw DegenerateDecayError("decay constant requires Im(lambda) > 0");

    const double weight = thermal_weight(sys, bath);
    const double g_omega = sys.g() * sys.omega();
    const double drive_coupling = sys.delta() * drive.im();

    DecayBreakdown b;
    b.gamma = (2.0 * drive_coupling / g_omega) / (weight + drive_ratio(sys, drive));
    b.alpha = oscillation_frequency(sys, bath, drive);
    b.pi_th = g_omega / (2.0 * drive_coupling) * weight;
    b.pi_q = drive.norm2() / (g_omega * drive_coupling);
    return b;
}

double zero_temperature_decay(const SystemParams& sys, const DriveField& drive) {
    const double g_omega = sys.g() * sys.omega();
    return (2.0 * sys.delta() * drive.im() / g_omega) /
           (1.0 + 2.0 * drive.norm2() / (g_omega * g_omega));
}

ConsistencyReport consistency_report(const SystemParams& sys, const BathParams& bath,
                                     const DriveField& drive, double horizon, int steps) {
    if (!(horizon > 0.0) || !std::isfinite(horizon))
        throw ParameterError("horizon must be positive and finite");
    if (steps < 0) throw ParameterError("steps must be nonnegative");
    if (steps == 0) {
        const double rate = max_generator_rate(sys, bath, drive);
        const double needed = std::ceil(horizon * rate / kStepWarnThreshold);
        if (needed > static_cast<double>(kMaxConsistencySteps))
            throw ParameterError("horizon requires more than " +
                                 std::to_string(kMaxConsistencySteps) + " steps");
        steps = std::max(10, static_cast<int>(needed));
    }

    EvolutionConfig cfg;
    cfg.t_max = horizon;
    cfg.steps = steps;
    const auto series = evolve(BlochState{}, sys, bath, drive, cfg);

    const BlochState& last = series.back().state;
    const BlochState& earlier = series[static_cast<std::size_t>(0.9 * steps)].state;
    const double scale = std::max(max_abs(last), std::numeric_limits<double>::min());
    const double change = max_abs_diff(last, earlier) / scale;

    ConsistencyReport report;
    report.closed_form = stationary_state(sys, bath, drive);
    report.fixed_point = last;
    report.abs_diff_sp = std::abs(report.closed_form.sp - last.sp);
    report.abs_diff_sz = std::abs(report.closed_form.sz - last.sz);
    report.settled = change < kSettledTol;
    report.driven = drive.norm2() > 0.0;
    report.horizon = horizon;
    report.steps = steps;

    if (!report.settled)
        throw ConvergenceError("evolution has not settled: relative change " +
                               format_double(change) + " over the final 10% of steps");
    if (!report.driven &&
        std::max(report.abs_diff_sp, report.abs_diff_sz) > kUndrivenAgreementTol)
        throw ConvergenceError("undriven fixed point disagrees with the closed form by " +
                               format_double(std::max(report.abs_diff_sp, report.abs_diff_sz)));
    return report;
}

}  // namespace thermodwell
