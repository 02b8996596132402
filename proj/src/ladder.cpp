#include "thermodwell/ladder.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <ostream>
#include <vector>

#include <Eigen/Dense>

#include "thermodwell/errors.hpp"
#include "thermodwell/format.hpp"
#include "thermodwell/rk4.hpp"

namespace thermodwell {

using namespace std::complex_literals;

void LadderConfig::validate() const {
    if (n_levels < 1) throw ParameterError("ladder needs n_levels >= 1");
    if (!(delta_e > 0.0) || !std::isfinite(delta_e))
        throw ParameterError("level spacing must be positive and finite");
    if (!(coupling >= 0.0) || !std::isfinite(coupling))
        throw ParameterError("coupling must be nonnegative and finite");
    if (!(t_max > 0.0) || !std::isfinite(t_max))
        throw ParameterError("t_max must be positive and finite");
    if (steps < 1) throw ParameterError("steps must be at least 1");
    if (sample_every < 1) throw ParameterError("sample_every must be at least 1");
}

double LadderConfig::recurrence_time() const {
    return 2.0 * std::numbers::pi / delta_e;
}

double golden_rule_rate(double coupling, double delta_e) {
    return 2.0 * std::numbers::pi * coupling * coupling / delta_e;
}

namespace {

// Layout: y(0) = a0, y(1 + n + N) = a_n for n = -N..N.
class LadderRhs {
public:
    LadderRhs(int n_levels, double delta_e, double coupling)
        : n_(n_levels), delta_e_(delta_e), h_(coupling), phase_(n_levels + 1) {}

    Eigen::VectorXcd operator()(double t, const Eigen::VectorXcd& y) const {
        // phase_[n] = e^{i n ΔE t}, n = 0..N; negative n use the conjugate.
        const std::complex<double> w = std::polar(1.0, delta_e_ * t);
        phase_[0] = 1.0;
        for (int n = 1; n <= n_; ++n) phase_[n] = phase_[n - 1] * w;

        Eigen::VectorXcd dy(y.size());
        const std::complex<double> a0 = y(0);
        std::complex<double> sum = 0.0;
        for (int n = -n_; n <= n_; ++n) {
            const std::complex<double> p = n >= 0 ? phase_[n] : std::conj(phase_[-n]);
            const int idx = 1 + n + n_;
            sum += y(idx) * std::conj(p);
            dy(idx) = -1.0i * h_ * a0 * p;
        }
        dy(0) = -1.0i * h_ * sum;
        return dy;
    }

private:
    int n_;
    double delta_e_;
    double h_;
    mutable std::vector<std::complex<double>> phase_;
};

struct LineFit {
    double slope;
    double r_squared;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    const double slope = sxy / sxx;
    if (syy == 0.0) return {slope, 1.0};
    double ss_res = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (my + slope * (x[i] - mx));
        ss_res += r * r;
    }
    return {slope, 1.0 - ss_res / syy};
}

}  // namespace

LadderResult ladder_decay(const LadderConfig& cfg) {
    cfg.validate();
    if (2.0 * cfg.t_max >= cfg.recurrence_time()) {
        const std::string msg = "t_max = " + format_double(cfg.t_max) +
                                " reaches half the recurrence time 2pi/dE = " +
                                format_double(cfg.recurrence_time());
        if (!cfg.allow_recurrence) throw FitDomainError(msg);
        warn(msg);
    }

    const double fit_end = std::min(cfg.t_max, kFitWindowFraction * cfg.recurrence_time());
    const double h = cfg.t_max / cfg.steps;
    const LadderRhs rhs(cfg.n_levels, cfg.delta_e, cfg.coupling);

    Eigen::VectorXcd y = Eigen::VectorXcd::Zero(2 * cfg.n_levels + 2);
    y(0) = 1.0;

    LadderResult result{};
    std::vector<double> fit_t, fit_log;
    const auto record = [&](int step, double t) {
        const double p0 = std::norm(y(0));
        const double total = y.squaredNorm();
        result.max_probability_drift = std::max(result.max_probability_drift, std::abs(total - 1.0));
        if (step % cfg.sample_every == 0 || step == cfg.steps)
            result.samples.push_back({t, std::sqrt(p0), total});
        if (t <= fit_end && p0 > 0.0) {
            fit_t.push_back(t);
            fit_log.push_back(std::log(p0));
        }
    };

    record(0, 0.0);
    for (int i = 0; i < cfg.steps; ++i) {
        y = rk4_step(y, i * h, h, rhs);
        record(i + 1, (i + 1 == cfg.steps) ? cfg.t_max : (i + 1) * h);
    }

    if (fit_t.size() < 2)
        throw FitDomainError("fit window [0, " + format_double(fit_end) + "] holds fewer than two samples");

    const LineFit fit = fit_line(fit_t, fit_log);
    result.decay_rate = fit.slope == 0.0 ? 0.0 : -fit.slope;
    result.amplitude_rate = 0.5 * result.decay_rate;
    result.r_squared = fit.r_squared;
    result.fit_t_end = fit_end;
    result.continuum_regime = cfg.coupling > 0.0 && result.decay_rate > cfg.delta_e &&
                              result.decay_rate < 0.1 * cfg.n_levels * cfg.delta_e;
    if (result.continuum_regime && !(result.r_squared > kMinRSquared))
        throw NumericalError("survival probability is not exponential: R^2 = " +
                             format_double(result.r_squared));
    return result;
}

void write_ladder_csv(std::ostream& os, std::span<const LadderSample> rows) {
    os << "t,a0_abs,total_prob\n";
    for (const auto& r : rows)
        os << format_double(r.t) << ',' << format_double(r.a0_abs) << ','
           << format_double(r.total_prob) << '\n';
}

}  // namespace thermodwell
