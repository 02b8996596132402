// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "oracles.hpp"
#include "thermodwell/cli.hpp"
#include "thermodwell/dynamics.hpp"
#include "thermodwell/errors.hpp"
#include "thermodwell/ladder.hpp"
#include "thermodwell/model.hpp"
#include "thermodwell/stationary.hpp"
#include "thermodwell/sweep.hpp"
#include "thermodwell/weakmeas.hpp"

using namespace thermodwell;
using namespace std::complex_literals;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

class Failure : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
    if (!ok) throw Failure(what);
}

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

struct Reference {
    SystemParams sys;
    DriveField drive;
};

Reference load_reference() {
    std::ifstream f(std::filesystem::path(THERMODWELL_CONFIG_DIR) / "reference.json");
    if (!f) throw Failure("cannot open reference config");
    const auto j = nlohmann::json::parse(f);
    return {SystemParams(j.at("omega").get<double>(), j.at("delta").get<double>(), j.at("g").get<double>()),
            DriveField(j.at("lambda_re").get<double>(), j.at("lambda_im").get<double>())};
}

// Least-squares slope of y against x.
double slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

Outcome quadrature_oracle() {
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const double gt = std::pow(10.0, -3.0 + 4.0 * i / 19.0);
        for (const double tau : {0.5, 1.0, 4.0}) {
            const double gamma = gt / tau;
            const double diff = std::abs(dwell_integral(MeasurementWindow(0.0, tau), gamma) - dwell_closed(gamma, tau));
            worst = std::max(worst, diff);
        }
    }
    require(worst < 1e-10, "max |integral - closed| = " + sci(worst));
    return {true, "max |integral - closed| = " + sci(worst)};
}

Outcome algebraic_identity() {
    oracle::Rng rng(20261016);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const SystemParams sys(rng.log_uniform(0.1, 10.0), rng.log_uniform(0.01, 10.0), rng.log_uniform(0.1, 10.0));
        const DriveField drive(rng.uniform(-3.0, 3.0), rng.log_uniform(0.01, 5.0));
        const BathParams bath(rng.uniform(0.0, 1.0) < 0.1 ? 0.0 : rng.log_uniform(1e-3, 100.0) * sys.omega());
        // Γ evaluated independently from its defining expression.
        const double n = oracle::planck(sys.omega(), bath.temperature());
        const double go = sys.g() * sys.omega();
        const double gamma = (2.0 * sys.delta() * drive.im() / go) /
                             ((2.0 * n + 1.0) * (2.0 * n + 1.0) + 2.0 * drive.norm2() / (go * go));
        const double expected = 1.0 / (2.0 * sys.omega() + gamma);
        worst = std::max(worst, oracle::rel_diff(dwell_thermal(sys, bath, drive), expected));
    }
    require(worst < 1e-12, "max relative deviation = " + sci(worst));
    return {true, "max relative deviation = " + sci(worst)};
}

std::vector<SweepRow> reference_sweep(const Reference& ref) {
    SweepConfig cfg;
    cfg.sys = ref.sys;
    cfg.drive = ref.drive;
    cfg.z_min = 0.0;
    cfg.z_max = 100.0;
    cfg.points = 200;
    cfg.spacing = Spacing::linear;
    return run_sweep(cfg);
}

Outcome sweep_shape() {
    const Reference ref = load_reference();
    const auto rows = reference_sweep(ref);
    require(rows.size() == 200, "expected 200 rows");
    for (std::size_t i = 1; i < rows.size(); ++i)
        require(rows[i].f > rows[i - 1].f, "F not strictly increasing at z = " + std::to_string(rows[i].z));
    for (const auto& r : rows) require(r.f < 1.0, "F >= 1 at z = " + std::to_string(r.z));
    // F(0) = 2Ω τ_D(0) with Π_th(0) + Π_q from the config.
    const double go = ref.sys.g() * ref.sys.omega();
    const double di = ref.sys.delta() * ref.drive.im();
    const double s0 = go / (2.0 * di) + ref.drive.norm2() / (go * di);
    const double f0 = 2.0 * ref.sys.omega() * s0 / (1.0 + 2.0 * ref.sys.omega() * s0);
    const double err0 = std::abs(rows.front().f - f0);
    require(err0 < 1e-12, "|F(0) - expected| = " + sci(err0));
    require(rows.back().f > 0.999, "F(100) = " + std::to_string(rows.back().f));
    std::ostringstream os;
    os.precision(12);
    os << "F(0) = " << rows.front().f << " (expected " << f0 << "), F(100) = " << rows.back().f;
    return {true, os.str()};
}

Outcome decay_monotonicity() {
    const Reference ref = load_reference();
    const auto rows = reference_sweep(ref);
    for (std::size_t i = 1; i < rows.size(); ++i)
        require(rows[i].gamma < rows[i - 1].gamma, "Gamma not strictly decreasing at z = " + std::to_string(rows[i].z));
    const double go = ref.sys.g() * ref.sys.omega();
    const double gamma0 = (2.0 * ref.sys.delta() * ref.drive.im() / go) / (1.0 + 2.0 * ref.drive.norm2() / (go * go));
    const double rel = oracle::rel_diff(rows.front().gamma, gamma0);
    require(rel < 1e-12, "Gamma(0) relative deviation = " + sci(rel));
    require(oracle::rel_diff(zero_temperature_decay(ref.sys, ref.drive), gamma0) < 1e-12,
            "zero_temperature_decay disagrees");
    return {true, "Gamma(0) relative deviation = " + sci(rel)};
}

Outcome dynamics_oracle() {
    const SystemParams sys(1.0, 0.5, 1.0);
    const DriveField none;
    const BlochState start{0.3 - 0.2i, 0.4};
    double worst_sz = 0, worst_trace = 0, worst_path = 0, min_eig = 1.0;
    for (const double z : {0.0, 0.5, 1.0, 5.0}) {
        const BathParams bath(z * sys.omega());
        const double n = oracle::planck(sys.omega(), bath.temperature());
        // Slowest relaxation rate without drive is the coherence rate.
        const double rate = 2.0 * sys.g() * sys.g() * sys.omega() * (2.0 * n + 1.0);
        EvolutionConfig cfg;
        cfg.t_max = 50.0 / rate;
        cfg.steps = static_cast<int>(std::ceil(cfg.t_max * max_generator_rate(sys, bath, none) / 0.005));
        const auto dm = evolve(bloch_to_density(start), sys, bath, none, cfg);
        const auto bl = evolve(start, sys, bath, none, cfg);
        for (std::size_t i = 0; i < dm.size(); ++i) {
            worst_trace = std::max(worst_trace, std::abs(dm[i].rho.trace() - 1.0));
            min_eig = std::min(min_eig, min_eigenvalue(dm[i].rho));
            const BlochState s = density_to_bloch(dm[i].rho);
            worst_path = std::max({worst_path, std::abs(s.sp - bl[i].state.sp), std::abs(s.sz - bl[i].state.sz)});
        }
        worst_sz = std::max(worst_sz, std::abs(bl.back().state.sz + 1.0 / (2.0 * n + 1.0)));
    }
    const std::string detail = "|sz - sz_inf| = " + sci(worst_sz) + ", trace drift = " + sci(worst_trace) +
                               ", min eigenvalue = " + sci(min_eig) + ", path diff = " + sci(worst_path);
    require(worst_sz < 1e-6, detail);
    require(worst_trace < 1e-9, detail);
    require(min_eig > -1e-9, detail);
    require(worst_path < 1e-8, detail);
    return {true, detail};
}

Outcome coherence_rate() {
    const SystemParams sys(1.0, 0.5, 0.7);
    double worst = 0.0;
    for (const double z : {0.0, 0.5, 1.0, 5.0}) {
        const BathParams bath(z * sys.omega());
        const double n = oracle::planck(sys.omega(), bath.temperature());
        const double expected = 2.0 * sys.g() * sys.g() * sys.omega() * (2.0 * n + 1.0);
        EvolutionConfig cfg;
        cfg.t_max = 10.0 / expected;
        cfg.steps = static_cast<int>(std::ceil(cfg.t_max * max_generator_rate(sys, bath, DriveField{}) / 0.005));
        const auto series = evolve(BlochState{0.5, 0.0}, sys, bath, DriveField{}, cfg);
        std::vector<double> t, y;
        for (const auto& s : series) {
            t.push_back(s.t);
            y.push_back(std::log(std::abs(s.state.sp)));
        }
        worst = std::max(worst, oracle::rel_diff(-slope(t, y), expected));
    }
    require(worst < 1e-4, "max relative deviation = " + sci(worst));
    return {true, "max relative deviation = " + sci(worst)};
}

Outcome weak_boundaries() {
    oracle::Rng rng(7);
    double worst_imag = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double gamma = rng.log_uniform(1e-3, 10.0);
        const double t_i = rng.uniform(0.0, 5.0);
        const MeasurementWindow w(t_i, t_i + rng.log_uniform(1e-3, 5.0));
        require(weak_projection(w.t_i(), w, gamma) == 1.0, "P_w(t_i) != 1");
        require(weak_projection(w.t_f(), w, gamma) == 0.0, "P_w(t_f) != 0");
        const auto p = weak_projection(rng.uniform(w.t_i(), w.t_f()), w, gamma);
        worst_imag = std::max(worst_imag, std::abs(p.imag()));
        require(p.imag() == 0.0 && p.real() >= 0.0 && p.real() <= 1.0, "P_w out of [0, 1] or complex");
    }
    const double mid = weak_projection(1.0, MeasurementWindow(0.0, 2.0), 1.0).real();
    const double err = std::abs(mid - 1.0 / (std::exp(1.0) + 1.0));
    require(err < 1e-12, "|P_w(mid) - 1/(e+1)| = " + sci(err));
    return {true, "|P_w(mid) - 1/(e+1)| = " + sci(err)};
}

Outcome ladder_golden_rule() {
    LadderConfig cfg;
    cfg.n_levels = 400;
    cfg.delta_e = 0.05;
    cfg.coupling = 0.05;
    const LadderResult r = ladder_decay(cfg);
    const double golden = oracle::golden_rule(cfg.coupling, cfg.delta_e);
    const double rel = oracle::rel_diff(r.decay_rate, golden);
    const std::string detail = "rate = " + sci(r.decay_rate) + " vs " + sci(golden) + " (rel " + sci(rel) +
                               "), probability drift = " + sci(r.max_probability_drift);
    require(rel < 0.05, detail);
    require(r.max_probability_drift < 1e-8, detail);
    return {true, detail};
}

Outcome documented_discrepancies() {
    const SystemParams sys(1.0, 0.5, 1.0);
    const BathParams cold(0.0);

    // Verbatim generator does not conserve the trace of the excited state.
    EvolutionConfig cfg;
    cfg.t_max = 1.0;
    cfg.steps = 1000;
    cfg.mode = DissipatorMode::verbatim;
    const auto series = evolve(DensityMatrix::excited(), sys, cold, DriveField{}, cfg);
    const double trace_loss = 1.0 - series.back().rho.trace().real();
    require(trace_loss > 1e-3, "verbatim trace loss = " + sci(trace_loss));

    // Driven fixed point of the Bloch equations versus the closed-form state.
    const DriveField drive(0.0, 1.0);
    const ConsistencyReport rep = consistency_report(sys, cold, drive, 50.0);
    const auto fp = oracle::bloch_fixed_point(sys.omega(), sys.g(), drive.lambda(), 0.0);
    require(rep.driven && rep.abs_diff_sz > 0.1, "fixed-point sz difference = " + sci(rep.abs_diff_sz));
    require(std::abs(rep.fixed_point.sz - fp.sz) < 1e-8, "fixed point disagrees with the linear solve");

    // Printed zero-temperature dwell time versus the thermal formula at T = 0:
    // the printed form carries an extra Π_th(0).
    const double printed = dwell_zero_temperature_printed(sys, drive);
    const double thermal = dwell_thermal(sys, cold, drive);
    const DecayBreakdown b = decay_constant(sys, cold, drive);
    const double s_printed = printed / (1.0 - 2.0 * sys.omega() * printed);
    const double s_thermal = b.pi_th + b.pi_q;
    require(std::abs(printed - thermal) > 1e-3, "printed and thermal forms coincide");
    require(std::abs((s_printed - s_thermal) - b.pi_th) < 1e-12, "mismatch is not Pi_th(0)");

    return {true, "trace loss = " + sci(trace_loss) + ", fixed-point |d sz| = " + sci(rep.abs_diff_sz) +
                      ", dwell printed/thermal = " + sci(printed) + "/" + sci(thermal)};
}

Outcome determinism() {
    const auto dir = std::filesystem::temp_directory_path();
    const auto config = (std::filesystem::path(THERMODWELL_CONFIG_DIR) / "reference.json").string();
    std::string contents[2];
    for (int i = 0; i < 2; ++i) {
        const auto path = dir / ("thermodwell_acceptance_sweep_" + std::to_string(i) + ".csv");
        std::ostringstream out, err;
        const std::vector<std::string> args = {"sweep", "--config", config, "--output", path.string()};
        require(cli::run(args, out, err) == 0, "sweep failed: " + err.str());
        std::ifstream f(path, std::ios::binary);
        contents[i].assign(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
        std::filesystem::remove(path);
    }
    require(!contents[0].empty(), "empty CSV");
    require(contents[0] == contents[1], "CSV outputs differ");
    return {true, std::to_string(contents[0].size()) + " identical bytes"};
}

struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "dwell quadrature vs closed form", 1.0, quadrature_oracle},
        {2, "thermal dwell time identity", 1.0, algebraic_identity},
        {3, "F(z) shape", 1.0, sweep_shape},
        {4, "decay constant monotonicity", 1.0, decay_monotonicity},
        {5, "dynamics oracle", 10.0, dynamics_oracle},
        {6, "coherence decay rate", 5.0, coherence_rate},
        {7, "weak projection boundaries", 1.0, weak_boundaries},
        {8, "ladder golden rule", 30.0, ladder_golden_rule},
        {9, "documented discrepancies", 5.0, documented_discrepancies},
        {10, "sweep determinism", 1.0, determinism},
    };

    // Expected warnings (verbatim generator, recurrence checks) are not part of the report.
    std::vector<std::string> warnings;
    ScopedWarningSink sink([&](std::string_view w) { warnings.emplace_back(w); });

    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = c.run();
        } catch (const std::exception& e) {
            outcome = {false, e.what()};
        }
        const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (outcome.pass && elapsed >= c.limit_s) {
            outcome.pass = false;
            outcome.detail += "; runtime limit exceeded";
        }
        failures += outcome.pass ? 0 : 1;
        std::printf("[%s] %2d %-32s %8.3f s (< %g s)  %s\n", outcome.pass ? "PASS" : "FAIL", c.id, c.name, elapsed,
                    c.limit_s, outcome.detail.c_str());
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
