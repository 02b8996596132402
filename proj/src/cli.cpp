#include "thermodwell/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "thermodwell/dynamics.hpp"
#include "thermodwell/errors.hpp"
#include "thermodwell/format.hpp"
#include "thermodwell/io.hpp"
#include "thermodwell/ladder.hpp"
#include "thermodwell/stationary.hpp"
#include "thermodwell/sweep.hpp"
#include "thermodwell/weakmeas.hpp"

namespace thermodwell::cli {

namespace {

using ojson = nlohmann::ordered_json;

// Raised for a missing required value; reported with the subcommand's usage text.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SharedOptions {
    std::optional<double> omega;
    std::optional<double> delta;
    std::optional<double> g;
    std::optional<double> lambda_re;
    std::optional<double> lambda_im;
    std::optional<double> temperature;
    std::string config;
    bool json = false;

    void attach(CLI::App& cmd) {
        cmd.add_option("--omega", omega, "Characteristic angular frequency (> 0)");
        cmd.add_option("--delta", delta, "Perturbation strength (>= 0)");
        cmd.add_option("--g", g, "System-field coupling (> 0)");
        cmd.add_option("--lambda-re", lambda_re, "Real part of the drive amplitude");
        cmd.add_option("--lambda-im", lambda_im, "Imaginary part of the drive amplitude");
        cmd.add_option("--temperature", temperature, "Bath temperature (>= 0, k_B = 1)");
        cmd.add_option("--config", config, "JSON file with default parameter values");
        cmd.add_flag("--json", json, "Print a single JSON object");
    }

    // Values from --config fill whatever the flags left unset.
    void merge_config() {
        if (config.empty()) return;
        std::ifstream file(config);
        if (!file) throw IoError("cannot open config file '" + config + "'");
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(file);
        } catch (const nlohmann::json::exception& e) {
            throw ParameterError("invalid config file '" + config + "': " + e.what());
        }
        if (!doc.is_object()) throw ParameterError("config file must hold a JSON object");
        const auto fill = [&](std::optional<double>& slot, const char* key) {
            if (slot || !doc.contains(key)) return;
            if (!doc[key].is_number()) throw ParameterError(std::string("config key '") + key + "' must be a number");
            slot = doc[key].get<double>();
        };
        fill(omega, "omega");
        fill(delta, "delta");
        fill(g, "g");
        fill(lambda_re, "lambda_re");
        fill(lambda_im, "lambda_im");
        fill(temperature, "temperature");
    }

    static double need(const std::optional<double>& v, const char* flag) {
        if (!v) throw UsageError(std::string("missing required option ") + flag);
        return *v;
    }

    SystemParams system(bool delta_required = true) const {
        const double d = delta_required ? need(delta, "--delta") : delta.value_or(0.0);
        return SystemParams(need(omega, "--omega"), d, need(g, "--g"));
    }
    DriveField drive() const { return DriveField(need(lambda_re, "--lambda-re"), need(lambda_im, "--lambda-im")); }
    BathParams bath() const { return BathParams(need(temperature, "--temperature")); }
};

ojson inputs(const SystemParams& sys, const DriveField& drive) {
    ojson j;
    j["omega"] = sys.omega();
    j["delta"] = sys.delta();
    j["g"] = sys.g();
    j["lambda_re"] = drive.re();
    j["lambda_im"] = drive.im();
    return j;
}

ojson bloch(const BlochState& s) {
    ojson j;
    j["re_sp"] = s.sp.real();
    j["im_sp"] = s.sp.imag();
    j["sz"] = s.sz;
    return j;
}

void print_human(std::ostream& out, const ojson& j, const std::string& prefix = "") {
    for (const auto& [key, value] : j.items()) {
        const std::string name = prefix.empty() ? key : prefix + "." + key;
        if (value.is_object()) {
            print_human(out, value, name);
        } else if (value.is_number_float()) {
            out << name << " = " << format_double(value.get<double>()) << '\n';
        } else if (value.is_string()) {
            out << name << " = " << value.get<std::string>() << '\n';
        } else {
            out << name << " = " << value.dump() << '\n';
        }
    }
}

void emit(std::ostream& out, const ojson& j, bool as_json) {
    if (as_json)
        out << j.dump() << '\n';
    else
        print_human(out, j);
}

std::ofstream open_output(const std::string& path) {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot open '" + path + "' for writing");
    return file;
}

DensityMatrix initial_density(const std::string& name) {
    if (name == "ground") return DensityMatrix::ground();
    if (name == "excited") return DensityMatrix::excited();
    if (name == "mixed") return DensityMatrix::maximally_mixed();
    if (name == "xplus") return bloch_to_density(BlochState{0.5, 0.0});
    throw ParameterError("unknown initial state '" + name + "'");
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Thermal decay constant and weak-value dwell time of a driven two-level system"};
    app.name("thermodwell");
    app.require_subcommand(1);

    SharedOptions shared;

    auto* stationary_cmd = app.add_subcommand("stationary", "Closed-form stationary Pauli expectation values");
    shared.attach(*stationary_cmd);

    auto* decay_cmd = app.add_subcommand("decay", "Decay constant and its thermal/quantum split");
    shared.attach(*decay_cmd);

    std::string dwell_mode = "thermal";
    std::optional<double> dwell_gamma, dwell_tau;
    auto* dwell_cmd = app.add_subcommand("dwell", "Weak-value dwell time");
    shared.attach(*dwell_cmd);
    dwell_cmd->add_option("--mode", dwell_mode, "integral|closed|approx|resonant|thermal")
        ->check(CLI::IsMember({"integral", "closed", "approx", "resonant", "thermal"}));
    dwell_cmd->add_option("--gamma", dwell_gamma, "Decay constant (default: from the parameters)");
    dwell_cmd->add_option("--tau-m", dwell_tau, "Measurement time (default: 1/omega)");

    std::string dissipator = "standard", representation = "density", initial = "mixed", evolve_output;
    double evolve_t_max = 10.0;
    int evolve_steps = 10000;
    bool free_hamiltonian = false, allow_coarse = false;
    auto* evolve_cmd = app.add_subcommand("evolve", "RK4 time evolution of the master/Bloch equations");
    shared.attach(*evolve_cmd);
    evolve_cmd->add_option("--dissipator", dissipator, "standard|verbatim")
        ->check(CLI::IsMember({"standard", "verbatim"}));
    evolve_cmd->add_option("--representation", representation, "density|bloch")
        ->check(CLI::IsMember({"density", "bloch"}));
    evolve_cmd->add_option("--initial", initial, "ground|excited|mixed|xplus")
        ->check(CLI::IsMember({"ground", "excited", "mixed", "xplus"}));
    evolve_cmd->add_option("--t-max", evolve_t_max, "Duration");
    evolve_cmd->add_option("--steps", evolve_steps, "RK4 step count");
    evolve_cmd->add_flag("--free-hamiltonian", free_hamiltonian, "Include (omega/2) sigma_z (density path)");
    evolve_cmd->add_flag("--allow-coarse-step", allow_coarse, "Permit h * rate_max > 0.1");
    evolve_cmd->add_option("--output", evolve_output, "CSV time series path");

    LadderConfig ladder_cfg;
    std::string ladder_output;
    bool ladder_json = false;
    auto* ladder_cmd = app.add_subcommand("ladder", "Decay of a level coupled to an equispaced ladder");
    ladder_cmd->add_option("--levels", ladder_cfg.n_levels, "N (ladder spans -N..N)");
    ladder_cmd->add_option("--spacing", ladder_cfg.delta_e, "Level spacing");
    ladder_cmd->add_option("--coupling", ladder_cfg.coupling, "Matrix element h");
    ladder_cmd->add_option("--t-max", ladder_cfg.t_max, "Duration");
    ladder_cmd->add_option("--steps", ladder_cfg.steps, "RK4 step count");
    ladder_cmd->add_option("--sample-every", ladder_cfg.sample_every, "Exported sample stride");
    ladder_cmd->add_flag("--allow-recurrence", ladder_cfg.allow_recurrence, "Permit t_max beyond pi/spacing");
    ladder_cmd->add_option("--output", ladder_output, "CSV amplitude series path");
    ladder_cmd->add_flag("--json", ladder_json, "Print a single JSON object");

    std::optional<double> horizon;
    int consistency_steps = 0;
    auto* consistency_cmd = app.add_subcommand("consistency", "Bloch fixed point versus closed form");
    shared.attach(*consistency_cmd);
    consistency_cmd->add_option("--horizon", horizon, "Integration horizon (default: 50 coherence times)");
    consistency_cmd->add_option("--steps", consistency_steps, "RK4 step count (0: automatic)");

    SweepConfig sweep_cfg;
    std::string spacing = "linear", sweep_output;
    auto* sweep_cmd = app.add_subcommand("sweep", "Dwell time versus z = T/omega");
    shared.attach(*sweep_cmd);
    sweep_cmd->add_option("--z-min", sweep_cfg.z_min, "Lower bound of z");
    sweep_cmd->add_option("--z-max", sweep_cfg.z_max, "Upper bound of z");
    sweep_cmd->add_option("--points", sweep_cfg.points, "Grid size");
    sweep_cmd->add_option("--spacing", spacing, "linear|log")->check(CLI::IsMember({"linear", "log"}));
    sweep_cmd->add_option("--output", sweep_output, "CSV path (default: stdout)");

    const auto usage = [&app]() {
        const auto subs = app.get_subcommands();
        return subs.empty() ? app.help() : subs.back()->help();
    };

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
        shared.merge_config();

        if (stationary_cmd->parsed()) {
            const auto sys = shared.system(false);
            const auto drive = shared.drive();
            const auto bath = shared.bath();
            ojson j;
            j["occupation"] = planck_occupation(sys, bath);
            j["denominator"] = stationary_denominator(sys, bath, drive);
            const BlochState s = stationary_state(sys, bath, drive);
            j.update(bloch(s));
            j["bloch_radius"] = s.radius();
            j["physical"] = s.is_physical();
            j["inputs"] = inputs(sys, drive);
            j["inputs"]["temperature"] = bath.temperature();
            emit(out, j, shared.json);
        } else if (decay_cmd->parsed()) {
            const auto sys = shared.system();
            const auto drive = shared.drive();
            const auto bath = shared.bath();
            const DecayBreakdown b = decay_constant(sys, bath, drive);
            ojson j;
            j["gamma"] = b.gamma;
            j["alpha"] = b.alpha;
            j["pi_th"] = b.pi_th;
            j["pi_q"] = b.pi_q;
            j["gamma_zero"] = zero_temperature_decay(sys, drive);
            j["occupation"] = planck_occupation(sys, bath);
            j["inputs"] = inputs(sys, drive);
            j["inputs"]["temperature"] = bath.temperature();
            emit(out, j, shared.json);
        } else if (dwell_cmd->parsed()) {
            ojson j;
            ojson in = ojson::object();
            double tau_d = 0.0;
            if (dwell_mode == "thermal") {
                const auto sys = shared.system();
                const auto drive = shared.drive();
                const auto bath = shared.bath();
                tau_d = dwell_thermal(sys, bath, drive);
                j["gamma"] = decay_constant(sys, bath, drive).gamma;
                in = inputs(sys, drive);
                in["temperature"] = bath.temperature();
            } else {
                double gamma = 0.0;
                if (dwell_gamma) {
                    gamma = *dwell_gamma;
                } else {
                    const auto sys = shared.system();
                    const auto drive = shared.drive();
                    const auto bath = shared.bath();
                    gamma = decay_constant(sys, bath, drive).gamma;
                    in = inputs(sys, drive);
                    in["temperature"] = bath.temperature();
                }
                j["gamma"] = gamma;
                if (dwell_mode == "resonant") {
                    const SystemParams sys(SharedOptions::need(shared.omega, "--omega"), 0.0, 1.0);
                    tau_d = dwell_resonant(sys, gamma);
                    in["omega"] = sys.omega();
                } else {
                    const double tau_m = dwell_tau ? *dwell_tau : 1.0 / SharedOptions::need(shared.omega, "--omega");
                    j["tau_m"] = tau_m;
                    if (dwell_mode == "integral")
                        tau_d = dwell_integral(MeasurementWindow(0.0, tau_m), gamma);
                    else if (dwell_mode == "closed")
                        tau_d = dwell_closed(gamma, tau_m);
                    else
                        tau_d = dwell_approx(gamma, tau_m);
                }
            }
            j["tau_d"] = tau_d;
            j["mode"] = dwell_mode;
            j["inputs"] = in;
            emit(out, j, shared.json);
        } else if (evolve_cmd->parsed()) {
            const auto sys = shared.system(false);
            const auto drive = shared.drive();
            const auto bath = shared.bath();
            EvolutionConfig cfg;
            cfg.t_max = evolve_t_max;
            cfg.steps = evolve_steps;
            cfg.mode = parse_dissipator_mode(dissipator);
            cfg.include_free_hamiltonian = free_hamiltonian;
            cfg.allow_coarse_step = allow_coarse;
            const DensityMatrix rho0 = initial_density(initial);

            std::vector<Observables> rows;
            if (representation == "bloch") {
                if (cfg.mode != DissipatorMode::standard || free_hamiltonian)
                    throw ParameterError("the Bloch representation supports only the standard, interaction-picture equations");
                rows = observables(evolve(density_to_bloch(rho0), sys, bath, drive, cfg));
            } else {
                rows = observables(evolve(rho0, sys, bath, drive, cfg));
            }
            if (!evolve_output.empty()) {
                auto file = open_output(evolve_output);
                write_evolution_csv(file, rows);
            }
            const Observables& last = rows.back();
            ojson j;
            j["t"] = last.t;
            j["re_sp"] = last.sp.real();
            j["im_sp"] = last.sp.imag();
            j["sz"] = last.sz;
            j["trace"] = last.trace;
            j["min_eigenvalue"] = last.min_eigenvalue;
            j["inputs"] = inputs(sys, drive);
            j["inputs"]["temperature"] = bath.temperature();
            j["inputs"]["dissipator"] = dissipator;
            j["inputs"]["representation"] = representation;
            j["inputs"]["initial"] = initial;
            j["inputs"]["t_max"] = cfg.t_max;
            j["inputs"]["steps"] = cfg.steps;
            emit(out, j, shared.json);
        } else if (ladder_cmd->parsed()) {
            const LadderResult r = ladder_decay(ladder_cfg);
            if (!ladder_output.empty()) {
                auto file = open_output(ladder_output);
                write_ladder_csv(file, r.samples);
            }
            const double golden = golden_rule_rate(ladder_cfg.coupling, ladder_cfg.delta_e);
            ojson j;
            j["decay_rate"] = r.decay_rate;
            j["amplitude_rate"] = r.amplitude_rate;
            j["golden_rule_rate"] = golden;
            j["r_squared"] = r.r_squared;
            j["fit_t_end"] = r.fit_t_end;
            j["max_probability_drift"] = r.max_probability_drift;
            j["continuum_regime"] = r.continuum_regime;
            ojson in;
            in["levels"] = ladder_cfg.n_levels;
            in["spacing"] = ladder_cfg.delta_e;
            in["coupling"] = ladder_cfg.coupling;
            in["t_max"] = ladder_cfg.t_max;
            in["steps"] = ladder_cfg.steps;
            j["inputs"] = in;
            emit(out, j, ladder_json);
        } else if (consistency_cmd->parsed()) {
            const auto sys = shared.system(false);
            const auto drive = shared.drive();
            const auto bath = shared.bath();
            const double coherence_rate =
                2.0 * sys.g() * sys.g() * sys.omega() * (2.0 * planck_occupation(sys, bath) + 1.0);
            const double h = horizon ? *horizon : 50.0 / coherence_rate;
            const ConsistencyReport report = consistency_report(sys, bath, drive, h, consistency_steps);
            ojson j;
            j["closed_form"] = bloch(report.closed_form);
            j["fixed_point"] = bloch(report.fixed_point);
            j["abs_diff"] = {{"sp", report.abs_diff_sp}, {"sz", report.abs_diff_sz}};
            j["settled"] = report.settled;
            j["driven"] = report.driven;
            j["inputs"] = inputs(sys, drive);
            j["inputs"]["temperature"] = bath.temperature();
            j["inputs"]["horizon"] = report.horizon;
            j["inputs"]["steps"] = report.steps;
            emit(out, j, shared.json);
        } else if (sweep_cmd->parsed()) {
            sweep_cfg.sys = shared.system();
            sweep_cfg.drive = shared.drive();
            sweep_cfg.spacing = parse_spacing(spacing);
            const auto rows = run_sweep(sweep_cfg);
            if (!sweep_output.empty()) write_sweep_csv(std::filesystem::path(sweep_output), rows);

            if (shared.json) {
                ojson j;
                for (const char* col : {"z", "temperature", "occupation", "pi_th", "pi_q", "gamma", "tau_d", "f"})
                    j[col] = ojson::array();
                for (const auto& r : rows) {
                    j["z"].push_back(r.z);
                    j["temperature"].push_back(r.temperature);
                    j["occupation"].push_back(r.occupation);
                    j["pi_th"].push_back(r.pi_th);
                    j["pi_q"].push_back(r.pi_q);
                    j["gamma"].push_back(r.gamma);
                    j["tau_d"].push_back(r.tau_d);
                    j["f"].push_back(r.f);
                }
                j["inputs"] = inputs(sweep_cfg.sys, sweep_cfg.drive);
                j["inputs"]["z_min"] = sweep_cfg.z_min;
                j["inputs"]["z_max"] = sweep_cfg.z_max;
                j["inputs"]["points"] = sweep_cfg.points;
                j["inputs"]["spacing"] = spacing;
                out << j.dump() << '\n';
            } else if (sweep_output.empty()) {
                write_sweep_csv(out, rows);
            } else {
                out << "rows = " << rows.size() << '\n' << "output = " << sweep_output << '\n';
            }
        }
        return kExitOk;
    } catch (const CLI::CallForHelp&) {
        out << usage();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n' << usage();
        return kExitParameter;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n' << usage();
        return kExitParameter;
    } catch (const ParameterError& e) {
        err << "parameter error: " << e.what() << '\n';
        return kExitParameter;
    } catch (const IoError& e) {
        err << "I/O error: " << e.what() << '\n';
        return kExitParameter;
    } catch (const NumericalError& e) {
        err << "numerical error: " << e.what() << '\n';
        return kExitNumerical;
    }
}

}  // namespace thermodwell::cli
