#include "thermodwell/sweep.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <string>

#include "thermodwell/errors.hpp"
#include "thermodwell/format.hpp"
#include "thermodwell/io.hpp"
#include "thermodwell/stationary.hpp"
#include "thermodwell/weakmeas.hpp"

namespace thermodwell {

Spacing parse_spacing(std::string_view name) {
    if (name == "linear") return Spacing::linear;
    if (name == "log") return Spacing::log;
    throw ParameterError("unknown spacing '" + std::string(name) + "'");
}

std::string_view to_string(Spacing spacing) {
    switch (spacing) {
        case Spacing::linear: return "linear";
        case Spacing::log: return "log";
    }
    throw ParameterError("invalid spacing");
}

void SweepConfig::validate() const {
    if (!(z_min >= 0.0) || !std::isfinite(z_min) || !std::isfinite(z_max))
        throw ParameterError("sweep bounds must be finite with z_min >= 0");
    if (!(z_min < z_max)) throw ParameterError("sweep requires z_min < z_max");
    if (points < 2) throw ParameterError("sweep requires at least 2 points");
    if (spacing == Spacing::log && !(z_min > 0.0))
        throw ParameterError("log spacing requires z_min > 0");
}

std::vector<double> SweepConfig::grid() const {
    validate();
    std::vector<double> z(static_cast<std::size_t>(points));
    const double last = points - 1;
    for (int i = 0; i < points; ++i) {
        const double u = i / last;
        z[i] = spacing == Spacing::linear ? z_min + u * (z_max - z_min)
                                          : z_min * std::pow(z_max / z_min, u);
    }
    z.front() = z_min;
    z.back() = z_max;
    return z;
}

std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
    std::vector<SweepRow> rows;
    const auto grid = cfg.grid();
    rows.reserve(grid.size());
    const double omega = cfg.sys.omega();
    for (const double z : grid) {
        try {
            const BathParams bath = BathParams::from_z(z, cfg.sys);
            const DecayBreakdown b = decay_constant(cfg.sys, bath, cfg.drive);
            const double tau_d = dwell_thermal(cfg.sys, bath, cfg.drive);
            rows.push_back({z, bath.temperature(), planck_occupation(cfg.sys, bath), b.pi_th, b.pi_q,
                            b.gamma, tau_d, 2.0 * omega * tau_d});
        } catch (const DegenerateDecayError& e) {
            throw DegenerateDecayError("at z = " + format_double(z) + ": " + e.what());
        } catch (const ParameterError& e) {
            throw ParameterError("at z = " + format_double(z) + ": " + e.what());
        }
    }
    return rows;
}

void write_sweep_csv(std::ostream& os, std::span<const SweepRow> rows) {
    os << kSweepCsvHeader << '\n';
    for (const auto& r : rows) {
        os << format_double(r.z) << ',' << format_double(r.temperature) << ','
           << format_double(r.occupation) << ',' << format_double(r.pi_th) << ','
           << format_double(r.pi_q) << ',' << format_double(r.gamma) << ','
           << format_double(r.tau_d) << ',' << format_double(r.f) << '\n';
    }
}

void write_sweep_csv(const std::filesystem::path& path, std::span<const SweepRow> rows) {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot open '" + path.string() + "' for writing");
    write_sweep_csv(file, rows);
    file.flush();
    if (!file) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace thermodwell
