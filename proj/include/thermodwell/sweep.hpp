#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "thermodwell/model.hpp"

namespace thermodwell {

enum class Spacing { linear, log };

Spacing parse_spacing(std::string_view name);
std::string_view to_string(Spacing spacing);

struct SweepConfig {
    double z_min = 0.0;
    double z_max = 100.0;
    int points = 200;
    Spacing spacing = Spacing::linear;
    SystemParams sys{1.0, 0.5, 1.0};
    DriveField drive{0.0, 1.0};

    void validate() const;
    std::vector<double> grid() const;
};

struct SweepRow {
    double z;
    double temperature;
    double occupation;
    double pi_th;
    double pi_q;
    double gamma;
    double tau_d;
    double f;  // 2Ω τ_d
};

std::vector<SweepRow> run_sweep(const SweepConfig& cfg);

inline constexpr std::string_view kSweepCsvHeader = "z,temperature,occupation,pi_th,pi_q,gamma,tau_d,f";

void write_sweep_csv(std::ostream& os, std::span<const SweepRow> rows);
// Throws IoError if the file cannot be written.
void write_sweep_csv(const std::filesystem::path& path, std::span<const SweepRow> rows);

}  // namespace thermodwell
