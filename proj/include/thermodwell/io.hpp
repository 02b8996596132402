#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "thermodwell/dynamics.hpp"
#include "thermodwell/format.hpp"
#include "thermodwell/ladder.hpp"
#include "thermodwell/stationary.hpp"
#include "thermodwell/sweep.hpp"

namespace thermodwell {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

nlohmann::json to_json(const BlochState& state);
nlohmann::json to_json(const DecayBreakdown& breakdown);
// {closed_form, fixed_point, abs_diff, settled, ...}
nlohmann::json to_json(const ConsistencyReport& report);
nlohmann::json to_json(const SystemParams& sys, const DriveField& drive);

}  // namespace thermodwell
