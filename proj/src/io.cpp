#include "thermodwell/io.hpp"

namespace thermodwell {

using nlohmann::json;

json to_json(const BlochState& state) {
    return {{"re_sp", state.sp.real()}, {"im_sp", state.sp.imag()}, {"sz", state.sz}};
}

json to_json(const DecayBreakdown& b) {
    return {{"gamma", b.gamma}, {"alpha", b.alpha}, {"pi_th", b.pi_th}, {"pi_q", b.pi_q}};
}

json to_json(const ConsistencyReport& r) {
    return {{"closed_form", to_json(r.closed_form)},
            {"fixed_point", to_json(r.fixed_point)},
            {"abs_diff", {{"sp", r.abs_diff_sp}, {"sz", r.abs_diff_sz}}},
            {"settled", r.settled},
            {"driven", r.driven},
            {"horizon", r.horizon},
            {"steps", r.steps}};
}

json to_json(const SystemParams& sys, const DriveField& drive) {
    return {{"omega", sys.omega()}, {"delta", sys.delta()}, {"g", sys.g()},
            {"lambda_re", drive.re()}, {"lambda_im", drive.im()}};
}

}  // namespace thermodwell
