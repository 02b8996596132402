#include <doctest.h>

#include <cmath>
#include <complex>

#include "oracles.hpp"
#include "thermodwell/errors.hpp"
#include "thermodwell/io.hpp"
#include "thermodwell/stationary.hpp"

using namespace thermodwell;
using namespace std::complex_literals;

namespace {

const SystemParams kRefSys(1.0, 0.5, 1.0);
const DriveField kRefDrive(0.0, 1.0);

struct Draw {
    SystemParams sys;
    DriveField drive;
    BathParams bath;
};

Draw random_draw(oracle::Rng& rng) {
    const SystemParams sys(rng.log_uniform(0.1, 10.0), rng.log_uniform(1e-3, 10.0), rng.log_uniform(0.05, 5.0));
    const DriveField drive(rng.uniform(-3.0, 3.0), rng.log_uniform(1e-3, 3.0));
    const BathParams bath(sys.omega() * rng.log_uniform(1e-3, 1e3));
    return {sys, drive, bath};
}

}  // namespace

TEST_CASE("stationary_state reference values") {
    const BlochState ground = stationary_state(kRefSys, BathParams(0.0), DriveField{});
    CHECK(ground.sz == -1.0);
    CHECK(std::abs(ground.sp) == 0.0);

    for (double t : {0.2, 1.0, 7.0}) {
        const double n = oracle::planck(1.0, t);
        CHECK(stationary_state(kRefSys, BathParams(t), DriveField{}).sz ==
              doctest::Approx(-1.0 / (2.0 * n + 1.0)).epsilon(1e-14));
    }

    const BlochState driven = stationary_state(kRefSys, BathParams(0.0), kRefDrive);
    CHECK(stationary_denominator(kRefSys, BathParams(0.0), kRefDrive) == doctest::Approx(3.0));
    CHECK(driven.sz == doctest::Approx(-1.0 / 3.0).epsilon(1e-15));
    CHECK(driven.sp.real() == doctest::Approx(-2.0 / 3.0).epsilon(1e-15));
    CHECK(driven.sp.imag() == 0.0);
    CHECK(driven.sm() == std::conj(driven.sp));
    // The printed closed form lands outside the Bloch ball for this drive.
    CHECK_FALSE(driven.is_physical());
}

TEST_CASE("evolution_exponent reference values") {
    CHECK(evolution_exponent(kRefSys, BathParams(0.0), kRefDrive, 0.0) == 0.0);
    const std::complex<double> phi = evolution_exponent(kRefSys, BathParams(0.0), kRefDrive, 1.0);
    CHECK(phi.real() == doctest::Approx(-1.0 / 3.0).epsilon(1e-15));
    CHECK(phi.imag() == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    CHECK_THROWS_AS(evolution_exponent(kRefSys, BathParams(0.0), kRefDrive, -1.0), ParameterError);
}

TEST_CASE("evolution_exponent is linear in t and its modulus is the survival decay") {
    oracle::Rng rng(21);
    for (int i = 0; i < 200; ++i) {
        const Draw d = random_draw(rng);
        const double t = rng.uniform(0.0, 10.0);
        const auto phi = evolution_exponent(d.sys, d.bath, d.drive, t);
        const auto phi2 = evolution_exponent(d.sys, d.bath, d.drive, 2.0 * t);
        CHECK(std::abs(phi2 - 2.0 * phi) <= 1e-15 * std::abs(phi2));
        CHECK(phi.real() <= 0.0);
        const double gamma = decay_constant(d.sys, d.bath, d.drive).gamma;
        CHECK(oracle::rel_diff(std::abs(std::exp(phi)), std::exp(-gamma * t)) < 1e-12);
    }
}

TEST_CASE("decay_constant reference breakdown") {
    const DecayBreakdown b = decay_constant(kRefSys, BathParams(0.0), kRefDrive);
    CHECK(b.pi_th == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(b.pi_q == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(b.gamma == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(b.alpha == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    CHECK(b.gamma * (b.pi_th + b.pi_q) == doctest::Approx(1.0).epsilon(1e-15));

    const DecayBreakdown hot = decay_constant(kRefSys, BathParams(1e6), kRefDrive);
    CHECK(hot.gamma < 1e-12);
    CHECK(hot.pi_th > 1e12);
}

TEST_CASE("decay_constant rejects degenerate decay") {
    CHECK_THROWS_AS(decay_constant(SystemParams(1.0, 0.0, 1.0), BathParams(0.0), kRefDrive), DegenerateDecayError);
    CHECK_THROWS_AS(decay_constant(kRefSys, BathParams(0.0), DriveField(1.0, 0.0)), DegenerateDecayError);
    CHECK_THROWS_AS(decay_constant(kRefSys, BathParams(0.0), DriveField(1.0, -0.5)), DegenerateDecayError);
    // DegenerateDecayError is a parameter error
    CHECK_THROWS_AS(decay_constant(kRefSys, BathParams(0.0), DriveField{}), ParameterError);
}

TEST_CASE("decay_constant properties over random parameters") {
    oracle::Rng rng(22);
    for (int i = 0; i < 1000; ++i) {
        const Draw d = random_draw(rng);
        const DecayBreakdown b = decay_constant(d.sys, d.bath, d.drive);
        CHECK(oracle::rel_diff(b.gamma * (b.pi_th + b.pi_q), 1.0) < 1e-12);
        CHECK(b.gamma > 0.0);

        // Occupation-number route to the same Γ.
        const double n = oracle::planck(d.sys.omega(), d.bath.temperature());
        const double go = d.sys.g() * d.sys.omega();
        const double via_n = (2.0 * d.sys.delta() * d.drive.im() / go) /
                             ((2.0 * n + 1.0) * (2.0 * n + 1.0) + 2.0 * d.drive.norm2() / (go * go));
        CHECK(oracle::rel_diff(b.gamma, via_n) < 1e-12);

        const DecayBreakdown cold = decay_constant(d.sys, BathParams(0.0), d.drive);
        CHECK(cold.pi_q == b.pi_q);
        CHECK(b.pi_th >= cold.pi_th);
        const double gamma0 = (2.0 * d.sys.delta() * d.drive.im() / go) / (1.0 + 2.0 * d.drive.norm2() / (go * go));
        CHECK(oracle::rel_diff(cold.gamma, gamma0) < 1e-12);
        CHECK(oracle::rel_diff(zero_temperature_decay(d.sys, d.drive), gamma0) < 1e-12);
    }
}

TEST_CASE("decay_constant decreases with temperature") {
    double prev = decay_constant(kRefSys, BathParams(0.0), kRefDrive).gamma;
    const double pi_th0 = decay_constant(kRefSys, BathParams(0.0), kRefDrive).pi_th;
    for (int i = 1; i <= 300; ++i) {
        const double t = 0.02 * i;
        const DecayBreakdown b = decay_constant(kRefSys, BathParams(t), kRefDrive);
        if (1.0 / (2.0 * t) > kCothSaturation) {
            // thermal weight saturates to exactly 1 here
            CHECK(b.gamma == prev);
        } else {
            CHECK(b.gamma < prev);
            CHECK(b.pi_th > pi_th0);
        }
        prev = b.gamma;
    }
}

TEST_CASE("consistency_report: undriven fixed point matches the closed form") {
    const BathParams bath(1.0);
    const double n = oracle::planck(1.0, 1.0);
    const double horizon = 50.0 / (2.0 * (2.0 * n + 1.0));
    const ConsistencyReport r = consistency_report(kRefSys, bath, DriveField{}, horizon);
    CHECK(r.settled);
    CHECK_FALSE(r.driven);
    CHECK(std::abs(r.fixed_point.sz + 1.0 / (2.0 * n + 1.0)) < 1e-6);
    CHECK(r.abs_diff_sz < 1e-6);
    CHECK(r.abs_diff_sp < 1e-6);

    const ConsistencyReport cold = consistency_report(kRefSys, BathParams(0.0), DriveField{}, 25.0);
    CHECK(cold.closed_form.sz == -1.0);
    CHECK(cold.fixed_point.sz == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("consistency_report: driven fixed point departs from the closed form") {
    const ConsistencyReport r = consistency_report(kRefSys, BathParams(0.0), kRefDrive, 25.0);
    CHECK(r.settled);
    CHECK(r.driven);
    const auto fp = oracle::bloch_fixed_point(1.0, 1.0, 1.0i, 0.0);
    CHECK(std::abs(r.fixed_point.sp - fp.sp) < 1e-8);
    CHECK(std::abs(r.fixed_point.sz - fp.sz) < 1e-8);
    CHECK(r.abs_diff_sz > 0.1);
    CHECK(r.abs_diff_sp > 0.1);

    // Coefficient of |Λ|²/g²Ω² in the denominator: 1/8 from the dynamics, 2 in the closed form.
    const double denominator = -1.0 / r.fixed_point.sz;
    CHECK((denominator - 1.0) / 1.0 == doctest::Approx(0.125).epsilon(1e-8));
}

TEST_CASE("consistency_report: driven fixed point matches the linear-solve oracle") {
    oracle::Rng rng(23);
    for (int i = 0; i < 10; ++i) {
        const SystemParams sys(rng.uniform(0.5, 2.0), 0.3, rng.uniform(0.5, 1.5));
        const DriveField drive(rng.uniform(-1.0, 1.0), rng.uniform(0.1, 1.0));
        const double temperature = rng.uniform(0.0, 2.0);
        const double n = oracle::planck(sys.omega(), temperature);
        const double horizon = 60.0 / (2.0 * sys.g() * sys.g() * sys.omega() * (2.0 * n + 1.0));
        const ConsistencyReport r = consistency_report(sys, BathParams(temperature), drive, horizon);
        const auto fp = oracle::bloch_fixed_point(sys.omega(), sys.g(), drive.lambda(), temperature);
        CHECK(std::abs(r.fixed_point.sp - fp.sp) < 1e-8);
        CHECK(std::abs(r.fixed_point.sz - fp.sz) < 1e-8);
    }
}

TEST_CASE("consistency_report errors") {
    CHECK_THROWS_AS(consistency_report(kRefSys, BathParams(0.0), DriveField{}, 0.1), ConvergenceError);
    CHECK_THROWS_AS(consistency_report(kRefSys, BathParams(0.0), DriveField{}, -1.0), ParameterError);
}

TEST_CASE("consistency report JSON fields") {
    const ConsistencyReport r = consistency_report(kRefSys, BathParams(0.0), kRefDrive, 25.0);
    const nlohmann::json j = to_json(r);
    CHECK(j.contains("closed_form"));
    CHECK(j.contains("fixed_point"));
    CHECK(j.contains("abs_diff"));
    CHECK(j["settled"].get<bool>());
    CHECK(j["closed_form"]["sz"].get<double>() == r.closed_form.sz);
    CHECK(j["abs_diff"]["sz"].get<double>() == r.abs_diff_sz);
}
