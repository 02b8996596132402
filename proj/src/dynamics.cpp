#include "thermodwell/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "thermodwell/errors.hpp"
#include "thermodwell/format.hpp"
#include "thermodwell/rk4.hpp"

namespace thermodwell {

using namespace std::complex_literals;

namespace pauli {

Matrix2c sigma_plus() {
    Matrix2c m = Matrix2c::Zero();
    m(0, 1) = 1.0;
    return m;
}

Matrix2c sigma_minus() {
    Matrix2c m = Matrix2c::Zero();
    m(1, 0) = 1.0;
    return m;
}

Matrix2c sigma_z() {
    Matrix2c m = Matrix2c::Zero();
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
    return m;
}

}  // namespace pauli

DissipatorMode parse_dissipator_mode(std::string_view name) {
    if (name == "standard") return DissipatorMode::standard;
    if (name == "verbatim") return DissipatorMode::verbatim;
    throw ParameterError("unknown dissipator mode '" + std::string(name) + "'");
}

std::string_view to_string(DissipatorMode mode) {
    switch (mode) {
        case DissipatorMode::standard: return "standard";
        case DissipatorMode::verbatim: return "verbatim";
    }
    throw ParameterError("invalid dissipator mode");
}

double min_eigenvalue(const Matrix2c& m) {
    const double a = m(0, 0).real();
    const double d = m(1, 1).real();
    const std::complex<double> b = 0.5 * (m(0, 1) + std::conj(m(1, 0)));
    const double half_gap = std::hypot(0.5 * (a - d), std::abs(b));
    return 0.5 * (a + d) - half_gap;
}

DensityMatrix::DensityMatrix(const Matrix2c& m) : m_(m) {
    for (int i = 0; i < 2; ++i) {
        if (!std::isfinite(m(i, 0).real()) || !std::isfinite(m(i, 0).imag()) ||
            !std::isfinite(m(i, 1).real()) || !std::isfinite(m(i, 1).imag()))
            throw StateError("density matrix has non-finite entries");
    }
    if (std::abs(m(1, 0) - std::conj(m(0, 1))) > kHermiticityTol ||
        std::abs(m(0, 0).imag()) > kHermiticityTol || std::abs(m(1, 1).imag()) > kHermiticityTol)
        throw StateError("density matrix is not Hermitian");
    if (std::abs(m.trace() - 1.0) > kTraceTol)
        throw StateError("density matrix trace differs from 1");
    if (min_eigenvalue(m) < -kPositivityTol)
        throw StateError("density matrix is not positive semidefinite");
}

DensityMatrix DensityMatrix::excited() {
    Matrix2c m = Matrix2c::Zero();
    m(0, 0) = 1.0;
    return DensityMatrix(m);
}

DensityMatrix DensityMatrix::ground() {
    Matrix2c m = Matrix2c::Zero();
    m(1, 1) = 1.0;
    return DensityMatrix(m);
}

DensityMatrix DensityMatrix::maximally_mixed() {
    return DensityMatrix(Matrix2c::Identity() * 0.5);
}

double BlochState::radius() const noexcept {
    return std::hypot(sz, 2.0 * std::abs(sp));
}

bool BlochState::is_physical(double tol) const noexcept {
    const double r = radius();
    return std::isfinite(r) && 0.5 * (1.0 - r) >= -tol;
}

DensityMatrix bloch_to_density(const BlochState& state) {
    if (!state.is_physical())
        throw StateError("Bloch state lies outside the Bloch ball (radius " +
                         format_double(state.radius()) + ")");
    Matrix2c m;
    m(0, 0) = 0.5 * (1.0 + state.sz);
    m(1, 1) = 0.5 * (1.0 - state.sz);
    m(1, 0) = state.sp;
    m(0, 1) = std::conj(state.sp);
    return DensityMatrix(m);
}

BlochState density_to_bloch(const Matrix2c& rho) {
    return {rho(1, 0), (rho(0, 0) - rho(1, 1)).real()};
}

BlochState density_to_bloch(const DensityMatrix& rho) {
    return density_to_bloch(rho.matrix());
}

LindbladGenerator LindbladGenerator::make(const SystemParams& sys, const BathParams& bath,
                                          const DriveField& drive, DissipatorMode mode,
                                          bool include_free_hamiltonian) {
    const double n = planck_occupation(sys, bath);
    const double base = sys.g() * sys.g() * sys.omega();
    LindbladGenerator gen;
    switch (mode) {
        case DissipatorMode::standard:
            gen.gamma_down = 4.0 * base * (n + 1.0);
            gen.gamma_up = 4.0 * base * n;
            break;
        case DissipatorMode::verbatim:
            gen.gamma_down = 2.0 * base * (n + 1.0);
            gen.gamma_up = 2.0 * base * n;
            break;
        default:
            throw ParameterError("invalid dissipator mode");
    }
    gen.g = sys.g();
    gen.lambda = drive.lambda();
    gen.free_omega = include_free_hamiltonian ? sys.omega() : 0.0;
    gen.mode = mode;
    return gen;
}

Matrix2c LindbladGenerator::apply(const Matrix2c& rho) const {
    static const Matrix2c sp = pauli::sigma_plus();
    static const Matrix2c sm = pauli::sigma_minus();
    static const Matrix2c sz = pauli::sigma_z();
    static const Matrix2c pm = sp * sm;  // excited projector
    static const Matrix2c mp = sm * sp;  // ground projector

    Matrix2c out;
    if (mode == DissipatorMode::standard) {
        out = gamma_down * (sm * rho * sp - 0.5 * (pm * rho + rho * pm)) +
              gamma_up * (sp * rho * sm - 0.5 * (mp * rho + rho * mp));
    } else {
        out = gamma_down * (sm * rho * sp - pm * rho - rho * pm) +
              gamma_up * (sp * rho * sm - mp * rho - rho * mp);
    }
    Matrix2c h = g * (lambda * sp + std::conj(lambda) * sm);
    if (free_omega != 0.0) h += 0.5 * free_omega * sz;
    out += -1i * (h * rho - rho * h);
    return out;
}

Matrix2c lindblad_rhs(const DensityMatrix& rho, const SystemParams& sys, const BathParams& bath,
                      const DriveField& drive, DissipatorMode mode) {
    return LindbladGenerator::make(sys, bath, drive, mode).apply(rho.matrix());
}

namespace {

struct BlochCoefficients {
    double coherence_rate;  // 2g²Ω(2N+1)
    double population_rate; // 4g²Ω(2N+1)
    double pump;            // 4g²Ω
    double g;
    std::complex<double> lambda;

    static BlochCoefficients make(const SystemParams& sys, const BathParams& bath,
                                  const DriveField& drive) {
        const double n = planck_occupation(sys, bath);
        const double base = sys.g() * sys.g() * sys.omega();
        return {2.0 * base * (2.0 * n + 1.0), 4.0 * base * (2.0 * n + 1.0), 4.0 * base, sys.g(),
                drive.lambda()};
    }

    BlochDerivative operator()(std::complex<double> sp, std::complex<double> sz) const {
        BlochDerivative d;
        d.sp = -coherence_rate * sp - 1i * g * std::conj(lambda) * sz;
        d.sz = -population_rate * sz - pump -
               0.5i * g * (lambda * sp - std::conj(lambda) * std::conj(sp));
        return d;
    }
};

void check_step(const EvolutionConfig& cfg, double rate_max) {
    const double hr = cfg.step() * rate_max;
    if (hr > kStepErrorThreshold && !cfg.allow_coarse_step)
        throw NumericalError("step size too large: h * rate_max = " + format_double(hr) +
                             " exceeds " + format_double(kStepErrorThreshold));
    if (hr > kStepWarnThreshold)
        warn("h * rate_max = " + format_double(hr) + " exceeds " +
             format_double(kStepWarnThreshold) + "; RK4 accuracy may degrade");
}

}  // namespace

BlochDerivative bloch_rhs(const BlochState& state, const SystemParams& sys, const BathParams& bath,
                          const DriveField& drive) {
    return BlochCoefficients::make(sys, bath, drive)(state.sp, state.sz);
}

void EvolutionConfig::validate() const {
    if (!(t_max > 0.0) || !std::isfinite(t_max))
        throw ParameterError("t_max must be positive and finite");
    if (steps < 1) throw ParameterError("steps must be at least 1");
}

double max_generator_rate(const SystemParams& sys, const BathParams& bath, const DriveField& drive,
                          bool include_free_hamiltonian) {
    const double n = planck_occupation(sys, bath);
    const double relax = 4.0 * sys.g() * sys.g() * sys.omega() * (2.0 * n + 1.0);
    const double rabi = 2.0 * sys.g() * std::sqrt(drive.norm2());
    double rate = std::max(relax, rabi);
    if (include_free_hamiltonian) rate = std::max(rate, sys.omega());
    return rate;
}

std::vector<DensitySample> evolve(const DensityMatrix& initial, const SystemParams& sys,
                                  const BathParams& bath, const DriveField& drive,
                                  const EvolutionConfig& cfg) {
    cfg.validate();
    check_step(cfg, max_generator_rate(sys, bath, drive, cfg.include_free_hamiltonian));
    const auto gen = LindbladGenerator::make(sys, bath, drive, cfg.mode, cfg.include_free_hamiltonian);
    const auto rhs = [&gen](double, const Matrix2c& rho) -> Matrix2c { return gen.apply(rho); };

    std::vector<DensitySample> out;
    out.reserve(static_cast<std::size_t>(cfg.steps) + 1);
    const double h = cfg.step();
    Matrix2c rho = initial.matrix();
    out.push_back({0.0, rho});
    for (int i = 0; i < cfg.steps; ++i) {
        const double t = i * h;
        rho = rk4_step(rho, t, h, rhs);
        const double t_next = (i + 1 == cfg.steps) ? cfg.t_max : (i + 1) * h;
        if (cfg.mode == DissipatorMode::standard) {
            if (std::abs(rho.trace() - 1.0) > 1e-9)
                throw StateError("trace drifted beyond 1e-9 at t = " + format_double(t_next));
            if (min_eigenvalue(rho) < -1e-9)
                throw StateError("positivity lost beyond 1e-9 at t = " + format_double(t_next));
        }
        out.push_back({t_next, rho});
    }
    return out;
}

std::vector<BlochSample> evolve(const BlochState& initial, const SystemParams& sys,
                                const BathParams& bath, const DriveField& drive,
                                const EvolutionConfig& cfg) {
    cfg.validate();
    check_step(cfg, max_generator_rate(sys, bath, drive));
    const auto coeffs = BlochCoefficients::make(sys, bath, drive);
    const auto rhs = [&coeffs](double, const Eigen::Vector2cd& y) -> Eigen::Vector2cd {
        const BlochDerivative d = coeffs(y(0), y(1));
        return {d.sp, d.sz};
    };

    std::vector<BlochSample> out;
    out.reserve(static_cast<std::size_t>(cfg.steps) + 1);
    const double h = cfg.step();
    Eigen::Vector2cd y(initial.sp, initial.sz);
    out.push_back({0.0, initial});
    for (int i = 0; i < cfg.steps; ++i) {
        y = rk4_step(y, i * h, h, rhs);
        const double t_next = (i + 1 == cfg.steps) ? cfg.t_max : (i + 1) * h;
        out.push_back({t_next, BlochState{y(0), y(1).real()}});
    }
    return out;
}

std::vector<Observables> observables(std::span<const DensitySample> series) {
    std::vector<Observables> rows;
    rows.reserve(series.size());
    for (const auto& s : series) {
        const BlochState b = density_to_bloch(s.rho);
        rows.push_back({s.t, b.sp, b.sz, s.rho.trace().real(), min_eigenvalue(s.rho)});
    }
    return rows;
}

std::vector<Observables> observables(std::span<const BlochSample> series) {
    std::vector<Observables> rows;
    rows.reserve(series.size());
    for (const auto& s : series)
        rows.push_back({s.t, s.state.sp, s.state.sz, 1.0, 0.5 * (1.0 - s.state.radius())});
    return rows;
}

void write_evolution_csv(std::ostream& os, std::span<const Observables> rows) {
    os << "t,re_sp,im_sp,sz,trace,min_eigenvalue\n";
    for (const auto& r : rows) {
        os << format_double(r.t) << ',' << format_double(r.sp.real()) << ','
           << format_double(r.sp.imag()) << ',' << format_double(r.sz) << ','
           << format_double(r.trace) << ',' << format_double(r.min_eigenvalue) << '\n';
    }
}

}  // namespace thermodwell
