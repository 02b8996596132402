#pragma once

#include <complex>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "thermodwell/model.hpp"

namespace thermodwell {

// Basis: index 0 = excited (sigma_z = +1), index 1 = ground.
// sigma_+ = |0><1|, so <sigma_+> = Tr(rho sigma_+) = rho(1, 0).
using Matrix2c = Eigen::Matrix2cd;

namespace pauli {
Matrix2c sigma_plus();
Matrix2c sigma_minus();
Matrix2c sigma_z();
}  // namespace pauli

enum class DissipatorMode {
    standard,  // trace-preserving Lindblad form, rates matched to the Bloch equations
    verbatim,  // printed master equation: half rates, no 1/2 anticommutator
};

DissipatorMode parse_dissipator_mode(std::string_view name);
std::string_view to_string(DissipatorMode mode);

inline constexpr double kHermiticityTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPositivityTol = 1e-10;

// Smallest eigenvalue of the Hermitian part of m.
double min_eigenvalue(const Matrix2c& m);

// Validated 2x2 density matrix: Hermitian, unit trace, positive semidefinite.
class DensityMatrix {
public:
    explicit DensityMatrix(const Matrix2c& m);

    static DensityMatrix excited();
    static DensityMatrix ground();
    static DensityMatrix maximally_mixed();

    const Matrix2c& matrix() const noexcept { return m_; }
    std::complex<double> operator()(int row, int col) const { return m_(row, col); }

private:
    Matrix2c m_;
};

// Pauli expectation values. Not validated on construction; closed-form
// stationary values need not describe a physical state (see is_physical).
struct BlochState {
    std::complex<double> sp{0.0, 0.0};
    double sz = 0.0;

    std::complex<double> sm() const noexcept { return std::conj(sp); }
    // |r| = sqrt(sz^2 + 4|sp|^2); <= 1 for physical states.
    double radius() const noexcept;
    bool is_physical(double tol = kPositivityTol) const noexcept;
};

// Time derivative of a BlochState; d<sz>/dt is kept complex so that the
// reality of the printed equation can be checked.
struct BlochDerivative {
    std::complex<double> sp;
    std::complex<double> sz;
};

// Throws StateError when the state lies outside the Bloch ball beyond tolerance.
DensityMatrix bloch_to_density(const BlochState& state);
BlochState density_to_bloch(const DensityMatrix& rho);
BlochState density_to_bloch(const Matrix2c& rho);

// Precomputed generator of the driven thermal master equation.
struct LindbladGenerator {
    double gamma_down = 0.0;  // coefficient of the sigma_- dissipator
    double gamma_up = 0.0;    // coefficient of the sigma_+ dissipator
    double g = 0.0;
    std::complex<double> lambda{0.0, 0.0};
    double free_omega = 0.0;  // nonzero adds the (omega/2) sigma_z Hamiltonian
    DissipatorMode mode = DissipatorMode::standard;

    static LindbladGenerator make(const SystemParams& sys, const BathParams& bath,
                                  const DriveField& drive, DissipatorMode mode,
                                  bool include_free_hamiltonian = false);

    Matrix2c apply(const Matrix2c& rho) const;
};

Matrix2c lindblad_rhs(const DensityMatrix& rho, const SystemParams& sys, const BathParams& bath,
                      const DriveField& drive, DissipatorMode mode = DissipatorMode::standard);

// Right-hand side of the interaction-picture Bloch equations, term for term.
BlochDerivative bloch_rhs(const BlochState& state, const SystemParams& sys, const BathParams& bath,
                          const DriveField& drive);

struct EvolutionConfig {
    double t_max = 1.0;
    int steps = 1000;
    DissipatorMode mode = DissipatorMode::standard;
    bool include_free_hamiltonian = false;  // density-matrix path only
    bool allow_coarse_step = false;         // permit h * rate_max > 0.1

    void validate() const;
    double step() const noexcept { return t_max / steps; }
};

inline constexpr double kStepWarnThreshold = 0.01;
inline constexpr double kStepErrorThreshold = 0.1;

// Largest rate appearing in the generator: population relaxation,
// drive Rabi frequency and (optionally) the free precession frequency.
double max_generator_rate(const SystemParams& sys, const BathParams& bath, const DriveField& drive,
                          bool include_free_hamiltonian = false);

struct DensitySample {
    double t;
    Matrix2c rho;
};

struct BlochSample {
    double t;
    BlochState state;
};

// Both overloads return steps + 1 samples, including t = 0.
std::vector<DensitySample> evolve(const DensityMatrix& initial, const SystemParams& sys,
                                  const BathParams& bath, const DriveField& drive,
                                  const EvolutionConfig& cfg);
std::vector<BlochSample> evolve(const BlochState& initial, const SystemParams& sys,
                                const BathParams& bath, const DriveField& drive,
                                const EvolutionConfig& cfg);

struct Observables {
    double t;
    std::complex<double> sp;
    double sz;
    double trace;
    double min_eigenvalue;
};

std::vector<Observables> observables(std::span<const DensitySample> series);
std::vector<Observables> observables(std::span<const BlochSample> series);

// Columns: t,re_sp,im_sp,sz,trace,min_eigenvalue
void write_evolution_csv(std::ostream& os, std::span<const Observables> rows);

}  // namespace thermodwell
