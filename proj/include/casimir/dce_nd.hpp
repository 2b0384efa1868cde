#pragma once

// Resonant cavity in d >= 2 dimensions. Under slow variation the modes
// decouple, only the resonant mode r evolves, and it does so as a parametric
// oscillator with exponent omega_r * gamma.

#include <cstdint>
#include <random>
#include <vector>

#include "casimir/gaussian.hpp"
#include "casimir/parallel.hpp"

namespace casimir::dce_nd {

using gaussian::Complex;
using gaussian::Matrix;
using gaussian::Real;
using Vector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;
using ModeIndex = std::vector<int>;

/// Above this amplitude the slow-variation treatment is not trusted.
inline constexpr double kSlowVariationLimit = 0.1;

/// Threshold on symplectic projections used for the genericity flags.
inline constexpr double kGenericityThreshold = 1e-8;

/// Box with side lengths L_1..L_d; the wall at x^1 = L_1 oscillates with
/// relative amplitude epsilon.
struct CavityGeometry {
    std::vector<double> lengths;
    double epsilon = 0.0;

    int dims() const { return static_cast<int>(lengths.size()); }
    /// Throws std::invalid_argument for d < 2, non-positive lengths or epsilon outside [0, 1).
    void validate() const;
    bool slow_variation_ok() const { return epsilon < kSlowVariationLimit; }
};

double mode_frequency(const CavityGeometry& geom, const ModeIndex& k);

struct ResonanceParams {
    ModeIndex mode;
    double omega_r = 0.0;
    double gamma = 0.0;

    double rate() const { return omega_r * gamma; }
};

/// r defaults to the lowest mode (1, ..., 1).
ResonanceParams resonance_gamma(const CavityGeometry& geom, ModeIndex r = {});

/// Sign of beta_r = +-i sinh(omega_r gamma t). Entropies do not depend on it.
enum class BetaSign { plus, minus };

struct ResonantFlow {
    gaussian::BogoliubovMap map;
    Matrix generator;  ///< K_r with M_r(t) = exp(t K_r)
    Matrix matrix;     ///< M_r(t)
};

Matrix resonant_generator(const ResonanceParams& p, BetaSign sign = BetaSign::plus);
ResonantFlow resonant_flow(const ResonanceParams& p, double t, BetaSign sign = BetaSign::plus);

/// The resonant mode embedded in n_modes modes (slot 0 resonant, the others
/// static spectators).
class TruncatedFlow {
  public:
    TruncatedFlow(ResonanceParams params, int n_modes = 4, BetaSign sign = BetaSign::plus);

    int n_modes() const { return n_modes_; }
    const ResonanceParams& params() const { return params_; }
    BetaSign sign() const { return sign_; }
    Matrix generator() const;
    Matrix at(double t) const;

  private:
    ResonanceParams params_;
    int n_modes_;
    BetaSign sign_;
};

/// Beam splitter (a_1 + a_s)/sqrt2, (a_1 - a_s)/sqrt2 acting on slots 0 and s.
Matrix beam_splitter(int n_modes, int spectator);

enum class EntropyRoute {
    covariance,  ///< restrict M G_0 M^T and take determinants / eigenvalues
    factored,    ///< QR of the subsystem rows of the flow
    automatic    ///< covariance while omega_r gamma t <= kCovarianceRouteLimit
};

inline constexpr double kCovarianceRouteLimit = 8.0;

struct MixedEntropies {
    double renyi;
    double entropy;
    Matrix g_tilde;  ///< restricted 2x2 covariance in the mixed basis
};

/// Entropies of the first beam-splitter mode built from the resonant mode and
/// the spectator in slot `spectator` (1 <= spectator < n_modes).
MixedEntropies mixed_subsystem_entropies(const ResonanceParams& p, double t, int spectator = 1, int n_modes = 4,
                                         BetaSign sign = BetaSign::plus,
                                         EntropyRoute route = EntropyRoute::automatic);

/// Asymptotes -log 2 + x and 1 - 2 log 2 + x with x = omega_r gamma t.
double mixed_renyi_asymptote(const ResonanceParams& p, double t);
double mixed_entropy_asymptote(const ResonanceParams& p, double t);

struct MixedSample {
    double t;
    double renyi;
    double entropy;
    double asymptote;
};

std::vector<MixedSample> mixed_entropy_sweep(const ResonanceParams& p, const std::vector<double>& times,
                                             Execution exec = Execution::parallel);

/// Least-squares slope of S_A(t) over omega_r gamma t in [x0, x1].
double entropy_rate_fit(const ResonanceParams& p, double x0, double x1, int samples = 101);

/// Eigenvalues of a generator sorted by decreasing real part.
std::vector<double> lyapunov_spectrum(const Matrix& generator);

/// mu = alpha_drive / (4 omega_0) at the resonance Omega = 2 omega_0.
double mathieu_floquet_mu(double omega0, double drive_amplitude);

/// alpha_drive = 2 eps pi^2 r_1^2 / L_1^2 from expanding Omega_r^2(t) to first order.
double mathieu_drive_amplitude(const CavityGeometry& geom, const ModeIndex& r = {});

/// Slope of log |M^T(t) l| over t in [t0, t1].
double fitted_growth_rate(const TruncatedFlow& flow, const Vector& l, double t0, double t1, int samples = 101);

/// Eigenvectors of K^T for the eigenvalues +lambda_1 and -lambda_1.
struct UnstablePair {
    Vector unstable;
    Vector stable;
};

UnstablePair unstable_pair(const TruncatedFlow& flow);

/// Dual-basis vectors theta_1..theta_{2 N_A} of a subsystem, ordered as
/// (annihilation part, creation part), and its genericity flags.
struct GenericSubsystem {
    std::vector<Vector> theta;
    bool satisfies_i = false;
    bool satisfies_ii = false;
};

/// Checks the Darboux property theta_i^T Omega theta_j = (Omega_A)_ij and fills in the flags.
GenericSubsystem make_generic_subsystem(std::vector<Vector> theta, const TruncatedFlow& flow);

/// Rows of the symplectic matrix B belonging to the selected modes.
GenericSubsystem subsystem_from_mixing(const Matrix& B, const std::vector<int>& modes, const TruncatedFlow& flow);

/// Lambda_A from a least-squares fit of log Vol(M^T(t) D_A) over [t_max/2, t_max].
double subsystem_exponent(const GenericSubsystem& A, const TruncatedFlow& flow, double t_max, int samples = 101);

/// Symplectic matrix in the complex basis, U1 * squeeze * U2 with Haar-random
/// passive parts and squeezing parameters uniform in [0, max_squeeze].
Matrix random_symplectic(int n_modes, std::mt19937_64& rng, double max_squeeze = 1.0);

struct SubsystemTrial {
    std::uint64_t seed;
    bool generic;
    double exponent;
};

/// Random one-mode subsystems over the resonant mode and slot 1, each trial
/// seeded with seed + i so results do not depend on scheduling.
std::vector<SubsystemTrial> random_subsystem_trials(const TruncatedFlow& flow, int trials, std::uint64_t seed,
                                                    double t_max, Execution exec = Execution::parallel);

}  // namespace casimir::dce_nd
