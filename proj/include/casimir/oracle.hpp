#pragma once

// Brute-force reference: the truncated coupled mode equations of a cavity with
// one moving wall, integrated directly, and the single parametric oscillator
// of the higher-dimensional resonance.

#include <vector>

#include "casimir/dce_nd.hpp"
#include "casimir/ode.hpp"
#include "casimir/parallel.hpp"

namespace casimir::oracle {

using ComplexMatrix = Eigen::MatrixXcd;

/// g_jk = (-1)^{j+k} 2jk / (k^2 - j^2), stored 0-based: g(j-1, k-1).
Eigen::MatrixXd coupling_matrix(int N);

enum class MirrorPhase {
    sin,      ///< L = L1 (1 + eps sin(w t)); the wall starts with a velocity kick
    neg_cos,  ///< L = L1 (1 - eps cos(w t)); the wall starts at rest
};

/// Wall motion over n_periods whole drive periods, static afterwards.
struct MirrorTrajectory {
    double L1 = 1.0;
    double epsilon = 0.0;
    double omega_drive = 0.0;
    MirrorPhase phase = MirrorPhase::sin;
    int n_periods = 0;

    /// Drive at 2 omega_1 = 2 pi / L1, sin phase: the resonant (1+1)-D setup.
    static MirrorTrajectory resonant_1d(double L1, double epsilon, int n_periods);

    double period() const;
    double stop_time() const { return n_periods * period(); }
    bool moving(double t) const { return t >= 0.0 && t < stop_time(); }

    double length(double t) const;
    /// Values while the wall moves; left limits at the stop time.
    double lambda(double t) const;
    double lambda_dot(double t) const;
};

/// Cutoff-N system with mode frequencies omega_k = pi k / L1.
struct TruncatedSystem {
    int N;
    double L1;
    Eigen::MatrixXd g;
    Eigen::MatrixXd gtg;  ///< g^T g, the lambda^2 coupling
    Eigen::VectorXd omega;

    TruncatedSystem(int N, double L1);
};

/// Q^n_k and dQ^n_k/dt at sample times; column n is the in-mode, row k the
/// instantaneous mode. `momentum` is dQ/dt - lambda g Q, which stays
/// continuous when the wall velocity jumps and equals dQ/dt once it rests.
struct ModeSolution {
    std::vector<double> times;
    std::vector<ComplexMatrix> Q;
    std::vector<ComplexMatrix> velocity;
    std::vector<ComplexMatrix> momentum;
    IntegrationStats stats;
};

/// Integrates every in-mode column from the vacuum data Q = delta, dQ/dt =
/// -i omega_n delta (taken just before the wall starts) and records the
/// requested sample times (sorted, within [0, t_end]).
ModeSolution integrate_modes(const TruncatedSystem& sys, const MirrorTrajectory& traj,
                             const std::vector<double>& sample_times, const StepControl& ctl = {},
                             Execution exec = Execution::parallel);

struct BogoliubovData {
    ComplexMatrix alpha;  ///< alpha(n, k)
    ComplexMatrix beta;
};

/// alpha = e^{i w t}(Q + i P / w)/2, beta = e^{-i w t}(Q - i P / w)/2, where P is
/// the velocity the mode would carry in a static cavity.
cplx extract_alpha(cplx Q, cplx P, double omega, double t);
cplx extract_beta(cplx Q, cplx P, double omega, double t);

/// Full matrices in the normalised out-mode basis: the raw amplitudes scaled
/// by sqrt(k / n), so that alpha(n, 0) is directly comparable with alpha_n1.
BogoliubovData extract_bogoliubov(const ComplexMatrix& Q, const ComplexMatrix& P, const Eigen::VectorXd& omega,
                                  double t);

/// <N_k> = sum_n |beta(n, k)|^2.
Eigen::VectorXd particle_numbers(const ComplexMatrix& beta);

/// max_{n,m} |sum_k (alpha_nk alpha_mk^* - beta_nk beta_mk^*) - delta_nm|.
double symplectic_residual(const BogoliubovData& data);

/// Covariance of the evolved in-vacuum over the N out-modes, M G_0 M^T with
/// M assembled from the truncated coefficients. Purity holds only as well as
/// the integration preserves the symplectic identity.
gaussian::CovarianceMatrix full_covariance(const BogoliubovData& data);

/// Samples at whole drive periods m = 0..periods and the slow time tau of each.
struct PeriodSamples {
    std::vector<int> periods;
    std::vector<double> tau;
    std::vector<BogoliubovData> data;
    IntegrationStats stats;
};

/// Runs the resonant (1+1)-D wall for `periods` drive periods and extracts the
/// Bogoliubov matrix after each one. tau = eps * omega_1 * t / 2.
PeriodSamples run_resonant_1d(int N, double epsilon, int periods, double L1 = 1.0, const StepControl& ctl = {},
                              Execution exec = Execution::parallel);

/// Number of whole drive periods needed to reach slow time tau.
int periods_for_tau(double tau, double epsilon);

/// Residual of sum_{k,n} beta beta' = -sum_n alpha_n1 beta_n1 on the truncated
/// matrix, with beta' from central differences between neighbouring periods.
double double_sum_residual(const PeriodSamples& run, std::size_t i);

// --- parametric oscillator --------------------------------------------------

struct MathieuSamples {
    std::vector<double> t;
    std::vector<cplx> alpha;
    std::vector<cplx> beta;
    IntegrationStats stats;
};

/// Q'' + Omega_r^2(t) Q = 0 with Omega_r^2 = omega_r^2 + alpha_drive cos(2 omega_r t),
/// vacuum data, sampled at whole drive periods pi / omega_r up to t_end.
MathieuSamples integrate_mathieu(const dce_nd::CavityGeometry& geom, double t_end, const StepControl& ctl = {});

/// The averaged equations alpha' = -i w gamma beta, beta' = i w gamma alpha
/// integrated numerically on the same sample grid.
MathieuSamples integrate_averaged(const dce_nd::CavityGeometry& geom, double t_end, const StepControl& ctl = {});

/// Floquet exponent log|rho_max| / T from the monodromy matrix over one drive period.
double mathieu_monodromy_exponent(double omega0, double drive_amplitude, const StepControl& ctl = {});

/// Least-squares slope of log|beta| against t over samples with t >= t_from.
double envelope_rate(const MathieuSamples& s, double t_from);

}  // namespace casimir::oracle
