#pragma once

// Resonant (1+1)-D cavity: the mirror oscillates at twice the lowest mode
// frequency and tau = eps * omega_1 * t / 2 is the slow time.

#include <cstddef>
#include <vector>

#include "casimir/elliptic.hpp"
#include "casimir/gaussian.hpp"
#include "casimir/jet.hpp"
#include "casimir/parallel.hpp"

namespace casimir::dce1d {

using special::Jet;

inline constexpr int kDefaultLadderCutoff = 21;

struct LowestCoefficients {
    Jet alpha;
    Jet beta;
};

/// alpha_11, beta_11 as tau-jets about tau. Near tau = 0 beta_11 is a 0/0 and
/// is summed from its series in delta = 1 - exp(-4 tau) instead.
LowestCoefficients alpha_beta_11(double tau, std::size_t order = special::kDefaultJetOrder);

/// Smallest jet order accepted by build_ladder for a given cutoff.
std::size_t required_jet_order(int n_max);

/// Column k = 1 of the resonant Bogoliubov matrix, odd n only (even n vanish).
struct BogoliubovLadder {
    double tau = 0.0;
    int n_max = 1;
    // slot j holds n = 2j + 1
    std::vector<double> alpha, beta, alpha_dot, beta_dot;

    double alpha_n1(int n) const;
    double beta_n1(int n) const;
    double alpha_dot_n1(int n) const;
    double beta_dot_n1(int n) const;
    /// Row k = 1 through alpha_{1,2j+1} = (-1)^j (2j+1) alpha_{2j+1,1}.
    double alpha_1n(int n) const;
    double beta_1n(int n) const;
};

/// order = 0 picks required_jet_order(n_max).
BogoliubovLadder build_ladder(double tau, int n_max = kDefaultLadderCutoff, std::size_t order = 0);

struct SumRuleResiduals {
    double alpha_alpha_dot;  ///< |sum a a' + a11 b11|
    double beta_beta_dot;    ///< |sum b b' + a11 b11|
    double cross;            ///< |sum (a b' + a' b) + a11^2 + b11^2|
};

SumRuleResiduals sum_rule_residuals(const BogoliubovLadder& ladder);

/// Partial sums from the ladder: the entries of G_A and sum (a^2 - b^2).
struct LadderMoments {
    double g11;
    double g12;
    double norm;
};

LadderMoments ladder_moments(const BogoliubovLadder& ladder);

struct ResonantCovariance1D {
    double tau;
    double g11;  ///< = g22
    double g12;  ///< = g21

    gaussian::CovarianceMatrix matrix() const;
    double minus_det() const { return (g12 - g11) * (g12 + g11); }
};

ResonantCovariance1D covariance_1d(double tau);

struct CovarianceJets {
    Jet g11;
    Jet g12;
};

CovarianceJets covariance_1d_jet(double tau, std::size_t order = special::kDefaultJetOrder);

double renyi_1d(double tau);
double entropy_1d(double tau);

double renyi_asymptote_1(double tau);
double renyi_asymptote_2(double tau);
double entropy_asymptote(double tau);

/// <N_1> = sum_n beta_{n1}^2 over the ladder.
double particle_number_1d(const BogoliubovLadder& ladder);

/// <N_1> = (G^12 - 1) / 2, which holds once sum_n (alpha^2 - beta^2) = 1.
double particle_number_closed_form(double tau);

struct EntropySample {
    double tau;
    double renyi;
    double renyi_asymp1;
    double renyi_asymp2;
    double entropy;
    double entropy_asymp;
    double minus_det;
};

EntropySample entropy_sample(double tau);

std::vector<EntropySample> entropy_sweep(const std::vector<double>& taus, Execution exec = Execution::parallel);

}  // namespace casimir::dce1d
