#pragma once

#include <cstddef>

#include "casimir/jet.hpp"

namespace casimir::special {

/// Complete elliptic integrals of the first and second kind at modulus kappa
/// (kappa^2 multiplies sin^2 in the integrand).
struct EllipticPair {
    double K;
    double E;
    double kappa;
};

template <typename T>
struct JetPair {
    T K;
    T E;
};

/// Parameter m = kappa^2 below which K and E are summed from their power
/// series in m instead of integrated from the AGM values. Lower values make
/// high-order tau-jets lose digits to the 1/m in the derivative formulas.
inline constexpr double kSeriesParameterThreshold = 0.5;

/// Default Taylor order for tau-jets.
inline constexpr std::size_t kDefaultJetOrder = 12;

/// K(kappa), E(kappa) by the arithmetic-geometric mean. Requires 0 <= kappa < 1.
EllipticPair elliptic_KE(double kappa);

/// Same, from the parameter m = kappa^2 and its complement m_c = 1 - m.
/// Passing m_c separately keeps full relative accuracy as kappa -> 1.
EllipticPair elliptic_KE_parameter(double m, double m_c);

/// Taylor jets of K and E along a jet of the modulus kappa.
///
/// Uses dK/dkappa = (E - kc^2 K)/(kappa kc^2) and dE/dkappa = (E - K)/kappa,
/// integrated order by order. A base point kappa = 0 is only analytic in
/// kappa^2, so there the series branch is used on m = kappa^2.
JetPair<Jet> elliptic_KE_jet(const Jet& kappa);

/// Jets of K and E along a jet of the parameter m, with its complement m_c.
JetPair<Jet> elliptic_KE_parameter_jet(const Jet& m, const Jet& m_c);

/// Series in m for K and E, valid for small m. Exposed for the small-tau
/// branches of the resonant (1+1)-D solution.
JetPair<Jet> elliptic_KE_series_jet(const Jet& m);

/// Squared coefficient a_n^2 with a_n = (2n)! / (4^n (n!)^2), so that
/// K = (pi/2) sum a_n^2 m^n and E = (pi/2) sum a_n^2 m^n / (1 - 2n).
double elliptic_series_weight(unsigned n);

/// kappa(tau) = sqrt(1 - exp(-8 tau)) and kc(tau) = exp(-4 tau) as tau-jets.
struct KappaJets {
    Jet kappa;     ///< order 0 only at tau0 = 0, where sqrt is not analytic
    Jet kappa_c;
    Jet m;         ///< kappa^2
    Jet m_c;       ///< kc^2
};

KappaJets kappa_jet_of_tau(double tau0, std::size_t order = kDefaultJetOrder);

/// K and E as jets in tau about tau0, picking the series or the ODE branch.
JetPair<Jet> elliptic_KE_tau_jet(double tau0, std::size_t order = kDefaultJetOrder);

}  // namespace casimir::special
