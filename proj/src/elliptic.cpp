#include "casimir/elliptic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace casimir::special {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr unsigned kMaxSeriesTerms = 200;

// Integrates dK/dh, dE/dh order by order starting from the AGM values at the
// base point. fK and fE are the jets multiplying (E - m_c K) and (E - K).
JetPair<Jet> integrate_order_by_order(double K0, double E0, const Jet& m_c, const Jet& fK, const Jet& fE) {
    const std::size_t order = fK.order() + 1;
    std::vector<double> k(order + 1, 0.0), e(order + 1, 0.0);
    k[0] = K0;
    e[0] = E0;
    for (std::size_t n = 0; n < order; ++n) {
        // coefficient n of (E - m_c K) * fK and (E - K) * fE
        double rk = 0.0, re = 0.0;
        for (std::size_t j = 0; j <= n; ++j) {
            double mcK = 0.0;
            for (std::size_t i = 0; i <= j; ++i) mcK += m_c[i] * k[j - i];
            rk += (e[j] - mcK) * fK[n - j];
            re += (e[j] - k[j]) * fE[n - j];
        }
        k[n + 1] = rk / static_cast<double>(n + 1);
        e[n + 1] = re / static_cast<double>(n + 1);
    }
    return {Jet::from_coefficients(std::move(k)), Jet::from_coefficients(std::move(e))};
}

}  // namespace

double elliptic_series_weight(unsigned n) {
    double a = 1.0;
    for (unsigned i = 1; i <= n; ++i) a *= (2.0 * i - 1.0) / (2.0 * i);
    return a * a;
}

EllipticPair elliptic_KE_parameter(double m, double m_c) {
    if (!(m >= 0.0) || !(m_c > 0.0)) throw std::domain_error("elliptic_KE: need 0 <= kappa < 1");
    double a = 1.0;
    double b = std::sqrt(m_c);
    double pow2 = 0.5;
    double sum = pow2 * m;
    for (int it = 0; it < 64; ++it) {
        const double c = 0.5 * (a - b);
        if (std::abs(c) <= 1e-17 * a) break;
        const double an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
        pow2 *= 2.0;
        sum += pow2 * c * c;
    }
    const double K = kPi / (2.0 * a);
    return {K, K * (1.0 - sum), std::sqrt(m)};
}

EllipticPair elliptic_KE(double kappa) {
    if (!(kappa >= 0.0) || !(kappa < 1.0)) throw std::domain_error("elliptic_KE: need 0 <= kappa < 1");
    const double m = kappa * kappa;
    return elliptic_KE_parameter(m, (1.0 - kappa) * (1.0 + kappa));
}

JetPair<Jet> elliptic_KE_series_jet(const Jet& m) {
    if (std::abs(m.value()) >= 1.0) throw std::domain_error("elliptic series needs |m| < 1");
    Jet K(0.0, m.order()), E(0.0, m.order());
    Jet mn(1.0, m.order());
    for (unsigned n = 0; n < kMaxSeriesTerms; ++n) {
        const double w = elliptic_series_weight(n);
        K += w * mn;
        E += (w / (1.0 - 2.0 * n)) * mn;
        mn = mn * m;
        bool small = true;
        for (std::size_t j = 0; j <= mn.order() && small; ++j) small = std::abs(w * mn[j]) < 1e-18;
        if (small && n > 2) break;
    }
    return {K * (kPi / 2.0), E * (kPi / 2.0)};
}

JetPair<Jet> elliptic_KE_parameter_jet(const Jet& m, const Jet& m_c) {
    const std::size_t order = std::min(m.order(), m_c.order());
    if (m.value() < kSeriesParameterThreshold) return elliptic_KE_series_jet(m.truncated(order));
    const auto base = elliptic_KE_parameter(m.value(), m_c.value());
    if (order == 0) return {Jet(base.K, 0), Jet(base.E, 0)};
    const Jet mdot = m.derivative();
    const Jet fK = mdot / (2.0 * m * m_c);
    const Jet fE = mdot / (2.0 * m);
    return integrate_order_by_order(base.K, base.E, m_c.truncated(order), fK.truncated(order - 1),
                                    fE.truncated(order - 1));
}

JetPair<Jet> elliptic_KE_jet(const Jet& kappa) {
    if (!(kappa.value() >= 0.0) || !(kappa.value() < 1.0))
        throw std::domain_error("elliptic_KE_jet: need 0 <= kappa < 1");
    const Jet m = kappa * kappa;
    return elliptic_KE_parameter_jet(m, 1.0 - m);
}

KappaJets kappa_jet_of_tau(double tau0, std::size_t order) {
    if (!(tau0 >= 0.0)) throw std::domain_error("kappa_jet_of_tau: tau must be non-negative");
    std::vector<double> kc(order + 1), mc(order + 1), m(order + 1);
    const double e4 = std::exp(-4.0 * tau0);
    const double e8 = std::exp(-8.0 * tau0);
    double p4 = 1.0, p8 = 1.0;
    for (std::size_t k = 0; k <= order; ++k) {
        if (k > 0) {
            p4 *= -4.0 / static_cast<double>(k);
            p8 *= -8.0 / static_cast<double>(k);
        }
        kc[k] = e4 * p4;
        mc[k] = e8 * p8;
        m[k] = -mc[k];
    }
    m[0] = -std::expm1(-8.0 * tau0);
    KappaJets out{Jet(0.0, 0), Jet::from_coefficients(std::move(kc)), Jet::from_coefficients(std::move(m)),
                  Jet::from_coefficients(std::move(mc))};
    if (out.m.value() > 0.0) out.kappa = sqrt(out.m);
    return out;
}

JetPair<Jet> elliptic_KE_tau_jet(double tau0, std::size_t order) {
    const auto kj = kappa_jet_of_tau(tau0, order);
    return elliptic_KE_parameter_jet(kj.m, kj.m_c);
}

}  // namespace casimir::special
