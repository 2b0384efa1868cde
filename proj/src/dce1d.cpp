#include "casimir/dce1d.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace casimir::dce1d {

namespace {

constexpr double kPi = std::numbers::pi;

// Past this tau, exp(-8 tau) is far below double resolution relative to 1 and
// K = log 4 + 4 tau, E = 1 are exact to working precision.
constexpr double kAsymptoticTau = 40.0;

void check_tau(double tau) {
    if (!(tau >= 0.0) || !std::isfinite(tau)) throw std::domain_error("tau must be finite and non-negative");
}

// delta = 1 - exp(-4 tau) as a jet, with the constant term free of cancellation.
Jet delta_jet(double tau, std::size_t order) {
    const auto kj = special::kappa_jet_of_tau(tau, order);
    Jet d = 1.0 - kj.kappa_c;
    std::vector<double> c = d.coefficients();
    c[0] = -std::expm1(-4.0 * tau);
    return Jet::from_coefficients(std::move(c));
}

bool negligible(const Jet& term, const Jet& sum) {
    for (std::size_t k = 0; k <= term.order(); ++k)
        if (std::abs(term[k]) > 1e-17 * std::max(1.0, std::abs(sum[k]))) return false;
    return true;
}

// -beta_11 = delta - delta^2/4 + sum_{n>=2} a_n^2 delta^{n-1} (2-delta)^n (delta - 2n/(2n-1))
Jet beta_11_series(double tau, std::size_t order) {
    const Jet d = delta_jet(tau, order);
    const Jet two_minus_d = 2.0 - d;
    Jet sum = d - 0.25 * d * d;
    Jet dpow(1.0, order);  // delta^{n-1}
    Jet tpow = two_minus_d;  // (2 - delta)^n
    for (unsigned n = 2; n < 400; ++n) {
        dpow = dpow * d;
        tpow = tpow * two_minus_d;
        const double w = special::elliptic_series_weight(n);
        const Jet term = w * dpow * tpow * (d - 2.0 * n / (2.0 * n - 1.0));
        sum += term;
        if (n > order + 2 && negligible(term, sum)) break;
    }
    return -sum;
}

gaussian::SymplecticForm one_mode_form() { return gaussian::standard_form(1); }

}  // namespace

LowestCoefficients alpha_beta_11(double tau, std::size_t order) {
    check_tau(tau);
    if (tau > kAsymptoticTau) {
        // kc = 0 and E = 1
        return {Jet(2.0 / kPi, order), Jet(-2.0 / kPi, order)};
    }
    const auto kj = special::kappa_jet_of_tau(tau, order);
    const auto ke = special::elliptic_KE_parameter_jet(kj.m, kj.m_c);
    const Jet& kc = kj.kappa_c;
    Jet alpha = (2.0 / kPi) * (ke.E + kc * ke.K) / (1.0 + kc);
    Jet beta = kj.m.value() < special::kSeriesParameterThreshold
                   ? beta_11_series(tau, order)
                   : -(2.0 / kPi) * (ke.E - kc * ke.K) / delta_jet(tau, order);
    return {std::move(alpha), std::move(beta)};
}

std::size_t required_jet_order(int n_max) {
    if (n_max < 1 || n_max % 2 == 0) throw std::invalid_argument("n_max must be an odd positive integer");
    return static_cast<std::size_t>((n_max + 1) / 2 + 1);
}

namespace {

double slot(const std::vector<double>& v, int n) {
    if (n < 1) throw std::out_of_range("mode index must be positive");
    if (n % 2 == 0) return 0.0;
    const auto j = static_cast<std::size_t>((n - 1) / 2);
    if (j >= v.size()) throw std::out_of_range("mode index " + std::to_string(n) + " beyond the ladder cutoff");
    return v[j];
}

double swap_sign(int n) { return ((n - 1) / 2) % 2 == 0 ? 1.0 : -1.0; }

}  // namespace

double BogoliubovLadder::alpha_n1(int n) const { return slot(alpha, n); }
double BogoliubovLadder::beta_n1(int n) const { return slot(beta, n); }
double BogoliubovLadder::alpha_dot_n1(int n) const { return slot(alpha_dot, n); }
double BogoliubovLadder::beta_dot_n1(int n) const { return slot(beta_dot, n); }
double BogoliubovLadder::alpha_1n(int n) const { return swap_sign(n) * n * alpha_n1(n); }
double BogoliubovLadder::beta_1n(int n) const { return swap_sign(n) * n * beta_n1(n); }

BogoliubovLadder build_ladder(double tau, int n_max, std::size_t order) {
    check_tau(tau);
    const std::size_t need = required_jet_order(n_max);
    if (order == 0) order = need;
    if (order < need)
        throw std::invalid_argument("jet order " + std::to_string(order) + " too low for n_max = " +
                                    std::to_string(n_max) + " (need " + std::to_string(need) + ")");

    const int rungs = (n_max + 1) / 2;
    std::vector<Jet> a, b;
    a.reserve(static_cast<std::size_t>(rungs));
    b.reserve(static_cast<std::size_t>(rungs));
    auto lowest = alpha_beta_11(tau, order);
    a.push_back(std::move(lowest.alpha));
    b.push_back(std::move(lowest.beta));
    if (rungs > 1) {
        const double s3 = std::sqrt(3.0);
        a.push_back((-b[0] - a[0].derivative()) / s3);
        b.push_back((-a[0] - b[0].derivative()) / s3);
    }
    for (int j = 1; j + 1 < rungs; ++j) {
        const double n = 2.0 * j + 1.0;
        const double down = std::sqrt(n * (n - 2.0));
        const double up = std::sqrt(n * (n + 2.0));
        const auto J = static_cast<std::size_t>(j);
        a.push_back((down * a[J - 1] - a[J].derivative()) / up);
        b.push_back((down * b[J - 1] - b[J].derivative()) / up);
    }

    BogoliubovLadder out;
    out.tau = tau;
    out.n_max = n_max;
    for (int j = 0; j < rungs; ++j) {
        const auto J = static_cast<std::size_t>(j);
        out.alpha.push_back(a[J].value());
        out.beta.push_back(b[J].value());
        out.alpha_dot.push_back(a[J][1]);
        out.beta_dot.push_back(b[J][1]);
    }
    return out;
}

SumRuleResiduals sum_rule_residuals(const BogoliubovLadder& l) {
    double aa = 0.0, bb = 0.0, ab = 0.0;
    for (std::size_t j = 0; j < l.alpha.size(); ++j) {
        aa += l.alpha[j] * l.alpha_dot[j];
        bb += l.beta[j] * l.beta_dot[j];
        ab += l.alpha[j] * l.beta_dot[j] + l.alpha_dot[j] * l.beta[j];
    }
    const double a11 = l.alpha.front(), b11 = l.beta.front();
    return {std::abs(aa + a11 * b11), std::abs(bb + a11 * b11), std::abs(ab + a11 * a11 + b11 * b11)};
}

LadderMoments ladder_moments(const BogoliubovLadder& l) {
    LadderMoments m{0.0, 0.0, 0.0};
    for (std::size_t j = 0; j < l.alpha.size(); ++j) {
        const double a = l.alpha[j], b = l.beta[j];
        m.g11 += 2.0 * a * b;
        m.g12 += a * a + b * b;
        m.norm += a * a - b * b;
    }
    return m;
}

gaussian::CovarianceMatrix ResonantCovariance1D::matrix() const {
    gaussian::Matrix g(2, 2);
    g(0, 0) = g(1, 1) = static_cast<gaussian::Real>(g11);
    g(0, 1) = g(1, 0) = static_cast<gaussian::Real>(g12);
    return gaussian::CovarianceMatrix(std::move(g));
}

CovarianceJets covariance_1d_jet(double tau, std::size_t order) {
    check_tau(tau);
    constexpr double c = 4.0 / (kPi * kPi);
    if (tau > kAsymptoticTau) {
        const Jet zeta = Jet::variable(tau, order) * 4.0 + std::log(4.0);
        return {c * (1.0 - zeta), c * zeta};
    }
    const auto kj = special::kappa_jet_of_tau(tau, order);
    const auto ke = special::elliptic_KE_parameter_jet(kj.m, kj.m_c);
    Jet g12 = c * ke.E * ke.K;
    if (kj.m.value() < special::kSeriesParameterThreshold) {
        // (E - kc^2 K)/m = K - (pi/2) S and K - E = (pi/2) m S with
        // S = sum_{n>=1} a_n^2 m^{n-1} 2n/(2n-1)
        const Jet& m = kj.m;
        Jet s(0.0, order), mpow(1.0, order);
        for (unsigned n = 1; n < 400; ++n) {
            const Jet term = special::elliptic_series_weight(n) * (2.0 * n / (2.0 * n - 1.0)) * mpow;
            s += term;
            if (n > order + 2 && negligible(term, s)) break;
            mpow = mpow * m;
        }
        const double h = kPi / 2.0;
        Jet g11 = -c * (ke.K - h * s) * (h * m * s);
        return {std::move(g11), std::move(g12)};
    }
    Jet g11 = -c * (ke.E - kj.m_c * ke.K) * (ke.K - ke.E) / kj.m;
    return {std::move(g11), std::move(g12)};
}

ResonantCovariance1D covariance_1d(double tau) {
    const auto j = covariance_1d_jet(tau, 0);
    return {tau, j.g11.value(), j.g12.value()};
}

double renyi_1d(double tau) { return gaussian::renyi_entropy(covariance_1d(tau).matrix(), one_mode_form()); }

double entropy_1d(double tau) {
    return gaussian::entanglement_entropy(covariance_1d(tau).matrix(), one_mode_form());
}

double renyi_asymptote_1(double tau) {
    return 0.5 * std::log(16.0 * (8.0 * tau + std::log(16.0) - 1.0) / std::pow(kPi, 4));
}

double renyi_asymptote_2(double tau) { return 0.5 * std::log(128.0 / std::pow(kPi, 4)) + 0.5 * std::log(tau); }

double entropy_asymptote(double tau) {
    return 1.0 + 0.5 * std::log(32.0 / std::pow(kPi, 4)) + 0.5 * std::log(tau);
}

double particle_number_1d(const BogoliubovLadder& l) {
    double n = 0.0;
    for (double b : l.beta) n += b * b;
    return n;
}

double particle_number_closed_form(double tau) { return 0.5 * (covariance_1d(tau).g12 - 1.0); }

EntropySample entropy_sample(double tau) {
    const auto cov = covariance_1d(tau);
    const auto g = cov.matrix();
    const auto omega = one_mode_form();
    return {tau,
            gaussian::renyi_entropy(g, omega),
            renyi_asymptote_1(tau),
            renyi_asymptote_2(tau),
            gaussian::entanglement_entropy(g, omega),
            entropy_asymptote(tau),
            cov.minus_det()};
}

std::vector<EntropySample> entropy_sweep(const std::vector<double>& taus, Execution exec) {
    return map_grid<EntropySample>(taus.size(), [&](std::size_t i) { return entropy_sample(taus[i]); }, exec);
}

}  // namespace casimir::dce1d
