#include <doctest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <numbers>
#include <random>

#include "casimir/dce_nd.hpp"

using namespace casimir;
using namespace casimir::dce_nd;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

CavityGeometry unit_square(double eps = 0.01) { return {{1.0, 1.0}, eps}; }

Eigen::MatrixXcd to_double(const Matrix& m) {
    Eigen::MatrixXcd out(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            out(i, j) = {static_cast<double>(m(i, j).real()), static_cast<double>(m(i, j).imag())};
    return out;
}

}  // namespace

TEST_CASE("mode frequencies") {
    const auto sq = unit_square();
    CHECK(mode_frequency(sq, {1, 1}) == Approx(4.442883).epsilon(1e-6));
    CHECK(mode_frequency(sq, {1, 2}) / mode_frequency(sq, {1, 1}) == Approx(std::sqrt(2.5)).epsilon(1e-14));
    CHECK(mode_frequency({{1.0, 2.0}, 0.0}, {1, 1}) == Approx(3.512407).epsilon(1e-6));
    CHECK(mode_frequency({{1.0, 1.0, 1.0}, 0.0}, {1, 1, 1}) == Approx(kPi * std::sqrt(3.0)).epsilon(1e-14));

    CHECK_THROWS_AS(mode_frequency(sq, {1}), std::invalid_argument);
    CHECK_THROWS_AS(mode_frequency(sq, {0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(mode_frequency({{1.0}, 0.0}, {1}), std::invalid_argument);
    CHECK_THROWS_AS(mode_frequency({{1.0, -1.0}, 0.0}, {1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(mode_frequency({{1.0, 1.0}, 1.0}, {1, 1}), std::invalid_argument);
}

TEST_CASE("resonance exponent") {
    const auto p = resonance_gamma(unit_square());
    CHECK(p.mode == ModeIndex{1, 1});
    CHECK(p.gamma == Approx(0.0025).epsilon(1e-12));
    CHECK(p.rate() == Approx(0.0111072).epsilon(1e-5));

    // a long transverse side leaves only the driven direction
    const double eps = 0.02;
    CHECK(resonance_gamma({{1.0, 1e4}, eps}).gamma == Approx(eps / 2).epsilon(1e-8));
    CHECK(resonance_gamma({{1.0, 1.0, 1.0}, eps}).gamma == Approx(eps / 6).epsilon(1e-12));
    CHECK(resonance_gamma({{1.0, 1.0}, 0.0}).rate() == 0.0);

    CHECK(unit_square(0.05).slow_variation_ok());
    CHECK_FALSE(unit_square(0.2).slow_variation_ok());
}

TEST_CASE("resonant flow is the exponential of its generator") {
    const auto p = resonance_gamma(unit_square());
    const double t = 3.0 / p.rate();
    for (auto sign : {BetaSign::plus, BetaSign::minus}) {
        const auto f = resonant_flow(p, t, sign);
        const Eigen::MatrixXcd expected = (to_double(f.generator) * t).exp();
        CHECK((to_double(f.matrix) - expected).cwiseAbs().maxCoeff() < 1e-10 * expected.cwiseAbs().maxCoeff());
        const auto a = f.map.alpha(0, 0), b = f.map.beta(0, 0);
        CHECK(static_cast<double>(std::norm(a) - std::norm(b)) == Approx(1.0).epsilon(1e-12));
        CHECK(static_cast<double>(std::abs(b)) == Approx(std::sinh(3.0)).epsilon(1e-14));
        CHECK(gaussian::is_symplectic(f.matrix, gaussian::standard_form(1)));
    }
    CHECK_THROWS_AS(resonant_flow(p, -1.0), std::domain_error);

    const TruncatedFlow flow(p, 4);
    CHECK(gaussian::is_symplectic(flow.at(t), gaussian::standard_form(4)));
    const Eigen::MatrixXcd big = (to_double(flow.generator()) * t).exp();
    CHECK((to_double(flow.at(t)) - big).cwiseAbs().maxCoeff() < 1e-10 * big.cwiseAbs().maxCoeff());
    CHECK_THROWS_AS(TruncatedFlow(p, 0), std::invalid_argument);
}

TEST_CASE("beam splitter is symplectic and an involution") {
    const auto b = beam_splitter(3, 2);
    CHECK(gaussian::is_symplectic(b, gaussian::standard_form(3)));
    CHECK(static_cast<double>((b * b - Matrix::Identity(6, 6)).cwiseAbs().maxCoeff()) < 1e-15);
    CHECK_THROWS_AS(beam_splitter(3, 0), std::invalid_argument);
    CHECK_THROWS_AS(beam_splitter(3, 3), std::invalid_argument);
}

TEST_CASE("mixed subsystem entropies") {
    const auto p = resonance_gamma(unit_square());
    const double x = 1.11072;
    const auto e = mixed_subsystem_entropies(p, x / p.rate());
    CHECK(e.renyi == Approx(std::log(std::cosh(x))).epsilon(1e-10));
    CHECK(std::log(std::cosh(x)) == Approx(0.520538).epsilon(1e-6));
    // one mode: S = s(e^R)
    CHECK(e.entropy == Approx(gaussian::entropy_from_renyi_single_mode(e.renyi)).epsilon(1e-10));

    for (double xx : {0.5, 2.0, 5.0, 8.0}) {
        const double t = xx / p.rate();
        const auto cov = mixed_subsystem_entropies(p, t, 1, 4, BetaSign::plus, EntropyRoute::covariance);
        const auto fac = mixed_subsystem_entropies(p, t, 1, 4, BetaSign::plus, EntropyRoute::factored);
        CHECK(cov.renyi == Approx(std::log(std::cosh(xx))).epsilon(1e-10));
        CHECK(cov.renyi == Approx(fac.renyi).epsilon(1e-10));
        CHECK(cov.entropy == Approx(fac.entropy).epsilon(1e-9));
    }

    const double t8 = 8.0 / p.rate();
    const auto e8 = mixed_subsystem_entropies(p, t8);
    CHECK(std::abs(e8.entropy - e8.renyi - (1 - std::log(2.0))) < 1e-4);

    const double t10 = 10.0 / p.rate();
    const auto e10 = mixed_subsystem_entropies(p, t10);
    CHECK(std::abs(e10.renyi - mixed_renyi_asymptote(p, t10)) < 1e-8);
    CHECK(std::abs(e10.entropy - mixed_entropy_asymptote(p, t10)) < 1e-7);

    // far beyond the covariance route the factored route still resolves the state
    const double t30 = 30.0 / p.rate();
    const auto e30 = mixed_subsystem_entropies(p, t30);
    CHECK(e30.renyi == Approx(mixed_renyi_asymptote(p, t30)).epsilon(1e-12));
    CHECK(e30.entropy == Approx(mixed_entropy_asymptote(p, t30)).epsilon(1e-12));
}

TEST_CASE("mixed entropies do not depend on the spectator or the sign of beta") {
    const auto p = resonance_gamma(unit_square());
    const double t = 2.5 / p.rate();
    const auto ref = mixed_subsystem_entropies(p, t, 1, 4);
    for (int s : {1, 2, 3}) {
        const auto e = mixed_subsystem_entropies(p, t, s, 4);
        CHECK(e.renyi == Approx(ref.renyi).epsilon(1e-13));
        CHECK(e.entropy == Approx(ref.entropy).epsilon(1e-13));
    }
    const auto minus = mixed_subsystem_entropies(p, t, 1, 4, BetaSign::minus);
    CHECK(minus.renyi == Approx(ref.renyi).epsilon(1e-13));
    CHECK(minus.entropy == Approx(ref.entropy).epsilon(1e-13));
    CHECK_THROWS_AS(mixed_subsystem_entropies(p, t, 0, 4), std::invalid_argument);
    CHECK_THROWS_AS(mixed_subsystem_entropies(p, t, 4, 4), std::invalid_argument);
}

TEST_CASE("entropy grows at the resonant exponent") {
    const auto p = resonance_gamma(unit_square());
    CHECK(entropy_rate_fit(p, 10.0, 20.0) == Approx(p.rate()).epsilon(1e-2));
    CHECK_THROWS_AS(entropy_rate_fit(resonance_gamma({{1.0, 1.0}, 0.0}), 10.0, 20.0), std::invalid_argument);
}

TEST_CASE("Lyapunov spectrum and the Mathieu exponent") {
    const auto geom = unit_square();
    const auto p = resonance_gamma(geom);
    const TruncatedFlow flow(p, 3);
    const auto spec = lyapunov_spectrum(flow.generator());
    REQUIRE(spec.size() == 6);
    CHECK(spec.front() == Approx(p.rate()).epsilon(1e-12));
    CHECK(spec.back() == Approx(-p.rate()).epsilon(1e-12));
    for (std::size_t i = 1; i + 1 < spec.size(); ++i) CHECK(std::abs(spec[i]) < 1e-15);

    const double mu = mathieu_floquet_mu(p.omega_r, mathieu_drive_amplitude(geom));
    CHECK(mu == Approx(p.rate()).epsilon(1e-12));
    CHECK(mu == Approx(0.0111072).epsilon(1e-2));
    CHECK_THROWS_AS(mathieu_floquet_mu(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(mathieu_floquet_mu(1.0, -1.0), std::invalid_argument);

    const auto pair = unstable_pair(flow);
    const double t1 = 20.0 / p.rate();
    CHECK(fitted_growth_rate(flow, pair.unstable, t1 / 2, t1) == Approx(p.rate()).epsilon(1e-6));
    // a generic direction picks up the unstable component
    Vector generic = Vector::Ones(6);
    CHECK(fitted_growth_rate(flow, generic, t1 / 2, t1) == Approx(p.rate()).epsilon(1e-2));
}

TEST_CASE("subsystem exponents") {
    const auto p = resonance_gamma(unit_square());
    const TruncatedFlow flow(p, 4);
    const double t_max = 20.0 / p.rate();

    const auto mixed = subsystem_from_mixing(beam_splitter(4, 1), {0}, flow);
    CHECK(mixed.satisfies_i);
    CHECK(mixed.satisfies_ii);
    CHECK(subsystem_exponent(mixed, flow, t_max) == Approx(p.rate()).epsilon(1e-2));

    // the resonant mode on its own pairs with the stable direction but contains it,
    // so nothing is left to grow
    const auto alone = subsystem_from_mixing(Matrix::Identity(8, 8), {0}, flow);
    CHECK(alone.satisfies_i);
    CHECK_FALSE(alone.satisfies_ii);
    CHECK(std::abs(subsystem_exponent(alone, flow, t_max)) < 1e-3 * p.rate());

    // a spectator alone never sees the flow
    const auto spectator = subsystem_from_mixing(Matrix::Identity(8, 8), {2}, flow);
    CHECK_FALSE(spectator.satisfies_i);
    CHECK(std::abs(subsystem_exponent(spectator, flow, t_max)) < 1e-12);

    const auto trials = random_subsystem_trials(flow, 20, 1234, t_max);
    REQUIRE(trials.size() == 20);
    for (const auto& tr : trials) {
        CAPTURE(tr.seed);
        CHECK(tr.generic);
        CHECK(tr.exponent == Approx(p.rate()).epsilon(2e-2));
    }
    const auto again = random_subsystem_trials(flow, 20, 1234, t_max, Execution::serial);
    for (std::size_t i = 0; i < trials.size(); ++i) CHECK(again[i].exponent == trials[i].exponent);

    CHECK_THROWS_AS(subsystem_exponent(mixed, flow, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(random_subsystem_trials(TruncatedFlow(p, 1), 3, 1, t_max), std::invalid_argument);
}

TEST_CASE("evolved states stay pure") {
    const auto p = resonance_gamma(unit_square());
    const TruncatedFlow flow(p, 4);
    for (double x : {0.0, 1.0, 5.0, 10.0}) {
        const auto g = gaussian::apply_bogoliubov(flow.at(x / p.rate()), gaussian::vacuum(4));
        CHECK(static_cast<double>(gaussian::purity_defect(g)) < 1e-9);
    }
    std::mt19937_64 rng(99);
    for (int i = 0; i < 10; ++i) {
        const Matrix b = random_symplectic(4, rng);
        CHECK(gaussian::is_symplectic(b, gaussian::standard_form(4)));
        const auto g = gaussian::apply_bogoliubov(b * flow.at(6.0 / p.rate()), gaussian::vacuum(4));
        CHECK(static_cast<double>(gaussian::purity_defect(g)) < 1e-9);
    }
}

TEST_CASE("serial and parallel sweeps agree bitwise") {
    const auto p = resonance_gamma(unit_square());
    std::vector<double> ts;
    for (int i = 0; i < 64; ++i) ts.push_back(0.25 * i / p.rate());
    const auto a = mixed_entropy_sweep(p, ts, Execution::serial);
    const auto b = mixed_entropy_sweep(p, ts, Execution::parallel);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].renyi == b[i].renyi);
        CHECK(a[i].entropy == b[i].entropy);
    }
}
