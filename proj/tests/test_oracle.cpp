#include <doctest.h>

#include <cmath>
#include <numbers>

#include "casimir/dce1d.hpp"
#include "casimir/oracle.hpp"

using namespace casimir;
using namespace casimir::oracle;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_CASE("coupling matrix") {
    const auto g = coupling_matrix(5);
    CHECK(g(0, 1) == Approx(-4.0 / 3));
    CHECK(g(0, 2) == Approx(3.0 / 4));
    for (int j = 0; j < 5; ++j) {
        CHECK(g(j, j) == 0.0);
        for (int k = 0; k < 5; ++k) CHECK(g(j, k) == -g(k, j));
    }
    CHECK_THROWS(coupling_matrix(0));
}

TEST_CASE("mirror trajectory") {
    const auto t = MirrorTrajectory::resonant_1d(1.0, 0.01, 4);
    CHECK(t.omega_drive == Approx(2 * kPi));
    CHECK(t.period() == Approx(1.0));
    CHECK(t.stop_time() == Approx(4.0));
    CHECK(t.length(0.0) == Approx(1.0));
    CHECK(t.length(0.25) == Approx(1.01));
    CHECK(t.length(10.0) == Approx(1.0));
    CHECK(t.moving(3.9));
    CHECK_FALSE(t.moving(4.0));
    CHECK(periods_for_tau(0.1727, 0.01) == 11);
    CHECK(periods_for_tau(0.0, 0.01) == 0);
}

TEST_CASE("extraction of positive and negative frequency data") {
    const double w = 3.0, t = 0.7;
    const cplx i(0, 1);
    const cplx q = std::exp(-i * w * t), qn = std::exp(i * w * t);
    CHECK(std::abs(extract_alpha(q, -i * w * q, w, t) - 1.0) < 1e-15);
    CHECK(std::abs(extract_beta(q, -i * w * q, w, t)) < 1e-15);
    CHECK(std::abs(extract_alpha(qn, i * w * qn, w, t)) < 1e-15);
    CHECK(std::abs(extract_beta(qn, i * w * qn, w, t) - 1.0) < 1e-15);
}

TEST_CASE("a static wall leaves the vacuum alone") {
    const auto run = run_resonant_1d(10, 0.0, 3);
    for (const auto& d : run.data) {
        CHECK((d.alpha - Eigen::MatrixXcd::Identity(10, 10)).cwiseAbs().maxCoeff() < 1e-8);
        CHECK(d.beta.cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("Bogoliubov data is constant once the wall stops") {
    const TruncatedSystem sys(10, 1.0);
    const auto traj = MirrorTrajectory::resonant_1d(1.0, 0.02, 3);
    const double t0 = traj.stop_time();
    const auto sol = integrate_modes(sys, traj, {t0, t0 + 0.37, t0 + 1.0});
    const auto a = extract_bogoliubov(sol.Q[0], sol.momentum[0], sys.omega, sol.times[0]);
    for (std::size_t i = 1; i < sol.times.size(); ++i) {
        // after the stop, velocity and momentum coincide
        CHECK((sol.velocity[i] - sol.momentum[i]).cwiseAbs().maxCoeff() < 1e-14);
        const auto b = extract_bogoliubov(sol.Q[i], sol.velocity[i], sys.omega, sol.times[i]);
        CHECK((a.alpha - b.alpha).cwiseAbs().maxCoeff() < 1e-8);
        CHECK((a.beta - b.beta).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("symplectic identity holds on the truncated matrix") {
    for (int N : {10, 20, 30}) {
        CAPTURE(N);
        const auto run = run_resonant_1d(N, 0.01, 2);
        for (const auto& d : run.data) CHECK(symplectic_residual(d) < 1e-6);
    }
}

TEST_CASE("agreement with the resonant ladder") {
    const auto run = run_resonant_1d(15, 0.01, 11);
    CHECK(particle_numbers(run.data.front().beta).cwiseAbs().maxCoeff() < 1e-12);

    const double tau = run.tau.back();
    CHECK(tau == Approx(0.01 * kPi / 2 * 11));
    const auto& d = run.data.back();
    const auto l = dce1d::build_ladder(tau, 21);
    CHECK(d.alpha(0, 0).real() == Approx(l.alpha_n1(1)).epsilon(2e-3));
    CHECK(d.beta(0, 0).real() == Approx(l.beta_n1(1)).epsilon(2e-3));
    CHECK(d.alpha(2, 0).real() == Approx(l.alpha_n1(3)).epsilon(2e-2));
    CHECK(particle_numbers(d.beta)(0) == Approx(dce1d::particle_number_1d(l)).epsilon(5e-2));

    for (std::size_t i = 1; i + 1 < run.data.size(); ++i) CHECK(double_sum_residual(run, i) < 1e-3);
    CHECK_THROWS(double_sum_residual(run, 0));
}

TEST_CASE("parametric oscillator") {
    const dce_nd::CavityGeometry still{{1.0, 1.0}, 0.0};
    const auto s = integrate_mathieu(still, 50.0);
    for (std::size_t i = 0; i < s.t.size(); ++i) {
        CHECK(std::abs(std::abs(s.alpha[i]) - 1.0) < 1e-8);
        CHECK(std::abs(s.beta[i]) < 1e-8);
    }

    const dce_nd::CavityGeometry geom{{1.0, 1.0}, 0.01};
    const auto p = dce_nd::resonance_gamma(geom);
    const auto m = integrate_mathieu(geom, 1.0 / p.rate());
    const auto a = integrate_averaged(geom, 1.0 / p.rate());
    REQUIRE(m.t.size() == a.t.size());
    const double x = p.rate() * m.t.back();
    CHECK(std::abs(m.beta.back()) == Approx(std::sinh(x)).epsilon(3e-2));
    CHECK(std::abs(m.alpha.back()) == Approx(std::cosh(x)).epsilon(3e-2));
    CHECK(std::abs(a.beta.back()) == Approx(std::sinh(x)).epsilon(1e-8));
    CHECK(std::abs(a.alpha.back()) == Approx(std::cosh(x)).epsilon(1e-8));

    const auto longer = integrate_mathieu(geom, 6.0 / p.rate());
    CHECK(envelope_rate(longer, 3.0 / p.rate()) == Approx(p.rate()).epsilon(2e-2));

    const double mu = mathieu_monodromy_exponent(p.omega_r, dce_nd::mathieu_drive_amplitude(geom));
    CHECK(mu == Approx(p.rate()).epsilon(1e-2));
    CHECK(mu == Approx(0.0111072).epsilon(1e-2));
}
