// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iterator>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "casimir/dce1d.hpp"
#include "casimir/dce_nd.hpp"
#include "casimir/gaussian.hpp"
#include "casimir/oracle.hpp"

using namespace casimir;

namespace {

struct Verdict {
    bool pass;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v;
    for (int i = 0; i < n; ++i) v.push_back(a + (b - a) * i / (n - 1));
    return v;
}

Verdict exact_renyi_curve() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto s = dce1d::entropy_sweep(linspace(0.0, 6.0, 600));
    const double secs = seconds_since(t0);
    bool mono = true;
    for (std::size_t i = 1; i < s.size(); ++i) mono = mono && s[i].renyi >= s[i - 1].renyi;
    const bool ok = s.front().renyi == 0.0 && mono && secs < 5.0;
    return {ok, fmt("R(0) = %g, monotone = %d on 600 points, %.3f s", s.front().renyi, mono, secs)};
}

Verdict renyi_asymptote() {
    const double d3 = std::abs(dce1d::renyi_1d(3.0) - dce1d::renyi_asymptote_1(3.0));
    const double d15 = std::abs(dce1d::renyi_1d(1.5) - dce1d::renyi_asymptote_1(1.5));
    const double a1 = dce1d::renyi_asymptote_1(1.0);
    const bool ok = d3 < 1e-2 && 5 * d3 <= d15 && std::abs(a1 - 0.23662) <= 1e-5;
    return {ok, fmt("|R - A1| = %.3e at tau = 3, %.3e at 1.5 (ratio %.1f); A1(1) = %.6f", d3, d15, d15 / d3, a1)};
}

Verdict entropy_offset() {
    const double off = dce1d::entropy_1d(50.0) - 0.5 * std::log(50.0);
    return {std::abs(off - 0.4434) <= 2e-2, fmt("S(50) - log(50)/2 = %.5f", off)};
}

Verdict sum_rules() {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<dce1d::SumRuleResiduals> r;
    for (int n : {11, 21, 41}) r.push_back(dce1d::sum_rule_residuals(dce1d::build_ladder(0.5, n)));
    const double secs = seconds_since(t0);
    bool dec = true;
    for (std::size_t i = 1; i < r.size(); ++i)
        dec = dec && r[i].alpha_alpha_dot < r[i - 1].alpha_alpha_dot && r[i].beta_beta_dot < r[i - 1].beta_beta_dot &&
              r[i].cross < r[i - 1].cross;
    const double last = std::max({r[2].alpha_alpha_dot, r[2].beta_beta_dot, r[2].cross});
    return {dec && last < 1e-3 && secs < 10.0,
            fmt("largest residual %.3e / %.3e / %.3e at n_max 11/21/41, decreasing = %d, %.3f s",
                std::max({r[0].alpha_alpha_dot, r[0].beta_beta_dot, r[0].cross}),
                std::max({r[1].alpha_alpha_dot, r[1].beta_beta_dot, r[1].cross}), last, dec, secs)};
}

Verdict covariance_identities() {
    double worst = 0.0;
    for (double tau : {0.1, 0.5, 1.0, 2.0}) {
        const auto g = dce1d::covariance_1d_jet(tau, 2);
        const auto c = dce1d::alpha_beta_11(tau, 0);
        const double a = c.alpha[0], b = c.beta[0];
        worst = std::max({worst, std::abs(g.g11[1] + 2 * (a * a + b * b)), std::abs(g.g12[1] + 4 * a * b)});
    }
    return {worst < 1e-6, fmt("max jet mismatch %.3e over tau in {0.1, 0.5, 1, 2}", worst)};
}

struct OracleDeviation {
    double max_dev;
    double secs;
};

OracleDeviation oracle_deviation(double eps) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto run = oracle::run_resonant_1d(15, eps, oracle::periods_for_tau(0.3, eps));
    double worst = 0.0;
    for (std::size_t i = 0; i < run.data.size(); ++i) {
        if (run.tau[i] > 0.3) continue;
        worst = std::max(worst, std::abs(run.data[i].alpha(0, 0) - dce1d::alpha_beta_11(run.tau[i], 0).alpha[0]));
    }
    return {worst, seconds_since(t0)};
}

Verdict oracle_convergence() {
    const auto a = oracle_deviation(0.005);
    const auto b = oracle_deviation(0.002);
    const bool ok = a.max_dev <= 0.02 && b.max_dev < a.max_dev && a.secs < 60 && b.secs < 60;
    return {ok, fmt("max |alpha11 oracle - exact| = %.3e (eps 0.005, %.1f s), %.3e (eps 0.002, %.1f s)", a.max_dev,
                    a.secs, b.max_dev, b.secs)};
}

Verdict mixed_entropies() {
    const auto p = dce_nd::resonance_gamma({{1.0, 1.0}, 0.01});
    double worst = 0.0;
    for (double x : {0.25, 0.5, 1.0, 1.11072, 2.0, 4.0, 8.0}) {
        const auto e = dce_nd::mixed_subsystem_entropies(p, x / p.rate(), 1, 4, dce_nd::BetaSign::plus,
                                                         dce_nd::EntropyRoute::covariance);
        worst = std::max(worst, std::abs(e.renyi - std::log(std::cosh(x))));
    }
    const auto e8 = dce_nd::mixed_subsystem_entropies(p, 8.0 / p.rate());
    const double gap = std::abs(e8.entropy - e8.renyi - (1 - std::log(2.0)));
    return {worst <= 1e-10 && gap <= 1e-4,
            fmt("max |R - log cosh| = %.3e; |S - R - (1 - log 2)| = %.3e at x = 8", worst, gap)};
}

Verdict exponent_identity() {
    const dce_nd::CavityGeometry geom{{1.0, 1.0}, 0.01};
    const auto p = dce_nd::resonance_gamma(geom);
    const dce_nd::TruncatedFlow flow(p, 4);
    const double target = 0.0111072;
    const double mu = dce_nd::mathieu_floquet_mu(p.omega_r, dce_nd::mathieu_drive_amplitude(geom));
    const double lambda1 = dce_nd::lyapunov_spectrum(flow.generator()).front();
    const double t_max = 20.0 / p.rate();
    const double big =
        dce_nd::subsystem_exponent(dce_nd::subsystem_from_mixing(dce_nd::beam_splitter(4, 1), {0}, flow), flow, t_max);
    const double alone = dce_nd::subsystem_exponent(
        dce_nd::subsystem_from_mixing(gaussian::Matrix::Identity(8, 8), {0}, flow), flow, t_max);
    double s_alone = 0.0;
    for (double x : {0.5, 2.0, 5.0}) {
        const auto g = gaussian::apply_bogoliubov(flow.at(x / p.rate()), gaussian::vacuum(4));
        s_alone = std::max(s_alone, std::abs(gaussian::entanglement_entropy(
                                        gaussian::restrict(g, {{0}, std::nullopt}), gaussian::standard_form(1))));
    }
    auto close = [&](double v) { return std::abs(v - target) <= 0.01 * target; };
    const bool ok = close(mu) && close(lambda1) && close(big) && std::abs(alone) <= 1e-3 * target && s_alone < 1e-12;
    return {ok, fmt("mu = %.7f, lambda1 = %.7f, Lambda_A = %.7f; resonant mode alone: Lambda = %.2e, S = %.2e", mu,
                    lambda1, big, alone, s_alone)};
}

Verdict purity() {
    double worst_flow = 0.0;
    // higher-dimensional flows, alone and after random symplectic mixing
    const auto p = dce_nd::resonance_gamma({{1.0, 1.0}, 0.01});
    const dce_nd::TruncatedFlow flow(p, 4);
    std::mt19937_64 rng(2024);
    for (double x : {0.0, 0.5, 2.0, 5.0, 8.0}) {
        const auto w = flow.at(x / p.rate());
        worst_flow = std::max(worst_flow, static_cast<double>(gaussian::purity_defect(
                                              gaussian::apply_bogoliubov(w, gaussian::vacuum(4)))));
        const auto b = dce_nd::random_symplectic(4, rng);
        worst_flow = std::max(worst_flow, static_cast<double>(gaussian::purity_defect(
                                              gaussian::apply_bogoliubov(b * w, gaussian::vacuum(4)))));
    }
    // three-dimensional box, another resonant mode
    const auto p3 = dce_nd::resonance_gamma({{1.0, 1.5, 2.0}, 0.02}, {1, 2, 1});
    const dce_nd::TruncatedFlow flow3(p3, 3, dce_nd::BetaSign::minus);
    for (double x : {1.0, 6.0})
        worst_flow = std::max(worst_flow, static_cast<double>(gaussian::purity_defect(gaussian::apply_bogoliubov(
                                              flow3.at(x / p3.rate()), gaussian::vacuum(3)))));
    // brute-force (1+1)-D states at a tight integrator tolerance
    oracle::StepControl tight;
    tight.rtol = tight.atol = 1e-12;
    const auto run = oracle::run_resonant_1d(10, 0.01, 6, 1.0, tight);
    double worst_oracle = 0.0;
    for (const auto& d : run.data)
        worst_oracle = std::max(worst_oracle, static_cast<double>(gaussian::purity_defect(oracle::full_covariance(d))));
    return {worst_flow <= 1e-9 && worst_oracle <= 1e-9,
            fmt("max relative |(G Omega^-1)^2 + 1| = %.3e on flows, %.3e on oracle states", worst_flow, worst_oracle)};
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

Verdict determinism() {
    const std::string cli = CASIMIR_CLI;
    const std::string dir = CASIMIR_WORK_DIR;
    const std::vector<std::string> runs = {
        "dce1d --tau 0:6:600",
        "dce-nd --L 1,1 --epsilon 0.01 --time 0:2000:400 --format json",
        "sumrules --tau 0.5 --nmax 11,21,41",
        "lyapunov --trials 8 --seed 11",
        "oracle1d --epsilon 0.01 --N 10 --periods 4",
    };
    int same = 0;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        std::string out[2];
        for (int k = 0; k < 2; ++k) {
            const std::string path = dir + "/determinism_" + std::to_string(i) + "_" + std::to_string(k);
            // second run on a different worker count
            const std::string env = k == 0 ? "CASIMIR_THREADS=1 " : "CASIMIR_THREADS=3 ";
            if (std::system((env + "'" + cli + "' " + runs[i] + " -o '" + path + "'").c_str()) != 0) return {false, "run failed: " + runs[i]};
            out[k] = slurp(path);
        }
        if (!out[0].empty() && out[0] == out[1]) ++same;
    }
    return {same == static_cast<int>(runs.size()),
            fmt("%d of %zu scenarios byte-identical across two runs", same, runs.size())};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
        {"exact Renyi curve", exact_renyi_curve},
        {"Renyi asymptote", renyi_asymptote},
        {"entropy offset", entropy_offset},
        {"sum rules", sum_rules},
        {"covariance identities", covariance_identities},
        {"oracle convergence", oracle_convergence},
        {"mixed subsystem entropies", mixed_entropies},
        {"exponent identity", exponent_identity},
        {"purity", purity},
        {"determinism", determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v = {false, std::string("threw: ") + e.what()};
        }
        failed += !v.pass;
        std::printf("criterion %2zu %s  %s: %s\n", i + 1, v.pass ? "PASS" : "FAIL", criteria[i].first, v.detail.c_str());
        std::fflush(stdout);
    }
    return failed ? 1 : 0;
}
