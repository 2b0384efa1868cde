// casimir-cli: scenario runs, sweeps and the analytic-vs-oracle comparison.
// Exit codes: 0 success, 2 invalid configuration, 3 numerical failure or a
// violated invariant.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "casimir/dce1d.hpp"
#include "casimir/dce_nd.hpp"
#include "casimir/gaussian.hpp"
#include "casimir/oracle.hpp"
#include "casimir/parallel.hpp"
#include "table.hpp"

using namespace casimir;
using cli::Cell;
using cli::Table;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

// Row-level checks applied before anything is written.
constexpr double kInvariantTolerance = 1e-9;
constexpr double kOracleSymplecticTolerance = 1e-6;

// Relative deviations are only collected where the reference exceeds this;
// near tau = 0 the entropies vanish like tau^2 and the ratio is noise.
constexpr double kRelativeFloor = 1e-3;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvariantViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Grid {
    double start = 0.0, stop = 0.0;
    int count = 0;

    std::vector<double> points() const {
        std::vector<double> v(static_cast<std::size_t>(count));
        for (int i = 0; i < count; ++i) v[static_cast<std::size_t>(i)] = start + (stop - start) * i / (count - 1);
        return v;
    }
    std::string str() const {
        return cli::format_double(start) + ":" + cli::format_double(stop) + ":" + std::to_string(count);
    }
};

double parse_number(const std::string& s, const std::string& what) {
    std::size_t used = 0;
    double x = 0.0;
    try {
        x = std::stod(s, &used);
    } catch (...) {
        throw ConfigError(what + ": '" + s + "' is not a number");
    }
    if (used != s.size() || !std::isfinite(x)) throw ConfigError(what + ": '" + s + "' is not a finite number");
    return x;
}

Grid parse_grid(const std::string& s, const std::string& what) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3) throw ConfigError(what + " must be start:stop:count, got '" + s + "'");
    Grid g{parse_number(parts[0], what), parse_number(parts[1], what), 0};
    const double c = parse_number(parts[2], what);
    if (c != std::floor(c) || c < 2 || c > 1e8) throw ConfigError(what + ": count must be an integer >= 2");
    g.count = static_cast<int>(c);
    if (!(g.stop >= g.start)) throw ConfigError(what + ": stop must not be below start");
    return g;
}

std::string join(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + cli::format_double(v[i]);
    return s;
}

std::string join(const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

struct Options {
    std::string scenario;
    std::string tau, time, format;
    std::vector<double> lengths;
    std::vector<int> nmax, cutoffs, mode;
    double epsilon = -1.0;
    int N = 15, modes = 4, spectator = 1, trials = 20, periods = -1, threads = 0;
    std::uint64_t seed = 1;
    double rtol = 1e-10, atol = 1e-10;
    std::string output, write_config, compare_scenario = "oracle1d";
};

// Resolved run description; also what the JSON `config` block and
// --write-config report.
class Run {
  public:
    explicit Run(Options o) : o_(std::move(o)) {}

    const Options& opts() const { return o_; }
    cli::ConfigEntries& entries() { return entries_; }
    void note(const std::string& k, const std::string& v) { entries_.emplace_back(k, v); }

    double epsilon(double fallback) {
        const double e = o_.epsilon < 0 ? fallback : o_.epsilon;
        if (!(e >= 0.0) || !(e < 1.0)) throw ConfigError("epsilon must lie in [0, 1)");
        note("epsilon", cli::format_double(e));
        return e;
    }
    Grid grid(const std::string& key, const std::string& value, const std::string& fallback) {
        const Grid g = parse_grid(value.empty() ? fallback : value, "--" + key);
        note(key, g.str());
        return g;
    }
    dce_nd::CavityGeometry geometry(double eps) {
        dce_nd::CavityGeometry g{o_.lengths.empty() ? std::vector<double>{1.0, 1.0} : o_.lengths, eps};
        try {
            g.validate();
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
        note("L", join(g.lengths));
        return g;
    }
    dce_nd::ModeIndex mode(const dce_nd::CavityGeometry& g) {
        dce_nd::ModeIndex r = o_.mode.empty() ? dce_nd::ModeIndex(g.lengths.size(), 1) : o_.mode;
        if (static_cast<int>(r.size()) != g.dims()) throw ConfigError("--mode needs one index per dimension");
        for (int k : r)
            if (k < 1) throw ConfigError("--mode indices must be positive");
        note("mode", join(r));
        return r;
    }
    int positive(const std::string& key, int v, int min = 1) {
        if (v < min) throw ConfigError("--" + key + " must be at least " + std::to_string(min));
        note(key, std::to_string(v));
        return v;
    }
    oracle::StepControl steps() {
        if (!(o_.rtol > 0.0) || !(o_.atol > 0.0)) throw ConfigError("tolerances must be positive");
        note("rtol", cli::format_double(o_.rtol));
        note("atol", cli::format_double(o_.atol));
        oracle::StepControl c;
        c.rtol = o_.rtol;
        c.atol = o_.atol;
        return c;
    }

  private:
    Options o_;
    cli::ConfigEntries entries_;
};

void require(bool ok, const std::string& what) {
    if (!ok) throw InvariantViolation(what);
}

// --- scenarios ----------------------------------------------------------------

Table run_dce1d(Run& run) {
    const Grid g = run.grid("tau", run.opts().tau, "0:6:600");
    if (g.start < 0) throw ConfigError("--tau must be non-negative");
    const auto samples = dce1d::entropy_sweep(g.points());
    Table t{{"tau", "renyi_exact", "renyi_asymp1", "renyi_asymp2", "entropy_exact", "entropy_asymp"}, {}};
    for (const auto& s : samples) {
        require(s.renyi >= -kInvariantTolerance && s.entropy >= -kInvariantTolerance,
                "negative entropy at tau = " + cli::format_double(s.tau));
        require(s.minus_det >= 1.0 - kInvariantTolerance, "-det G_A < 1 at tau = " + cli::format_double(s.tau));
        t.add({s.tau, s.renyi, s.renyi_asymp1, s.renyi_asymp2, s.entropy, s.entropy_asymp});
    }
    return t;
}

Table run_dce_nd(Run& run) {
    const auto geom = run.geometry(run.epsilon(0.01));
    const auto p = dce_nd::resonance_gamma(geom, run.mode(geom));
    const int modes = run.positive("modes", run.opts().modes, 2);
    const int spectator = run.positive("spectator", run.opts().spectator);
    if (spectator >= modes) throw ConfigError("--spectator must be below --modes");
    const Grid g = run.grid("time", run.opts().time, "0:2000:400");
    if (g.start < 0) throw ConfigError("--time must be non-negative");

    const auto times = g.points();
    const dce_nd::TruncatedFlow flow(p, modes);
    struct Row {
        double renyi, entropy, purity;
    };
    const auto rows = map_grid<Row>(times.size(), [&](std::size_t i) {
        const double t = times[i];
        const auto e = dce_nd::mixed_subsystem_entropies(p, t, spectator, modes);
        double purity = 0.0;
        // the full state is only checked where its covariance is resolvable
        if (p.rate() * t <= dce_nd::kCovarianceRouteLimit)
            purity = static_cast<double>(
                gaussian::purity_defect(gaussian::apply_bogoliubov(flow.at(t), gaussian::vacuum(modes))));
        return Row{e.renyi, e.entropy, purity};
    });
    Table t{{"t", "R_A", "S_A", "asymptote"}, {}};
    for (std::size_t i = 0; i < times.size(); ++i) {
        const auto& r = rows[i];
        const std::string at = " at t = " + cli::format_double(times[i]);
        require(r.renyi >= -kInvariantTolerance, "negative Renyi entropy" + at);
        require(r.entropy >= r.renyi - kInvariantTolerance, "S_A < R_A" + at);
        require(r.purity <= kInvariantTolerance, "evolved state is not pure" + at);
        t.add({times[i], r.renyi, r.entropy, dce_nd::mixed_entropy_asymptote(p, times[i])});
    }
    return t;
}

// Renyi and von Neumann entropy of out-mode k from an oracle Bogoliubov matrix.
std::pair<double, double> oracle_entropies(const oracle::BogoliubovData& d, int k = 0) {
    const auto g = gaussian::restrict(oracle::full_covariance(d), {{k}, std::nullopt});
    const auto omega = gaussian::standard_form(1);
    return {gaussian::renyi_entropy(g, omega), gaussian::entanglement_entropy(g, omega)};
}

int resolve_periods(Run& run, double eps, double fallback_tau) {
    int periods = run.opts().periods;
    if (periods < 0) {
        const Grid g = run.grid("tau", run.opts().tau, "0:" + cli::format_double(fallback_tau) + ":2");
        if (g.start != 0.0) throw ConfigError("oracle runs start at tau = 0; give 0:stop:count");
        if (eps == 0.0) throw ConfigError("with epsilon = 0 give --periods instead of a tau range");
        periods = oracle::periods_for_tau(g.stop, eps);
    }
    return run.positive("periods", periods, 0);
}

Table run_oracle1d(Run& run) {
    const double eps = run.epsilon(0.005);
    const int N = run.positive("N", run.opts().N, 2);
    const int periods = resolve_periods(run, eps, 0.3);
    const auto ctl = run.steps();
    const auto res = oracle::run_resonant_1d(N, eps, periods, 1.0, ctl);

    Table t{{"period", "tau", "alpha11_re", "alpha11_im", "beta11_re", "beta11_im", "N1", "renyi", "entropy",
             "symplectic_residual"},
            {}};
    for (std::size_t i = 0; i < res.data.size(); ++i) {
        const auto& d = res.data[i];
        const double resid = oracle::symplectic_residual(d);
        require(resid <= kOracleSymplecticTolerance,
                "symplectic residual " + cli::format_double(resid) + " after period " + std::to_string(i));
        const auto [r, s] = oracle_entropies(d);
        t.add({static_cast<std::int64_t>(res.periods[i]), res.tau[i], d.alpha(0, 0).real(), d.alpha(0, 0).imag(),
               d.beta(0, 0).real(), d.beta(0, 0).imag(), oracle::particle_numbers(d.beta)(0), r, s, resid});
    }
    return t;
}

Table run_mathieu(Run& run) {
    const auto geom = run.geometry(run.epsilon(0.01));
    const Grid g = run.grid("time", run.opts().time, "0:500:2");
    const auto ctl = run.steps();
    const auto m = oracle::integrate_mathieu(geom, g.stop, ctl);
    const auto a = oracle::integrate_averaged(geom, g.stop, ctl);
    Table t{{"t", "abs_alpha", "abs_beta", "averaged_abs_alpha", "averaged_abs_beta"}, {}};
    for (std::size_t i = 0; i < m.t.size(); ++i) {
        const double n2 = std::norm(m.alpha[i]) - std::norm(m.beta[i]);
        require(std::abs(n2 - 1.0) <= 1e-6, "|alpha|^2 - |beta|^2 drifted at t = " + cli::format_double(m.t[i]));
        t.add({m.t[i], std::abs(m.alpha[i]), std::abs(m.beta[i]), std::abs(a.alpha[i]), std::abs(a.beta[i])});
    }
    return t;
}

struct Exponents {
    double rate, mathieu_mu, monodromy, lambda1, lambda_mixed, lambda_alone, entropy_alone;
    std::vector<dce_nd::SubsystemTrial> trials;
};

Exponents exponents(Run& run, const dce_nd::CavityGeometry& geom, const oracle::StepControl& ctl) {
    const auto r = run.mode(geom);
    const auto p = dce_nd::resonance_gamma(geom, r);
    if (!(p.rate() > 0.0)) throw ConfigError("exponents need epsilon > 0");
    const int modes = run.positive("modes", run.opts().modes, 2);
    const int trials = run.positive("trials", run.opts().trials, 0);
    run.note("seed", std::to_string(run.opts().seed));
    const dce_nd::TruncatedFlow flow(p, modes);
    const double t_max = 20.0 / p.rate();

    Exponents e{};
    e.rate = p.rate();
    const double drive = dce_nd::mathieu_drive_amplitude(geom, r);
    e.mathieu_mu = dce_nd::mathieu_floquet_mu(p.omega_r, drive);
    e.monodromy = oracle::mathieu_monodromy_exponent(p.omega_r, drive, ctl);
    e.lambda1 = dce_nd::lyapunov_spectrum(flow.generator()).front();
    e.lambda_mixed =
        dce_nd::subsystem_exponent(dce_nd::subsystem_from_mixing(dce_nd::beam_splitter(modes, 1), {0}, flow), flow, t_max);
    e.lambda_alone = dce_nd::subsystem_exponent(
        dce_nd::subsystem_from_mixing(gaussian::Matrix::Identity(2 * modes, 2 * modes), {0}, flow), flow, t_max);
    // the resonant mode on its own stays pure
    const auto g = gaussian::apply_bogoliubov(flow.at(2.0 / p.rate()), gaussian::vacuum(modes));
    e.entropy_alone = gaussian::entanglement_entropy(gaussian::restrict(g, {{0}, std::nullopt}),
                                                     gaussian::standard_form(1));
    e.trials = dce_nd::random_subsystem_trials(flow, trials, run.opts().seed, t_max);
    return e;
}

Table run_lyapunov(Run& run) {
    const auto geom = run.geometry(run.epsilon(0.01));
    const auto e = exponents(run, geom, run.steps());
    Table t{{"quantity", "value"}, {}};
    t.add({"omega_gamma", e.rate});
    t.add({"mathieu_mu", e.mathieu_mu});
    t.add({"monodromy_mu", e.monodromy});
    t.add({"generator_lambda1", e.lambda1});
    t.add({"subsystem_mixed", e.lambda_mixed});
    t.add({"subsystem_resonant_alone", e.lambda_alone});
    t.add({"entropy_resonant_alone", e.entropy_alone});
    for (const auto& tr : e.trials)
        t.add({"trial_seed_" + std::to_string(tr.seed) + (tr.generic ? "" : "_degenerate"), tr.exponent});
    return t;
}

Table run_sumrules(Run& run) {
    const std::string tau_s = run.opts().tau.empty() ? "0.5" : run.opts().tau;
    const double tau = parse_number(tau_s, "--tau");
    if (tau < 0) throw ConfigError("--tau must be non-negative");
    run.note("tau", cli::format_double(tau));
    std::vector<int> nmax = run.opts().nmax.empty() ? std::vector<int>{11, 21, 41} : run.opts().nmax;
    for (int n : nmax)
        if (n < 1 || n % 2 == 0) throw ConfigError("--nmax entries must be odd and positive");
    run.note("nmax", join(nmax));

    Table t{{"n_max", "alpha_alpha_dot", "beta_beta_dot", "cross", "decreasing"}, {}};
    double prev = INFINITY;
    for (int n : nmax) {
        const auto r = dce1d::sum_rule_residuals(dce1d::build_ladder(tau, n));
        const double worst = std::max({r.alpha_alpha_dot, r.beta_beta_dot, r.cross});
        t.add({static_cast<std::int64_t>(n), r.alpha_alpha_dot, r.beta_beta_dot, r.cross,
               static_cast<std::int64_t>(worst < prev)});
        prev = worst;
    }
    return t;
}

double median(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

Table compare_oracle1d(Run& run) {
    const double eps = run.epsilon(0.005);
    const int periods = resolve_periods(run, eps, 0.3);
    std::vector<int> cutoffs = run.opts().cutoffs.empty() ? std::vector<int>{10, 15, 20, 30} : run.opts().cutoffs;
    for (int n : cutoffs)
        if (n < 2) throw ConfigError("--cutoffs entries must be at least 2");
    run.note("cutoffs", join(cutoffs));
    const auto ctl = run.steps();

    Table t{{"N", "quantity", "max_abs", "max_rel", "median_rel"}, {}};
    for (int N : cutoffs) {
        const auto res = oracle::run_resonant_1d(N, eps, periods, 1.0, ctl);
        std::map<std::string, std::vector<double>> abs_dev, rel_dev;
        const char* names[] = {"alpha11", "beta11", "N1", "renyi", "entropy"};
        double worst_resid = 0.0;
        for (std::size_t i = 0; i < res.data.size(); ++i) {
            const auto& d = res.data[i];
            const double tau = res.tau[i];
            const auto c = dce1d::alpha_beta_11(tau, 0);
            const auto [r, s] = oracle_entropies(d);
            const double exact_n1 = dce1d::particle_number_closed_form(tau);
            const double oracle_vals[] = {std::abs(d.alpha(0, 0) - c.alpha[0]), std::abs(d.beta(0, 0) - c.beta[0]),
                                          std::abs(oracle::particle_numbers(d.beta)(0) - exact_n1),
                                          std::abs(r - dce1d::renyi_1d(tau)), std::abs(s - dce1d::entropy_1d(tau))};
            const double scale[] = {std::abs(c.alpha[0]), std::abs(c.beta[0]), exact_n1, dce1d::renyi_1d(tau),
                                    dce1d::entropy_1d(tau)};
            for (int q = 0; q < 5; ++q) {
                abs_dev[names[q]].push_back(oracle_vals[q]);
                if (scale[q] >= kRelativeFloor) rel_dev[names[q]].push_back(oracle_vals[q] / scale[q]);
            }
            worst_resid = std::max(worst_resid, oracle::symplectic_residual(d));
        }
        require(worst_resid <= kOracleSymplecticTolerance,
                "oracle symplectic residual " + cli::format_double(worst_resid) + " at N = " + std::to_string(N));
        for (const char* q : names) {
            const auto& a = abs_dev[q];
            const auto& rl = rel_dev[q];
            t.add({static_cast<std::int64_t>(N), std::string(q), *std::max_element(a.begin(), a.end()),
                   rl.empty() ? 0.0 : *std::max_element(rl.begin(), rl.end()), median(rl)});
        }
        t.add({static_cast<std::int64_t>(N), std::string("symplectic_residual"), worst_resid, 0.0, 0.0});
    }
    return t;
}

Table compare_mathieu(Run& run) {
    const auto geom = run.geometry(run.epsilon(0.01));
    const auto ctl = run.steps();
    const auto e = exponents(run, geom, ctl);
    const double x_end = 6.0;
    const auto m = oracle::integrate_mathieu(geom, x_end / e.rate, ctl);
    double env = 0.0, env_rel = 0.0;
    std::vector<double> rel;
    for (std::size_t i = 1; i < m.t.size(); ++i) {
        const double sh = std::sinh(e.rate * m.t[i]);
        const double d = std::abs(std::abs(m.beta[i]) - sh);
        env = std::max(env, d);
        env_rel = std::max(env_rel, d / sh);
        rel.push_back(d / sh);
    }
    const double mus[] = {e.mathieu_mu, e.lambda1, e.lambda_mixed, e.monodromy};
    double spread = 0.0;
    for (double a : mus) spread = std::max(spread, std::abs(a - e.rate) / e.rate);

    Table t{{"quantity", "value"}, {}};
    t.add({"envelope_minus_sinh_max_abs", env});
    t.add({"envelope_minus_sinh_max_rel", env_rel});
    t.add({"envelope_minus_sinh_median_rel", median(rel)});
    t.add({"omega_gamma", e.rate});
    t.add({"mathieu_mu", e.mathieu_mu});
    t.add({"generator_lambda1", e.lambda1});
    t.add({"subsystem_lambda", e.lambda_mixed});
    t.add({"monodromy_mu", e.monodromy});
    t.add({"max_rel_spread", spread});
    return t;
}

Table run_compare(Run& run) {
    const std::string& what = run.opts().compare_scenario;
    run.note("against", what);
    if (what == "oracle1d") return compare_oracle1d(run);
    if (what == "mathieu") return compare_mathieu(run);
    throw ConfigError("--against must be oracle1d or mathieu");
}

void write_config_file(const std::string& path, const cli::ConfigEntries& entries) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + path);
    for (const auto& [k, v] : entries) f << k << " = " << v << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Entanglement growth in resonant dynamical Casimir cavities"};
    app.fallthrough();
    app.require_subcommand(0, 1);
    app.set_config("--config", "", "flat key = value file; command line flags take precedence");

    Options o;
    app.add_option("--scenario", o.scenario, "scenario when no subcommand is given")->group("");
    app.add_option("--tau", o.tau, "slow-time grid start:stop:count (sumrules: a single value)");
    app.add_option("--time", o.time, "time grid start:stop:count");
    app.add_option("--L", o.lengths, "cavity side lengths, comma separated")->delimiter(',');
    app.add_option("--epsilon", o.epsilon, "relative wall amplitude");
    app.add_option("--mode", o.mode, "resonant mode indices, comma separated")->delimiter(',');
    app.add_option("--nmax", o.nmax, "ladder cutoffs, comma separated")->delimiter(',');
    app.add_option("--N", o.N, "oracle mode cutoff");
    app.add_option("--cutoffs", o.cutoffs, "oracle cutoffs for the comparison")->delimiter(',');
    app.add_option("--periods", o.periods, "oracle drive periods (overrides --tau)");
    app.add_option("--modes", o.modes, "modes in the truncated higher-dimensional flow");
    app.add_option("--spectator", o.spectator, "slot of the spectator mixed with the resonant mode");
    app.add_option("--trials", o.trials, "random subsystems for the exponent check");
    app.add_option("--seed", o.seed, "seed for the random subsystems");
    app.add_option("--rtol", o.rtol, "integrator relative tolerance");
    app.add_option("--atol", o.atol, "integrator absolute tolerance");
    app.add_option("--against", o.compare_scenario, "compare: oracle1d or mathieu");
    app.add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--output,-o", o.output, "output file (default stdout)");
    app.add_option("--write-config", o.write_config, "also write the effective configuration to this file");
    app.add_option("--threads", o.threads, "cap on worker threads (CASIMIR_THREADS also applies)");

    const std::vector<std::pair<std::string, std::string>> scenarios = {
        {"dce1d", "exact and asymptotic entropies of the resonant (1+1)-D cavity"},
        {"dce-nd", "entropies of the mixed subsystem in a higher-dimensional cavity"},
        {"oracle1d", "brute-force mode equations for the (1+1)-D cavity"},
        {"mathieu", "parametric oscillator of the resonant mode"},
        {"lyapunov", "three-way exponent check and random subsystem exponents"},
        {"sumrules", "ladder sum-rule residuals against the cutoff"},
        {"compare", "analytic results against the oracle"},
    };
    for (const auto& [name, help] : scenarios) app.add_subcommand(name, help)->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    for (const auto* sub : app.get_subcommands()) o.scenario = sub->get_name();
    if (o.scenario.empty()) {
        std::cerr << "no scenario given\n" << app.help();
        return kExitConfig;
    }

    Run run(o);
    try {
        run.note("scenario", o.scenario);
        if (o.threads < 0) throw ConfigError("--threads must be non-negative");
        set_thread_cap(o.threads);
        std::string format = o.format.empty() ? (o.scenario == "sumrules" ? "json" : "csv") : o.format;
        run.note("format", format);

        Table table;
        if (o.scenario == "dce1d") table = run_dce1d(run);
        else if (o.scenario == "dce-nd") table = run_dce_nd(run);
        else if (o.scenario == "oracle1d") table = run_oracle1d(run);
        else if (o.scenario == "mathieu") table = run_mathieu(run);
        else if (o.scenario == "lyapunov") table = run_lyapunov(run);
        else if (o.scenario == "sumrules") table = run_sumrules(run);
        else if (o.scenario == "compare") table = run_compare(run);
        else throw ConfigError("unknown scenario '" + o.scenario + "'");

        if (!o.write_config.empty()) write_config_file(o.write_config, run.entries());
        std::ofstream file;
        if (!o.output.empty()) {
            file.open(o.output, std::ios::binary);
            if (!file) throw ConfigError("cannot write " + o.output);
        }
        std::ostream& os = o.output.empty() ? std::cout : file;
        if (format == "json") cli::write_json(os, table, run.entries());
        else cli::write_csv(os, table);
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "invalid configuration: " << e.what() << '\n';
        return kExitConfig;
    } catch (const InvariantViolation& e) {
        std::cerr << "invariant violated: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    }
}
