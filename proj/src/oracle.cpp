#include "casimir/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "casimir/fit.hpp"

namespace casimir::oracle {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

struct ColumnSamples {
    std::vector<State> states;  // (Q, V) at each sample
    std::vector<bool> resting;  // wall at rest when sampled
    IntegrationStats stats;
};

void accumulate(IntegrationStats& into, const IntegrationStats& s) {
    into.accepted += s.accepted;
    into.rejected += s.rejected;
}

}  // namespace

Eigen::MatrixXd coupling_matrix(int N) {
    if (N < 2) throw std::invalid_argument("coupling matrix needs N >= 2");
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(N, N);
    for (int j = 1; j <= N; ++j)
        for (int k = 1; k <= N; ++k) {
            if (j == k) continue;
            const double sign = ((j + k) % 2 == 0) ? 1.0 : -1.0;
            g(j - 1, k - 1) = sign * 2.0 * j * k / (static_cast<double>(k) * k - static_cast<double>(j) * j);
        }
    return g;
}

MirrorTrajectory MirrorTrajectory::resonant_1d(double L1, double epsilon, int n_periods) {
    return {L1, epsilon, 2.0 * kPi / L1, MirrorPhase::sin, n_periods};
}

double MirrorTrajectory::period() const {
    if (!(omega_drive > 0.0)) throw std::invalid_argument("drive frequency must be positive");
    return 2.0 * kPi / omega_drive;
}

double MirrorTrajectory::length(double t) const {
    if (!moving(t)) return L1;
    const double w = omega_drive * t;
    return phase == MirrorPhase::sin ? L1 * (1.0 + epsilon * std::sin(w)) : L1 * (1.0 - epsilon * std::cos(w));
}

double MirrorTrajectory::lambda(double t) const {
    if (t < 0.0 || t > stop_time() || n_periods <= 0) return 0.0;
    const double w = omega_drive * t;
    if (phase == MirrorPhase::sin) return epsilon * omega_drive * std::cos(w) / (1.0 + epsilon * std::sin(w));
    return epsilon * omega_drive * std::sin(w) / (1.0 - epsilon * std::cos(w));
}

double MirrorTrajectory::lambda_dot(double t) const {
    if (t < 0.0 || t > stop_time() || n_periods <= 0) return 0.0;
    const double w = omega_drive * t;
    const double l = lambda(t);
    const double w2 = omega_drive * omega_drive;
    // L''/L - lambda^2
    if (phase == MirrorPhase::sin) return -epsilon * w2 * std::sin(w) / (1.0 + epsilon * std::sin(w)) - l * l;
    return epsilon * w2 * std::cos(w) / (1.0 - epsilon * std::cos(w)) - l * l;
}

TruncatedSystem::TruncatedSystem(int N_, double L1_) : N(N_), L1(L1_), g(coupling_matrix(N_)) {
    if (!(L1 > 0.0)) throw std::invalid_argument("cavity length must be positive");
    gtg = g.transpose() * g;
    omega.resize(N);
    for (int k = 0; k < N; ++k) omega[k] = kPi * (k + 1) / L1;
}

ModeSolution integrate_modes(const TruncatedSystem& sys, const MirrorTrajectory& traj,
                             const std::vector<double>& sample_times, const StepControl& ctl, Execution exec) {
    if (!std::is_sorted(sample_times.begin(), sample_times.end()) || (!sample_times.empty() && sample_times[0] < 0.0))
        throw std::invalid_argument("sample times must be sorted and non-negative");
    if (!(traj.epsilon >= 0.0 && traj.epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in [0, 1)");
    const int N = sys.N;
    const double stop = traj.n_periods > 0 ? traj.stop_time() : 0.0;
    const ComplexMatrix g = sys.g.cast<cplx>();
    const ComplexMatrix gtg = sys.gtg.cast<cplx>();

    // Each column builds its own right-hand sides so the scratch vector is not shared.
    auto moving_rhs = [&]() -> Rhs {
        return [&, scratch = State(N)](double t, Eigen::Ref<const State> y, Eigen::Ref<State> dy) mutable {
            const auto Q = y.head(N);
            const auto V = y.tail(N);
            const double L = traj.length(t);
            const double lam = traj.lambda(t);
            const double lam_dot = traj.lambda_dot(t);
            dy.head(N) = V;
            scratch = (2.0 * lam) * V + lam_dot * Q;
            dy.tail(N).noalias() = g * scratch;
            dy.tail(N).noalias() += (lam * lam) * (gtg * Q);
            const double base = kPi / L;
            for (int i = 0; i < N; ++i) {
                const double w = base * (i + 1);
                dy[N + i] -= (w * w) * Q[i];
            }
        };
    };
    const Rhs resting = [&](double, Eigen::Ref<const State> y, Eigen::Ref<State> dy) {
        dy.head(N) = y.tail(N);
        for (int i = 0; i < N; ++i) dy[N + i] = -(sys.omega[i] * sys.omega[i]) * y[i];
    };

    StepControl c = ctl;
    if (c.initial_step <= 0.0) c.initial_step = 1e-3 * sys.L1;

    auto column = [&](std::size_t col) {
        const auto n = static_cast<Eigen::Index>(col);
        State y = State::Zero(2 * N);
        y[n] = 1.0;
        y[N + n] = -kI * sys.omega[n];
        // wall velocity jumps from zero at t = 0
        y.tail(N) += traj.lambda(0.0) * (g * y.head(N));

        const Rhs moving = moving_rhs();
        ColumnSamples out;
        double t = 0.0;
        bool stopped = stop <= 0.0;
        double h = 0.0;
        for (double ts : sample_times) {
            if (!stopped && ts >= stop) {
                accumulate(out.stats, integrate_dopri5(moving, t, stop, y, c, &h));
                y.tail(N) -= traj.lambda(stop) * (g * y.head(N));
                t = stop;
                stopped = true;
            }
            accumulate(out.stats, integrate_dopri5(stopped ? resting : moving, t, ts, y, c, &h));
            t = ts;
            out.states.push_back(y);
            out.resting.push_back(stopped);
        }
        return out;
    };
    const auto columns = map_grid<ColumnSamples>(static_cast<std::size_t>(N), column, exec);

    ModeSolution sol;
    sol.times = sample_times;
    for (std::size_t s = 0; s < sample_times.size(); ++s) {
        ComplexMatrix Q(N, N), V(N, N), P(N, N);
        for (int n = 0; n < N; ++n) {
            const State& y = columns[static_cast<std::size_t>(n)].states[s];
            Q.col(n) = y.head(N);
            V.col(n) = y.tail(N);
        }
        const double lam = columns[0].resting[s] ? 0.0 : traj.lambda(sample_times[s]);
        P = V - lam * (g * Q);
        sol.Q.push_back(std::move(Q));
        sol.velocity.push_back(std::move(V));
        sol.momentum.push_back(std::move(P));
    }
    for (const auto& c_ : columns) accumulate(sol.stats, c_.stats);
    return sol;
}

cplx extract_alpha(cplx Q, cplx P, double omega, double t) {
    if (!(omega > 0.0)) throw std::invalid_argument("mode frequency must be positive");
    return 0.5 * std::exp(kI * (omega * t)) * (Q + kI * P / omega);
}

cplx extract_beta(cplx Q, cplx P, double omega, double t) {
    if (!(omega > 0.0)) throw std::invalid_argument("mode frequency must be positive");
    return 0.5 * std::exp(-kI * (omega * t)) * (Q - kI * P / omega);
}

BogoliubovData extract_bogoliubov(const ComplexMatrix& Q, const ComplexMatrix& P, const Eigen::VectorXd& omega,
                                  double t) {
    const Eigen::Index N = Q.rows();
    BogoliubovData d{ComplexMatrix(N, N), ComplexMatrix(N, N)};
    for (Eigen::Index n = 0; n < N; ++n)
        for (Eigen::Index k = 0; k < N; ++k) {
            // Q^n_k is normalised against in-mode n; rescale to the out-mode k basis
            const double w = std::sqrt((k + 1.0) / (n + 1.0));
            d.alpha(n, k) = w * extract_alpha(Q(k, n), P(k, n), omega[k], t);
            d.beta(n, k) = w * extract_beta(Q(k, n), P(k, n), omega[k], t);
        }
    return d;
}

Eigen::VectorXd particle_numbers(const ComplexMatrix& beta) { return beta.cwiseAbs2().colwise().sum().transpose(); }

double symplectic_residual(const BogoliubovData& d) {
    const Eigen::Index N = d.alpha.rows();
    double worst = 0.0;
    for (Eigen::Index n = 0; n < N; ++n)
        for (Eigen::Index m = 0; m < N; ++m) {
            cplx s = 0.0;
            for (Eigen::Index k = 0; k < N; ++k)
                s += d.alpha(n, k) * std::conj(d.alpha(m, k)) - d.beta(n, k) * std::conj(d.beta(m, k));
            worst = std::max(worst, std::abs(s - (n == m ? 1.0 : 0.0)));
        }
    return worst;
}

gaussian::CovarianceMatrix full_covariance(const BogoliubovData& d) {
    const gaussian::BogoliubovMap map{d.alpha.cast<gaussian::Complex>(), d.beta.cast<gaussian::Complex>()};
    const gaussian::Matrix m = map.assembled();
    const auto N = static_cast<int>(d.alpha.rows());
    return gaussian::CovarianceMatrix(m * gaussian::vacuum(N).matrix() * m.transpose());
}

int periods_for_tau(double tau, double epsilon) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
    return static_cast<int>(std::ceil(tau / (epsilon * kPi / 2.0) - 1e-9));
}

PeriodSamples run_resonant_1d(int N, double epsilon, int periods, double L1, const StepControl& ctl, Execution exec) {
    if (periods < 0) throw std::invalid_argument("periods must be non-negative");
    const TruncatedSystem sys(N, L1);
    const auto traj = MirrorTrajectory::resonant_1d(L1, epsilon, periods);
    std::vector<double> times;
    for (int m = 0; m <= periods; ++m) times.push_back(m * traj.period());
    const auto sol = integrate_modes(sys, traj, times, ctl, exec);

    PeriodSamples out;
    out.stats = sol.stats;
    for (int m = 0; m <= periods; ++m) {
        const auto i = static_cast<std::size_t>(m);
        out.periods.push_back(m);
        out.tau.push_back(epsilon * kPi * m / 2.0);
        out.data.push_back(extract_bogoliubov(sol.Q[i], sol.momentum[i], sys.omega, times[i]));
    }
    return out;
}

double double_sum_residual(const PeriodSamples& run, std::size_t i) {
    if (i == 0 || i + 1 >= run.data.size()) throw std::out_of_range("central difference needs neighbouring periods");
    const double dtau = run.tau[i + 1] - run.tau[i - 1];
    const auto& b = run.data[i].beta;
    const ComplexMatrix db = (run.data[i + 1].beta - run.data[i - 1].beta) / dtau;
    const double lhs = (b.conjugate().cwiseProduct(db)).sum().real();
    const auto& a = run.data[i].alpha;
    const double rhs = -(a.col(0).cwiseProduct(b.col(0).conjugate())).sum().real();
    return std::abs(lhs - rhs);
}

namespace {

struct MathieuModel {
    double omega;
    double drive;
    double rate;
};

MathieuModel mathieu_model(const dce_nd::CavityGeometry& geom) {
    const auto p = dce_nd::resonance_gamma(geom);
    return {p.omega_r, dce_nd::mathieu_drive_amplitude(geom, p.mode), p.rate()};
}

std::vector<double> stroboscopic_grid(double period, double t_end) {
    if (!(t_end >= 0.0)) throw std::invalid_argument("t_end must be non-negative");
    std::vector<double> t;
    for (long m = 0; m * period <= t_end * (1.0 + 1e-12); ++m) t.push_back(static_cast<double>(m) * period);
    return t;
}

}  // namespace

MathieuSamples integrate_mathieu(const dce_nd::CavityGeometry& geom, double t_end, const StepControl& ctl) {
    const auto m = mathieu_model(geom);
    const Rhs f = [&](double t, Eigen::Ref<const State> y, Eigen::Ref<State> dy) {
        dy[0] = y[1];
        dy[1] = -(m.omega * m.omega + m.drive * std::cos(2.0 * m.omega * t)) * y[0];
    };
    StepControl c = ctl;
    if (c.initial_step <= 0.0) c.initial_step = 1e-3 / m.omega;
    State y(2);
    y << 1.0, -kI * m.omega;
    MathieuSamples out;
    double t = 0.0, h = 0.0;
    for (double ts : stroboscopic_grid(kPi / m.omega, t_end)) {
        accumulate(out.stats, integrate_dopri5(f, t, ts, y, c, &h));
        t = ts;
        out.t.push_back(ts);
        out.alpha.push_back(extract_alpha(y[0], y[1], m.omega, ts));
        out.beta.push_back(extract_beta(y[0], y[1], m.omega, ts));
    }
    return out;
}

MathieuSamples integrate_averaged(const dce_nd::CavityGeometry& geom, double t_end, const StepControl& ctl) {
    const auto m = mathieu_model(geom);
    const Rhs f = [&](double, Eigen::Ref<const State> y, Eigen::Ref<State> dy) {
        dy[0] = -kI * m.rate * y[1];
        dy[1] = kI * m.rate * y[0];
    };
    State y(2);
    y << 1.0, 0.0;
    MathieuSamples out;
    double t = 0.0, h = 0.0;
    for (double ts : stroboscopic_grid(kPi / m.omega, t_end)) {
        accumulate(out.stats, integrate_dopri5(f, t, ts, y, ctl, &h));
        t = ts;
        out.t.push_back(ts);
        out.alpha.push_back(y[0]);
        out.beta.push_back(y[1]);
    }
    return out;
}

double mathieu_monodromy_exponent(double omega0, double drive_amplitude, const StepControl& ctl) {
    if (!(omega0 > 0.0)) throw std::invalid_argument("omega0 must be positive");
    const Rhs f = [&](double t, Eigen::Ref<const State> y, Eigen::Ref<State> dy) {
        const double w2 = omega0 * omega0 + drive_amplitude * std::cos(2.0 * omega0 * t);
        dy[0] = y[1];
        dy[1] = -w2 * y[0];
        dy[2] = y[3];
        dy[3] = -w2 * y[2];
    };
    StepControl c = ctl;
    if (c.initial_step <= 0.0) c.initial_step = 1e-3 / omega0;
    State y(4);
    y << 1.0, 0.0, 0.0, 1.0;
    const double T = kPi / omega0;
    integrate_dopri5(f, 0.0, T, y, c);
    const double trace = y[0].real() + y[3].real();
    const double half = 0.5 * std::abs(trace);
    if (half <= 1.0) return 0.0;
    return std::log(half + std::sqrt(half * half - 1.0)) / T;
}

double envelope_rate(const MathieuSamples& s, double t_from) {
    std::vector<double> t, y;
    for (std::size_t i = 0; i < s.t.size(); ++i)
        if (s.t[i] >= t_from && std::abs(s.beta[i]) > 0.0) {
            t.push_back(s.t[i]);
            y.push_back(std::log(std::abs(s.beta[i])));
        }
    return fit_line(t, y).slope;
}

}  // namespace casimir::oracle
