#include "casimir/dce_nd.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "casimir/fit.hpp"

namespace casimir::dce_nd {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI{0.0L, 1.0L};

Real sign_of(BetaSign s) { return s == BetaSign::plus ? 1.0L : -1.0L; }

std::vector<double> linspace(double a, double b, int n) {
    if (n < 2) throw std::invalid_argument("need at least two samples");
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = a + (b - a) * i / (n - 1);
    return v;
}

Real log_volume(const Matrix& columns) {
    Eigen::HouseholderQR<Matrix> qr(columns);
    Real acc = 0.0L;
    for (Eigen::Index i = 0; i < columns.cols(); ++i) acc += std::log(std::abs(qr.matrixQR()(i, i)));
    return acc;
}

Matrix stack(const std::vector<Vector>& theta) {
    if (theta.empty()) throw std::invalid_argument("subsystem needs at least one dual vector");
    Matrix m(theta.front().size(), static_cast<Eigen::Index>(theta.size()));
    for (std::size_t j = 0; j < theta.size(); ++j) {
        if (theta[j].size() != m.rows()) throw gaussian::DimensionMismatch("dual vectors differ in length");
        m.col(static_cast<Eigen::Index>(j)) = theta[j];
    }
    return m;
}

void check_darboux(const Matrix& theta, int n_modes) {
    if (theta.rows() != 2 * n_modes) throw gaussian::DimensionMismatch("dual vectors do not match the flow");
    if (theta.cols() % 2 != 0) throw std::invalid_argument("a subsystem needs an even number of dual vectors");
    const auto omega = gaussian::standard_form(n_modes).matrix;
    const Matrix w = theta.transpose() * omega * theta;
    const auto target = gaussian::standard_form(static_cast<int>(theta.cols() / 2)).matrix;
    if ((w - target).cwiseAbs().maxCoeff() > 1e-9L) throw std::invalid_argument("dual vectors are not a Darboux basis");
}

Matrix haar_unitary(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix z(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) z(i, j) = Complex(gauss(rng), gauss(rng));
    Eigen::HouseholderQR<Matrix> qr(z);
    Matrix q = qr.householderQ();
    for (int j = 0; j < n; ++j) {
        const Complex r = qr.matrixQR()(j, j);
        q.col(j) *= r / std::abs(r);
    }
    return q;
}

}  // namespace

void CavityGeometry::validate() const {
    if (lengths.size() < 2) throw std::invalid_argument("cavity needs at least two dimensions");
    for (double l : lengths)
        if (!(l > 0.0) || !std::isfinite(l)) throw std::invalid_argument("cavity lengths must be positive");
    if (!(epsilon >= 0.0) || !(epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in [0, 1)");
}

double mode_frequency(const CavityGeometry& geom, const ModeIndex& k) {
    geom.validate();
    if (static_cast<int>(k.size()) != geom.dims())
        throw std::invalid_argument("mode index has " + std::to_string(k.size()) + " components, cavity has " +
                                    std::to_string(geom.dims()));
    double s = 0.0;
    for (std::size_t i = 0; i < k.size(); ++i) {
        if (k[i] < 1) throw std::invalid_argument("mode indices must be positive");
        const double q = k[i] / geom.lengths[i];
        s += q * q;
    }
    return kPi * std::sqrt(s);
}

ResonanceParams resonance_gamma(const CavityGeometry& geom, ModeIndex r) {
    if (r.empty()) r.assign(geom.lengths.size(), 1);
    const double w = mode_frequency(geom, r);
    const double q1 = kPi * r[0] / geom.lengths[0];
    return {std::move(r), w, 0.5 * geom.epsilon * q1 * q1 / (w * w)};
}

Matrix resonant_generator(const ResonanceParams& p, BetaSign sign) {
    const Real x = sign_of(sign) * static_cast<Real>(p.rate());
    Matrix k = Matrix::Zero(2, 2);
    k(0, 1) = -kI * x;
    k(1, 0) = kI * x;
    return k;
}

ResonantFlow resonant_flow(const ResonanceParams& p, double t, BetaSign sign) {
    if (!(t >= 0.0)) throw std::domain_error("time must be non-negative");
    const Real x = static_cast<Real>(p.rate()) * static_cast<Real>(t);
    gaussian::BogoliubovMap map{Matrix::Constant(1, 1, std::cosh(x)),
                                Matrix::Constant(1, 1, kI * sign_of(sign) * std::sinh(x))};
    Matrix m = map.assembled();
    return {std::move(map), resonant_generator(p, sign), std::move(m)};
}

TruncatedFlow::TruncatedFlow(ResonanceParams params, int n_modes, BetaSign sign)
    : params_(std::move(params)), n_modes_(n_modes), sign_(sign) {
    if (n_modes < 1) throw std::invalid_argument("truncated flow needs at least one mode");
}

Matrix TruncatedFlow::generator() const {
    Matrix k = Matrix::Zero(2 * n_modes_, 2 * n_modes_);
    const Matrix kr = resonant_generator(params_, sign_);
    k(0, 0) = kr(0, 0);
    k(0, n_modes_) = kr(0, 1);
    k(n_modes_, 0) = kr(1, 0);
    k(n_modes_, n_modes_) = kr(1, 1);
    return k;
}

Matrix TruncatedFlow::at(double t) const {
    const Matrix mr = resonant_flow(params_, t, sign_).matrix;
    Matrix m = Matrix::Identity(2 * n_modes_, 2 * n_modes_);
    m(0, 0) = mr(0, 0);
    m(0, n_modes_) = mr(0, 1);
    m(n_modes_, 0) = mr(1, 0);
    m(n_modes_, n_modes_) = mr(1, 1);
    return m;
}

Matrix beam_splitter(int n_modes, int spectator) {
    if (spectator < 1 || spectator >= n_modes) throw std::invalid_argument("spectator must differ from the resonant mode");
    const Real h = 1.0L / std::sqrt(2.0L);
    Matrix b = Matrix::Identity(2 * n_modes, 2 * n_modes);
    for (int off : {0, n_modes}) {
        const int r = off, s = off + spectator;
        b(r, r) = h;
        b(r, s) = h;
        b(s, r) = h;
        b(s, s) = -h;
    }
    return b;
}

MixedEntropies mixed_subsystem_entropies(const ResonanceParams& p, double t, int spectator, int n_modes, BetaSign sign,
                                         EntropyRoute route) {
    if (spectator < 1 || spectator >= n_modes) throw std::invalid_argument("spectator must differ from the resonant mode");
    const TruncatedFlow flow(p, n_modes, sign);
    const Matrix w = flow.at(t);

    // G_E over the resonant mode and the spectator, then the beam splitter.
    const auto g = gaussian::apply_bogoliubov(w, gaussian::vacuum(n_modes));
    const auto g_e = gaussian::restrict(g, {{0, spectator}, std::nullopt});
    const auto g_a = gaussian::restrict(g_e, {{0}, beam_splitter(2, 1)});

    const bool use_covariance =
        route == EntropyRoute::covariance ||
        (route == EntropyRoute::automatic && std::abs(p.rate() * t) <= kCovarianceRouteLimit);
    if (use_covariance) {
        const auto omega = gaussian::standard_form(1);
        return {gaussian::renyi_entropy(g_a, omega), gaussian::entanglement_entropy(g_a, omega), g_a.matrix()};
    }
    const auto pair = gaussian::entropies_from_flow(w, {{0}, beam_splitter(n_modes, spectator)});
    return {pair.renyi, pair.entropy, g_a.matrix()};
}

double mixed_renyi_asymptote(const ResonanceParams& p, double t) { return -std::log(2.0) + p.rate() * t; }

double mixed_entropy_asymptote(const ResonanceParams& p, double t) {
    return 1.0 - 2.0 * std::log(2.0) + p.rate() * t;
}

std::vector<MixedSample> mixed_entropy_sweep(const ResonanceParams& p, const std::vector<double>& times,
                                             Execution exec) {
    return map_grid<MixedSample>(
        times.size(),
        [&](std::size_t i) {
            const double t = times[i];
            const auto e = mixed_subsystem_entropies(p, t);
            return MixedSample{t, e.renyi, e.entropy, mixed_entropy_asymptote(p, t)};
        },
        exec);
}

double entropy_rate_fit(const ResonanceParams& p, double x0, double x1, int samples) {
    if (!(p.rate() > 0.0)) throw std::invalid_argument("entropy rate fit needs a positive exponent");
    std::vector<double> ts, s;
    for (double x : linspace(x0, x1, samples)) {
        const double t = x / p.rate();
        ts.push_back(t);
        s.push_back(mixed_subsystem_entropies(p, t, 1, 4, BetaSign::plus, EntropyRoute::factored).entropy);
    }
    return fit_line(ts, s).slope;
}

std::vector<double> lyapunov_spectrum(const Matrix& generator) {
    Eigen::ComplexEigenSolver<Matrix> es(generator, false);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigenvalue solver failed on the generator");
    std::vector<double> out;
    for (Eigen::Index i = 0; i < generator.rows(); ++i) out.push_back(static_cast<double>(es.eigenvalues()(i).real()));
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

double mathieu_floquet_mu(double omega0, double drive_amplitude) {
    if (!(omega0 > 0.0)) throw std::invalid_argument("omega0 must be positive");
    if (!(drive_amplitude >= 0.0)) throw std::invalid_argument("drive amplitude must be non-negative");
    return drive_amplitude / (4.0 * omega0);
}

double mathieu_drive_amplitude(const CavityGeometry& geom, const ModeIndex& r) {
    geom.validate();
    const int r1 = r.empty() ? 1 : r[0];
    const double q1 = kPi * r1 / geom.lengths[0];
    return 2.0 * geom.epsilon * q1 * q1;
}

double fitted_growth_rate(const TruncatedFlow& flow, const Vector& l, double t0, double t1, int samples) {
    std::vector<double> ts = linspace(t0, t1, samples), y;
    for (double t : ts) y.push_back(static_cast<double>(std::log((flow.at(t).transpose() * l).norm())));
    return fit_line(ts, y).slope;
}

UnstablePair unstable_pair(const TruncatedFlow& flow) {
    Eigen::ComplexEigenSolver<Matrix> es(flow.generator().transpose());
    if (es.info() != Eigen::Success) throw std::runtime_error("eigenvalue solver failed on K^T");
    Eigen::Index hi = 0, lo = 0;
    for (Eigen::Index i = 1; i < es.eigenvalues().size(); ++i) {
        if (es.eigenvalues()(i).real() > es.eigenvalues()(hi).real()) hi = i;
        if (es.eigenvalues()(i).real() < es.eigenvalues()(lo).real()) lo = i;
    }
    return {es.eigenvectors().col(hi).normalized(), es.eigenvectors().col(lo).normalized()};
}

GenericSubsystem make_generic_subsystem(std::vector<Vector> theta, const TruncatedFlow& flow) {
    const Matrix t = stack(theta);
    check_darboux(t, flow.n_modes());
    const auto omega = gaussian::standard_form(flow.n_modes()).matrix;
    const Vector ls = unstable_pair(flow).stable;

    const Vector pairing = t.transpose() * omega * ls;
    const Matrix w = t.transpose() * omega * t;
    const Vector projected = t * w.partialPivLu().solve(pairing);

    GenericSubsystem out;
    out.theta = std::move(theta);
    out.satisfies_i = pairing.cwiseAbs().maxCoeff() > kGenericityThreshold;
    out.satisfies_ii = (ls - projected).norm() > kGenericityThreshold;
    return out;
}

GenericSubsystem subsystem_from_mixing(const Matrix& B, const std::vector<int>& modes, const TruncatedFlow& flow) {
    const int n = flow.n_modes();
    if (B.rows() != 2 * n || B.cols() != 2 * n) throw gaussian::DimensionMismatch("mixing does not match the flow");
    std::vector<Vector> theta;
    for (int m : modes) theta.push_back(B.row(m).transpose());
    for (int m : modes) theta.push_back(B.row(m + n).transpose());
    return make_generic_subsystem(std::move(theta), flow);
}

double subsystem_exponent(const GenericSubsystem& A, const TruncatedFlow& flow, double t_max, int samples) {
    if (!(t_max > 0.0)) throw std::invalid_argument("t_max must be positive");
    const Matrix theta = stack(A.theta);
    check_darboux(theta, flow.n_modes());
    const Real base = log_volume(theta);
    std::vector<double> ts = linspace(0.5 * t_max, t_max, samples), y;
    for (double t : ts) y.push_back(static_cast<double>(log_volume(flow.at(t).transpose() * theta) - base));
    return fit_line(ts, y).slope;
}

Matrix random_symplectic(int n_modes, std::mt19937_64& rng, double max_squeeze) {
    const int n = n_modes;
    auto passive = [&](const Matrix& u) {
        Matrix p = Matrix::Zero(2 * n, 2 * n);
        p.topLeftCorner(n, n) = u;
        p.bottomRightCorner(n, n) = u.conjugate();
        return p;
    };
    std::uniform_real_distribution<double> uni(0.0, max_squeeze);
    Matrix sq = Matrix::Zero(2 * n, 2 * n);
    for (int k = 0; k < n; ++k) {
        const Real r = uni(rng);
        sq(k, k) = sq(k + n, k + n) = std::cosh(r);
        sq(k, k + n) = sq(k + n, k) = std::sinh(r);
    }
    const Matrix u1 = haar_unitary(n, rng);
    const Matrix u2 = haar_unitary(n, rng);
    return passive(u1) * sq * passive(u2);
}

std::vector<SubsystemTrial> random_subsystem_trials(const TruncatedFlow& flow, int trials, std::uint64_t seed,
                                                    double t_max, Execution exec) {
    const int n = flow.n_modes();
    if (n < 2) throw std::invalid_argument("random subsystems need a spectator mode");
    return map_grid<SubsystemTrial>(
        static_cast<std::size_t>(std::max(trials, 0)),
        [&](std::size_t i) {
            const std::uint64_t s = seed + i;
            std::mt19937_64 rng(s);
            const Matrix b2 = random_symplectic(2, rng);
            // embed the two-mode map on slots 0 and 1
            Matrix b = Matrix::Identity(2 * n, 2 * n);
            const int idx[4] = {0, 1, n, n + 1};
            for (int r = 0; r < 4; ++r)
                for (int c = 0; c < 4; ++c) b(idx[r], idx[c]) = b2(r, c);
            const auto sub = subsystem_from_mixing(b, {0}, flow);
            return SubsystemTrial{s, sub.satisfies_i && sub.satisfies_ii, subsystem_exponent(sub, flow, t_max)};
        },
        exec);
}

}  // namespace casimir::dce_nd
