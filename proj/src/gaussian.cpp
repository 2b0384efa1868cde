#include "casimir/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

namespace casimir::gaussian {

namespace {

constexpr Complex kI{0.0L, 1.0L};

Real max_abs(const Matrix& m) { return m.size() == 0 ? 0.0L : m.cwiseAbs().maxCoeff(); }

void require_square_even(const Matrix& m, const char* what) {
    if (m.rows() != m.cols() || m.rows() == 0 || m.rows() % 2 != 0)
        throw DimensionMismatch(std::string(what) + " must be a non-empty 2N x 2N matrix");
}

// log det via partial-pivot LU, keeping the phase.
Complex log_determinant(const Matrix& m) {
    Eigen::PartialPivLU<Matrix> lu(m);
    const Matrix& f = lu.matrixLU();
    Complex acc = std::log(Complex(lu.permutationP().determinant(), 0.0L));
    for (Eigen::Index i = 0; i < f.rows(); ++i) acc += std::log(f(i, i));
    return acc;
}

// Relative error to expect in a determinant whose entries carry rounding at
// machine precision: Hadamard's bound on the products over the result.
template <typename M>
Real determinant_roundoff(const M& m, Real log_abs_det) {
    Real log_hadamard = 0.0L;
    for (Eigen::Index i = 0; i < m.rows(); ++i) log_hadamard += std::log(m.row(i).norm());
    return std::numeric_limits<Real>::epsilon() * static_cast<Real>(m.rows()) * std::exp(log_hadamard - log_abs_det);
}

void require_resolved(Real roundoff) {
    if (roundoff > kResolvableRelativeError)
        throw PrecisionLoss("subsystem determinant lost to cancellation (relative error ~" +
                            std::to_string(static_cast<double>(roundoff)) + ")");
}

Real wrap_phase(Real phi) {
    const Real two_pi = 2.0L * std::numbers::pi_v<Real>;
    phi = std::fmod(phi, two_pi);
    if (phi > std::numbers::pi_v<Real>) phi -= two_pi;
    if (phi < -std::numbers::pi_v<Real>) phi += two_pi;
    return phi;
}

std::vector<Real> pair_up(std::vector<Real> magnitudes) {
    std::sort(magnitudes.begin(), magnitudes.end(), std::greater<>());
    std::vector<Real> nu;
    nu.reserve(magnitudes.size() / 2);
    for (std::size_t k = 0; k + 1 < magnitudes.size(); k += 2) {
        Real v = std::sqrt(magnitudes[k] * magnitudes[k + 1]);
        if (v < 1.0L - kPhysicalityTolerance)
            throw UnphysicalState("symplectic eigenvalue " + std::to_string(static_cast<double>(v)) + " below 1");
        nu.push_back(std::max(v, 1.0L));
    }
    return nu;
}

Real total_entropy(const std::vector<Real>& nu) {
    Real s = 0.0L;
    for (Real v : nu) s += entropy_term(v);
    return s;
}

std::vector<Eigen::Index> slots(const Subsystem& A, int n_modes) {
    std::vector<Eigen::Index> idx;
    std::vector<bool> seen(static_cast<std::size_t>(n_modes), false);
    for (int i : A.mode_indices) {
        if (i < 0 || i >= n_modes) throw std::out_of_range("subsystem mode index " + std::to_string(i) + " out of range");
        if (seen[static_cast<std::size_t>(i)]) throw std::invalid_argument("subsystem mode indices must be distinct");
        seen[static_cast<std::size_t>(i)] = true;
    }
    if (A.mode_indices.empty()) throw std::invalid_argument("subsystem must select at least one mode");
    for (int i : A.mode_indices) idx.push_back(i);
    for (int i : A.mode_indices) idx.push_back(i + n_modes);
    return idx;
}

const Matrix* checked_mixing(const Subsystem& A, int n_modes) {
    if (!A.mixing) return nullptr;
    const Matrix& B = *A.mixing;
    if (B.rows() != 2 * n_modes || B.cols() != 2 * n_modes)
        throw DimensionMismatch("subsystem mixing has the wrong dimension");
    if (!is_symplectic(B, standard_form(n_modes)))
        throw std::invalid_argument("subsystem mixing is not symplectic");
    return &B;
}

}  // namespace

SymplecticForm standard_form(int n_modes) {
    if (n_modes < 1) throw std::invalid_argument("standard_form: need at least one mode");
    const Eigen::Index n = n_modes;
    Matrix omega = Matrix::Zero(2 * n, 2 * n);
    for (Eigen::Index i = 0; i < n; ++i) {
        omega(i, n + i) = -kI;
        omega(n + i, i) = kI;
    }
    return {n_modes, omega};
}

CovarianceMatrix::CovarianceMatrix(Matrix matrix) : matrix_(std::move(matrix)) {
    require_square_even(matrix_, "covariance matrix");
    const Real scale = std::max(1.0L, max_abs(matrix_));
    if (max_abs(matrix_ - matrix_.transpose()) > 1e-12L * scale)
        throw std::invalid_argument("covariance matrix must be symmetric");
}

CovarianceMatrix vacuum(int n_modes) {
    if (n_modes < 1) throw std::invalid_argument("vacuum: need at least one mode");
    const Eigen::Index n = n_modes;
    Matrix g = Matrix::Zero(2 * n, 2 * n);
    g.topRightCorner(n, n).setIdentity();
    g.bottomLeftCorner(n, n).setIdentity();
    return CovarianceMatrix(g);
}

BogoliubovMap BogoliubovMap::identity(int n_modes) {
    return {Matrix::Identity(n_modes, n_modes), Matrix::Zero(n_modes, n_modes)};
}

Matrix BogoliubovMap::assembled() const {
    const Eigen::Index n = alpha.rows();
    if (alpha.cols() != n || beta.rows() != n || beta.cols() != n)
        throw DimensionMismatch("alpha and beta must be square and of equal size");
    Matrix m(2 * n, 2 * n);
    m.topLeftCorner(n, n) = alpha.transpose();
    m.topRightCorner(n, n) = beta.adjoint();
    m.bottomLeftCorner(n, n) = beta.transpose();
    m.bottomRightCorner(n, n) = alpha.adjoint();
    return m;
}

bool is_symplectic(const Matrix& M, const SymplecticForm& omega, Real tol) {
    if (M.rows() != omega.matrix.rows() || M.cols() != omega.matrix.cols()) return false;
    return max_abs(M * omega.matrix * M.transpose() - omega.matrix) < tol;
}

CovarianceMatrix apply_bogoliubov(const Matrix& M, const CovarianceMatrix& G, Real tol) {
    if (M.rows() != G.matrix().rows() || M.cols() != G.matrix().cols())
        throw DimensionMismatch("Bogoliubov map and covariance matrix dimensions differ");
    const auto omega = standard_form(G.n_modes());
    // scale-aware: entries of M M^T grow like |M|^2
    const Real scale = std::max(1.0L, max_abs(M) * max_abs(M));
    if (!is_symplectic(M, omega, tol * scale)) throw std::invalid_argument("Bogoliubov map is not symplectic");
    Matrix g = M * G.matrix() * M.transpose();
    g = 0.5L * (g + g.transpose()).eval();
    return CovarianceMatrix(std::move(g));
}

CovarianceMatrix apply_bogoliubov(const BogoliubovMap& map, const CovarianceMatrix& G) {
    return apply_bogoliubov(map.assembled(), G);
}

CovarianceMatrix restrict(const CovarianceMatrix& G, const Subsystem& A) {
    const int n = G.n_modes();
    const auto idx = slots(A, n);
    const Matrix* B = checked_mixing(A, n);
    const Matrix full = B ? Matrix(*B * G.matrix() * B->transpose()) : G.matrix();
    const auto k = static_cast<Eigen::Index>(idx.size());
    Matrix out(k, k);
    for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = 0; j < k; ++j) out(i, j) = full(idx[i], idx[j]);
    out = 0.5L * (out + out.transpose()).eval();
    return CovarianceMatrix(std::move(out));
}

ComplexStructure complex_structure(const CovarianceMatrix& G_A, const SymplecticForm& omega_A) {
    if (G_A.matrix().rows() != omega_A.matrix.rows()) throw DimensionMismatch("G_A and Omega_A dimensions differ");
    return {-G_A.matrix() * omega_A.inverse()};
}

ComplexStructure pure_complex_structure(const CovarianceMatrix& G, const SymplecticForm& omega) {
    if (G.matrix().rows() != omega.matrix.rows()) throw DimensionMismatch("G and Omega dimensions differ");
    return {G.matrix() * omega.inverse()};
}

std::vector<Complex> complex_structure_spectrum(const CovarianceMatrix& G_A, const SymplecticForm& omega_A) {
    const Matrix iJ = kI * complex_structure(G_A, omega_A).matrix;
    Eigen::ComplexEigenSolver<Matrix> es(iJ, false);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigenvalue solver failed on i J_A");
    std::vector<Complex> out(static_cast<std::size_t>(iJ.rows()));
    for (Eigen::Index i = 0; i < iJ.rows(); ++i) out[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
    return out;
}

std::vector<Real> symplectic_eigenvalues(const CovarianceMatrix& G_A, const SymplecticForm& omega_A) {
    require_resolved(determinant_roundoff(G_A.matrix(), log_determinant(G_A.matrix()).real()));
    std::vector<Real> mags;
    for (const auto& z : complex_structure_spectrum(G_A, omega_A)) mags.push_back(std::abs(z));
    return pair_up(std::move(mags));
}

double renyi_entropy(const CovarianceMatrix& G_A, const SymplecticForm& omega_A) {
    if (G_A.matrix().rows() != omega_A.matrix.rows()) throw DimensionMismatch("G_A and Omega_A dimensions differ");
    const Complex log_det = log_determinant(G_A.matrix());
    require_resolved(determinant_roundoff(G_A.matrix(), log_det.real()));
    const Complex log_ratio = log_det - log_determinant(omega_A.matrix);
    // det G_A / det Omega_A must be a positive real number
    if (std::abs(wrap_phase(log_ratio.imag())) > 1e-6L)
        throw UnphysicalState("det G_A / det Omega_A is not a positive real number");
    const Real r = 0.5L * log_ratio.real();
    if (r < -0.5L * kPhysicalityTolerance * G_A.n_modes())
        throw UnphysicalState("negative Renyi entropy: state violates the uncertainty bound");
    return static_cast<double>(std::max(r, 0.0L));
}

double entanglement_entropy(const CovarianceMatrix& G_A, const SymplecticForm& omega_A) {
    return static_cast<double>(total_entropy(symplectic_eigenvalues(G_A, omega_A)));
}

Real entropy_term(Real nu) {
    const Real a = 0.5L * (nu + 1.0L);
    const Real b = 0.5L * (nu - 1.0L);
    if (b <= 0.0L) return 0.0L;
    // a log a - b log b with a = b + 1
    return std::log(a) + b * std::log1p(1.0L / b);
}

double entropy_from_renyi_single_mode(double renyi) {
    if (renyi < 0.0) throw std::domain_error("Renyi entropy must be non-negative");
    return static_cast<double>(entropy_term(std::exp(static_cast<Real>(renyi))));
}

Real purity_defect(const CovarianceMatrix& G) {
    const auto omega = standard_form(G.n_modes());
    const Matrix J = pure_complex_structure(G, omega).matrix;
    const Matrix id = Matrix::Identity(J.rows(), J.cols());
    // J^2 = -1 arises by cancellation between entries of size |J|^2
    const Real scale = std::max(Real(1), max_abs(J) * max_abs(J));
    return max_abs(J * J + id) / scale;
}

Matrix quadrature_map(int n_modes) {
    const Eigen::Index n = n_modes;
    const Real s = 1.0L / std::sqrt(2.0L);
    Matrix u = Matrix::Zero(2 * n, 2 * n);
    for (Eigen::Index i = 0; i < n; ++i) {
        u(i, i) = s;
        u(i, n + i) = kI * s;
        u(n + i, i) = s;
        u(n + i, n + i) = -kI * s;
    }
    return u;
}

RealMatrix subsystem_quadrature_rows(const Matrix& W, const Subsystem& A) {
    require_square_even(W, "flow");
    const int n = static_cast<int>(W.rows() / 2);
    const auto idx = slots(A, n);
    const Matrix* B = checked_mixing(A, n);
    const Matrix mixed = B ? Matrix(*B * W) : W;
    const auto k = static_cast<Eigen::Index>(idx.size());
    Matrix rows(k, mixed.cols());
    for (Eigen::Index i = 0; i < k; ++i) rows.row(i) = mixed.row(idx[i]);
    const int n_a = static_cast<int>(k / 2);
    const Matrix y = quadrature_map(n_a).inverse() * rows * quadrature_map(n);
    const Real scale = std::max(1.0L, max_abs(y));
    if (y.imag().cwiseAbs().maxCoeff() > 1e-9L * scale)
        throw std::invalid_argument("flow does not preserve the real structure of the quadratures");
    return y.real();
}

EntropyPair entropies_from_flow(const Matrix& W, const Subsystem& A) {
    const RealMatrix y = subsystem_quadrature_rows(W, A);
    const Eigen::Index k = y.rows();
    Eigen::HouseholderQR<RealMatrix> qr(y.transpose());
    const RealMatrix t = qr.matrixQR().topRows(k).template triangularView<Eigen::Upper>();

    Real log_volume = 0.0L;
    for (Eigen::Index i = 0; i < k; ++i) log_volume += std::log(std::abs(t(i, i)));
    require_resolved(determinant_roundoff(y, log_volume));

    // i T Omega^{-1} T^T is Hermitian and shares its spectrum with i Omega^{-1} G_A
    const Eigen::Index n_a = k / 2;
    RealMatrix omega_inv = RealMatrix::Zero(k, k);
    omega_inv.topRightCorner(n_a, n_a) = -RealMatrix::Identity(n_a, n_a);
    omega_inv.bottomLeftCorner(n_a, n_a) = RealMatrix::Identity(n_a, n_a);
    const Matrix h = kI * (t * omega_inv * t.transpose()).template cast<Complex>();
    Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    std::vector<Real> mags;
    for (Eigen::Index i = 0; i < k; ++i) mags.push_back(std::abs(es.eigenvalues()(i)));

    if (log_volume < -kPhysicalityTolerance * n_a) throw UnphysicalState("subsystem volume below the vacuum volume");
    return {static_cast<double>(std::max(log_volume, 0.0L)), static_cast<double>(total_entropy(pair_up(mags)))};
}

}  // namespace casimir::gaussian
