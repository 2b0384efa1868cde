#pragma once

// Centered bosonic Gaussian states in the complex basis
// xi = (a_1, ..., a_N, a_1^dagger, ..., a_N^dagger).
//
// Matrices are stored in extended precision. Under an unstable flow with
// exponent x the covariance entries grow like e^{2x}, and a subsystem
// determinant is the difference of products of size e^{4x} that cancel down to
// e^{2x}.

#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace casimir::gaussian {

using Real = long double;
using Complex = std::complex<Real>;
using Matrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
using RealMatrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;

/// Symplectic eigenvalues may dip this far below 1 before a state is rejected.
inline constexpr Real kPhysicalityTolerance = 1e-9L;

/// Default tolerance for symplecticity checks.
inline constexpr Real kSymplecticTolerance = 1e-9L;

class UnphysicalState : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Estimated relative error in a subsystem determinant above which entropies
/// are refused rather than returned. The estimate is normwise and overshoots
/// for graded rows; half of it bounds the error in R_A.
inline constexpr Real kResolvableRelativeError = 1e-4L;

/// Raised when the entries of G_A (or the flow rows) are too large for the
/// subsystem determinant to survive cancellation. A pure mode squeezed by r
/// has entries of order e^{2r} but determinant 1.
class PrecisionLoss : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Omega = -i [[0, 1], [-1, 0]] in N-mode blocks. Omega^2 = +1, so it is its
/// own inverse.
struct SymplecticForm {
    int n_modes;
    Matrix matrix;

    Matrix inverse() const { return matrix; }
};

SymplecticForm standard_form(int n_modes);

class CovarianceMatrix {
  public:
    /// Checks the shape is 2N x 2N and the matrix symmetric.
    explicit CovarianceMatrix(Matrix matrix);

    int n_modes() const { return static_cast<int>(matrix_.rows() / 2); }
    const Matrix& matrix() const { return matrix_; }
    Complex operator()(Eigen::Index i, Eigen::Index j) const { return matrix_(i, j); }

  private:
    Matrix matrix_;
};

/// G_0 = [[0, 1], [1, 0]].
CovarianceMatrix vacuum(int n_modes);

/// Bogoliubov coefficients alpha_{nk}, beta_{nk} and the symplectic matrix
/// M = [[alpha^T, beta^dagger], [beta^T, alpha^dagger]] acting on xi.
struct BogoliubovMap {
    Matrix alpha;
    Matrix beta;

    static BogoliubovMap identity(int n_modes);
    int n_modes() const { return static_cast<int>(alpha.rows()); }
    Matrix assembled() const;
};

struct ComplexStructure {
    Matrix matrix;
};

/// Selected modes (0-based) after an optional symplectic change of basis B.
struct Subsystem {
    std::vector<int> mode_indices;
    std::optional<Matrix> mixing;
};

bool is_symplectic(const Matrix& M, const SymplecticForm& omega, Real tol = kSymplecticTolerance);

/// G -> M G M^T.
CovarianceMatrix apply_bogoliubov(const Matrix& M, const CovarianceMatrix& G, Real tol = kSymplecticTolerance);
CovarianceMatrix apply_bogoliubov(const BogoliubovMap& map, const CovarianceMatrix& G);

/// Rows and columns of B G B^T belonging to the selected modes, ordered as
/// (a_A..., a_A^dagger...).
CovarianceMatrix restrict(const CovarianceMatrix& G, const Subsystem& A);

/// J_A = -G_A Omega_A^{-1}.
ComplexStructure complex_structure(const CovarianceMatrix& G_A, const SymplecticForm& omega_A);

/// J = G Omega^{-1}, the convention used for the full pure state.
ComplexStructure pure_complex_structure(const CovarianceMatrix& G, const SymplecticForm& omega);

/// Eigenvalues of i J_A, unsorted.
std::vector<Complex> complex_structure_spectrum(const CovarianceMatrix& G_A, const SymplecticForm& omega_A);

/// nu_1 >= ... >= nu_{N_A} >= 1 from the +-nu pairs of i J_A. Throws
/// UnphysicalState below 1 - kPhysicalityTolerance and clamps to 1 above it;
/// throws PrecisionLoss when G_A cannot resolve its own determinant.
std::vector<Real> symplectic_eigenvalues(const CovarianceMatrix& G_A, const SymplecticForm& omega_A);

/// R_A = 1/2 log(det G_A / det Omega_A), from LU factors with the phase tracked.
double renyi_entropy(const CovarianceMatrix& G_A, const SymplecticForm& omega_A);

/// S_A = sum_k s(nu_k).
double entanglement_entropy(const CovarianceMatrix& G_A, const SymplecticForm& omega_A);

/// s(nu) = ((nu+1)/2) log((nu+1)/2) - ((nu-1)/2) log((nu-1)/2), s(1) = 0.
Real entropy_term(Real nu);

/// S = s(e^R), valid for one mode.
double entropy_from_renyi_single_mode(double renyi);

/// max |(G Omega^{-1})^2 + 1| / max(1, max |G Omega^{-1}|^2); zero for a pure state.
Real purity_defect(const CovarianceMatrix& G);

// --- factored route -------------------------------------------------------
//
// A state reached from the vacuum by a flow W has G = W G_0 W^T. Restricting
// the rows of W instead of G, and measuring the subsystem as the volume of
// those rows in quadrature coordinates, avoids forming the e^{2x} entries.

/// xi = U x with x = (q_1..q_N, p_1..p_N) and a = (q + i p)/sqrt(2).
Matrix quadrature_map(int n_modes);

/// Real quadrature rows (2 N_A x 2N) of the subsystem under the flow W from
/// the vacuum.
RealMatrix subsystem_quadrature_rows(const Matrix& W, const Subsystem& A);

struct EntropyPair {
    double renyi;
    double entropy;
};

/// R_A and S_A of the vacuum evolved by W, through a QR factorisation of the
/// subsystem rows.
EntropyPair entropies_from_flow(const Matrix& W, const Subsystem& A);

}  // namespace casimir::gaussian
