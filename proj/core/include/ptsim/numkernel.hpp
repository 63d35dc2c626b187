#pragma once

// Dense complex linear-algebra primitives shared by every other module.
//
// Matrices are Eigen::MatrixXcd values; all functions here are pure and
// thread-safe. Tolerances are passed explicitly rather than read from any
// global state.

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace ptsim {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};

/// Numerical tolerance policy. All fields must be strictly positive.
struct Tolerances {
  double eq_tol = 1e-10;       ///< residual equalities
  double real_tol = 1e-9;      ///< "eigenvalue is real"
  double defect_cond = 1e12;   ///< eigenvector-matrix condition threshold
  double psd_tol = 1e-12;      ///< eigenvalue nonnegativity

  /// Throws InvalidArgument unless every field is finite and > 0.
  void validate() const;
};

struct EigenDecomposition {
  ComplexVector eigenvalues;
  ComplexMatrix eigenvectors;  // unit-norm columns
  double condition_estimate = 0.0;
  bool defective = false;
};

// --- small helpers -------------------------------------------------------

double frobenius(const ComplexMatrix& a);
bool all_finite(const ComplexMatrix& a);
void require_square(const ComplexMatrix& a, const char* what);
void require_finite(const ComplexMatrix& a, const char* what);

/// ‖A − A†‖_F.
double hermiticity_residual(const ComplexMatrix& a);
/// (A + A†)/2.
ComplexMatrix hermitian_part(const ComplexMatrix& a);
bool is_hermitian(const ComplexMatrix& a, double tol);

/// |Im λ| ≤ real_tol·max(1,|λ|).
bool is_real_eigenvalue(Complex lambda, const Tolerances& tol);

/// tol·max(1, scale): the relative form used for every residual test.
inline double scaled(double tol, double scale) { return tol * (scale > 1.0 ? scale : 1.0); }

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix identity(Eigen::Index n);

/// 2-norm condition number, +inf for singular input.
double condition_number(const ComplexMatrix& a);

/// Columns of `m` as separate vectors, and the inverse operation.
std::vector<ComplexVector> columns_of(const ComplexMatrix& m);
ComplexMatrix from_columns(const std::vector<ComplexVector>& cols, Eigen::Index rows);

/// Orthogonal projector Σ v v† onto the span of an orthonormal list.
ComplexMatrix projector_onto(const std::vector<ComplexVector>& orthonormal);

// --- operations ----------------------------------------------------------

/// Eigendecomposition with defectiveness detection. Eigenpairs are sorted
/// by (real, imag). Hermitian input takes the self-adjoint path.
EigenDecomposition eig(const ComplexMatrix& a, const Tolerances& tol = {});

/// e^A. Eigen-route when the eigenframe is well conditioned, otherwise
/// degree-13 Padé scaling-and-squaring.
ComplexMatrix matrix_exp(const ComplexMatrix& a, const Tolerances& tol = {});

/// Principal square root of a Hermitian PSD matrix. Eigenvalues in
/// [−psd_tol, 0) are clamped to zero.
ComplexMatrix principal_sqrt_psd(const ComplexMatrix& a, const Tolerances& tol = {});

/// A^{-1/2} for Hermitian positive-definite A, in the same eigenframe that
/// principal_sqrt_psd uses.
ComplexMatrix inverse_sqrt_pd(const ComplexMatrix& a, const Tolerances& tol = {});

/// Smallest eigenvalue of a Hermitian matrix (Hermitian part is used).
double min_hermitian_eigenvalue(const ComplexMatrix& a);

/// Real-linear basis of Hermitian X solving H†X = XH, Frobenius-normalized.
std::vector<ComplexMatrix> sylvester_hermitian_nullspace(const ComplexMatrix& h,
                                                         const Tolerances& tol = {});

/// Gram–Schmidt on `basis` followed by pivoted completion with standard
/// basis vectors to an orthonormal basis of C^dim. The first |basis|
/// outputs span span(basis).
std::vector<ComplexVector> orthonormal_extension(const std::vector<ComplexVector>& basis,
                                                 Eigen::Index dim);

/// Orthonormal basis of span(vectors); throws DependentInput when the input
/// is linearly dependent.
std::vector<ComplexVector> orthonormalize(const std::vector<ComplexVector>& vectors);

}  // namespace ptsim
