#include "ptsim/numkernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

#include "ptsim/errors.hpp"

namespace ptsim {

namespace {

// Eigenvalues closer than this (relative) are examined together for a
// rank-deficient eigenvector block.
constexpr double kClusterTol = 1e-4;

// Eigenframes better conditioned than this use the spectral route in
// matrix_exp; worse ones go to Padé scaling-and-squaring.
constexpr double kExpEigenCond = 1e8;

void check_positive(double v, const char* name) {
  if (!std::isfinite(v) || v <= 0.0) {
    fail(ErrorCode::InvalidArgument, std::string("tolerance ") + name + " must be finite and > 0");
  }
}

ComplexMatrix spectral_apply(const ComplexMatrix& vecs, const ComplexVector& vals) {
  return vecs * vals.asDiagonal() * vecs.adjoint();
}

Eigen::SelfAdjointEigenSolver<ComplexMatrix> hermitian_solver(const ComplexMatrix& a) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(a));
  if (es.info() != Eigen::Success) {
    fail(ErrorCode::NumericalFailure, "self-adjoint eigensolver did not converge");
  }
  return es;
}

// True when some cluster of (numerically) coincident eigenvalues has an
// eigenvector block whose Gram matrix is singular at psd_tol.
bool cluster_rank_deficient(const ComplexVector& vals, const ComplexMatrix& vecs,
                            const Tolerances& tol) {
  const Eigen::Index n = vals.size();
  std::vector<int> label(static_cast<std::size_t>(n), -1);
  int next = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (label[i] >= 0) continue;
    label[i] = next;
    // single-linkage grow
    bool grew = true;
    while (grew) {
      grew = false;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (label[j] >= 0) continue;
        for (Eigen::Index k = 0; k < n; ++k) {
          if (label[k] != next) continue;
          if (std::abs(vals(j) - vals(k)) <= scaled(kClusterTol, std::abs(vals(k)))) {
            label[j] = next;
            grew = true;
            break;
          }
        }
      }
    }
    ++next;
  }
  for (int c = 0; c < next; ++c) {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (label[i] == c) idx.push_back(i);
    }
    if (idx.size() < 2) continue;
    ComplexMatrix block(vecs.rows(), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t k = 0; k < idx.size(); ++k) block.col(static_cast<Eigen::Index>(k)) = vecs.col(idx[k]);
    const ComplexMatrix gram = block.adjoint() * block;
    if (min_hermitian_eigenvalue(gram) < tol.psd_tol) return true;
  }
  return false;
}

}  // namespace

void Tolerances::validate() const {
  check_positive(eq_tol, "eq_tol");
  check_positive(real_tol, "real_tol");
  check_positive(defect_cond, "defect_cond");
  check_positive(psd_tol, "psd_tol");
}

double frobenius(const ComplexMatrix& a) { return a.norm(); }

bool all_finite(const ComplexMatrix& a) {
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag())) return false;
    }
  }
  return true;
}

void require_square(const ComplexMatrix& a, const char* what) {
  if (a.rows() != a.cols()) {
    fail(ErrorCode::NonSquare, std::string(what) + " is " + std::to_string(a.rows()) + "x" +
                                   std::to_string(a.cols()));
  }
}

void require_finite(const ComplexMatrix& a, const char* what) {
  if (!all_finite(a)) fail(ErrorCode::InvalidArgument, std::string(what) + " has non-finite entries");
}

double hermiticity_residual(const ComplexMatrix& a) { return (a - a.adjoint()).norm(); }

ComplexMatrix hermitian_part(const ComplexMatrix& a) { return 0.5 * (a + a.adjoint()); }

bool is_hermitian(const ComplexMatrix& a, double tol) {
  return a.rows() == a.cols() && hermiticity_residual(a) <= scaled(tol, frobenius(a));
}

bool is_real_eigenvalue(Complex lambda, const Tolerances& tol) {
  return std::abs(lambda.imag()) <= scaled(tol.real_tol, std::abs(lambda));
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix identity(Eigen::Index n) { return ComplexMatrix::Identity(n, n); }

double condition_number(const ComplexMatrix& a) {
  if (a.size() == 0) return 1.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  const auto& sv = svd.singularValues();
  const double smin = sv(sv.size() - 1);
  if (smin <= 0.0) return std::numeric_limits<double>::infinity();
  return sv(0) / smin;
}

std::vector<ComplexVector> columns_of(const ComplexMatrix& m) {
  std::vector<ComplexVector> out;
  out.reserve(static_cast<std::size_t>(m.cols()));
  for (Eigen::Index j = 0; j < m.cols(); ++j) out.emplace_back(m.col(j));
  return out;
}

ComplexMatrix from_columns(const std::vector<ComplexVector>& cols, Eigen::Index rows) {
  ComplexMatrix m(rows, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) fail(ErrorCode::DimensionMismatch, "column length mismatch");
    m.col(static_cast<Eigen::Index>(j)) = cols[j];
  }
  return m;
}

ComplexMatrix projector_onto(const std::vector<ComplexVector>& orthonormal) {
  if (orthonormal.empty()) return {};
  const Eigen::Index d = orthonormal.front().size();
  ComplexMatrix p = ComplexMatrix::Zero(d, d);
  for (const auto& v : orthonormal) p += v * v.adjoint();
  return p;
}

double min_hermitian_eigenvalue(const ComplexMatrix& a) {
  require_square(a, "matrix");
  if (a.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(a), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) fail(ErrorCode::NumericalFailure, "self-adjoint eigensolver failed");
  return es.eigenvalues()(0);
}

EigenDecomposition eig(const ComplexMatrix& a, const Tolerances& tol) {
  tol.validate();
  require_square(a, "eig input");
  require_finite(a, "eig input");
  EigenDecomposition out;
  const Eigen::Index n = a.rows();
  if (n == 0) {
    out.condition_estimate = 1.0;
    return out;
  }
  const double scale = frobenius(a);

  if (hermiticity_residual(a) <= scaled(tol.eq_tol, scale)) {
    auto es = hermitian_solver(a);
    out.eigenvalues = es.eigenvalues().cast<Complex>();
    out.eigenvectors = es.eigenvectors();
    out.condition_estimate = condition_number(out.eigenvectors);
    return out;
  }

  Eigen::ComplexEigenSolver<ComplexMatrix> es(a, true);
  if (es.info() != Eigen::Success) fail(ErrorCode::NumericalFailure, "complex eigensolver did not converge");

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  const auto& raw_vals = es.eigenvalues();
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
    if (raw_vals(x).real() != raw_vals(y).real()) return raw_vals(x).real() < raw_vals(y).real();
    return raw_vals(x).imag() < raw_vals(y).imag();
  });

  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  bool zero_column = false;
  for (Eigen::Index k = 0; k < n; ++k) {
    out.eigenvalues(k) = raw_vals(order[k]);
    ComplexVector v = es.eigenvectors().col(order[k]);
    const double nv = v.norm();
    if (nv == 0.0 || !std::isfinite(nv)) {
      zero_column = true;
    } else {
      v /= nv;
    }
    out.eigenvectors.col(k) = v;
  }

  out.condition_estimate = zero_column ? std::numeric_limits<double>::infinity()
                                       : condition_number(out.eigenvectors);
  out.defective = zero_column || !std::isfinite(out.condition_estimate) ||
                  out.condition_estimate > tol.defect_cond ||
                  cluster_rank_deficient(out.eigenvalues, out.eigenvectors, tol);

  if (!out.defective) {
    const double res =
        (a * out.eigenvectors - out.eigenvectors * out.eigenvalues.asDiagonal()).norm();
    if (res > scaled(tol.eq_tol, scale)) {
      fail(ErrorCode::NumericalFailure, "eigenpair residual " + std::to_string(res) + " exceeds tolerance");
    }
  }
  return out;
}

ComplexMatrix matrix_exp(const ComplexMatrix& a, const Tolerances& tol) {
  tol.validate();
  require_square(a, "matrix_exp input");
  require_finite(a, "matrix_exp input");
  const Eigen::Index n = a.rows();
  if (n == 0) return a;
  const double scale = frobenius(a);

  if (hermiticity_residual(a) <= scaled(tol.eq_tol, scale) * 1e-2) {
    auto es = hermitian_solver(a);
    ComplexVector ev = es.eigenvalues().cast<Complex>().array().exp();
    return spectral_apply(es.eigenvectors(), ev);
  }
  // skew-Hermitian A = iB with B = -iA Hermitian: the unitary-evolution case
  if ((a + a.adjoint()).norm() <= scaled(tol.eq_tol, scale) * 1e-2) {
    auto es = hermitian_solver(Complex(0.0, -1.0) * a);
    ComplexVector ev = (kI * es.eigenvalues().cast<Complex>()).array().exp();
    return spectral_apply(es.eigenvectors(), ev);
  }

  try {
    const auto d = eig(a, tol);
    if (!d.defective && d.condition_estimate <= kExpEigenCond) {
      Eigen::PartialPivLU<ComplexMatrix> lu(d.eigenvectors);
      const ComplexVector ev = d.eigenvalues.array().exp();
      return d.eigenvectors * ev.asDiagonal() * lu.inverse();
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NumericalFailure) throw;
  }
  return a.exp();
}

ComplexMatrix principal_sqrt_psd(const ComplexMatrix& a, const Tolerances& tol) {
  tol.validate();
  require_square(a, "sqrt input");
  require_finite(a, "sqrt input");
  if (a.size() == 0) return a;
  if (hermiticity_residual(a) > scaled(tol.eq_tol, frobenius(a))) {
    fail(ErrorCode::NotHermitian, "principal_sqrt_psd needs a Hermitian matrix");
  }
  auto es = hermitian_solver(a);
  Eigen::VectorXd lam = es.eigenvalues();
  const double top = lam.cwiseAbs().maxCoeff();
  if (lam(0) < -scaled(tol.psd_tol, top)) {
    fail(ErrorCode::NotPSD, "eigenvalue " + std::to_string(lam(0)) + " is negative");
  }
  ComplexVector root = lam.cwiseMax(0.0).cwiseSqrt().cast<Complex>();
  return hermitian_part(spectral_apply(es.eigenvectors(), root));
}

ComplexMatrix inverse_sqrt_pd(const ComplexMatrix& a, const Tolerances& tol) {
  tol.validate();
  require_square(a, "inverse sqrt input");
  require_finite(a, "inverse sqrt input");
  if (a.size() == 0) return a;
  if (hermiticity_residual(a) > scaled(tol.eq_tol, frobenius(a))) {
    fail(ErrorCode::NotHermitian, "inverse_sqrt_pd needs a Hermitian matrix");
  }
  auto es = hermitian_solver(a);
  Eigen::VectorXd lam = es.eigenvalues();
  if (lam(0) <= scaled(tol.psd_tol, lam.cwiseAbs().maxCoeff())) {
    fail(ErrorCode::NotPositiveDefinite, "smallest eigenvalue " + std::to_string(lam(0)));
  }
  ComplexVector root = lam.cwiseSqrt().cwiseInverse().cast<Complex>();
  return hermitian_part(spectral_apply(es.eigenvectors(), root));
}

std::vector<ComplexMatrix> sylvester_hermitian_nullspace(const ComplexMatrix& h, const Tolerances& tol) {
  tol.validate();
  require_square(h, "Sylvester operand");
  require_finite(h, "Sylvester operand");
  const Eigen::Index n = h.rows();
  if (n == 0) return {};

  // Real parameterization of Hermitian matrices: n diagonal reals, then
  // (Re, Im) of each strictly upper entry.
  std::vector<ComplexMatrix> param;
  param.reserve(static_cast<std::size_t>(n * n));
  for (Eigen::Index i = 0; i < n; ++i) {
    ComplexMatrix e = ComplexMatrix::Zero(n, n);
    e(i, i) = 1.0;
    param.push_back(e);
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      ComplexMatrix re = ComplexMatrix::Zero(n, n);
      re(i, j) = 1.0;
      re(j, i) = 1.0;
      param.push_back(re);
      ComplexMatrix im = ComplexMatrix::Zero(n, n);
      im(i, j) = kI;
      im(j, i) = -kI;
      param.push_back(im);
    }
  }

  const Eigen::Index m = n * n;
  Eigen::MatrixXd lin(2 * m, m);
  const ComplexMatrix hd = h.adjoint();
  for (Eigen::Index k = 0; k < m; ++k) {
    const ComplexMatrix img = hd * param[k] - param[k] * h;
    for (Eigen::Index e = 0; e < m; ++e) {
      const Complex z = img(e % n, e / n);
      lin(2 * e, k) = z.real();
      lin(2 * e + 1, k) = z.imag();
    }
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(lin, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double thresh = scaled(tol.eq_tol, sv(0));
  std::vector<ComplexMatrix> basis;
  for (Eigen::Index k = 0; k < m; ++k) {
    if (sv(k) > thresh) continue;
    Eigen::VectorXd coeff = svd.matrixV().col(k);
    Eigen::Index pivot = 0;
    coeff.cwiseAbs().maxCoeff(&pivot);
    if (coeff(pivot) < 0) coeff = -coeff;
    ComplexMatrix x = ComplexMatrix::Zero(n, n);
    for (Eigen::Index p = 0; p < m; ++p) x += coeff(p) * param[p];
    x /= x.norm();
    basis.push_back(hermitian_part(x));
  }
  return basis;
}

std::vector<ComplexVector> orthonormalize(const std::vector<ComplexVector>& vectors) {
  std::vector<ComplexVector> q;
  q.reserve(vectors.size());
  for (const auto& v : vectors) {
    if (!q.empty() && v.size() != q.front().size()) fail(ErrorCode::DimensionMismatch, "vector lengths differ");
    const double nv = v.norm();
    if (!(nv > 0.0) || !std::isfinite(nv)) fail(ErrorCode::DependentInput, "zero or non-finite vector");
    ComplexVector r = v;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : q) r -= b * b.dot(r);
    }
    const double nr = r.norm();
    if (nr <= 1e-10 * nv) fail(ErrorCode::DependentInput, "input vectors are linearly dependent");
    q.push_back(r / nr);
  }
  return q;
}

std::vector<ComplexVector> orthonormal_extension(const std::vector<ComplexVector>& basis, Eigen::Index dim) {
  if (dim < 0) fail(ErrorCode::InvalidArgument, "negative dimension");
  for (const auto& v : basis) {
    if (v.size() != dim) fail(ErrorCode::DimensionMismatch, "basis vector length differs from dim");
  }
  if (static_cast<Eigen::Index>(basis.size()) > dim) {
    fail(ErrorCode::DependentInput, "more vectors than the ambient dimension");
  }
  auto q = orthonormalize(basis);
  while (static_cast<Eigen::Index>(q.size()) < dim) {
    // pivot: the standard basis vector with the largest orthogonal residual
    ComplexVector best;
    double best_norm = -1.0;
    for (Eigen::Index j = 0; j < dim; ++j) {
      ComplexVector r = ComplexVector::Unit(dim, j);
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& b : q) r -= b * b.dot(r);
      }
      const double nr = r.norm();
      if (nr > best_norm + 1e-14) {
        best_norm = nr;
        best = r;
      }
    }
    q.push_back(best / best_norm);
  }
  return q;
}

}  // namespace ptsim
