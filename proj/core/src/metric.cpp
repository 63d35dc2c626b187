#include "ptsim/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ptsim/errors.hpp"

namespace ptsim {

namespace {

constexpr int kGridPoints = 21;
constexpr double kGridLo = 0.1;
constexpr double kGridHi = 10.0;

void require_unbroken(const PTSystem& sys, const Tolerances& tol) {
  const auto c = classify(sys, tol);
  if (c.kind != PTKind::UnbrokenPT) {
    fail(ErrorCode::NotUnbroken, std::string("Hamiltonian is ") + std::string(kind_name(c.kind)));
  }
}

double scalar_sum_residual(const ComplexMatrix& eta, double* t_out) {
  const Eigen::Index n = eta.rows();
  const ComplexMatrix sum = eta + eta.inverse();
  const double t = sum.trace().real() / static_cast<double>(n);
  if (t_out) *t_out = t;
  return (sum - t * identity(n)).norm();
}

}  // namespace

MetricOperator verify_metric(const ComplexMatrix& h, const ComplexMatrix& eta, const Tolerances& tol) {
  tol.validate();
  require_square(h, "H");
  require_square(eta, "eta");
  require_finite(h, "H");
  require_finite(eta, "eta");
  if (h.rows() != eta.rows()) fail(ErrorCode::DimensionMismatch, "H and eta have different orders");
  MetricOperator m;
  m.hermiticity_residual = hermiticity_residual(eta);
  const double ne = frobenius(eta);
  if (m.hermiticity_residual > scaled(tol.eq_tol, ne)) fail(ErrorCode::NotHermitian, "eta is not Hermitian");
  m.eta = hermitian_part(eta);
  m.intertwining_residual = (h.adjoint() * m.eta - m.eta * h).norm();
  if (m.intertwining_residual > scaled(tol.eq_tol, frobenius(h) * std::max(1.0, ne))) {
    fail(ErrorCode::NotIntertwining, "H^dag eta != eta H (residual " + std::to_string(m.intertwining_residual) + ")");
  }
  m.min_eigenvalue = min_hermitian_eigenvalue(m.eta);
  m.positive_definite = m.min_eigenvalue > tol.psd_tol;
  return m;
}

MetricOperator positive_metric(const PTSystem& sys, const Tolerances& tol) {
  tol.validate();
  const auto c = classify(sys, tol);
  if (c.kind != PTKind::UnbrokenPT) {
    fail(ErrorCode::NotUnbroken, std::string("no positive-definite metric: Hamiltonian is ") +
                                     std::string(kind_name(c.kind)));
  }
  const ComplexMatrix& psi = *c.eigenframe;
  const ComplexMatrix gram = psi * psi.adjoint();
  const ComplexMatrix eta = hermitian_part(gram.ldlt().solve(identity(psi.rows())));
  return verify_metric(sys.H(), eta, tol);
}

SignatureReport metric_signature(const PTSystem& sys, const ComplexMatrix& eta, const Tolerances& tol) {
  tol.validate();
  const auto c = classify(sys, tol);
  if (c.kind != PTKind::UnbrokenPT) fail(ErrorCode::NotUnbroken, "signature needs an unbroken Hamiltonian");
  const auto m = verify_metric(sys.H(), eta, tol);

  const ComplexVector& lam = c.spectrum;
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    for (Eigen::Index j = i + 1; j < lam.size(); ++j) {
      if (std::abs(lam(i) - lam(j)) <= scaled(std::sqrt(tol.eq_tol), std::abs(lam(i)))) {
        fail(ErrorCode::DegenerateSpectrumUnsupported, "repeated eigenvalues need block Gram diagonalization");
      }
    }
  }

  ComplexMatrix frame = *c.eigenframe;
  const ComplexMatrix gram = frame.adjoint() * m.eta * frame;
  SignatureReport out;
  for (Eigen::Index i = 0; i < frame.cols(); ++i) {
    const double g = gram(i, i).real();
    if (std::abs(g) <= scaled(tol.eq_tol, gram.norm())) {
      fail(ErrorCode::NumericalFailure, "metric is null on an eigenvector (singular eta?)");
    }
    out.epsilons.push_back(g > 0 ? 1 : -1);
    frame.col(i) /= std::sqrt(std::abs(g));
  }
  const ComplexMatrix normalized = frame.adjoint() * m.eta * frame;
  ComplexMatrix expect = ComplexMatrix::Zero(frame.cols(), frame.cols());
  for (Eigen::Index i = 0; i < frame.cols(); ++i) expect(i, i) = static_cast<double>(out.epsilons[i]);
  if ((normalized - expect).norm() > scaled(tol.eq_tol, condition_number(frame) * frobenius(m.eta))) {
    fail(ErrorCode::NumericalFailure, "eta is not diagonal in the eigenframe");
  }
  out.frame = frame;
  return out;
}

ScalarSumMetric scalar_sum_metric_2d(const PTSystem& sys, const Tolerances& tol) {
  tol.validate();
  if (sys.order() != 2) fail(ErrorCode::WrongDimension, "scalar-sum construction is for 2x2 systems");
  require_unbroken(sys, tol);
  const auto base = positive_metric(sys, tol);
  const double det = base.eta.determinant().real();
  if (!(det > 0.0)) fail(ErrorCode::NumericalFailure, "positive metric with non-positive determinant");
  ScalarSumMetric out;
  out.metric = verify_metric(sys.H(), base.eta / std::sqrt(det), tol);
  out.t = out.metric.eta.trace().real();
  double t_best = 0.0;
  if (scalar_sum_residual(out.metric.eta, &t_best) > scaled(tol.eq_tol, out.t)) {
    fail(ErrorCode::NumericalFailure, "eta + eta^-1 is not scalar");
  }
  return out;
}

std::optional<double> verify_scalar_sum(const ComplexMatrix& eta, const Tolerances& tol) {
  tol.validate();
  require_square(eta, "eta");
  require_finite(eta, "eta");
  if (hermiticity_residual(eta) > scaled(tol.eq_tol, frobenius(eta))) fail(ErrorCode::NotHermitian, "eta");
  const ComplexMatrix h = hermitian_part(eta);
  if (min_hermitian_eigenvalue(h) <= tol.psd_tol) fail(ErrorCode::NotPositiveDefinite, "eta");
  double t = 0.0;
  const double res = scalar_sum_residual(h, &t);
  if (res <= scaled(tol.eq_tol, t * std::sqrt(static_cast<double>(h.rows())))) return t;
  return std::nullopt;
}

ComplexMatrix obstruction_q() {
  ComplexMatrix q(3, 3);
  q << 1, 1, 1, 0, 1, 1, 0, 0, 1;
  return q;
}

ComplexMatrix obstruction_h3() {
  ComplexMatrix h(3, 3);
  h << 1, 1, 1, 0, 2, 1, 0, 0, 3;
  return h;
}

double extended_coupling_block_norm(double alpha0, Eigen::Index n, const Tolerances& tol) {
  if (n < 4) fail(ErrorCode::WrongDimension, "extension needs n >= 4");
  ComplexMatrix hn = ComplexMatrix::Zero(n, n);
  hn.topLeftCorner(3, 3) = obstruction_h3();
  hn.bottomRightCorner(n - 3, n - 3) = alpha0 * identity(n - 3);
  double worst = 0.0;
  for (const auto& x : sylvester_hermitian_nullspace(hn, tol)) {
    worst = std::max(worst, x.topRightCorner(3, n - 3).norm());
  }
  return worst;
}

ObstructionReport scalar_sum_obstruction_demo(const Tolerances& tol) {
  tol.validate();
  const ComplexMatrix q = obstruction_q();
  const ComplexMatrix qi = q.inverse();
  const ComplexMatrix qi_qih = qi * qi.adjoint();
  const ComplexMatrix qhq = q.adjoint() * q;

  std::vector<double> axis(kGridPoints);
  for (int i = 0; i < kGridPoints; ++i) {
    const double f = static_cast<double>(i) / (kGridPoints - 1);
    axis[i] = kGridLo * std::pow(kGridHi / kGridLo, f);
  }

  ObstructionReport rep;
  rep.min_residual = std::numeric_limits<double>::infinity();
  for (double a1 : axis) {
    for (double a2 : axis) {
      for (double a3 : axis) {
        ComplexMatrix a = ComplexMatrix::Zero(3, 3);
        a(0, 0) = a1;
        a(1, 1) = a2;
        a(2, 2) = a3;
        const ComplexMatrix eta = qi.adjoint() * a * qi;
        rep.min_residual = std::min(rep.min_residual, scalar_sum_residual(eta, nullptr));
        const Complex e13 = (a * qi_qih * a + qhq)(0, 2);
        rep.max_entry_13_deviation = std::max(rep.max_entry_13_deviation, std::abs(e13 - 1.0));
        ++rep.samples;
      }
    }
  }
  rep.obstruction_entry_13 = (qi_qih + qhq)(0, 2);  // A = I
  rep.metric_family_dimension = sylvester_hermitian_nullspace(obstruction_h3(), tol).size();
  rep.extended_coupling_norm = extended_coupling_block_norm(10.0, 4, tol);
  return rep;
}

}  // namespace ptsim
