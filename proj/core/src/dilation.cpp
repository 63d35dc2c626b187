#include "ptsim/dilation.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "ptsim/errors.hpp"
#include "ptsim/metric.hpp"

namespace ptsim {

TauSubspace::TauSubspace(ComplexMatrix tau) : tau_(std::move(tau)) { require_square(tau_, "tau"); }

bool TauSubspace::contains(const ComplexVector& x, const Tolerances& tol) const {
  const Eigen::Index n = dim();
  if (x.size() != 2 * n) fail(ErrorCode::DimensionMismatch, "vector length must be 2n");
  const double gap = (x.tail(n) - tau_ * x.head(n)).norm();
  return gap <= tol.eq_tol * std::max(1.0, frobenius(tau_)) * x.norm();
}

std::vector<ComplexVector> TauSubspace::basis() const {
  const Eigen::Index n = dim();
  ComplexMatrix graph(2 * n, n);
  graph.topRows(n) = identity(n);
  graph.bottomRows(n) = tau_;
  return orthonormalize(columns_of(graph));
}

ComplexMatrix TauSubspace::projector() const { return projector_onto(basis()); }

Dilation build_dilation(const PTSystem& sys, const DilationOptions& opts, const Tolerances& tol) {
  tol.validate();
  if (!std::isfinite(opts.margin) || opts.margin <= 1.0) {
    fail(ErrorCode::InvalidArgument, "margin must be > 1");
  }
  const auto cls = classify(sys, tol);
  if (cls.kind != PTKind::UnbrokenPT) {
    fail(ErrorCode::NotUnbroken, std::string("embedding needs an unbroken Hamiltonian, got ") +
                                     std::string(kind_name(cls.kind)));
  }
  const ComplexMatrix& h = sys.H();
  const Eigen::Index n = h.rows();
  const ComplexMatrix id = identity(n);

  Dilation d;
  d.H = h;
  if (opts.eta) {
    const auto m = verify_metric(h, *opts.eta, tol);
    if (!m.positive_definite) fail(ErrorCode::NotPositiveDefinite, "supplied eta is not positive-definite");
    if (m.min_eigenvalue > 1.0 + scaled(tol.psd_tol, m.min_eigenvalue)) {
      d.eta = m.eta;
    } else if (opts.auto_scale) {
      d.eta = (opts.margin / m.min_eigenvalue) * m.eta;
    } else {
      fail(ErrorCode::EtaNotGreaterThanI, "supplied eta has lambda_min = " + std::to_string(m.min_eigenvalue));
    }
  } else {
    const auto m = positive_metric(sys, tol);
    d.eta = (opts.margin / m.min_eigenvalue) * m.eta;
  }
  d.eta = hermitian_part(d.eta);

  d.tau = principal_sqrt_psd(d.eta - id, tol);
  Eigen::FullPivLU<ComplexMatrix> tau_lu(d.tau);
  if (!tau_lu.isInvertible() || min_hermitian_eigenvalue(d.tau) <= tol.psd_tol) {
    fail(ErrorCode::EtaNotGreaterThanI, "tau = (eta - I)^(1/2) is singular");
  }
  const ComplexMatrix tau_inv = tau_lu.inverse();
  const ComplexMatrix eta_inv = d.eta.inverse();

  switch (opts.h1) {
    case H1Choice::Zero:
      d.H1 = ComplexMatrix::Zero(n, n);
      break;
    case H1Choice::PaperRecipe:
      d.H1 = hermitian_part(d.tau * h * d.tau * eta_inv + h * eta_inv);
      break;
    case H1Choice::Supplied: {
      if (!opts.h1_matrix) fail(ErrorCode::InvalidArgument, "H1Choice::Supplied without a matrix");
      const ComplexMatrix& h1 = *opts.h1_matrix;
      require_square(h1, "H1");
      require_finite(h1, "H1");
      if (h1.rows() != n) fail(ErrorCode::DimensionMismatch, "H1 order differs from H");
      if (hermiticity_residual(h1) > scaled(tol.eq_tol, frobenius(h1))) {
        fail(ErrorCode::SuppliedH1NotHermitian, "supplied H1 is not Hermitian");
      }
      d.H1 = hermitian_part(h1);
      break;
    }
  }

  d.H2 = (h - d.H1) * tau_inv;
  const ComplexMatrix h4_raw = (d.tau * h - d.H2.adjoint()) * tau_inv;
  d.residuals.hermiticity = hermiticity_residual(h4_raw);
  d.H4 = hermitian_part(h4_raw);

  d.Hhat.resize(2 * n, 2 * n);
  d.Hhat.topLeftCorner(n, n) = d.H1;
  d.Hhat.topRightCorner(n, n) = d.H2;
  d.Hhat.bottomLeftCorner(n, n) = d.H2.adjoint();
  d.Hhat.bottomRightCorner(n, n) = d.H4;

  d.residuals.eq_h1h2 = (d.H1 + d.H2 * d.tau - h).norm();
  d.residuals.eq_h2h4 = (d.H2.adjoint() + d.H4 * d.tau - d.tau * h).norm();
  d.residuals.tau_sq = (d.tau * d.tau - (d.eta - id)).norm();

  const double scale = std::max(1.0, frobenius(h)) * std::max(1.0, frobenius(d.tau)) *
                       std::max(1.0, frobenius(tau_inv)) * std::max(1.0, frobenius(d.eta));
  const auto& r = d.residuals;
  if (std::max({r.hermiticity, r.eq_h1h2, r.eq_h2h4, r.tau_sq}) > tol.eq_tol * scale) {
    fail(ErrorCode::NumericalFailure, "dilation residuals exceed tolerance");
  }
  return d;
}

ComplexVector embed_state(const ComplexVector& psi, const Dilation& d) {
  const Eigen::Index n = d.order();
  if (psi.size() != n) fail(ErrorCode::DimensionMismatch, "state length differs from H order");
  if (!(psi.norm() > 0.0)) fail(ErrorCode::ZeroVector, "cannot embed the zero vector");
  const double weight = psi.dot(d.eta * psi).real();
  ComplexVector x(2 * n);
  x.head(n) = psi;
  x.tail(n) = d.tau * psi;
  return x / std::sqrt(weight);
}

ComplexMatrix dilated_propagator(const Dilation& d, double t, const Tolerances& tol) {
  return matrix_exp(Complex(0.0, -t) * d.Hhat, tol);
}

ComplexVector dilated_evolution(const Dilation& d, double t, const ComplexVector& xhat, const Tolerances& tol) {
  if (!TauSubspace(d.tau).contains(xhat, tol)) {
    fail(ErrorCode::NotInSubspace, "input is not in Y_tau; the block identity would not hold");
  }
  return dilated_propagator(d, t, tol) * xhat;
}

bool embedding_membership(const ComplexMatrix& hhat, const ComplexMatrix& h, const ComplexVector& x,
                          const Tolerances& tol) {
  require_square(hhat, "Hhat");
  require_square(h, "H");
  const Eigen::Index n = h.rows();
  if (hhat.rows() != 2 * n || x.size() != 2 * n) {
    fail(ErrorCode::DimensionMismatch, "need Hhat 2n x 2n, H n x n and x of length 2n");
  }
  const double nx = x.norm();
  if (nx == 0.0) return true;
  // The power condition is invariant under a common rescaling of Ĥ and H.
  const double s = std::max(1.0, frobenius(hhat));
  const ComplexMatrix hs = hhat / s;
  const ComplexMatrix ls = h / s;
  ComplexVector full = x / nx;
  ComplexVector top = full.head(n);
  for (Eigen::Index k = 0; k <= 2 * n; ++k) {
    const double gap = (full.head(n) - top).norm();
    if (gap > tol.eq_tol * static_cast<double>(k + 1) * std::max(1.0, top.norm())) return false;
    full = hs * full;
    top = ls * top;
  }
  return true;
}

}  // namespace ptsim
