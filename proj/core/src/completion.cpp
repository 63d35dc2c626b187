#include "ptsim/completion.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "ptsim/errors.hpp"

namespace ptsim {

namespace {

void check_orthonormal(const std::vector<ComplexVector>& basis, Eigen::Index ambient, const Tolerances& tol,
                       const char* what) {
  for (const auto& v : basis) {
    if (v.size() != ambient) fail(ErrorCode::InvalidSubspaceMap, std::string(what) + " vector has wrong length");
    if (!all_finite(v)) fail(ErrorCode::InvalidSubspaceMap, std::string(what) + " vector has non-finite entries");
  }
  const ComplexMatrix b = from_columns(basis, ambient);
  const auto k = static_cast<Eigen::Index>(basis.size());
  if ((b.adjoint() * b - identity(k)).norm() > scaled(tol.eq_tol, static_cast<double>(k))) {
    fail(ErrorCode::InvalidSubspaceMap, std::string(what) + " basis is not orthonormal");
  }
}

std::vector<ComplexVector> tail_of(std::vector<ComplexVector> v, std::size_t from) {
  return {std::make_move_iterator(v.begin() + static_cast<std::ptrdiff_t>(from)), std::make_move_iterator(v.end())};
}

void check_unitary(const ComplexMatrix& u, const Tolerances& tol) {
  const double res = (u.adjoint() * u - identity(u.rows())).norm();
  if (res > scaled(tol.eq_tol, static_cast<double>(u.rows()))) {
    fail(ErrorCode::NumericalFailure, "completed operator is not unitary (" + std::to_string(res) + ")");
  }
}

}  // namespace

SubspaceMap::SubspaceMap(std::vector<ComplexVector> m_basis, std::vector<ComplexVector> n_basis, ComplexMatrix a,
                         const Tolerances& tol)
    : m_basis_(std::move(m_basis)), n_basis_(std::move(n_basis)), a_(std::move(a)) {
  tol.validate();
  const auto n = static_cast<Eigen::Index>(m_basis_.size());
  if (n == 0 || static_cast<Eigen::Index>(n_basis_.size()) != n) {
    fail(ErrorCode::InvalidSubspaceMap, "M and N need the same nonzero dimension");
  }
  if (a_.rows() != n || a_.cols() != n) fail(ErrorCode::InvalidSubspaceMap, "A must be n x n");
  if (!all_finite(a_)) fail(ErrorCode::InvalidSubspaceMap, "A has non-finite entries");
  check_orthonormal(m_basis_, 2 * n, tol, "M");
  check_orthonormal(n_basis_, 2 * n, tol, "N");
}

SubspaceMap SubspaceMap::from_images(std::vector<ComplexVector> m_basis, std::vector<ComplexVector> n_basis,
                                     const std::vector<ComplexVector>& images, const Tolerances& tol) {
  const auto n = static_cast<Eigen::Index>(n_basis.size());
  if (images.size() != m_basis.size()) fail(ErrorCode::InvalidSubspaceMap, "one image per M basis vector");
  const ComplexMatrix nb = from_columns(n_basis, 2 * n);
  const ComplexMatrix img = from_columns(images, 2 * n);
  ComplexMatrix a = nb.adjoint() * img;
  if ((nb * a - img).norm() > scaled(tol.eq_tol, img.norm())) {
    fail(ErrorCode::InvalidSubspaceMap, "images do not lie in N");
  }
  return SubspaceMap(std::move(m_basis), std::move(n_basis), std::move(a), tol);
}

ComplexVector SubspaceMap::apply(const ComplexVector& v) const {
  const ComplexMatrix mb = from_columns(m_basis_, ambient());
  const ComplexMatrix nb = from_columns(n_basis_, ambient());
  return nb * (a_ * (mb.adjoint() * v));
}

CompletionResult unitary_completion(const SubspaceMap& m, const Tolerances& tol) {
  tol.validate();
  const double total = m.A().norm();  // sqrt(Σ_j ‖A u_j‖²)
  if (!(total > 0.0)) fail(ErrorCode::ZeroMap, "use zero_map_completion for A = 0");
  const Eigen::Index n = m.dim();
  const Eigen::Index d = m.ambient();

  const ComplexMatrix v = from_columns(m.n_basis(), d);
  const ComplexMatrix w = from_columns(tail_of(orthonormal_extension(m.n_basis(), d), n), d);
  const ComplexMatrix mb = from_columns(m.m_basis(), d);
  const ComplexMatrix m_perp = from_columns(tail_of(orthonormal_extension(m.m_basis(), d), n), d);

  // g_j = V c_j, h_j = W d_j with C†C + D†D = I
  const ComplexMatrix c = m.A() / total;
  const ComplexMatrix dd = principal_sqrt_psd(hermitian_part(identity(n) - c.adjoint() * c), tol);
  const ComplexMatrix y = v * c + w * dd;
  const ComplexMatrix y_perp = from_columns(tail_of(orthonormal_extension(columns_of(y), d), n), d);

  CompletionResult out;
  out.U = y * mb.adjoint() + y_perp * m_perp.adjoint();
  check_unitary(out.U, tol);
  out.P_N = v * v.adjoint();
  out.scale = 1.0 / total;
  return out;
}

CompletionResult zero_map_completion(const SubspaceMap& m, const Tolerances& tol) {
  tol.validate();
  if (m.A().norm() != 0.0) fail(ErrorCode::InvalidArgument, "zero_map_completion needs A = 0");
  const Eigen::Index n = m.dim();
  const Eigen::Index d = m.ambient();
  const ComplexMatrix v = from_columns(m.n_basis(), d);
  const ComplexMatrix w = from_columns(tail_of(orthonormal_extension(m.n_basis(), d), n), d);
  const ComplexMatrix mb = from_columns(m.m_basis(), d);
  const ComplexMatrix m_perp = from_columns(tail_of(orthonormal_extension(m.m_basis(), d), n), d);

  CompletionResult out;
  out.U = w * mb.adjoint() + v * m_perp.adjoint();
  check_unitary(out.U, tol);
  out.P_N = v * v.adjoint();
  out.scale = 0.0;
  return out;
}

CompletionResult complete(const SubspaceMap& m, const Tolerances& tol) {
  return m.A().norm() == 0.0 ? zero_map_completion(m, tol) : unitary_completion(m, tol);
}

PostSelection post_select(const ComplexVector& state, const ComplexMatrix& p, const Tolerances& tol) {
  tol.validate();
  require_square(p, "projector");
  if (p.rows() != state.size()) fail(ErrorCode::DimensionMismatch, "projector and state sizes differ");
  const double np = frobenius(p);
  if ((p * p - p).norm() > scaled(tol.eq_tol, np) || hermiticity_residual(p) > scaled(tol.eq_tol, np)) {
    fail(ErrorCode::NotProjection, "P is not an orthogonal projection");
  }
  if (std::abs(state.norm() - 1.0) > tol.eq_tol) fail(ErrorCode::NotNormalized, "state must be unit-norm");
  const ComplexVector kept = p * state;
  PostSelection out;
  const double prob = kept.squaredNorm();
  if (prob > tol.psd_tol) {
    out.state = kept / std::sqrt(prob);
    out.probability = prob;
  } else {
    out.state = ComplexVector::Zero(state.size());
    out.probability = 0.0;
  }
  return out;
}

}  // namespace ptsim
