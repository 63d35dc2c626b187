#include "ptsim/ptcore.hpp"

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "ptsim/errors.hpp"

namespace ptsim {

namespace {

// Real eigenvalues closer than this (relative) are treated as one
// degenerate eigenspace when fixing the PT gauge.
constexpr double kDegenerateTol = 1e-8;

void require_same_order(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
  if (a.rows() != b.rows()) fail(ErrorCode::DimensionMismatch, what);
}

// partner[i] = index j with λ_j ≈ conj(λ_i) for non-real λ_i, −1 when unmatched;
// real eigenvalues get −2.
std::vector<Eigen::Index> conjugate_partners(const ComplexVector& vals, const Tolerances& tol) {
  const Eigen::Index n = vals.size();
  std::vector<Eigen::Index> partner(static_cast<std::size_t>(n), -1);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (is_real_eigenvalue(vals(i), tol)) partner[i] = -2;
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (partner[i] != -1) continue;
    Eigen::Index best = -1;
    double best_gap = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j == i || partner[j] != -1) continue;
      const double gap = std::abs(vals(i) - std::conj(vals(j)));
      if (best < 0 || gap < best_gap) {
        best = j;
        best_gap = gap;
      }
    }
    if (best >= 0 && best_gap <= scaled(tol.real_tol, std::abs(vals(i)))) {
      partner[i] = best;
      partner[best] = i;
    }
  }
  return partner;
}

bool all_matched(const std::vector<Eigen::Index>& partner) {
  for (auto p : partner) {
    if (p == -1) return false;
  }
  return true;
}

// Pick `k` PT-fixed vectors spanning the eigenspace spanned by `space`.
// Candidates ψ + PTψ̄ and i(ψ − PTψ̄) are taken greedily by largest
// residual against the span of those already chosen.
std::vector<ComplexVector> fixed_point_basis(const std::vector<ComplexVector>& space, const PTPair& pt) {
  std::vector<ComplexVector> candidates;
  for (const auto& psi : space) {
    const ComplexVector image = pt.apply(psi);
    candidates.emplace_back(psi + image);
    candidates.emplace_back(kI * (psi - image));
  }
  std::vector<ComplexVector> chosen;
  std::vector<ComplexVector> ortho;
  std::vector<bool> used(candidates.size(), false);
  while (chosen.size() < space.size()) {
    std::size_t best = candidates.size();
    double best_norm = -1.0;
    ComplexVector best_res;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      if (used[c]) continue;
      ComplexVector r = candidates[c];
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& q : ortho) r -= q * q.dot(r);
      }
      if (r.norm() > best_norm) {
        best_norm = r.norm();
        best = c;
        best_res = r;
      }
    }
    if (best == candidates.size() || !(best_norm > 1e-8)) {
      fail(ErrorCode::NumericalFailure, "could not find a PT-fixed eigenbasis");
    }
    used[best] = true;
    chosen.push_back(candidates[best] / candidates[best].norm());
    ortho.push_back(best_res / best_norm);
  }
  return chosen;
}

bool is_block_pattern(const ComplexMatrix& k, double tol) {
  const Eigen::Index n = k.rows();
  if (k.cols() != n) return false;
  ComplexMatrix expect = ComplexMatrix::Zero(n, n);
  Eigen::Index i = 0;
  while (i < n) {
    if (std::abs(k(i, i) - 1.0) <= tol) {
      expect(i, i) = 1.0;
      ++i;
    } else if (i + 1 < n && std::abs(k(i, i + 1) - 1.0) <= tol && std::abs(k(i + 1, i) - 1.0) <= tol) {
      expect(i, i + 1) = 1.0;
      expect(i + 1, i) = 1.0;
      i += 2;
    } else {
      return false;
    }
  }
  return (k - expect).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace

PTPair::PTPair(ComplexMatrix p, ComplexMatrix t) : p_(std::move(p)), t_(std::move(t)), pt_(p_ * t_) {}

PTPair validate_pt_pair(const ComplexMatrix& p, const ComplexMatrix& t, const Tolerances& tol) {
  tol.validate();
  require_square(p, "P");
  require_square(t, "T");
  require_finite(p, "P");
  require_finite(t, "T");
  require_same_order(p, t, "P and T have different orders");
  const auto n = p.rows();
  const ComplexMatrix id = identity(n);
  const double np = frobenius(p);
  const double nt = frobenius(t);
  if ((p * p - id).norm() > scaled(tol.eq_tol, np * np)) {
    fail(ErrorCode::NotInvolutoryP, "P*P != I");
  }
  if ((t * t.conjugate() - id).norm() > scaled(tol.eq_tol, nt * nt)) {
    fail(ErrorCode::NotInvolutoryT, "T*conj(T) != I");
  }
  if ((p * t - t * p.conjugate()).norm() > scaled(tol.eq_tol, np * nt)) {
    fail(ErrorCode::NonCommuting, "P*T != T*conj(P)");
  }
  return PTPair(p, t);
}

PTPair pt_pair_from_operator(const ComplexMatrix& pt, const Tolerances& tol) {
  tol.validate();
  require_square(pt, "PT");
  require_finite(pt, "PT");
  const double n = frobenius(pt);
  if ((pt * pt.conjugate() - identity(pt.rows())).norm() > scaled(tol.eq_tol, n * n)) {
    fail(ErrorCode::NotInvolutoryT, "PT*conj(PT) != I");
  }
  return PTPair(identity(pt.rows()), pt);
}

bool is_pt_symmetric(const ComplexMatrix& h, const PTPair& pt, const Tolerances& tol) {
  require_square(h, "H");
  require_same_order(h, pt.PT(), "H and PT have different orders");
  const ComplexMatrix& op = pt.PT();
  const double res = (h * op - op * h.conjugate()).norm();
  return res <= scaled(tol.eq_tol, frobenius(h) * std::max(1.0, frobenius(op)));
}

PTSystem::PTSystem(ComplexMatrix h, PTPair pt, const Tolerances& tol) : h_(std::move(h)), pt_(std::move(pt)) {
  require_square(h_, "H");
  require_finite(h_, "H");
  require_same_order(h_, pt_.PT(), "H and PT have different orders");
  if (!is_pt_symmetric(h_, pt_, tol)) fail(ErrorCode::NotPTSymmetric, "H*PT != PT*conj(H)");
}

std::string_view kind_name(PTKind kind) noexcept {
  switch (kind) {
    case PTKind::UnbrokenPT: return "UnbrokenPT";
    case PTKind::BrokenDiagonalizable: return "BrokenDiagonalizable";
    case PTKind::Defective: return "Defective";
    case PTKind::NotPTSymmetric: return "NotPTSymmetric";
  }
  return "Unknown";
}

Classification classify(const ComplexMatrix& h, const std::optional<PTPair>& pt, const Tolerances& tol) {
  tol.validate();
  require_square(h, "H");
  require_finite(h, "H");
  const auto d = eig(h, tol);
  Classification out;
  out.spectrum = d.eigenvalues;

  if (pt && !is_pt_symmetric(h, *pt, tol)) {
    out.kind = PTKind::NotPTSymmetric;
    return out;
  }
  if (d.defective) {
    out.kind = PTKind::Defective;
    return out;
  }
  bool all_real = true;
  for (Eigen::Index i = 0; i < d.eigenvalues.size(); ++i) {
    all_real = all_real && is_real_eigenvalue(d.eigenvalues(i), tol);
  }
  if (all_real) {
    out.kind = PTKind::UnbrokenPT;
    out.eigenframe = d.eigenvectors;
    return out;
  }
  if (!all_matched(conjugate_partners(d.eigenvalues, tol))) {
    if (pt) fail(ErrorCode::InconsistentSpectrum, "complex eigenvalue without a conjugate partner");
    out.kind = PTKind::NotPTSymmetric;
    return out;
  }
  out.kind = PTKind::BrokenDiagonalizable;
  out.eigenframe = d.eigenvectors;
  return out;
}

Classification classify(const PTSystem& sys, const Tolerances& tol) { return classify(sys.H(), sys.pt(), tol); }

CanonicalForm canonical_form(const PTSystem& sys, const Tolerances& tol) {
  tol.validate();
  const ComplexMatrix& h = sys.H();
  const auto d = eig(h, tol);
  if (d.defective) fail(ErrorCode::DefectiveInput, "Jordan blocks of size >= 2 are not supported");
  const auto partner = conjugate_partners(d.eigenvalues, tol);
  if (!all_matched(partner)) fail(ErrorCode::InconsistentSpectrum, "complex eigenvalue without a conjugate partner");

  const Eigen::Index n = h.rows();
  std::vector<ComplexVector> cols;
  std::vector<Complex> diag;

  for (Eigen::Index i = 0; i < n; ++i) {
    if (partner[i] < 0 || d.eigenvalues(i).imag() < 0.0) continue;
    const ComplexVector psi = d.eigenvectors.col(i);
    cols.push_back(psi);
    diag.push_back(d.eigenvalues(i));
    cols.push_back(sys.pt().apply(psi));
    diag.push_back(std::conj(d.eigenvalues(i)));
  }

  std::vector<bool> done(static_cast<std::size_t>(n), false);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (partner[i] != -2 || done[i]) continue;
    std::vector<ComplexVector> space;
    double mean = 0.0;
    for (Eigen::Index j = i; j < n; ++j) {
      if (partner[j] != -2 || done[j]) continue;
      if (std::abs(d.eigenvalues(j).real() - d.eigenvalues(i).real()) <=
          scaled(kDegenerateTol, std::abs(d.eigenvalues(i)))) {
        done[j] = true;
        space.emplace_back(d.eigenvectors.col(j));
        mean += d.eigenvalues(j).real();
      }
    }
    mean /= static_cast<double>(space.size());
    for (auto& v : fixed_point_basis(space, sys.pt())) {
      cols.push_back(std::move(v));
      diag.emplace_back(mean, 0.0);
    }
  }

  CanonicalForm out;
  out.Psi = from_columns(cols, n);
  out.J = ComplexMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) out.J(i, i) = diag[static_cast<std::size_t>(i)];

  const double cond = condition_number(out.Psi);
  if (!std::isfinite(cond) || cond > tol.defect_cond) {
    fail(ErrorCode::NumericalFailure, "canonical eigenframe is singular");
  }
  Eigen::PartialPivLU<ComplexMatrix> lu(out.Psi);
  const ComplexMatrix j_check = lu.solve(h * out.Psi);
  if ((j_check - out.J).norm() > scaled(tol.eq_tol, frobenius(h) * cond)) {
    fail(ErrorCode::NumericalFailure, "Psi^-1 H Psi deviates from J");
  }
  const ComplexMatrix k = lu.solve(sys.pt().PT() * out.Psi.conjugate());
  if (!is_block_pattern(k, scaled(tol.eq_tol, cond * frobenius(sys.pt().PT())))) {
    fail(ErrorCode::NumericalFailure, "Psi^-1 PT conj(Psi) is not a swap/identity pattern");
  }
  out.K = ComplexMatrix::Zero(n, n);
  Eigen::Index i = 0;
  for (; i + 1 < n && diag[static_cast<std::size_t>(i)].imag() != 0.0; i += 2) {
    out.K(i, i + 1) = 1.0;
    out.K(i + 1, i) = 1.0;
  }
  for (; i < n; ++i) out.K(i, i) = 1.0;
  return out;
}

ComplexMatrix construct_pt_from_eigenframe(const ComplexMatrix& psi, const ComplexMatrix& k, const Tolerances& tol) {
  tol.validate();
  require_square(psi, "Psi");
  require_square(k, "K");
  require_finite(psi, "Psi");
  require_same_order(psi, k, "Psi and K have different orders");
  const double cond = condition_number(psi);
  if (!std::isfinite(cond) || cond > tol.defect_cond) {
    fail(ErrorCode::SingularFrame, "eigenframe condition " + std::to_string(cond));
  }
  if (!is_block_pattern(k, tol.eq_tol)) {
    fail(ErrorCode::InvalidArgument, "K must be a pattern of 2x2 swap blocks and ones");
  }
  Eigen::PartialPivLU<ComplexMatrix> lu(psi);
  return psi * k * lu.inverse().conjugate();
}

PTPair pt_pair_for_unbroken(const ComplexMatrix& h, const Tolerances& tol) {
  const auto c = classify(h, std::nullopt, tol);
  if (c.kind != PTKind::UnbrokenPT) {
    fail(ErrorCode::NotUnbroken, std::string("Hamiltonian is ") + std::string(kind_name(c.kind)));
  }
  const ComplexMatrix pt = construct_pt_from_eigenframe(*c.eigenframe, identity(h.rows()), tol);
  return pt_pair_from_operator(pt, tol);
}

}  // namespace ptsim
