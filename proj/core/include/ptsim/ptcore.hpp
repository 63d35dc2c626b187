#pragma once

// Parity / time-reversal pairs, PT-symmetry tests and the unbroken/broken
// classification of finite-dimensional Hamiltonians.
//
// T is stored as the representation matrix of an anti-linear operator: it
// acts on a vector v as T·conj(v). Products follow the anti-linear rules,
// e.g. the representation of T₁T₂ is T₁·conj(T₂).

#include <optional>
#include <string_view>

#include "ptsim/numkernel.hpp"

namespace ptsim {

class PTPair {
 public:
  const ComplexMatrix& P() const { return p_; }
  const ComplexMatrix& T() const { return t_; }
  /// Cached P·T, the representation matrix of the anti-linear PT.
  const ComplexMatrix& PT() const { return pt_; }
  Eigen::Index order() const { return p_.rows(); }

  /// Applies the anti-linear PT to a vector: PT·conj(v).
  ComplexVector apply(const ComplexVector& v) const { return pt_ * v.conjugate(); }

 private:
  friend PTPair validate_pt_pair(const ComplexMatrix&, const ComplexMatrix&, const Tolerances&);
  friend PTPair pt_pair_from_operator(const ComplexMatrix&, const Tolerances&);
  PTPair(ComplexMatrix p, ComplexMatrix t);

  ComplexMatrix p_;
  ComplexMatrix t_;
  ComplexMatrix pt_;
};

/// Checks P² = I, T·conj(T) = I and P·T = T·conj(P).
PTPair validate_pt_pair(const ComplexMatrix& p, const ComplexMatrix& t, const Tolerances& tol = {});

/// Wraps an anti-linear involution PT (PT·conj(PT) = I) as the pair
/// P = I, T = PT. Used when only the product is known.
PTPair pt_pair_from_operator(const ComplexMatrix& pt, const Tolerances& tol = {});

/// ‖H·PT − PT·conj(H)‖_F ≤ eq_tol·max(1,‖H‖_F).
bool is_pt_symmetric(const ComplexMatrix& h, const PTPair& pt, const Tolerances& tol = {});

/// A Hamiltonian together with a PT pair under which it is symmetric.
class PTSystem {
 public:
  /// Throws NotPTSymmetric / DimensionMismatch.
  PTSystem(ComplexMatrix h, PTPair pt, const Tolerances& tol = {});

  const ComplexMatrix& H() const { return h_; }
  const PTPair& pt() const { return pt_; }
  Eigen::Index order() const { return h_.rows(); }

 private:
  ComplexMatrix h_;
  PTPair pt_;
};

enum class PTKind { UnbrokenPT, BrokenDiagonalizable, Defective, NotPTSymmetric };

std::string_view kind_name(PTKind kind) noexcept;

struct Classification {
  PTKind kind = PTKind::NotPTSymmetric;
  ComplexVector spectrum;                 // sorted by (real, imag)
  std::optional<ComplexMatrix> eigenframe;  // present when diagonalizable
};

/// Spectrum-and-diagonalizability classification. With a PT pair, symmetry
/// is tested first.
Classification classify(const ComplexMatrix& h, const std::optional<PTPair>& pt = std::nullopt,
                        const Tolerances& tol = {});
Classification classify(const PTSystem& sys, const Tolerances& tol = {});

struct CanonicalForm {
  ComplexMatrix J;    // diagonal: conjugate pairs adjacent, real eigenvalues trailing
  ComplexMatrix Psi;  // Ψ⁻¹HΨ = J
  ComplexMatrix K;    // Ψ⁻¹·PT·conj(Ψ)
};

/// Eigenframe in which PT acts as the swap/identity block pattern K. Only
/// diagonalizable H (DefectiveInput otherwise).
CanonicalForm canonical_form(const PTSystem& sys, const Tolerances& tol = {});

/// PT = Ψ·K·conj(Ψ⁻¹). K must be a block pattern of adjacent 2×2 swaps and
/// ones on the diagonal.
ComplexMatrix construct_pt_from_eigenframe(const ComplexMatrix& psi, const ComplexMatrix& k,
                                           const Tolerances& tol = {});

/// For an unbroken H (diagonalizable, real spectrum): the PT pair
/// P = I, T = Ψ·conj(Ψ⁻¹) built from its eigenframe.
PTPair pt_pair_for_unbroken(const ComplexMatrix& h, const Tolerances& tol = {});

}  // namespace ptsim
