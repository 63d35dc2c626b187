#pragma once

// Hermitian dilation of an unbroken PT-symmetric H onto C^{2n}.
//
// With η > I a positive metric of H and τ = (η − I)^{1/2}, the block matrix
//
//     Ĥ = [[H1, H2], [H2†, H4]],   H2 = (H − H1)τ⁻¹,   H4 = (τH − H2†)τ⁻¹
//
// is Hermitian for any Hermitian H1, and leaves the graph subspace
// Y_τ = {(ψ; τψ)} invariant with e^{−itĤ}(ψ; τψ) = (U(t)ψ; τU(t)ψ).

#include <optional>
#include <vector>

#include "ptsim/numkernel.hpp"
#include "ptsim/ptcore.hpp"

namespace ptsim {

enum class H1Choice { Zero, PaperRecipe, Supplied };

struct DilationOptions {
  std::optional<ComplexMatrix> eta;  ///< supplied metric η′; empty = positive_metric
  double margin = 1.05;              ///< target λ_min(η) when rescaling
  bool auto_scale = true;            ///< rescale a supplied η′ with λ_min ≤ 1
  H1Choice h1 = H1Choice::Zero;
  std::optional<ComplexMatrix> h1_matrix;  ///< used with H1Choice::Supplied
};

struct DilationResiduals {
  double hermiticity = 0.0;  // ‖H4 − H4†‖ before symmetrization
  double eq_h1h2 = 0.0;      // ‖H1 + H2τ − H‖
  double eq_h2h4 = 0.0;      // ‖H2† + H4τ − τH‖
  double tau_sq = 0.0;       // ‖τ² − (η − I)‖
};

struct Dilation {
  ComplexMatrix H;
  ComplexMatrix eta;
  ComplexMatrix tau;
  ComplexMatrix H1;
  ComplexMatrix H2;
  ComplexMatrix H4;
  ComplexMatrix Hhat;
  DilationResiduals residuals;

  Eigen::Index order() const { return H.rows(); }
};

/// The graph subspace Y_τ = {(x₁; τx₁)} of C^{2n}.
class TauSubspace {
 public:
  explicit TauSubspace(ComplexMatrix tau);

  Eigen::Index dim() const { return tau_.rows(); }
  const ComplexMatrix& tau() const { return tau_; }

  /// ‖x₂ − τx₁‖ ≤ eq_tol·max(1,‖τ‖_F)·‖x‖.
  bool contains(const ComplexVector& x, const Tolerances& tol = {}) const;
  /// Orthonormal basis (Gram–Schmidt on the columns of [I; τ]).
  std::vector<ComplexVector> basis() const;
  /// Orthogonal projector onto Y_τ.
  ComplexMatrix projector() const;

 private:
  ComplexMatrix tau_;
};

Dilation build_dilation(const PTSystem& sys, const DilationOptions& opts = {}, const Tolerances& tol = {});

/// (ψ; τψ)/‖√η ψ‖, a unit vector in Y_τ.
ComplexVector embed_state(const ComplexVector& psi, const Dilation& d);

/// e^{−itĤ}.
ComplexMatrix dilated_propagator(const Dilation& d, double t, const Tolerances& tol = {});

/// e^{−itĤ}·x̂ for x̂ ∈ Y_τ; NotInSubspace otherwise.
ComplexVector dilated_evolution(const Dilation& d, double t, const ComplexVector& xhat, const Tolerances& tol = {});

/// P₁Ĥᵏx = HᵏP₁x for k = 0..2n.
bool embedding_membership(const ComplexMatrix& hhat, const ComplexMatrix& h, const ComplexVector& x,
                          const Tolerances& tol = {});

}  // namespace ptsim
