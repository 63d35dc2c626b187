#pragma once

// Reference systems: Pauli matrices, the two-level Günther–Samsonov family
//
//     H(α, s, E0) = [[E0 + i s sinα, s], [s, E0 − i s sinα]],   P = σx, T = I
//
// with its closed-form dilation data, and a fixed classification corpus.

#include <string>
#include <vector>

#include "ptsim/numkernel.hpp"
#include "ptsim/ptcore.hpp"

namespace ptsim {

ComplexMatrix sigma_x();
ComplexMatrix sigma_y();
ComplexMatrix sigma_z();

namespace gunther {

ComplexMatrix hamiltonian(double alpha, double s, double e0);
PTPair pt_pair();
/// (2/cos²α)·[[1, −i sinα], [i sinα, 1]].
ComplexMatrix eta(double alpha);

// Closed forms of the dilation built from eta(α) and the H1 recipe
// H1 = τHτη⁻¹ + Hη⁻¹.
ComplexMatrix tau(double alpha);
ComplexMatrix h1(double alpha, double s, double e0);
ComplexMatrix h2(double alpha, double s);
ComplexMatrix h4(double alpha, double s, double e0);
/// I₂⊗(E0·I₂ + s·cos²α·σx) − s·cosα·sinα·σy⊗σz.
ComplexMatrix hhat_tensor(double alpha, double s, double e0);
/// The same expression with the σy⊗σz coefficient printed without s, as it
/// commonly appears in the literature. Agrees with hhat_tensor only at s = 1.
ComplexMatrix hhat_tensor_unscaled(double alpha, double s, double e0);
/// Orthogonal projector onto Y_τ in closed form.
ComplexMatrix projector_y(double alpha);
/// A hand-built unitary with P_Y·U·(ψ_I; 0) = (cosα/2)·(ψ_I; χ_I).
ComplexMatrix u_tau(double alpha);
/// ψ_I = (1, 0).
ComplexVector psi_initial();
/// χ_I = τψ_I = (1, i sinα)/cosα.
ComplexVector chi_initial(double alpha);

}  // namespace gunther

struct CorpusEntry {
  std::string name;
  ComplexMatrix H;
  ComplexMatrix P;
  ComplexMatrix T;
  PTKind expected;
};

/// 20 PT-symmetric matrices: 10 unbroken, 5 broken-diagonalizable,
/// 5 defective, of orders 2 to 4.
std::vector<CorpusEntry> classification_corpus();

}  // namespace ptsim
