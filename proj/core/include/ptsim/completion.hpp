#pragma once

// Unitary completion: any linear map A between two n-dimensional subspaces
// M, N of C^{2n} is realized, up to normalization, as "apply a unitary U,
// then project onto N". Post-selection turns that projection into a
// probabilistic physical step.

#include <vector>

#include "ptsim/numkernel.hpp"

namespace ptsim {

class SubspaceMap {
 public:
  /// `a` is the action in the given bases: A·u_j = Σ_i a(i,j)·v_i.
  /// Throws InvalidSubspaceMap unless both bases are orthonormal, of equal
  /// size n, in an ambient space of dimension exactly 2n.
  SubspaceMap(std::vector<ComplexVector> m_basis, std::vector<ComplexVector> n_basis, ComplexMatrix a,
              const Tolerances& tol = {});

  /// Builds the coordinate matrix from the images A·u_j (which must lie in N).
  static SubspaceMap from_images(std::vector<ComplexVector> m_basis, std::vector<ComplexVector> n_basis,
                                 const std::vector<ComplexVector>& images, const Tolerances& tol = {});

  const std::vector<ComplexVector>& m_basis() const { return m_basis_; }
  const std::vector<ComplexVector>& n_basis() const { return n_basis_; }
  const ComplexMatrix& A() const { return a_; }
  Eigen::Index dim() const { return a_.rows(); }
  Eigen::Index ambient() const { return 2 * a_.rows(); }

  /// A·v for v ∈ M, through basis coordinates.
  ComplexVector apply(const ComplexVector& v) const;

 private:
  std::vector<ComplexVector> m_basis_;
  std::vector<ComplexVector> n_basis_;
  ComplexMatrix a_;
};

struct CompletionResult {
  ComplexMatrix U;    // 2n × 2n unitary
  ComplexMatrix P_N;  // orthogonal projector onto N
  double scale = 0.0; // 1/sqrt(Σ_j ‖A u_j‖²), 0 for the zero map
};

/// P_N·U·v = scale·A·v for v ∈ M. ZeroMap when A = 0.
CompletionResult unitary_completion(const SubspaceMap& m, const Tolerances& tol = {});

/// U maps M onto N⊥, so P_N·U vanishes on M.
CompletionResult zero_map_completion(const SubspaceMap& m, const Tolerances& tol = {});

/// Dispatches to zero_map_completion for A = 0.
CompletionResult complete(const SubspaceMap& m, const Tolerances& tol = {});

struct PostSelection {
  ComplexVector state;  // normalized, or zero when the branch is empty
  double probability = 0.0;
};

/// Measure {P, I−P} and keep the P branch.
PostSelection post_select(const ComplexVector& state, const ComplexMatrix& p, const Tolerances& tol = {});

}  // namespace ptsim
