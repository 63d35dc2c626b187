#pragma once

// Metric operators η with H†η = ηH: construction for unbroken H, signature
// extraction, and the η + η⁻¹ = tI analysis.

#include <optional>
#include <vector>

#include "ptsim/numkernel.hpp"
#include "ptsim/ptcore.hpp"

namespace ptsim {

struct MetricOperator {
  ComplexMatrix eta;
  bool positive_definite = false;
  double min_eigenvalue = 0.0;
  double hermiticity_residual = 0.0;
  double intertwining_residual = 0.0;  // ‖H†η − ηH‖_F against the source H
};

struct SignatureReport {
  std::vector<int> epsilons;  // ±1
  ComplexMatrix frame;        // Ξ with Ξ†ηΞ = diag(ε)
};

/// η = (ΨΨ†)⁻¹ from the unit-column eigenframe. NotUnbroken unless
/// classify(sys) is UnbrokenPT.
MetricOperator positive_metric(const PTSystem& sys, const Tolerances& tol = {});

/// Checks Hermiticity and intertwining; reports positivity.
MetricOperator verify_metric(const ComplexMatrix& h, const ComplexMatrix& eta, const Tolerances& tol = {});

/// Signs ε_i of η in the eigenframe of an unbroken H with simple spectrum.
SignatureReport metric_signature(const PTSystem& sys, const ComplexMatrix& eta, const Tolerances& tol = {});

struct ScalarSumMetric {
  MetricOperator metric;  // det(η) = 1
  double t = 0.0;         // η + η⁻¹ = tI
};

/// n = 2 only: rescale the positive metric to unit determinant.
ScalarSumMetric scalar_sum_metric_2d(const PTSystem& sys, const Tolerances& tol = {});

/// t with ‖η + η⁻¹ − tI‖_F small, if any (t = tr(η + η⁻¹)/n).
std::optional<double> verify_scalar_sum(const ComplexMatrix& eta, const Tolerances& tol = {});

struct ObstructionReport {
  double min_residual = 0.0;    // min over the grid of ‖η+η⁻¹−tI‖_F at the best t
  Complex obstruction_entry_13;  // (1,3) entry of A·Q⁻¹·Q⁻†·A + Q†Q
  std::size_t samples = 0;
  double max_entry_13_deviation = 0.0;  // max over grid of |entry13 − 1|
  std::size_t metric_family_dimension = 0;  // Hermitian solution space of H3†η = ηH3
  double extended_coupling_norm = 0.0;      // ‖η_{3,n−3}‖ over the H3 ⊕ α₀I solution basis
};

/// The 3×3 witness H3 = QΣQ⁻¹ with Q upper-triangular ones, Σ = diag(1,2,3).
ComplexMatrix obstruction_q();
ComplexMatrix obstruction_h3();

/// Grid search over η = Q⁻†·diag(a)·Q⁻¹, a ∈ [0.1,10]³ (21 log-spaced
/// points per axis), plus the exact (1,3) obstruction and the H3 ⊕ α₀I
/// coupling-block check (α₀ = 10, n = 4).
ObstructionReport scalar_sum_obstruction_demo(const Tolerances& tol = {});

/// max over the Hermitian metric basis of H3 ⊕ α₀·I_{n−3} of the
/// Frobenius norm of the off-diagonal coupling block.
double extended_coupling_block_norm(double alpha0, Eigen::Index n, const Tolerances& tol = {});

}  // namespace ptsim
