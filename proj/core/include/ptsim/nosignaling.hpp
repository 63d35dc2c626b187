#pragma once

// Two-party signaling test. Alice and Bob share (|00⟩ + |11⟩)/√2; Alice
// applies U_A ∈ {I, σx}, then her qubit evolves under
// H0 = s·[[i sinα, 1], [1, −i sinα]] (through ρ′U0(t)ρ); both measure σy.
// ΔS compares Bob's +y marginal between Alice's two choices.
//
// Joint vectors use Alice ⊗ Bob ordering; with the dilation ancilla the
// order is ancilla ⊗ Alice ⊗ Bob.

#include <array>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "ptsim/pipeline.hpp"

namespace ptsim {

enum class ChannelMode {
  Direct,     ///< apply ρ′U0(t)ρ on Alice's factor, normalize the joint state
  Simulated,  ///< run the dilated pipeline on ancilla ⊗ Alice, identity on Bob
};

std::string_view mode_name(ChannelMode m) noexcept;
/// Accepts "direct" and "simulated".
ChannelMode parse_mode(std::string_view name);

/// (|+x+x⟩ + |−x−x⟩)/√2 = (1, 0, 0, 1)/√2.
ComplexVector bell_plus_x_state();

/// |+y⟩ = (1, i)/√2, |−y⟩ = (1, −i)/√2.
ComplexVector y_basis_state(int sign);

struct ExperimentConfig {
  double alpha = 0.0;
  double s = 1.0;
  double e0 = 0.0;
  double t = 1.0;
  Scheme scheme = Scheme::Identity;
  ChannelMode mode = ChannelMode::Direct;
  std::optional<ComplexMatrix> rho;        ///< custom scheme only
  std::optional<ComplexMatrix> rho_prime;  ///< custom scheme only
};

/// Indices: k ∈ {0,1} for U_A ∈ {I, σx}; a, b ∈ {0,1} for {+y, −y}.
struct JointStats {
  std::array<std::array<std::array<double, 2>, 2>, 2> table{};  // [k][a][b]
  std::array<std::array<double, 2>, 2> bob_marginals{};         // [k][b]
  double delta_S = 0.0;
  std::array<double, 2> p_success{1.0, 1.0};  // per k; 1 in direct mode
};

/// ZeroBranch when a channel annihilates the state; InvalidArgument when
/// |alpha| ≥ π/2.
JointStats run_experiment(const ExperimentConfig& cfg, const Tolerances& tol = {});

/// Bob's side of the unitary 8-dimensional evolution e^{−itĤ0⊗I}·(U_prep⊗I)
/// with no post-selection at all.
struct WholeSystemReport {
  std::array<std::array<double, 2>, 2> bob_marginals{};  // [k][b]
  double marginal_gap = 0.0;       // |P(+y|A1) − P(+y|A2)|
  double reduced_state_gap = 0.0;  // ‖ρ_B(A1) − ρ_B(A2)‖_F
};

WholeSystemReport whole_system_marginals(const ExperimentConfig& cfg, const Tolerances& tol = {});

struct SweepRow {
  double alpha = 0.0;
  double t = 0.0;
  Scheme scheme = Scheme::Identity;
  double delta_S = 0.0;
  double p_success_1 = 1.0;
  double p_success_2 = 1.0;
};

/// Grid over alphas × ts (alpha-major). `base` supplies s, e0, scheme, mode.
/// jobs > 1 evaluates points on worker threads; the row order is fixed.
std::vector<SweepRow> sweep_delta_s(const std::vector<double>& alphas, const std::vector<double>& ts,
                                    const ExperimentConfig& base, unsigned jobs = 1, const Tolerances& tol = {});

/// Header plus one line per row: alpha,t,scheme,delta_S,p_success_1,p_success_2.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace ptsim
