#include "ptsim/pipeline.hpp"

#include <cmath>
#include <random>
#include <string>
#include <utility>

#include "ptsim/errors.hpp"
#include "ptsim/fixtures.hpp"

namespace ptsim {

namespace {

constexpr double kHalfPi = 1.57079632679489661923;

std::vector<ComplexVector> first_half_basis(Eigen::Index n) {
  std::vector<ComplexVector> out;
  for (Eigen::Index j = 0; j < n; ++j) out.push_back(ComplexVector::Unit(2 * n, j));
  return out;
}

ComplexVector stack(const ComplexVector& top, const ComplexVector& bottom) {
  ComplexVector x(top.size() + bottom.size());
  x << top, bottom;
  return x;
}

double max_entry_gap(const ComplexMatrix& a, const ComplexMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

void require_order(const ComplexMatrix& m, Eigen::Index n, const char* what) {
  require_square(m, what);
  require_finite(m, what);
  if (m.rows() != n) fail(ErrorCode::DimensionMismatch, std::string(what) + " order differs from H");
}

}  // namespace

std::string_view scheme_name(Scheme s) noexcept {
  switch (s) {
    case Scheme::Identity:
      return "identity";
    case Scheme::MetricSandwich:
      return "metric_sandwich";
    case Scheme::Custom:
      return "custom";
  }
  return "unknown";
}

Scheme parse_scheme(std::string_view name) {
  if (name == "identity") return Scheme::Identity;
  if (name == "metric_sandwich" || name == "metric") return Scheme::MetricSandwich;
  if (name == "custom") return Scheme::Custom;
  fail(ErrorCode::InvalidArgument, "unknown scheme '" + std::string(name) + "'");
}

std::pair<ComplexMatrix, ComplexMatrix> scheme_operators(Scheme s, const ComplexMatrix& eta,
                                                         const std::optional<ComplexMatrix>& rho,
                                                         const std::optional<ComplexMatrix>& rho_prime,
                                                         const Tolerances& tol) {
  const Eigen::Index n = eta.rows();
  switch (s) {
    case Scheme::Identity:
      return {identity(n), identity(n)};
    case Scheme::MetricSandwich:
      return {inverse_sqrt_pd(eta, tol), principal_sqrt_psd(eta, tol)};
    case Scheme::Custom:
      if (!rho || !rho_prime) fail(ErrorCode::InvalidArgument, "custom scheme needs rho and rho_prime");
      require_order(*rho, n, "rho");
      require_order(*rho_prime, n, "rho_prime");
      return {*rho, *rho_prime};
  }
  fail(ErrorCode::InvalidArgument, "unknown scheme");
}

SimulationConfig make_config(Dilation d, Scheme scheme, double t, ComplexVector psi,
                             const std::optional<ComplexMatrix>& rho, const std::optional<ComplexMatrix>& rho_prime,
                             const Tolerances& tol) {
  tol.validate();
  if (!std::isfinite(t)) fail(ErrorCode::InvalidArgument, "t must be finite");
  if (psi.size() != d.order()) fail(ErrorCode::DimensionMismatch, "psi length differs from H order");
  SimulationConfig cfg;
  auto [r, rp] = scheme_operators(scheme, d.eta, rho, rho_prime, tol);
  cfg.rho = std::move(r);
  cfg.rho_prime = std::move(rp);
  cfg.dilation = std::move(d);
  cfg.scheme = scheme;
  cfg.t = t;
  cfg.psi = std::move(psi);
  return cfg;
}

StageOperators build_stage_operators(const Dilation& d, const ComplexMatrix& rho, const ComplexMatrix& rho_prime,
                                     const Tolerances& tol) {
  const Eigen::Index n = d.order();
  require_order(rho, n, "rho");
  require_order(rho_prime, n, "rho_prime");
  const auto x1 = first_half_basis(n);
  const TauSubspace y(d.tau);
  const auto ybasis = y.basis();

  std::vector<ComplexVector> prep_images;
  for (Eigen::Index j = 0; j < n; ++j) {
    const ComplexVector r = rho.col(j);
    prep_images.push_back(stack(r, d.tau * r));
  }
  std::vector<ComplexVector> post_images;
  for (const auto& yj : ybasis) {
    post_images.push_back(stack(rho_prime * yj.head(n), ComplexVector::Zero(n)));
  }

  const auto prep = complete(SubspaceMap::from_images(x1, ybasis, prep_images, tol), tol);
  const auto post = complete(SubspaceMap::from_images(ybasis, x1, post_images, tol), tol);

  StageOperators ops;
  ops.U_prep = prep.U;
  ops.P_Y = prep.P_N;
  ops.U_post = post.U;
  ops.P_X1 = post.P_N;
  ops.prep_scale = prep.scale;
  ops.post_scale = post.scale;
  return ops;
}

SimulationTrace run_simulation(const SimulationConfig& cfg, const Tolerances& tol) {
  return run_simulation(cfg, build_stage_operators(cfg.dilation, cfg.rho, cfg.rho_prime, tol), tol);
}

SimulationTrace run_simulation(const SimulationConfig& cfg, const StageOperators& ops, const Tolerances& tol) {
  tol.validate();
  const Dilation& d = cfg.dilation;
  const Eigen::Index n = d.order();
  if (cfg.psi.size() != n) fail(ErrorCode::DimensionMismatch, "psi length differs from H order");
  if (!(cfg.psi.norm() > 0.0)) fail(ErrorCode::ZeroVector, "input state is zero");
  const ComplexVector psi = cfg.psi.normalized();

  const ComplexVector direct = cfg.rho_prime * (matrix_exp(Complex(0.0, -cfg.t) * d.H, tol) * (cfg.rho * psi));
  const double scale = std::max(1.0, frobenius(cfg.rho_prime) * frobenius(cfg.rho));
  if (!(direct.norm() > tol.eq_tol * scale)) fail(ErrorCode::ZeroFinalState, "rho' U(t) rho psi vanishes");

  SimulationTrace tr;
  tr.xi1 = stack(psi, ComplexVector::Zero(n));

  const auto prepared = post_select(ops.U_prep * tr.xi1, ops.P_Y, tol);
  tr.xi2 = prepared.state;
  tr.p_prepare = prepared.probability;
  if (tr.p_prepare == 0.0) fail(ErrorCode::ZeroFinalState, "preparation branch has zero probability");

  tr.xi3 = dilated_propagator(d, cfg.t, tol) * tr.xi2;

  const auto finished = post_select(ops.U_post * tr.xi3, ops.P_X1, tol);
  tr.xi4 = finished.state;
  tr.p_post = finished.probability;
  if (tr.p_post == 0.0) fail(ErrorCode::ZeroFinalState, "post-simulation branch has zero probability");

  tr.xi5 = tr.xi4.head(n);
  tr.p_total = tr.p_prepare * tr.p_post;
  tr.final_formula_check = (tr.xi5 - direct.normalized()).norm();
  tr.direct_norm = direct.norm();

  if (cfg.samples > 0) {
    std::mt19937_64 gen(cfg.seed);
    ShotCounts shots;
    shots.trials = cfg.samples;
    shots.prepared = std::binomial_distribution<std::uint64_t>(cfg.samples, tr.p_prepare)(gen);
    shots.completed = std::binomial_distribution<std::uint64_t>(shots.prepared, tr.p_post)(gen);
    tr.shots = shots;
  }
  return tr;
}

Dilation gunther_dilation(double alpha, double s, double e0, const Tolerances& tol) {
  const PTSystem sys(gunther::hamiltonian(alpha, s, e0), gunther::pt_pair(), tol);
  DilationOptions opts;
  opts.eta = gunther::eta(alpha);
  opts.auto_scale = false;
  opts.h1 = H1Choice::PaperRecipe;
  return build_dilation(sys, opts, tol);
}

GuntherReport reproduce_gunther_example(double alpha, double s, double e0, double t, const Tolerances& tol) {
  if (!std::isfinite(alpha) || !(std::abs(alpha) < kHalfPi)) fail(ErrorCode::InvalidArgument, "need |alpha| < pi/2");
  if (!std::isfinite(s) || !std::isfinite(e0) || !std::isfinite(t)) {
    fail(ErrorCode::InvalidArgument, "parameters must be finite");
  }
  const Dilation d = gunther_dilation(alpha, s, e0, tol);
  const double c = std::cos(alpha);

  GuntherReport r;
  r.alpha = alpha;
  r.s = s;
  r.e0 = e0;
  r.t = t;
  r.tau = max_entry_gap(d.tau, gunther::tau(alpha));
  r.h1 = max_entry_gap(d.H1, gunther::h1(alpha, s, e0));
  r.h2 = max_entry_gap(d.H2, gunther::h2(alpha, s));
  r.h4 = max_entry_gap(d.H4, gunther::h4(alpha, s, e0));
  r.hhat_tensor = max_entry_gap(d.Hhat, gunther::hhat_tensor(alpha, s, e0));
  r.hhat_tensor_unscaled = max_entry_gap(d.Hhat, gunther::hhat_tensor_unscaled(alpha, s, e0));
  r.projector_y = max_entry_gap(TauSubspace(d.tau).projector(), gunther::projector_y(alpha));

  const ComplexVector psi = gunther::psi_initial();
  const ComplexVector psi_hat = stack(psi, gunther::chi_initial(alpha));
  const ComplexVector x1 = stack(psi, ComplexVector::Zero(2));

  const auto ops = build_stage_operators(d, identity(2), identity(2), tol);
  const ComplexVector prepared = ops.P_Y * (ops.U_prep * x1);
  const Complex amp = psi_hat.dot(prepared) / psi_hat.squaredNorm();
  r.amplitude = amp.real();
  r.amplitude_residual = std::abs(amp - c / 2.0);
  r.amplitude_orthogonal = (prepared - amp * psi_hat).norm();
  r.p_prepare = prepared.squaredNorm();
  r.reference_u_tau = (gunther::projector_y(alpha) * gunther::u_tau(alpha) * x1 - (c / 2.0) * psi_hat).norm();

  const ComplexVector evolved = dilated_propagator(d, t, tol) * psi_hat;
  const ComplexVector top = matrix_exp(Complex(0.0, -t) * d.H, tol) * psi;
  r.evolution_top = (evolved.head(2) - top).norm();
  r.evolution_bottom = (evolved.tail(2) - d.tau * evolved.head(2)).norm();
  return r;
}

}  // namespace ptsim
