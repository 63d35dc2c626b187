#include "ptsim/nosignaling.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <ostream>
#include <string>
#include <thread>

#include "ptsim/errors.hpp"
#include "ptsim/fixtures.hpp"
#include "ptsim/metric.hpp"

namespace ptsim {

namespace {

constexpr double kHalfPi = 1.57079632679489661923;

void validate(const ExperimentConfig& cfg) {
  if (!std::isfinite(cfg.alpha) || !(std::abs(cfg.alpha) < kHalfPi)) {
    fail(ErrorCode::InvalidArgument, "need |alpha| < pi/2 for an unbroken H0");
  }
  if (!std::isfinite(cfg.s) || !std::isfinite(cfg.e0) || !std::isfinite(cfg.t)) {
    fail(ErrorCode::InvalidArgument, "parameters must be finite");
  }
}

ComplexMatrix alice_choice(int k) { return k == 0 ? identity(2) : sigma_x(); }

ComplexVector prepared_joint(int k) { return kron(alice_choice(k), identity(2)) * bell_plus_x_state(); }

void fill_measurements(const ComplexVector& joint, int k, JointStats& st) {
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const ComplexVector ab = kron(y_basis_state(a == 0 ? 1 : -1), y_basis_state(b == 0 ? 1 : -1));
      st.table[k][a][b] = std::norm(ab.dot(joint));
    }
  }
  for (int b = 0; b < 2; ++b) st.bob_marginals[k][b] = st.table[k][0][b] + st.table[k][1][b];
}

std::pair<ComplexMatrix, ComplexMatrix> rho_pair(const ExperimentConfig& cfg, const ComplexMatrix& eta,
                                                 const Tolerances& tol) {
  return scheme_operators(cfg.scheme, eta, cfg.rho, cfg.rho_prime, tol);
}

ComplexVector embed_ancilla_zero(const ComplexVector& joint) {
  ComplexVector x = ComplexVector::Zero(2 * joint.size());
  x.head(joint.size()) = joint;
  return x;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string_view mode_name(ChannelMode m) noexcept { return m == ChannelMode::Direct ? "direct" : "simulated"; }

ChannelMode parse_mode(std::string_view name) {
  if (name == "direct") return ChannelMode::Direct;
  if (name == "simulated") return ChannelMode::Simulated;
  fail(ErrorCode::InvalidArgument, "unknown mode '" + std::string(name) + "'");
}

ComplexVector bell_plus_x_state() {
  const ComplexVector plus = ComplexVector::Ones(2) / std::sqrt(2.0);
  ComplexVector minus(2);
  minus << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
  return (kron(plus, plus) + kron(minus, minus)) / std::sqrt(2.0);
}

ComplexVector y_basis_state(int sign) {
  ComplexVector v(2);
  v << 1.0, Complex(0.0, sign >= 0 ? 1.0 : -1.0);
  return v / std::sqrt(2.0);
}

JointStats run_experiment(const ExperimentConfig& cfg, const Tolerances& tol) {
  tol.validate();
  validate(cfg);
  const Complex bob_phase = std::polar(1.0, -cfg.t);
  JointStats st;

  if (cfg.mode == ChannelMode::Direct) {
    const ComplexMatrix h0 = gunther::hamiltonian(cfg.alpha, cfg.s, cfg.e0);
    const auto metric = verify_metric(h0, gunther::eta(cfg.alpha), tol);
    const auto [rho, rho_prime] = rho_pair(cfg, metric.eta, tol);
    const ComplexMatrix channel = rho_prime * matrix_exp(Complex(0.0, -cfg.t) * h0, tol) * rho;
    const ComplexMatrix joint_op = kron(channel, identity(2));
    for (int k = 0; k < 2; ++k) {
      const ComplexVector out = bob_phase * (joint_op * prepared_joint(k));
      if (!(out.squaredNorm() > tol.psd_tol)) fail(ErrorCode::ZeroBranch, "channel annihilates the joint state");
      fill_measurements(out.normalized(), k, st);
      st.p_success[k] = 1.0;
    }
  } else {
    const Dilation d = gunther_dilation(cfg.alpha, cfg.s, cfg.e0, tol);
    const auto [rho, rho_prime] = rho_pair(cfg, d.eta, tol);
    const auto ops = build_stage_operators(d, rho, rho_prime, tol);
    const ComplexMatrix i2 = identity(2);
    const ComplexMatrix u_prep = kron(ops.U_prep, i2);
    const ComplexMatrix p_y = kron(ops.P_Y, i2);
    const ComplexMatrix evolve = bob_phase * kron(dilated_propagator(d, cfg.t, tol), i2);
    const ComplexMatrix u_post = kron(ops.U_post, i2);
    const ComplexMatrix p_x1 = kron(ops.P_X1, i2);
    for (int k = 0; k < 2; ++k) {
      const auto prepared = post_select(u_prep * embed_ancilla_zero(prepared_joint(k)), p_y, tol);
      if (prepared.probability == 0.0) fail(ErrorCode::ZeroBranch, "preparation branch is empty");
      const auto finished = post_select(u_post * (evolve * prepared.state), p_x1, tol);
      if (finished.probability == 0.0) fail(ErrorCode::ZeroBranch, "post-simulation branch is empty");
      fill_measurements(finished.state.head(4), k, st);
      st.p_success[k] = prepared.probability * finished.probability;
    }
  }
  st.delta_S = std::abs(st.bob_marginals[0][0] - st.bob_marginals[1][0]);
  return st;
}

WholeSystemReport whole_system_marginals(const ExperimentConfig& cfg, const Tolerances& tol) {
  tol.validate();
  validate(cfg);
  const Dilation d = gunther_dilation(cfg.alpha, cfg.s, cfg.e0, tol);
  const auto [rho, rho_prime] = rho_pair(cfg, d.eta, tol);
  const auto ops = build_stage_operators(d, rho, rho_prime, tol);
  const ComplexMatrix i2 = identity(2);
  const ComplexMatrix unitary =
      std::polar(1.0, -cfg.t) * kron(dilated_propagator(d, cfg.t, tol), i2) * kron(ops.U_prep, i2);

  WholeSystemReport rep;
  std::array<ComplexMatrix, 2> reduced;
  for (int k = 0; k < 2; ++k) {
    const ComplexVector state = unitary * embed_ancilla_zero(prepared_joint(k));
    // Column i holds the Bob amplitudes for ancilla⊗Alice index i.
    const Eigen::Map<const ComplexMatrix> m(state.data(), 2, 4);
    reduced[k] = m * m.adjoint();
    for (int b = 0; b < 2; ++b) {
      const ComplexVector y = y_basis_state(b == 0 ? 1 : -1);
      rep.bob_marginals[k][b] = y.dot(reduced[k] * y).real();
    }
  }
  rep.marginal_gap = std::abs(rep.bob_marginals[0][0] - rep.bob_marginals[1][0]);
  rep.reduced_state_gap = (reduced[0] - reduced[1]).norm();
  return rep;
}

std::vector<SweepRow> sweep_delta_s(const std::vector<double>& alphas, const std::vector<double>& ts,
                                    const ExperimentConfig& base, unsigned jobs, const Tolerances& tol) {
  tol.validate();
  const std::size_t total = alphas.size() * ts.size();
  std::vector<SweepRow> rows(total);
  std::vector<std::exception_ptr> errors(total);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t idx = next++; idx < total; idx = next++) {
      ExperimentConfig cfg = base;
      cfg.alpha = alphas[idx / ts.size()];
      cfg.t = ts[idx % ts.size()];
      try {
        const auto st = run_experiment(cfg, tol);
        rows[idx] = {cfg.alpha, cfg.t, cfg.scheme, st.delta_S, st.p_success[0], st.p_success[1]};
      } catch (...) {
        errors[idx] = std::current_exception();
      }
    }
  };

  const unsigned n_threads = static_cast<unsigned>(std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(total, 1)));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "alpha,t,scheme,delta_S,p_success_1,p_success_2\r\n";
  for (const auto& r : rows) {
    out << fmt(r.alpha) << ',' << fmt(r.t) << ',' << scheme_name(r.scheme) << ',' << fmt(r.delta_S) << ','
        << fmt(r.p_success_1) << ',' << fmt(r.p_success_2) << "\r\n";
  }
}

}  // namespace ptsim
