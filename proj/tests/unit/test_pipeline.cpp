#include <gtest/gtest.h>

#include <cmath>

#include "ptsim/fixtures.hpp"
#include "ptsim/pipeline.hpp"
#include "expect_error.hpp"
#include "test_support.hpp"

namespace ptsim {
namespace {

using testing::code_of;
using testing::kPi;
using testing::Rng;

ComplexVector e0_vec() { return gunther::psi_initial(); }

TEST(Scheme, NamesRoundTrip) {
  for (Scheme s : {Scheme::Identity, Scheme::MetricSandwich, Scheme::Custom}) {
    EXPECT_EQ(parse_scheme(scheme_name(s)), s);
  }
  EXPECT_EQ(parse_scheme("metric"), Scheme::MetricSandwich);
  EXPECT_EQ(code_of([] { parse_scheme("bogus"); }), ErrorCode::InvalidArgument);
}

TEST(Scheme, OperatorsPerScheme) {
  const ComplexMatrix eta = gunther::eta(0.5);
  auto [r, rp] = scheme_operators(Scheme::Identity, eta);
  EXPECT_EQ((r - identity(2)).norm(), 0.0);
  EXPECT_EQ((rp - identity(2)).norm(), 0.0);
  std::tie(r, rp) = scheme_operators(Scheme::MetricSandwich, eta);
  EXPECT_LT((rp * rp - eta).norm(), 1e-12);
  EXPECT_LT((rp * r - identity(2)).norm(), 1e-12);
  EXPECT_EQ(code_of([&] { scheme_operators(Scheme::Custom, eta); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([&] { scheme_operators(Scheme::Custom, eta, identity(3), identity(3)); }),
            ErrorCode::DimensionMismatch);
}

TEST(Simulation, HermitianTrivialDilationIsPlainUnitaryEvolution) {
  const ComplexMatrix h = sigma_x() + 0.3 * sigma_z();
  DilationOptions opts;
  opts.eta = 2.0 * identity(2);
  opts.auto_scale = false;
  const Dilation d = build_dilation(PTSystem(h, validate_pt_pair(identity(2), identity(2))), opts);
  EXPECT_LT((d.tau - identity(2)).norm(), 1e-14);
  ComplexVector psi(2);
  psi << 0.6, Complex(0, 0.8);
  double p_first = -1.0;
  for (double t : {0.0, 0.4, 1.3, 3.0}) {
    const auto tr = run_simulation(make_config(d, Scheme::Identity, t, psi));
    const ComplexVector ref = testing::taylor_exp(Complex(0, -t) * h) * psi;
    EXPECT_LT((tr.xi5 - ref).norm(), 1e-10) << t;
    if (p_first < 0) p_first = tr.p_total;
    EXPECT_NEAR(tr.p_total, p_first, 1e-12) << t;
  }
}

TEST(Simulation, MetricSandwichCoreIsUnitary) {
  const Dilation d = gunther_dilation(kPi / 6, 1, 0);
  const auto tr = run_simulation(make_config(d, Scheme::MetricSandwich, 1.0, e0_vec()));
  EXPECT_NEAR(tr.direct_norm, 1.0, 1e-10);
  EXPECT_LT(tr.final_formula_check, 1e-10);
  const ComplexMatrix eta = gunther::eta(kPi / 6);
  const ComplexMatrix root = principal_sqrt_psd(eta);
  const ComplexVector ref =
      root * testing::taylor_exp(Complex(0, -1.0) * d.H) * root.inverse() * e0_vec();
  EXPECT_LT((tr.xi5 - ref).norm(), 1e-10);
}

TEST(Simulation, IdentitySchemeTwoLevel) {
  const Dilation d = gunther_dilation(kPi / 6, 1, 0);
  for (double t : {0.3, 1.0, 2.5}) {
    const auto tr = run_simulation(make_config(d, Scheme::Identity, t, e0_vec()));
    const ComplexVector u = testing::taylor_exp(Complex(0, -t) * d.H) * e0_vec();
    EXPECT_LT((tr.xi5 - u.normalized()).norm(), 1e-10);
    EXPECT_NEAR(tr.p_prepare, 0.5, 1e-12);
  }
}

TEST(Simulation, TraceInvariants) {
  const Dilation d = gunther_dilation(0.9, 1.2, 0.5);
  const auto tr = run_simulation(make_config(d, Scheme::Identity, 0.7, e0_vec()));
  for (const auto* x : {&tr.xi1, &tr.xi2, &tr.xi3, &tr.xi4, &tr.xi5}) EXPECT_NEAR(x->norm(), 1.0, 1e-12);
  EXPECT_TRUE(TauSubspace(d.tau).contains(tr.xi2));
  EXPECT_LT(tr.xi4.tail(2).norm(), 1e-12);
  EXPECT_NEAR(tr.p_total, tr.p_prepare * tr.p_post, 1e-15);
  EXPECT_GE(tr.p_total, 0.0);
  EXPECT_LE(tr.p_total, 1.0);
}

TEST(Simulation, MetricSchemeLossIsTimeIndependentIdentityIsNot) {
  const Dilation d = gunther_dilation(kPi / 4, 1, 0);
  const auto cfg_at = [&](Scheme s, double t) { return make_config(d, s, t, e0_vec()); };
  const double m0 = run_simulation(cfg_at(Scheme::MetricSandwich, 0.2)).p_total;
  const double i0 = run_simulation(cfg_at(Scheme::Identity, 0.2)).p_total;
  double identity_spread = 0.0;
  for (double t : {0.5, 1.0, 2.0, 4.0}) {
    EXPECT_NEAR(run_simulation(cfg_at(Scheme::MetricSandwich, t)).p_total, m0, 1e-10) << t;
    identity_spread = std::max(identity_spread, std::abs(run_simulation(cfg_at(Scheme::Identity, t)).p_total - i0));
  }
  EXPECT_GT(identity_spread, 1e-3);
}

TEST(Simulation, BitIdenticalReruns) {
  const Dilation d = gunther_dilation(0.4, 1, 0);
  auto cfg = make_config(d, Scheme::Identity, 1.1, e0_vec());
  cfg.samples = 500;
  cfg.seed = 99;
  const auto a = run_simulation(cfg);
  const auto b = run_simulation(cfg);
  EXPECT_EQ((a.xi5 - b.xi5).norm(), 0.0);
  EXPECT_EQ(a.p_total, b.p_total);
  ASSERT_TRUE(a.shots && b.shots);
  EXPECT_EQ(a.shots->prepared, b.shots->prepared);
  EXPECT_EQ(a.shots->completed, b.shots->completed);
  EXPECT_LE(a.shots->completed, a.shots->prepared);
  EXPECT_LE(a.shots->prepared, 500u);
}

TEST(Simulation, SampledCountsTrackProbabilities) {
  const Dilation d = gunther_dilation(0.4, 1, 0);
  auto cfg = make_config(d, Scheme::Identity, 1.1, e0_vec());
  cfg.samples = 200000;
  cfg.seed = 5;
  const auto tr = run_simulation(cfg);
  ASSERT_TRUE(tr.shots);
  const double f = static_cast<double>(tr.shots->completed) / cfg.samples;
  EXPECT_NEAR(f, tr.p_total, 6.0 * std::sqrt(tr.p_total * (1 - tr.p_total) / cfg.samples));
  EXPECT_FALSE(run_simulation(make_config(d, Scheme::Identity, 1.1, e0_vec())).shots.has_value());
}

TEST(Simulation, Errors) {
  const Dilation d = gunther_dilation(0.4, 1, 0);
  ComplexMatrix kill = ComplexMatrix::Zero(2, 2);
  kill(0, 0) = 1.0;
  ComplexVector psi(2);
  psi << 0, 1;
  // ρ projects psi to zero.
  EXPECT_EQ(code_of([&] { run_simulation(make_config(d, Scheme::Custom, 0.0, psi, kill, identity(2))); }),
            ErrorCode::ZeroFinalState);
  EXPECT_EQ(code_of([&] { run_simulation(make_config(d, Scheme::Custom, 0.3, psi, identity(2), ComplexMatrix::Zero(2, 2))); }),
            ErrorCode::ZeroFinalState);
  auto cfg = make_config(d, Scheme::Identity, 1.0, psi);
  cfg.psi = ComplexVector::Zero(2);
  EXPECT_EQ(code_of([&] { run_simulation(cfg); }), ErrorCode::ZeroVector);
  EXPECT_EQ(code_of([&] { make_config(d, Scheme::Identity, 1.0, ComplexVector::Ones(3)); }),
            ErrorCode::DimensionMismatch);
  EXPECT_EQ(code_of([&] { make_config(d, Scheme::Identity, std::nan(""), psi); }), ErrorCode::InvalidArgument);
}

TEST(Simulation, RandomCustomSchemesMatchClosedForm) {
  Rng rng(51);
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::Index n = 2 + trial % 3;
    const ComplexMatrix h = rng.unbroken(n);
    const Dilation d = build_dilation(PTSystem(h, pt_pair_for_unbroken(h)));
    const ComplexMatrix rho = rng.frame(n), rho_p = rng.frame(n);
    const ComplexVector psi = rng.unit_vector(n);
    const double t = rng.uniform(0.0, 3.0);
    const auto tr = run_simulation(make_config(d, Scheme::Custom, t, psi, rho, rho_p));
    const ComplexVector ref = (rho_p * testing::taylor_exp(Complex(0, -t) * h) * rho * psi).normalized();
    EXPECT_LT((tr.xi5 - ref).norm(), 1e-9) << trial;
    EXPECT_LT(tr.final_formula_check, 1e-10) << trial;
  }
}

TEST(WorkedExample, SixthPiAllResidualsSmall) {
  const auto r = reproduce_gunther_example(kPi / 6, 1, 0, 1.0);
  for (double v : {r.tau, r.h1, r.h2, r.h4, r.hhat_tensor, r.hhat_tensor_unscaled, r.projector_y,
                   r.amplitude_residual, r.amplitude_orthogonal, r.reference_u_tau}) {
    EXPECT_LE(v, 1e-10);
  }
  EXPECT_LE(r.evolution_top, 1e-8);
  EXPECT_LE(r.evolution_bottom, 1e-8);
  EXPECT_NEAR(r.amplitude, std::cos(kPi / 6) / 2, 1e-10);
  EXPECT_NEAR(r.p_prepare, 0.5, 1e-12);
}

TEST(WorkedExample, HermitianLimit) {
  const auto r = reproduce_gunther_example(0.0, 1.0, 0.5, 1.0);
  EXPECT_NEAR(r.amplitude, 0.5, 1e-12);
  const Dilation d = gunther_dilation(0.0, 1.0, 0.5);
  EXPECT_LT((d.eta - 2.0 * identity(2)).norm(), 1e-14);
  EXPECT_LT((d.tau - identity(2)).norm(), 1e-14);
  EXPECT_LT(d.H2.norm(), 1e-14);
  EXPECT_LT(d.Hhat.topRightCorner(2, 2).norm(), 1e-14);
}

TEST(WorkedExample, OtherParameters) {
  const auto r = reproduce_gunther_example(kPi / 3, 2, 1, 1.5);
  for (double v : {r.tau, r.h1, r.h2, r.h4, r.hhat_tensor, r.projector_y, r.amplitude_residual}) EXPECT_LE(v, 1e-10);
  // The literal printed tensor form omits s on the σy⊗σz term.
  EXPECT_NEAR(r.hhat_tensor_unscaled, std::cos(kPi / 3) * std::sin(kPi / 3), 1e-10);
  EXPECT_EQ(code_of([] { reproduce_gunther_example(kPi / 2, 1, 0, 1); }), ErrorCode::InvalidArgument);
}

}  // namespace
}  // namespace ptsim
