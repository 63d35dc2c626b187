#include <gtest/gtest.h>

#include <cmath>

#include "ptsim/dilation.hpp"
#include "ptsim/fixtures.hpp"
#include "ptsim/pipeline.hpp"
#include "expect_error.hpp"
#include "test_support.hpp"

namespace ptsim {
namespace {

using testing::code_of;
using testing::kPi;
using testing::max_abs;
using testing::Rng;

PTSystem random_system(Rng& rng, Eigen::Index n) {
  const ComplexMatrix h = rng.unbroken(n);
  return PTSystem(h, pt_pair_for_unbroken(h));
}

TEST(Dilation, TwoLevelClosedForms) {
  for (double a : {kPi / 6, kPi / 4, 1.0}) {
    for (double s : {1.0, 2.0}) {
      for (double e0 : {0.0, 1.0}) {
        const Dilation d = gunther_dilation(a, s, e0);
        const double c = std::cos(a), sn = std::sin(a);
        ComplexMatrix tau(2, 2);
        tau << 1, Complex(0, -sn), Complex(0, sn), 1;
        tau /= c;
        EXPECT_LT(max_abs(d.tau - tau), 1e-10);
        ComplexMatrix h1(2, 2);
        h1 << e0, s * c * c, s * c * c, e0;
        EXPECT_LT(max_abs(d.H1 - h1), 1e-10);
        EXPECT_LT(max_abs(d.H4 - h1), 1e-10);
        ComplexMatrix h2 = ComplexMatrix::Zero(2, 2);
        h2(0, 0) = Complex(0, s * sn * c);
        h2(1, 1) = Complex(0, -s * sn * c);
        EXPECT_LT(max_abs(d.H2 - h2), 1e-10);
        EXPECT_LT(max_abs(d.Hhat - gunther::hhat_tensor(a, s, e0)), 1e-10);
      }
    }
  }
}

TEST(Dilation, DefaultOptionsUseScaledPositiveMetric) {
  Rng rng(31);
  const PTSystem sys = random_system(rng, 3);
  const Dilation d = build_dilation(sys);
  EXPECT_NEAR(min_hermitian_eigenvalue(d.eta), 1.05, 1e-9);
  EXPECT_LT(d.H1.norm(), 1e-15);
  EXPECT_LT(hermiticity_residual(d.Hhat), 1e-12);
}

TEST(Dilation, SuppliedMetricBelowIdentity) {
  const PTSystem sys(gunther::hamiltonian(0.4, 1, 0), gunther::pt_pair());
  DilationOptions opts;
  opts.eta = 0.5 * gunther::eta(0.4);  // λ_min < 1
  const Dilation d = build_dilation(sys, opts);
  EXPECT_NEAR(min_hermitian_eigenvalue(d.eta), 1.05, 1e-9);
  opts.auto_scale = false;
  EXPECT_EQ(code_of([&] { build_dilation(sys, opts); }), ErrorCode::EtaNotGreaterThanI);
  opts.eta = -gunther::eta(0.4);
  EXPECT_EQ(code_of([&] { build_dilation(sys, opts); }), ErrorCode::NotPositiveDefinite);
}

TEST(Dilation, OptionErrors) {
  const PTSystem sys(gunther::hamiltonian(0.4, 1, 0), gunther::pt_pair());
  DilationOptions opts;
  opts.margin = 1.0;
  EXPECT_EQ(code_of([&] { build_dilation(sys, opts); }), ErrorCode::InvalidArgument);
  opts = {};
  opts.h1 = H1Choice::Supplied;
  EXPECT_EQ(code_of([&] { build_dilation(sys, opts); }), ErrorCode::InvalidArgument);
  ComplexMatrix nh(2, 2);
  nh << 0, 1, 0, 0;
  opts.h1_matrix = nh;
  EXPECT_EQ(code_of([&] { build_dilation(sys, opts); }), ErrorCode::SuppliedH1NotHermitian);
  opts.h1_matrix = identity(3);
  EXPECT_EQ(code_of([&] { build_dilation(sys, opts); }), ErrorCode::DimensionMismatch);
  ComplexMatrix broken(2, 2);
  broken << Complex(0, 2), 1, 1, Complex(0, -2);
  EXPECT_EQ(code_of([&] { build_dilation(PTSystem(broken, gunther::pt_pair())); }), ErrorCode::NotUnbroken);
}

TEST(Dilation, SuppliedHermitianH1IsKept) {
  Rng rng(32);
  const PTSystem sys = random_system(rng, 4);
  DilationOptions opts;
  opts.h1 = H1Choice::Supplied;
  opts.h1_matrix = rng.hermitian(4);
  const Dilation d = build_dilation(sys, opts);
  EXPECT_LT((d.H1 - *opts.h1_matrix).norm(), 1e-15);
  EXPECT_LT((d.H1 + d.H2 * d.tau - d.H).norm(), 1e-9);
  EXPECT_LT((d.H2.adjoint() + d.H4 * d.tau - d.tau * d.H).norm(), 1e-9);
}

TEST(TauSubspace, BasisProjectorAndMembership) {
  const ComplexMatrix tau = gunther::tau(0.8);
  const TauSubspace y(tau);
  EXPECT_EQ(y.dim(), 2);
  const ComplexMatrix p = y.projector();
  EXPECT_LT((p * p - p).norm(), 1e-13);
  EXPECT_LT(hermiticity_residual(p), 1e-14);
  EXPECT_LT(max_abs(p - gunther::projector_y(0.8)), 1e-12);
  ComplexVector x(4);
  x << Complex(0.3, 1), Complex(-2, 0.5), 0, 0;
  x.tail(2) = tau * x.head(2);
  EXPECT_TRUE(y.contains(x));
  x(3) += 1e-3;
  EXPECT_FALSE(y.contains(x));
  EXPECT_EQ(code_of([&] { y.contains(ComplexVector::Zero(3)); }), ErrorCode::DimensionMismatch);
}

TEST(EmbedState, UnitNormInSubspace) {
  const Dilation d = gunther_dilation(0.6, 1.5, 0.2);
  ComplexVector psi(2);
  psi << Complex(0.2, 0.9), Complex(1.1, -0.3);
  const ComplexVector x = embed_state(psi, d);
  EXPECT_NEAR(x.norm(), 1.0, 1e-14);
  EXPECT_TRUE(TauSubspace(d.tau).contains(x));
  EXPECT_EQ(code_of([&] { embed_state(ComplexVector::Zero(2), d); }), ErrorCode::ZeroVector);
  EXPECT_EQ(code_of([&] { embed_state(ComplexVector::Ones(3), d); }), ErrorCode::DimensionMismatch);
}

TEST(DilatedEvolution, TopBlockIsPTEvolution) {
  const double a = kPi / 5;
  const Dilation d = gunther_dilation(a, 1, 0.3);
  const ComplexVector psi = gunther::psi_initial();
  const ComplexVector x = embed_state(psi, d);
  const double w = x(0).real();  // (ψ; τψ)/‖√η ψ‖ with ψ = e₀
  for (double t : {0.1, 0.5, 1.0, 2.0, 5.0}) {
    const ComplexVector y = dilated_evolution(d, t, x);
    const ComplexVector ref = testing::taylor_exp(Complex(0, -t) * d.H) * psi * w;
    EXPECT_LT((y.head(2) - ref).norm(), 1e-10) << t;
    EXPECT_LT((y.tail(2) - d.tau * y.head(2)).norm(), 1e-10) << t;
    EXPECT_NEAR(y.norm(), 1.0, 1e-12);
  }
}

TEST(DilatedEvolution, RejectsOffSubspaceInput) {
  const Dilation d = gunther_dilation(0.5, 1, 0);
  ComplexVector x = ComplexVector::Zero(4);
  x(0) = 1;
  EXPECT_EQ(code_of([&] { dilated_evolution(d, 1.0, x); }), ErrorCode::NotInSubspace);
}

TEST(Membership, EmbeddedStatesPassGenericVectorsFail) {
  Rng rng(33);
  for (int trial = 0; trial < 6; ++trial) {
    const PTSystem sys = random_system(rng, 2 + trial % 3);
    const Dilation d = build_dilation(sys);
    const ComplexVector x = embed_state(rng.vector(sys.order()), d);
    EXPECT_TRUE(embedding_membership(d.Hhat, d.H, x));
    EXPECT_FALSE(embedding_membership(d.Hhat, d.H, rng.vector(2 * sys.order())));
  }
  EXPECT_TRUE(embedding_membership(identity(4), identity(2), ComplexVector::Zero(4)));
  EXPECT_EQ(code_of([] { embedding_membership(identity(4), identity(3), ComplexVector::Zero(4)); }),
            ErrorCode::DimensionMismatch);
}

}  // namespace
}  // namespace ptsim
