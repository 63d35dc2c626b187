#include <gtest/gtest.h>

#include <cmath>

#include "ptsim/completion.hpp"
#include "ptsim/fixtures.hpp"
#include "ptsim/metric.hpp"
#include "ptsim/pipeline.hpp"
#include "test_support.hpp"

// Randomized invariants. Every loop is seeded, so failures reproduce.

namespace ptsim {
namespace {

using testing::Rng;

PTSystem random_system(Rng& rng, Eigen::Index n) {
  const ComplexMatrix h = rng.unbroken(n);
  return PTSystem(h, pt_pair_for_unbroken(h));
}

TEST(Property, MetricNormIsConserved) {
  Rng rng(71);
  for (int i = 0; i < 50; ++i) {
    const PTSystem sys = random_system(rng, 2 + i % 3);
    const ComplexMatrix root = principal_sqrt_psd(positive_metric(sys).eta);
    const ComplexVector psi = rng.unit_vector(sys.order());
    const double t = rng.uniform(0.0, 5.0);
    const ComplexVector u = matrix_exp(Complex(0, -t) * sys.H()) * psi;
    EXPECT_NEAR((root * u).norm(), (root * psi).norm(), 1e-10) << i;
  }
}

TEST(Property, ClassificationIsSimilarityInvariant) {
  Rng rng(72);
  for (const auto& e : classification_corpus()) {
    for (int k = 0; k < 3; ++k) {
      const ComplexMatrix s = rng.frame(e.H.rows());
      EXPECT_EQ(classify(s * e.H * s.inverse()).kind, e.expected) << e.name << " frame " << k;
    }
  }
}

TEST(Property, MembershipSeparatesEmbeddedFromGeneric) {
  Rng rng(73);
  for (int i = 0; i < 20; ++i) {
    const PTSystem sys = random_system(rng, 2 + i % 3);
    const Dilation d = build_dilation(sys);
    EXPECT_TRUE(embedding_membership(d.Hhat, d.H, embed_state(rng.vector(sys.order()), d))) << i;
    EXPECT_FALSE(embedding_membership(d.Hhat, d.H, rng.vector(2 * sys.order()))) << i;
  }
}

TEST(Property, DilationConstraintsHoldForRandomSystems) {
  Rng rng(74);
  for (int i = 0; i < 30; ++i) {
    const PTSystem sys = random_system(rng, 2 + i % 3);
    DilationOptions opts;
    if (i % 2) {
      opts.h1 = H1Choice::Supplied;
      opts.h1_matrix = rng.hermitian(sys.order());
    }
    const Dilation d = build_dilation(sys, opts);
    EXPECT_LE(hermiticity_residual(d.Hhat), 1e-10);
    EXPECT_LE((d.H1 + d.H2 * d.tau - d.H).norm(), 1e-10 * std::max(1.0, d.H.norm()));
    EXPECT_LE((d.H2.adjoint() + d.H4 * d.tau - d.tau * d.H).norm(), 1e-10 * std::max(1.0, d.H.norm()));
  }
}

TEST(Property, CompletionRealizesNormalizedMap) {
  Rng rng(75);
  for (int i = 0; i < 20; ++i) {
    const Eigen::Index n = 1 + i % 4;
    const ComplexMatrix mq = rng.orthonormal_columns(2 * n, n);
    const SubspaceMap m(columns_of(mq), columns_of(rng.orthonormal_columns(2 * n, n)), rng.matrix(n, n));
    const auto r = complete(m);
    const ComplexVector v = mq * rng.vector(n);
    EXPECT_LT(((r.P_N * r.U * v).normalized() - m.apply(v).normalized()).norm(), 1e-9) << i;
  }
}

TEST(Property, PostSelectionBranchesPartitionProbability) {
  Rng rng(76);
  for (int i = 0; i < 30; ++i) {
    const Eigen::Index n = 2 + i % 6;
    const ComplexMatrix q = rng.orthonormal_columns(n, 1 + i % (n - 1));
    const ComplexMatrix p = q * q.adjoint();
    const ComplexVector s = rng.unit_vector(n);
    EXPECT_NEAR(post_select(s, p).probability + post_select(s, identity(n) - p).probability, 1.0, 1e-12);
  }
}

TEST(Property, PipelineClosedFormUnderRandomSchemes) {
  Rng rng(77);
  for (int i = 0; i < 15; ++i) {
    const PTSystem sys = random_system(rng, 2 + i % 3);
    const Dilation d = build_dilation(sys);
    const auto tr = run_simulation(make_config(d, Scheme::Custom, rng.uniform(0.0, 3.0), rng.unit_vector(sys.order()),
                                               rng.frame(sys.order()), rng.frame(sys.order())));
    EXPECT_LE(tr.final_formula_check, 1e-10) << i;
    EXPECT_GE(tr.p_total, 0.0);
    EXPECT_LE(tr.p_total, 1.0);
  }
}

}  // namespace
}  // namespace ptsim
