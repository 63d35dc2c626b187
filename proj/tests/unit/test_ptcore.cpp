#include <gtest/gtest.h>

#include "ptsim/fixtures.hpp"
#include "ptsim/ptcore.hpp"
#include "expect_error.hpp"
#include "test_support.hpp"

namespace ptsim {
namespace {

using testing::code_of;
using testing::Rng;

TEST(PTPair, ValidPairsAccepted) {
  EXPECT_NO_THROW(validate_pt_pair(identity(2), identity(2)));
  EXPECT_NO_THROW(validate_pt_pair(sigma_x(), identity(2)));
  const PTPair p = gunther::pt_pair();
  EXPECT_LT((p.PT() - sigma_x()).norm(), 1e-15);
}

TEST(PTPair, ViolationsRaiseSpecificCodes) {
  EXPECT_EQ(code_of([] { validate_pt_pair(2.0 * identity(2), identity(2)); }), ErrorCode::NotInvolutoryP);
  ComplexMatrix t = identity(2);
  t(0, 0) = 2.0;
  EXPECT_EQ(code_of([&] { validate_pt_pair(identity(2), t); }), ErrorCode::NotInvolutoryT);
  // P = σz, T = σx: both involutions, but σz·σx ≠ σx·σz.
  EXPECT_EQ(code_of([] { validate_pt_pair(sigma_z(), sigma_x()); }), ErrorCode::NonCommuting);
  EXPECT_EQ(code_of([] { validate_pt_pair(identity(2), identity(3)); }), ErrorCode::DimensionMismatch);
  EXPECT_EQ(code_of([] { validate_pt_pair(ComplexMatrix::Zero(2, 3), identity(2)); }), ErrorCode::NonSquare);
}

TEST(PTPair, ApplyIsAntiLinear) {
  const PTPair p = gunther::pt_pair();
  ComplexVector v(2);
  v << Complex(1, 2), Complex(-0.5, 0.25);
  const Complex c(0.3, -1.1);
  EXPECT_LT((p.apply(c * v) - std::conj(c) * p.apply(v)).norm(), 1e-15);
}

TEST(PTSystem, RejectsNonSymmetricHamiltonian) {
  ComplexMatrix h(2, 2);
  h << Complex(0, 1), 1, 1, Complex(0, 1);
  EXPECT_EQ(code_of([&] { PTSystem(h, gunther::pt_pair()); }), ErrorCode::NotPTSymmetric);
  EXPECT_EQ(code_of([] { PTSystem(identity(3), gunther::pt_pair()); }), ErrorCode::DimensionMismatch);
}

TEST(Classify, CorpusMatchesExpectedKinds) {
  const auto corpus = classification_corpus();
  ASSERT_EQ(corpus.size(), 20u);
  int unbroken = 0, broken = 0, defective = 0;
  for (const auto& e : corpus) {
    const auto pt = validate_pt_pair(e.P, e.T);
    const auto c = classify(e.H, pt);
    EXPECT_EQ(c.kind, e.expected) << e.name;
    EXPECT_EQ(c.kind, classify(e.H).kind) << e.name;
    unbroken += e.expected == PTKind::UnbrokenPT;
    broken += e.expected == PTKind::BrokenDiagonalizable;
    defective += e.expected == PTKind::Defective;
  }
  EXPECT_EQ(unbroken, 10);
  EXPECT_EQ(broken, 5);
  EXPECT_EQ(defective, 5);
}

TEST(Classify, SpectrumSortedAndEigenframePresentWhenDiagonalizable) {
  const auto c = classify(gunther::hamiltonian(testing::kPi / 6, 1, 0), gunther::pt_pair());
  ASSERT_EQ(c.spectrum.size(), 2);
  EXPECT_NEAR(c.spectrum(0).real(), -std::cos(testing::kPi / 6), 1e-12);
  EXPECT_NEAR(c.spectrum(1).real(), std::cos(testing::kPi / 6), 1e-12);
  EXPECT_TRUE(c.eigenframe.has_value());
  ComplexMatrix j(2, 2);
  j << 2, 1, 0, 2;
  EXPECT_FALSE(classify(j).eigenframe.has_value());
}

TEST(Classify, NotPTSymmetricUnderGivenPair) {
  ComplexMatrix h(2, 2);
  h << 1, 2, 3, 4;
  EXPECT_EQ(classify(h, gunther::pt_pair()).kind, PTKind::NotPTSymmetric);
}

TEST(Classify, GainLossThresholdAtUnitCoupling) {
  // [[iγ, 1], [1, −iγ]] has eigenvalues ±sqrt(1 − γ²).
  for (double g : {0.0, 0.3, 0.9, 0.999}) {
    ComplexMatrix h(2, 2);
    h << Complex(0, g), 1, 1, Complex(0, -g);
    EXPECT_EQ(classify(h, gunther::pt_pair()).kind, PTKind::UnbrokenPT) << g;
  }
  for (double g : {1.001, 1.5, 4.0}) {
    ComplexMatrix h(2, 2);
    h << Complex(0, g), 1, 1, Complex(0, -g);
    EXPECT_EQ(classify(h, gunther::pt_pair()).kind, PTKind::BrokenDiagonalizable) << g;
  }
}

TEST(CanonicalForm, DiagonalizesAndReconstructsPT) {
  for (const auto& e : classification_corpus()) {
    if (e.expected == PTKind::Defective) continue;
    const PTSystem sys(e.H, validate_pt_pair(e.P, e.T));
    const auto cf = canonical_form(sys);
    const ComplexMatrix psi_inv = cf.Psi.inverse();
    EXPECT_LT((psi_inv * e.H * cf.Psi - cf.J).norm(), 1e-9 * std::max(1.0, e.H.norm())) << e.name;
    EXPECT_LT((cf.J - ComplexMatrix(cf.J.diagonal().asDiagonal())).norm(), 1e-12) << e.name;
    const ComplexMatrix pt = construct_pt_from_eigenframe(cf.Psi, cf.K);
    EXPECT_LT((pt - sys.pt().PT()).norm(), 1e-8) << e.name;
  }
}

TEST(CanonicalForm, BrokenPairsAreAdjacentConjugates) {
  ComplexMatrix h(2, 2);
  h << Complex(0, 2), 1, 1, Complex(0, -2);
  const PTSystem sys(h, gunther::pt_pair());
  const auto cf = canonical_form(sys);
  EXPECT_NEAR(std::abs(cf.J(0, 0) - std::conj(cf.J(1, 1))), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(cf.K(0, 1)), 1.0, 1e-10);
  EXPECT_NEAR(std::abs(cf.K(0, 0)), 0.0, 1e-10);
}

TEST(CanonicalForm, DefectiveRaises) {
  ComplexMatrix h(2, 2);
  h << Complex(0, 1), 1, 1, Complex(0, -1);
  const PTSystem sys(h, gunther::pt_pair());
  EXPECT_EQ(code_of([&] { canonical_form(sys); }), ErrorCode::DefectiveInput);
}

TEST(ConstructPT, RejectsBadPatternAndSingularFrame) {
  EXPECT_EQ(code_of([] { construct_pt_from_eigenframe(identity(2), 2.0 * identity(2)); }),
            ErrorCode::InvalidArgument);
  ComplexMatrix s(2, 2);
  s << 1, 1, 1, 1;
  EXPECT_EQ(code_of([&] { construct_pt_from_eigenframe(s, identity(2)); }), ErrorCode::SingularFrame);
}

TEST(PairForUnbroken, RandomUnbrokenIsSymmetricUnderBuiltPair) {
  Rng rng(11);
  for (int trial = 0; trial < 15; ++trial) {
    const ComplexMatrix h = rng.unbroken(2 + trial % 3);
    const PTPair pt = pt_pair_for_unbroken(h);
    EXPECT_TRUE(is_pt_symmetric(h, pt));
    EXPECT_LT((pt.PT() * pt.PT().conjugate() - identity(h.rows())).norm(), 1e-9);
  }
}

TEST(PairForUnbroken, RejectsBrokenAndDefective) {
  ComplexMatrix rot(2, 2);
  rot << 0, 1, -1, 0;
  EXPECT_EQ(code_of([&] { pt_pair_for_unbroken(rot); }), ErrorCode::NotUnbroken);
  ComplexMatrix j(2, 2);
  j << 2, 1, 0, 2;
  const ErrorCode c = code_of([&] { pt_pair_for_unbroken(j); });
  EXPECT_TRUE(c == ErrorCode::NotUnbroken || c == ErrorCode::DefectiveInput);
}

TEST(PairFromOperator, WrapsInvolution) {
  const PTPair p = pt_pair_from_operator(sigma_x());
  EXPECT_LT((p.P() - identity(2)).norm(), 1e-15);
  EXPECT_EQ(code_of([] { pt_pair_from_operator(2.0 * identity(2)); }), ErrorCode::NotInvolutoryT);
}

}  // namespace
}  // namespace ptsim
