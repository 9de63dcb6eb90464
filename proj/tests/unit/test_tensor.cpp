#include <cmath>

#include <gtest/gtest.h>

#include "mschmidt/random.hpp"
#include "mschmidt/states.hpp"
#include "mschmidt/tensor.hpp"
#include "oracle.hpp"

using namespace mschmidt;

namespace {

CMatrix w3_reduced_23() {
  CMatrix m = CMatrix::Zero(4, 4);
  m(0, 0) = m(1, 1) = m(1, 2) = m(2, 1) = m(2, 2) = 1.0 / 3.0;
  return m;
}

}  // namespace

TEST(DimensionProfile, RejectsEmptyAndNonPositive) {
  EXPECT_THROW(DimensionProfile(std::vector<int>{}), DomainError);
  EXPECT_THROW(DimensionProfile({2, 0}), DomainError);
  EXPECT_EQ(DimensionProfile({2, 3, 4}).total(), 24);
}

TEST(SubsystemSet, OneBasedLabelsAndComplement) {
  const auto s = SubsystemSet::of({2, 3});
  EXPECT_EQ(s.indices(), (std::vector<int>{1, 2}));
  EXPECT_EQ(s.one_based(), (std::vector<int>{2, 3}));
  EXPECT_EQ(s.label(), "23");
  EXPECT_EQ(s.complement(3), SubsystemSet::of({1}));
  EXPECT_EQ(s.complement(3).complement(3), s);
  EXPECT_THROW(SubsystemSet::of({0}), DomainError);
  EXPECT_THROW(SubsystemSet::of({4}).validate(3), DomainError);
}

TEST(PureState, RejectsUnnormalized) {
  CVector v = CVector::Zero(4);
  v(0) = 1.0;
  v(3) = 1.0;
  EXPECT_THROW(PureState(DimensionProfile{2, 2}, v), DomainError);
  EXPECT_NO_THROW(PureState::normalized(DimensionProfile{2, 2}, v));
  EXPECT_THROW(PureState(DimensionProfile{2, 3}, v), DomainError);
}

TEST(DensityMatrix, ValidatesHermitianTraceAndPositivity) {
  CMatrix m = CMatrix::Identity(2, 2) / 2.0;
  EXPECT_NO_THROW(DensityMatrix(DimensionProfile{2}, m));
  CMatrix bad = m;
  bad(0, 1) = 0.3;
  EXPECT_THROW(DensityMatrix(DimensionProfile{2}, bad), DomainError);
  EXPECT_THROW(DensityMatrix(DimensionProfile{2}, CMatrix::Identity(2, 2)), DomainError);
  CMatrix neg = CMatrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  EXPECT_THROW(DensityMatrix(DimensionProfile{2}, neg), DomainError);
}

TEST(Reduce, ProductState) {
  CVector v = CVector::Zero(4);
  v(0) = 1.0;
  const auto r = reduce(PureState(DimensionProfile{2, 2}, v), SubsystemSet::of({1}));
  EXPECT_NEAR(std::abs(r.matrix()(0, 0) - 1.0), 0.0, 1e-12);
  EXPECT_NEAR(r.matrix().cwiseAbs().sum(), 1.0, 1e-12);
}

TEST(Reduce, GhzSinglePartyIsMaximallyMixed) {
  const auto r = reduce(ghz_state(3), SubsystemSet::of({1}));
  EXPECT_LT((r.matrix() - CMatrix::Identity(2, 2) / 2.0).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Reduce, WOntoLastTwo) {
  const auto r = reduce(w_state(3), SubsystemSet::of({2, 3}));
  EXPECT_EQ(r.profile(), (DimensionProfile{2, 2}));
  EXPECT_LT((r.matrix() - w3_reduced_23()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Reduce, OutOfRangeIndexThrows) {
  EXPECT_THROW(reduce(w_state(3), SubsystemSet::of({4})), DomainError);
}

TEST(Reduce, MatchesBruteForceOnRandomStates) {
  const std::vector<std::vector<int>> shapes{{2, 3, 2}, {3, 2, 2, 2}, {2, 2, 2, 2}};
  std::uint64_t seed = 11;
  for (const auto& dims : shapes) {
    const DimensionProfile profile(dims);
    const auto psi = oracle::gaussian_vector(profile.total(), seed++);
    const PureState state(profile, psi);
    for (std::uint64_t mask = 1; mask + 1 < (1ULL << dims.size()); ++mask) {
      const auto keep = SubsystemSet::from_mask(mask);
      const auto expected = oracle::reduce(psi, dims, keep.indices());
      EXPECT_LT((reduce(state, keep).matrix() - expected).cwiseAbs().maxCoeff(), 1e-12);
    }
  }
}

TEST(Reduce, ComposesAndPreservesTrace) {
  const DimensionProfile profile{2, 3, 2, 2};
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const PureState s = random_pure(profile, seed);
    const auto r123 = reduce(s, SubsystemSet::of({1, 2, 3}));
    const auto direct = reduce(s, SubsystemSet::of({1, 3}));
    const auto nested = reduce(r123, SubsystemSet::of({1, 3}));
    EXPECT_LT((direct.matrix() - nested.matrix()).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_NEAR(direct.matrix().trace().real(), 1.0, 1e-10);
  }
}

TEST(Reduce, ComplementaryReductionsShareRank) {
  const DimensionProfile profile{2, 2, 3};
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const PureState s = seed % 2 ? random_pure(profile, seed) : random_product(profile, seed);
    for (const auto& a : {SubsystemSet::of({1}), SubsystemSet::of({1, 2}), SubsystemSet::of({2})}) {
      EXPECT_EQ(numerical_rank(reduce(s, a).matrix()), numerical_rank(reduce(s, a.complement(3)).matrix()));
    }
  }
}

TEST(NumericalRank, Examples) {
  EXPECT_EQ(numerical_rank(CMatrix(CMatrix::Identity(2, 2) / 2.0)), 2);
  CMatrix p = CMatrix::Zero(2, 2);
  p(0, 0) = 1.0;
  EXPECT_EQ(numerical_rank(p), 1);
  EXPECT_EQ(numerical_rank(reduce(w_state(3), SubsystemSet::of({1})).matrix()), 2);
  EXPECT_EQ(numerical_rank(CMatrix(CMatrix::Zero(3, 3))), 0);
}

TEST(NumericalRank, RelativeTolerance) {
  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = 1e-9;
  EXPECT_EQ(numerical_rank(d), 1);
  EXPECT_EQ(numerical_rank(d, 1e-10), 2);
}

TEST(NumericalRank, RejectsNonHermitian) {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  EXPECT_THROW(numerical_rank(m), DomainError);
}

TEST(Spectrum, DescendingAndReconstructs) {
  const auto s = spectrum(reduce(w_state(3), SubsystemSet::of({1})).matrix());
  EXPECT_NEAR(s.values(0), 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(s.values(1), 1.0 / 3.0, 1e-12);

  CMatrix d = CMatrix::Zero(2, 2);
  d(1, 1) = 1.0;
  const auto t = spectrum(d);
  EXPECT_NEAR(t.values(0), 1.0, 1e-14);
  EXPECT_NEAR(t.values(1), 0.0, 1e-14);

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto rho = reduce(random_pure({2, 2, 3}, seed), SubsystemSet::of({2, 3}));
    const auto sp = spectrum(rho.matrix());
    const CMatrix back = sp.vectors * sp.values.asDiagonal() * sp.vectors.adjoint();
    EXPECT_LT((back - rho.matrix()).cwiseAbs().maxCoeff(), 1e-8);
    EXPECT_NEAR(sp.values.sum(), 1.0, 1e-9);
    for (Eigen::Index k = 1; k < sp.values.size(); ++k) EXPECT_GE(sp.values(k - 1), sp.values(k));
  }
}

TEST(ScaledRoot, Eigenvalues) {
  const auto ev = [](const CMatrix& m) { return spectrum(m).values; };
  const auto half = ev(scaled_root(DensityMatrix(DimensionProfile{2}, CMatrix::Identity(2, 2) / 2.0)));
  EXPECT_NEAR(half(0), 0.5, 1e-12);
  EXPECT_NEAR(half(1), 0.5, 1e-12);

  CMatrix p = CMatrix::Zero(2, 2);
  p(0, 0) = 1.0;
  const auto pure = ev(scaled_root(DensityMatrix(DimensionProfile{2}, p)));
  EXPECT_NEAR(pure(0), 1.0 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(pure(1), 0.0, 1e-12);

  const auto w = ev(scaled_root(reduce(w_state(3), SubsystemSet::of({1}))));
  EXPECT_NEAR(w(0), 1.0 / std::sqrt(3.0), 1e-12);
  EXPECT_NEAR(w(1), 1.0 / std::sqrt(6.0), 1e-12);
}

TEST(ScaledRoot, SquaresSumToHalf) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto rho = reduce(random_pure({2, 3, 2}, seed), SubsystemSet::of({1, 2}));
    EXPECT_NEAR(spectrum(scaled_root(rho)).values.array().square().sum(), 0.5, 1e-9);
  }
}

TEST(PartialTranspose, BellStateHasNegativeEigenvalue) {
  const auto bell = DensityMatrix(ghz_state(2));
  const auto pt = partial_transpose(bell.matrix(), bell.profile(), SubsystemSet::of({1}));
  EXPECT_NEAR(spectrum(pt).values.minCoeff(), -0.5, 1e-12);
}

TEST(PartialTranspose, IsAnInvolution) {
  const auto rho = reduce(random_pure({2, 3, 2}, 5), SubsystemSet::of({1, 2}));
  const auto cut = SubsystemSet::of({2});
  const CMatrix twice = partial_transpose(partial_transpose(rho.matrix(), rho.profile(), cut), rho.profile(), cut);
  EXPECT_LT((twice - rho.matrix()).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(ApplyLocalOperators, MatchesKroneckerProduct) {
  const DimensionProfile profile{2, 3};
  CounterRng rng(3);
  const std::vector<CMatrix> ops{rng.ginibre(2, 2), rng.ginibre(3, 3)};
  const PureState s = random_pure(profile, 1);
  CMatrix kron(6, 6);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) kron.block(3 * a, 3 * b, 3, 3) = ops[0](a, b) * ops[1];
  const CVector expected = kron * s.amplitudes();
  EXPECT_LT((apply_local_operators(s.amplitudes(), profile, ops) - expected).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(CoefficientEntropy, Values) {
  const std::vector<double> one{1.0}, bell{1 / std::sqrt(2.0), 1 / std::sqrt(2.0)};
  EXPECT_DOUBLE_EQ(coefficient_entropy(one), 0.0);
  EXPECT_NEAR(coefficient_entropy(bell), 1.0, 1e-14);
  const std::vector<double> with_zero{1.0, 0.0};
  EXPECT_DOUBLE_EQ(coefficient_entropy(with_zero), 0.0);
}

TEST(PencilRankDrops, FindsTheSingularPoint) {
  // span{|00>, |Psi+>}: only |00> has Schmidt rank 1.
  CMatrix m0 = CMatrix::Zero(2, 2), m1 = CMatrix::Zero(2, 2);
  m0(0, 0) = 1.0;
  m1(0, 1) = m1(1, 0) = 1.0 / std::sqrt(2.0);
  int generic = 0;
  const auto drops = pencil_rank_drops(m0, m1, kDefaultRankTolerance, &generic);
  EXPECT_EQ(generic, 2);
  ASSERT_EQ(drops.size(), 1U);
  EXPECT_NEAR(std::abs(drops[0](0)), 1.0, 1e-8);
}
