#include <cmath>

#include <gtest/gtest.h>

#include "mschmidt/bipartite.hpp"
#include "mschmidt/states.hpp"
#include "mschmidt/tensor.hpp"
#include "oracle.hpp"

using namespace mschmidt;

namespace {

const SubsystemSet kFirst = SubsystemSet::of({1});

DensityMatrix mixture(const std::vector<std::pair<double, PureState>>& parts) {
  CMatrix m = CMatrix::Zero(parts.front().second.profile().total(), parts.front().second.profile().total());
  for (const auto& [p, s] : parts) m += p * s.projector();
  return DensityMatrix(parts.front().second.profile(), m);
}

}  // namespace

TEST(SchmidtDecompose, Bell) {
  const auto d = schmidt_decompose(ghz_state(2), kFirst);
  EXPECT_EQ(d.rank, 2);
  EXPECT_NEAR(d.coefficients(0), 1 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(d.coefficients(1), 1 / std::sqrt(2.0), 1e-12);
}

TEST(SchmidtDecompose, Product) {
  CVector v = CVector::Zero(4);
  v(0) = 1.0;
  const auto d = schmidt_decompose(PureState({2, 2}, v), kFirst);
  EXPECT_EQ(d.rank, 1);
  EXPECT_NEAR(d.coefficients(0), 1.0, 1e-12);
}

TEST(SchmidtDecompose, WAcrossFirstCut) {
  const auto d = schmidt_decompose(w_state(3), kFirst);
  EXPECT_EQ(d.rank, 2);
  EXPECT_NEAR(d.coefficients(0), std::sqrt(2.0 / 3.0), 1e-12);
  EXPECT_NEAR(d.coefficients(1), std::sqrt(1.0 / 3.0), 1e-12);
}

TEST(SchmidtDecompose, RejectsEmptyOrFullLeft) {
  EXPECT_THROW(schmidt_decompose(w_state(3), SubsystemSet::of({1, 2, 3})), DomainError);
  EXPECT_THROW(schmidt_decompose(w_state(3), SubsystemSet{}), DomainError);
}

TEST(SchmidtDecompose, ReconstructsAndFixesPhase) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const PureState s = random_pure({3, 2, 2}, seed);
    const auto left = SubsystemSet::of({1, 3});
    const auto d = schmidt_decompose(s, left);
    EXPECT_NEAR(d.coefficients.squaredNorm(), 1.0, 1e-9);
    EXPECT_LT((d.reconstruct() - flatten(s, left).reshaped<Eigen::RowMajor>()).cwiseAbs().maxCoeff(), 1e-8);
    for (int k = 0; k < d.rank; ++k) {
      Eigen::Index first = 0;
      while (std::abs(d.left(first, k)) <= 1e-12) ++first;
      EXPECT_NEAR(d.left(first, k).imag(), 0.0, 1e-12);
      EXPECT_GT(d.left(first, k).real(), 0.0);
    }
  }
}

TEST(SchmidtDecompose, RankMatchesReductionRank) {
  const std::vector<std::vector<int>> shapes{{2, 2}, {2, 3}, {3, 3}, {2, 2, 2}};
  for (const auto& dims : shapes) {
    for (std::uint64_t seed = 0; seed < 250; ++seed) {
      const DimensionProfile profile(dims);
      // Alternate between generic and product states so both ranks occur.
      const PureState s = seed % 3 ? random_pure(profile, seed) : random_product(profile, seed);
      EXPECT_EQ(schmidt_decompose(s, kFirst).rank, numerical_rank(reduce(s, kFirst).matrix()));
    }
  }
}

TEST(EntanglementEntropy, Values) {
  const std::vector<double> one{1.0};
  EXPECT_DOUBLE_EQ(entanglement_entropy(one), 0.0);
  EXPECT_NEAR(entanglement_entropy(schmidt_decompose(ghz_state(2), kFirst)), 1.0, 1e-12);
  EXPECT_NEAR(entanglement_entropy(schmidt_decompose(w_state(3), kFirst)), 0.9182958340544893, 1e-4);
}

TEST(EntanglementEntropy, LocalUnitaryInvariant) {
  const DimensionProfile profile{2, 3};
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const PureState s = random_pure(profile, seed);
    const auto u = random_local_unitary(profile, seed + 100);
    const PureState t(profile, apply_local_operators(s.amplitudes(), profile, u));
    EXPECT_NEAR(entanglement_entropy(schmidt_decompose(s, kFirst)),
                entanglement_entropy(schmidt_decompose(t, kFirst)), 1e-9);
  }
}

TEST(Ppt, Examples) {
  EXPECT_FALSE(ppt_entangled(reduce(ghz_state(3), SubsystemSet::of({2, 3})), kFirst));
  const auto w = reduce(w_state(3), SubsystemSet::of({2, 3}));
  EXPECT_TRUE(ppt_entangled(w, kFirst));
  EXPECT_NEAR(ppt_test(w, kFirst).min_eigenvalue, -0.20601132958329835, 1e-10);
  EXPECT_FALSE(ppt_entangled(DensityMatrix({2, 2}, CMatrix::Identity(4, 4) / 4.0), kFirst));
}

TEST(Ppt, DecisiveOnlyForSmallShapes) {
  EXPECT_TRUE(ppt_test(DensityMatrix({2, 2}, CMatrix::Identity(4, 4) / 4.0), kFirst).decisive);
  EXPECT_TRUE(ppt_test(DensityMatrix({2, 3}, CMatrix::Identity(6, 6) / 6.0), kFirst).decisive);
  EXPECT_FALSE(ppt_test(DensityMatrix({3, 3}, CMatrix::Identity(9, 9) / 9.0), kFirst).decisive);
}

TEST(Ppt, MixturesOfProductsAreNeverFlagged) {
  for (const auto& dims : {std::vector<int>{2, 2}, std::vector<int>{2, 3}}) {
    const DimensionProfile profile(dims);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      std::vector<std::pair<double, PureState>> parts;
      for (int k = 0; k < 3; ++k) parts.emplace_back((k + 1) / 6.0, random_product(profile, 10 * seed + k));
      EXPECT_FALSE(ppt_entangled(mixture(parts), kFirst));
    }
  }
}

TEST(MixedBipartite, GhzReductionIsSeparable) {
  const auto r = mixed_bipartite_schmidt_number(reduce(ghz_state(3), SubsystemSet::of({2, 3})));
  EXPECT_EQ(r.lo, 1);
  EXPECT_EQ(r.hi, 1);
  ASSERT_TRUE(r.witness.has_value());
}

TEST(MixedBipartite, WReductionIsTwo) {
  const auto r = mixed_bipartite_schmidt_number(reduce(w_state(3), SubsystemSet::of({2, 3})));
  EXPECT_EQ(r.lo, 2);
  EXPECT_EQ(r.hi, 2);
}

TEST(MixedBipartite, PureProjectorsGiveTheirRank) {
  for (const auto& dims : {std::vector<int>{2, 2}, std::vector<int>{3, 3}}) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const PureState s = random_pure(DimensionProfile(dims), seed);
      const auto r = mixed_bipartite_schmidt_number(DensityMatrix(s));
      const int rank = schmidt_decompose(s, kFirst).rank;
      EXPECT_EQ(r.lo, rank);
      EXPECT_EQ(r.hi, rank);
    }
  }
}

TEST(MixedBipartite, SeparableMixtureFindsProductWitness) {
  const DimensionProfile profile{2, 3};
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto rho = mixture({{0.3, random_product(profile, 2 * seed)}, {0.7, random_product(profile, 2 * seed + 1)}});
    const auto r = mixed_bipartite_schmidt_number(rho);
    EXPECT_EQ(r.hi, 1);
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_LT(r.witness->reconstruction_error(rho.matrix()), 1e-7);
    for (const auto& s : r.witness->states) EXPECT_EQ(schmidt_decompose(s, kFirst).rank, 1);
  }
}

TEST(MixedBipartite, LowerNeverExceedsUpper) {
  const DimensionProfile profile{3, 3};
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto rho = mixture({{0.5, random_pure(profile, seed)}, {0.5, random_pure(profile, seed + 50)}});
    const auto r = mixed_bipartite_schmidt_number(rho);
    EXPECT_LE(r.lo, r.hi);
    EXPECT_LE(r.hi, 3);
  }
}

TEST(RangeLowerBound, CertifiesRankTwoRange) {
  CMatrix basis = CMatrix::Zero(4, 2);
  basis(0, 0) = 1.0;
  basis(1, 1) = basis(2, 1) = 1.0 / std::sqrt(2.0);
  EXPECT_EQ(bipartite_range_lower_bound(basis, {2, 2}), 2);
  CMatrix product = CMatrix::Zero(4, 2);
  product(0, 0) = product(3, 1) = 1.0;
  EXPECT_EQ(bipartite_range_lower_bound(product, {2, 2}), 1);
}
