#pragma once

#include <string>
#include <vector>

#include "mschmidt/types.hpp"

namespace mschmidt {

enum class SeparabilityClass { FullySeparable, PartiallySeparable, GenuinelyEntangled };

/// Finest product factorization |psi> = (x)_F |psi_F> of a pure state.
struct PartitionStructure {
  std::vector<SubsystemSet> factors;      // ordered by smallest party
  std::vector<bool> entangled;            // per factor; singletons never entangled
  std::vector<PureState> factor_states;   // per factor, on the factor's own profile
  SeparabilityClass kind = SeparabilityClass::FullySeparable;

  /// "FullySeparable", "GE", or a structure string such as "1|23" or "12|34".
  [[nodiscard]] std::string label() const;
  [[nodiscard]] std::string structure() const;
  [[nodiscard]] std::size_t entangled_count() const;
};

/// Splits recursively along every cut whose reduction is pure.
PartitionStructure factorize(const PureState& state, double rank_tol = kDefaultRankTolerance);

/// (r_1, ..., r_m) with r_i the rank of the single-party reduction.
std::vector<int> local_rank_vector(const PureState& state, double rank_tol = kDefaultRankTolerance);

/// All 2^(m-1) - 1 unordered proper bipartitions, each represented by the side
/// containing party 1, ordered by size and then lexicographically.
std::vector<SubsystemSet> enumerate_bipartitions(std::size_t m);

/// Proper nonempty subsets of `parties` that contain its smallest element,
/// in the same canonical order as enumerate_bipartitions.
std::vector<SubsystemSet> enumerate_splits(const SubsystemSet& parties);

/// Every set partition of {0..m-1} (restricted growth strings), blocks ordered
/// by smallest element.
std::vector<std::vector<SubsystemSet>> enumerate_set_partitions(std::size_t m);

}  // namespace mschmidt
