#pragma once

#include <cstdint>
#include <vector>

#include "mschmidt/types.hpp"

namespace mschmidt {

/// (1/sqrt m)(|0..01> + |0..10> + ... + |10..0>). Throws DomainError for m < 2.
PureState w_state(int m);

/// (1/sqrt d) sum_{i=0}^{d-1} |i>^{(x)m}. Throws DomainError for m < 2 or d < 2.
PureState ghz_state(int m, int d = 2);

/// Three-qubit canonical form
///   l0|000> + l1 e^{i theta}|100> + l2|101> + l3|110> + l4|111>.
struct AcinParameters {
  double l0 = 1.0, l1 = 0.0, l2 = 0.0, l3 = 0.0, l4 = 0.0;
  double theta = 0.0;

  /// Throws DomainError on negative amplitudes, sum of squares off 1 by more
  /// than 1e-10, or theta outside [0, pi].
  void validate() const;
};

PureState acin_state(const AcinParameters& params);

/// Haar-random pure state on the whole profile.
PureState random_pure(const DimensionProfile& profile, std::uint64_t seed);
/// Product of independent Haar-random local states.
PureState random_product(const DimensionProfile& profile, std::uint64_t seed);
/// One Haar-random unitary per party.
std::vector<CMatrix> random_local_unitary(const DimensionProfile& profile, std::uint64_t seed);
/// One random invertible (Ginibre, condition number below 1e4) matrix per party.
std::vector<CMatrix> random_invertible_local(const DimensionProfile& profile, std::uint64_t seed);

}  // namespace mschmidt
