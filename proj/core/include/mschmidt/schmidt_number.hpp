#pragma once

#include <optional>
#include <span>
#include <vector>

#include "mschmidt/partition.hpp"
#include "mschmidt/search.hpp"
#include "mschmidt/types.hpp"

namespace mschmidt {

/// One term r_i + R(rho_{i-bar}) of the genuinely entangled rule.
struct PartyTerm {
  int party = 0;  // 0-based
  int local_rank = 0;
  SchmidtNumberResult reduction;

  [[nodiscard]] int lo() const noexcept { return local_rank + reduction.lo; }
  [[nodiscard]] int hi() const noexcept { return local_rank + reduction.hi; }
};

/// Full record of the pure-state rule: factorization, per-party terms (only
/// for genuinely entangled states with three or more parties), the parties
/// attaining the maximum, and the resulting number.
struct PureSchmidtAnalysis {
  PartitionStructure partition;
  std::vector<PartyTerm> terms;
  std::vector<int> maximizing;  // 0-based parties whose term attains result.hi
  SchmidtNumberResult result;
};

/// Generalized Schmidt number of a pure state.
///
///  - fully separable: 1
///  - product of factors: the single entangled factor's number, or the sum over
///    entangled factors when there are two or more
///  - genuinely entangled, two parties: the Schmidt rank
///  - genuinely entangled, m >= 3: max_i r_i + R(rho_{i-bar}), with the
///    reduction's number taken from `mixed_schmidt_number`; lo/hi propagate.
SchmidtNumberResult pure_schmidt_number(const PureState& state, const SearchConfig& config = {});
PureSchmidtAnalysis analyze_pure(const PureState& state, const SearchConfig& config = {});

/// Convex-roof Schmidt number inf over ensembles of max_j R(phi_j), reported as
/// a certified interval. See README for the lower-bound certificates.
SchmidtNumberResult mixed_schmidt_number(const DensityMatrix& rho, const SearchConfig& config = {});

/// Looks for an ensemble of `rho` in which every element has Schmidt number
/// at most `target` (verified with `pure_schmidt_number`).
std::optional<EnsembleCandidate> ensemble_search(const DensityMatrix& rho, int target, const SearchConfig& config = {});

/// Lower bound valid for every density matrix whose range is the column span
/// of `basis` (orthonormal columns on `profile`). Nontrivial for one- and
/// two-dimensional ranges; 1 otherwise.
int range_lower_bound(const CMatrix& basis, const DimensionProfile& profile, const SearchConfig& config = {});

/// Largest generalized Schmidt number any pure state on `profile` can have.
int schmidt_number_ceiling(const DimensionProfile& profile);

/// True iff the pure Schmidt number (both ends of the interval) is unchanged by
/// the invertible local operators. Throws DomainError for an operator with
/// condition number above 1e10.
bool slocc_rank_check(const PureState& state, std::span<const CMatrix> local_invertibles,
                      const SearchConfig& config = {});

}  // namespace mschmidt
