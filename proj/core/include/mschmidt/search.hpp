#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mschmidt/types.hpp"

namespace mschmidt {

/// Numerical knobs shared by every analysis entry point.
struct SearchConfig {
  double rank_tol = kDefaultRankTolerance;
  int restarts = 64;
  int iterations = 500;
  std::uint64_t seed = 0;
};

/// Weighted pure-state decomposition sum_j p_j |phi_j><phi_j| of a density matrix.
struct EnsembleCandidate {
  std::vector<double> weights;
  std::vector<PureState> states;

  [[nodiscard]] std::size_t size() const noexcept { return states.size(); }
  [[nodiscard]] CMatrix mixture() const;
  /// Largest entrywise deviation from `target`.
  [[nodiscard]] double reconstruction_error(const CMatrix& target) const;
};

/// Interval-valued Schmidt number with the evidence that produced it.
struct SchmidtNumberResult {
  int lo = 1;
  int hi = 1;
  std::optional<EnsembleCandidate> witness;
  std::vector<std::string> branch_trace;

  [[nodiscard]] bool exact() const noexcept { return lo == hi; }
};

/// Spectral ensemble: eigenvectors weighted by their eigenvalues, eigenvalues
/// at or below the rank cutoff dropped.
EnsembleCandidate eigen_ensemble(const DensityMatrix& rho, double rank_tol = kDefaultRankTolerance);

/// Nonnegative cost of a unit vector; zero exactly on acceptable elements.
using ElementPenalty = std::function<double(const CVector&)>;
/// Hard acceptance test applied after optimization.
using ElementCheck = std::function<bool(const PureState&)>;
/// Objective to maximize over elements of an ensemble.
using ElementObjective = std::function<double(const PureState&)>;

/// Searches ensembles of `rho` of size rank..rank^2, written as
/// |phi_j> ~ rho^{1/2} U e_j for an isometry U, minimizing
/// sum_j p_j penalty(phi_j). Returns the first candidate whose every element
/// passes `check`. Deterministic for a fixed config; a miss is not a proof
/// that no such ensemble exists.
std::optional<EnsembleCandidate> search_ensemble(const DensityMatrix& rho, const ElementPenalty& penalty,
                                                 const ElementCheck& check, const SearchConfig& config);

struct RangeElement {
  PureState state;
  double objective = 0.0;
};

/// Maximizes `objective` over pure states proportional to rho^{1/2}|u>, i.e.
/// over every state that can appear in some ensemble of `rho`, keeping only
/// states that pass `accept`. Rejected points score below every accepted one,
/// graded by `violation` when given, which steers the simplex toward the
/// accepted set. Stops early once `ceiling` is reached.
std::optional<RangeElement> maximize_in_range(const DensityMatrix& rho, const ElementObjective& objective,
                                              const ElementCheck& accept, const SearchConfig& config,
                                              double ceiling = 1e300, const ElementPenalty& violation = {});

}  // namespace mschmidt
