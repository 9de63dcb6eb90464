#pragma once

#include <span>
#include <string>
#include <vector>

#include "mschmidt/search.hpp"
#include "mschmidt/types.hpp"

namespace mschmidt {

/// Generalized Schmidt coefficients of a pure state.
struct CoefficientSet {
  std::vector<double> values;  // descending
  std::vector<std::string> provenance;
  /// Coefficient sets of every branch whose entropy ties the selected one
  /// (the selected branch comes first).
  std::vector<std::vector<double>> tie_branches;
  /// False when a Schmidt number feeding the construction was only bracketed,
  /// or a rank-constrained entropy search could not be completed.
  bool exact = true;

  [[nodiscard]] std::size_t size() const noexcept { return values.size(); }
  [[nodiscard]] double squared_norm() const;
};

/// Coefficient multiset of a pure state with up to four parties, or of any
/// state whose genuinely entangled factors have at most four parties.
/// Throws UnsupportedCase for genuinely entangled factors with five or more.
CoefficientSet pure_schmidt_coefficients(const PureState& state, const SearchConfig& config = {});

struct EnsembleElement {
  PureState state;
  CoefficientSet coefficients;
  double entropy = 0.0;
};

/// Element |phi> ~ rho^{1/2}|u> of some ensemble of `rho` whose Schmidt
/// number equals `rank_target`, with the largest generalized entanglement of
/// formation found. Throws DomainError if no such element turns up.
EnsembleElement max_entropy_ensemble_element(const DensityMatrix& rho, int rank_target,
                                             const SearchConfig& config = {});

/// -sum eta^2 log2 eta^2.
double generalized_eof(const CoefficientSet& coefficients);
double generalized_eof(std::span<const double> coefficients);

struct EofBounds {
  double lo = 0.0;
  double hi = 0.0;
  /// True when no searched ensemble improved on the spectral one.
  bool spectral_only = false;

  [[nodiscard]] bool exact() const noexcept { return lo == hi; }
};

/// Convex-roof generalized entanglement of formation, bracketed by 0 and the
/// best ensemble found. Exact for pure inputs.
EofBounds mixed_generalized_eof(const DensityMatrix& rho, const SearchConfig& config = {});

}  // namespace mschmidt
