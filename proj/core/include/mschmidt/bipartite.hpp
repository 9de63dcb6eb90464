#pragma once

#include <span>

#include "mschmidt/search.hpp"
#include "mschmidt/types.hpp"

namespace mschmidt {

/// |psi> = sum_k lambda_k |e_k>|f_k> across a bipartition.
///
/// Coefficients are descending and strictly above the rank cutoff. Each left
/// vector is phase-fixed so its first non-negligible component is real and
/// positive; the right vector absorbs the conjugate phase.
struct SchmidtDecomposition {
  RVector coefficients;
  CMatrix left;   // columns |e_k>
  CMatrix right;  // columns |f_k>
  int rank = 0;

  /// sum_k lambda_k |e_k> (x) |f_k>, left index slowest.
  [[nodiscard]] CVector reconstruct() const;
};

/// Throws DomainError unless `left` is a proper nonempty subset of the parties.
SchmidtDecomposition schmidt_decompose(const PureState& state, const SubsystemSet& left,
                                       double rank_tol = kDefaultRankTolerance);

/// -sum lambda_k^2 log2 lambda_k^2, in bits.
double entanglement_entropy(const SchmidtDecomposition& decomposition);
double entanglement_entropy(std::span<const double> coefficients);

struct PptTest {
  bool entangled = false;
  /// True when PPT is equivalent to separability for this cut (2x2 or 2x3).
  bool decisive = false;
  double min_eigenvalue = 0.0;
};

inline constexpr double kPptThreshold = -1e-9;

/// Partial-transpose test of `rho` across `cut | complement`.
PptTest ppt_test(const DensityMatrix& rho, const SubsystemSet& cut);

/// True iff the partial transpose over `cut` has an eigenvalue below -1e-9.
/// Exact for 2x2 and 2x3 total shapes, one-sided (entanglement-confirming) elsewhere.
bool ppt_entangled(const DensityMatrix& rho, const SubsystemSet& cut);

/// Lower bound on the Schmidt number of any two-party density matrix whose
/// range is spanned by the two columns of `basis`: the largest t such that at
/// most one ray of the range has Schmidt rank below t. One-column input gives
/// that state's rank; three or more columns give 1.
int bipartite_range_lower_bound(const CMatrix& basis, const DimensionProfile& profile,
                                double rank_tol = kDefaultRankTolerance);

/// Convex-roof Schmidt number of a two-party density matrix as an interval.
SchmidtNumberResult mixed_bipartite_schmidt_number(const DensityMatrix& rho, const SearchConfig& config = {});

}  // namespace mschmidt
