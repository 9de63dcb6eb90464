#pragma once

#include <span>
#include <vector>

#include "mschmidt/types.hpp"

namespace mschmidt {

/// Partial trace over the complement of `keep`. The result lives on the
/// profile restricted to `keep`, parties in increasing order.
DensityMatrix reduce(const PureState& state, const SubsystemSet& keep);
DensityMatrix reduce(const DensityMatrix& rho, const SubsystemSet& keep);

/// Coefficient matrix of `state` with the parties in `rows` as the row index
/// and the remaining parties as the column index (both row-major).
CMatrix flatten(const CVector& amplitudes, const DimensionProfile& profile, const SubsystemSet& rows);
inline CMatrix flatten(const PureState& state, const SubsystemSet& rows) {
  return flatten(state.amplitudes(), state.profile(), rows);
}

/// Eigenvalues sorted descending with matching orthonormal eigenvectors (columns).
struct Spectrum {
  RVector values;
  CMatrix vectors;
};

/// Throws DomainError if `mat` is not Hermitian within tolerance.
Spectrum spectrum(const CMatrix& mat);

/// Number of eigenvalues strictly above `tol` times the largest one.
/// Zero for the zero matrix.
int numerical_rank(const CMatrix& hermitian_psd, double tol = kDefaultRankTolerance);
int numerical_rank(const RVector& descending_eigenvalues, double tol = kDefaultRankTolerance);

/// Rank of a general (rectangular) matrix from its singular values, using the
/// same relative cutoff applied to squared singular values so that it agrees
/// with `numerical_rank(M M^dagger)`.
int matrix_rank(const CMatrix& mat, double tol = kDefaultRankTolerance);

/// (1/sqrt 2) rho^{1/2}.
CMatrix scaled_root(const DensityMatrix& rho);

/// Partial transpose of the parties in `cut`.
CMatrix partial_transpose(const CMatrix& mat, const DimensionProfile& profile, const SubsystemSet& cut);

/// Applies A_1 (x) ... (x) A_m to the amplitude vector (no renormalization).
CVector apply_local_operators(const CVector& amplitudes, const DimensionProfile& profile,
                              std::span<const CMatrix> ops);

/// Shannon-type entropy -sum x^2 log2 x^2 of a list of amplitudes/coefficients
/// (0 log 0 := 0).
double coefficient_entropy(std::span<const double> coefficients);

/// Points (a, b) on the projective line where rank(a*M0 + b*M1) drops below
/// the generic rank of the pencil. Each point is returned as a unit vector.
/// `generic_rank` is written when non-null.
std::vector<Eigen::Vector2cd> pencil_rank_drops(const CMatrix& m0, const CMatrix& m1,
                                                double tol = kDefaultRankTolerance,
                                                int* generic_rank = nullptr);

/// Orthonormal basis (columns) of the column space of `mat`.
CMatrix column_space(const CMatrix& mat, double tol = kDefaultRankTolerance);

}  // namespace mschmidt
