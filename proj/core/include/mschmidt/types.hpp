#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace mschmidt {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

/// Invalid argument for a well-defined operation (bad index, non-Hermitian input, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The requested construction is not defined for this input (e.g. coefficients of
/// a genuinely entangled state with five or more parties).
class UnsupportedCase : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical invariant the algorithms rely on did not hold.
class InternalConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline constexpr double kStateNormTolerance = 1e-10;
inline constexpr double kHermitianTolerance = 1e-10;
inline constexpr double kDefaultRankTolerance = 1e-8;

/// Local dimensions N_1..N_m of a multipartite system.
class DimensionProfile {
 public:
  DimensionProfile() = default;
  explicit DimensionProfile(std::vector<int> dims);
  DimensionProfile(std::initializer_list<int> dims)
      : DimensionProfile(std::vector<int>(dims)) {}

  [[nodiscard]] std::size_t parties() const noexcept { return dims_.size(); }
  [[nodiscard]] int dim(std::size_t party) const { return dims_.at(party); }
  [[nodiscard]] const std::vector<int>& dims() const noexcept { return dims_; }
  [[nodiscard]] Eigen::Index total() const noexcept { return total_; }
  [[nodiscard]] std::string to_string() const;

  bool operator==(const DimensionProfile&) const = default;

 private:
  std::vector<int> dims_;
  Eigen::Index total_ = 1;
};

/// Strictly increasing set of party indices. Stored 0-based; `of()` and
/// `one_based()` speak the 1-based numbering used at every external surface.
class SubsystemSet {
 public:
  SubsystemSet() = default;

  /// From 1-based party labels, e.g. `SubsystemSet::of({2, 3})`.
  static SubsystemSet of(std::initializer_list<int> parties);
  static SubsystemSet of(const std::vector<int>& parties);
  static SubsystemSet from_zero_based(std::vector<int> indices);
  static SubsystemSet from_mask(std::uint64_t mask);
  static SubsystemSet all(std::size_t m);

  [[nodiscard]] const std::vector<int>& indices() const noexcept { return idx_; }
  [[nodiscard]] std::vector<int> one_based() const;
  [[nodiscard]] std::size_t size() const noexcept { return idx_.size(); }
  [[nodiscard]] bool empty() const noexcept { return idx_.empty(); }
  [[nodiscard]] bool contains(int zero_based) const;
  [[nodiscard]] std::uint64_t mask() const noexcept;
  [[nodiscard]] SubsystemSet complement(std::size_t m) const;
  /// Throws DomainError if empty or any index is out of range for `m` parties.
  void validate(std::size_t m) const;
  /// Concatenated 1-based labels, e.g. "23"; comma separated once labels exceed 9.
  [[nodiscard]] std::string label() const;

  bool operator==(const SubsystemSet&) const = default;
  auto operator<=>(const SubsystemSet&) const = default;

 private:
  std::vector<int> idx_;
};

DimensionProfile restrict_profile(const DimensionProfile& profile, const SubsystemSet& keep);

/// Normalized amplitude vector. Ordering is row-major over (i_1, ..., i_m)
/// with party 1 the slowest index.
class PureState {
 public:
  PureState(DimensionProfile profile, CVector amplitudes);

  /// Scales `amplitudes` to unit norm first. Throws on a zero vector.
  static PureState normalized(DimensionProfile profile, CVector amplitudes);

  [[nodiscard]] const DimensionProfile& profile() const noexcept { return profile_; }
  [[nodiscard]] const CVector& amplitudes() const noexcept { return amp_; }
  [[nodiscard]] std::size_t parties() const noexcept { return profile_.parties(); }
  [[nodiscard]] CMatrix projector() const { return amp_ * amp_.adjoint(); }

 private:
  DimensionProfile profile_;
  CVector amp_;
};

/// Hermitian, positive semidefinite, unit trace operator.
class DensityMatrix {
 public:
  DensityMatrix(DimensionProfile profile, CMatrix matrix);
  explicit DensityMatrix(const PureState& state);

  [[nodiscard]] const DimensionProfile& profile() const noexcept { return profile_; }
  [[nodiscard]] const CMatrix& matrix() const noexcept { return mat_; }
  [[nodiscard]] std::size_t parties() const noexcept { return profile_.parties(); }

 private:
  DimensionProfile profile_;
  CMatrix mat_;
};

}  // namespace mschmidt
