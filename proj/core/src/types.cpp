#include "mschmidt/types.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mschmidt {

DimensionProfile::DimensionProfile(std::vector<int> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw DomainError("dimension profile needs at least one party");
  if (dims_.size() > 62) throw DomainError("too many parties");
  total_ = 1;
  for (int n : dims_) {
    if (n < 1) throw DomainError("local dimensions must be positive");
    total_ *= n;
    if (total_ > (Eigen::Index{1} << 24)) throw DomainError("total dimension too large for dense storage");
  }
}

std::string DimensionProfile::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < dims_.size(); ++i) os << (i ? "x" : "") << dims_[i];
  return os.str();
}

SubsystemSet SubsystemSet::of(std::initializer_list<int> parties) {
  return of(std::vector<int>(parties));
}

SubsystemSet SubsystemSet::of(const std::vector<int>& parties) {
  std::vector<int> idx;
  idx.reserve(parties.size());
  for (int p : parties) {
    if (p < 1) throw DomainError("party labels are 1-based");
    idx.push_back(p - 1);
  }
  return from_zero_based(std::move(idx));
}

SubsystemSet SubsystemSet::from_zero_based(std::vector<int> indices) {
  std::sort(indices.begin(), indices.end());
  if (std::adjacent_find(indices.begin(), indices.end()) != indices.end())
    throw DomainError("duplicate party index in subsystem set");
  if (!indices.empty() && indices.front() < 0) throw DomainError("negative party index");
  SubsystemSet s;
  s.idx_ = std::move(indices);
  return s;
}

SubsystemSet SubsystemSet::from_mask(std::uint64_t mask) {
  std::vector<int> idx;
  for (int i = 0; mask != 0; ++i, mask >>= 1)
    if (mask & 1U) idx.push_back(i);
  SubsystemSet s;
  s.idx_ = std::move(idx);
  return s;
}

SubsystemSet SubsystemSet::all(std::size_t m) {
  return from_mask(m >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1);
}

std::vector<int> SubsystemSet::one_based() const {
  std::vector<int> out(idx_);
  for (int& i : out) ++i;
  return out;
}

bool SubsystemSet::contains(int zero_based) const {
  return std::binary_search(idx_.begin(), idx_.end(), zero_based);
}

std::uint64_t SubsystemSet::mask() const noexcept {
  std::uint64_t m = 0;
  for (int i : idx_) m |= std::uint64_t{1} << i;
  return m;
}

SubsystemSet SubsystemSet::complement(std::size_t m) const {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(m); ++i)
    if (!contains(i)) out.push_back(i);
  SubsystemSet s;
  s.idx_ = std::move(out);
  return s;
}

void SubsystemSet::validate(std::size_t m) const {
  if (idx_.empty()) throw DomainError("subsystem set is empty");
  if (idx_.back() >= static_cast<int>(m))
    throw DomainError("party index " + std::to_string(idx_.back() + 1) + " out of range for " +
                      std::to_string(m) + " parties");
}

std::string SubsystemSet::label() const {
  const bool wide = !idx_.empty() && idx_.back() >= 9;
  std::ostringstream os;
  for (std::size_t k = 0; k < idx_.size(); ++k) {
    if (wide && k) os << ',';
    os << idx_[k] + 1;
  }
  return os.str();
}

DimensionProfile restrict_profile(const DimensionProfile& profile, const SubsystemSet& keep) {
  keep.validate(profile.parties());
  std::vector<int> dims;
  dims.reserve(keep.size());
  for (int i : keep.indices()) dims.push_back(profile.dim(static_cast<std::size_t>(i)));
  return DimensionProfile(std::move(dims));
}

PureState::PureState(DimensionProfile profile, CVector amplitudes)
    : profile_(std::move(profile)), amp_(std::move(amplitudes)) {
  if (amp_.size() != profile_.total())
    throw DomainError("amplitude count " + std::to_string(amp_.size()) +
                      " does not match dimension " + std::to_string(profile_.total()));
  if (std::abs(amp_.norm() - 1.0) > kStateNormTolerance)
    throw DomainError("pure state is not normalized");
}

PureState PureState::normalized(DimensionProfile profile, CVector amplitudes) {
  const double n = amplitudes.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw DomainError("cannot normalize a zero or non-finite vector");
  amplitudes /= n;
  return PureState(std::move(profile), std::move(amplitudes));
}

DensityMatrix::DensityMatrix(DimensionProfile profile, CMatrix matrix)
    : profile_(std::move(profile)), mat_(std::move(matrix)) {
  const Eigen::Index n = profile_.total();
  if (mat_.rows() != n || mat_.cols() != n) throw DomainError("density matrix shape mismatch");
  if ((mat_ - mat_.adjoint()).cwiseAbs().maxCoeff() > kHermitianTolerance)
    throw DomainError("density matrix is not Hermitian");
  if (std::abs(mat_.trace().real() - 1.0) > kHermitianTolerance)
    throw DomainError("density matrix trace is not 1");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(mat_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kHermitianTolerance)
    throw DomainError("density matrix has a negative eigenvalue");
}

DensityMatrix::DensityMatrix(const PureState& state)
    : profile_(state.profile()), mat_(state.projector()) {}

}  // namespace mschmidt
