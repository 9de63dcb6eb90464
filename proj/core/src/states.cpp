#include "mschmidt/states.hpp"

#include <cmath>
#include <numbers>

#include "mschmidt/random.hpp"

namespace mschmidt {
namespace {

enum Stream : std::uint64_t { kPure = 1, kProduct = 2, kUnitary = 3, kInvertible = 4 };

CMatrix haar_unitary(CounterRng& rng, int n) {
  const CMatrix z = rng.ginibre(n, n);
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ();
  const CMatrix& r = qr.matrixQR();
  for (int k = 0; k < n; ++k) {
    const double a = std::abs(r(k, k));
    if (a > 0.0) q.col(k) *= r(k, k) / a;
  }
  return q;
}

}  // namespace

PureState w_state(int m) {
  if (m < 2) throw DomainError("W state needs at least two parties");
  const DimensionProfile profile(std::vector<int>(static_cast<std::size_t>(m), 2));
  CVector amps = CVector::Zero(profile.total());
  for (int k = 0; k < m; ++k) amps(Eigen::Index{1} << k) = 1.0 / std::sqrt(static_cast<double>(m));
  return PureState(profile, amps);
}

PureState ghz_state(int m, int d) {
  if (m < 2) throw DomainError("GHZ state needs at least two parties");
  if (d < 2) throw DomainError("GHZ state needs local dimension at least 2");
  const DimensionProfile profile(std::vector<int>(static_cast<std::size_t>(m), d));
  CVector amps = CVector::Zero(profile.total());
  // |i...i> sits at i * (d^{m-1} + ... + d + 1).
  Eigen::Index stride = 0;
  for (int k = 0; k < m; ++k) stride = stride * d + 1;
  for (int i = 0; i < d; ++i) amps(i * stride) = 1.0 / std::sqrt(static_cast<double>(d));
  return PureState(profile, amps);
}

void AcinParameters::validate() const {
  for (double l : {l0, l1, l2, l3, l4})
    if (!(l >= 0.0)) throw DomainError("canonical-form amplitudes must be nonnegative");
  const double n = l0 * l0 + l1 * l1 + l2 * l2 + l3 * l3 + l4 * l4;
  if (std::abs(n - 1.0) > kStateNormTolerance) throw DomainError("canonical-form amplitudes are not normalized");
  if (!(theta >= 0.0 && theta <= std::numbers::pi)) throw DomainError("theta must lie in [0, pi]");
}

PureState acin_state(const AcinParameters& p) {
  p.validate();
  CVector amps = CVector::Zero(8);
  amps(0b000) = p.l0;
  amps(0b100) = p.l1 * std::polar(1.0, p.theta);
  amps(0b101) = p.l2;
  amps(0b110) = p.l3;
  amps(0b111) = p.l4;
  return PureState::normalized(DimensionProfile{2, 2, 2}, amps);
}

PureState random_pure(const DimensionProfile& profile, std::uint64_t seed) {
  CounterRng rng(seed, kPure);
  return PureState::normalized(profile, rng.complex_normal_vector(profile.total()));
}

PureState random_product(const DimensionProfile& profile, std::uint64_t seed) {
  CounterRng rng(seed, kProduct);
  CVector amps = CVector::Ones(1);
  for (int n : profile.dims()) {
    const CVector local = rng.complex_normal_vector(n).normalized();
    CVector next(amps.size() * n);
    for (Eigen::Index a = 0; a < amps.size(); ++a) next.segment(a * n, n) = amps(a) * local;
    amps = std::move(next);
  }
  return PureState::normalized(profile, amps);
}

std::vector<CMatrix> random_local_unitary(const DimensionProfile& profile, std::uint64_t seed) {
  CounterRng rng(seed, kUnitary);
  std::vector<CMatrix> out;
  for (int n : profile.dims()) out.push_back(haar_unitary(rng, n));
  return out;
}

std::vector<CMatrix> random_invertible_local(const DimensionProfile& profile, std::uint64_t seed) {
  CounterRng rng(seed, kInvertible);
  std::vector<CMatrix> out;
  for (int n : profile.dims()) {
    while (true) {
      CMatrix g = rng.ginibre(n, n);
      Eigen::JacobiSVD<CMatrix> svd(g);
      const auto& sv = svd.singularValues();
      if (sv(n - 1) > 0.0 && sv(0) / sv(n - 1) < 1e4) {
        out.push_back(std::move(g));
        break;
      }
    }
  }
  return out;
}

}  // namespace mschmidt
