#include "mschmidt/search.hpp"

#include <algorithm>
#include <cmath>

#include "mschmidt/random.hpp"
#include "mschmidt/tensor.hpp"
#include "optimize.hpp"

namespace mschmidt {
namespace {

// rho = A A^dagger with A = V_r diag(sqrt(lambda_r)) over the numerical range.
struct RangeFrame {
  CMatrix root;
  Eigen::Index rank = 0;
};

RangeFrame range_frame(const DensityMatrix& rho, double tol) {
  const Spectrum s = spectrum(rho.matrix());
  RangeFrame f;
  f.rank = numerical_rank(s.values, tol);
  f.root = s.vectors.leftCols(f.rank) * s.values.head(f.rank).cwiseSqrt().asDiagonal();
  return f;
}

constexpr double kNegligibleWeight = 1e-14;

CMatrix unpack(std::span<const double> x, Eigen::Index rows, Eigen::Index cols) {
  CMatrix z(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) {
      const auto k = static_cast<std::size_t>(2 * (j * rows + i));
      z(i, j) = cplx(x[k], x[k + 1]);
    }
  return z;
}

std::vector<double> pack(const CMatrix& z) {
  std::vector<double> x;
  x.reserve(static_cast<std::size_t>(2 * z.size()));
  for (Eigen::Index j = 0; j < z.cols(); ++j)
    for (Eigen::Index i = 0; i < z.rows(); ++i) {
      x.push_back(z(i, j).real());
      x.push_back(z(i, j).imag());
    }
  return x;
}

CMatrix isometry(const CMatrix& z) {
  Eigen::HouseholderQR<CMatrix> qr(z);
  return qr.householderQ() * CMatrix::Identity(z.rows(), z.cols());
}

struct RawElement {
  double weight;
  CVector unit;
};

std::vector<RawElement> elements(const RangeFrame& frame, const CMatrix& u) {
  std::vector<RawElement> out;
  for (Eigen::Index j = 0; j < u.rows(); ++j) {
    CVector v = frame.root * u.row(j).transpose();
    const double w = v.squaredNorm();
    if (w <= kNegligibleWeight) continue;
    out.push_back({w, v / std::sqrt(w)});
  }
  return out;
}

std::optional<EnsembleCandidate> accept_all(const std::vector<RawElement>& raw, const DimensionProfile& profile,
                                            const ElementCheck& check) {
  EnsembleCandidate c;
  double total = 0.0;
  for (const auto& e : raw) total += e.weight;
  for (const auto& e : raw) {
    PureState s = PureState::normalized(profile, e.unit);
    if (!check(s)) return std::nullopt;
    c.weights.push_back(e.weight / total);
    c.states.push_back(std::move(s));
  }
  return c;
}

}  // namespace

CMatrix EnsembleCandidate::mixture() const {
  if (states.empty()) return {};
  const Eigen::Index n = states.front().amplitudes().size();
  CMatrix m = CMatrix::Zero(n, n);
  for (std::size_t j = 0; j < states.size(); ++j) m += weights[j] * states[j].projector();
  return m;
}

double EnsembleCandidate::reconstruction_error(const CMatrix& target) const {
  return (mixture() - target).cwiseAbs().maxCoeff();
}

EnsembleCandidate eigen_ensemble(const DensityMatrix& rho, double rank_tol) {
  const Spectrum s = spectrum(rho.matrix());
  const int r = numerical_rank(s.values, rank_tol);
  EnsembleCandidate c;
  double total = s.values.head(r).sum();
  for (int k = 0; k < r; ++k) {
    c.weights.push_back(s.values(k) / total);
    c.states.push_back(PureState::normalized(rho.profile(), s.vectors.col(k)));
  }
  return c;
}

std::optional<EnsembleCandidate> search_ensemble(const DensityMatrix& rho, const ElementPenalty& penalty,
                                                 const ElementCheck& check, const SearchConfig& config) {
  const RangeFrame frame = range_frame(rho, config.rank_tol);
  const Eigen::Index d = frame.rank;
  if (d == 0) throw DomainError("density matrix has empty range");
  const Eigen::Index max_size = std::min(d * d, d + 12);

  auto cost_of = [&](const CMatrix& u) {
    double c = 0.0;
    for (const auto& e : elements(frame, u)) c += e.weight * penalty(e.unit);
    return c;
  };

  // Restart 0 is the spectral ensemble itself.
  if (auto hit = accept_all(elements(frame, CMatrix::Identity(d, d)), rho.profile(), check)) return hit;
  if (d == 1) return std::nullopt;

  for (int restart = 1; restart < config.restarts; ++restart) {
    CounterRng rng(config.seed, static_cast<std::uint64_t>(restart));
    const Eigen::Index n = d + (restart - 1) % (max_size - d + 1);
    const CMatrix z0 = rng.ginibre(n, d);
    const detail::Objective f = [&](std::span<const double> x) { return cost_of(isometry(unpack(x, n, d))); };
    auto best = detail::bfgs(f, pack(z0), config.iterations, 1e-12, 1e-13);
    if (best.value > 1e-6) continue;
    // A short simplex polish helps where the penalty is not smooth at the optimum.
    if (best.value > 1e-13) best = detail::nelder_mead(f, best.x, 1e-5, config.iterations, 1e-13, 1e-15);
    const CMatrix u = isometry(unpack(best.x, n, d));
    if (auto hit = accept_all(elements(frame, u), rho.profile(), check)) return hit;
  }
  return std::nullopt;
}

std::optional<RangeElement> maximize_in_range(const DensityMatrix& rho, const ElementObjective& objective,
                                              const ElementCheck& accept, const SearchConfig& config,
                                              double ceiling, const ElementPenalty& violation) {
  const RangeFrame frame = range_frame(rho, config.rank_tol);
  const Eigen::Index d = frame.rank;
  if (d == 0) throw DomainError("density matrix has empty range");

  auto state_of = [&](std::span<const double> x) {
    CVector u(d);
    for (Eigen::Index k = 0; k < d; ++k) u(k) = cplx(x[2 * k], x[2 * k + 1]);
    return PureState::normalized(rho.profile(), frame.root * u);
  };

  std::optional<RangeElement> best;
  const int restarts = std::max(config.restarts, 1);
  for (int restart = 0; restart < restarts; ++restart) {
    std::vector<double> x0(static_cast<std::size_t>(2 * d), 0.0);
    if (restart < d) {
      x0[static_cast<std::size_t>(2 * restart)] = 1.0;
    } else {
      CounterRng rng(config.seed, static_cast<std::uint64_t>(restart) + 0x1000);
      for (auto& v : x0) v = rng.normal();
    }
    const detail::Objective f = [&](std::span<const double> x) {
      CVector u(d);
      for (Eigen::Index k = 0; k < d; ++k) u(k) = cplx(x[2 * k], x[2 * k + 1]);
      if (!((frame.root * u).norm() > 1e-12)) return 1e300;
      const PureState s = state_of(x);
      if (!accept(s)) return 1.0 + (violation ? violation(s.amplitudes()) : 0.0);
      return -objective(s);
    };
    const auto r = d == 1 ? detail::MinimizeResult{x0, f(x0), 0}
                          : detail::nelder_mead(f, x0, 0.25, config.iterations, 1e-11, -ceiling);
    PureState s = state_of(r.x);
    if (!accept(s)) continue;
    const double value = objective(s);
    if (!best || value > best->objective + 1e-12) best = RangeElement{std::move(s), value};
    if (best->objective >= ceiling - 1e-12) break;
  }
  return best;
}

}  // namespace mschmidt
