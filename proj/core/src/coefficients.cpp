#include "mschmidt/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "mschmidt/bipartite.hpp"
#include "mschmidt/schmidt_number.hpp"
#include "mschmidt/tensor.hpp"

namespace mschmidt {
namespace {

constexpr double kTieTolerance = 1e-7;
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

SubsystemSet single(int party) { return SubsystemSet::from_zero_based({party}); }

std::vector<double> descending(std::vector<double> v) {
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

std::vector<double> to_vector(const RVector& v) { return {v.data(), v.data() + v.size()}; }

double entropy(const std::vector<double>& v) { return coefficient_entropy(std::span<const double>(v)); }

// sigma(rho_t~): eigenvalues of rho_t^{1/2} / sqrt 2 on its support.
std::vector<double> root_spectrum(const PureState& s, int party, double tol) {
  const Spectrum sp = spectrum(reduce(s, single(party)).matrix());
  const int r = numerical_rank(sp.values, tol);
  std::vector<double> out;
  for (int k = 0; k < r; ++k) out.push_back(std::sqrt(std::max(sp.values(k), 0.0) / 2.0));
  return out;
}

CoefficientSet svd_coefficients(const PureState& s, double tol) {
  CoefficientSet c;
  c.values = to_vector(schmidt_decompose(s, single(0), tol).coefficients);
  c.tie_branches = {c.values};
  c.provenance.push_back("two parties: Schmidt decomposition");
  return c;
}

std::string fmt_double(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

struct Branch {
  int party;
  double score;
  std::vector<double> values;
  bool exact;
};

CoefficientSet select_branch(std::vector<Branch> branches, const std::string& header) {
  if (branches.empty()) throw InternalConsistencyError("no coefficient branch could be completed");
  double best = branches.front().score;
  for (const auto& b : branches) best = std::max(best, b.score);
  CoefficientSet c;
  c.provenance.push_back(header);
  std::ostringstream ties;
  ties << "tied parties:";
  int selected = -1;
  for (const auto& b : branches) {
    c.provenance.push_back("party " + std::to_string(b.party + 1) + ": E=" + fmt_double(b.score));
    if (b.score < best - kTieTolerance) continue;
    ties << ' ' << b.party + 1;
    if (selected < 0) {
      c.values = descending(b.values);
      c.exact = b.exact;
      selected = b.party;
    }
    c.tie_branches.push_back(descending(b.values));
  }
  c.provenance.push_back("selected party " + std::to_string(selected + 1));
  c.provenance.push_back(ties.str());
  return c;
}

CoefficientSet genuine_coefficients(const PureState& state, const PureSchmidtAnalysis& analysis,
                                    const SearchConfig& config) {
  const std::size_t m = state.parties();
  const double tol = config.rank_tol;
  bool all_exact = analysis.result.exact();
  std::vector<Branch> branches;

  for (int t : analysis.maximizing) {
    const auto& term = analysis.terms[static_cast<std::size_t>(t)];
    const int target = term.reduction.hi;
    const bool exact = term.reduction.exact();
    const std::vector<double> sigma = root_spectrum(state, t, tol);
    Branch b{t, entropy(sigma), sigma, exact};
    if (target == 1) {
      b.values.push_back(kInvSqrt2);
      b.score += 0.5;
    } else {
      const DensityMatrix rest = reduce(state, single(t).complement(m));
      try {
        const EnsembleElement e = max_entropy_ensemble_element(rest, target, config);
        double tail = 0.0;
        for (double g : e.coefficients.values) {
          b.values.push_back(g * kInvSqrt2);
          tail += g * g;
        }
        // The scaled union is normalized only if the element's set is.
        b.exact = b.exact && e.coefficients.exact && std::abs(tail - 1.0) < 1e-9;
        b.score += m == 3 ? entropy(std::vector<double>(b.values.begin() + static_cast<long>(sigma.size()),
                                                        b.values.end()))
                          : e.entropy;
      } catch (const DomainError&) {
        all_exact = false;
        continue;
      }
    }
    branches.push_back(std::move(b));
  }

  std::string header = "GE m=" + std::to_string(m) + ": sigma(rho_t~) union scaled coefficients of the best "
                       "rank-matching element of rho_tbar";
  if (m == 4) header += " (element entropy taken from its own selected three-party branch)";
  CoefficientSet c = select_branch(std::move(branches), header);
  c.exact = c.exact && all_exact;
  return c;
}

}  // namespace

double CoefficientSet::squared_norm() const {
  double s = 0.0;
  for (double v : values) s += v * v;
  return s;
}

double generalized_eof(std::span<const double> coefficients) { return coefficient_entropy(coefficients); }

double generalized_eof(const CoefficientSet& coefficients) {
  return coefficient_entropy(std::span<const double>(coefficients.values));
}

CoefficientSet pure_schmidt_coefficients(const PureState& state, const SearchConfig& config) {
  const std::size_t m = state.parties();
  const double tol = config.rank_tol;
  if (m == 1) return CoefficientSet{{1.0}, {"single party"}, {{1.0}}, true};

  const PureSchmidtAnalysis analysis = analyze_pure(state, config);
  const auto& part = analysis.partition;
  switch (part.kind) {
    case SeparabilityClass::FullySeparable:
      return CoefficientSet{{1.0}, {"fully separable"}, {{1.0}}, true};

    case SeparabilityClass::PartiallySeparable: {
      std::vector<CoefficientSet> subs;
      bool pairs_only = true;
      for (std::size_t f = 0; f < part.factors.size(); ++f) {
        if (!part.entangled[f]) continue;
        subs.push_back(pure_schmidt_coefficients(part.factor_states[f], config));
        pairs_only = pairs_only && part.factors[f].size() == 2;
      }
      if (subs.size() == 1) {
        CoefficientSet c = std::move(subs.front());
        c.provenance.insert(c.provenance.begin(), part.structure() + ": coefficients of the entangled factor");
        return c;
      }
      const double scale = 1.0 / std::sqrt(static_cast<double>(subs.size()));
      CoefficientSet c;
      std::string note = part.structure() + ": union of factor coefficients scaled by 1/sqrt(" +
                         std::to_string(subs.size()) + ")";
      if (!(m == 4 && pairs_only)) note += " (inferred)";
      c.provenance.push_back(note);
      for (const auto& s : subs) {
        for (double v : s.values) c.values.push_back(v * scale);
        c.exact = c.exact && s.exact;
      }
      c.values = descending(std::move(c.values));
      c.tie_branches = {c.values};
      return c;
    }

    case SeparabilityClass::GenuinelyEntangled:
      break;
  }

  if (m == 2) return svd_coefficients(state, tol);
  if (m >= 5)
    throw UnsupportedCase("Schmidt coefficients of genuinely entangled states with " + std::to_string(m) +
                          " parties are not defined");
  return genuine_coefficients(state, analysis, config);
}

EnsembleElement max_entropy_ensemble_element(const DensityMatrix& rho, int rank_target, const SearchConfig& config) {
  if (rank_target < 1) throw DomainError("rank target must be at least 1");
  const std::size_t m = rho.parties();
  const DimensionProfile& profile = rho.profile();
  const double tol = config.rank_tol;

  auto coefficients_of = [&](const PureState& s) {
    return m == 1 ? CoefficientSet{{1.0}, {"single party"}, {{1.0}}, true}
           : m == 2 ? svd_coefficients(s, tol)
                    : pure_schmidt_coefficients(s, config);
  };

  ElementCheck accept;
  ElementObjective objective;
  ElementPenalty violation;
  SearchConfig budget = config;
  const int d = numerical_rank(spectrum(rho.matrix()).values, tol);
  if (m <= 2) {
    budget.restarts = std::min(config.restarts, 2 * d + 2);
    accept = [&](const PureState& s) {
      return m == 1 ? rank_target == 1 : schmidt_decompose(s, single(0), tol).rank == rank_target;
    };
    objective = [&](const PureState& s) {
      return m == 1 ? 0.0 : entanglement_entropy(schmidt_decompose(s, single(0), tol));
    };
    if (m == 2)
      violation = [&](const CVector& v) {
        Eigen::JacobiSVD<CMatrix> svd(flatten(v, profile, single(0)));
        const RVector sq = svd.singularValues().array().square();
        return rank_target < sq.size() ? sq.tail(sq.size() - rank_target).sum() : 0.0;
      };
  } else {
    accept = [&](const PureState& s) {
      const auto r = pure_schmidt_number(s, config);
      return r.exact() && r.lo == rank_target;
    };
    objective = [&](const PureState& s) {
      try {
        return generalized_eof(pure_schmidt_coefficients(s, config));
      } catch (const std::exception&) {
        return 0.0;
      }
    };
    if (rank_target == 1)
      violation = [&](const CVector& v) {
        double c = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
          Eigen::JacobiSVD<CMatrix> svd(flatten(v, profile, single(static_cast<int>(i))));
          c += 1.0 - svd.singularValues()(0) * svd.singularValues()(0);
        }
        return c;
      };
    budget.restarts = std::min(config.restarts, d + 2);
    budget.iterations = std::min(config.iterations, 100);
  }

  const auto found = maximize_in_range(rho, objective, accept, budget, std::log2(rank_target), violation);
  if (!found)
    throw DomainError("no ensemble element with Schmidt number " + std::to_string(rank_target) + " found");
  EnsembleElement e{found->state, coefficients_of(found->state), found->objective};
  e.entropy = generalized_eof(e.coefficients);
  return e;
}

EofBounds mixed_generalized_eof(const DensityMatrix& rho, const SearchConfig& config) {
  const EnsembleCandidate spectral = eigen_ensemble(rho, config.rank_tol);
  auto average = [&](const EnsembleCandidate& ens) {
    double e = 0.0;
    for (std::size_t j = 0; j < ens.size(); ++j)
      e += ens.weights[j] * generalized_eof(pure_schmidt_coefficients(ens.states[j], config));
    return e;
  };
  if (spectral.size() == 1) {
    const double v = average(spectral);
    return {v, v, false};
  }
  EofBounds out{0.0, average(spectral), true};
  const SchmidtNumberResult sn = mixed_schmidt_number(rho, config);
  if (sn.witness) {
    const double w = average(*sn.witness);
    if (w < out.hi - 1e-12) {
      out.hi = w;
      out.spectral_only = false;
    }
  }
  return out;
}

}  // namespace mschmidt
