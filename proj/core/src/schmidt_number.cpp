#include "mschmidt/schmidt_number.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "mschmidt/bipartite.hpp"
#include "mschmidt/tensor.hpp"

namespace mschmidt {
namespace {

struct Bounds {
  int lo = 1;
  int hi = 1;
};

// Several entangled factors add up; a single one carries its own number.
Bounds combine_factors(const std::vector<Bounds>& entangled) {
  if (entangled.empty()) return {1, 1};
  if (entangled.size() == 1) return entangled.front();
  Bounds b{0, 0};
  for (const auto& e : entangled) {
    b.lo += e.lo;
    b.hi += e.hi;
  }
  return b;
}

std::string interval(int lo, int hi) {
  return lo == hi ? std::to_string(lo) : "[" + std::to_string(lo) + "," + std::to_string(hi) + "]";
}

int block_dim(const DimensionProfile& profile, const SubsystemSet& s) {
  int d = 1;
  for (int i : s.indices()) d *= profile.dim(static_cast<std::size_t>(i));
  return d;
}

SubsystemSet single(int party) { return SubsystemSet::from_zero_based({party}); }
// ---------------------------------------------------------------------------
// Structural patterns used as search targets: a set partition of the parties
// where pair and triple blocks may carry a cap on their Schmidt number and
// larger blocks are left unconstrained.

struct Pattern {
  std::vector<SubsystemSet> blocks;
  std::vector<int> caps;  // per block; 0 = no cap
  int value = 1;
};

int ceiling_of(const std::vector<int>& dims);

int ge_ceiling(const std::vector<int>& dims) {
  const std::size_t m = dims.size();
  if (m == 1) return 1;
  if (m == 2) return std::min(dims[0], dims[1]);
  const long total = std::accumulate(dims.begin(), dims.end(), 1L, std::multiplies<>());
  int best = 0;
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<int> rest(dims);
    rest.erase(rest.begin() + static_cast<long>(i));
    const int r = static_cast<int>(std::min<long>(dims[i], total / dims[i]));
    best = std::max(best, r + ceiling_of(rest));
  }
  return best;
}

int ceiling_of(const std::vector<int>& dims) {
  thread_local std::map<std::vector<int>, int> memo;
  if (auto it = memo.find(dims); it != memo.end()) return it->second;
  int best = 1;
  if (dims.size() >= 2) {
    for (const auto& partition : enumerate_set_partitions(dims.size())) {
      std::vector<Bounds> parts;
      for (const auto& block : partition) {
        if (block.size() < 2) continue;
        std::vector<int> sub;
        for (int i : block.indices()) sub.push_back(dims[static_cast<std::size_t>(i)]);
        const int v = ge_ceiling(sub);
        parts.push_back({v, v});
      }
      best = std::max(best, combine_factors(parts).hi);
    }
  }
  memo.emplace(dims, best);
  return best;
}

std::vector<int> block_dims(const DimensionProfile& profile, const SubsystemSet& block) {
  std::vector<int> d;
  for (int i : block.indices()) d.push_back(profile.dim(static_cast<std::size_t>(i)));
  return d;
}

// Smallest cap worth distinguishing for a block; blocks of four or more
// parties are never capped.
int first_cap(const SubsystemSet& block) {
  if (block.size() == 2) return 2;
  if (block.size() == 3) return 3;
  return 0;
}

std::vector<Pattern> patterns_up_to(const DimensionProfile& profile, int target) {
  std::vector<Pattern> out;
  for (const auto& partition : enumerate_set_partitions(profile.parties())) {
    std::vector<std::size_t> capped;
    std::vector<int> ceilings(partition.size(), 1);
    for (std::size_t b = 0; b < partition.size(); ++b) {
      if (partition[b].size() >= 2) ceilings[b] = ceiling_of(block_dims(profile, partition[b]));
      if (first_cap(partition[b]) > 0) capped.push_back(b);
    }

    // Enumerate every cap assignment for the capped blocks; a cap equal to
    // the block's ceiling means no constraint.
    std::vector<int> caps;
    for (std::size_t b : capped) caps.push_back(first_cap(partition[b]));
    while (true) {
      Pattern p{partition, std::vector<int>(partition.size(), 0), 1};
      std::vector<Bounds> parts;
      for (std::size_t b = 0; b < partition.size(); ++b) {
        if (partition[b].size() < 2) continue;
        int v = ceilings[b];
        if (auto it = std::find(capped.begin(), capped.end(), b); it != capped.end()) {
          v = std::min(v, caps[static_cast<std::size_t>(it - capped.begin())]);
          p.caps[b] = v < ceilings[b] ? v : 0;
        }
        parts.push_back({v, v});
      }
      p.value = combine_factors(parts).hi;
      if (p.value <= target) out.push_back(std::move(p));

      std::size_t k = 0;
      for (; k < caps.size(); ++k) {
        if (++caps[k] <= ceilings[capped[k]]) break;
        caps[k] = first_cap(partition[capped[k]]);
      }
      if (k == caps.size()) break;
    }
  }
  return out;
}

class PenaltyEvaluator {
 public:
  PenaltyEvaluator(const CVector& v, const DimensionProfile& profile) : v_(v), profile_(profile) {}

  // Squared singular values of the flattening with `s` as rows.
  const RVector& spectrum_of(const SubsystemSet& s) {
    auto [it, fresh] = spectra_.try_emplace(s.mask());
    if (fresh) {
      Eigen::JacobiSVD<CMatrix> svd(flatten(v_, profile_, s));
      it->second = svd.singularValues().array().square();
    }
    return it->second;
  }

  double tail(int party, int cap) {
    const RVector& sq = spectrum_of(single(party));
    return cap < sq.size() ? sq.tail(sq.size() - cap).sum() : 0.0;
  }

  // Total weight of negative eigenvalues of the partial transpose of the
  // two-party reduction: zero on PPT reductions.
  double negativity(const SubsystemSet& pair) {
    auto [it, fresh] = negativities_.try_emplace(pair.mask());
    if (fresh) {
      const DensityMatrix r = reduce(PureState::normalized(profile_, v_), pair);
      const CMatrix pt = partial_transpose(r.matrix(), r.profile(), single(0));
      Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (pt + pt.adjoint()), Eigen::EigenvaluesOnly);
      it->second = -es.eigenvalues().cwiseMin(0.0).sum();
    }
    return it->second;
  }

  // A three-party block has Schmidt number at most `cap` when every term
  // r_i + R(rho_jk) is. Each term is steered toward R(rho_jk) = 1 via PPT or
  // toward a full-rank R(rho_jk) with a smaller local rank r_i.
  double triple(const SubsystemSet& block, int cap) {
    const auto& idx = block.indices();
    double cost = 0.0;
    for (std::size_t a = 0; a < 3; ++a) {
      const int i = idx[a];
      std::vector<int> rest;
      for (std::size_t b = 0; b < 3; ++b)
        if (b != a) rest.push_back(idx[b]);
      const SubsystemSet pair = SubsystemSet::from_zero_based(rest);
      const int full = std::min(profile_.dim(static_cast<std::size_t>(rest[0])),
                                profile_.dim(static_cast<std::size_t>(rest[1])));
      double best = tail(i, cap - 1) + negativity(pair);
      if (cap - full >= 1) best = std::min(best, tail(i, cap - full));
      cost += best;
    }
    return cost;
  }

 private:
  const CVector& v_;
  const DimensionProfile& profile_;
  std::map<std::uint64_t, RVector> spectra_;
  std::map<std::uint64_t, double> negativities_;
};

double pattern_penalty(const CVector& v, const DimensionProfile& profile, const std::vector<Pattern>& patterns) {
  PenaltyEvaluator eval(v, profile);
  double best = 1e300;
  for (const auto& p : patterns) {
    double cost = 0.0;
    if (p.blocks.size() > 1)
      for (const auto& b : p.blocks) cost += 1.0 - eval.spectrum_of(b)(0);
    for (std::size_t b = 0; b < p.blocks.size() && cost < best; ++b) {
      if (p.caps[b] == 0) continue;
      cost += p.blocks[b].size() == 2 ? eval.tail(p.blocks[b].indices()[0], p.caps[b])
                                      : eval.triple(p.blocks[b], p.caps[b]);
    }
    best = std::min(best, cost);
  }
  return std::max(best, 0.0);
}

// Finest partition implied by generic flattening ranks (rank 1 = product cut).
void generic_blocks(const SubsystemSet& block, const std::map<std::uint64_t, int>& ranks, std::size_t m,
                    std::vector<SubsystemSet>& out) {
  auto rank_of = [&](const SubsystemSet& s) {
    const std::uint64_t mask = s.mask();
    if (auto it = ranks.find(mask); it != ranks.end()) return it->second;
    return ranks.at(s.complement(m).mask());
  };
  if (block.size() > 1) {
    for (const auto& part : enumerate_splits(block)) {
      if (rank_of(part) != 1) continue;
      std::vector<int> rest;
      for (int i : block.indices())
        if (!part.contains(i)) rest.push_back(i);
      generic_blocks(part, ranks, m, out);
      generic_blocks(SubsystemSet::from_zero_based(std::move(rest)), ranks, m, out);
      return;
    }
  }
  out.push_back(block);
}

}  // namespace

int schmidt_number_ceiling(const DimensionProfile& profile) { return ceiling_of(profile.dims()); }

PureSchmidtAnalysis analyze_pure(const PureState& state, const SearchConfig& config) {
  const std::size_t m = state.parties();
  const double tol = config.rank_tol;
  PureSchmidtAnalysis a;
  a.partition = factorize(state, tol);
  auto& res = a.result;

  switch (a.partition.kind) {
    case SeparabilityClass::FullySeparable:
      res.lo = res.hi = 1;
      res.branch_trace.push_back("fully separable -> 1");
      return a;

    case SeparabilityClass::PartiallySeparable: {
      std::vector<Bounds> parts;
      for (std::size_t f = 0; f < a.partition.factors.size(); ++f) {
        if (!a.partition.entangled[f]) continue;
        const auto& fs = a.partition.factor_states[f];
        Bounds b;
        if (fs.parties() == 2) {
          b.lo = b.hi = schmidt_decompose(fs, single(0), tol).rank;
        } else {
          const auto sub = analyze_pure(fs, config).result;
          b = {sub.lo, sub.hi};
        }
        res.branch_trace.push_back("factor " + a.partition.factors[f].label() + " -> " + interval(b.lo, b.hi));
        parts.push_back(b);
      }
      const Bounds total = combine_factors(parts);
      res.lo = total.lo;
      res.hi = total.hi;
      std::string rule = parts.size() >= 2 ? "sum over entangled factors" : "single entangled factor";
      if (parts.size() >= 2 && m >= 5) rule += " (combination rule inferred for m>=5)";
      res.branch_trace.push_back(a.partition.structure() + ": " + rule + " -> " + interval(res.lo, res.hi));
      return a;
    }

    case SeparabilityClass::GenuinelyEntangled:
      break;
  }

  if (m == 2) {
    res.lo = res.hi = schmidt_decompose(state, single(0), tol).rank;
    res.branch_trace.push_back("GE m=2: Schmidt rank " + std::to_string(res.lo));
    return a;
  }

  const std::vector<int> ranks = local_rank_vector(state, tol);
  res.lo = res.hi = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const SubsystemSet rest = single(static_cast<int>(i)).complement(m);
    PartyTerm t{static_cast<int>(i), ranks[i], mixed_schmidt_number(reduce(state, rest), config)};
    res.lo = std::max(res.lo, t.lo());
    res.hi = std::max(res.hi, t.hi());
    a.terms.push_back(std::move(t));
  }
  std::ostringstream os;
  os << "GE m=" << m << ": max_i r_i + R(rho_ibar) over";
  for (const auto& t : a.terms) {
    const std::string bar = single(t.party).complement(m).label();
    os << " " << t.local_rank << "+R(" << bar << ")=" << interval(t.lo(), t.hi());
    if (t.hi() == res.hi) a.maximizing.push_back(t.party);
  }
  os << "; maximized at party";
  for (int p : a.maximizing) os << ' ' << p + 1;
  res.branch_trace.push_back(os.str());
  const auto& lead = a.terms[static_cast<std::size_t>(a.maximizing.front())];
  const std::string prefix = "  R(" + single(lead.party).complement(m).label() + "): ";
  for (const auto& line : lead.reduction.branch_trace) res.branch_trace.push_back(prefix + line);
  return a;
}

SchmidtNumberResult pure_schmidt_number(const PureState& state, const SearchConfig& config) {
  return analyze_pure(state, config).result;
}

std::optional<EnsembleCandidate> ensemble_search(const DensityMatrix& rho, int target, const SearchConfig& config) {
  if (target < 1) throw DomainError("target Schmidt number must be at least 1");
  const DimensionProfile& profile = rho.profile();
  const std::vector<Pattern> patterns = patterns_up_to(profile, target);
  const ElementCheck check = [&](const PureState& s) { return pure_schmidt_number(s, config).hi <= target; };
  if (patterns.empty()) {
    SearchConfig spectral_only = config;
    spectral_only.restarts = 1;
    return search_ensemble(rho, [](const CVector&) { return 1.0; }, check, spectral_only);
  }
  const ElementPenalty penalty = [&](const CVector& v) { return pattern_penalty(v, profile, patterns); };
  return search_ensemble(rho, penalty, check, config);
}

int range_lower_bound(const CMatrix& basis, const DimensionProfile& profile, const SearchConfig& config) {
  const double tol = config.rank_tol;
  const std::size_t m = profile.parties();
  if (basis.rows() != profile.total()) throw DomainError("range basis does not match profile");
  if (basis.cols() == 1) return pure_schmidt_number(PureState::normalized(profile, basis.col(0)), config).lo;
  if (basis.cols() != 2 || m == 1) return 1;
  if (m == 2) return bipartite_range_lower_bound(basis, profile, tol);

  const CVector v0 = basis.col(0), v1 = basis.col(1);
  std::map<std::uint64_t, int> generic_rank;
  std::vector<Eigen::Vector2cd> exceptional;
  for (const auto& cut : enumerate_bipartitions(m)) {
    int g = 0;
    for (const auto& p : pencil_rank_drops(flatten(v0, profile, cut), flatten(v1, profile, cut), tol, &g)) {
      const bool seen = std::any_of(exceptional.begin(), exceptional.end(),
                                    [&](const Eigen::Vector2cd& q) { return std::abs(q.dot(p)) > 1.0 - 1e-8; });
      if (!seen) exceptional.push_back(p);
    }
    generic_rank[cut.mask()] = g;
  }
  auto rank_of = [&](const SubsystemSet& s) {
    if (auto it = generic_rank.find(s.mask()); it != generic_rank.end()) return it->second;
    return generic_rank.at(s.complement(m).mask());
  };

  // Off the exceptional rays every flattening has its generic rank, so the
  // factorization pattern and local ranks are constant there.
  std::vector<SubsystemSet> blocks;
  generic_blocks(SubsystemSet::all(m), generic_rank, m, blocks);
  int generic_lo = 1;
  if (blocks.size() == 1) {
    generic_lo = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const SubsystemSet rest = single(static_cast<int>(i)).complement(m);
      const int r = rank_of(single(static_cast<int>(i)));
      CMatrix pencil(block_dim(profile, rest), 2 * block_dim(profile, single(static_cast<int>(i))));
      pencil << flatten(v0, profile, rest), flatten(v1, profile, rest);
      const CMatrix span = column_space(pencil, tol);
      // The reduction's range is fixed along the family only if the pencil's
      // column spaces all coincide.
      const int reduction_lo = span.cols() == r ? range_lower_bound(span, restrict_profile(profile, rest), config) : 1;
      generic_lo = std::max(generic_lo, r + reduction_lo);
    }
  } else if (blocks.size() < m) {
    std::vector<Bounds> parts;
    for (const auto& b : blocks) {
      if (b.size() < 2) continue;
      int v = 0;
      if (b.size() == 2) {
        v = rank_of(single(b.indices()[0]));
      } else {
        for (int i : b.indices()) v = std::max(v, rank_of(single(i)) + 1);
      }
      parts.push_back({v, v});
    }
    generic_lo = combine_factors(parts).lo;
  }

  std::vector<int> exceptional_lo;
  for (const auto& p : exceptional)
    exceptional_lo.push_back(pure_schmidt_number(PureState::normalized(profile, p(0) * v0 + p(1) * v1), config).lo);
  for (int t = generic_lo; t > 1; --t) {
    const auto low = std::count_if(exceptional_lo.begin(), exceptional_lo.end(), [t](int v) { return v < t; });
    if (low <= 1) return t;
  }
  return 1;
}

SchmidtNumberResult mixed_schmidt_number(const DensityMatrix& rho, const SearchConfig& config) {
  const std::size_t m = rho.parties();
  if (m == 1) return {1, 1, std::nullopt, {"single party -> 1"}};

  const EnsembleCandidate spectral = eigen_ensemble(rho, config.rank_tol);
  if (spectral.size() == 1) {
    SchmidtNumberResult r = pure_schmidt_number(spectral.states.front(), config);
    r.witness = spectral;
    r.branch_trace.insert(r.branch_trace.begin(), "rank-1 density matrix -> pure rule");
    return r;
  }
  if (m == 2) return mixed_bipartite_schmidt_number(rho, config);

  SchmidtNumberResult out;
  for (const auto& cut : enumerate_bipartitions(m)) {
    if (ppt_entangled(rho, cut)) {
      out.lo = 2;
      out.branch_trace.push_back("PPT violated across " + cut.label() + "|" + cut.complement(m).label() + " -> lo>=2");
      break;
    }
  }
  if (spectral.size() == 2) {
    CMatrix basis(rho.profile().total(), 2);
    basis << spectral.states[0].amplitudes(), spectral.states[1].amplitudes();
    const int certified = range_lower_bound(basis, rho.profile(), config);
    if (certified > out.lo) {
      out.lo = certified;
      out.branch_trace.push_back("range certificate -> lo>=" + std::to_string(certified));
    }
  }

  int spectral_hi = 0;
  for (const auto& s : spectral.states) spectral_hi = std::max(spectral_hi, pure_schmidt_number(s, config).hi);
  out.hi = spectral_hi;
  out.witness = spectral;
  out.branch_trace.push_back("spectral ensemble -> hi<=" + std::to_string(spectral_hi));

  for (int r = out.lo; r < out.hi; ++r) {
    if (auto found = ensemble_search(rho, r, config)) {
      out.hi = r;
      out.witness = std::move(found);
      out.branch_trace.push_back("ensemble search -> hi<=" + std::to_string(r));
      break;
    }
  }
  if (out.lo > out.hi) throw InternalConsistencyError("Schmidt number lower bound exceeds upper bound");
  if (!out.exact()) out.branch_trace.push_back("interval not closed within budget");
  return out;
}

bool slocc_rank_check(const PureState& state, std::span<const CMatrix> local_invertibles, const SearchConfig& config) {
  for (const auto& op : local_invertibles) {
    if (op.rows() != op.cols()) throw DomainError("local operator is not square");
    Eigen::JacobiSVD<CMatrix> svd(op);
    const auto& sv = svd.singularValues();
    const double smallest = sv(sv.size() - 1);
    if (!(smallest > 0.0) || sv(0) / smallest > 1e10) throw DomainError("local operator is not invertible");
  }
  const PureState moved = PureState::normalized(
      state.profile(), apply_local_operators(state.amplitudes(), state.profile(), local_invertibles));
  const auto before = pure_schmidt_number(state, config);
  const auto after = pure_schmidt_number(moved, config);
  return before.lo == after.lo && before.hi == after.hi;
}

}  // namespace mschmidt
