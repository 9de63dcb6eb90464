#include "mschmidt/partition.hpp"

#include <algorithm>
#include <functional>

#include "mschmidt/tensor.hpp"

namespace mschmidt {
namespace {

void split_block(const PureState& state, const SubsystemSet& block, double tol, std::vector<SubsystemSet>& out) {
  if (block.size() > 1) {
    for (const auto& part : enumerate_splits(block)) {
      if (matrix_rank(flatten(state, part), tol) != 1) continue;
      std::vector<int> rest;
      for (int i : block.indices())
        if (!part.contains(i)) rest.push_back(i);
      split_block(state, part, tol, out);
      split_block(state, SubsystemSet::from_zero_based(std::move(rest)), tol, out);
      return;
    }
  }
  out.push_back(block);
}

PureState factor_state(const PureState& state, const SubsystemSet& factor) {
  if (factor.size() == state.parties()) return state;
  const Spectrum s = spectrum(reduce(state, factor).matrix());
  if (s.values(0) < 1.0 - 1e-8)
    throw InternalConsistencyError("reduction onto factor " + factor.label() + " is not pure");
  return PureState::normalized(restrict_profile(state.profile(), factor), s.vectors.col(0));
}

}  // namespace

std::string PartitionStructure::structure() const {
  std::string out;
  for (std::size_t k = 0; k < factors.size(); ++k) {
    if (k) out += '|';
    out += factors[k].label();
  }
  return out;
}

std::string PartitionStructure::label() const {
  switch (kind) {
    case SeparabilityClass::FullySeparable: return "FullySeparable";
    case SeparabilityClass::GenuinelyEntangled: return "GE";
    case SeparabilityClass::PartiallySeparable: break;
  }
  return structure();
}

std::size_t PartitionStructure::entangled_count() const {
  return static_cast<std::size_t>(std::count(entangled.begin(), entangled.end(), true));
}

PartitionStructure factorize(const PureState& state, double rank_tol) {
  const std::size_t m = state.parties();
  PartitionStructure p;
  split_block(state, SubsystemSet::all(m), rank_tol, p.factors);
  std::sort(p.factors.begin(), p.factors.end(),
            [](const SubsystemSet& a, const SubsystemSet& b) { return a.indices().front() < b.indices().front(); });
  for (const auto& f : p.factors) {
    p.entangled.push_back(f.size() >= 2);
    p.factor_states.push_back(factor_state(state, f));
  }
  if (p.factors.size() == m)
    p.kind = SeparabilityClass::FullySeparable;
  else if (p.factors.size() == 1)
    p.kind = SeparabilityClass::GenuinelyEntangled;
  else
    p.kind = SeparabilityClass::PartiallySeparable;
  return p;
}

std::vector<int> local_rank_vector(const PureState& state, double rank_tol) {
  std::vector<int> ranks;
  for (std::size_t i = 0; i < state.parties(); ++i)
    ranks.push_back(matrix_rank(flatten(state, SubsystemSet::from_zero_based({static_cast<int>(i)})), rank_tol));
  return ranks;
}

std::vector<SubsystemSet> enumerate_splits(const SubsystemSet& parties) {
  const auto& idx = parties.indices();
  std::vector<SubsystemSet> out;
  if (idx.size() < 2) return out;
  const std::size_t k = idx.size() - 1;
  for (std::uint64_t mask = 0; mask + 1 < (std::uint64_t{1} << k); ++mask) {
    std::vector<int> s{idx.front()};
    for (std::size_t b = 0; b < k; ++b)
      if (mask >> b & 1U) s.push_back(idx[b + 1]);
    out.push_back(SubsystemSet::from_zero_based(std::move(s)));
  }
  std::sort(out.begin(), out.end(), [](const SubsystemSet& a, const SubsystemSet& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.indices() < b.indices();
  });
  return out;
}

std::vector<SubsystemSet> enumerate_bipartitions(std::size_t m) {
  if (m < 2) throw DomainError("bipartitions need at least two parties");
  return enumerate_splits(SubsystemSet::all(m));
}

std::vector<std::vector<SubsystemSet>> enumerate_set_partitions(std::size_t m) {
  std::vector<std::vector<SubsystemSet>> out;
  if (m == 0) return out;
  std::vector<int> block_of(m, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int blocks) {
    if (pos == m) {
      std::vector<std::vector<int>> groups(static_cast<std::size_t>(blocks));
      for (std::size_t i = 0; i < m; ++i) groups[static_cast<std::size_t>(block_of[i])].push_back(static_cast<int>(i));
      std::vector<SubsystemSet> partition;
      for (auto& g : groups) partition.push_back(SubsystemSet::from_zero_based(std::move(g)));
      out.push_back(std::move(partition));
      return;
    }
    for (int b = 0; b <= blocks; ++b) {
      block_of[pos] = b;
      rec(pos + 1, std::max(blocks, b + 1));
    }
  };
  block_of[0] = 0;
  rec(1, 1);
  return out;
}

}  // namespace mschmidt
