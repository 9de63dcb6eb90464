#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mschmidt/search.hpp"
#include "mschmidt/types.hpp"

namespace mschmidt::cli {

struct AnalysisReport {
  std::string name;
  std::vector<int> dims;
  std::string label;
  std::vector<int> local_ranks;
  int schmidt_lo = 1;
  int schmidt_hi = 1;
  /// "ok", "inexact" or "unsupported".
  std::string coefficient_status = "ok";
  std::vector<double> coefficients;
  std::optional<double> eof;
  std::vector<std::string> trace;
  std::vector<std::string> warnings;
  SearchConfig config;
  double seconds = 0.0;

  [[nodiscard]] bool exact() const noexcept { return schmidt_lo == schmidt_hi; }
};

AnalysisReport analyze_state(const PureState& state, const SearchConfig& config, std::string name = {});

/// Human-readable table, including wall time.
std::string render_table(const AnalysisReport& report);

/// Machine-readable document. Wall time is left out so reruns with the same
/// inputs produce identical bytes.
std::string render_json(const AnalysisReport& report);

}  // namespace mschmidt::cli
