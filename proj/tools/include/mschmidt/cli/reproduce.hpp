#pragma once

#include <string>
#include <vector>

#include "mschmidt/search.hpp"

namespace mschmidt::cli {

struct ReproductionRow {
  std::string quantity;
  std::string expected;
  std::string computed;
  std::string tolerance;
  bool pass = false;
  double seconds = 0.0;
};

/// Recomputes the worked examples (W and GHZ families): Schmidt numbers,
/// coefficient sets, generalized EoF and local-rank vectors.
std::vector<ReproductionRow> reproduce_examples(const SearchConfig& config);

std::string render_rows(const std::vector<ReproductionRow>& rows);

}  // namespace mschmidt::cli
