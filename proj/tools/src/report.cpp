#include "mschmidt/cli/report.hpp"

#include <chrono>
#include <iomanip>
#include <sstream>

#include <nlohmann/json.hpp>

#include "mschmidt/coefficients.hpp"
#include "mschmidt/partition.hpp"
#include "mschmidt/schmidt_number.hpp"

namespace mschmidt::cli {
namespace {

template <class T>
std::string join(const std::vector<T>& v, const char* sep, int precision = 0) {
  std::ostringstream os;
  if (precision > 0) os << std::setprecision(precision);
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? sep : "") << v[i];
  return os.str();
}

}  // namespace

AnalysisReport analyze_state(const PureState& state, const SearchConfig& config, std::string name) {
  const auto start = std::chrono::steady_clock::now();
  AnalysisReport r;
  r.name = std::move(name);
  r.dims = state.profile().dims();
  r.config = config;

  const PureSchmidtAnalysis a = analyze_pure(state, config);
  r.label = a.partition.label();
  r.local_ranks = local_rank_vector(state, config.rank_tol);
  r.schmidt_lo = a.result.lo;
  r.schmidt_hi = a.result.hi;
  r.trace = a.result.branch_trace;

  try {
    const CoefficientSet c = pure_schmidt_coefficients(state, config);
    r.coefficients = c.values;
    r.eof = generalized_eof(c);
    r.coefficient_status = c.exact ? "ok" : "inexact";
    for (const auto& p : c.provenance) r.trace.push_back("coefficients: " + p);
  } catch (const UnsupportedCase& e) {
    r.coefficient_status = "unsupported";
    r.trace.push_back(std::string("coefficients: ") + e.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::string render_table(const AnalysisReport& r) {
  std::ostringstream os;
  auto row = [&](const std::string& key, const std::string& value) {
    os << std::left << std::setw(22) << key << value << '\n';
  };
  if (!r.name.empty()) row("state", r.name);
  row("dims", join(r.dims, "x"));
  row("classification", r.label);
  row("local ranks", "(" + join(r.local_ranks, ",") + ")");
  row("Schmidt number", r.exact() ? std::to_string(r.schmidt_lo) + " (exact)"
                                  : "[" + std::to_string(r.schmidt_lo) + ", " + std::to_string(r.schmidt_hi) + "]");
  if (r.coefficient_status == "unsupported") {
    row("coefficients", "unsupported");
    row("generalized EoF", "unsupported");
  } else {
    row("coefficients", "{" + join(r.coefficients, ", ", 8) + "}" +
                            (r.coefficient_status == "inexact" ? " (inexact)" : ""));
    std::ostringstream e;
    e << std::setprecision(8) << *r.eof;
    row("generalized EoF", e.str());
  }
  row("config", "tol=" + join(std::vector<double>{r.config.rank_tol}, "") + " seed=" + std::to_string(r.config.seed) +
                    " restarts=" + std::to_string(r.config.restarts) + " iters=" + std::to_string(r.config.iterations));
  std::ostringstream t;
  t << std::fixed << std::setprecision(3) << r.seconds << " s";
  row("time", t.str());
  os << "trace:\n";
  for (const auto& line : r.trace) os << "  " << line << '\n';
  for (const auto& w : r.warnings) os << "warning: " << w << '\n';
  return os.str();
}

std::string render_json(const AnalysisReport& r) {
  nlohmann::ordered_json j;
  if (!r.name.empty()) j["name"] = r.name;
  j["dims"] = r.dims;
  j["classification"] = r.label;
  j["local_ranks"] = r.local_ranks;
  j["schmidt_number"] = {{"lo", r.schmidt_lo}, {"hi", r.schmidt_hi}, {"exact", r.exact()}};
  j["coefficient_status"] = r.coefficient_status;
  j["coefficients"] = r.coefficients;
  j["generalized_eof"] = r.eof ? nlohmann::ordered_json(*r.eof) : nlohmann::ordered_json(nullptr);
  j["trace"] = r.trace;
  j["warnings"] = r.warnings;
  j["config"] = {{"tol", r.config.rank_tol},
                 {"seed", r.config.seed},
                 {"restarts", r.config.restarts},
                 {"iters", r.config.iterations}};
  return j.dump(2) + "\n";
}

}  // namespace mschmidt::cli
