#include "mschmidt/cli/reproduce.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <sstream>

#include "mschmidt/coefficients.hpp"
#include "mschmidt/partition.hpp"
#include "mschmidt/schmidt_number.hpp"
#include "mschmidt/states.hpp"

namespace mschmidt::cli {
namespace {

std::string show(const std::vector<double>& v) {
  std::ostringstream os;
  os << std::setprecision(8) << '{';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  os << '}';
  return os.str();
}

std::string show(double x) {
  std::ostringstream os;
  os << std::setprecision(10) << x;
  return os.str();
}

std::string show(const std::vector<int>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

// Written out here rather than calling the library so the expected value is
// independent of the code under test.
double entropy_of(const std::vector<double>& v) {
  double e = 0.0;
  for (double x : v) e -= x * x * std::log2(x * x);
  return e;
}

// Runs `compute`, which fills `computed` and returns the verdict; any
// exception becomes a failed row.
ReproductionRow run(std::string quantity, std::string expected, std::string tolerance,
                    const std::function<bool(std::string&)>& compute) {
  ReproductionRow row{std::move(quantity), std::move(expected), "", std::move(tolerance), false, 0.0};
  const auto start = std::chrono::steady_clock::now();
  try {
    row.pass = compute(row.computed);
  } catch (const std::exception& e) {
    row.computed = std::string("error: ") + e.what();
    row.pass = false;
  }
  row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return row;
}

ReproductionRow schmidt_row(const std::string& name, const PureState& state, int expected,
                            const SearchConfig& config) {
  return run("R(" + name + ")", std::to_string(expected) + " (exact)", "0", [&](std::string& out) {
    const auto r = pure_schmidt_number(state, config);
    out = r.exact() ? std::to_string(r.lo) + " (exact)"
                    : "[" + std::to_string(r.lo) + ", " + std::to_string(r.hi) + "]";
    return r.exact() && r.lo == expected;
  });
}

ReproductionRow coefficient_row(const std::string& name, const PureState& state, std::vector<double> expected,
                                 const SearchConfig& config) {
  std::sort(expected.begin(), expected.end(), std::greater<>());
  return run("S_C(" + name + ")", show(expected), "1e-6", [&, expected](std::string& out) {
    const auto c = pure_schmidt_coefficients(state, config);
    out = show(c.values);
    if (c.values.size() != expected.size()) return false;
    for (std::size_t i = 0; i < expected.size(); ++i)
      if (std::abs(c.values[i] - expected[i]) > 1e-6) return false;
    return true;
  });
}

ReproductionRow eof_row(const std::string& name, const PureState& state, double expected, double tol,
                        const SearchConfig& config) {
  std::ostringstream t;
  t << tol;
  return run("E(" + name + ")", show(expected), t.str(), [&](std::string& out) {
    const double e = generalized_eof(pure_schmidt_coefficients(state, config));
    out = show(e);
    return std::abs(e - expected) <= tol;
  });
}

ReproductionRow rank_vector_row(const std::string& name, const PureState& state, const std::vector<int>& expected,
                                const SearchConfig& config) {
  return run("local ranks(" + name + ")", show(expected), "0", [&](std::string& out) {
    const auto r = local_rank_vector(state, config.rank_tol);
    out = show(r);
    return r == expected;
  });
}

}  // namespace

std::vector<ReproductionRow> reproduce_examples(const SearchConfig& config) {
  const double s3 = 1.0 / std::sqrt(3.0), s6 = 1.0 / std::sqrt(6.0), s2 = 1.0 / std::sqrt(2.0);
  const std::vector<double> w3_coeffs{s3, s6, 0.5, 0.5};
  const std::vector<double> ghz3_coeffs{0.5, 0.5, s2};

  std::vector<ReproductionRow> rows;
  rows.push_back(schmidt_row("W_3", w_state(3), 4, config));
  rows.push_back(schmidt_row("GHZ_3", ghz_state(3), 3, config));
  rows.push_back(schmidt_row("W_4", w_state(4), 6, config));
  rows.push_back(schmidt_row("W_5", w_state(5), 8, config));
  rows.push_back(schmidt_row("GHZ_4", ghz_state(4), 3, config));
  rows.push_back(schmidt_row("GHZ_5", ghz_state(5), 3, config));
  rows.push_back(schmidt_row("GHZ_3^(3)", ghz_state(3, 3), 4, config));
  rows.push_back(coefficient_row("W_3", w_state(3), w3_coeffs, config));
  rows.push_back(coefficient_row("GHZ_3", ghz_state(3), ghz3_coeffs, config));
  rows.push_back(eof_row("GHZ_3", ghz_state(3), entropy_of(ghz3_coeffs), 1e-9, config));
  rows.push_back(eof_row("W_3", w_state(3), entropy_of(w3_coeffs), 1e-6, config));
  rows.push_back(rank_vector_row("W_3", w_state(3), {2, 2, 2}, config));
  rows.push_back(rank_vector_row("GHZ_3", ghz_state(3), {2, 2, 2}, config));
  return rows;
}

std::string render_rows(const std::vector<ReproductionRow>& rows) {
  std::ostringstream os;
  os << std::left << std::setw(20) << "quantity" << std::setw(46) << "expected" << std::setw(46) << "computed"
     << std::setw(8) << "tol" << std::setw(8) << "result" << "time\n";
  int failed = 0;
  for (const auto& r : rows) {
    os << std::left << std::setw(20) << r.quantity << std::setw(46) << r.expected << std::setw(46) << r.computed
       << std::setw(8) << r.tolerance << std::setw(8) << (r.pass ? "PASS" : "FAIL") << std::fixed
       << std::setprecision(3) << r.seconds << " s\n";
    os.unsetf(std::ios::fixed);
    failed += r.pass ? 0 : 1;
  }
  os << (failed == 0 ? "all " + std::to_string(rows.size()) + " rows PASS\n"
                     : std::to_string(failed) + " of " + std::to_string(rows.size()) + " rows FAIL\n");
  return os.str();
}

}  // namespace mschmidt::cli
