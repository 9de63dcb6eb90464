#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mschmidt/cli/report.hpp"
#include "mschmidt/cli/reproduce.hpp"
#include "mschmidt/cli/state_file.hpp"
#include "mschmidt/states.hpp"

namespace {

using namespace mschmidt;

constexpr const char* kFormatHelp = R"(State files are JSON:
  {"name": "...", "seed": 0, "dims": [N1, ..., Nm], "amplitudes": [[re, im], ...]}
Amplitudes are row-major with party 1 the slowest index, so entry
k = ((i1*N2 + i2)*N3 + i3)... holds <i1 i2 ... im|psi>, levels counted from 0.
name and seed are optional. States whose norm differs from 1 by more than
1e-10 are renormalized on load with a warning.)";

void add_budget(CLI::App* cmd, SearchConfig& cfg) {
  cmd->add_option("--tol", cfg.rank_tol, "relative rank cutoff on squared singular values / eigenvalues")
      ->capture_default_str();
  cmd->add_option("--seed", cfg.seed, "seed for ensemble searches")->capture_default_str();
  cmd->add_option("--restarts", cfg.restarts, "restarts per ensemble search")->capture_default_str();
  cmd->add_option("--iters", cfg.iterations, "iterations per local optimization")->capture_default_str();
}

std::vector<int> parse_dims(const std::string& s) {
  std::vector<int> dims;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) dims.push_back(std::stoi(item));
  return dims;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multipartite Schmidt numbers, Schmidt coefficients and generalized entanglement of formation"};
  app.footer(kFormatHelp);
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "write a state file");
  std::string family, out_path, dims_text, name;
  int m = 3, d = 2;
  std::uint64_t gen_seed = 0;
  AcinParameters acin;
  gen->add_option("family", family, "w | ghz | acin | random | random-product")
      ->required()
      ->check(CLI::IsMember({"w", "ghz", "acin", "random", "random-product"}));
  gen->add_option("--m", m, "number of parties (w, ghz)")->capture_default_str();
  gen->add_option("--d", d, "local dimension (ghz)")->capture_default_str();
  gen->add_option("--dims", dims_text, "comma-separated local dimensions (random, random-product)");
  gen->add_option("--seed", gen_seed, "seed (random, random-product)")->capture_default_str();
  gen->add_option("--l0", acin.l0)->capture_default_str();
  gen->add_option("--l1", acin.l1)->capture_default_str();
  gen->add_option("--l2", acin.l2)->capture_default_str();
  gen->add_option("--l3", acin.l3)->capture_default_str();
  gen->add_option("--l4", acin.l4)->capture_default_str();
  gen->add_option("--theta", acin.theta, "phase in [0, pi] (acin)")->capture_default_str();
  gen->add_option("--name", name, "name stored in the file");
  gen->add_option("-o,--out", out_path, "output path (default: stdout)");

  // analyze
  auto* analyze = app.add_subcommand("analyze", "classify a state and compute its Schmidt data");
  std::string in_path, json_path;
  SearchConfig cfg;
  analyze->add_option("file", in_path, "state file")->required();
  add_budget(analyze, cfg);
  analyze->add_option("--json", json_path, "also write the report as JSON to this path");

  // reproduce
  auto* reproduce = app.add_subcommand("reproduce", "recompute the worked W/GHZ examples");
  add_budget(reproduce, cfg);

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      PureState state = [&] {
        if (family == "w") return w_state(m);
        if (family == "ghz") return ghz_state(m, d);
        if (family == "acin") return acin_state(acin);
        if (dims_text.empty()) throw DomainError("--dims is required for " + family);
        const DimensionProfile profile(parse_dims(dims_text));
        return family == "random" ? random_pure(profile, gen_seed) : random_product(profile, gen_seed);
      }();
      const bool seeded = family == "random" || family == "random-product";
      const auto file = cli::to_state_file(state, name.empty() ? std::nullopt : std::optional(name),
                                           seeded ? std::optional(gen_seed) : std::nullopt);
      std::ostream& info = out_path.empty() ? std::cerr : std::cout;
      if (out_path.empty())
        std::cout << cli::serialize_state_file(file);
      else
        cli::save_state_file(out_path, file);
      info << "dims " << state.profile().to_string() << "  norm " << state.amplitudes().norm() << '\n';
      return 0;
    }

    if (analyze->parsed()) {
      const auto file = cli::load_state_file(in_path);
      std::vector<std::string> warnings;
      const PureState state = cli::to_pure_state(file, &warnings);
      for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
      auto report = cli::analyze_state(state, cfg, file.name.value_or(std::filesystem::path(in_path).stem().string()));
      report.warnings = warnings;
      std::cout << cli::render_table(report);
      if (!json_path.empty()) write_text(json_path, cli::render_json(report));
      return 0;
    }

    if (reproduce->parsed()) {
      const auto rows = cli::reproduce_examples(cfg);
      std::cout << cli::render_rows(rows);
      bool ok = true;
      for (const auto& r : rows) {
        if (!r.pass) {
          std::cerr << "FAIL: " << r.quantity << " expected " << r.expected << ", got " << r.computed << '\n';
          ok = false;
        }
      }
      return ok ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
