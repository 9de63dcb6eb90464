#include "mschmidt/cli/state_file.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace mschmidt::cli {
namespace {

// Shortest representation that parses back to the same double.
std::string number(double x) {
  if (x == 0.0) return "0";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return {buf, res.ptr};
}

std::string quoted(const std::string& s) { return nlohmann::json(s).dump(); }

}  // namespace

StateFile parse_state_file(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("state file is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw FormatError("state file must be a JSON object");
  if (!j.contains("dims") || !j["dims"].is_array()) throw FormatError("state file needs a \"dims\" array");
  if (!j.contains("amplitudes") || !j["amplitudes"].is_array())
    throw FormatError("state file needs an \"amplitudes\" array");

  StateFile f;
  std::size_t total = 1;
  for (const auto& d : j["dims"]) {
    if (!d.is_number_integer() || d.get<long long>() < 1) throw FormatError("dims must be positive integers");
    f.dims.push_back(d.get<int>());
    total *= static_cast<std::size_t>(f.dims.back());
  }
  if (f.dims.empty()) throw FormatError("dims must not be empty");
  for (const auto& a : j["amplitudes"]) {
    if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number())
      throw FormatError("each amplitude must be a [re, im] pair");
    f.amplitudes.emplace_back(a[0].get<double>(), a[1].get<double>());
  }
  if (f.amplitudes.size() != total)
    throw FormatError("expected " + std::to_string(total) + " amplitudes, found " +
                      std::to_string(f.amplitudes.size()));
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw FormatError("name must be a string");
    f.name = j["name"].get<std::string>();
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) throw FormatError("seed must be a nonnegative integer");
    f.seed = j["seed"].get<std::uint64_t>();
  }
  return f;
}

std::string serialize_state_file(const StateFile& f) {
  std::ostringstream os;
  os << "{\n";
  if (f.name) os << "  \"name\": " << quoted(*f.name) << ",\n";
  if (f.seed) os << "  \"seed\": " << *f.seed << ",\n";
  os << "  \"dims\": [";
  for (std::size_t i = 0; i < f.dims.size(); ++i) os << (i ? ", " : "") << f.dims[i];
  os << "],\n  \"amplitudes\": [\n";
  for (std::size_t k = 0; k < f.amplitudes.size(); ++k) {
    os << "    [" << number(f.amplitudes[k].real()) << ", " << number(f.amplitudes[k].imag()) << "]";
    os << (k + 1 < f.amplitudes.size() ? ",\n" : "\n");
  }
  os << "  ]\n}\n";
  return os.str();
}

StateFile load_state_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_state_file(buf.str());
}

void save_state_file(const std::filesystem::path& path, const StateFile& file) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path.string());
  out << serialize_state_file(file);
  if (!out) throw FormatError("write failed for " + path.string());
}

StateFile to_state_file(const PureState& state, std::optional<std::string> name, std::optional<std::uint64_t> seed) {
  StateFile f;
  f.dims = state.profile().dims();
  const CVector& a = state.amplitudes();
  f.amplitudes.assign(a.data(), a.data() + a.size());
  f.name = std::move(name);
  f.seed = seed;
  return f;
}

PureState to_pure_state(const StateFile& file, std::vector<std::string>* warnings) {
  DimensionProfile profile(file.dims);
  CVector amps = Eigen::Map<const CVector>(file.amplitudes.data(), static_cast<Eigen::Index>(file.amplitudes.size()));
  const double norm = amps.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) throw FormatError("amplitudes have zero or non-finite norm");
  if (std::abs(norm - 1.0) > kStateNormTolerance) {
    if (warnings) warnings->push_back("state norm " + number(norm) + " differs from 1; renormalized");
    amps /= norm;
  }
  return PureState(profile, amps);
}

}  // namespace mschmidt::cli
