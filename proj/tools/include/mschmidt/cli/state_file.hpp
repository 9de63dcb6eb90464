#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mschmidt/types.hpp"

namespace mschmidt::cli {

/// On-disk pure state. Amplitudes are listed in row-major order with party 1
/// as the slowest index: entry k corresponds to |i_1 ... i_m> where
/// k = ((i_1 N_2 + i_2) N_3 + i_3) ... . Stored as JSON
///   {"name": ..., "seed": ..., "dims": [...], "amplitudes": [[re, im], ...]}
/// with name and seed optional.
struct StateFile {
  std::vector<int> dims;
  std::vector<cplx> amplitudes;
  std::optional<std::string> name;
  std::optional<std::uint64_t> seed;
};

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Throws FormatError on malformed JSON, missing fields, or a length mismatch.
StateFile parse_state_file(const std::string& text);
std::string serialize_state_file(const StateFile& file);

StateFile load_state_file(const std::filesystem::path& path);
void save_state_file(const std::filesystem::path& path, const StateFile& file);

StateFile to_state_file(const PureState& state, std::optional<std::string> name = std::nullopt,
                        std::optional<std::uint64_t> seed = std::nullopt);

/// Builds the PureState, rescaling to unit norm when the stored norm is off by
/// more than 1e-10; a warning is appended in that case.
PureState to_pure_state(const StateFile& file, std::vector<std::string>* warnings = nullptr);

}  // namespace mschmidt::cli
