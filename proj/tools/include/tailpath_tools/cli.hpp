#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace tailpath::tools {

enum class Command { Profile, Mtcm, Path, Spectral, Singular, Sample, Figure, Verify };
enum class Format { Csv, Json, Svg };

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitParseError = 2;
inline constexpr int kExitNumericFailure = 3;

struct Tolerances {
  std::optional<double> mtcm;         // MtcmOptions::tol
  std::optional<double> slice;        // SliceOptions::tol
  std::optional<double> degeneracy;   // MtcmOptions::degeneracy_threshold
  std::optional<int> grid;            // n_grid for both searches
};

struct RunConfig {
  Command command = Command::Mtcm;
  std::string model_spec;
  std::string schedule = "default";
  std::filesystem::path output_dir = ".";
  Format format = Format::Csv;
  std::uint64_t seed = 1;
  std::size_t n = 5000;
  Tolerances tolerances;
  std::vector<std::string> suites;  // verify; empty means all
  unsigned threads = 0;             // 0: hardware concurrency, capped by TAILPATH_THREADS
};

// Executes one command. Artifacts go to config.output_dir; summaries to
// `out`, diagnostics to `err`. Returns the process exit code.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses argv into a RunConfig and runs it.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tailpath::tools
