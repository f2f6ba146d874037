#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace fieldlab::runner {

/// Configuration problems (unknown keys, bad values, unparsable files).
/// The CLI maps these to exit code 2; invariant violations map to 3.
class config_error : public std::runtime_error {
 public:
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitInvariant = 3;

inline constexpr const char* kVersion = "0.1.0";

/// A fully-resolved run request: experiment name, seed, output directory
/// and the experiment-specific parameter block.
struct ExperimentConfig {
  std::string experiment;
  std::uint64_t seed = 0;
  std::filesystem::path out_dir = "out";
  nlohmann::json params = nlohmann::json::object();

  /// Parse and validate a config JSON document. Unknown keys anywhere are
  /// rejected with the offending field named.
  static ExperimentConfig from_json(const nlohmann::json& doc);
  nlohmann::json to_json() const;
};

struct RunOutput {
  std::filesystem::path file;
  std::size_t bytes = 0;
  std::string checksum;  // fnv1a of the body
};

struct RunResult {
  std::vector<RunOutput> outputs;
  std::filesystem::path manifest;
};

/// Executes the experiment, writes its CSV artifacts plus manifest.json
/// into the output directory. Throws config_error / invariant_violation;
/// deterministic for a fixed (config, seed).
RunResult run(const ExperimentConfig& config);

/// Load a config document from file, with parse diagnostics.
nlohmann::json load_config_file(const std::filesystem::path& path);

/// The experiments the runner knows about.
const std::vector<std::string>& known_experiments();

}  // namespace fieldlab::runner
