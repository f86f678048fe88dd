#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "chfif/geometry.hpp"

namespace chfif {

struct RunOptions {
  int depth = 10;
  double tol = 1e-10;
  int max_iters = 100000;
  std::size_t grid_size = 6561;
  int eps_min_exp = 4;
  int eps_max_exp = 12;
  std::uint64_t seed = 1;
  int precision = 12;
  int moment_depth = 3;
  int m_max = 8;
  int probe_depth = 10;
  std::size_t chaos_points = 100000;
  std::string method = "exact";  // exact | iterate | chaos

  bool operator==(const RunOptions&) const = default;
};

struct RunConfig {
  std::string name;
  std::string description;
  InterpolationProblem problem;
  RunOptions options;
};

bool equivalent(const RunConfig& a, const RunConfig& b);

/// Parse or schema error. `path` is a JSON pointer to the offending field
/// (empty for syntax errors); `line`/`column` are 1-based, 0 when unknown.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string message, std::string path, std::size_t line = 0,
              std::size_t column = 0);
  const std::string& path() const { return path_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::string path_;
  std::size_t line_;
  std::size_t column_;
};

/// Strict JSON schema: unknown keys are rejected with their path. Semantic
/// checks are left to validate().
RunConfig parse_config(std::string_view text);

std::string serialize_config(const RunConfig& config);

/// Names of the built-in example configurations (fig1..fig16, fig1_corrected).
std::vector<std::string> bundled_names();
std::optional<RunConfig> bundled_config(std::string_view name);

/// Reads a config file, or falls back to a bundled name when no such file
/// exists. Throws std::ios_base::failure when neither resolves.
RunConfig load_config(const std::string& path_or_name);

}  // namespace chfif
