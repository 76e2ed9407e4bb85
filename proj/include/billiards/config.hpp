#pragma once

#include "billiards/errors.hpp"
#include "billiards/geometry.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace billiards {

class ConfigError : public Error {
 public:
  using Error::Error;
};

using Point = std::array<double, 2>;

/// One cap of a custom table.
struct CurveSpec {
  std::string kind = "arc";  // segment | arc | sampled
  Point from{};
  Point to{};
  Point center{};
  double radius = 0.0;
  double start_angle = 0.0;
  double sweep = 0.0;
  std::vector<Point> points;
  std::vector<Point> tangents;
  std::string interior = "auto";  // auto | left | right

  bool operator==(const CurveSpec&) const = default;
};

/// Parsed run configuration.
///
/// Text format: `[section]` headers and `key = value` lines, `#` starts a
/// comment. Sections: [table], [cap_left], [cap_right], [run].
struct RunConfig {
  std::string kind = "stadium";  // stadium | mushroom | custom
  double length = 0.0;           // rectangle length or stalk length
  double width = 1.0;            // stadium
  double radius = 0.5;           // mushroom cap

  // custom tables
  double wall_left_x = 0.0;
  double wall_right_x = 0.0;
  std::string flat = "none";  // none | left | right
  std::optional<CurveSpec> cap_left;
  std::optional<CurveSpec> cap_right;

  std::optional<double> eps;
  std::optional<int> n;
  int position_grid = 512;
  int angle_grid = 256;
  std::uint64_t seed = 42;
  std::string out = ".";

  bool operator==(const RunConfig&) const = default;
};

RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);
std::string serialize_config(const RunConfig& config);

/// Checks the physical constraints; throws ConfigError.
void validate(const RunConfig& config);

/// Table of the run, with the configured eps if there is one. Throws
/// ConfigError for tables the geometry rejects.
Table build_table(const RunConfig& config);

}  // namespace billiards
