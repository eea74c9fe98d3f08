#pragma once

// Run configuration for the command-line driver: JSON file plus flag overrides.

#include "coendo/caps.hpp"
#include "coendo/coefficients.hpp"
#include "coendo/coendoscopy.hpp"
#include "coendo/oracle.hpp"
#include "coendo/predictions.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace coendo::cli {

inline constexpr int kFormatVersion = 1;

struct Config {
  std::string type;
  std::string lattice = "sc";
  std::optional<IntMatrix> basis;  ///< explicit X_* basis (columns, coweight coordinates)
  Int q = 0;
  CurveData curve;
  CharacterSpec spec;
  bool has_spec = false;
  Convention convention = Convention::UniformInverse;
  Route route = Route::Classify;
  Caps caps;

  GroupDatum datum() const;
  /// The effective configuration without the thread count, keys sorted.
  nlohmann::json canonical() const;
  /// 16 hex digits of FNV-1a over canonical().dump().
  std::string hash() const;
};

/// Reads a config file (may be empty for flags only). Throws ConfigError
/// naming the offending field.
Config parse_config(const nlohmann::json& j);
Config load_config(const std::string& path);

std::vector<ManifestEntry> parse_manifest(const nlohmann::json& j);
CountMap parse_counts(const nlohmann::json& j);

nlohmann::json read_json_file(const std::string& path);

/// 16 hex digits of 64-bit FNV-1a.
std::string fnv_hex(const std::string& text);

nlohmann::json manifest_json(const std::vector<ManifestEntry>& entries);

}  // namespace coendo::cli
