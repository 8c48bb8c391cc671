#pragma once

#include <json.hpp>

#include <string>
#include <vector>

namespace xpsrk {

inline constexpr const char* kVersion = "0.1.0";

/** Provenance record for every artifact the CLI emits. JSON documents carry
 * it under a top-level "manifest" key; CSV files carry it as a leading
 * "# manifest: ..." comment line. Seeds of randomized checks live in params,
 * so a manifest pins its run completely.
 */
struct RunManifest {
  std::string command;
  nlohmann::json params = nlohmann::json::object();
  std::string backend;               // "exact", "float53", "float128", ...
  int precision_bits = 0;            // 0 for exact arithmetic
  std::vector<std::string> outputs;  // "-" means stdout
  std::string version = kVersion;
};

nlohmann::json manifest_to_json(const RunManifest& m);

// Single line, no trailing newline: "# manifest: {...}".
std::string manifest_csv_comment(const RunManifest& m);

// Backend label for a significand width from the precision menu; throws
// std::invalid_argument off-menu.
std::string backend_name(int precision_bits);

}  // namespace xpsrk
