#include "xpsrk/manifest.hpp"

#include <stdexcept>

namespace xpsrk {

nlohmann::json manifest_to_json(const RunManifest& m) {
  return {{"command", m.command}, {"params", m.params},
          {"backend", m.backend}, {"precision_bits", m.precision_bits},
          {"outputs", m.outputs}, {"version", m.version}};
}

std::string manifest_csv_comment(const RunManifest& m) {
  return "# manifest: " + manifest_to_json(m).dump();
}

std::string backend_name(int precision_bits) {
  switch (precision_bits) {
    case 53: return "float53";
    case 128: return "float128";
    case 256: return "float256";
    default:
      throw std::invalid_argument("precision_bits must be 53, 128, or 256");
  }
}

}  // namespace xpsrk
