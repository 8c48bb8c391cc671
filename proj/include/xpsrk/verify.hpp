#pragma once

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace xpsrk {

/** One acceptance check, numbered 1..11. Checks 1-6 run in exact
 * arithmetic; 7-11 are floating-point experiments. `details` carries the
 * measured values and residuals that justify the verdict.
 */
struct VerifyCheck {
  int id = 0;
  std::string name;
  bool passed = false;
  bool skipped = false;
  nlohmann::json details;
};

struct VerifyOptions {
  bool skip_numeric = false;  // run only the exact checks; mark 7-11 skipped
  std::vector<int> only;      // restrict to these ids; empty means all
  std::uint64_t seed = 12345; // drives every randomized sub-check
};

/// Runs the acceptance checks in id order; on_check fires as each completes.
std::vector<VerifyCheck> run_verification(
    const VerifyOptions& opt,
    const std::function<void(const VerifyCheck&)>& on_check = {});

/// True when every check that actually ran passed.
bool all_passed(const std::vector<VerifyCheck>& checks);

}  // namespace xpsrk
