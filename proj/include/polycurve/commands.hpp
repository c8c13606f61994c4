#pragma once

#include <iostream>
#include <map>
#include <string>
#include <vector>

namespace polycurve::cli {

/// Exit-code taxonomy: validation failures and numerical failures are
/// distinguishable in shell pipelines.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitIo = 4;

struct RunConfig {
  std::string command;
  std::vector<std::string> inputs;
  std::map<std::string, std::string> params;
  std::string output;         // empty writes to stdout
  std::string format{"json"};
};

/// Execute one command. Unknown commands, unknown parameter keys and invalid
/// inputs exit 2; numerical non-convergence exits 3; I/O failures exit 4 with
/// a diagnostic on err. Outputs are deterministic given identical config.
int run(const RunConfig& config, std::ostream& out = std::cout, std::ostream& err = std::cerr);

}  // namespace polycurve::cli
