#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qwalk::cli {

enum class Scheme { kStepwise, kLog, kBell };

struct RunConfig {
  std::string subcommand;
  std::string target_path;
  std::string schedule_path;
  std::string out_path;
  std::string target_out_path;
  std::string circuit_out_path;
  Scheme scheme = Scheme::kStepwise;
  bool random = false;
  int c = 2;
  int d = 2;
  long long n = 0;
  long long m = 0;
  std::uint64_t seed = 1;
  bool literal_bell = false;
  std::optional<double> tolerance;
  int sweep_min = 4;
  int sweep_max = 64;
};

enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kInvalidInput = 2,
  kPreconditionViolated = 3,
};

/// Default verification tolerance, overridden by QWALK_TOL.
double default_tolerance();

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qwalk::cli
