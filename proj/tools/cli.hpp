#pragma once

// ptsim command-line front end. Every subcommand prints a run report:
//
//   {"command", "inputs_digest", "outputs", "checks": [...], "pass"}
//
// Exit codes: 0 success, 1 a check failed, 2 parse/usage, 3 dimension or
// type, 4 domain precondition (NotUnbroken, ...), 5 numerical failure.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "ptsim/errors.hpp"
#include "ptsim/serialization.hpp"

namespace ptsim::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitDimension = 3;
inline constexpr int kExitDomain = 4;
inline constexpr int kExitNumerical = 5;

int exit_code_for(ErrorCode code) noexcept;

struct Check {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool lower_bound = false;    ///< pass iff residual > tolerance (e.g. a gap that must be open)
  bool informational = false;  ///< reported, but does not affect the exit code

  bool pass() const { return lower_bound ? residual > tolerance : residual <= tolerance; }
};

struct RunReport {
  std::string command;
  std::string inputs_digest;
  Json outputs;
  std::vector<Check> checks;

  bool all_pass() const;
  Json to_json() const;
};

/// 64-bit FNV-1a, rendered as 16 hex digits.
class Digest {
 public:
  void update(std::string_view bytes);
  std::string hex() const;

 private:
  std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

/// Runs the tool with the given arguments (argv[0] is the program name).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ptsim::cli
