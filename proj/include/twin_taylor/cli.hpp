#pragma once

// Command-line surface of twin-taylor. parse_args and run are separate so the
// whole pipeline can be driven from tests without spawning processes.
//
// Exit codes: 0 success or Proved, 1 Refuted, Indeterminate or a runtime
// error, 2 usage error (nothing is emitted), 3 output could not be written.

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "twin_taylor/certify.hpp"

namespace twin_taylor {

enum class Command { Verify, Ladder, Constants, RemainderMax, Export, Help };
enum class VerifyTarget { Statement1, Chain, Statement2 };
enum class OutputFormat { Text, Json, Csv };

struct RunConfig {
  Command command = Command::Help;
  VerifyTarget target = VerifyTarget::Statement1;  ///< verify only
  FunctionId function = FunctionId::F;
  PiAffine endpoint{Rational(1, 2), 0};
  std::vector<std::size_t> orders{0, 2};
  int grid = 33;
  int precision_budget = 64;
  std::size_t truncation = 64;
  OutputFormat output_format = OutputFormat::Text;
  std::optional<std::string> output_path;
  std::optional<PiAffine> beta;  ///< g-family domain bound
  RemainderKind kind = RemainderKind::First;  ///< remainder-max only
  std::size_t order = 3;  ///< remainder-max only
  Rational tol{1, 1000000};  ///< remainder-max only
  std::string help_text;
};

/// argv without the program name. Throws Error(UsageError) naming the
/// offending flag.
RunConfig parse_args(const std::vector<std::string>& argv);

/// Executes a validated config, writing the artifact to `out` (or to
/// config.output_path) and diagnostics to `err`. Returns the exit code.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + run with the exit-code mapping, for main().
int run_main(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace twin_taylor
