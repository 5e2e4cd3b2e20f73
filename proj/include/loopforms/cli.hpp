#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "loopforms/gluing.hpp"

namespace loopforms::cli {

enum class Command { Validate, Reduce, Classify, Gluing, Enumerate, BorelCheck };

enum class OutputFormat { Human, Structured };

struct RunConfig {
  Command command = Command::Validate;
  std::string input_path;
  int b2 = 0;
  int euler_bound = 3;
  long p = 2;
  std::optional<gluing::FactorOrder> convention;
  OutputFormat format = OutputFormat::Human;
};

/// Dispatch a command. Returns the process exit status: 0 for valid and
/// compatible runs, 1 for invalid or incompatible inputs, 2 for usage or
/// document errors (in which case nothing but the error is printed).
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Full argv entry point (flag parsing plus run()).
int main_entry(int argc, const char* const* argv);

}  // namespace loopforms::cli
