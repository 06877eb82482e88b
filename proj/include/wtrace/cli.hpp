#ifndef WTRACE_CLI_HPP
#define WTRACE_CLI_HPP

#include "wtrace/extension_operator.hpp"
#include "wtrace/serialization.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace wtrace::cli {

enum class Command { check, extend, maximal, compare };

Command parse_command(const std::string& name);

enum ExitCode : int { kSuccess = 0, kInputError = 2, kNumericalFailure = 3, kUnsupported = 4 };

struct JobSpec {
  std::string input;
  Command command = Command::check;
  int m = 1;
  double p = 2.0;
  Backend backend = Backend::hermite;
  std::optional<double> window_pad;  // default 3(m + 2)
  std::string out;
  std::uint64_t seed = 1;
  double grid_h = 0.02;
  double tol = kDefaultQuadTol;
  int count = 30;  // compare: corpus size

  ExtensionConfig extension_config() const;
  void validate() const;
};

/// JSON report of every applicable functional of the input.
Json cmd_check(const JobSpec& job, const SampledFunction& s);

struct ExtendOutput {
  Json spline;          // serialized extension plus its norms
  std::string samples;  // CSV: x, F, F', ..., F^(m)
};
ExtendOutput cmd_extend(const JobSpec& job, const SampledFunction& s);

struct MaximalOutput {
  std::string profiles;  // CSV: x, f#_0, ..., f#_m
  double wmf = 0.0;
};
MaximalOutput cmd_maximal(const JobSpec& job, const SampledFunction& s);

/// CSV of per-instance functional ratios over a seeded random corpus,
/// followed by "min" and "max" summary rows.
std::string cmd_compare(const JobSpec& job);

/// Runs a job end to end (reads input, writes outputs); returns an ExitCode.
int run(const JobSpec& job, std::ostream& out, std::ostream& err);

/// Command-line entry point.
int main(int argc, char** argv);

}  // namespace wtrace::cli

#endif  // WTRACE_CLI_HPP
