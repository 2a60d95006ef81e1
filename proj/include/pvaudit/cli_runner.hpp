// Subcommand implementations behind the command-line front end, kept in the
// library so tests drive the exact code paths the binary runs. Each returns
// the process exit code plus the text for stdout; error text goes to stderr
// inside the run functions' callers (the functions throw, main maps).
//
// Exit codes, exactly three: 0 success, 1 usage or flag error, 2 data
// validation error.
#pragma once

#include "pvaudit/estimates.hpp"
#include "pvaudit/simulate.hpp"

#include <string>

namespace pvaudit {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

struct RunResult {
  int exit_code = kExitOk;
  std::string out_text;  // printed to stdout by the binary
  std::string err_text;  // printed to stderr by the binary
};

struct ConvertOptions {
  std::string input;
  std::string output;
  PMethod method = PMethod::ExactNormal;
};

// Reads an estimates file, validates every row, writes the converted records
// (columns study_id, z, p, method, outcome_label). Warnings go to stderr.
RunResult run_convert(const ConvertOptions& options);

struct PlotOptions {
  std::string input;
  std::string out_dir;
  std::string group_by = "outcome";
  // Applied when the input is an estimates file; converted inputs carry
  // their method already.
  PMethod method = PMethod::ExactNormal;
};

// Accepts either converted records (detected by a "p" column) or a raw
// estimates file (detected by "rr", converted in-process). Writes one SVG
// per outcome plus report.json into out_dir.
RunResult run_plot(const PlotOptions& options);

struct CountOptions {
  std::string input;
  double alpha = 0.05;
  std::string output;  // optional report path
};

RunResult run_count(const CountOptions& options);

struct SimulateOptions {
  SimulationConfig config;
  std::string output;  // optional report path
};

RunResult run_simulate(const SimulateOptions& options);

// Shared error-to-exit-code mapping: invalid flag combinations surface as
// std::invalid_argument (exit 1), malformed or invalid data as DataError or
// any other exception (exit 2).
template <class Fn>
RunResult run_guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const DataError& e) {
    return RunResult{kExitData, "", std::string("error: ") + e.what() + "\n"};
  } catch (const std::invalid_argument& e) {
    return RunResult{kExitUsage, "", std::string("error: ") + e.what() + "\n"};
  } catch (const std::exception& e) {
    return RunResult{kExitData, "", std::string("error: ") + e.what() + "\n"};
  }
}

}  // namespace pvaudit
