// runner.hpp - executes a validated scenario and renders the JSON report and
// CSV time series.
//
// CSV columns, in order (header row always present):
//   t
//   D_<i>_<j>          trace distance of evolved initial states i < j
//   min_choi_eig_step  of the step propagator ending at t (nan in row 0)
//   lambda1..lambda3   1/2 Tr(s_k Lambda_t(s_k)), qubits only
//   x_<i>, y_<i>, z_<i> Bloch components of state i, qubits only

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qdmap/scenario.hpp"

namespace qdmap {

enum ExitCode : int { kExitOk = 0, kExitIo = 1, kExitValidation = 2, kExitNumerical = 3 };

struct RunOptions {
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> steps;
    std::optional<double> tol_div;
    bool csv = false;
    Exec exec = kDefaultExec;
};

struct RunResult {
    int exit_code = kExitOk;
    nlohmann::json report;
    std::string csv; // empty unless requested
    std::vector<Diagnostic> diagnostics;
    std::string error; // numerical failure message
};

inline constexpr double kCommutativeRouteTol = 1e-10;
inline constexpr std::size_t kStateSamples = 100;

// Applies the overrides, evolves and runs the requested analyses. No I/O.
RunResult run_scenario(const Scenario& scenario, const RunOptions& opts = {});

// Loads the file, runs it and writes <out_dir>/<name>.report.json (plus
// <name>.csv when requested). Diagnostics and errors go to `err`.
int run_file(const std::string& path, const std::string& out_dir, const RunOptions& opts, std::ostream& err);

// Prints diagnostics, one "pointer: message" line each; returns the exit code.
int validate_file(const std::string& path, std::ostream& out);

std::string format_diagnostic(const Diagnostic& d);
std::string dump_report(const nlohmann::json& report);

} // namespace qdmap
