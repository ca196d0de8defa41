#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "cohrank/rank.hpp"

namespace cohrank {

// Process exit codes shared by the CLI and the command layer.
inline constexpr int kExitOk = 0;
inline constexpr int kExitTheoremViolation = 1;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitConditioning = 3;

// A linear range lo, lo+step, ..., <= hi.
struct SweepRange {
    double lo = 0.0;
    double hi = 0.0;
    double step = 1.0;
};

struct RunConfig {
    enum class Command { kAnalyze, kSplit, kVerifyTheorem, kSweep };

    Command command = Command::kAnalyze;
    std::string state_spec;
    std::string splitter_spec = "bs";
    Tolerances tolerances;

    std::optional<int> truncation_override;    // uniform per-mode cutoff
    std::optional<std::string> report_path;
    std::optional<std::string> csv_path;
    std::optional<std::string> dump_state_path;

    // verify-theorem knobs
    int trials = 100;
    std::uint64_t seed = 0;
    int r_max = 6;
    double radius = 2.0;
    double min_sep = 0.1;

    // sweep domain: exactly one of these
    std::optional<SweepRange> truncation_sweep;
    std::optional<SweepRange> alpha_sweep;

    bool strict = false;    // conditioning warnings become exit code 3
};

// Each command writes its full report to `out` (and to report_path when
// set) and returns a process exit code. Input problems raise ParseError
// and friends; run() maps those to kExitInputError.
int cmd_analyze(const RunConfig& cfg, std::ostream& out);
int cmd_split(const RunConfig& cfg, std::ostream& out);
int cmd_verify_theorem(const RunConfig& cfg, std::ostream& out);
int cmd_sweep(const RunConfig& cfg, std::ostream& out);

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

} // namespace cohrank
