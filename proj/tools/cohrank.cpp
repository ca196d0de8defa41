#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cohrank/commands.hpp"
#include "cohrank/io.hpp"

namespace {

// Shared flag wiring; each subcommand picks the knobs that matter to it.
void add_tolerance_flags(CLI::App* cmd, cohrank::RunConfig& cfg) {
    cmd->add_option("--tol-rank", cfg.tolerances.rank_rel_tol,
                    "relative singular-value threshold for rank decisions");
    cmd->add_option("--tol-merge", cfg.tolerances.merge_tol,
                    "point-merging radius (max-norm over modes)");
    cmd->add_option("--tol-drop", cfg.tolerances.drop_tol,
                    "coefficient drop threshold after merging");
    cmd->add_option("--tol-truncation", cfg.tolerances.truncation_tol,
                    "largest acceptable truncation tail bound");
}

void add_report_flags(CLI::App* cmd, cohrank::RunConfig& cfg,
                      std::string& report, std::string& csv,
                      std::string& dump) {
    cmd->add_option("--report", report, "write the text report to this path");
    cmd->add_option("--csv", csv, "write spectra CSV to this path");
    cmd->add_option("--dump-state", dump,
                    "write the canonical state as a JSON state file");
    cmd->add_flag("--strict", cfg.strict,
                  "exit 3 when conditioning warnings fire");
}

bool parse_range(const std::string& text, double default_step,
                 cohrank::SweepRange& range) {
    const auto first = text.find("..");
    if (first == std::string::npos) return false;
    const std::string lo = text.substr(0, first);
    std::string rest = text.substr(first + 2);
    std::string step;
    const auto second = rest.find("..");
    if (second != std::string::npos) {
        step = rest.substr(second + 2);
        rest = rest.substr(0, second);
    }
    range.lo = cohrank::parse_double(lo, "sweep range start");
    range.hi = cohrank::parse_double(rest, "sweep range end");
    range.step = step.empty()
                     ? default_step
                     : cohrank::parse_double(step, "sweep range step");
    return true;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"coherent-superposition rank analysis"};
    app.require_subcommand(1);

    cohrank::RunConfig cfg;
    std::string report_path;
    std::string csv_path;
    std::string dump_path;
    std::string truncations_text;
    std::string alphas_text;
    int truncation = 0;

    CLI::App* analyze =
        app.add_subcommand("analyze", "rank workup of one state");
    analyze->add_option("state", cfg.state_spec, "state spec or file:PATH")
        ->required();
    analyze->add_option("--truncation", truncation,
                        "uniform per-mode Fock cutoff override");
    add_tolerance_flags(analyze, cfg);
    add_report_flags(analyze, cfg, report_path, csv_path, dump_path);

    CLI::App* split = app.add_subcommand(
        "split", "interfere a state with vacua and certify output ranks");
    split->add_option("state", cfg.state_spec, "state spec or file:PATH")
        ->required();
    split->add_option("--splitter", cfg.splitter_spec,
                      "bs, dft:N, or file:PATH");
    split->add_option("--truncation", truncation,
                      "uniform per-mode Fock cutoff override");
    add_tolerance_flags(split, cfg);
    add_report_flags(split, cfg, report_path, csv_path, dump_path);

    CLI::App* verify = app.add_subcommand(
        "verify-theorem", "randomized rank-equality campaign");
    verify->add_option("--trials", cfg.trials, "number of random trials");
    verify->add_option("--seed", cfg.seed, "seed of the first trial");
    verify->add_option("--r-max", cfg.r_max, "terms cycle through 1..r-max");
    verify->add_option("--radius", cfg.radius, "sampling disk radius");
    verify->add_option("--min-sep", cfg.min_sep,
                       "minimum pairwise point separation");
    verify->add_option("--splitter", cfg.splitter_spec,
                       "bs, dft:N, or file:PATH");
    verify->add_option("--truncation", truncation,
                       "uniform per-mode Fock cutoff override");
    add_tolerance_flags(verify, cfg);
    add_report_flags(verify, cfg, report_path, csv_path, dump_path);

    CLI::App* sweep = app.add_subcommand(
        "sweep", "rank and spectrum as one parameter varies (CSV)");
    sweep->add_option("state", cfg.state_spec,
                      "sv:MU[:PHASE], cat:odd, cat:even, or any fixed state")
        ->required();
    sweep->add_option("--splitter", cfg.splitter_spec,
                      "bs, dft:N, or file:PATH");
    sweep->add_option("--truncations", truncations_text,
                      "cutoff range LO..HI[..STEP]");
    sweep->add_option("--alphas", alphas_text,
                      "amplitude range LO..HI[..STEP]");
    sweep->add_option("--truncation", truncation,
                      "uniform cutoff override for --alphas rows");
    add_tolerance_flags(sweep, cfg);
    add_report_flags(sweep, cfg, report_path, csv_path, dump_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? cohrank::kExitOk : cohrank::kExitInputError;
    }

    if (analyze->parsed()) cfg.command = cohrank::RunConfig::Command::kAnalyze;
    if (split->parsed()) cfg.command = cohrank::RunConfig::Command::kSplit;
    if (verify->parsed()) {
        cfg.command = cohrank::RunConfig::Command::kVerifyTheorem;
    }
    if (sweep->parsed()) cfg.command = cohrank::RunConfig::Command::kSweep;

    if (!report_path.empty()) cfg.report_path = report_path;
    if (!csv_path.empty()) cfg.csv_path = csv_path;
    if (!dump_path.empty()) cfg.dump_state_path = dump_path;
    if (truncation != 0) cfg.truncation_override = truncation;

    try {
        cohrank::SweepRange range;
        if (!truncations_text.empty()) {
            if (!parse_range(truncations_text, 1.0, range)) {
                throw cohrank::ParseError(
                    "--truncations expects LO..HI[..STEP]");
            }
            cfg.truncation_sweep = range;
        }
        if (!alphas_text.empty()) {
            if (!parse_range(alphas_text, 0.2, range)) {
                throw cohrank::ParseError("--alphas expects LO..HI[..STEP]");
            }
            cfg.alpha_sweep = range;
        }
    } catch (const cohrank::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cohrank::kExitInputError;
    }

    return cohrank::run(cfg, std::cout, std::cerr);
}
