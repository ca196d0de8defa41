#include "cohrank/commands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "cohrank/io.hpp"
#include "cohrank/named_states.hpp"

namespace cohrank {

namespace {

SuperpositionState state_from_spec(const StateSpec& spec) {
    switch (spec.kind) {
        case StateSpec::Kind::kSuperposition:
            return SuperpositionState(spec.modes, spec.terms);
        case StateSpec::Kind::kSqueezedVacuum:
            throw ParseError(
                "'" + spec.description + "' has no finite coherent "
                "expansion; squeezed vacuum is only supported by 'sweep'");
        case StateSpec::Kind::kCatFamily:
            throw ParseError("'" + spec.description +
                             "' needs an amplitude here (cat families are "
                             "for 'sweep --alphas')");
    }
    throw ParseError("unhandled state kind");
}

std::string tolerances_line(const Tolerances& t) {
    return "tolerances: merge_tol=" + fmt17(t.merge_tol) +
           " drop_tol=" + fmt17(t.drop_tol) +
           " rank_rel_tol=" + fmt17(t.rank_rel_tol) +
           " truncation_tol=" + fmt17(t.truncation_tol) + "\n";
}

void render_terms(std::ostringstream& r, const SuperpositionState& s,
                  const char* prefix) {
    for (int i = 0; i < s.size(); ++i) {
        const Term& t = s.terms()[static_cast<std::size_t>(i)];
        r << prefix << "term[" << i << "]: kappa=" << fmt_complex(t.kappa)
          << " point=[";
        for (std::size_t m = 0; m < t.point.size(); ++m) {
            if (m) r << ", ";
            r << fmt_complex(t.point[m]);
        }
        r << "]\n";
    }
}

void render_gram(std::ostringstream& r, const std::vector<double>& eigs,
                 int rank, const char* prefix) {
    r << prefix << "gram_rank: " << rank << "\n";
    for (std::size_t i = 0; i < eigs.size(); ++i) {
        r << prefix << "gram_eig[" << i + 1 << "]: " << fmt17(eigs[i]) << "\n";
    }
}

void render_vandermonde(std::ostringstream& r, const std::string& label,
                        const VandermondeCertificate& c) {
    r << label << ": value=" << fmt_complex(c.value)
      << " log_modulus=" << fmt17(c.log_modulus)
      << " threshold=" << fmt17(c.log_threshold)
      << " result=" << (c.passed ? "pass" : "fail") << "\n";
}

void render_warnings(std::ostringstream& r,
                     const std::vector<std::string>& warnings) {
    for (const std::string& w : warnings) {
        r << "warning: " << w << "\n";
    }
}

constexpr std::size_t kReportSigmaCap = 8;

void render_multipartite(std::ostringstream& r, const RankReport& report) {
    r << "truncation: [";
    for (std::size_t m = 0; m < report.truncation.size(); ++m) {
        if (m) r << ", ";
        r << report.truncation[m];
    }
    r << "]\n";
    r << "tail_bound: " << fmt17(report.tail_bound) << "\n";
    render_gram(r, report.gram_eigs, report.gram, "output_");
    for (const auto& [label, sigma] : report.schmidt_spectra) {
        r << "bipartition " << label
          << ": rank=" << report.schmidt_ranks.at(label) << " sigma=[";
        const std::size_t shown = std::min(sigma.size(), kReportSigmaCap);
        for (std::size_t i = 0; i < shown; ++i) {
            if (i) r << ", ";
            r << fmt17(sigma[i]);
        }
        if (sigma.size() > shown) r << ", ...";
        r << "]\n";
    }
    for (std::size_t m = 0; m < report.per_mode_vandermonde.size(); ++m) {
        render_vandermonde(r, "mode[" + std::to_string(m) + "]_vandermonde",
                           report.per_mode_vandermonde[m]);
    }
}

std::string spectra_csv(const RankReport& report) {
    std::string csv = "bipartition,sigma_index,sigma_value\n";
    for (const auto& [label, sigma] : report.schmidt_spectra) {
        for (std::size_t i = 0; i < sigma.size(); ++i) {
            csv += label + "," + std::to_string(i + 1) + "," +
                   fmt17(sigma[i]) + "\n";
        }
    }
    return csv;
}

int max_schmidt_rank(const RankReport& report) {
    int top = 0;
    for (const auto& [label, rank] : report.schmidt_ranks) {
        top = std::max(top, rank);
    }
    return top;
}

int first_cut_rank(const RankReport& report, int modes) {
    return report.schmidt_ranks.at(
        bipartition_label({0}, modes));
}

std::optional<std::vector<int>> override_vector(const RunConfig& cfg,
                                                int modes) {
    if (!cfg.truncation_override) return std::nullopt;
    if (*cfg.truncation_override < 1) {
        throw ParseError("--truncation must be >= 1");
    }
    return std::vector<int>(static_cast<std::size_t>(modes),
                            *cfg.truncation_override);
}

void emit(const std::string& text, std::ostream& out,
          const std::optional<std::string>& path) {
    out << text;
    if (path) write_text_file(*path, text);
}

int finalize_exit(const RunConfig& cfg, bool certificate_ok,
                  const std::vector<std::string>& warnings) {
    if (cfg.strict && !warnings.empty()) return kExitConditioning;
    if (!certificate_ok) return kExitTheoremViolation;
    return kExitOk;
}

} // namespace

int cmd_analyze(const RunConfig& cfg, std::ostream& out) {
    const Tolerances& tol = cfg.tolerances;
    tol.validate();
    const StateSpec spec =
        parse_state_spec(cfg.state_spec, tol.merge_tol, tol.rank_rel_tol);
    const SuperpositionState canonical = canonicalize(
        state_from_spec(spec), tol.merge_tol, tol.drop_tol);

    std::ostringstream r;
    r << "command: analyze\n";
    r << "state: " << spec.description << "\n";
    r << tolerances_line(tol);
    r << "modes: " << canonical.modes() << "\n";
    r << "ncl_rank: " << canonical.size() << "\n";
    render_terms(r, canonical, "");

    bool certificate_ok = true;
    std::vector<std::string> warnings;
    std::string schmidt_field = "-";

    if (spec.fockdq_n >= 0) {
        // Overlap-modulus fidelity of the normalized approximant with the
        // exact Fock state it targets. Normalizing by the truncated vector
        // norm instead of the closed-form state norm keeps the huge
        // difference-quotient weights from feeding cancellation noise into
        // the quotient; the overall scale divides out.
        const SuperpositionState unit = normalized(canonical);
        std::vector<int> cut = default_truncation(unit);
        cut[0] = std::max(cut[0], spec.fockdq_n + 2);
        const FockArray f = to_fock(unit, cut);
        const double fidelity =
            std::abs(fock_inner(fock_exact(spec.fockdq_n, cut[0]), f)) /
            fock_norm(f);
        r << "fockdq_fidelity: " << fmt17(fidelity) << "\n";
    }

    if (canonical.modes() == 1) {
        const std::vector<double> eigs = gram_eigenvalues(canonical, tol);
        int grank = 0;
        for (double e : eigs) {
            if (e > tol.rank_rel_tol * eigs.front()) ++grank;
        }
        render_gram(r, eigs, grank, "");
        std::vector<Complex> points;
        for (const Term& t : canonical.terms()) points.push_back(t.point[0]);
        const VandermondeCertificate cert =
            vandermonde_certificate(std::move(points), tol.merge_tol);
        render_vandermonde(r, "vandermonde", cert);
        certificate_ok = cert.passed;
        warnings = conditioning_warnings(canonical);
    } else {
        const RankReport report = multipartite_report(
            canonical, tol, override_vector(cfg, canonical.modes()));
        render_multipartite(r, report);
        r << "certificate_kind: rank-bound\n";
        certificate_ok = report.nonclassicality >= max_schmidt_rank(report);
        schmidt_field = std::to_string(first_cut_rank(report, canonical.modes()));
        warnings = report.warnings;
        if (cfg.csv_path) write_text_file(*cfg.csv_path, spectra_csv(report));
    }

    render_warnings(r, warnings);
    r << "NCL_RANK=" << canonical.size() << " SCHMIDT_RANK=" << schmidt_field
      << " CERTIFICATE=" << (certificate_ok ? "pass" : "fail") << "\n";

    if (cfg.dump_state_path) save_state_file(canonical, *cfg.dump_state_path);
    emit(r.str(), out, cfg.report_path);
    return finalize_exit(cfg, certificate_ok, warnings);
}

int cmd_split(const RunConfig& cfg, std::ostream& out) {
    const Tolerances& tol = cfg.tolerances;
    tol.validate();
    const StateSpec spec =
        parse_state_spec(cfg.state_spec, tol.merge_tol, tol.rank_rel_tol);
    const SuperpositionState input = state_from_spec(spec);
    const SplitterUnitary splitter = parse_splitter_spec(cfg.splitter_spec);
    if (input.modes() > splitter.size()) {
        throw ShapeMismatchError(
            "state has more modes than the splitter has ports");
    }
    if (splitter.size() < 2) {
        throw ParseError("split needs a splitter with at least two ports");
    }

    const SuperpositionState input_canonical =
        canonicalize(input, tol.merge_tol, tol.drop_tol);
    const int input_rank = input_canonical.size();
    const SuperpositionState output =
        apply_splitter(splitter, extend_with_vacuum(input, splitter.size()),
                       tol.merge_tol, tol.drop_tol);
    const RankReport report =
        multipartite_report(output, tol, override_vector(cfg, output.modes()));

    std::ostringstream r;
    r << "command: split\n";
    r << "state: " << spec.description << "\n";
    r << "splitter: " << cfg.splitter_spec << " size=" << splitter.size()
      << " unitarity_defect=" << fmt17(splitter.unitarity_defect()) << "\n";
    r << tolerances_line(tol);
    r << "input_modes: " << input_canonical.modes() << "\n";
    r << "input_ncl_rank: " << input_rank << "\n";
    render_terms(r, input_canonical, "input_");
    if (input_canonical.modes() == 1) {
        std::vector<Complex> points;
        for (const Term& t : input_canonical.terms()) {
            points.push_back(t.point[0]);
        }
        render_vandermonde(
            r, "input_vandermonde",
            vandermonde_certificate(std::move(points), tol.merge_tol));
    }
    r << "output_modes: " << output.modes() << "\n";
    r << "output_ncl_rank: " << report.nonclassicality << "\n";
    render_terms(r, output, "output_");
    render_multipartite(r, report);

    // Single-mode inputs extended with vacua are the theorem's premise: all
    // output Schmidt ranks must equal the input rank. Multimode inputs only
    // obey the lower bound.
    bool certificate_ok = true;
    if (input_canonical.modes() == 1) {
        r << "certificate_kind: rank-equality\n";
        for (const auto& [label, rank] : report.schmidt_ranks) {
            if (rank != input_rank) certificate_ok = false;
        }
    } else {
        r << "certificate_kind: rank-bound\n";
        certificate_ok = input_rank >= max_schmidt_rank(report);
    }

    std::vector<std::string> warnings = report.warnings;
    render_warnings(r, warnings);
    r << "NCL_RANK=" << input_rank << " SCHMIDT_RANK="
      << first_cut_rank(report, output.modes())
      << " CERTIFICATE=" << (certificate_ok ? "pass" : "fail") << "\n";

    if (cfg.csv_path) write_text_file(*cfg.csv_path, spectra_csv(report));
    if (cfg.dump_state_path) save_state_file(output, *cfg.dump_state_path);
    emit(r.str(), out, cfg.report_path);
    return finalize_exit(cfg, certificate_ok, warnings);
}

int cmd_verify_theorem(const RunConfig& cfg, std::ostream& out) {
    const Tolerances& tol = cfg.tolerances;
    tol.validate();
    if (cfg.trials < 1) {
        throw ParseError("verify-theorem needs --trials >= 1");
    }
    if (cfg.r_max < 1) {
        throw ParseError("verify-theorem needs r-max >= 1");
    }
    const SplitterUnitary splitter = parse_splitter_spec(cfg.splitter_spec);
    if (splitter.size() < 2) {
        throw ParseError("verify-theorem needs a splitter with >= 2 ports");
    }
    const RandomStateBounds bounds{cfg.radius, cfg.min_sep};

    std::ostringstream r;
    r << "command: verify-theorem\n";
    r << "splitter: " << cfg.splitter_spec << "\n";
    r << tolerances_line(tol);
    r << "trials: " << cfg.trials << " seed0: " << cfg.seed
      << " r_max: " << cfg.r_max << " radius: " << fmt17(cfg.radius)
      << " min_sep: " << fmt17(cfg.min_sep) << "\n";

    int failed = 0;
    int warned = 0;
    std::vector<std::string> failures;
    for (int i = 0; i < cfg.trials; ++i) {
        const int rank_target = (i % cfg.r_max) + 1;
        const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(i);
        const SuperpositionState s = random_state(rank_target, seed, bounds);
        const int ncl = nonclassicality_rank(s, tol);
        const int grank = gram_rank(s, tol);
        const SuperpositionState output = apply_splitter(
            splitter, extend_with_vacuum(s, splitter.size()), tol.merge_tol,
            tol.drop_tol);
        const FockArray f =
            cfg.truncation_override
                ? to_fock(output, *override_vector(cfg, output.modes()))
                : to_fock(output);
        if (f.tail_bound() > tol.truncation_tol) {
            throw TruncationError("trial truncation inadequate");
        }
        const int schmidt = schmidt_rank(f, {0}, tol);
        const bool pass = ncl == grank && grank == schmidt;
        const bool warn = !conditioning_warnings(s).empty();
        if (!pass) ++failed;
        if (warn) ++warned;
        r << "trial=" << i << " seed=" << seed << " r=" << rank_target
          << " ncl=" << ncl << " gram=" << grank << " schmidt=" << schmidt
          << " warn=" << (warn ? 1 : 0) << " status="
          << (pass ? "pass" : "FAIL") << "\n";
        if (!pass) {
            failures.push_back("reproduce with: random:" +
                               std::to_string(rank_target) + ":" +
                               std::to_string(seed));
        }
    }

    r << "passed: " << (cfg.trials - failed) << "/" << cfg.trials
      << " warned: " << warned << "\n";
    for (const std::string& f : failures) r << "failure: " << f << "\n";
    r << "THEOREM=" << (failed == 0 ? "pass" : "fail") << "\n";

    emit(r.str(), out, cfg.report_path);
    if (cfg.strict && warned > 0) return kExitConditioning;
    return failed == 0 ? kExitOk : kExitTheoremViolation;
}

namespace {

// Sweeps explore sub-adequate cutoffs on purpose; the adequacy gate moves
// from an error to a column the caller can see.
Tolerances sweep_tolerances(Tolerances t) {
    t.truncation_tol = std::numeric_limits<double>::infinity();
    return t;
}

std::string sweep_row(double parameter, int effective_rank,
                      const std::vector<double>& sigma) {
    std::string row = fmt17(parameter) + "," + std::to_string(effective_rank);
    for (std::size_t i = 0; i < kReportSigmaCap; ++i) {
        row += ",";
        row += fmt17(i < sigma.size() ? sigma[i] : 0.0);
    }
    return row + "\n";
}

std::vector<double> sweep_values(const SweepRange& range) {
    if (!(range.step > 0.0) || range.hi < range.lo) {
        throw ParseError("sweep range must satisfy lo <= hi, step > 0");
    }
    std::vector<double> values;
    for (double v = range.lo; v <= range.hi + 1e-9 * range.step;
         v += range.step) {
        values.push_back(v);
        if (values.size() > 100000) {
            throw ParseError("sweep range produces too many rows");
        }
    }
    return values;
}

} // namespace

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
    const Tolerances tol = sweep_tolerances(cfg.tolerances);
    tol.validate();
    if (cfg.truncation_sweep.has_value() == cfg.alpha_sweep.has_value()) {
        throw ParseError("sweep needs exactly one of --truncations, --alphas");
    }
    const StateSpec spec =
        parse_state_spec(cfg.state_spec, tol.merge_tol, tol.rank_rel_tol);

    std::string csv = "parameter,effective_schmidt_rank";
    for (std::size_t i = 1; i <= kReportSigmaCap; ++i) {
        csv += ",sigma_" + std::to_string(i);
    }
    csv += "\n";

    if (cfg.truncation_sweep) {
        if (spec.kind == StateSpec::Kind::kCatFamily) {
            throw ParseError("cat families sweep over --alphas, not cutoffs");
        }
        for (double v : sweep_values(*cfg.truncation_sweep)) {
            const int cutoff = static_cast<int>(std::llround(v));
            if (cutoff < 2) {
                throw ParseError("truncation sweep cutoffs must be >= 2");
            }
            FockArray split_out({1});
            if (spec.kind == StateSpec::Kind::kSqueezedVacuum) {
                if (cfg.splitter_spec != "bs") {
                    throw ParseError(
                        "squeezed-vacuum sweeps support --splitter bs only");
                }
                const auto params = SqueezedVacuumParams::from_mu(
                    spec.sv_mu, spec.sv_phase);
                split_out = split_single_mode_fock(squeezed_vacuum_fock(
                    params, cutoff,
                    std::numeric_limits<double>::infinity()));
            } else {
                const SuperpositionState input = state_from_spec(spec);
                const SplitterUnitary splitter =
                    parse_splitter_spec(cfg.splitter_spec);
                if (input.modes() > splitter.size()) {
                    throw ShapeMismatchError(
                        "state has more modes than the splitter has ports");
                }
                const SuperpositionState output = apply_splitter(
                    splitter, extend_with_vacuum(input, splitter.size()),
                    tol.merge_tol, tol.drop_tol);
                const std::vector<int> cuts(
                    static_cast<std::size_t>(output.modes()), cutoff);
                split_out = to_fock(normalized(output), cuts);
            }
            const std::vector<double> sigma =
                schmidt_spectrum(split_out, {0}, tol);
            const int rank = effective_rank_of_spectrum(
                sigma, split_out.tail_bound(), tol);
            csv += sweep_row(v, rank, sigma);
        }
    } else {
        if (spec.kind != StateSpec::Kind::kCatFamily) {
            throw ParseError(
                "--alphas sweeps need a cat family (cat:odd or cat:even)");
        }
        const SplitterUnitary splitter = parse_splitter_spec(cfg.splitter_spec);
        for (double alpha : sweep_values(*cfg.alpha_sweep)) {
            const SuperpositionState cat =
                cat_state(Complex(alpha, 0.0), spec.cat_sign, tol.merge_tol);
            const SuperpositionState output = apply_splitter(
                splitter, extend_with_vacuum(cat, splitter.size()),
                tol.merge_tol, tol.drop_tol);
            const FockArray f =
                cfg.truncation_override
                    ? to_fock(output, *override_vector(cfg, output.modes()))
                    : to_fock(output);
            const std::vector<double> sigma = schmidt_spectrum(f, {0}, tol);
            const int rank =
                effective_rank_of_spectrum(sigma, f.tail_bound(), tol);
            csv += sweep_row(alpha, rank, sigma);
        }
    }

    out << csv;
    if (cfg.csv_path) write_text_file(*cfg.csv_path, csv);
    if (cfg.report_path) write_text_file(*cfg.report_path, csv);
    return kExitOk;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        switch (cfg.command) {
            case RunConfig::Command::kAnalyze:
                return cmd_analyze(cfg, out);
            case RunConfig::Command::kSplit:
                return cmd_split(cfg, out);
            case RunConfig::Command::kVerifyTheorem:
                return cmd_verify_theorem(cfg, out);
            case RunConfig::Command::kSweep:
                return cmd_sweep(cfg, out);
        }
        err << "error: unknown command\n";
        return kExitInputError;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    }
}

} // namespace cohrank
