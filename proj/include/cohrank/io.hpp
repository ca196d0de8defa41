#pragma once

#include <string>

#include "cohrank/splitter.hpp"
#include "cohrank/state.hpp"

namespace cohrank {

// JSON state files:
//   {"modes": 2, "terms": [{"kappa": [re, im],
//                           "point": [[re, im], [re, im]]}, ...]}
// Unknown fields are rejected, as are shape or type mismatches.
SuperpositionState load_state_file(const std::string& path);
void save_state_file(const SuperpositionState& s, const std::string& path);

// JSON unitary files:
//   {"size": 2, "entries": [[[re, im], [re, im]], [[re, im], [re, im]]]}
// Entries are row-major; unitarity is verified on load.
SplitterUnitary load_unitary_file(const std::string& path);
void save_unitary_file(const SplitterUnitary& t, const std::string& path);

// Parsed form of a --state / positional state spec. Squeezed vacuum has no
// finite coherent expansion, so it cannot be materialized as a
// SuperpositionState; callers that need one must reject kSqueezedVacuum.
struct StateSpec {
    enum class Kind {
        kSuperposition,     // state is populated
        kSqueezedVacuum,    // sv_mu / sv_phase are populated
        kCatFamily,         // cat_sign populated, amplitude left to a sweep
    };

    Kind kind = Kind::kSuperposition;
    std::vector<Term> terms;    // kSuperposition payload
    int modes = 1;
    double sv_mu = 1.0;
    double sv_phase = 0.0;
    int cat_sign = -1;
    int fockdq_n = -1;          // >= 0 when the state came from fockdq:N:H
    double fockdq_h = 0.0;
    std::string description;    // echoed in reports
};

// Accepts: coherent:RE:IM, cat:odd:ALPHA, cat:even:ALPHA, cat:odd,
// cat:even, fockdq:N:H, sv:MU, sv:MU:PHASE, random:R:SEED, file:PATH.
// The tolerances feed the named-state constructors (cat merge radius,
// difference-quotient conditioning guard).
StateSpec parse_state_spec(const std::string& text,
                           double merge_tol = kDefaultMergeTol,
                           double rank_rel_tol = 1e-8);

// Accepts: bs, dft:N, file:PATH.
SplitterUnitary parse_splitter_spec(const std::string& text);

// Shortest round-trippable decimal form (17 significant digits).
std::string fmt17(double x);
std::string fmt_complex(Complex z);

// Overwrite path with text; ParseError on failure.
void write_text_file(const std::string& path, const std::string& text);

// Strict numeric parsing: the whole token must be consumed.
double parse_double(const std::string& text, const std::string& what);
long long parse_integer(const std::string& text, const std::string& what);

} // namespace cohrank
