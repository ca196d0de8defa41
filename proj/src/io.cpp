#include "cohrank/io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cohrank/named_states.hpp"

namespace cohrank {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open '" + path + "'");
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError("malformed JSON in '" + path + "': " + e.what());
    }
}

void reject_unknown_fields(const json& obj,
                           std::initializer_list<const char*> allowed,
                           const std::string& where) {
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* key : allowed) {
            if (item.key() == key) {
                known = true;
                break;
            }
        }
        if (!known) {
            throw ParseError("unknown field '" + item.key() + "' in " + where);
        }
    }
}

const json& require_field(const json& obj, const char* key,
                          const std::string& where) {
    const auto it = obj.find(key);
    if (it == obj.end()) {
        throw ParseError("missing field '" + std::string(key) + "' in " + where);
    }
    return *it;
}

Complex parse_pair(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() ||
        !j[1].is_number()) {
        throw ParseError(where + " must be a [re, im] pair of numbers");
    }
    return Complex(j[0].get<double>(), j[1].get<double>());
}

ordered_json pair_of(Complex z) {
    return ordered_json::array({z.real(), z.imag()});
}

std::vector<std::string> split_tokens(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string::size_type start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(text.substr(start));
            return out;
        }
        out.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
}

} // namespace

SuperpositionState load_state_file(const std::string& path) {
    const json root = read_json(path);
    if (!root.is_object()) {
        throw ParseError("state file '" + path + "' must hold a JSON object");
    }
    reject_unknown_fields(root, {"modes", "terms"}, "state file");
    const json& jmodes = require_field(root, "modes", "state file");
    if (!jmodes.is_number_integer() || jmodes.get<long long>() < 1) {
        throw ParseError("'modes' must be a positive integer");
    }
    const int modes = jmodes.get<int>();
    const json& jterms = require_field(root, "terms", "state file");
    if (!jterms.is_array() || jterms.empty()) {
        throw ParseError("'terms' must be a nonempty array");
    }

    std::vector<Term> terms;
    terms.reserve(jterms.size());
    for (std::size_t i = 0; i < jterms.size(); ++i) {
        const json& jt = jterms[i];
        const std::string where = "terms[" + std::to_string(i) + "]";
        if (!jt.is_object()) {
            throw ParseError(where + " must be an object");
        }
        reject_unknown_fields(jt, {"kappa", "point"}, where);
        Term t;
        t.kappa = parse_pair(require_field(jt, "kappa", where), where + ".kappa");
        const json& jpoint = require_field(jt, "point", where);
        if (!jpoint.is_array() ||
            static_cast<int>(jpoint.size()) != modes) {
            throw ParseError(where + ".point must list one amplitude per mode");
        }
        for (std::size_t m = 0; m < jpoint.size(); ++m) {
            t.point.push_back(parse_pair(
                jpoint[m], where + ".point[" + std::to_string(m) + "]"));
        }
        terms.push_back(std::move(t));
    }
    return SuperpositionState(modes, std::move(terms));
}

void save_state_file(const SuperpositionState& s, const std::string& path) {
    ordered_json root;
    root["modes"] = s.modes();
    ordered_json jterms = ordered_json::array();
    for (const Term& t : s.terms()) {
        ordered_json jt;
        jt["kappa"] = pair_of(t.kappa);
        ordered_json jpoint = ordered_json::array();
        for (Complex a : t.point) jpoint.push_back(pair_of(a));
        jt["point"] = std::move(jpoint);
        jterms.push_back(std::move(jt));
    }
    root["terms"] = std::move(jterms);
    write_text_file(path, root.dump(2) + "\n");
}

SplitterUnitary load_unitary_file(const std::string& path) {
    const json root = read_json(path);
    if (!root.is_object()) {
        throw ParseError("unitary file '" + path + "' must hold a JSON object");
    }
    reject_unknown_fields(root, {"size", "entries"}, "unitary file");
    const json& jsize = require_field(root, "size", "unitary file");
    if (!jsize.is_number_integer() || jsize.get<long long>() < 1) {
        throw ParseError("'size' must be a positive integer");
    }
    const int n = jsize.get<int>();
    const json& jentries = require_field(root, "entries", "unitary file");
    if (!jentries.is_array() || static_cast<int>(jentries.size()) != n) {
        throw ParseError("'entries' must hold one row per port");
    }
    Eigen::MatrixXcd t(n, n);
    for (int j = 0; j < n; ++j) {
        const json& row = jentries[static_cast<std::size_t>(j)];
        if (!row.is_array() || static_cast<int>(row.size()) != n) {
            throw ParseError("entries[" + std::to_string(j) +
                             "] must hold one pair per port");
        }
        for (int k = 0; k < n; ++k) {
            t(j, k) = parse_pair(row[static_cast<std::size_t>(k)],
                                 "entries[" + std::to_string(j) + "][" +
                                     std::to_string(k) + "]");
        }
    }
    return SplitterUnitary::from_matrix(t);
}

void save_unitary_file(const SplitterUnitary& t, const std::string& path) {
    ordered_json root;
    root["size"] = t.size();
    ordered_json jentries = ordered_json::array();
    for (int j = 0; j < t.size(); ++j) {
        ordered_json row = ordered_json::array();
        for (int k = 0; k < t.size(); ++k) {
            row.push_back(pair_of(t.entries()(j, k)));
        }
        jentries.push_back(std::move(row));
    }
    root["entries"] = std::move(jentries);
    write_text_file(path, root.dump(2) + "\n");
}

double parse_double(const std::string& text, const std::string& what) {
    if (text.empty()) {
        throw ParseError(what + ": empty number");
    }
    double value = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    const auto result = std::from_chars(begin, end, value);
    if (result.ec != std::errc() || result.ptr != end || !std::isfinite(value)) {
        throw ParseError(what + ": cannot parse '" + text + "' as a number");
    }
    return value;
}

long long parse_integer(const std::string& text, const std::string& what) {
    if (text.empty()) {
        throw ParseError(what + ": empty integer");
    }
    long long value = 0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    const auto result = std::from_chars(begin, end, value);
    if (result.ec != std::errc() || result.ptr != end) {
        throw ParseError(what + ": cannot parse '" + text + "' as an integer");
    }
    return value;
}

StateSpec parse_state_spec(const std::string& text, double merge_tol,
                           double rank_rel_tol) {
    StateSpec spec;
    spec.description = text;

    if (text.rfind("file:", 0) == 0) {
        const SuperpositionState s = load_state_file(text.substr(5));
        spec.kind = StateSpec::Kind::kSuperposition;
        spec.terms = s.terms();
        spec.modes = s.modes();
        return spec;
    }

    const std::vector<std::string> tok = split_tokens(text, ':');
    const std::string& head = tok.front();

    if (head == "coherent" && tok.size() == 3) {
        const double re = parse_double(tok[1], "coherent amplitude");
        const double im = parse_double(tok[2], "coherent amplitude");
        spec.terms = {{Complex(1.0, 0.0), {Complex(re, im)}}};
        return spec;
    }
    if (head == "cat" && (tok.size() == 2 || tok.size() == 3)) {
        int sign = 0;
        if (tok[1] == "odd") sign = -1;
        if (tok[1] == "even") sign = +1;
        if (sign == 0) {
            throw ParseError("cat parity must be 'odd' or 'even'");
        }
        if (tok.size() == 2) {
            spec.kind = StateSpec::Kind::kCatFamily;
            spec.cat_sign = sign;
            return spec;
        }
        const double alpha = parse_double(tok[2], "cat amplitude");
        const SuperpositionState s =
            cat_state(Complex(alpha, 0.0), sign, merge_tol);
        spec.terms = s.terms();
        return spec;
    }
    if (head == "fockdq" && tok.size() == 3) {
        const long long n = parse_integer(tok[1], "Fock index");
        const double h = parse_double(tok[2], "difference-quotient step");
        const SuperpositionState s =
            fock_difference_quotient(static_cast<int>(n), h, rank_rel_tol);
        spec.terms = s.terms();
        spec.fockdq_n = static_cast<int>(n);
        spec.fockdq_h = h;
        return spec;
    }
    if (head == "sv" && (tok.size() == 2 || tok.size() == 3)) {
        spec.kind = StateSpec::Kind::kSqueezedVacuum;
        spec.sv_mu = parse_double(tok[1], "squeezing mu");
        spec.sv_phase =
            tok.size() == 3 ? parse_double(tok[2], "squeezing phase") : 0.0;
        // Validate eagerly so bad parameters surface as input errors here.
        SqueezedVacuumParams::from_mu(spec.sv_mu, spec.sv_phase);
        return spec;
    }
    if (head == "random" && tok.size() == 3) {
        const long long r = parse_integer(tok[1], "random term count");
        const long long seed = parse_integer(tok[2], "random seed");
        const SuperpositionState s = random_state(
            static_cast<int>(r), static_cast<std::uint64_t>(seed));
        spec.terms = s.terms();
        return spec;
    }
    throw ParseError(
        "unrecognized state spec '" + text +
        "'; expected coherent:RE:IM, cat:odd[:A], cat:even[:A], fockdq:N:H, "
        "sv:MU[:PHASE], random:R:SEED, or file:PATH");
}

SplitterUnitary parse_splitter_spec(const std::string& text) {
    if (text == "bs") {
        return balanced_bs();
    }
    if (text.rfind("dft:", 0) == 0) {
        const long long n = parse_integer(text.substr(4), "DFT port count");
        if (n < 2 || n > 64) {
            throw ParseError("DFT port count must lie in 2..64");
        }
        return dft_splitter(static_cast<int>(n));
    }
    if (text.rfind("file:", 0) == 0) {
        return load_unitary_file(text.substr(5));
    }
    throw ParseError("unrecognized splitter spec '" + text +
                     "'; expected bs, dft:N, or file:PATH");
}

std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ParseError("cannot write '" + path + "'");
    }
    out << text;
    if (!out) {
        throw ParseError("write failed for '" + path + "'");
    }
}

std::string fmt_complex(Complex z) {
    return "(" + fmt17(z.real()) + ", " + fmt17(z.imag()) + ")";
}

} // namespace cohrank
