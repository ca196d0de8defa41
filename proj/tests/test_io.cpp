#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "cohrank/io.hpp"
#include "cohrank/named_states.hpp"

using cohrank::Complex;
using cohrank::StateSpec;
using cohrank::SuperpositionState;
using cohrank::Term;

namespace {

std::filesystem::path scratch_dir() {
    const std::filesystem::path dir =
        std::filesystem::temp_directory_path() / "cohrank_io_tests";
    std::filesystem::create_directories(dir);
    return dir;
}

std::string scratch_file(const std::string& name, const std::string& text) {
    const std::filesystem::path p = scratch_dir() / name;
    std::ofstream out(p);
    out << text;
    out.close();
    return p.string();
}

} // namespace

TEST_CASE("state files round trip exactly") {
    const SuperpositionState s(
        2, {{Complex(0.25, -1.0 / 3.0),
             {Complex(1.0 / 7.0, 0.0), Complex(-0.5, 2.0 / 3.0)}},
            {Complex(0.75, 0.0),
             {Complex(0.0, 0.0), Complex(1e-3, -1e-3)}}});
    const std::string path = (scratch_dir() / "roundtrip.json").string();
    cohrank::save_state_file(s, path);
    const SuperpositionState loaded = cohrank::load_state_file(path);
    REQUIRE(loaded.modes() == 2);
    REQUIRE(loaded.size() == 2);
    for (int i = 0; i < 2; ++i) {
        const Term& a = s.terms()[static_cast<std::size_t>(i)];
        const Term& b = loaded.terms()[static_cast<std::size_t>(i)];
        CHECK(a.kappa == b.kappa);
        CHECK(a.point == b.point);
    }
}

TEST_CASE("state files reject malformed input") {
    CHECK_THROWS_AS(cohrank::load_state_file(
                        (scratch_dir() / "does_not_exist.json").string()),
                    cohrank::ParseError);
    CHECK_THROWS_AS(
        cohrank::load_state_file(scratch_file("garbage.json", "{not json")),
        cohrank::ParseError);
    CHECK_THROWS_AS(
        cohrank::load_state_file(scratch_file("array.json", "[1, 2]")),
        cohrank::ParseError);

    const char* unknown_top = R"({"modes": 1, "comment": "hi",
        "terms": [{"kappa": [1, 0], "point": [[0, 0]]}]})";
    CHECK_THROWS_AS(
        cohrank::load_state_file(scratch_file("unknown_top.json", unknown_top)),
        cohrank::ParseError);

    const char* unknown_term = R"({"modes": 1,
        "terms": [{"kappa": [1, 0], "point": [[0, 0]], "weight": 1}]})";
    CHECK_THROWS_AS(cohrank::load_state_file(
                        scratch_file("unknown_term.json", unknown_term)),
                    cohrank::ParseError);

    const char* short_point = R"({"modes": 2,
        "terms": [{"kappa": [1, 0], "point": [[0, 0]]}]})";
    CHECK_THROWS_AS(
        cohrank::load_state_file(scratch_file("short_point.json", short_point)),
        cohrank::ParseError);

    const char* no_modes =
        R"({"terms": [{"kappa": [1, 0], "point": [[0, 0]]}]})";
    CHECK_THROWS_AS(
        cohrank::load_state_file(scratch_file("no_modes.json", no_modes)),
        cohrank::ParseError);

    const char* no_kappa = R"({"modes": 1, "terms": [{"point": [[0, 0]]}]})";
    CHECK_THROWS_AS(
        cohrank::load_state_file(scratch_file("no_kappa.json", no_kappa)),
        cohrank::ParseError);

    const char* bad_modes = R"({"modes": "two",
        "terms": [{"kappa": [1, 0], "point": [[0, 0]]}]})";
    CHECK_THROWS_AS(
        cohrank::load_state_file(scratch_file("bad_modes.json", bad_modes)),
        cohrank::ParseError);

    const char* zero_modes = R"({"modes": 0,
        "terms": [{"kappa": [1, 0], "point": [[0, 0]]}]})";
    CHECK_THROWS_AS(
        cohrank::load_state_file(scratch_file("zero_modes.json", zero_modes)),
        cohrank::ParseError);

    const char* empty_terms = R"({"modes": 1, "terms": []})";
    CHECK_THROWS_AS(
        cohrank::load_state_file(scratch_file("empty_terms.json", empty_terms)),
        cohrank::ParseError);

    const char* scalar_kappa = R"({"modes": 1,
        "terms": [{"kappa": 1, "point": [[0, 0]]}]})";
    CHECK_THROWS_AS(cohrank::load_state_file(
                        scratch_file("scalar_kappa.json", scalar_kappa)),
                    cohrank::ParseError);
}

TEST_CASE("unitary files round trip and verify unitarity") {
    const std::string path = (scratch_dir() / "bs.json").string();
    cohrank::save_unitary_file(cohrank::balanced_bs(), path);
    const cohrank::SplitterUnitary loaded = cohrank::load_unitary_file(path);
    CHECK(loaded.size() == 2);
    CHECK((loaded.entries() - cohrank::balanced_bs().entries())
              .cwiseAbs()
              .maxCoeff() == 0.0);

    const char* scaled = R"({"size": 2, "entries":
        [[[0.71417785217249708, 0], [-0.71417785217249708, 0]],
         [[0.70710678118654746, 0], [0.70710678118654746, 0]]]})";
    CHECK_THROWS_AS(
        cohrank::load_unitary_file(scratch_file("scaled.json", scaled)),
        cohrank::NonUnitaryError);

    const char* unknown = R"({"size": 1, "entries": [[[1, 0]]], "note": ""})";
    CHECK_THROWS_AS(
        cohrank::load_unitary_file(scratch_file("unknown_u.json", unknown)),
        cohrank::ParseError);

    const char* ragged = R"({"size": 2, "entries": [[[1, 0]], [[0, 0], [1, 0]]]})";
    CHECK_THROWS_AS(
        cohrank::load_unitary_file(scratch_file("ragged.json", ragged)),
        cohrank::ParseError);
}

TEST_CASE("state specs parse every documented form") {
    const StateSpec coherent = cohrank::parse_state_spec("coherent:1.5:-0.5");
    CHECK(coherent.kind == StateSpec::Kind::kSuperposition);
    REQUIRE(coherent.terms.size() == 1);
    CHECK(coherent.terms[0].point[0] == Complex(1.5, -0.5));
    CHECK(coherent.description == "coherent:1.5:-0.5");

    const StateSpec cat = cohrank::parse_state_spec("cat:odd:1.0");
    CHECK(cat.kind == StateSpec::Kind::kSuperposition);
    CHECK(cat.terms.size() == 2);

    const StateSpec family = cohrank::parse_state_spec("cat:even");
    CHECK(family.kind == StateSpec::Kind::kCatFamily);
    CHECK(family.cat_sign == 1);
    CHECK(family.terms.empty());

    const StateSpec dq = cohrank::parse_state_spec("fockdq:3:0.05");
    CHECK(dq.terms.size() == 4);
    CHECK(dq.fockdq_n == 3);
    CHECK(dq.fockdq_h == 0.05);

    const StateSpec sv = cohrank::parse_state_spec("sv:1.2");
    CHECK(sv.kind == StateSpec::Kind::kSqueezedVacuum);
    CHECK(sv.sv_mu == 1.2);
    CHECK(sv.sv_phase == 0.0);

    const StateSpec rnd = cohrank::parse_state_spec("random:4:9");
    CHECK(rnd.terms.size() == 4);
    const SuperpositionState expect = cohrank::random_state(4, 9);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(rnd.terms[i].kappa == expect.terms()[i].kappa);
        CHECK(rnd.terms[i].point == expect.terms()[i].point);
    }

    const SuperpositionState saved = cohrank::cat_state(Complex(0.9, 0.0), -1);
    const std::string path = (scratch_dir() / "spec_file.json").string();
    cohrank::save_state_file(saved, path);
    const StateSpec from_file = cohrank::parse_state_spec("file:" + path);
    CHECK(from_file.kind == StateSpec::Kind::kSuperposition);
    CHECK(from_file.terms.size() == 2);
}

TEST_CASE("state specs reject malformed forms") {
    CHECK_THROWS_AS(cohrank::parse_state_spec("bogus"), cohrank::ParseError);
    CHECK_THROWS_AS(cohrank::parse_state_spec("coherent:1"),
                    cohrank::ParseError);
    CHECK_THROWS_AS(cohrank::parse_state_spec("coherent:x:y"),
                    cohrank::ParseError);
    CHECK_THROWS_AS(cohrank::parse_state_spec("cat:sideways:1"),
                    cohrank::ParseError);
    CHECK_THROWS_AS(cohrank::parse_state_spec("sv:0.5"), cohrank::ParseError);
    CHECK_THROWS_AS(cohrank::parse_state_spec("fockdq:1:-0.5"),
                    cohrank::ParseError);
    CHECK_THROWS_AS(cohrank::parse_state_spec("fockdq:9:0.05"),
                    cohrank::ConditioningError);
    CHECK_THROWS_AS(cohrank::parse_state_spec("cat:odd:1e-14"),
                    cohrank::DegenerateStateError);
}

TEST_CASE("splitter specs parse and validate") {
    CHECK(cohrank::parse_splitter_spec("bs").size() == 2);
    CHECK(cohrank::parse_splitter_spec("dft:3").size() == 3);
    CHECK_THROWS_AS(cohrank::parse_splitter_spec("dft:1"), cohrank::ParseError);
    CHECK_THROWS_AS(cohrank::parse_splitter_spec("dft:65"),
                    cohrank::ParseError);
    CHECK_THROWS_AS(cohrank::parse_splitter_spec("mirror"),
                    cohrank::ParseError);

    const std::string path = (scratch_dir() / "dft4.json").string();
    cohrank::save_unitary_file(cohrank::dft_splitter(4), path);
    CHECK(cohrank::parse_splitter_spec("file:" + path).size() == 4);
}

TEST_CASE("numeric formatting round trips") {
    for (double x : {1.0 / 3.0, 0.1, 2.0, -1e-300, 6.02214076e23,
                     0.70710678118654757}) {
        const std::string s = cohrank::fmt17(x);
        CHECK(std::strtod(s.c_str(), nullptr) == x);
    }
    CHECK(cohrank::fmt17(2.0) == "2");
    CHECK(cohrank::fmt_complex(Complex(1.5, -0.5)) == "(1.5, -0.5)");
}

TEST_CASE("strict numeric parsing") {
    CHECK(cohrank::parse_double("1.5", "x") == 1.5);
    CHECK(cohrank::parse_double("-2e-3", "x") == -2e-3);
    CHECK_THROWS_AS(cohrank::parse_double("1.5x", "x"), cohrank::ParseError);
    CHECK_THROWS_AS(cohrank::parse_double("", "x"), cohrank::ParseError);
    CHECK_THROWS_AS(cohrank::parse_double(" 1.5", "x"), cohrank::ParseError);
    CHECK_THROWS_AS(cohrank::parse_double("inf", "x"), cohrank::ParseError);
    CHECK_THROWS_AS(cohrank::parse_double("nan", "x"), cohrank::ParseError);

    CHECK(cohrank::parse_integer("12", "n") == 12);
    CHECK(cohrank::parse_integer("-3", "n") == -3);
    CHECK_THROWS_AS(cohrank::parse_integer("3.5", "n"), cohrank::ParseError);
    CHECK_THROWS_AS(cohrank::parse_integer("", "n"), cohrank::ParseError);
    CHECK_THROWS_AS(cohrank::parse_integer("ten", "n"), cohrank::ParseError);
}
