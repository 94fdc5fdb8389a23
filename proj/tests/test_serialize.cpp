#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "ovlf/regex.hpp"
#include "ovlf/restivo.hpp"
#include "ovlf/serialize.hpp"

using namespace ovlf;

TEST_CASE("acceptor text format round-trips") {
    TrackSignature sig({{"c", 6}, {"n", 2}});
    MultiTrackAutomaton a = compile_regex("([1,0]|[2,1])*[0,0]*", sig);
    std::string text = to_text(a);
    std::istringstream in(text);
    MultiTrackAutomaton back = read_acceptor(in);
    REQUIRE(back.sig == a.sig);
    REQUIRE(language_equal(a, back));
    REQUIRE(to_text(back) == text);
}

TEST_CASE("output automaton text format round-trips") {
    OutputAutomaton t = build_thue_morse("n");
    std::string text = to_text(t);
    std::istringstream in(text);
    OutputAutomaton back = read_output_automaton(in);
    REQUIRE(back.sig == t.sig);
    for (uint64_t n = 0; n < 64; ++n)
        REQUIRE(back.run(make_word(back.sig, lsd_digits(n))) == t.run(make_word(t.sig, lsd_digits(n))));
    REQUIRE(to_text(back) == text);
}

TEST_CASE("kind detection when reading") {
    OutputAutomaton t = build_thue_morse("n");
    std::istringstream in(to_text(t));
    REQUIRE_THROWS_AS(read_acceptor(in), error);
}

TEST_CASE("dot export mentions every state and the output values") {
    OutputAutomaton t = build_thue_morse("n");
    std::ostringstream os;
    write_dot(os, t, "t");
    std::string dot = os.str();
    REQUIRE(dot.find("digraph") != std::string::npos);
    REQUIRE(dot.find("0/0") != std::string::npos);
    REQUIRE(dot.find("1/1") != std::string::npos);
}
