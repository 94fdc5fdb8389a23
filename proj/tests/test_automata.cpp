#include <catch2/catch_amalgamated.hpp>

#include "ovlf/ops.hpp"
#include "ovlf/regex.hpp"
#include "test_support.hpp"

using namespace ovlf;

namespace {

TrackSignature bin1() { return TrackSignature({{"x", 2}}); }

MultiTrackAutomaton shuffle_states(const MultiTrackAutomaton& a, std::mt19937_64& rng) {
    int n = a.state_count();
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    MultiTrackAutomaton out;
    out.sig = a.sig;
    out.deterministic = a.deterministic;
    out.initial = perm[a.initial];
    out.accepting.resize(n);
    out.edges.resize(n);
    for (int s = 0; s < n; ++s) {
        out.accepting[perm[s]] = a.accepting[s];
        for (const auto& [sym, dst] : a.edges[s]) out.edges[perm[s]].emplace_back(sym, perm[dst]);
        std::sort(out.edges[perm[s]].begin(), out.edges[perm[s]].end());
    }
    return out;
}

bool structurally_equal(const MultiTrackAutomaton& a, const MultiTrackAutomaton& b) {
    return a.sig == b.sig && a.initial == b.initial && a.accepting == b.accepting &&
           a.edges == b.edges;
}

}  // namespace

TEST_CASE("signature encoding round-trips and flags bad digits") {
    TrackSignature sig({{"c", 6}, {"n", 2}});
    REQUIRE(sig.alphabet_size() == 12);
    REQUIRE(sig.encode({0, 0}) == 0);   // all-zero tuple is always symbol 0
    for (Symbol s = 0; s < sig.alphabet_size(); ++s) REQUIRE(sig.encode(sig.decode(s)) == s);
    REQUIRE_THROWS_AS(sig.encode({6, 0}), error);
    REQUIRE_THROWS_AS(TrackSignature({{"a", 2}, {"a", 2}}), error);
    REQUIRE_THROWS_AS(TrackSignature({{"a", 4}}), error);
}

TEST_CASE("boolean combinations over one automaton") {
    MultiTrackAutomaton p2 = compile_regex("0*10*", bin1());

    SECTION("conjunction is idempotent") {
        REQUIRE(language_equal(boolean_combine(BoolOp::And, p2, p2), p2));
    }
    SECTION("contradiction is empty") {
        REQUIRE(is_empty(boolean_combine(BoolOp::And, p2, complement(p2))));
    }
    SECTION("complement of the empty language accepts everything") {
        MultiTrackAutomaton none = empty_automaton(bin1());
        MultiTrackAutomaton all = complement(none);
        for (const Word& w : testing::all_words(bin1(), 6)) REQUIRE(accepts(all, w));
    }
    SECTION("de morgan") {
        MultiTrackAutomaton q = compile_regex("(0|1)*11(0|1)*", bin1());
        MultiTrackAutomaton lhs = complement(boolean_combine(BoolOp::And, p2, q));
        MultiTrackAutomaton rhs = boolean_combine(BoolOp::Or, complement(p2), complement(q));
        REQUIRE(language_equal(lhs, rhs));
    }
    SECTION("negation is involutive up to canonical form") {
        MultiTrackAutomaton back = complement(complement(p2));
        REQUIRE(structurally_equal(canonicalize(p2), back));
    }
}

TEST_CASE("products align tracks by name and cross-product the rest") {
    MultiTrackAutomaton ax = compile_regex("0*10*", TrackSignature({{"x", 2}}));
    MultiTrackAutomaton ay = compile_regex("0*1", TrackSignature({{"y", 2}}));
    MultiTrackAutomaton both = boolean_combine(BoolOp::And, ax, ay);
    REQUIRE(both.sig.track_count() == 2);
    REQUIRE(both.sig.track(0).name == "x");
    REQUIRE(both.sig.track(1).name == "y");
    // x = 4 = "001", y = 4 as well
    REQUIRE(accepts_tracks(both, {"001", "001"}));
    REQUIRE_FALSE(accepts_tracks(both, {"001", "101"}));

    MultiTrackAutomaton clash = compile_regex("0*", TrackSignature({{"x", 3}}));
    REQUIRE_THROWS_AS(boolean_combine(BoolOp::And, ax, clash), error);
}

TEST_CASE("projection is an existential quantifier with padding semantics") {
    // (x, y) with y = 2x, x a power of two; projecting y leaves powers of two
    TrackSignature sig({{"x", 2}, {"y", 2}});
    MultiTrackAutomaton doubled = compile_regex("[0,0]*[1,0][0,1][0,0]*", sig);
    MultiTrackAutomaton projected = project(doubled, "y");
    MultiTrackAutomaton p2 = compile_regex("0*10*", TrackSignature({{"x", 2}}));
    // witness y needs one digit more than x, so pad-closure must kick in
    REQUIRE(language_equal(projected, p2));

    SECTION("projecting an ignored track keeps the language") {
        MultiTrackAutomaton free_y = boolean_combine(
            BoolOp::And, p2, compile_regex("(0|1)*", TrackSignature({{"y", 2}})));
        MultiTrackAutomaton only_x = project(free_y, "y");
        REQUIRE(language_equal(only_x, p2));
    }
    SECTION("projecting every track decides nonemptiness") {
        MultiTrackAutomaton sentence = project(project(doubled, "y"), "x");
        REQUIRE(sentence.sig.track_count() == 0);
        REQUIRE(accepts(sentence, Word{}));
        MultiTrackAutomaton nothing = project(project(empty_automaton(sig), "y"), "x");
        REQUIRE_FALSE(accepts(nothing, Word{}));
    }
    SECTION("unknown track name") {
        REQUIRE_THROWS_AS(project(doubled, "z"), error);
    }
    SECTION("projection order does not matter") {
        std::mt19937_64 rng(7);
        for (int round = 0; round < 20; ++round) {
            MultiTrackAutomaton r = testing::random_automaton(rng, sig, 6);
            MultiTrackAutomaton xy = project(project(r, "x"), "y");
            MultiTrackAutomaton yx = project(project(r, "y"), "x");
            REQUIRE(language_equal(xy, yx));
        }
    }
}

TEST_CASE("canonicalize is idempotent and relabeling-invariant") {
    std::mt19937_64 rng(11);
    TrackSignature sig({{"x", 3}});
    for (int round = 0; round < 30; ++round) {
        MultiTrackAutomaton a = testing::random_automaton(rng, sig, 8, round % 2 == 1);
        MultiTrackAutomaton c1 = canonicalize(a);
        REQUIRE(structurally_equal(c1, canonicalize(c1)));
        MultiTrackAutomaton c2 = canonicalize(shuffle_states(a, rng));
        REQUIRE(structurally_equal(c1, c2));
    }
}

TEST_CASE("determinize and minimize preserve the language") {
    std::mt19937_64 rng(23);
    TrackSignature sig({{"x", 2}});
    for (int round = 0; round < 40; ++round) {
        MultiTrackAutomaton a = testing::random_automaton(rng, sig, 8, true);
        MultiTrackAutomaton d = determinize(a);
        REQUIRE(d.deterministic);
        REQUIRE(testing::agree_on_words(a, d, 6));
        MultiTrackAutomaton m = minimize(d);
        REQUIRE(testing::agree_on_words(a, m, 6));
    }
}

TEST_CASE("pad closure invariance for constructed automata") {
    std::mt19937_64 rng(37);
    TrackSignature sig({{"c", 6}});
    std::vector<MultiTrackAutomaton> constructed;
    constructed.push_back(compile_regex("(1|2|3|4|5)*0*", sig));
    constructed.push_back(compile_regex("(21(1*))*20*", sig));
    constructed.push_back(complement(constructed[0]));
    constructed.push_back(boolean_combine(BoolOp::Or, constructed[0], constructed[1]));
    for (int round = 0; round < 10; ++round)
        constructed.push_back(pad_closure(testing::random_automaton(rng, sig, 6)));

    for (const auto& a : constructed) {
        for (int round = 0; round < 200; ++round) {
            Word w = testing::random_word(rng, a.sig, 12);
            Word padded = w;
            padded.push_back(0);
            REQUIRE(accepts(a, w) == accepts(a, padded));
        }
    }
}

TEST_CASE("enumerate_accepted lists pad-free representatives in shortlex order") {
    TrackSignature sig({{"c", 6}});
    MultiTrackAutomaton valid = compile_regex("(1|2|3|4|5)*0*", sig);
    std::vector<Word> words = enumerate_accepted(valid, 2);
    // empty code plus 5 one-digit codes plus 25 two-digit codes
    REQUIRE(words.size() == 1 + 5 + 25);
    REQUIRE(words[0].empty());
    REQUIRE(words[1] == Word{1});
    REQUIRE(words[5] == Word{5});
    REQUIRE(words[6] == (Word{1, 1}));
    for (const Word& w : words)
        if (!w.empty()) REQUIRE(w.back() != 0);
    // "05" is not a valid code, "50" is a padded representative: neither shows up
    for (const Word& w : words) {
        REQUIRE(w != (Word{0, 5}));
        REQUIRE(w != (Word{5, 0}));
    }
}

TEST_CASE("combine_outputs picks the first accepting part") {
    TrackSignature sig({{"x", 2}});
    MultiTrackAutomaton a = compile_regex("0*10*", sig);          // powers of two
    MultiTrackAutomaton b = compile_regex("(0|1)*1(0|1)*", sig);  // anything nonzero

    SECTION("single part") {
        OutputAutomaton combined = combine_outputs({{a, 1}});
        REQUIRE(combined.run(make_word(sig, "001")) == 1);
        REQUIRE(combined.run(make_word(sig, "011")) == 0);
    }
    SECTION("first part wins on overlap") {
        OutputAutomaton combined = combine_outputs({{a, 1}, {b, 2}});
        REQUIRE(combined.run(make_word(sig, "001")) == 1);   // in both languages
        REQUIRE(combined.run(make_word(sig, "011")) == 2);   // only in b
        REQUIRE(combined.run(make_word(sig, "000")) == 0);   // in neither
        OutputAutomaton flipped = combine_outputs({{b, 2}, {a, 1}});
        REQUIRE(flipped.run(make_word(sig, "001")) == 2);
    }
    SECTION("outputs are stable under padding") {
        OutputAutomaton combined = combine_outputs({{a, 1}, {b, 2}});
        std::mt19937_64 rng(5);
        for (int round = 0; round < 100; ++round) {
            Word w = testing::random_word(rng, sig, 10);
            Word padded = w;
            padded.push_back(0);
            REQUIRE(combined.run(w) == combined.run(padded));
        }
    }
}

TEST_CASE("live state counts ignore dead scaffolding") {
    TrackSignature sig({{"x", 2}});
    REQUIRE(live_state_count(empty_automaton(sig)) == 0);
    REQUIRE(live_state_count(compile_regex("0*10*", sig)) == 2);
    // completing with an explicit sink must not change the count
    MultiTrackAutomaton doubled = complement(complement(compile_regex("0*10*", sig)));
    REQUIRE(live_state_count(doubled) == 2);
}
