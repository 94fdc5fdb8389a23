#pragma once

// Shared helpers for the test suites: exhaustive word enumeration, random
// automata, and assorted small oracles that stay independent of the
// constructions they check.

#include <random>

#include "ovlf/automaton.hpp"
#include "ovlf/ops.hpp"

namespace ovlf::testing {

// All words over the signature's alphabet up to the given length.
inline std::vector<Word> all_words(const TrackSignature& sig, size_t max_len) {
    std::vector<Word> out{{}};
    std::vector<Word> layer{{}};
    for (size_t len = 1; len <= max_len; ++len) {
        std::vector<Word> next;
        for (const Word& w : layer)
            for (Symbol s = 0; s < sig.alphabet_size(); ++s) {
                Word w2 = w;
                w2.push_back(s);
                next.push_back(w2);
            }
        out.insert(out.end(), next.begin(), next.end());
        layer = std::move(next);
    }
    return out;
}

inline bool agree_on_words(const MultiTrackAutomaton& a, const MultiTrackAutomaton& b,
                           size_t max_len) {
    if (!(a.sig == b.sig)) return false;
    for (const Word& w : all_words(a.sig, max_len))
        if (accepts(a, w) != accepts(b, w)) return false;
    return true;
}

// Deterministic pseudo-random automaton; possibly partial, possibly with
// unreachable parts.
inline MultiTrackAutomaton random_automaton(std::mt19937_64& rng, const TrackSignature& sig,
                                            int max_states, bool nondet = false) {
    std::uniform_int_distribution<int> statecount(1, max_states);
    int n = statecount(rng);
    MultiTrackAutomaton a;
    a.sig = sig;
    a.initial = 0;
    a.deterministic = !nondet;
    a.accepting.resize(n);
    a.edges.resize(n);
    std::uniform_int_distribution<int> target(0, n - 1);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (int s = 0; s < n; ++s) {
        a.accepting[s] = coin(rng) < 0.4 ? 1 : 0;
        for (Symbol sym = 0; sym < sig.alphabet_size(); ++sym) {
            if (coin(rng) < 0.75) a.edges[s].emplace_back(sym, target(rng));
            if (nondet && coin(rng) < 0.3) a.edges[s].emplace_back(sym, target(rng));
        }
        std::sort(a.edges[s].begin(), a.edges[s].end());
        a.edges[s].erase(std::unique(a.edges[s].begin(), a.edges[s].end()), a.edges[s].end());
    }
    return a;
}

inline Word random_word(std::mt19937_64& rng, const TrackSignature& sig, size_t max_len) {
    std::uniform_int_distribution<size_t> lendist(0, max_len);
    std::uniform_int_distribution<Symbol> symdist(0, sig.alphabet_size() - 1);
    Word w(lendist(rng));
    for (auto& s : w) s = symdist(rng);
    return w;
}

}  // namespace ovlf::testing
