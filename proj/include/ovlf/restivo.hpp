#pragma once

// Code semantics for the factorization of binary words into iterated images
// of the Thue-Morse morphism. A code is a word over {1..5} followed by
// padding 0s; digit i names the seed block g(i), and the word denoted by
// c0 c1 ... ct is g(c0) mu(g(c1)) mu^2(g(c2)) ... mu^t(g(ct)).

#include <string>

#include "ovlf/automaton.hpp"
#include "ovlf/numeration.hpp"
#include "ovlf/ops.hpp"

namespace ovlf {

// seed blocks: 1 -> empty, 2 -> 0, 3 -> 1, 4 -> 00, 5 -> 11; 0 pads
inline const std::string& g_block(int digit) {
    static const std::string table[6] = {"", "", "0", "1", "00", "11"};
    if (digit < 0 || digit > 5) throw error("g_block: digit out of range");
    return table[digit];
}

// h(i) = |g(i)|, read as a generalized base-2 digit
inline int h_digit(int digit) {
    static const int table[6] = {0, 0, 1, 1, 2, 2};
    if (digit < 0 || digit > 5) throw error("h_digit: digit out of range");
    return table[digit];
}

inline std::string mu(std::string_view w) {
    std::string out;
    out.reserve(w.size() * 2);
    for (char c : w) out += (c == '0') ? "01" : "10";
    return out;
}

inline std::string mu_iterate(std::string w, int times) {
    for (int i = 0; i < times; ++i) w = mu(w);
    return w;
}

inline bool is_valid_code(std::string_view code) {
    bool padding = false;
    for (char c : code) {
        if (c < '0' || c > '5') return false;
        if (c == '0') padding = true;
        else if (padding) return false;   // interior zero
    }
    return true;
}

// Brute-force expansion of a code into its binary word; the independent
// oracle for every lookup-automaton check. Cost is exponential in the code
// length.
inline std::string expand_code(std::string_view code) {
    if (!is_valid_code(code))
        throw error("expand_code: invalid code '" + std::string(code) + "'");
    std::string word;
    for (size_t i = 0; i < code.size(); ++i)
        word += mu_iterate(g_block(code[i] - '0'), static_cast<int>(i));
    return word;
}

inline uint64_t code_word_length(std::string_view code) {
    uint64_t len = 0, w = 1;
    for (char c : code) {
        len += static_cast<uint64_t>(h_digit(c - '0')) * w;
        w *= 2;
    }
    return len;
}

// Bit n of the Thue-Morse word: the parity of the binary weight of n.
inline int thue_morse_bit(uint64_t n) {
    int parity = 0;
    while (n) {
        parity ^= static_cast<int>(n & 1);
        n >>= 1;
    }
    return parity;
}

// Two-state output automaton computing thue_morse_bit of a binary track.
inline OutputAutomaton build_thue_morse(const std::string& track = "%0") {
    OutputAutomaton a;
    a.sig = TrackSignature({{track, 2}});
    a.initial = 0;
    a.output = {0, 1};
    a.next = {{0, 1}, {1, 0}};
    return a;
}

// Output automaton reading (p, c) with p binary and c a code word; when
// p = 2^i the output is the code digit at position i (0 when the code is
// shorter). Anything with more than one 1 in p falls into a sink with
// output 0.
inline OutputAutomaton build_code_lookup(const std::string& power_track = "%0",
                                         const std::string& code_track = "%1") {
    TrackSignature sig({{power_track, 2}, {code_track, 6}});
    OutputAutomaton a;
    a.sig = sig;
    a.initial = 0;
    // state 0: before the marked position; 1..6: captured digit d-1; 7: sink
    a.output = {0, 0, 1, 2, 3, 4, 5, 0};
    a.next.assign(8, std::vector<int>(sig.alphabet_size(), 7));
    for (int d = 0; d <= 5; ++d) {
        a.next[0][sig.encode({0, d})] = 0;
        a.next[0][sig.encode({1, d})] = 1 + d;
        for (int captured = 1; captured <= 6; ++captured) {
            a.next[captured][sig.encode({0, d})] = captured;
            a.next[captured][sig.encode({1, d})] = 7;
        }
        a.next[7][sig.encode({0, d})] = 7;
        a.next[7][sig.encode({1, d})] = 7;
    }
    return canonicalize(a);
}

}  // namespace ovlf
