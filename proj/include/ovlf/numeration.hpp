#pragma once

// Base-2 numeration predicates as automata. All representations are
// LSD-first; the extended binary representation allows digit 2, so a value
// can have several representations and a dedicated normalizer automaton
// relates base-3-digit strings to ordinary binary strings of equal value.

#include <cstdint>

#include "ovlf/automaton.hpp"
#include "ovlf/ops.hpp"
#include "ovlf/regex.hpp"

namespace ovlf {

// Positional value of an LSD-first digit string (any digits allowed).
inline uint64_t value_lsd(std::string_view digits) {
    uint64_t v = 0, w = 1;
    for (char c : digits) {
        if (c < '0' || c > '9') throw error("value_lsd: bad digit");
        v += static_cast<uint64_t>(c - '0') * w;
        w *= 2;
    }
    return v;
}

// Canonical LSD-first binary digits of n; empty for 0.
inline std::string lsd_digits(uint64_t n) {
    std::string s;
    while (n) {
        s += static_cast<char>('0' + (n & 1));
        n >>= 1;
    }
    return s;
}

// Accepts the pair (l, n) with l over digits {0,1,2} and n binary iff both
// strings have the same base-2 value. Two live states: 0 = no carry,
// 1 = carry expected.
inline MultiTrackAutomaton build_normalizer(const std::string& ext_track = "%0",
                                            const std::string& bin_track = "%1") {
    TrackSignature sig({{ext_track, 3}, {bin_track, 2}});
    MultiTrackAutomaton a;
    a.sig = sig;
    a.initial = 0;
    a.accepting = {1, 0};
    a.edges.resize(2);
    // carry invariant: value(ext prefix) - value(bin prefix) = carry * 2^k
    for (int carry = 0; carry <= 1; ++carry)
        for (int d = 0; d <= 2; ++d)
            for (int b = 0; b <= 1; ++b) {
                int t = carry + d - b;
                if (t < 0 || (t & 1)) continue;
                int next = t >> 1;
                if (next > 1) continue;
                a.edges[carry].emplace_back(sig.encode({d, b}), next);
            }
    for (auto& row : a.edges) std::sort(row.begin(), row.end());
    return minimize(a);
}

// Graph of addition: accepts (x, y, z) with x + y = z, all binary LSD-first.
inline MultiTrackAutomaton build_add(const std::string& x = "%0", const std::string& y = "%1",
                                     const std::string& z = "%2") {
    TrackSignature sig({{x, 2}, {y, 2}, {z, 2}});
    MultiTrackAutomaton a;
    a.sig = sig;
    a.initial = 0;
    a.accepting = {1, 0};
    a.edges.resize(2);
    for (int carry = 0; carry <= 1; ++carry)
        for (int dx = 0; dx <= 1; ++dx)
            for (int dy = 0; dy <= 1; ++dy) {
                int sum = dx + dy + carry;
                a.edges[carry].emplace_back(sig.encode({dx, dy, sum & 1}), sum >> 1);
            }
    for (auto& row : a.edges) std::sort(row.begin(), row.end());
    return minimize(a);
}

enum class CompareOp { Eq, Ne, Lt, Le, Gt, Ge };

inline bool apply_compare(CompareOp op, int64_t c) {
    switch (op) {
        case CompareOp::Eq: return c == 0;
        case CompareOp::Ne: return c != 0;
        case CompareOp::Lt: return c < 0;
        case CompareOp::Le: return c <= 0;
        case CompareOp::Gt: return c > 0;
        case CompareOp::Ge: return c >= 0;
    }
    return false;
}

// Numeric comparison of two same-base LSD-first tracks. Reading LSD-first,
// the higher digit overrides the verdict so far; states track the current
// verdict (-1, 0, +1).
inline MultiTrackAutomaton build_compare(CompareOp op, int base, const std::string& x = "%0",
                                         const std::string& y = "%1") {
    TrackSignature sig({{x, base}, {y, base}});
    MultiTrackAutomaton a;
    a.sig = sig;
    a.initial = 0;   // states: 0 = equal so far, 1 = less, 2 = greater
    a.accepting = {apply_compare(op, 0), apply_compare(op, -1), apply_compare(op, +1)};
    a.edges.resize(3);
    for (int st = 0; st < 3; ++st)
        for (int dx = 0; dx < base; ++dx)
            for (int dy = 0; dy < base; ++dy) {
                int next = dx < dy ? 1 : dx > dy ? 2 : st;
                a.edges[st].emplace_back(sig.encode({dx, dy}), next);
            }
    for (auto& row : a.edges) std::sort(row.begin(), row.end());
    return minimize(a);
}

inline MultiTrackAutomaton build_eq(const std::string& x = "%0", const std::string& y = "%1") {
    return build_compare(CompareOp::Eq, 2, x, y);
}

inline MultiTrackAutomaton build_lt(const std::string& x = "%0", const std::string& y = "%1") {
    return build_compare(CompareOp::Lt, 2, x, y);
}

// Accepts representations of the fixed value k (binary track).
inline MultiTrackAutomaton build_constant(uint64_t k, const std::string& x = "%0") {
    TrackSignature sig({{x, 2}});
    std::string digits = lsd_digits(k);
    MultiTrackAutomaton a;
    a.sig = sig;
    a.initial = 0;
    int n = static_cast<int>(digits.size());
    a.accepting.assign(n + 1, 0);
    a.accepting[n] = 1;
    a.edges.resize(n + 1);
    for (int i = 0; i < n; ++i) a.edges[i].emplace_back(sig.encode({digits[i] - '0'}), i + 1);
    return pad_closure(a);
}

// Powers of two: the regex 0*10*.
inline MultiTrackAutomaton build_power2(const std::string& x = "%0") {
    return compile_regex("0*10*", TrackSignature({{x, 2}}));
}

}  // namespace ovlf
