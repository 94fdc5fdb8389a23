#pragma once

// Multi-track finite automata over small digit alphabets (bases 2, 3, 6).
// A word is a sequence of digit tuples, one digit per track, encoded into a
// single mixed-radix symbol. Digit 0 is the pad symbol on every track: all
// constructed languages are closed under appending/removing trailing
// all-zero tuples, which keeps quantifier projection sound for LSD-first
// number representations.

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ovlf {

class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Symbol = uint32_t;

struct Track {
    std::string name;
    int base = 2;

    friend bool operator==(const Track& a, const Track& b) {
        return a.name == b.name && a.base == b.base;
    }
};

inline bool valid_base(int b) { return b == 2 || b == 3 || b == 6; }

// Ordered list of named tracks; tuple component order on the tape is the
// order given here. Symbols are mixed-radix encodings, track 0 least
// significant, so the all-zero tuple is always symbol 0.
class TrackSignature {
public:
    TrackSignature() = default;

    explicit TrackSignature(std::vector<Track> tracks) : tracks_(std::move(tracks)) {
        strides_.resize(tracks_.size());
        uint64_t alpha = 1;
        for (size_t i = 0; i < tracks_.size(); ++i) {
            const Track& t = tracks_[i];
            if (!valid_base(t.base))
                throw error("unsupported track base " + std::to_string(t.base) +
                            " for track '" + t.name + "'");
            for (size_t j = 0; j < i; ++j)
                if (tracks_[j].name == t.name)
                    throw error("duplicate track name '" + t.name + "'");
            strides_[i] = static_cast<Symbol>(alpha);
            alpha *= static_cast<uint64_t>(t.base);
            if (alpha > (1u << 30))
                throw error("tuple alphabet too large");
        }
        alphabet_ = static_cast<Symbol>(alpha);
    }

    size_t track_count() const { return tracks_.size(); }
    const Track& track(size_t i) const { return tracks_[i]; }
    const std::vector<Track>& tracks() const { return tracks_; }
    Symbol alphabet_size() const { return alphabet_; }

    int index_of(std::string_view name) const {
        for (size_t i = 0; i < tracks_.size(); ++i)
            if (tracks_[i].name == name) return static_cast<int>(i);
        return -1;
    }

    Symbol encode(const std::vector<int>& digits) const {
        if (digits.size() != tracks_.size()) throw error("digit tuple arity mismatch");
        Symbol s = 0;
        for (size_t i = 0; i < digits.size(); ++i) {
            if (digits[i] < 0 || digits[i] >= tracks_[i].base)
                throw error("digit " + std::to_string(digits[i]) + " out of bound for track '" +
                            tracks_[i].name + "' (base " + std::to_string(tracks_[i].base) + ")");
            s += static_cast<Symbol>(digits[i]) * strides_[i];
        }
        return s;
    }

    std::vector<int> decode(Symbol s) const {
        std::vector<int> digits(tracks_.size());
        for (size_t i = 0; i < tracks_.size(); ++i) {
            digits[i] = static_cast<int>(s % static_cast<Symbol>(tracks_[i].base));
            s /= static_cast<Symbol>(tracks_[i].base);
        }
        return digits;
    }

    int digit_of(Symbol s, size_t track) const {
        return static_cast<int>((s / strides_[track]) % static_cast<Symbol>(tracks_[track].base));
    }

    friend bool operator==(const TrackSignature& a, const TrackSignature& b) {
        return a.tracks_ == b.tracks_;
    }

private:
    std::vector<Track> tracks_;
    std::vector<Symbol> strides_;
    Symbol alphabet_ = 1;
};

using Word = std::vector<Symbol>;

// Builds a tuple word from one digit string per track ('0'..'5', leftmost
// character read first). Shorter tracks are padded with 0s on the right.
inline Word make_word(const TrackSignature& sig, const std::vector<std::string>& per_track) {
    if (per_track.size() != sig.track_count()) throw error("make_word: track count mismatch");
    size_t len = 0;
    for (const auto& s : per_track) len = std::max(len, s.size());
    Word w(len);
    std::vector<int> digits(sig.track_count());
    for (size_t pos = 0; pos < len; ++pos) {
        for (size_t t = 0; t < per_track.size(); ++t) {
            char c = pos < per_track[t].size() ? per_track[t][pos] : '0';
            if (c < '0' || c > '9') throw error("make_word: bad digit character");
            digits[t] = c - '0';
        }
        w[pos] = sig.encode(digits);
    }
    return w;
}

inline Word make_word(const TrackSignature& sig, const std::string& single) {
    return make_word(sig, std::vector<std::string>{single});
}

// Finite automaton over tuple symbols. Deterministic automata keep at most
// one edge per (state, symbol); rows are sorted by symbol and a missing
// entry means reject. Nondeterministic automata (from projection or regex
// translation) may carry several targets per symbol.
struct MultiTrackAutomaton {
    TrackSignature sig;
    int initial = 0;
    std::vector<char> accepting;                               // per state
    std::vector<std::vector<std::pair<Symbol, int>>> edges;    // per state, sorted by symbol
    bool deterministic = true;

    int state_count() const { return static_cast<int>(edges.size()); }

    int step(int state, Symbol sym) const {
        const auto& row = edges[state];
        auto it = std::lower_bound(row.begin(), row.end(), sym,
                                   [](const auto& e, Symbol s) { return e.first < s; });
        if (it != row.end() && it->first == sym) return it->second;
        return -1;
    }
};

inline MultiTrackAutomaton empty_automaton(const TrackSignature& sig) {
    MultiTrackAutomaton a;
    a.sig = sig;
    a.initial = 0;
    a.accepting = {0};
    a.edges.resize(1);
    a.deterministic = true;
    return a;
}

inline MultiTrackAutomaton epsilon_automaton(const TrackSignature& sig) {
    MultiTrackAutomaton a = empty_automaton(sig);
    a.accepting[0] = 1;
    return a;
}

// Membership for deterministic or nondeterministic automata.
inline bool accepts(const MultiTrackAutomaton& a, const Word& w) {
    for (Symbol s : w)
        if (s >= a.sig.alphabet_size()) throw error("accepts: symbol out of alphabet");
    if (a.deterministic) {
        int st = a.initial;
        for (Symbol s : w) {
            st = a.step(st, s);
            if (st < 0) return false;
        }
        return a.accepting[st] != 0;
    }
    std::vector<int> cur{a.initial};
    for (Symbol s : w) {
        std::vector<int> next;
        for (int st : cur) {
            const auto& row = a.edges[st];
            auto it = std::lower_bound(row.begin(), row.end(), s,
                                       [](const auto& e, Symbol sy) { return e.first < sy; });
            for (; it != row.end() && it->first == s; ++it) next.push_back(it->second);
        }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        cur = std::move(next);
        if (cur.empty()) return false;
    }
    for (int st : cur)
        if (a.accepting[st]) return true;
    return false;
}

inline bool accepts_tracks(const MultiTrackAutomaton& a, const std::vector<std::string>& per_track) {
    return accepts(a, make_word(a.sig, per_track));
}

// Deterministic automaton with an output value per state; transitions are
// total. Houses the paper-style lookup tables (CODE, LOOK, T).
struct OutputAutomaton {
    TrackSignature sig;
    int initial = 0;
    std::vector<std::vector<int>> next;    // dense rows of size alphabet
    std::vector<int> output;

    int state_count() const { return static_cast<int>(next.size()); }

    int run(const Word& w) const {
        int st = initial;
        for (Symbol s : w) {
            if (s >= sig.alphabet_size()) throw error("run: symbol out of alphabet");
            st = next[st][s];
        }
        return output[st];
    }

    int run(const std::vector<std::string>& per_track) const {
        return run(make_word(sig, per_track));
    }
};

}  // namespace ovlf
