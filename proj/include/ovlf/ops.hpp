#pragma once

// Closure operations on multi-track automata: subset construction, trimming,
// Moore minimization, pad-closure, boolean products over unified signatures,
// track projection, and output-automaton (DFAO) construction. Every public
// operation returns a canonical automaton: deterministic, trimmed to live
// states, minimal, states numbered breadth-first with edge labels visited in
// ascending symbol order. Canonical automata with equal languages are
// structurally identical.

#include <cstdint>
#include <deque>
#include <functional>
#include <numeric>
#include <unordered_map>

#include "ovlf/automaton.hpp"

namespace ovlf {

namespace detail {

struct VecHash {
    size_t operator()(const std::vector<int>& v) const {
        size_t h = 0x9e3779b97f4a7c15ull;
        for (int x : v) h = (h ^ static_cast<size_t>(x)) * 0x100000001b3ull;
        return h;
    }
};

struct PairHash {
    size_t operator()(const std::pair<int64_t, int64_t>& p) const {
        return std::hash<int64_t>()(p.first * 1000003 + p.second);
    }
};

}  // namespace detail

// Reachable subset construction. Input may be nondeterministic; the result
// is a deterministic partial automaton (missing edge = reject).
inline MultiTrackAutomaton determinize(const MultiTrackAutomaton& a) {
    MultiTrackAutomaton out;
    out.sig = a.sig;
    out.deterministic = true;

    std::unordered_map<std::vector<int>, int, detail::VecHash> ids;
    std::vector<std::vector<int>> subsets;
    auto intern = [&](std::vector<int> sub) {
        auto it = ids.find(sub);
        if (it != ids.end()) return it->second;
        int id = static_cast<int>(subsets.size());
        ids.emplace(sub, id);
        subsets.push_back(std::move(sub));
        out.accepting.push_back(0);
        out.edges.emplace_back();
        for (int s : subsets.back())
            if (a.accepting[s]) { out.accepting[id] = 1; break; }
        return id;
    };

    out.initial = intern({a.initial});
    std::map<Symbol, std::vector<int>> succ;
    for (int id = 0; id < static_cast<int>(subsets.size()); ++id) {
        succ.clear();
        for (int s : subsets[id])
            for (const auto& [sym, dst] : a.edges[s]) succ[sym].push_back(dst);
        for (auto& [sym, dsts] : succ) {
            std::sort(dsts.begin(), dsts.end());
            dsts.erase(std::unique(dsts.begin(), dsts.end()), dsts.end());
            int dst = intern(dsts);
            out.edges[id].emplace_back(sym, dst);
        }
    }
    return out;
}

// Restrict to live states (reachable and co-reachable). Empty language
// collapses to the one-state automaton with no accepting state.
inline MultiTrackAutomaton trim(const MultiTrackAutomaton& a) {
    int n = a.state_count();
    std::vector<char> reach(n, 0);
    std::deque<int> queue{a.initial};
    reach[a.initial] = 1;
    while (!queue.empty()) {
        int s = queue.front();
        queue.pop_front();
        for (const auto& [sym, dst] : a.edges[s])
            if (!reach[dst]) { reach[dst] = 1; queue.push_back(dst); }
    }

    std::vector<std::vector<int>> rev(n);
    for (int s = 0; s < n; ++s)
        for (const auto& [sym, dst] : a.edges[s]) rev[dst].push_back(s);
    std::vector<char> coreach(n, 0);
    for (int s = 0; s < n; ++s)
        if (a.accepting[s] && reach[s]) { coreach[s] = 1; queue.push_back(s); }
    while (!queue.empty()) {
        int s = queue.front();
        queue.pop_front();
        for (int p : rev[s])
            if (reach[p] && !coreach[p]) { coreach[p] = 1; queue.push_back(p); }
    }

    if (!coreach[a.initial]) return empty_automaton(a.sig);

    std::vector<int> remap(n, -1);
    int m = 0;
    for (int s = 0; s < n; ++s)
        if (reach[s] && coreach[s]) remap[s] = m++;

    MultiTrackAutomaton out;
    out.sig = a.sig;
    out.deterministic = a.deterministic;
    out.initial = remap[a.initial];
    out.accepting.assign(m, 0);
    out.edges.resize(m);
    for (int s = 0; s < n; ++s) {
        if (remap[s] < 0) continue;
        out.accepting[remap[s]] = a.accepting[s];
        for (const auto& [sym, dst] : a.edges[s])
            if (remap[dst] >= 0) out.edges[remap[s]].emplace_back(sym, remap[dst]);
        std::sort(out.edges[remap[s]].begin(), out.edges[remap[s]].end());
    }
    return out;
}

namespace detail {

// BFS renumbering; assumes all states reachable and edges sorted.
inline MultiTrackAutomaton bfs_renumber(const MultiTrackAutomaton& a) {
    int n = a.state_count();
    std::vector<int> order(n, -1);
    std::deque<int> queue{a.initial};
    order[a.initial] = 0;
    int next = 1;
    while (!queue.empty()) {
        int s = queue.front();
        queue.pop_front();
        for (const auto& [sym, dst] : a.edges[s])
            if (order[dst] < 0) { order[dst] = next++; queue.push_back(dst); }
    }
    MultiTrackAutomaton out;
    out.sig = a.sig;
    out.deterministic = a.deterministic;
    out.initial = 0;
    out.accepting.assign(next, 0);
    out.edges.resize(next);
    for (int s = 0; s < n; ++s) {
        if (order[s] < 0) continue;
        out.accepting[order[s]] = a.accepting[s];
        auto& row = out.edges[order[s]];
        for (const auto& [sym, dst] : a.edges[s]) row.emplace_back(sym, order[dst]);
        std::sort(row.begin(), row.end());
    }
    return out;
}

}  // namespace detail

// Moore partition refinement on a trimmed partial DFA (all missing edges are
// equivalent rejects once dead states are gone).
inline MultiTrackAutomaton minimize(const MultiTrackAutomaton& a0) {
    if (!a0.deterministic) throw error("minimize requires a deterministic automaton");
    MultiTrackAutomaton a = trim(a0);
    int n = a.state_count();
    if (n <= 1) return detail::bfs_renumber(a);

    std::vector<int> block(n);
    for (int s = 0; s < n; ++s) block[s] = a.accepting[s] ? 1 : 0;
    int blocks = 2;

    std::vector<int> sigkey(n);
    for (;;) {
        std::unordered_map<std::vector<int>, int, detail::VecHash> table;
        table.reserve(n * 2);
        std::vector<int> key;
        int next_blocks = 0;
        for (int s = 0; s < n; ++s) {
            key.clear();
            key.push_back(block[s]);
            for (const auto& [sym, dst] : a.edges[s]) {
                key.push_back(static_cast<int>(sym));
                key.push_back(block[dst]);
            }
            auto [it, inserted] = table.emplace(key, next_blocks);
            if (inserted) ++next_blocks;
            sigkey[s] = it->second;
        }
        if (next_blocks == blocks) break;
        blocks = next_blocks;
        std::swap(block, sigkey);
    }

    MultiTrackAutomaton q;
    q.sig = a.sig;
    q.deterministic = true;
    q.initial = block[a.initial];
    q.accepting.assign(blocks, 0);
    q.edges.resize(blocks);
    std::vector<char> done(blocks, 0);
    for (int s = 0; s < n; ++s) {
        int b = block[s];
        if (done[b]) continue;
        done[b] = 1;
        q.accepting[b] = a.accepting[s];
        for (const auto& [sym, dst] : a.edges[s]) q.edges[b].emplace_back(sym, block[dst]);
        std::sort(q.edges[b].begin(), q.edges[b].end());
    }
    return detail::bfs_renumber(q);
}

// Pad-closure as a language operation: the result accepts w iff some word
// differing from w only in trailing all-zero tuples is accepted. Computed as
// (right quotient by 0*) followed by concatenation with 0*; the returned
// automaton is nondeterministic.
inline MultiTrackAutomaton pad_close_nfa(const MultiTrackAutomaton& a0) {
    MultiTrackAutomaton a = a0;
    int n = a.state_count();

    // quotient: accept any state with a zero-tuple path into an accepting state
    std::vector<std::vector<int>> zero_rev(n);
    for (int s = 0; s < n; ++s)
        for (const auto& [sym, dst] : a.edges[s])
            if (sym == 0) zero_rev[dst].push_back(s);
    std::deque<int> queue;
    for (int s = 0; s < n; ++s)
        if (a.accepting[s]) queue.push_back(s);
    while (!queue.empty()) {
        int s = queue.front();
        queue.pop_front();
        for (int p : zero_rev[s])
            if (!a.accepting[p]) { a.accepting[p] = 1; queue.push_back(p); }
    }

    // append 0*: a fresh accepting state absorbing pads after any accept
    int pad = n;
    a.accepting.push_back(1);
    a.edges.emplace_back();
    a.edges[pad].emplace_back(0, pad);
    for (int s = 0; s < n; ++s)
        if (a.accepting[s]) {
            a.edges[s].emplace_back(0, pad);
            std::sort(a.edges[s].begin(), a.edges[s].end());
        }
    a.deterministic = false;
    return a;
}

// Full canonicalization pipeline; safe on deterministic or nondeterministic
// input. Does not alter the language.
inline MultiTrackAutomaton canonicalize(const MultiTrackAutomaton& a) {
    return minimize(determinize(a));
}

// Canonicalization with pad-closure applied first (identity on languages
// that are already pad-closed).
inline MultiTrackAutomaton pad_closure(const MultiTrackAutomaton& a) {
    return canonicalize(pad_close_nfa(a));
}

inline bool is_empty(const MultiTrackAutomaton& a) {
    std::vector<char> seen(a.state_count(), 0);
    std::deque<int> queue{a.initial};
    seen[a.initial] = 1;
    while (!queue.empty()) {
        int s = queue.front();
        queue.pop_front();
        if (a.accepting[s]) return false;
        for (const auto& [sym, dst] : a.edges[s])
            if (!seen[dst]) { seen[dst] = 1; queue.push_back(dst); }
    }
    return true;
}

// Number of live states; the canonical size measure used when comparing
// against published figures.
inline int live_state_count(const MultiTrackAutomaton& a0) {
    MultiTrackAutomaton a = canonicalize(a0);
    if (is_empty(a)) return 0;
    return a.state_count();
}

inline MultiTrackAutomaton complement(const MultiTrackAutomaton& a0) {
    MultiTrackAutomaton a = a0.deterministic ? a0 : determinize(a0);
    Symbol alpha = a.sig.alphabet_size();
    int n = a.state_count();
    int sink = n;
    a.accepting.push_back(0);
    a.edges.emplace_back();
    for (int s = 0; s <= n; ++s) {
        std::vector<std::pair<Symbol, int>> row;
        row.reserve(alpha);
        auto it = a.edges[s].begin();
        for (Symbol sym = 0; sym < alpha; ++sym) {
            if (it != a.edges[s].end() && it->first == sym) {
                row.emplace_back(sym, it->second);
                ++it;
            } else {
                row.emplace_back(sym, sink);
            }
        }
        a.edges[s] = std::move(row);
    }
    for (auto& f : a.accepting) f = f ? 0 : 1;
    return minimize(a);
}

enum class BoolOp { And, Or, Implies, Xor, Iff };

inline bool apply_bool(BoolOp op, bool x, bool y) {
    switch (op) {
        case BoolOp::And: return x && y;
        case BoolOp::Or: return x || y;
        case BoolOp::Implies: return !x || y;
        case BoolOp::Xor: return x != y;
        case BoolOp::Iff: return x == y;
    }
    return false;
}

// Union of two signatures, sorted by track name. Shared names must agree on
// the base; there is no coercion between digit bounds.
inline TrackSignature unify_signatures(const TrackSignature& a, const TrackSignature& b) {
    std::vector<Track> tracks = a.tracks();
    for (const auto& t : b.tracks()) {
        int i = a.index_of(t.name);
        if (i >= 0) {
            if (a.track(i).base != t.base)
                throw error("track '" + t.name + "' has conflicting bases " +
                            std::to_string(a.track(i).base) + " and " + std::to_string(t.base));
        } else {
            tracks.push_back(t);
        }
    }
    std::sort(tracks.begin(), tracks.end(),
              [](const Track& x, const Track& y) { return x.name < y.name; });
    return TrackSignature(tracks);
}

namespace detail {

// unified symbol -> component symbol, for a component whose tracks are a
// subset of the unified signature
inline std::vector<Symbol> symbol_map(const TrackSignature& uni, const TrackSignature& part) {
    std::vector<int> where(part.track_count());
    for (size_t i = 0; i < part.track_count(); ++i) {
        int idx = uni.index_of(part.track(i).name);
        if (idx < 0) throw error("symbol_map: missing track");
        where[i] = idx;
    }
    std::vector<Symbol> map(uni.alphabet_size());
    std::vector<int> digits(part.track_count());
    for (Symbol s = 0; s < uni.alphabet_size(); ++s) {
        for (size_t i = 0; i < part.track_count(); ++i)
            digits[i] = uni.digit_of(s, static_cast<size_t>(where[i]));
        map[s] = part.encode(digits);
    }
    return map;
}

// Dense transition table when affordable, binary search otherwise.
class DfaView {
public:
    explicit DfaView(const MultiTrackAutomaton& a) : a_(a) {
        uint64_t cells = static_cast<uint64_t>(a.state_count()) * a.sig.alphabet_size();
        if (cells > 0 && cells <= (1u << 24)) {
            dense_.assign(cells, -1);
            for (int s = 0; s < a.state_count(); ++s)
                for (const auto& [sym, dst] : a.edges[s])
                    dense_[static_cast<uint64_t>(s) * a.sig.alphabet_size() + sym] = dst;
        }
    }
    int step(int s, Symbol sym) const {
        if (!dense_.empty())
            return dense_[static_cast<uint64_t>(s) * a_.sig.alphabet_size() + sym];
        return a_.step(s, sym);
    }

private:
    const MultiTrackAutomaton& a_;
    std::vector<int> dense_;
};

}  // namespace detail

// Boolean product over the unified signature. Missing transitions behave as
// an implicit rejecting sink, so complements arising from Implies/Xor/Iff
// are handled without materializing completions in the operands.
inline MultiTrackAutomaton boolean_combine(BoolOp op, const MultiTrackAutomaton& x0,
                                           const MultiTrackAutomaton& y0) {
    MultiTrackAutomaton x = x0.deterministic ? x0 : determinize(x0);
    MultiTrackAutomaton y = y0.deterministic ? y0 : determinize(y0);
    TrackSignature sig = unify_signatures(x.sig, y.sig);
    std::vector<Symbol> mx = detail::symbol_map(sig, x.sig);
    std::vector<Symbol> my = detail::symbol_map(sig, y.sig);
    detail::DfaView vx(x), vy(y);

    const bool both_dead_accepts = apply_bool(op, false, false);

    MultiTrackAutomaton out;
    out.sig = sig;
    out.deterministic = true;

    std::unordered_map<std::pair<int64_t, int64_t>, int, detail::PairHash> ids;
    std::vector<std::pair<int, int>> pairs;
    auto intern = [&](int sx, int sy) {
        auto key = std::make_pair<int64_t, int64_t>(sx, sy);
        auto it = ids.find(key);
        if (it != ids.end()) return it->second;
        int id = static_cast<int>(pairs.size());
        ids.emplace(key, id);
        pairs.emplace_back(sx, sy);
        bool ax = sx >= 0 && x.accepting[sx];
        bool ay = sy >= 0 && y.accepting[sy];
        out.accepting.push_back(apply_bool(op, ax, ay) ? 1 : 0);
        out.edges.emplace_back();
        return id;
    };

    intern(x.initial, y.initial);
    Symbol alpha = sig.alphabet_size();
    for (int id = 0; id < static_cast<int>(pairs.size()); ++id) {
        auto [sx, sy] = pairs[id];
        if (sx < 0 && sy < 0) {
            // both sides stuck; language from here is everything or nothing
            out.edges[id].reserve(alpha);
            for (Symbol s = 0; s < alpha; ++s) out.edges[id].emplace_back(s, id);
            continue;
        }
        for (Symbol s = 0; s < alpha; ++s) {
            int nx = sx < 0 ? -1 : vx.step(sx, mx[s]);
            int ny = sy < 0 ? -1 : vy.step(sy, my[s]);
            if (op == BoolOp::And) {
                if (nx < 0 || ny < 0) continue;
            } else if (nx < 0 && ny < 0 && !both_dead_accepts) {
                continue;
            }
            out.edges[id].emplace_back(s, intern(nx, ny));
        }
    }
    return minimize(out);
}

// Existential projection: drop one track and close under padding, so a word
// is accepted when some assignment of the projected track on some padding
// extension of the joint word is accepted.
inline MultiTrackAutomaton project(const MultiTrackAutomaton& a, std::string_view track) {
    int idx = a.sig.index_of(track);
    if (idx < 0) throw error("project: unknown track '" + std::string(track) + "'");
    std::vector<Track> tracks = a.sig.tracks();
    tracks.erase(tracks.begin() + idx);
    TrackSignature sig(tracks);

    std::vector<Symbol> remap(a.sig.alphabet_size());
    for (Symbol s = 0; s < a.sig.alphabet_size(); ++s) {
        std::vector<int> digits = a.sig.decode(s);
        digits.erase(digits.begin() + idx);
        remap[s] = sig.encode(digits);
    }

    MultiTrackAutomaton nfa;
    nfa.sig = sig;
    nfa.initial = a.initial;
    nfa.accepting = a.accepting;
    nfa.deterministic = false;
    nfa.edges.resize(a.state_count());
    for (int s = 0; s < a.state_count(); ++s) {
        auto& row = nfa.edges[s];
        for (const auto& [sym, dst] : a.edges[s]) row.emplace_back(remap[sym], dst);
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
    }
    return canonicalize(pad_close_nfa(nfa));
}

// Rename tracks wholesale; `names` maps old name -> new name (identity when
// absent). Renaming two tracks onto one name is rejected here.
inline MultiTrackAutomaton rename_tracks(const MultiTrackAutomaton& a,
                                         const std::map<std::string, std::string>& names) {
    std::vector<Track> tracks = a.sig.tracks();
    for (auto& t : tracks) {
        auto it = names.find(t.name);
        if (it != names.end()) t.name = it->second;
    }
    TrackSignature sig(tracks);   // rejects duplicates

    // same component order, so symbols carry over unchanged
    MultiTrackAutomaton out = a;
    out.sig = sig;
    return out;
}

inline bool language_equal(const MultiTrackAutomaton& a, const MultiTrackAutomaton& b) {
    return is_empty(boolean_combine(BoolOp::Xor, a, b));
}

inline bool language_subset(const MultiTrackAutomaton& a, const MultiTrackAutomaton& b) {
    return is_empty(boolean_combine(BoolOp::And, a, complement(b)));
}

inline MultiTrackAutomaton from_state(const MultiTrackAutomaton& a, int state) {
    MultiTrackAutomaton out = a;
    out.initial = state;
    return out;
}

// Accepted words in shortlex order, restricted to pad-free representatives
// (no trailing all-zero tuple).
inline std::vector<Word> enumerate_accepted(const MultiTrackAutomaton& a0, size_t max_len) {
    MultiTrackAutomaton a = a0.deterministic ? trim(a0) : canonicalize(a0);
    std::vector<Word> result;
    if (a.accepting[a.initial]) result.push_back({});
    std::vector<std::pair<int, Word>> layer{{a.initial, {}}};
    for (size_t len = 1; len <= max_len && !layer.empty(); ++len) {
        std::vector<std::pair<int, Word>> next;
        for (const auto& [s, w] : layer) {
            for (const auto& [sym, dst] : a.edges[s]) {
                Word w2 = w;
                w2.push_back(sym);
                if (a.accepting[dst] && sym != 0) result.push_back(w2);
                next.emplace_back(dst, std::move(w2));
            }
        }
        layer = std::move(next);
    }
    return result;
}

// ---------------------------------------------------------------------------
// Output automata (DFAOs)

// Moore minimization of a complete DFAO, initial partition by output value;
// BFS renumbering as for acceptors.
inline OutputAutomaton canonicalize(const OutputAutomaton& a) {
    int n = a.state_count();
    Symbol alpha = a.sig.alphabet_size();

    // drop unreachable states first
    std::vector<int> reach(n, -1);
    std::deque<int> queue{a.initial};
    reach[a.initial] = 0;
    std::vector<int> order{a.initial};
    while (!queue.empty()) {
        int s = queue.front();
        queue.pop_front();
        for (Symbol sym = 0; sym < alpha; ++sym) {
            int d = a.next[s][sym];
            if (reach[d] < 0) {
                reach[d] = static_cast<int>(order.size());
                order.push_back(d);
                queue.push_back(d);
            }
        }
    }

    int m = static_cast<int>(order.size());
    std::vector<int> block(m);
    std::map<int, int> outblock;
    for (int i = 0; i < m; ++i) {
        int o = a.output[order[i]];
        auto [it, inserted] = outblock.emplace(o, static_cast<int>(outblock.size()));
        block[i] = it->second;
    }
    int blocks = static_cast<int>(outblock.size());

    std::vector<int> sigkey(m);
    for (;;) {
        std::unordered_map<std::vector<int>, int, detail::VecHash> table;
        std::vector<int> key;
        int next_blocks = 0;
        for (int i = 0; i < m; ++i) {
            key.clear();
            key.push_back(block[i]);
            for (Symbol sym = 0; sym < alpha; ++sym)
                key.push_back(block[reach[a.next[order[i]][sym]]]);
            auto [it, inserted] = table.emplace(key, next_blocks);
            if (inserted) ++next_blocks;
            sigkey[i] = it->second;
        }
        if (next_blocks == blocks) break;
        blocks = next_blocks;
        std::swap(block, sigkey);
    }

    // quotient, then BFS renumber
    std::vector<int> rep(blocks, -1);
    for (int i = 0; i < m; ++i)
        if (rep[block[i]] < 0) rep[block[i]] = i;

    std::vector<int> bfs(blocks, -1);
    std::vector<int> seq;
    bfs[block[reach[a.initial]]] = 0;
    seq.push_back(block[reach[a.initial]]);
    for (size_t k = 0; k < seq.size(); ++k) {
        int b = seq[k];
        int s = order[rep[b]];
        for (Symbol sym = 0; sym < alpha; ++sym) {
            int db = block[reach[a.next[s][sym]]];
            if (bfs[db] < 0) {
                bfs[db] = static_cast<int>(seq.size());
                seq.push_back(db);
            }
        }
    }

    OutputAutomaton out;
    out.sig = a.sig;
    out.initial = 0;
    out.next.assign(blocks, std::vector<int>(alpha));
    out.output.assign(blocks, 0);
    for (int b = 0; b < blocks; ++b) {
        int s = order[rep[b]];
        out.output[bfs[b]] = a.output[s];
        for (Symbol sym = 0; sym < alpha; ++sym)
            out.next[bfs[b]][sym] = bfs[block[reach[a.next[s][sym]]]];
    }
    return out;
}

// Product of acceptors with an output value per part; on input w the output
// is the value of the first part accepting w, else the default. The result
// is total and deterministic.
inline OutputAutomaton combine_outputs(
    const std::vector<std::pair<MultiTrackAutomaton, int>>& parts, int default_value = 0) {
    if (parts.empty()) throw error("combine_outputs: no parts");
    TrackSignature sig = parts[0].first.sig;
    for (size_t i = 1; i < parts.size(); ++i) sig = unify_signatures(sig, parts[i].first.sig);

    std::vector<MultiTrackAutomaton> dfas;
    std::vector<std::vector<Symbol>> maps;
    for (const auto& [aut, val] : parts) {
        dfas.push_back(aut.deterministic ? aut : determinize(aut));
        maps.push_back(detail::symbol_map(sig, dfas.back().sig));
    }

    OutputAutomaton out;
    out.sig = sig;
    Symbol alpha = sig.alphabet_size();

    std::unordered_map<std::vector<int>, int, detail::VecHash> ids;
    std::vector<std::vector<int>> tuples;
    auto intern = [&](std::vector<int> tup) {
        auto it = ids.find(tup);
        if (it != ids.end()) return it->second;
        int id = static_cast<int>(tuples.size());
        ids.emplace(tup, id);
        int val = default_value;
        for (size_t i = 0; i < parts.size(); ++i)
            if (tup[i] >= 0 && dfas[i].accepting[tup[i]]) { val = parts[i].second; break; }
        tuples.push_back(std::move(tup));
        out.output.push_back(val);
        out.next.emplace_back(alpha, -1);
        return id;
    };

    std::vector<int> init(parts.size());
    for (size_t i = 0; i < parts.size(); ++i) init[i] = dfas[i].initial;
    out.initial = intern(init);
    for (int id = 0; id < static_cast<int>(tuples.size()); ++id) {
        for (Symbol s = 0; s < alpha; ++s) {
            std::vector<int> tup(parts.size());
            for (size_t i = 0; i < parts.size(); ++i) {
                int cur = tuples[id][i];
                tup[i] = cur < 0 ? -1 : dfas[i].step(cur, maps[i][s]);
            }
            out.next[id][s] = intern(std::move(tup));
        }
    }
    return canonicalize(out);
}

// Acceptor slice of a DFAO: the words whose output equals `value`.
inline MultiTrackAutomaton slice_output(const OutputAutomaton& a, int value) {
    MultiTrackAutomaton out;
    out.sig = a.sig;
    out.initial = a.initial;
    out.deterministic = true;
    out.accepting.resize(a.state_count());
    out.edges.resize(a.state_count());
    for (int s = 0; s < a.state_count(); ++s) {
        out.accepting[s] = a.output[s] == value ? 1 : 0;
        for (Symbol sym = 0; sym < a.sig.alphabet_size(); ++sym)
            out.edges[s].emplace_back(sym, a.next[s][sym]);
    }
    return minimize(out);
}

inline std::vector<int> output_values(const OutputAutomaton& a) {
    std::vector<int> vals(a.output.begin(), a.output.end());
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    return vals;
}

}  // namespace ovlf
