#pragma once

// Regular expressions over tuple literals, compiled to canonical pad-closed
// automata. Single digits stand for 1-track literals; a bracketed list
// [d1,d2,...] pairs one digit per track. Union `|`, concatenation by
// juxtaposition, Kleene star `*`, grouping with parentheses. Whitespace is
// insignificant, so patterns may span lines.

#include <memory>

#include "ovlf/automaton.hpp"
#include "ovlf/ops.hpp"

namespace ovlf {

struct RegexNode;
using RegexPattern = std::shared_ptr<const RegexNode>;

struct RegexNode {
    enum Kind { Literal, Epsilon, Union, Concat, Star } kind;
    Symbol symbol = 0;           // Literal
    RegexPattern left, right;    // Union/Concat; Star uses left
};

namespace detail {

inline RegexPattern rx_node(RegexNode n) { return std::make_shared<const RegexNode>(std::move(n)); }

class RegexParser {
public:
    RegexParser(std::string_view text, const TrackSignature& sig) : text_(text), sig_(sig) {}

    RegexPattern parse() {
        skip_ws();
        if (eof()) return rx_node({RegexNode::Epsilon});
        RegexPattern p = parse_union();
        skip_ws();
        if (!eof()) fail("unexpected character");
        return p;
    }

private:
    RegexPattern parse_union() {
        RegexPattern p = parse_concat();
        skip_ws();
        while (!eof() && peek() == '|') {
            ++pos_;
            RegexPattern q = parse_concat();
            p = rx_node({RegexNode::Union, 0, p, q});
            skip_ws();
        }
        return p;
    }

    RegexPattern parse_concat() {
        RegexPattern p;
        for (;;) {
            skip_ws();
            if (eof() || peek() == '|' || peek() == ')') break;
            RegexPattern q = parse_postfix();
            p = p ? rx_node({RegexNode::Concat, 0, p, q}) : q;
        }
        return p ? p : rx_node({RegexNode::Epsilon});
    }

    RegexPattern parse_postfix() {
        RegexPattern p = parse_atom();
        skip_ws();
        while (!eof() && peek() == '*') {
            ++pos_;
            p = rx_node({RegexNode::Star, 0, p, nullptr});
            skip_ws();
        }
        return p;
    }

    RegexPattern parse_atom() {
        skip_ws();
        if (eof()) fail("unexpected end of pattern");
        char c = peek();
        if (c == '(') {
            ++pos_;
            RegexPattern p = parse_union();
            skip_ws();
            if (eof() || peek() != ')') fail("missing ')'");
            ++pos_;
            return p;
        }
        if (c == '[') {
            ++pos_;
            std::vector<int> digits;
            for (;;) {
                skip_ws();
                digits.push_back(read_digit());
                skip_ws();
                if (eof()) fail("missing ']'");
                if (peek() == ',') { ++pos_; continue; }
                if (peek() == ']') { ++pos_; break; }
                fail("expected ',' or ']' in tuple literal");
            }
            if (digits.size() != sig_.track_count())
                fail("tuple literal arity " + std::to_string(digits.size()) + " does not match " +
                     std::to_string(sig_.track_count()) + " tracks");
            return rx_node({RegexNode::Literal, encode(digits)});
        }
        if (c >= '0' && c <= '9') {
            if (sig_.track_count() != 1)
                fail("bare digit literal requires a 1-track signature");
            return rx_node({RegexNode::Literal, encode({read_digit()})});
        }
        fail(std::string("unexpected character '") + c + "'");
        return nullptr;
    }

    Symbol encode(const std::vector<int>& digits) {
        for (size_t i = 0; i < digits.size(); ++i)
            if (digits[i] >= sig_.track(i).base)
                fail("literal digit " + std::to_string(digits[i]) + " out of bound for track '" +
                     sig_.track(i).name + "' (base " + std::to_string(sig_.track(i).base) + ")");
        return sig_.encode(digits);
    }

    int read_digit() {
        if (eof() || peek() < '0' || peek() > '9') fail("expected digit");
        return text_[pos_++] - '0';
    }

    void skip_ws() {
        while (!eof() && (peek() == ' ' || peek() == '\n' || peek() == '\t' || peek() == '\r'))
            ++pos_;
    }
    bool eof() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }
    [[noreturn]] void fail(const std::string& msg) const {
        throw error("regex: " + msg + " at offset " + std::to_string(pos_));
    }

    std::string_view text_;
    const TrackSignature& sig_;
    size_t pos_ = 0;
};

}  // namespace detail

inline RegexPattern parse_regex(std::string_view pattern, const TrackSignature& sig) {
    return detail::RegexParser(pattern, sig).parse();
}

namespace detail {

// Thompson construction with epsilon edges, local to regex compilation.
struct EpsNfa {
    std::vector<std::vector<std::pair<Symbol, int>>> edges;
    std::vector<std::vector<int>> eps;
    int add_state() {
        edges.emplace_back();
        eps.emplace_back();
        return static_cast<int>(edges.size()) - 1;
    }
};

inline std::pair<int, int> build_thompson(EpsNfa& nfa, const RegexPattern& p) {
    switch (p->kind) {
        case RegexNode::Literal: {
            int a = nfa.add_state(), b = nfa.add_state();
            nfa.edges[a].emplace_back(p->symbol, b);
            return {a, b};
        }
        case RegexNode::Epsilon: {
            int a = nfa.add_state(), b = nfa.add_state();
            nfa.eps[a].push_back(b);
            return {a, b};
        }
        case RegexNode::Union: {
            auto [la, lb] = build_thompson(nfa, p->left);
            auto [ra, rb] = build_thompson(nfa, p->right);
            int a = nfa.add_state(), b = nfa.add_state();
            nfa.eps[a].push_back(la);
            nfa.eps[a].push_back(ra);
            nfa.eps[lb].push_back(b);
            nfa.eps[rb].push_back(b);
            return {a, b};
        }
        case RegexNode::Concat: {
            auto [la, lb] = build_thompson(nfa, p->left);
            auto [ra, rb] = build_thompson(nfa, p->right);
            nfa.eps[lb].push_back(ra);
            return {la, rb};
        }
        case RegexNode::Star: {
            auto [la, lb] = build_thompson(nfa, p->left);
            int a = nfa.add_state(), b = nfa.add_state();
            nfa.eps[a].push_back(la);
            nfa.eps[a].push_back(b);
            nfa.eps[lb].push_back(la);
            nfa.eps[lb].push_back(b);
            return {a, b};
        }
    }
    throw error("regex: corrupt pattern node");
}

}  // namespace detail

// Compile to the canonical automaton for the pad-closure of the regex
// language.
inline MultiTrackAutomaton compile_regex(const RegexPattern& p, const TrackSignature& sig) {
    detail::EpsNfa nfa;
    auto [start, accept] = detail::build_thompson(nfa, p);

    // fold epsilon edges into an ordinary NFA by forward closure
    int n = static_cast<int>(nfa.edges.size());
    std::vector<std::vector<int>> closure(n);
    for (int s = 0; s < n; ++s) {
        std::vector<char> seen(n, 0);
        std::deque<int> queue{s};
        seen[s] = 1;
        while (!queue.empty()) {
            int t = queue.front();
            queue.pop_front();
            closure[s].push_back(t);
            for (int u : nfa.eps[t])
                if (!seen[u]) { seen[u] = 1; queue.push_back(u); }
        }
    }

    MultiTrackAutomaton a;
    a.sig = sig;
    a.initial = start;
    a.deterministic = false;
    a.accepting.assign(n, 0);
    a.edges.resize(n);
    for (int s = 0; s < n; ++s) {
        for (int t : closure[s]) {
            if (t == accept) a.accepting[s] = 1;
            for (const auto& [sym, dst] : nfa.edges[t]) a.edges[s].emplace_back(sym, dst);
        }
        std::sort(a.edges[s].begin(), a.edges[s].end());
        a.edges[s].erase(std::unique(a.edges[s].begin(), a.edges[s].end()), a.edges[s].end());
    }
    return pad_closure(a);
}

inline MultiTrackAutomaton compile_regex(std::string_view pattern, const TrackSignature& sig) {
    return compile_regex(parse_regex(pattern, sig), sig);
}

}  // namespace ovlf
