#pragma once

// Textual automaton format and DOT export.
//
//   line 1:  track declarations        c:6 n:2        (empty signature: "-")
//   line 2:  states N initial I
//   then one line per state:           id accepting_flag          (acceptor)
//                                      id 0 output                (output automaton)
//   line:    transitions M
//   then one line per transition:      src d1,d2,... dst
//
// Canonical automata serialize deterministically, so byte comparison of two
// files decides structural equality.

#include <istream>
#include <ostream>
#include <sstream>

#include "ovlf/automaton.hpp"

namespace ovlf {

namespace detail {

inline void write_header(std::ostream& os, const TrackSignature& sig) {
    if (sig.track_count() == 0) {
        os << "-\n";
        return;
    }
    for (size_t i = 0; i < sig.track_count(); ++i) {
        if (i) os << ' ';
        os << sig.track(i).name << ':' << sig.track(i).base;
    }
    os << '\n';
}

inline TrackSignature read_header(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw error("automaton file: missing header");
    std::istringstream ls(line);
    std::vector<Track> tracks;
    std::string tok;
    while (ls >> tok) {
        if (tok == "-") break;
        auto colon = tok.rfind(':');
        if (colon == std::string::npos) throw error("automaton file: bad track '" + tok + "'");
        tracks.push_back({tok.substr(0, colon), std::stoi(tok.substr(colon + 1))});
    }
    return TrackSignature(tracks);
}

inline std::string tuple_label(const TrackSignature& sig, Symbol sym) {
    if (sig.track_count() == 0) return "-";
    std::vector<int> digits = sig.decode(sym);
    std::string s;
    for (size_t i = 0; i < digits.size(); ++i) {
        if (i) s += ',';
        s += static_cast<char>('0' + digits[i]);
    }
    return s;
}

inline Symbol parse_tuple(const TrackSignature& sig, const std::string& label) {
    if (label == "-") return 0;
    std::vector<int> digits;
    for (size_t i = 0; i < label.size(); ++i) {
        if (label[i] == ',') continue;
        if (label[i] < '0' || label[i] > '9') throw error("automaton file: bad tuple " + label);
        digits.push_back(label[i] - '0');
    }
    return sig.encode(digits);
}

}  // namespace detail

inline void write_automaton(std::ostream& os, const MultiTrackAutomaton& a) {
    detail::write_header(os, a.sig);
    os << "states " << a.state_count() << " initial " << a.initial << '\n';
    for (int s = 0; s < a.state_count(); ++s) os << s << ' ' << (a.accepting[s] ? 1 : 0) << '\n';
    size_t m = 0;
    for (const auto& row : a.edges) m += row.size();
    os << "transitions " << m << '\n';
    for (int s = 0; s < a.state_count(); ++s)
        for (const auto& [sym, dst] : a.edges[s])
            os << s << ' ' << detail::tuple_label(a.sig, sym) << ' ' << dst << '\n';
}

inline void write_automaton(std::ostream& os, const OutputAutomaton& a) {
    detail::write_header(os, a.sig);
    os << "states " << a.state_count() << " initial " << a.initial << '\n';
    for (int s = 0; s < a.state_count(); ++s) os << s << " 0 " << a.output[s] << '\n';
    size_t m = static_cast<size_t>(a.state_count()) * a.sig.alphabet_size();
    os << "transitions " << m << '\n';
    for (int s = 0; s < a.state_count(); ++s)
        for (Symbol sym = 0; sym < a.sig.alphabet_size(); ++sym)
            os << s << ' ' << detail::tuple_label(a.sig, sym) << ' ' << a.next[s][sym] << '\n';
}

inline std::string to_text(const MultiTrackAutomaton& a) {
    std::ostringstream os;
    write_automaton(os, a);
    return os.str();
}

inline std::string to_text(const OutputAutomaton& a) {
    std::ostringstream os;
    write_automaton(os, a);
    return os.str();
}

// Reads either kind; `is_output` reports which one was found.
inline void read_automaton(std::istream& is, MultiTrackAutomaton& acceptor, OutputAutomaton& dfao,
                           bool& is_output) {
    TrackSignature sig = detail::read_header(is);
    std::string kw;
    int n = 0, initial = 0;
    is >> kw >> n;
    if (kw != "states") throw error("automaton file: expected states line");
    is >> kw >> initial;
    if (kw != "initial") throw error("automaton file: expected initial");

    std::vector<char> accepting(n, 0);
    std::vector<int> output(n, 0);
    is_output = false;
    std::string line;
    std::getline(is, line);
    for (int i = 0; i < n; ++i) {
        if (!std::getline(is, line)) throw error("automaton file: truncated state list");
        std::istringstream ls(line);
        int id = 0, flag = 0;
        ls >> id >> flag;
        int out = 0;
        if (ls >> out) { is_output = true; output[id] = out; }
        if (id < 0 || id >= n) throw error("automaton file: state id out of range");
        accepting[id] = flag ? 1 : 0;
    }

    size_t m = 0;
    is >> kw >> m;
    if (kw != "transitions") throw error("automaton file: expected transitions line");

    if (is_output) {
        dfao.sig = sig;
        dfao.initial = initial;
        dfao.output = std::move(output);
        dfao.next.assign(n, std::vector<int>(sig.alphabet_size(), -1));
        for (size_t i = 0; i < m; ++i) {
            int src = 0, dst = 0;
            std::string tuple;
            is >> src >> tuple >> dst;
            dfao.next[src][detail::parse_tuple(sig, tuple)] = dst;
        }
        for (const auto& row : dfao.next)
            for (int d : row)
                if (d < 0) throw error("automaton file: output automaton not total");
    } else {
        acceptor.sig = sig;
        acceptor.initial = initial;
        acceptor.accepting = std::move(accepting);
        acceptor.edges.assign(n, {});
        acceptor.deterministic = true;
        for (size_t i = 0; i < m; ++i) {
            int src = 0, dst = 0;
            std::string tuple;
            is >> src >> tuple >> dst;
            acceptor.edges[src].emplace_back(detail::parse_tuple(sig, tuple), dst);
        }
        for (auto& row : acceptor.edges) {
            std::sort(row.begin(), row.end());
            for (size_t i = 1; i < row.size(); ++i)
                if (row[i].first == row[i - 1].first) acceptor.deterministic = false;
        }
    }
}

inline MultiTrackAutomaton read_acceptor(std::istream& is) {
    MultiTrackAutomaton a;
    OutputAutomaton o;
    bool is_output = false;
    read_automaton(is, a, o, is_output);
    if (is_output) throw error("expected an acceptor, found an output automaton");
    return a;
}

inline OutputAutomaton read_output_automaton(std::istream& is) {
    MultiTrackAutomaton a;
    OutputAutomaton o;
    bool is_output = false;
    read_automaton(is, a, o, is_output);
    if (!is_output) throw error("expected an output automaton, found an acceptor");
    return o;
}

inline void write_dot(std::ostream& os, const MultiTrackAutomaton& a, const std::string& name) {
    os << "digraph \"" << name << "\" {\n  rankdir=LR;\n  start [shape=point];\n";
    for (int s = 0; s < a.state_count(); ++s)
        os << "  " << s << " [shape=" << (a.accepting[s] ? "doublecircle" : "circle")
           << ", label=\"" << s << "\"];\n";
    os << "  start -> " << a.initial << ";\n";
    for (int s = 0; s < a.state_count(); ++s)
        for (const auto& [sym, dst] : a.edges[s])
            os << "  " << s << " -> " << dst << " [label=\"" << detail::tuple_label(a.sig, sym)
               << "\"];\n";
    os << "}\n";
}

inline void write_dot(std::ostream& os, const OutputAutomaton& a, const std::string& name) {
    os << "digraph \"" << name << "\" {\n  rankdir=LR;\n  start [shape=point];\n";
    for (int s = 0; s < a.state_count(); ++s)
        os << "  " << s << " [shape=circle, label=\"" << s << "/" << a.output[s] << "\"];\n";
    os << "  start -> " << a.initial << ";\n";
    for (int s = 0; s < a.state_count(); ++s)
        for (Symbol sym = 0; sym < a.sig.alphabet_size(); ++sym)
            os << "  " << s << " -> " << a.next[s][sym] << " [label=\""
               << detail::tuple_label(a.sig, sym) << "\"];\n";
    os << "}\n";
}

}  // namespace ovlf
