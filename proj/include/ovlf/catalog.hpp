#pragma once

// Named automata: the base predicates (power2, adjacent, hmorph, validcode,
// prefix, length), the lookup chain (look1, look2, LOOK), the overlap-free /
// power-free query catalog, and the enumeration chain ending in minmat.
// Everything is defined by script statements executed against an engine that
// starts with three built-in automata: `normalize` (extended-binary vs
// binary equality), `T` (Thue-Morse bit) and `CODE` (code digit at a power
// of two). Construction of `lexleast` is refused unless explicitly allowed;
// it is far more expensive than everything else combined.

#include <filesystem>
#include <fstream>

#include "ovlf/logic.hpp"
#include "ovlf/regex.hpp"
#include "ovlf/restivo.hpp"
#include "ovlf/script.hpp"
#include "ovlf/serialize.hpp"

namespace ovlf {

class heavy_refused : public error {
public:
    using error::error;
};

struct BuildOptions {
    bool allow_heavy = false;
    std::string cache_dir;      // empty: no caching
    bool use_cache = true;      // false: always rebuild (cache still written)
};

class Engine {
public:
    Engine() {
        env_.acceptors["normalize"] = build_normalizer();
        env_.outputs["T"] = build_thue_morse();
        env_.outputs["CODE"] = build_code_lookup();
    }

    const Env& env() const { return env_; }

    bool defined(const std::string& name) const {
        return env_.has(name) || evals_.count(name);
    }

    const MultiTrackAutomaton& acceptor(const std::string& name) const {
        return env_.acceptor(name);
    }
    const OutputAutomaton& output(const std::string& name) const { return env_.output(name); }

    bool eval_result(const std::string& name) const {
        auto it = evals_.find(name);
        if (it == evals_.end()) throw error("no eval result named '" + name + "'");
        return it->second;
    }

    const std::string& count_var(const std::string& name) const {
        auto it = count_vars_.find(name);
        if (it == count_vars_.end()) throw error("'" + name + "' has no counting variable");
        return it->second;
    }

    void run(const Statement& st) {
        switch (st.kind) {
            case Statement::Reg: {
                std::vector<Track> tracks;
                for (size_t i = 0; i < st.bases.size(); ++i)
                    tracks.push_back({"%" + std::to_string(i), st.bases[i]});
                env_.acceptors[st.name] = compile_regex(st.pattern, TrackSignature(tracks));
                break;
            }
            case Statement::Def: {
                BaseHints hints;
                FormulaPtr f = parse_formula(st.formula_text, hints);
                std::vector<std::string> frees = Compiler::free_variables(f);
                MultiTrackAutomaton a = compile(f, env_, hints);
                for (const auto& v : frees)
                    if (a.sig.index_of(v) < 0)
                        throw error("def " + st.name + ": free variable '" + v +
                                    "' missing from result tracks");
                if (a.sig.track_count() != frees.size())
                    throw error("def " + st.name + ": track/variable mismatch");
                if (!st.count_var.empty() &&
                    std::find(frees.begin(), frees.end(), st.count_var) == frees.end())
                    throw error("def " + st.name + ": counting variable '" + st.count_var +
                                "' is not free");
                env_.acceptors[st.name] = std::move(a);
                if (!st.count_var.empty()) count_vars_[st.name] = st.count_var;
                break;
            }
            case Statement::Eval: {
                BaseHints hints;
                FormulaPtr f = parse_formula(st.formula_text, hints);
                evals_[st.name] = eval_sentence(f, env_, hints);
                break;
            }
            case Statement::Combine: {
                std::vector<std::pair<MultiTrackAutomaton, int>> parts;
                for (const auto& [part, value] : st.parts)
                    parts.emplace_back(env_.acceptor(part), value);
                env_.outputs[st.name] = combine_outputs(parts, 0);
                break;
            }
        }
    }

    void run_script(std::string_view text) {
        for (const Statement& st : parse_script(text)) run(st);
    }

    void register_acceptor(const std::string& name, MultiTrackAutomaton a) {
        env_.acceptors[name] = std::move(a);
    }
    void register_output(const std::string& name, OutputAutomaton a) {
        env_.outputs[name] = std::move(a);
    }
    void register_eval(const std::string& name, bool v) { evals_[name] = v; }

private:
    Env env_;
    std::map<std::string, bool> evals_;
    std::map<std::string, std::string> count_vars_;
};

// ---------------------------------------------------------------------------
// Catalog

struct CatalogEntry {
    const char* name;
    const char* text;                // one script statement
    std::vector<const char*> deps;   // earlier catalog names (built-ins excluded)
    bool heavy = false;
};

inline const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> entries = {
        {"power2", R"(reg power2 lsd_2 "0*10*":)", {}},
        {"adjacent",
         R"(def adjacent "?lsd_2 ($power2(m) & $power2(n) & m=2*n) | (m=1 & n=0)":)",
         {"power2"}},
        {"hmorph", R"(reg hmorph lsd_6 lsd_3 "([1,0]|[2,1]|[3,1]|[4,2]|[5,2])*[0,0]*":)", {}},
        {"validcode", R"(reg validcode lsd_6 "(1|2|3|4|5)*0*":)", {}},
        {"prefix",
         R"(reg prefix lsd_2 lsd_3 lsd_3 "(([0,0,0]|[0,1,0]|[0,2,0])*)|
   (([0,0,0]|[0,1,1]|[0,2,2])*)([1,0,0]|[1,1,1]|[1,2,2])
   ([0,0,0]|[0,1,0]|[0,2,0])*":)",
         {}},
        {"length",
         R"(def length "?lsd_2 El $hmorph(?lsd_6 c,?lsd_3 l) &
   $normalize(?lsd_3 l,?lsd_2 n)":)",
         {"hmorph"}},

        {"look1",
         R"(def look1 "?lsd_2 Ep,q,l,g,h,r,s,x $validcode(?lsd_6 c) & $adjacent(p,q) &
   $hmorph(?lsd_6 c,?lsd_3 l) & $prefix(?lsd_2 p,?lsd_3 l,?lsd_3 g) &
   $prefix(?lsd_2 q,?lsd_3 l,?lsd_3 h) & $normalize(?lsd_3 g,?lsd_2 r) &
   $normalize(?lsd_3 h,?lsd_2 s) & n>=s & n<r & x+s=n &
   ((CODE[?lsd_2 p][?lsd_6 c]=@2 & T[x]=@1)
   |(CODE[?lsd_2 p][?lsd_6 c]=@3 & T[x]=@0)
   |(CODE[?lsd_2 p][?lsd_6 c]=@4 & x<p & T[x]=@1)
   |(CODE[?lsd_2 p][?lsd_6 c]=@4 & x>=p & T[x-p]=@1)
   |(CODE[?lsd_2 p][?lsd_6 c]=@5 & x<p & T[x]=@0)
   |(CODE[?lsd_2 p][?lsd_6 c]=@5 & x>=p & T[x-p]=@0))":)",
         {"validcode", "adjacent", "hmorph", "prefix"}},
        {"look2",
         R"(def look2 "?lsd_2 (~$validcode(?lsd_6 c)) | (El $length(?lsd_6 c,?lsd_2 l)
   & n>=l)":)",
         {"validcode", "length"}},
        {"LOOK", R"(combine LOOK look1=1 look2=2:)", {"look1", "look2"}},

        {"good", R"(reg good lsd_6 "(1|2|3|4|5)*":)", {}},
        {"hasover",
         R"(def hasover "?lsd_2 At (t<=n) => LOOK[?lsd_6 c][i+t]=LOOK[?lsd_6 c][i+n+t]":)",
         {"LOOK"}},
        {"ovlf",
         R"(def ovlf "?lsd_2 $validcode(?lsd_6 c) & ~Ei,n,l $length(?lsd_6 c,?lsd_2 l)
   & n>=1 & i+2*n<l & $hasover(?lsd_6 c,?lsd_2 i,?lsd_2 n)":)",
         {"validcode", "length", "hasover"}},
        {"ovlfg", R"(def ovlfg "?lsd_6 $good(c) & $ovlf(c)":)", {"good", "ovlf"}},

        {"has_square",
         R"(def has_square "?lsd_2 At (t<n) => LOOK[?lsd_6 c][i+t]=LOOK[?lsd_6 c][i+t+n]":)",
         {"LOOK"}},
        {"squ",
         R"(eval squ "?lsd_2 Ac,l ($ovlf(?lsd_6 c) & $length(?lsd_6 c,?lsd_2 l) & l>7)
   => Ei,n i+2*n<=l & 6*n>=l & $has_square(?lsd_6 c,?lsd_2 i,?lsd_2 n)":)",
         {"ovlf", "length", "has_square"}},
        {"squ3",
         R"(def squ3 "?lsd_2 Ei,n,l $ovlf(?lsd_6 c) & $length(?lsd_6 c,?lsd_2 l)
   & i+2*n<=l & 6*n=l & $has_square(?lsd_6 c, ?lsd_2 i, ?lsd_2 n)":)",
         {"ovlf", "length", "has_square"}},
        {"squ3b",
         R"(def squ3b "?lsd_2 Ai,n,l ($ovlf(?lsd_6 c) & $length(?lsd_6 c,?lsd_2 l)
   & i+2*n<=l & $has_square(?lsd_6 c, ?lsd_2 i, ?lsd_2 n)) => 6*n<=l":)",
         {"ovlf", "length", "has_square"}},
        {"squ4g", R"(def squ4g "?lsd_6 $good(c) & $squ3(c) & $squ3b(c)":)",
         {"good", "squ3", "squ3b"}},
        {"squaresin",
         R"(eval squaresin "?lsd_2 Ac,l ($validcode(?lsd_6 c) & $length(?lsd_6 c,?lsd_2 l)
   & l>8) => Ei,n i+2*n<=l & 7*n>=l+2 & $has_square(?lsd_6 c,?lsd_2 i,?lsd_2 n)":)",
         {"validcode", "length", "has_square"}},
        {"squr3",
         R"(def squr3 "?lsd_2 Ei,n,l $validcode(?lsd_6 c) & $length(?lsd_6 c,?lsd_2 l)
   & i+2*n<=l & 7*n=l+2 & $has_square(?lsd_6 c,?lsd_2 i,?lsd_2 n)":)",
         {"validcode", "length", "has_square"}},
        {"squr3b",
         R"(def squr3b "?lsd_2 Ai,n,l ($validcode(?lsd_6 c) & $length(?lsd_6 c,?lsd_2 l)
   & i+2*n<=l & $has_square(?lsd_6 c,?lsd_2 i,?lsd_2 n)) => 7*n<=l+2":)",
         {"validcode", "length", "has_square"}},
        {"squr4g", R"(def squr4g "?lsd_6 $good(c) & $squr3(c) & $squr3b(c)":)",
         {"good", "squr3", "squr3b"}},
        {"fourthr",
         R"(eval fourthr "?lsd_2 Ei,n,l,c $validcode(?lsd_6 c) &
   $length(?lsd_6 c,?lsd_6 l) & n>=1 & i+3*n<=l & At (t<3*n)
   => LOOK[?lsd_6 c][i+t]=LOOK[?lsd_6 c][i+n+t]":)",
         {"validcode", "length", "LOOK"}},

        {"avoid73",
         R"(def avoid73 "?lsd_2 $validcode(?lsd_6 c) & ~Ei,n,l
   $length(?lsd_6 c,?lsd_6 l) & n>=1 & i+(7*n)/3<l &
   At (3*t<4*n) => LOOK[?lsd_6 c][i+t]=LOOK[?lsd_6 c][i+n+t]":)",
         {"validcode", "length", "LOOK"}},
        {"avoid73g", R"(def avoid73g "?lsd_6 $good(c) & $avoid73(c)":)", {"good", "avoid73"}},
        {"two1", R"(reg two1 lsd_6 "(21(1*))*20*":)", {}},
        {"large_overl",
         R"(def large_overl "?lsd_2 El,i $length(?lsd_6 c,?lsd_2 l) & $two1(?lsd_6 c)
   & n>=1 & i+2*n<l & $hasover(?lsd_6 c,?lsd_2 i,?lsd_2 n)":)",
         {"length", "two1", "hasover"}},

        {"prefixc",
         R"(reg prefixc lsd_6 lsd_6 "([1,1]|[2,2]|[3,3]|[4,4]|[5,5])*
([0,1]|[0,2]|[0,3]|[0,4]|[0,5])*[0,0]*":)",
         {}},
        {"lastnzcode",
         R"(reg lastnzcode lsd_6 lsd_2 "([1,0]|[2,0]|[3,0]|[4,0]|[5,0])*
   ([1,1]|[2,1]|[3,1]|[4,1]|[5,1])[0,0]*":)",
         {}},
        {"tmagree",
         R"(def tmagree "?lsd_2 El $length(?lsd_6 c,?lsd_2 l) &
   At (t>=n & t<l) => LOOK[?lsd_6 c][t] = T[t]":)",
         {"length", "LOOK"}},
        {"changebits",
         R"(def changebits "?lsd_2 $good(?lsd_6 c) & El $length(?lsd_6 c,?lsd_6 l) &
   Az Ed,y $prefixc(?lsd_6 c,?lsd_6 d) & $length(?lsd_6 d,?lsd_2 y)
   & y>=z & $tmagree(?lsd_6 d,?lsd_2 l) & $ovlf(?lsd_6 d)":)",
         {"good", "length", "prefixc", "tmagree", "ovlf"}},

        {"maxexp",
         R"(def maxexp "?lsd_2 Ex,l,i $lastnzcode(?lsd_6 c,?lsd_2 x) &
   $length(?lsd_6 c,?lsd_2 l) & i+2*x+2<=l+1 & At (t<3*x/2-1)
   => LOOK[?lsd_6 c][i+t]=LOOK[?lsd_6 c][i+t+x/2]":)",
         {"lastnzcode", "length", "LOOK"}},

        {"agrees",
         R"(def agrees "?lsd_2 At (t<b) => LOOK[?lsd_6 c1][t]=LOOK[?lsd_6 c2][t]":)",
         {"LOOK"}},
        {"prefixequal",
         R"(def prefixequal "?lsd_2 El,m $length(?lsd_6 c1,?lsd_2 l) &
   $length(?lsd_6 c2,?lsd_2 m) & l>=n & m>=n &
   $agrees(?lsd_2 n,?lsd_6 c1, ?lsd_6 c2)":)",
         {"length", "agrees"}},
        {"mincode",
         R"(def mincode "?lsd_2 El $ovlf(?lsd_6 c1) & $length(?lsd_6 c1, ?lsd_2 l) &
   l>=n & Ac2 ($prefixequal(?lsd_6 c1,?lsd_6 c2,?lsd_2 n) &
   $ovlf(?lsd_6 c2)) => (?lsd_6 c1<=c2)":)",
         {"ovlf", "length", "prefixequal"}},
        {"minmat", R"(def minmat n "$mincode(?lsd_6 c,?lsd_2 n)":)", {"mincode"}},

        {"min", R"(def min "?lsd_2 (a<=b & c=a) | (b<a & c=b)":)", {}},
        {"ispref",
         R"(def ispref "?lsd_2 El1,l2 $length(?lsd_6 c1,?lsd_2 l1) &
   $length(?lsd_6 c2,?lsd_2 l2) & l1<=l2 &
   $agrees(l1,?lsd_6 c1, ?lsd_6 c2)":)",
         {"length", "agrees"}},
        {"lexlt",
         R"(def lexlt "?lsd_2 El1,l2,m,i $length(?lsd_6 c1,?lsd_2 l1) &
   $length(?lsd_6 c2,?lsd_2 l2) & $min(l1,l2,m) & i<m &
   $agrees(i,?lsd_6 c1, ?lsd_6 c2) &
   LOOK[?lsd_6 c1][?lsd_2 i]<LOOK[?lsd_6 c2][?lsd_2 i]":)",
         {"length", "min", "agrees", "LOOK"}},
        {"lexlte", R"(def lexlte "?lsd_6 $ispref(c1,c2) | $lexlt(c1,c2)":)",
         {"ispref", "lexlt"}},
        {"lexleast",
         R"(def lexleast "?lsd_2 $good(c1) & $validcode(?lsd_6 c1) & $ovlf(?lsd_6 c1)
   & Ac2,l1,l2 ($validcode(?lsd_6 c2) & $ovlf(?lsd_6 c2)
   & $length(?lsd_6 c2,?lsd_2 l2) & $length(?lsd_6 c1,?lsd_2 l1) & l1<=l2)
   =>  $lexlte(c1,c2)":)",
         {"good", "validcode", "ovlf", "length", "lexlte"},
         true},
    };
    return entries;
}

inline const CatalogEntry& catalog_entry(const std::string& name) {
    for (const auto& e : catalog())
        if (name == e.name) return e;
    throw error("unknown catalog name '" + name + "'");
}

namespace detail {

inline std::filesystem::path cache_path(const BuildOptions& opt, const std::string& name,
                                        bool eval_entry) {
    return std::filesystem::path(opt.cache_dir) / (name + (eval_entry ? ".val" : ".aut"));
}

inline bool load_cached(Engine& engine, const BuildOptions& opt, const CatalogEntry& e) {
    if (opt.cache_dir.empty() || !opt.use_cache) return false;
    Statement st = parse_script(e.text).at(0);
    std::filesystem::path path = cache_path(opt, e.name, st.kind == Statement::Eval);
    std::ifstream in(path);
    if (!in) return false;
    if (st.kind == Statement::Eval) {
        std::string word;
        in >> word;
        engine.register_eval(e.name, word == "true");
        return true;
    }
    MultiTrackAutomaton a;
    OutputAutomaton o;
    bool is_output = false;
    read_automaton(in, a, o, is_output);
    if (is_output) engine.register_output(e.name, std::move(o));
    else engine.register_acceptor(e.name, std::move(a));
    return true;
}

inline void store_cached(const Engine& engine, const BuildOptions& opt, const CatalogEntry& e) {
    if (opt.cache_dir.empty()) return;
    std::filesystem::create_directories(opt.cache_dir);
    Statement st = parse_script(e.text).at(0);
    std::ofstream out(cache_path(opt, e.name, st.kind == Statement::Eval));
    if (st.kind == Statement::Eval) {
        out << (engine.eval_result(e.name) ? "true" : "false") << '\n';
    } else if (st.kind == Statement::Combine) {
        write_automaton(out, engine.output(e.name));
    } else {
        write_automaton(out, engine.acceptor(e.name));
    }
}

}  // namespace detail

// Build a catalog entry and its dependencies into the engine. `minmat` keeps
// its counting variable; `lexleast` requires opting into heavy builds.
inline void build_catalog(Engine& engine, const std::string& name,
                          const BuildOptions& opt = {}) {
    if (engine.defined(name)) return;
    const CatalogEntry& e = catalog_entry(name);
    if (e.heavy && !opt.allow_heavy)
        throw heavy_refused("'" + name +
                            "' is a heavy build (the published run needed on the order of 100 GB "
                            "of memory); pass allow-heavy to construct it anyway");
    for (const char* dep : e.deps) build_catalog(engine, dep, opt);
    if (detail::load_cached(engine, opt, e)) return;
    engine.run_script(e.text);
    detail::store_cached(engine, opt, e);
}

// Convenience: one catalog automaton in a fresh engine.
inline MultiTrackAutomaton build_named_acceptor(const std::string& name,
                                                const BuildOptions& opt = {}) {
    Engine engine;
    build_catalog(engine, name, opt);
    return engine.acceptor(name);
}

inline OutputAutomaton build_named_output(const std::string& name, const BuildOptions& opt = {}) {
    Engine engine;
    build_catalog(engine, name, opt);
    return engine.output(name);
}

inline MultiTrackAutomaton build_adjacent() { return build_named_acceptor("adjacent"); }

}  // namespace ovlf
