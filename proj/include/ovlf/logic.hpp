#pragma once

// First-order query AST and its compilation to multi-track automata.
// Semantics are the standard ones over the naturals: atoms are automata,
// connectives are boolean products, existential quantification is track
// projection (with pad-closure), and universal quantification is the dual.
// Arithmetic lives on binary tracks only; q*t and t/q expand through
// addition with fresh auxiliary variables, never as native operations.

#include <map>
#include <memory>
#include <optional>
#include <set>

#include "ovlf/automaton.hpp"
#include "ovlf/numeration.hpp"
#include "ovlf/ops.hpp"

namespace ovlf {

// ---------------------------------------------------------------------------
// AST

struct TermNode;
using TermPtr = std::shared_ptr<const TermNode>;

struct TermNode {
    enum Kind { Var, Const, Add, Sub, MulConst, DivConst } kind;
    std::string var;        // Var
    uint64_t value = 0;     // Const; multiplier of MulConst; divisor of DivConst
    TermPtr a, b;           // operands (MulConst/DivConst use a)
};

inline TermPtr term_var(std::string name) {
    return std::make_shared<const TermNode>(TermNode{TermNode::Var, std::move(name)});
}
inline TermPtr term_const(uint64_t v) {
    return std::make_shared<const TermNode>(TermNode{TermNode::Const, "", v});
}
inline TermPtr term_add(TermPtr a, TermPtr b) {
    return std::make_shared<const TermNode>(TermNode{TermNode::Add, "", 0, std::move(a), std::move(b)});
}
inline TermPtr term_sub(TermPtr a, TermPtr b) {
    return std::make_shared<const TermNode>(TermNode{TermNode::Sub, "", 0, std::move(a), std::move(b)});
}
inline TermPtr term_mul(uint64_t q, TermPtr t) {
    return std::make_shared<const TermNode>(TermNode{TermNode::MulConst, "", q, std::move(t)});
}
inline TermPtr term_div(TermPtr t, uint64_t q) {
    return std::make_shared<const TermNode>(TermNode{TermNode::DivConst, "", q, std::move(t)});
}

struct FormulaNode;
using FormulaPtr = std::shared_ptr<const FormulaNode>;

// Reference to an output automaton applied to argument terms, e.g. T[x-p].
struct OutputRef {
    std::string name;
    std::vector<TermPtr> args;
};

struct FormulaNode {
    enum Kind {
        Compare,         // lhs op rhs over same-base tracks
        Call,            // $name(args)
        OutputCompare,   // NAME[..] op (@value | NAME'[..])
        Not, And, Or, Implies, Iff,
        Exists, Forall
    } kind;

    CompareOp op = CompareOp::Eq;
    TermPtr lhs, rhs;

    std::string name;
    std::vector<TermPtr> args;

    std::optional<OutputRef> out_lhs, out_rhs;
    std::optional<int> out_value;

    FormulaPtr f, g;
    std::vector<std::string> vars;
};

inline FormulaPtr make_formula(FormulaNode n) {
    return std::make_shared<const FormulaNode>(std::move(n));
}
inline FormulaPtr f_not(FormulaPtr f) {
    FormulaNode n{FormulaNode::Not};
    n.f = std::move(f);
    return make_formula(std::move(n));
}
inline FormulaPtr f_binary(FormulaNode::Kind k, FormulaPtr a, FormulaPtr b) {
    FormulaNode n{k};
    n.f = std::move(a);
    n.g = std::move(b);
    return make_formula(std::move(n));
}
inline FormulaPtr f_quantifier(FormulaNode::Kind k, std::vector<std::string> vars, FormulaPtr body) {
    FormulaNode n{k};
    n.vars = std::move(vars);
    n.f = std::move(body);
    return make_formula(std::move(n));
}
inline FormulaPtr f_compare(CompareOp op, TermPtr a, TermPtr b) {
    FormulaNode n{FormulaNode::Compare};
    n.op = op;
    n.lhs = std::move(a);
    n.rhs = std::move(b);
    return make_formula(std::move(n));
}
inline FormulaPtr f_call(std::string name, std::vector<TermPtr> args) {
    FormulaNode n{FormulaNode::Call};
    n.name = std::move(name);
    n.args = std::move(args);
    return make_formula(std::move(n));
}

// ---------------------------------------------------------------------------
// Environment of named automata

struct Env {
    // acceptors, tracks named after their positional parameters
    std::map<std::string, MultiTrackAutomaton> acceptors;
    // output automata (DFAOs), addressed by bracket position
    std::map<std::string, OutputAutomaton> outputs;

    bool has(const std::string& name) const {
        return acceptors.count(name) || outputs.count(name);
    }

    const MultiTrackAutomaton& acceptor(const std::string& name) const {
        auto it = acceptors.find(name);
        if (it == acceptors.end()) throw error("unbound automaton name '" + name + "'");
        return it->second;
    }

    const OutputAutomaton& output(const std::string& name) const {
        auto it = outputs.find(name);
        if (it == outputs.end()) throw error("unbound output automaton name '" + name + "'");
        return it->second;
    }
};

// ---------------------------------------------------------------------------
// Compilation

namespace detail {

inline void collect_term_vars(const TermPtr& t, std::vector<std::string>& out) {
    if (!t) return;
    if (t->kind == TermNode::Var) out.push_back(t->var);
    collect_term_vars(t->a, out);
    collect_term_vars(t->b, out);
}

inline bool term_has_arith(const TermPtr& t) { return t->kind != TermNode::Var; }

// Scoped alpha-renaming so that every bound variable gets a unique name and
// inner bindings never capture outer ones. Free variables keep their names.
class AlphaRenamer {
public:
    TermPtr rename(const TermPtr& t) {
        if (!t) return t;
        if (t->kind == TermNode::Var) return term_var(lookup(t->var));
        TermNode n = *t;
        n.a = rename(t->a);
        n.b = rename(t->b);
        return std::make_shared<const TermNode>(std::move(n));
    }

    FormulaPtr rename(const FormulaPtr& f) {
        FormulaNode n = *f;
        switch (f->kind) {
            case FormulaNode::Compare:
                n.lhs = rename(f->lhs);
                n.rhs = rename(f->rhs);
                break;
            case FormulaNode::Call:
                for (auto& a : n.args) a = rename(a);
                break;
            case FormulaNode::OutputCompare:
                if (n.out_lhs)
                    for (auto& a : n.out_lhs->args) a = rename(a);
                if (n.out_rhs)
                    for (auto& a : n.out_rhs->args) a = rename(a);
                break;
            case FormulaNode::Not:
                n.f = rename(f->f);
                break;
            case FormulaNode::And:
            case FormulaNode::Or:
            case FormulaNode::Implies:
            case FormulaNode::Iff:
                n.f = rename(f->f);
                n.g = rename(f->g);
                break;
            case FormulaNode::Exists:
            case FormulaNode::Forall: {
                scopes_.emplace_back();
                for (auto& v : n.vars) {
                    std::string fresh = v + "@" + std::to_string(counter_++);
                    scopes_.back()[v] = fresh;
                    v = fresh;
                }
                n.f = rename(f->f);
                scopes_.pop_back();
                break;
            }
        }
        return make_formula(std::move(n));
    }

private:
    std::string lookup(const std::string& v) const {
        for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
            auto jt = it->find(v);
            if (jt != it->end()) return jt->second;
        }
        return v;
    }

    std::vector<std::map<std::string, std::string>> scopes_;
    int counter_ = 0;
};

// Union-find assignment of a base to every variable. Callee signatures and
// arithmetic force hard bases; ?lsd_k annotations are soft hints that lose
// to hard constraints (several published query listings annotate a callee's
// binary argument as lsd_6, and the callee is authoritative there).
class BaseInference {
public:
    void unite(const std::string& a, const std::string& b) {
        link(find(a), find(b));
    }
    void set_hard(const std::string& v, int base) {
        std::string r = find(v);
        auto [it, inserted] = hard_.emplace(r, base);
        if (!inserted && it->second != base)
            throw error("base mismatch for variable '" + v + "': " + std::to_string(it->second) +
                        " vs " + std::to_string(base));
    }
    void set_soft(const std::string& v, int base) { soft_.emplace(find(v), base); }

    // Soft hint keyed by the variable's source name, so it also reaches the
    // alpha-renamed copies of a bound variable.
    void set_soft_name(const std::string& name, int base) { soft_names_.emplace(name, base); }

    int base_of(const std::string& v) {
        std::string r = find(v);
        auto h = hard_.find(r);
        if (h != hard_.end()) return h->second;
        auto s = soft_.find(r);
        if (s != soft_.end()) return s->second;
        auto n = soft_names_.find(source_name(v));
        if (n != soft_names_.end()) return n->second;
        return 2;
    }

    static std::string source_name(const std::string& v) {
        auto at = v.find('@');
        return at == std::string::npos ? v : v.substr(0, at);
    }

private:
    std::string find(const std::string& v) {
        auto it = parent_.find(v);
        if (it == parent_.end() || it->second == v) return v;
        std::string r = find(it->second);
        parent_[v] = r;
        return r;
    }
    void link(const std::string& ra, const std::string& rb) {
        if (ra == rb) return;
        parent_[rb] = ra;
        auto hb = hard_.find(rb);
        if (hb != hard_.end()) {
            int base = hb->second;
            hard_.erase(hb);
            set_hard(ra, base);
        }
        auto sb = soft_.find(rb);
        if (sb != soft_.end()) {
            int base = sb->second;
            soft_.erase(sb);
            soft_.emplace(ra, base);
        }
    }

    std::map<std::string, std::string> parent_;
    std::map<std::string, int> hard_;
    std::map<std::string, int> soft_;
    std::map<std::string, int> soft_names_;
};

}  // namespace detail

// Soft base annotations recorded by the parser: each entry names a variable
// occurrence carrying a ?lsd_k marker.
using BaseHints = std::vector<std::pair<std::string, int>>;

class Compiler {
public:
    Compiler(const Env& env, const BaseHints& hints = {}) : env_(env), hints_(hints) {}

    MultiTrackAutomaton compile(const FormulaPtr& formula) {
        detail::AlphaRenamer renamer;
        FormulaPtr f = renamer.rename(formula);
        infer_bases(f);
        for (const auto& [v, b] : hints_) bases_.set_soft_name(v, b);
        return compile_node(f);
    }

    // Sorted free variables of a formula (before renaming).
    static std::vector<std::string> free_variables(const FormulaPtr& formula) {
        std::set<std::string> bound, free;
        collect_free(formula, bound, free);
        return {free.begin(), free.end()};
    }

private:
    static void collect_free(const FormulaPtr& f, std::set<std::string>& bound,
                             std::set<std::string>& free) {
        auto term_vars = [&](const TermPtr& t) {
            std::vector<std::string> vs;
            detail::collect_term_vars(t, vs);
            for (const auto& v : vs)
                if (!bound.count(v)) free.insert(v);
        };
        switch (f->kind) {
            case FormulaNode::Compare:
                term_vars(f->lhs);
                term_vars(f->rhs);
                break;
            case FormulaNode::Call:
                for (const auto& a : f->args) term_vars(a);
                break;
            case FormulaNode::OutputCompare:
                if (f->out_lhs)
                    for (const auto& a : f->out_lhs->args) term_vars(a);
                if (f->out_rhs)
                    for (const auto& a : f->out_rhs->args) term_vars(a);
                break;
            case FormulaNode::Not:
                collect_free(f->f, bound, free);
                break;
            case FormulaNode::And:
            case FormulaNode::Or:
            case FormulaNode::Implies:
            case FormulaNode::Iff:
                collect_free(f->f, bound, free);
                collect_free(f->g, bound, free);
                break;
            case FormulaNode::Exists:
            case FormulaNode::Forall: {
                std::vector<std::string> added;
                for (const auto& v : f->vars)
                    if (bound.insert(v).second) added.push_back(v);
                collect_free(f->f, bound, free);
                for (const auto& v : added) bound.erase(v);
                break;
            }
        }
    }

    // ---- base inference ----------------------------------------------------

    void infer_bases(const FormulaPtr& f) {
        switch (f->kind) {
            case FormulaNode::Compare: {
                std::vector<std::string> vars;
                detail::collect_term_vars(f->lhs, vars);
                detail::collect_term_vars(f->rhs, vars);
                for (size_t i = 1; i < vars.size(); ++i) bases_.unite(vars[0], vars[i]);
                bool arith = detail::term_has_arith(f->lhs) || detail::term_has_arith(f->rhs);
                if (arith && !vars.empty()) bases_.set_hard(vars[0], 2);
                break;
            }
            case FormulaNode::Call: {
                const MultiTrackAutomaton& callee = env_.acceptor(f->name);
                if (f->args.size() != callee.sig.track_count())
                    throw error("call '" + f->name + "': expected " +
                                std::to_string(callee.sig.track_count()) + " arguments, got " +
                                std::to_string(f->args.size()));
                for (size_t i = 0; i < f->args.size(); ++i) hard_term(f->args[i], callee.sig.track(i).base);
                break;
            }
            case FormulaNode::OutputCompare: {
                auto handle = [&](const OutputRef& ref) {
                    const OutputAutomaton& dfao = env_.output(ref.name);
                    if (ref.args.size() != dfao.sig.track_count())
                        throw error("output automaton '" + ref.name + "': expected " +
                                    std::to_string(dfao.sig.track_count()) + " indices, got " +
                                    std::to_string(ref.args.size()));
                    for (size_t i = 0; i < ref.args.size(); ++i)
                        hard_term(ref.args[i], dfao.sig.track(i).base);
                };
                if (f->out_lhs) handle(*f->out_lhs);
                if (f->out_rhs) handle(*f->out_rhs);
                break;
            }
            case FormulaNode::Not:
                infer_bases(f->f);
                break;
            case FormulaNode::And:
            case FormulaNode::Or:
            case FormulaNode::Implies:
            case FormulaNode::Iff:
                infer_bases(f->f);
                infer_bases(f->g);
                break;
            case FormulaNode::Exists:
            case FormulaNode::Forall:
                infer_bases(f->f);
                break;
        }
    }

    // A term used where the callee expects `base`: a plain variable takes
    // the callee's base; anything arithmetical forces binary throughout.
    void hard_term(const TermPtr& t, int base) {
        if (t->kind == TermNode::Var) {
            bases_.set_hard(t->var, base);
            return;
        }
        std::vector<std::string> vars;
        detail::collect_term_vars(t, vars);
        for (const auto& v : vars) bases_.set_hard(v, 2);
        if (base != 2)
            throw error("arithmetic argument supplied where a base-" + std::to_string(base) +
                        " track is expected");
    }

    // ---- term lowering -----------------------------------------------------

    struct Lowering {
        std::vector<MultiTrackAutomaton> constraints;
        std::vector<std::string> aux;
    };

    std::string fresh_var() { return "%a" + std::to_string(fresh_++); }

    std::string lower_term(const TermPtr& t, Lowering& ctx) {
        switch (t->kind) {
            case TermNode::Var:
                return t->var;
            case TermNode::Const: {
                std::string v = fresh_var();
                ctx.constraints.push_back(rename_tracks(build_constant(t->value), {{"%0", v}}));
                ctx.aux.push_back(v);
                return v;
            }
            case TermNode::Add: {
                std::string x = lower_term(t->a, ctx);
                std::string y = lower_term(t->b, ctx);
                return emit_add(x, y, ctx);
            }
            case TermNode::Sub: {
                // natural subtraction: v + b = a, no solution when a < b
                std::string x = lower_term(t->a, ctx);
                std::string y = lower_term(t->b, ctx);
                std::string v = fresh_var();
                ctx.constraints.push_back(instantiate(build_add(), {v, y, x}));
                ctx.aux.push_back(v);
                return v;
            }
            case TermNode::MulConst: {
                std::string x = lower_term(t->a, ctx);
                return emit_mul_const(t->value, x, ctx);
            }
            case TermNode::DivConst: {
                if (t->value == 0) throw error("division by zero in term");
                std::string x = lower_term(t->a, ctx);
                if (t->value == 1) return x;
                // floor division: x = q*d + r with r < d
                std::string q = fresh_var();
                ctx.aux.push_back(q);
                std::string qd = emit_mul_const(t->value, q, ctx);
                std::string r = fresh_var();
                ctx.aux.push_back(r);
                ctx.constraints.push_back(instantiate(build_add(), {qd, r, x}));
                std::string d = fresh_var();
                ctx.aux.push_back(d);
                ctx.constraints.push_back(rename_tracks(build_constant(t->value), {{"%0", d}}));
                ctx.constraints.push_back(instantiate(build_compare(CompareOp::Lt, 2), {r, d}));
                return q;
            }
        }
        throw error("corrupt term node");
    }

    std::string emit_add(const std::string& x, const std::string& y, Lowering& ctx) {
        std::string v = fresh_var();
        ctx.constraints.push_back(instantiate(build_add(), {x, y, v}));
        ctx.aux.push_back(v);
        return v;
    }

    // q*t by a doubling chain over the binary expansion of q
    std::string emit_mul_const(uint64_t q, const std::string& x, Lowering& ctx) {
        if (q == 0) {
            std::string v = fresh_var();
            ctx.constraints.push_back(rename_tracks(build_constant(0), {{"%0", v}}));
            ctx.aux.push_back(v);
            return v;
        }
        if (q == 1) return x;
        std::string power = x;
        std::string acc;
        while (q) {
            if (q & 1) acc = acc.empty() ? power : emit_add(acc, power, ctx);
            q >>= 1;
            if (q) {
                std::string doubled = fresh_var();
                ctx.constraints.push_back(instantiate(build_add(), {power, power, doubled}));
                ctx.aux.push_back(doubled);
                power = doubled;
            }
        }
        return acc;
    }

    // Rename the positional tracks of a stored automaton onto argument
    // variables. A repeated argument pins the duplicated tracks together
    // with an equality constraint before projecting the stand-in away.
    MultiTrackAutomaton instantiate(const MultiTrackAutomaton& stored,
                                    const std::vector<std::string>& args) {
        if (args.size() != stored.sig.track_count())
            throw error("instantiate: arity mismatch");
        std::map<std::string, std::string> renaming;
        std::set<std::string> seen;
        struct Dup { std::string temp, target; int base; };
        std::vector<Dup> dups;
        for (size_t i = 0; i < args.size(); ++i) {
            const std::string& param = stored.sig.track(i).name;
            if (seen.insert(args[i]).second) {
                renaming[param] = args[i];
            } else {
                std::string temp = "%d" + std::to_string(fresh_++);
                renaming[param] = temp;
                dups.push_back({temp, args[i], stored.sig.track(i).base});
            }
        }
        MultiTrackAutomaton out = rename_tracks(stored, renaming);
        for (const auto& d : dups) {
            MultiTrackAutomaton eq =
                rename_tracks(build_compare(CompareOp::Eq, d.base), {{"%0", d.temp}, {"%1", d.target}});
            out = boolean_combine(BoolOp::And, out, eq);
            out = project(out, d.temp);
        }
        return out;
    }

    // ---- variable elimination ----------------------------------------------

    static void flatten_and(const FormulaPtr& f, std::vector<FormulaPtr>& out) {
        if (f->kind == FormulaNode::And) {
            flatten_and(f->f, out);
            flatten_and(f->g, out);
        } else {
            out.push_back(f);
        }
    }

    static MultiTrackAutomaton universal_sentence() {
        MultiTrackAutomaton a;
        a.sig = TrackSignature({});
        a.initial = 0;
        a.accepting = {1};
        a.edges.resize(1);
        a.edges[0].emplace_back(0, 0);
        a.deterministic = true;
        return a;
    }

    // Conjoin automata and project the given variables, eliminating each
    // variable as soon as every conjunct mentioning it has been merged.
    // This is the plain logical rewrite  Ex (A(x) & B) = (Ex A(x)) & B
    // applied greedily; it keeps intermediate products small.
    MultiTrackAutomaton eliminate(std::vector<MultiTrackAutomaton> conjuncts,
                                  std::vector<std::string> vars) {
        if (conjuncts.empty()) return universal_sentence();

        auto mentions = [](const MultiTrackAutomaton& a, const std::string& v) {
            return a.sig.index_of(v) >= 0;
        };

        std::sort(vars.begin(), vars.end());
        while (!vars.empty()) {
            // prefer the variable whose merge touches the least state mass
            size_t best = 0;
            long best_cost = -1;
            for (size_t i = 0; i < vars.size(); ++i) {
                long cost = 0;
                int count = 0;
                for (const auto& c : conjuncts)
                    if (mentions(c, vars[i])) { cost += c.state_count(); ++count; }
                long score = count <= 1 ? cost : cost + 1000000L * (count - 1);
                if (best_cost < 0 || score < best_cost) { best_cost = score; best = i; }
            }
            std::string v = vars[best];
            vars.erase(vars.begin() + best);

            std::vector<MultiTrackAutomaton> involved, rest;
            for (auto& c : conjuncts)
                (mentions(c, v) ? involved : rest).push_back(std::move(c));
            if (involved.empty()) { conjuncts = std::move(rest); continue; }

            std::sort(involved.begin(), involved.end(),
                      [](const auto& a, const auto& b) { return a.state_count() < b.state_count(); });
            MultiTrackAutomaton merged = std::move(involved[0]);
            for (size_t i = 1; i < involved.size(); ++i)
                merged = boolean_combine(BoolOp::And, merged, involved[i]);
            merged = project(merged, v);
            rest.push_back(std::move(merged));
            conjuncts = std::move(rest);
        }

        std::sort(conjuncts.begin(), conjuncts.end(),
                  [](const auto& a, const auto& b) { return a.state_count() < b.state_count(); });
        MultiTrackAutomaton result = std::move(conjuncts[0]);
        for (size_t i = 1; i < conjuncts.size(); ++i)
            result = boolean_combine(BoolOp::And, result, conjuncts[i]);
        return result;
    }

    // ---- formula compilation -----------------------------------------------

    MultiTrackAutomaton compile_node(const FormulaPtr& f) {
        switch (f->kind) {
            case FormulaNode::Compare:
                return compile_compare(f);
            case FormulaNode::Call:
                return compile_call(f);
            case FormulaNode::OutputCompare:
                return compile_output_compare(f);
            case FormulaNode::Not:
                return complement(compile_node(f->f));
            case FormulaNode::And:
                return boolean_combine(BoolOp::And, compile_node(f->f), compile_node(f->g));
            case FormulaNode::Or:
                return boolean_combine(BoolOp::Or, compile_node(f->f), compile_node(f->g));
            case FormulaNode::Implies:
                return boolean_combine(BoolOp::Implies, compile_node(f->f), compile_node(f->g));
            case FormulaNode::Iff:
                return boolean_combine(BoolOp::Iff, compile_node(f->f), compile_node(f->g));
            case FormulaNode::Exists:
                return compile_exists(f->vars, f->f);
            case FormulaNode::Forall: {
                FormulaPtr inner = f_not(f->f);
                return complement(compile_exists(f->vars, inner));
            }
        }
        throw error("corrupt formula node");
    }

    MultiTrackAutomaton compile_exists(const std::vector<std::string>& vars, const FormulaPtr& body) {
        std::vector<FormulaPtr> parts;
        flatten_and(body, parts);
        std::vector<MultiTrackAutomaton> conjuncts;
        conjuncts.reserve(parts.size());
        for (const auto& p : parts) conjuncts.push_back(compile_node(p));
        return eliminate(std::move(conjuncts), vars);
    }

    MultiTrackAutomaton compile_compare(const FormulaPtr& f) {
        std::vector<std::string> vars;
        detail::collect_term_vars(f->lhs, vars);
        detail::collect_term_vars(f->rhs, vars);

        if (vars.empty()) {
            // both sides constant
            auto eval = [](const TermPtr& t) -> uint64_t {
                if (t->kind != TermNode::Const) throw error("constant term expected");
                return t->value;
            };
            int64_t c = static_cast<int64_t>(eval(f->lhs)) - static_cast<int64_t>(eval(f->rhs));
            return apply_compare(f->op, c) ? universal_sentence()
                                           : empty_automaton(TrackSignature({}));
        }

        int base = bases_.base_of(vars[0]);
        if (base != 2) {
            if (f->lhs->kind != TermNode::Var || f->rhs->kind != TermNode::Var)
                throw error("arithmetic comparison requires binary variables");
            return instantiate(build_compare(f->op, base), {f->lhs->var, f->rhs->var});
        }

        Lowering ctx;
        std::string x = lower_term(f->lhs, ctx);
        std::string y = lower_term(f->rhs, ctx);
        ctx.constraints.push_back(instantiate(build_compare(f->op, 2), {x, y}));
        return eliminate(std::move(ctx.constraints), std::move(ctx.aux));
    }

    MultiTrackAutomaton compile_call(const FormulaPtr& f) {
        const MultiTrackAutomaton& callee = env_.acceptor(f->name);
        Lowering ctx;
        std::vector<std::string> argnames;
        argnames.reserve(f->args.size());
        for (const auto& a : f->args)
            argnames.push_back(a->kind == TermNode::Var ? a->var : lower_term(a, ctx));
        ctx.constraints.push_back(instantiate(callee, argnames));
        return eliminate(std::move(ctx.constraints), std::move(ctx.aux));
    }

    MultiTrackAutomaton compile_output_compare(const FormulaPtr& f) {
        Lowering ctx;
        auto lower_ref = [&](const OutputRef& ref) {
            std::vector<std::string> argnames;
            for (const auto& a : ref.args)
                argnames.push_back(a->kind == TermNode::Var ? a->var : lower_term(a, ctx));
            return argnames;
        };

        const OutputAutomaton& lhs = env_.output(f->out_lhs->name);
        std::vector<std::string> largs = lower_ref(*f->out_lhs);
        std::vector<int> lvals = output_values(lhs);

        std::vector<MultiTrackAutomaton> alternatives;
        if (f->out_rhs) {
            const OutputAutomaton& rhs = env_.output(f->out_rhs->name);
            std::vector<std::string> rargs = lower_ref(*f->out_rhs);
            std::vector<int> rvals = output_values(rhs);
            for (int lv : lvals)
                for (int rv : rvals) {
                    if (!apply_compare(f->op, lv - rv)) continue;
                    alternatives.push_back(
                        boolean_combine(BoolOp::And, instantiate(slice_output(lhs, lv), largs),
                                        instantiate(slice_output(rhs, rv), rargs)));
                }
        } else {
            for (int lv : lvals) {
                if (!apply_compare(f->op, lv - *f->out_value)) continue;
                alternatives.push_back(instantiate(slice_output(lhs, lv), largs));
            }
        }

        MultiTrackAutomaton disjunction;
        if (alternatives.empty()) {
            // no output value can satisfy the comparison
            MultiTrackAutomaton any = instantiate(slice_output(lhs, lvals[0]), largs);
            disjunction = boolean_combine(BoolOp::And, any, complement(any));
        } else {
            disjunction = std::move(alternatives[0]);
            for (size_t i = 1; i < alternatives.size(); ++i)
                disjunction = boolean_combine(BoolOp::Or, disjunction, alternatives[i]);
        }
        ctx.constraints.push_back(std::move(disjunction));
        return eliminate(std::move(ctx.constraints), std::move(ctx.aux));
    }

    const Env& env_;
    const BaseHints& hints_;
    detail::BaseInference bases_;
    int fresh_ = 0;
};

// Compile a formula against an environment; the automaton's tracks are the
// formula's free variables.
inline MultiTrackAutomaton compile(const FormulaPtr& f, const Env& env, const BaseHints& hints = {}) {
    return Compiler(env, hints).compile(f);
}

// Truth of a closed formula: the compiled automaton accepts the empty word.
inline bool eval_sentence(const FormulaPtr& f, const Env& env, const BaseHints& hints = {}) {
    MultiTrackAutomaton a = compile(f, env, hints);
    if (a.sig.track_count() != 0)
        throw error("eval: formula has free variables");
    return a.accepting[a.initial] != 0;
}

}  // namespace ovlf
