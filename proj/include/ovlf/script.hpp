#pragma once

// Script language for defining automata by regular expressions and
// first-order formulas. Statements end with ':'; '#' starts a line comment.
//
//   reg NAME lsd_k [lsd_k ...] "pattern":
//   def NAME "formula":
//   def NAME countvar "formula":
//   eval NAME "formula":
//   combine NAME part=value [part=value ...]:
//
// Formula syntax: E/A quantifiers with maximal scope (the bound variables
// may be glued to the quantifier letter, as in "Ei,n,l"), connectives
// ~ & | ^ => <=> in decreasing binding strength, $name(args) calls,
// NAME[i][j] output-automaton lookups compared with @value or each other,
// and term comparisons over + - and constant * /. A ?lsd_k marker supplies
// a base hint for the next variable; a track base demanded by a called
// automaton always wins over such hints.

#include <cctype>

#include "ovlf/logic.hpp"

namespace ovlf {

struct Statement {
    enum Kind { Reg, Def, Eval, Combine } kind;
    std::string name;
    std::vector<int> bases;                             // Reg
    std::string pattern;                                // Reg
    std::string formula_text;                           // Def/Eval
    std::string count_var;                              // Def with counting variable
    std::vector<std::pair<std::string, int>> parts;     // Combine
    int line = 1;
};

using Script = std::vector<Statement>;

namespace detail {

struct Token {
    enum Kind {
        Ident, Number, Annot, Dollar, At, LParen, RParen, LBracket, RBracket,
        Comma, Plus, Minus, Star, Slash, Tilde, Amp, Pipe, Caret,
        Eq, Ne, Lt, Le, Gt, Ge, Implies, Iff, End
    } kind;
    std::string text;
    uint64_t number = 0;
    int base = 0;       // Annot
    size_t pos = 0;
};

class FormulaLexer {
public:
    explicit FormulaLexer(std::string_view text) : text_(text) { advance(); }

    const Token& peek() const { return tok_; }
    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw error("formula: " + msg + " near offset " + std::to_string(tok_.pos));
    }

private:
    void advance() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        tok_ = Token{Token::End, "", 0, 0, pos_};
        if (pos_ >= text_.size()) return;
        char c = text_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            tok_ = Token{Token::Ident, std::string(text_.substr(start, pos_ - start)), 0, 0, start};
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            uint64_t v = 0;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                v = v * 10 + static_cast<uint64_t>(text_[pos_++] - '0');
            tok_ = Token{Token::Number, "", v, 0, start};
            return;
        }
        size_t start = pos_;
        auto two = [&](char a, char b) {
            return c == a && pos_ + 1 < text_.size() && text_[pos_ + 1] == b;
        };
        if (c == '<' && pos_ + 2 < text_.size() && text_[pos_ + 1] == '=' && text_[pos_ + 2] == '>') {
            pos_ += 3;
            tok_ = Token{Token::Iff, "<=>", 0, 0, start};
            return;
        }
        if (two('<', '=')) { pos_ += 2; tok_ = Token{Token::Le, "<=", 0, 0, start}; return; }
        if (two('>', '=')) { pos_ += 2; tok_ = Token{Token::Ge, ">=", 0, 0, start}; return; }
        if (two('!', '=')) { pos_ += 2; tok_ = Token{Token::Ne, "!=", 0, 0, start}; return; }
        if (two('=', '>')) { pos_ += 2; tok_ = Token{Token::Implies, "=>", 0, 0, start}; return; }
        if (c == '?') {
            ++pos_;
            size_t ns = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            std::string sys(text_.substr(ns, pos_ - ns));
            int base = 0;
            if (sys == "lsd_2") base = 2;
            else if (sys == "lsd_3") base = 3;
            else if (sys == "lsd_6") base = 6;
            else if (sys.rfind("msd", 0) == 0)
                throw error("formula: msd-first numeration is not supported");
            else
                throw error("formula: unknown numeration system '?" + sys + "'");
            tok_ = Token{Token::Annot, sys, 0, base, start};
            return;
        }
        ++pos_;
        switch (c) {
            case '$': tok_ = Token{Token::Dollar, "$", 0, 0, start}; return;
            case '@': tok_ = Token{Token::At, "@", 0, 0, start}; return;
            case '(': tok_ = Token{Token::LParen, "(", 0, 0, start}; return;
            case ')': tok_ = Token{Token::RParen, ")", 0, 0, start}; return;
            case '[': tok_ = Token{Token::LBracket, "[", 0, 0, start}; return;
            case ']': tok_ = Token{Token::RBracket, "]", 0, 0, start}; return;
            case ',': tok_ = Token{Token::Comma, ",", 0, 0, start}; return;
            case '+': tok_ = Token{Token::Plus, "+", 0, 0, start}; return;
            case '-': tok_ = Token{Token::Minus, "-", 0, 0, start}; return;
            case '*': tok_ = Token{Token::Star, "*", 0, 0, start}; return;
            case '/': tok_ = Token{Token::Slash, "/", 0, 0, start}; return;
            case '~': tok_ = Token{Token::Tilde, "~", 0, 0, start}; return;
            case '&': tok_ = Token{Token::Amp, "&", 0, 0, start}; return;
            case '|': tok_ = Token{Token::Pipe, "|", 0, 0, start}; return;
            case '^': tok_ = Token{Token::Caret, "^", 0, 0, start}; return;
            case '=': tok_ = Token{Token::Eq, "=", 0, 0, start}; return;
            case '<': tok_ = Token{Token::Lt, "<", 0, 0, start}; return;
            case '>': tok_ = Token{Token::Gt, ">", 0, 0, start}; return;
        }
        throw error(std::string("formula: unexpected character '") + c + "' at offset " +
                    std::to_string(start));
    }

    std::string_view text_;
    size_t pos_ = 0;
    Token tok_;
};

class FormulaParser {
public:
    explicit FormulaParser(std::string_view text) : lex_(text) {}

    FormulaPtr parse(BaseHints& hints_out) {
        FormulaPtr f = parse_iff();
        if (lex_.peek().kind != Token::End) lex_.fail("trailing input");
        hints_out = std::move(hints_);
        return f;
    }

private:
    // precedence: ~  &  |  ^  =>  <=>   with quantifiers scoping maximally
    FormulaPtr parse_iff() {
        FormulaPtr f = parse_implies();
        while (lex_.peek().kind == Token::Iff) {
            lex_.take();
            f = f_binary(FormulaNode::Iff, f, parse_implies());
        }
        return f;
    }

    FormulaPtr parse_implies() {
        FormulaPtr f = parse_xor();
        if (lex_.peek().kind == Token::Implies) {
            lex_.take();
            return f_binary(FormulaNode::Implies, f, parse_implies());
        }
        return f;
    }

    FormulaPtr parse_xor() {
        FormulaPtr f = parse_or();
        while (lex_.peek().kind == Token::Caret) {
            lex_.take();
            FormulaPtr g = parse_or();
            f = f_binary(FormulaNode::Iff, f, f_not(g));   // xor = not iff
        }
        return f;
    }

    FormulaPtr parse_or() {
        FormulaPtr f = parse_and();
        while (lex_.peek().kind == Token::Pipe) {
            lex_.take();
            f = f_binary(FormulaNode::Or, f, parse_and());
        }
        return f;
    }

    FormulaPtr parse_and() {
        FormulaPtr f = parse_unary();
        while (lex_.peek().kind == Token::Amp) {
            lex_.take();
            f = f_binary(FormulaNode::And, f, parse_unary());
        }
        return f;
    }

    FormulaPtr parse_unary() {
        // base hints may precede anything; attach them to the next variable
        while (lex_.peek().kind == Token::Annot) pending_base_ = lex_.take().base;

        const Token& t = lex_.peek();
        if (t.kind == Token::Tilde) {
            lex_.take();
            return f_not(parse_unary());
        }
        if (t.kind == Token::Ident && !t.text.empty() && (t.text[0] == 'A' || t.text[0] == 'E') &&
            !followed_by_bracket()) {
            Token q = lex_.take();
            bool universal = q.text[0] == 'A';
            std::vector<std::string> vars;
            if (q.text.size() > 1) vars.push_back(q.text.substr(1));
            while (vars.empty() || lex_.peek().kind == Token::Comma) {
                if (lex_.peek().kind == Token::Comma) lex_.take();
                if (lex_.peek().kind != Token::Ident) lex_.fail("expected quantified variable");
                vars.push_back(lex_.take().text);
            }
            FormulaPtr body = parse_iff();   // maximal scope
            return f_quantifier(universal ? FormulaNode::Forall : FormulaNode::Exists,
                                std::move(vars), body);
        }
        return parse_primary();
    }

    bool followed_by_bracket() {
        // distinguish quantifiers from output-automaton names such as A[..]
        FormulaLexer save = lex_;
        save.take();
        return save.peek().kind == Token::LBracket;
    }

    FormulaPtr parse_primary() {
        const Token& t = lex_.peek();
        if (t.kind == Token::LParen) {
            lex_.take();
            FormulaPtr f = parse_iff();
            expect(Token::RParen, "')'");
            return f;
        }
        if (t.kind == Token::Dollar) {
            lex_.take();
            if (lex_.peek().kind != Token::Ident) lex_.fail("expected automaton name after '$'");
            std::string name = lex_.take().text;
            expect(Token::LParen, "'('");
            std::vector<TermPtr> args;
            if (lex_.peek().kind != Token::RParen) {
                args.push_back(parse_term());
                while (lex_.peek().kind == Token::Comma) {
                    lex_.take();
                    args.push_back(parse_term());
                }
            }
            expect(Token::RParen, "')'");
            return f_call(std::move(name), std::move(args));
        }
        // output-automaton reference or term comparison
        if (t.kind == Token::Ident && is_output_ref()) {
            OutputRef lhs = parse_output_ref();
            CompareOp op = parse_compare_op();
            FormulaNode n{FormulaNode::OutputCompare};
            n.op = op;
            n.out_lhs = std::move(lhs);
            if (lex_.peek().kind == Token::At) {
                lex_.take();
                if (lex_.peek().kind != Token::Number) lex_.fail("expected number after '@'");
                n.out_value = static_cast<int>(lex_.take().number);
            } else {
                n.out_rhs = parse_output_ref();
            }
            return make_formula(std::move(n));
        }
        TermPtr lhs = parse_term();
        CompareOp op = parse_compare_op();
        TermPtr rhs = parse_term();
        return f_compare(op, std::move(lhs), std::move(rhs));
    }

    bool is_output_ref() {
        FormulaLexer save = lex_;
        save.take();
        return save.peek().kind == Token::LBracket;
    }

    OutputRef parse_output_ref() {
        if (lex_.peek().kind != Token::Ident) lex_.fail("expected output automaton name");
        OutputRef ref;
        ref.name = lex_.take().text;
        while (lex_.peek().kind == Token::LBracket) {
            lex_.take();
            ref.args.push_back(parse_term());
            expect(Token::RBracket, "']'");
        }
        if (ref.args.empty()) lex_.fail("output automaton reference needs at least one index");
        return ref;
    }

    CompareOp parse_compare_op() {
        switch (lex_.peek().kind) {
            case Token::Eq: lex_.take(); return CompareOp::Eq;
            case Token::Ne: lex_.take(); return CompareOp::Ne;
            case Token::Lt: lex_.take(); return CompareOp::Lt;
            case Token::Le: lex_.take(); return CompareOp::Le;
            case Token::Gt: lex_.take(); return CompareOp::Gt;
            case Token::Ge: lex_.take(); return CompareOp::Ge;
            default: lex_.fail("expected comparison operator");
        }
        return CompareOp::Eq;
    }

    // term := factor (('+'|'-') factor)*
    // factor := atom (('*'|'/') atom)*  with one side of '*' a constant
    TermPtr parse_term() {
        TermPtr t = parse_factor();
        for (;;) {
            if (lex_.peek().kind == Token::Plus) {
                lex_.take();
                t = term_add(t, parse_factor());
            } else if (lex_.peek().kind == Token::Minus) {
                lex_.take();
                t = term_sub(t, parse_factor());
            } else {
                return t;
            }
        }
    }

    TermPtr parse_factor() {
        TermPtr t = parse_term_atom();
        for (;;) {
            if (lex_.peek().kind == Token::Star) {
                lex_.take();
                TermPtr u = parse_term_atom();
                if (t->kind == TermNode::Const) t = term_mul(t->value, u);
                else if (u->kind == TermNode::Const) t = term_mul(u->value, t);
                else lex_.fail("multiplication requires a constant operand");
            } else if (lex_.peek().kind == Token::Slash) {
                lex_.take();
                TermPtr u = parse_term_atom();
                if (u->kind != TermNode::Const) lex_.fail("division requires a constant divisor");
                t = term_div(t, u->value);
            } else {
                return t;
            }
        }
    }

    TermPtr parse_term_atom() {
        while (lex_.peek().kind == Token::Annot) pending_base_ = lex_.take().base;
        const Token& t = lex_.peek();
        if (t.kind == Token::Number) return term_const(lex_.take().number);
        if (t.kind == Token::Ident) {
            std::string name = lex_.take().text;
            if (pending_base_) {
                hints_.emplace_back(name, *pending_base_);
                pending_base_.reset();
            }
            return term_var(std::move(name));
        }
        if (t.kind == Token::LParen) {
            lex_.take();
            TermPtr inner = parse_term();
            expect(Token::RParen, "')'");
            return inner;
        }
        lex_.fail("expected a term");
        return nullptr;
    }

    void expect(Token::Kind k, const std::string& what) {
        if (lex_.peek().kind != k) lex_.fail("expected " + what);
        lex_.take();
    }

    FormulaLexer lex_;
    BaseHints hints_;
    std::optional<int> pending_base_;
};

}  // namespace detail

// Parse a formula in the query syntax; annotations are returned as hints.
inline FormulaPtr parse_formula(std::string_view text, BaseHints& hints) {
    return detail::FormulaParser(text).parse(hints);
}

inline FormulaPtr parse_formula(std::string_view text) {
    BaseHints hints;
    return parse_formula(text, hints);
}

// ---------------------------------------------------------------------------
// Statement parsing

namespace detail {

class ScriptParser {
public:
    explicit ScriptParser(std::string_view text) : text_(text) {}

    Script parse() {
        Script script;
        for (;;) {
            skip_space_and_comments();
            if (pos_ >= text_.size()) break;
            script.push_back(parse_statement());
        }
        return script;
    }

private:
    Statement parse_statement() {
        Statement st;
        st.line = line_;
        std::string kw = read_word();
        if (kw == "reg") {
            st.kind = Statement::Reg;
            st.name = read_word();
            for (;;) {
                skip_space_and_comments();
                if (pos_ < text_.size() && text_[pos_] == '"') break;
                std::string sys = read_word();
                if (sys == "lsd_2") st.bases.push_back(2);
                else if (sys == "lsd_3") st.bases.push_back(3);
                else if (sys == "lsd_6") st.bases.push_back(6);
                else fail("unknown numeration system '" + sys + "' in reg");
            }
            if (st.bases.empty()) fail("reg needs at least one numeration system");
            st.pattern = read_quoted();
        } else if (kw == "def" || kw == "eval") {
            st.kind = kw == "def" ? Statement::Def : Statement::Eval;
            st.name = read_word();
            skip_space_and_comments();
            if (pos_ < text_.size() && text_[pos_] != '"') st.count_var = read_word();
            st.formula_text = read_quoted();
        } else if (kw == "combine") {
            st.kind = Statement::Combine;
            st.name = read_word();
            for (;;) {
                skip_space_and_comments();
                if (pos_ >= text_.size()) fail("combine: missing ':'");
                if (text_[pos_] == ':') break;
                std::string part = read_word();
                skip_space_and_comments();
                if (pos_ >= text_.size() || text_[pos_] != '=') fail("combine: expected '='");
                ++pos_;
                skip_space_and_comments();
                int value = 0;
                bool any = false;
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                    value = value * 10 + (text_[pos_++] - '0');
                    any = true;
                }
                if (!any) fail("combine: expected output value");
                st.parts.emplace_back(part, value);
            }
            if (st.parts.empty()) fail("combine needs at least one part");
        } else {
            fail("unknown statement '" + kw + "'");
        }
        skip_space_and_comments();
        if (pos_ >= text_.size() || text_[pos_] != ':') fail("statement must end with ':'");
        ++pos_;
        return st;
    }

    std::string read_word() {
        skip_space_and_comments();
        size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        if (start == pos_) fail("expected identifier");
        return std::string(text_.substr(start, pos_ - start));
    }

    std::string read_quoted() {
        skip_space_and_comments();
        if (pos_ >= text_.size() || text_[pos_] != '"') fail("expected '\"'");
        ++pos_;
        size_t start = pos_;
        while (pos_ < text_.size() && text_[pos_] != '"') {
            if (text_[pos_] == '\n') ++line_;
            ++pos_;
        }
        if (pos_ >= text_.size()) fail("unterminated string");
        std::string s(text_.substr(start, pos_ - start));
        ++pos_;
        return s;
    }

    void skip_space_and_comments() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '\n') { ++line_; ++pos_; }
            else if (std::isspace(static_cast<unsigned char>(c))) ++pos_;
            else if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw error("script line " + std::to_string(line_) + ": " + msg);
    }

    std::string_view text_;
    size_t pos_ = 0;
    int line_ = 1;
};

}  // namespace detail

inline Script parse_script(std::string_view text) {
    return detail::ScriptParser(text).parse();
}

}  // namespace ovlf
