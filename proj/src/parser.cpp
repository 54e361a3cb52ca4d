// SPDX-License-Identifier: Apache-2.0
#include <cctype>
#include <optional>
#include <set>
#include <sstream>

#include "eqrefute/ast.hpp"

namespace eqrefute {

namespace {

enum class Tok {
    Ident,
    Number,
    KwIf,
    KwElse,
    KwElif,
    KwWhile,
    KwReturn,
    KwProb,
    KwSample,
    KwAnd,
    KwOr,
    KwNot,
    Assign,   // :=
    Le,
    Ge,
    Lt,
    Gt,
    EqEq,
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Colon,
    Semicolon,
    End,
};

struct Token {
    Tok kind;
    std::string text;
    SourceSpan span;
};

[[noreturn]] void fail(const SourceSpan& span, const std::string& msg) {
    std::ostringstream os;
    os << span.line << ":" << span.col << ": " << msg;
    throw ParseError(os.str());
}

std::vector<Token> lex(const std::string& src) {
    std::vector<Token> out;
    int line = 1, col = 1;
    size_t i = 0;
    auto push = [&](Tok k, std::string text, int tline, int tcol) {
        out.push_back({k, std::move(text), {tline, tcol}});
    };
    while (i < src.size()) {
        char c = src[i];
        if (c == '\n') {
            ++line;
            col = 1;
            ++i;
            continue;
        }
        if (c == ' ' || c == '\t' || c == '\r') {
            ++col;
            ++i;
            continue;
        }
        if (c == '#') {
            while (i < src.size() && src[i] != '\n') ++i;
            continue;
        }
        int tline = line, tcol = col;
        auto advance = [&](size_t n) {
            i += n;
            col += static_cast<int>(n);
        };
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t j = i;
            while (j < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
                ++j;
            std::string word = src.substr(i, j - i);
            advance(j - i);
            Tok k = Tok::Ident;
            if (word == "if") k = Tok::KwIf;
            else if (word == "else") k = Tok::KwElse;
            else if (word == "elif") k = Tok::KwElif;
            else if (word == "while") k = Tok::KwWhile;
            else if (word == "return") k = Tok::KwReturn;
            else if (word == "prob") k = Tok::KwProb;
            else if (word == "sample") k = Tok::KwSample;
            else if (word == "and") k = Tok::KwAnd;
            else if (word == "or") k = Tok::KwOr;
            else if (word == "not") k = Tok::KwNot;
            push(k, word, tline, tcol);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            // Decimal part or a p/q literal (no spaces around the slash).
            if (j < src.size() && src[j] == '.' && j + 1 < src.size() &&
                std::isdigit(static_cast<unsigned char>(src[j + 1]))) {
                ++j;
                while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            } else if (j < src.size() && src[j] == '/' && j + 1 < src.size() &&
                       std::isdigit(static_cast<unsigned char>(src[j + 1]))) {
                ++j;
                while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            }
            std::string text = src.substr(i, j - i);
            advance(j - i);
            push(Tok::Number, text, tline, tcol);
            continue;
        }
        auto two = src.substr(i, 2);
        if (two == ":=") { advance(2); push(Tok::Assign, ":=", tline, tcol); continue; }
        if (two == "<=") { advance(2); push(Tok::Le, "<=", tline, tcol); continue; }
        if (two == ">=") { advance(2); push(Tok::Ge, ">=", tline, tcol); continue; }
        if (two == "==") { advance(2); push(Tok::EqEq, "==", tline, tcol); continue; }
        switch (c) {
            case '<': advance(1); push(Tok::Lt, "<", tline, tcol); continue;
            case '>': advance(1); push(Tok::Gt, ">", tline, tcol); continue;
            case '+': advance(1); push(Tok::Plus, "+", tline, tcol); continue;
            case '-': advance(1); push(Tok::Minus, "-", tline, tcol); continue;
            case '*': advance(1); push(Tok::Star, "*", tline, tcol); continue;
            case '^': advance(1); push(Tok::Caret, "^", tline, tcol); continue;
            case '(': advance(1); push(Tok::LParen, "(", tline, tcol); continue;
            case ')': advance(1); push(Tok::RParen, ")", tline, tcol); continue;
            case '{': advance(1); push(Tok::LBrace, "{", tline, tcol); continue;
            case '}': advance(1); push(Tok::RBrace, "}", tline, tcol); continue;
            case ',': advance(1); push(Tok::Comma, ",", tline, tcol); continue;
            case ':': advance(1); push(Tok::Colon, ":", tline, tcol); continue;
            case ';': advance(1); push(Tok::Semicolon, ";", tline, tcol); continue;
            default:
                fail({tline, tcol}, std::string("unexpected character '") + c + "'");
        }
    }
    push(Tok::End, "", line, col);
    return out;
}

class Parser {
public:
    explicit Parser(const std::string& src) : tokens_(lex(src)) {
        collect_variables();
    }

    ProgramAst parse() {
        ProgramAst prog;
        prog.vars = vars_;
        prog.stmts = parse_stmt_list(Tok::End);
        expect(Tok::End, "end of input");
        finalize(prog);
        return prog;
    }

private:
    std::vector<Token> tokens_;
    size_t pos_ = 0;
    std::vector<std::string> vars_;

    const Token& cur() const { return tokens_[pos_]; }
    const Token& peek(size_t k = 1) const {
        return tokens_[std::min(pos_ + k, tokens_.size() - 1)];
    }
    Token take() { return tokens_[pos_++]; }
    bool at(Tok k) const { return cur().kind == k; }
    bool accept(Tok k) {
        if (!at(k)) return false;
        ++pos_;
        return true;
    }
    Token expect(Tok k, const std::string& what) {
        if (!at(k)) fail(cur().span, "expected " + what + ", got '" + cur().text + "'");
        return take();
    }

    // Assignment targets define the variable universe, in textual order.
    void collect_variables() {
        std::set<std::string> seen;
        for (size_t i = 0; i + 1 < tokens_.size(); ++i) {
            if (tokens_[i].kind == Tok::Ident && tokens_[i + 1].kind == Tok::Assign &&
                !seen.count(tokens_[i].text)) {
                seen.insert(tokens_[i].text);
                vars_.push_back(tokens_[i].text);
            }
        }
    }

    size_t var_index(const Token& tok) const {
        for (size_t i = 0; i < vars_.size(); ++i)
            if (vars_[i] == tok.text) return i;
        fail(tok.span, "variable '" + tok.text + "' is never assigned");
    }

    std::vector<Stmt> parse_stmt_list(Tok terminator) {
        std::vector<Stmt> out;
        while (true) {
            while (accept(Tok::Semicolon)) {}
            if (cur().kind == terminator || at(Tok::End)) break;
            out.push_back(parse_stmt());
        }
        return out;
    }

    std::vector<Stmt> parse_block() {
        expect(Tok::LBrace, "'{'");
        auto body = parse_stmt_list(Tok::RBrace);
        expect(Tok::RBrace, "'}'");
        return body;
    }

    Stmt parse_stmt() {
        const Token& t = cur();
        switch (t.kind) {
            case Tok::KwIf:
                return parse_if();
            case Tok::KwWhile:
                return parse_while();
            case Tok::KwReturn:
                return parse_return();
            case Tok::Ident:
                return parse_assign();
            default:
                fail(t.span, "expected a statement, got '" + t.text + "'");
        }
    }

    Stmt parse_assign() {
        Stmt s;
        s.span = cur().span;
        Token name = expect(Tok::Ident, "variable name");
        s.var = var_index(name);
        expect(Tok::Assign, "':='");
        if (at(Tok::KwSample)) {
            take();
            expect(Tok::LParen, "'('");
            s.kind = StmtKind::Sample;
            s.dist = parse_dist();
            expect(Tok::RParen, "')'");
        } else {
            s.kind = StmtKind::Assign;
            s.expr = parse_expr();
        }
        return s;
    }

    Stmt parse_if() {
        Stmt s;
        s.span = expect(Tok::KwIf, "'if'").span;
        if (at(Tok::KwProb)) {
            take();
            expect(Tok::LParen, "'('");
            Token num = expect(Tok::Number, "probability literal");
            s.kind = StmtKind::IfProb;
            s.prob = parse_rational(num.text);
            if (s.prob < 0 || s.prob > 1)
                fail(num.span, "prob literal must lie in [0, 1], got " + num.text);
            expect(Tok::RParen, "')'");
        } else {
            s.kind = StmtKind::IfPred;
            s.pred = parse_pred();
        }
        s.then_branch = parse_block();
        if (accept(Tok::KwElse)) {
            s.else_branch = parse_block();
        } else if (at(Tok::KwElif)) {
            // elif desugars to a single-statement else block.
            Token elif = take();
            tokens_[pos_ - 1].kind = Tok::KwIf;  // reinterpret for recursion
            --pos_;
            Stmt nested = parse_if();
            nested.span = elif.span;
            s.else_branch.push_back(std::move(nested));
        }
        return s;
    }

    Stmt parse_while() {
        Stmt s;
        s.span = expect(Tok::KwWhile, "'while'").span;
        s.kind = StmtKind::While;
        s.pred = parse_pred();
        s.body = parse_block();
        return s;
    }

    Stmt parse_return() {
        Stmt s;
        s.span = expect(Tok::KwReturn, "'return'").span;
        s.kind = StmtKind::Return;
        s.ret.push_back(var_index(expect(Tok::Ident, "variable name")));
        while (accept(Tok::Comma))
            s.ret.push_back(var_index(expect(Tok::Ident, "variable name")));
        return s;
    }

    DistributionSpec parse_dist() {
        Token name = expect(Tok::Ident, "distribution name");
        DistributionSpec d;
        auto args_open = [&] { expect(Tok::LParen, "'('"); };
        auto args_close = [&] { expect(Tok::RParen, "')'"); };
        if (name.text == "bernoulli") {
            d.kind = DistKind::Bernoulli;
            args_open();
            d.a = parse_signed_rational();
            args_close();
        } else if (name.text == "uniform" || name.text == "uniformint" ||
                   name.text == "normal") {
            d.kind = name.text == "uniform"      ? DistKind::Uniform
                     : name.text == "uniformint" ? DistKind::UniformInt
                                                 : DistKind::Normal;
            args_open();
            d.a = parse_signed_rational();
            expect(Tok::Comma, "','");
            d.b = parse_signed_rational();
            args_close();
        } else if (name.text == "discrete") {
            d.kind = DistKind::Discrete;
            args_open();
            do {
                Rational v = parse_signed_rational();
                expect(Tok::Colon, "':'");
                Rational p = parse_signed_rational();
                d.entries.emplace_back(v, p);
            } while (accept(Tok::Comma));
            args_close();
        } else {
            fail(name.span, "unknown distribution '" + name.text + "'");
        }
        try {
            d.validate();
        } catch (const ParseError& e) {
            fail(name.span, e.what());
        }
        return d;
    }

    Rational parse_signed_rational() {
        bool neg = accept(Tok::Minus);
        Token num = expect(Tok::Number, "rational literal");
        Rational r = parse_rational(num.text);
        return neg ? -r : r;
    }

    // polyexpr := term (('+'|'-') term)*
    Polynomial parse_expr() {
        Polynomial acc = parse_term();
        while (at(Tok::Plus) || at(Tok::Minus)) {
            bool minus = take().kind == Tok::Minus;
            Polynomial rhs = parse_term();
            acc = minus ? acc - rhs : acc + rhs;
        }
        return acc;
    }

    Polynomial parse_term() {
        Polynomial acc = parse_factor();
        while (at(Tok::Star)) {
            take();
            acc = acc * parse_factor();
        }
        return acc;
    }

    Polynomial parse_factor() {
        Polynomial base(vars_.size());
        if (accept(Tok::Minus)) {
            return -parse_factor();
        } else if (at(Tok::Number)) {
            base = Polynomial::constant(vars_.size(), parse_rational(take().text));
        } else if (at(Tok::Ident)) {
            Token name = take();
            base = Polynomial::variable(vars_.size(), var_index(name));
        } else if (accept(Tok::LParen)) {
            base = parse_expr();
            expect(Tok::RParen, "')'");
        } else {
            fail(cur().span, "expected an expression, got '" + cur().text + "'");
        }
        if (accept(Tok::Caret)) {
            Token e = expect(Tok::Number, "integer exponent");
            Rational r = parse_rational(e.text);
            if (!is_integer(r) || r < 0) fail(e.span, "exponent must be a nonnegative integer");
            base = base.pow(static_cast<unsigned>(r.get_num().get_ui()));
        }
        return base;
    }

    // pred := and_pred ('or' and_pred)*
    LinearPredicate parse_pred() {
        LinearPredicate acc = parse_and_pred();
        while (accept(Tok::KwOr)) acc = acc.disjoin(parse_and_pred());
        return acc;
    }

    LinearPredicate parse_and_pred() {
        LinearPredicate acc = parse_not_pred();
        while (accept(Tok::KwAnd)) acc = acc.conjoin(parse_not_pred());
        return acc;
    }

    LinearPredicate parse_not_pred() {
        if (accept(Tok::KwNot)) return parse_not_pred().negated();
        if (at(Tok::LParen)) {
            // Either a parenthesized predicate or the left side of a
            // comparison; try the predicate reading first and backtrack.
            size_t save = pos_;
            try {
                take();
                LinearPredicate inner = parse_pred();
                expect(Tok::RParen, "')'");
                return inner;
            } catch (const ParseError&) {
                pos_ = save;
            }
        }
        return parse_comparison();
    }

    LinearPredicate parse_comparison() {
        SourceSpan span = cur().span;
        Polynomial lhs = parse_expr();
        Tok op = cur().kind;
        if (op != Tok::Le && op != Tok::Ge && op != Tok::Lt && op != Tok::Gt &&
            op != Tok::EqEq)
            fail(cur().span, "expected a comparison operator, got '" + cur().text + "'");
        take();
        Polynomial rhs = parse_expr();
        LinearExpr le = to_linear(lhs - rhs, span);  // le cmp 0
        LinearAtom atom;
        switch (op) {
            case Tok::Le: atom = {-le, false}; break;
            case Tok::Ge: atom = {le, false}; break;
            case Tok::Lt: atom = {-le, true}; break;
            case Tok::Gt: atom = {le, true}; break;
            default: {
                LinearPredicate both = LinearPredicate::single({le, false});
                return both.conjoin(LinearPredicate::single({-le, false}));
            }
        }
        return LinearPredicate::single(atom);
    }

    LinearExpr to_linear(const Polynomial& p, const SourceSpan& span) const {
        if (p.total_degree() > 1) fail(span, "guard atoms must be linear");
        LinearExpr e(vars_.size());
        for (const auto& [m, c] : p.terms()) {
            if (m.is_constant()) {
                e.constant = c;
                continue;
            }
            for (size_t i = 0; i < vars_.size(); ++i)
                if (m.exps[i] == 1) e.coeffs[i] = c;
        }
        return e;
    }

    // Definite initialization, return placement, and x_init extraction.
    void finalize(ProgramAst& prog) {
        if (prog.stmts.empty()) fail({1, 1}, "empty program");
        for (size_t i = 0; i < prog.stmts.size(); ++i) {
            bool is_last = i + 1 == prog.stmts.size();
            if (contains_return(prog.stmts[i]) && !(is_last && prog.stmts[i].kind == StmtKind::Return))
                fail(prog.stmts[i].span, "return must be the final top-level statement");
        }
        if (prog.stmts.back().kind != StmtKind::Return)
            fail(prog.stmts.back().span, "program must end with a return statement");
        prog.return_vars = prog.stmts.back().ret;
        std::set<size_t> dup(prog.return_vars.begin(), prog.return_vars.end());
        if (dup.size() != prog.return_vars.size())
            fail(prog.stmts.back().span, "duplicate variable in return");

        for (const Stmt& s : prog.stmts) {
            if (s.kind != StmtKind::Assign || s.expr.total_degree() > 0) break;
            if (prog.initial_assignments.count(s.var)) break;
            Rational c = 0;
            if (!s.expr.terms().empty()) c = s.expr.terms().begin()->second;
            prog.initial_assignments[s.var] = c;
        }

        std::set<size_t> inited;
        for (const auto& [v, c] : prog.initial_assignments) inited.insert(v);
        size_t skip = prog.initial_assignments.size();
        std::vector<const Stmt*> rest;
        for (size_t i = skip; i < prog.stmts.size(); ++i) rest.push_back(&prog.stmts[i]);
        check_init(rest, inited);
    }

    static bool contains_return(const Stmt& s) {
        if (s.kind == StmtKind::Return) return true;
        auto any = [](const std::vector<Stmt>& v) {
            for (const auto& c : v)
                if (contains_return(c)) return true;
            return false;
        };
        return any(s.then_branch) || any(s.else_branch) || any(s.body);
    }

    void require_inited(const std::set<size_t>& inited, size_t var,
                        const SourceSpan& span) const {
        if (!inited.count(var))
            fail(span, "variable '" + vars_[var] + "' may be read before initialization");
    }

    void check_reads_expr(const Polynomial& p, const std::set<size_t>& inited,
                          const SourceSpan& span) const {
        for (const auto& [m, c] : p.terms())
            for (size_t i = 0; i < m.exps.size(); ++i)
                if (m.exps[i] > 0) require_inited(inited, i, span);
    }

    void check_reads_pred(const LinearPredicate& pred, const std::set<size_t>& inited,
                          const SourceSpan& span) const {
        for (const auto& cell : pred.cells)
            for (const auto& atom : cell)
                for (size_t i = 0; i < atom.expr.coeffs.size(); ++i)
                    if (atom.expr.coeffs[i] != 0) require_inited(inited, i, span);
    }

    void check_init(const std::vector<const Stmt*>& stmts, std::set<size_t>& inited) const {
        for (const Stmt* sp : stmts) {
            const Stmt& s = *sp;
            switch (s.kind) {
                case StmtKind::Assign:
                    check_reads_expr(s.expr, inited, s.span);
                    inited.insert(s.var);
                    break;
                case StmtKind::Sample:
                    inited.insert(s.var);
                    break;
                case StmtKind::IfProb:
                case StmtKind::IfPred: {
                    if (s.kind == StmtKind::IfPred) check_reads_pred(s.pred, inited, s.span);
                    std::set<size_t> a = inited, b = inited;
                    check_init(ptrs(s.then_branch), a);
                    check_init(ptrs(s.else_branch), b);
                    // Only joins along both branches survive.
                    std::set<size_t> met;
                    for (size_t v : a)
                        if (b.count(v)) met.insert(v);
                    inited = std::move(met);
                    break;
                }
                case StmtKind::While: {
                    check_reads_pred(s.pred, inited, s.span);
                    std::set<size_t> in_body = inited;
                    check_init(ptrs(s.body), in_body);
                    // The body may execute zero times; nothing is exported.
                    break;
                }
                case StmtKind::Return:
                    for (size_t v : s.ret) require_inited(inited, v, s.span);
                    break;
            }
        }
    }

    static std::vector<const Stmt*> ptrs(const std::vector<Stmt>& v) {
        std::vector<const Stmt*> out;
        out.reserve(v.size());
        for (const auto& s : v) out.push_back(&s);
        return out;
    }
};

void print_stmts(std::ostream& os, const std::vector<Stmt>& stmts,
                 const std::vector<std::string>& names, int indent);

void print_stmt(std::ostream& os, const Stmt& s, const std::vector<std::string>& names,
                int indent) {
    std::string pad(static_cast<size_t>(indent) * 2, ' ');
    switch (s.kind) {
        case StmtKind::Assign:
            os << pad << names[s.var] << " := " << s.expr.to_string(names) << "\n";
            break;
        case StmtKind::Sample:
            os << pad << names[s.var] << " := sample(" << s.dist.to_string() << ")\n";
            break;
        case StmtKind::IfProb:
        case StmtKind::IfPred:
            os << pad << "if ";
            if (s.kind == StmtKind::IfProb)
                os << "prob(" << rational_to_string(s.prob) << ")";
            else
                os << s.pred.to_string(names);
            os << " {\n";
            print_stmts(os, s.then_branch, names, indent + 1);
            os << pad << "}";
            if (!s.else_branch.empty()) {
                os << " else {\n";
                print_stmts(os, s.else_branch, names, indent + 1);
                os << pad << "}";
            }
            os << "\n";
            break;
        case StmtKind::While:
            os << pad << "while " << s.pred.to_string(names) << " {\n";
            print_stmts(os, s.body, names, indent + 1);
            os << pad << "}\n";
            break;
        case StmtKind::Return: {
            os << pad << "return ";
            for (size_t i = 0; i < s.ret.size(); ++i)
                os << (i ? ", " : "") << names[s.ret[i]];
            os << "\n";
            break;
        }
    }
}

void print_stmts(std::ostream& os, const std::vector<Stmt>& stmts,
                 const std::vector<std::string>& names, int indent) {
    for (const auto& s : stmts) print_stmt(os, s, names, indent);
}

}  // namespace

std::shared_ptr<const ProgramAst> parse_program(const std::string& source) {
    Parser p(source);
    return std::make_shared<const ProgramAst>(p.parse());
}

size_t leading_constant_prefix(const ProgramAst& prog) {
    return prog.initial_assignments.size();
}

std::string pretty_print(const ProgramAst& prog) {
    std::ostringstream os;
    print_stmts(os, prog.stmts, prog.vars, 0);
    return os.str();
}

}  // namespace eqrefute
