#include "tracematch/errors.hpp"
#include "tracematch/frontend.hpp"

#include <cctype>

namespace tracematch {

namespace {

enum class Tok { Ident, Int, Char, Str, Punct, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;  // identifier / punctuation / integer digits
    std::u32string str;  // decoded char or string literal
    int line = 0;
    int column = 0;
};

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Lexer {
public:
    Lexer(const std::string& text, Pragmas& pragmas) : s_(text), pragmas_(pragmas) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_space();
            Token t;
            t.line = line_;
            t.column = col();
            if (pos_ >= s_.size()) {
                out.push_back(t);
                return out;
            }
            char c = s_[pos_];
            if (is_ident_start(c)) {
                std::size_t b = pos_;
                while (pos_ < s_.size() && is_ident_char(s_[pos_])) ++pos_;
                t.kind = Tok::Ident;
                t.text = s_.substr(b, pos_ - b);
            } else if (std::isdigit(static_cast<unsigned char>(c))) {
                std::size_t b = pos_;
                while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
                t.kind = Tok::Int;
                t.text = s_.substr(b, pos_ - b);
            } else if (c == '\'') {
                ++pos_;
                t.kind = Tok::Char;
                t.str = quoted('\'', t);
                if (t.str.size() != 1) throw SyntaxError("character literal must hold one character", t.line, t.column);
            } else if (c == '"') {
                ++pos_;
                t.kind = Tok::Str;
                t.str = quoted('"', t);
            } else {
                t.kind = Tok::Punct;
                static const char* two[] = {":=", "==", "!=", "<=", ">=", "&&", "||", "++", "--", "+=", "-="};
                for (const char* p : two)
                    if (s_.compare(pos_, 2, p) == 0) t.text = p;
                if (t.text.empty()) {
                    if (std::string("(){}[],;+-*/%<>!|").find(c) == std::string::npos)
                        throw SyntaxError(std::string("unexpected character '") + c + "'", t.line, t.column);
                    t.text = std::string(1, c);
                }
                pos_ += t.text.size();
            }
            out.push_back(std::move(t));
        }
    }

private:
    int col() const { return static_cast<int>(pos_ - line_start_) + 1; }

    void newline() {
        ++line_;
        line_start_ = pos_;
    }

    void skip_space() {
        while (pos_ < s_.size()) {
            char c = s_[pos_];
            if (c == '\n') {
                ++pos_;
                newline();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else if (s_.compare(pos_, 2, "//") == 0) {
                while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
            } else if (c == '#') {
                if (s_.find_first_not_of(" \t\r", line_start_) != pos_)
                    throw SyntaxError("pragma must start its own line", line_, col());
                pragma();
            } else {
                return;
            }
        }
    }

    void pragma() {
        std::size_t end = s_.find('\n', pos_);
        if (end == std::string::npos) end = s_.size();
        std::string body = s_.substr(pos_ + 1, end - pos_ - 1);
        pos_ = end;
        while (!body.empty() && std::isspace(static_cast<unsigned char>(body.back()))) body.pop_back();
        std::size_t sp = body.find_first_of(" \t");
        std::string key = body.substr(0, sp);
        std::string value;
        if (sp != std::string::npos) {
            std::size_t b = body.find_first_not_of(" \t", sp);
            if (b != std::string::npos) value = body.substr(b);
        }
        pragmas_.entries.emplace_back(std::move(key), std::move(value));
    }

    std::u32string quoted(char quote, const Token& t) {
        std::string raw;
        for (;;) {
            if (pos_ >= s_.size() || s_[pos_] == '\n') throw SyntaxError("unterminated literal", t.line, t.column);
            char c = s_[pos_++];
            if (c == quote) break;
            if (c != '\\') {
                raw.push_back(c);
                continue;
            }
            if (pos_ >= s_.size()) throw SyntaxError("unterminated literal", t.line, t.column);
            char e = s_[pos_++];
            switch (e) {
                case 'n': raw.push_back('\n'); break;
                case 't': raw.push_back('\t'); break;
                case 'r': raw.push_back('\r'); break;
                case '0': raw.push_back('\0'); break;
                case '\\':
                case '\'':
                case '"': raw.push_back(e); break;
                case 'u': {
                    std::size_t close = s_.find('}', pos_);
                    if (pos_ >= s_.size() || s_[pos_] != '{' || close == std::string::npos)
                        throw SyntaxError("malformed \\u escape", t.line, t.column);
                    auto cp = static_cast<char32_t>(std::stoul(s_.substr(pos_ + 1, close - pos_ - 1), nullptr, 16));
                    raw += utf8_encode(cp);
                    pos_ = close + 1;
                    break;
                }
                default: throw SyntaxError(std::string("unknown escape \\") + e, t.line, t.column);
            }
        }
        return utf8_decode(raw);
    }

    const std::string& s_;
    Pragmas& pragmas_;
    std::size_t pos_ = 0;
    std::size_t line_start_ = 0;
    int line_ = 1;
};

namespace S = surface;
using S::And; using S::Or;
using S::Assign; using S::AssignIndex; using S::Break; using S::Call; using S::Cover; using S::Expr;
using S::ExprPtr; using S::ExprStmt; using S::If; using S::Index; using S::Literal; using S::Observe;
using S::ObserveFun; using S::Return; using S::Skip; using S::Unary; using S::Binary; using S::Var;
using S::While; using S::ArrayLit;

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : t_(std::move(toks)) {}

    void program(surface::Program& out) {
        while (!at_end()) {
            if (is_ident("nondet")) {
                const Token& kw = next();
                if (out.nondet_line == 0) out.nondet_line = kw.line;
                do out.nondet_vars.push_back(ident()); while (accept(","));
                expect(";");
            } else if (is_ident("fun")) {
                out.functions.push_back(function());
            } else {
                fail("expected 'fun' or 'nondet'");
            }
        }
        if (out.functions.empty()) throw SyntaxError("program has no function", 1, 1);
    }

private:
    // -- token helpers -------------------------------------------------------
    const Token& peek(std::size_t k = 0) const { return t_[std::min(i_ + k, t_.size() - 1)]; }
    bool at_end() const { return peek().kind == Tok::End; }
    const Token& next() {
        const Token& t = t_[i_];
        if (i_ + 1 < t_.size()) ++i_;
        return t;
    }
    bool is_punct(std::string_view p, std::size_t k = 0) const {
        return peek(k).kind == Tok::Punct && peek(k).text == p;
    }
    bool is_ident(std::string_view w, std::size_t k = 0) const {
        return peek(k).kind == Tok::Ident && peek(k).text == w;
    }
    bool accept(std::string_view p) {
        if (!is_punct(p)) return false;
        next();
        return true;
    }
    [[noreturn]] void fail(const std::string& what) const {
        const Token& t = peek();
        std::string got = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
        if (t.kind == Tok::Char || t.kind == Tok::Str) got = "literal";
        throw SyntaxError(what + ", got " + got, t.line, t.column);
    }
    void expect(std::string_view p) {
        if (!accept(p)) fail("expected '" + std::string(p) + "'");
    }
    std::string ident() {
        if (peek().kind != Tok::Ident || is_keyword(peek().text)) fail("expected identifier");
        return next().text;
    }
    static bool is_keyword(std::string_view w) {
        static const char* kws[] = {"fun", "nondet", "if", "else", "while", "return", "break", "skip",
                                    "observe", "observeFun", "cover", "true", "false", "alloc", "typeof"};
        for (const char* k : kws)
            if (w == k) return true;
        return false;
    }

    // -- declarations and statements ------------------------------------------
    surface::Function function() {
        const Token& kw = next();
        surface::Function f;
        f.line = kw.line;
        f.column = kw.column;
        f.name = ident();
        expect("(");
        if (!is_punct(")")) {
            do f.params.push_back(ident()); while (accept(","));
        }
        expect(")");
        f.body = block();
        return f;
    }

    S::Block block() {
        expect("{");
        S::Block b;
        while (!is_punct("}")) {
            if (at_end()) fail("expected '}'");
            b.push_back(statement());
        }
        next();
        return b;
    }

    S::Block body() {
        if (is_punct("{")) return block();
        S::Block b;
        b.push_back(statement());
        return b;
    }

    int prev_line() const { return t_[i_ == 0 ? 0 : i_ - 1].line; }

    S::Stmt statement() {
        S::Stmt s;
        s.line = peek().line;
        s.column = peek().column;
        s.node = statement_node();
        s.end_line = prev_line();
        return s;
    }

    decltype(S::Stmt::node) statement_node() {
        if (is_ident("if")) {
            next();
            If n;
            expect("(");
            n.cond = expr();
            expect(")");
            n.then_block = body();
            if (is_ident("else")) {
                next();
                n.else_block = body();
            }
            return n;
        }
        if (is_ident("while")) {
            next();
            While n;
            expect("(");
            n.cond = expr();
            expect(")");
            n.body = body();
            return n;
        }
        if (is_ident("return")) {
            next();
            Return n;
            if (!is_punct(";")) n.value = expr();
            expect(";");
            return n;
        }
        if (is_ident("break")) {
            next();
            expect(";");
            return Break{};
        }
        if (is_ident("skip")) {
            next();
            expect(";");
            return Skip{};
        }
        if (is_ident("observe")) {
            next();
            expect("(");
            Observe n;
            n.value = expr();
            if (accept(",")) n.equality = ident();
            expect(")");
            expect(";");
            return n;
        }
        if (is_ident("observeFun")) {
            next();
            expect("(");
            ObserveFun n;
            n.call = expr(true);
            if (!std::holds_alternative<Call>(n.call->node))
                throw SyntaxError("observeFun expects a library call", n.call->line, n.call->column);
            if (accept(",")) n.equality = ident();
            expect(")");
            expect(";");
            return n;
        }
        if (is_ident("cover")) {
            next();
            expect("(");
            Cover n;
            n.value = expr(true);
            expect(")");
            expect(";");
            return n;
        }
        if (peek().kind == Tok::Ident && !is_keyword(peek().text)) return simple_statement();
        fail("expected statement");
    }

    decltype(S::Stmt::node) simple_statement() {
        const Token& first = peek();
        if (is_punct("(", 1)) {
            ExprPtr call = expr();
            expect(";");
            return ExprStmt{call};
        }
        std::string target = ident();
        ExprPtr index;
        if (accept("[")) {
            index = expr();
            expect("]");
        }
        ExprPtr value;
        auto var_ref = [&]() -> ExprPtr {
            auto v = make(first, Var{target});
            return index ? make(first, Index{v, index}) : v;
        };
        auto one = [&] { return make(first, Literal{Value::integer(1)}); };
        if (accept(":=")) {
            value = expr();
        } else if (accept("++")) {
            value = make(first, Binary{BinOp::Add, var_ref(), one()});
        } else if (accept("--")) {
            value = make(first, Binary{BinOp::Sub, var_ref(), one()});
        } else if (accept("+=")) {
            value = make(first, Binary{BinOp::Add, var_ref(), expr()});
        } else if (accept("-=")) {
            value = make(first, Binary{BinOp::Sub, var_ref(), expr()});
        } else {
            fail("expected ':='");
        }
        expect(";");
        if (index) return AssignIndex{target, index, value};
        return Assign{target, value};
    }

    // -- expressions ------------------------------------------------------------
    template <class N>
    static ExprPtr make(const Token& at, N node) {
        auto e = std::make_shared<Expr>();
        e->line = at.line;
        e->column = at.column;
        e->node = std::move(node);
        return e;
    }

    ExprPtr expr(bool allow_elided = false) {
        allow_elided_ = allow_elided;
        return or_expr();
    }

    ExprPtr or_expr() {
        ExprPtr lhs = and_expr();
        while (is_punct("||")) {
            const Token& op = next();
            lhs = make(op, Or{lhs, and_expr()});
        }
        return lhs;
    }

    ExprPtr and_expr() {
        ExprPtr lhs = equality();
        while (is_punct("&&")) {
            const Token& op = next();
            lhs = make(op, And{lhs, equality()});
        }
        return lhs;
    }

    ExprPtr binary_level(ExprPtr (Parser::*sub)(), std::initializer_list<std::pair<const char*, BinOp>> ops) {
        ExprPtr lhs = (this->*sub)();
        for (;;) {
            bool matched = false;
            for (const auto& [p, op] : ops) {
                if (is_punct(p)) {
                    const Token& t = next();
                    lhs = make(t, Binary{op, lhs, (this->*sub)()});
                    matched = true;
                    break;
                }
            }
            if (!matched) return lhs;
        }
    }

    ExprPtr equality() { return binary_level(&Parser::relational, {{"==", BinOp::Eq}, {"!=", BinOp::Ne}}); }
    ExprPtr relational() {
        return binary_level(&Parser::additive,
                            {{"<=", BinOp::Le}, {">=", BinOp::Ge}, {"<", BinOp::Lt}, {">", BinOp::Gt}});
    }
    ExprPtr additive() { return binary_level(&Parser::multiplicative, {{"+", BinOp::Add}, {"-", BinOp::Sub}}); }
    ExprPtr multiplicative() {
        return binary_level(&Parser::unary, {{"*", BinOp::Mul}, {"/", BinOp::Div}, {"%", BinOp::Mod}});
    }

    ExprPtr unary() {
        const Token& t = peek();
        if (accept("!")) return make(t, Unary{UnOp::Not, unary()});
        if (accept("-")) return make(t, Unary{UnOp::Neg, unary()});
        if (is_punct("(") && (is_ident("int", 1) || is_ident("char", 1)) && is_punct(")", 2)) {
            next();
            UnOp op = next().text == "int" ? UnOp::ToInt : UnOp::ToChar;
            next();
            return make(t, Unary{op, unary()});
        }
        return postfix();
    }

    ExprPtr postfix() {
        ExprPtr e = primary();
        while (is_punct("[")) {
            const Token& t = next();
            ExprPtr idx = or_expr();
            expect("]");
            e = make(t, Index{e, idx});
        }
        return e;
    }

    ExprPtr primary() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::Int: next(); return make(t, Literal{Value::integer(Int(t.text))});
            case Tok::Char: next(); return make(t, Literal{Value::character(t.str[0])});
            case Tok::Str: next(); return make(t, Literal{Value::string(t.str)});
            case Tok::End: fail("expected expression");
            default: break;
        }
        if (accept("(")) {
            ExprPtr e = or_expr();
            expect(")");
            return e;
        }
        if (accept("|")) {
            ExprPtr e = or_expr();
            expect("|");
            return make(t, Unary{UnOp::Len, e});
        }
        if (accept("[")) {
            ArrayLit a;
            if (!is_punct("]")) {
                do a.elems.push_back(or_expr()); while (accept(","));
            }
            expect("]");
            return make(t, std::move(a));
        }
        if (t.kind != Tok::Ident) fail("expected expression");
        if (t.text == "true" || t.text == "false") {
            next();
            return make(t, Literal{Value::boolean(t.text == "true")});
        }
        if (t.text == "alloc") {
            next();
            expect("(");
            ExprPtr n = or_expr();
            expect(",");
            ExprPtr v = or_expr();
            expect(")");
            return make(t, Binary{BinOp::Alloc, n, v});
        }
        if (t.text == "typeof") {
            next();
            expect("(");
            ExprPtr v = or_expr();
            expect(")");
            return make(t, Unary{UnOp::TypeOf, v});
        }
        std::string name = ident();
        if (!accept("(")) return make(t, Var{name});
        bool elided_ok = allow_elided_;
        Call c;
        c.fn = name;
        if (!is_punct(")")) {
            do {
                if (is_ident("_")) {
                    if (!elided_ok) fail("'_' is only allowed in observeFun and cover");
                    next();
                    c.args.push_back(nullptr);
                } else {
                    c.args.push_back(or_expr());
                }
            } while (accept(","));
        }
        expect(")");
        return make(t, std::move(c));
    }

    std::vector<Token> t_;
    std::size_t i_ = 0;
    bool allow_elided_ = false;
};

}  // namespace

surface::Program parse_surface(const std::string& text) {
    surface::Program out;
    Lexer lex(text, out.pragmas);
    Parser(lex.run()).program(out);
    return out;
}

}  // namespace tracematch
