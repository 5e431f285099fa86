#include <cctype>
#include <set>

#include "law/error.hpp"
#include "law/plan/validate.hpp"

namespace law::plan {

std::string to_string(const Locus& l) { return std::to_string(l.line) + ":" + std::to_string(l.col); }

namespace {

enum class Tok { ident, keyword, string, integer, lparen, rparen, lbracket, rbracket, comma, equals, newline, end };

struct Token {
    Tok kind;
    std::string text;
    long value = 0;
    Locus at;
};

const std::set<std::string> kKeywords = {"let", "if", "then", "else", "end", "for", "in", "do",
                                         "return", "not", "empty", "sample", "true", "false"};
const std::set<std::string> kForbidden = {"def", "lambda", "import", "while", "class", "exec",
                                          "eval", "range", "from", "global", "yield", "async"};

[[noreturn]] void fail(const char* code, const std::string& msg, Locus at) {
    throw Error(code, msg, to_string(at));
}

std::vector<Token> lex(std::string_view src) {
    std::vector<Token> out;
    int line = 1, col = 1;
    size_t i = 0;
    auto advance = [&](size_t n) {
        for (size_t k = 0; k < n; ++k) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++i;
        }
    };
    while (i < src.size()) {
        char c = src[i];
        Locus at{line, col};
        if (c == '#') {
            while (i < src.size() && src[i] != '\n') advance(1);
            continue;
        }
        if (c == '\n') {
            out.push_back({Tok::newline, "\n", 0, at});
            advance(1);
            continue;
        }
        if (c == ' ' || c == '\t' || c == '\r') {
            advance(1);
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t j = i;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
            std::string word(src.substr(i, j - i));
            if (kForbidden.count(word)) fail("E_LIMIT", "forbidden construct '" + word + "'", at);
            out.push_back({kKeywords.count(word) ? Tok::keyword : Tok::ident, word, 0, at});
            advance(j - i);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || (c == '-' && i + 1 < src.size() && std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
            size_t j = i + 1;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            if (j < src.size() && (src[j] == '.' || src[j] == 'e' || src[j] == 'E')) {
                fail("E_LIMIT", "only string, integer and boolean literals are allowed", at);
            }
            std::string digits(src.substr(i, j - i));
            if (digits.size() > 12) fail("E_LIMIT", "integer literal too large", at);
            out.push_back({Tok::integer, digits, std::stol(digits), at});
            advance(j - i);
            continue;
        }
        if (c == '"' || c == '\'') {
            std::string value;
            size_t j = i + 1;
            for (;;) {
                if (j >= src.size() || src[j] == '\n') fail("E_PARSE", "unterminated string", at);
                if (src[j] == c) break;
                if (src[j] == '\\' && j + 1 < src.size()) {
                    char e = src[j + 1];
                    value += e == 'n' ? '\n' : e == 't' ? '\t' : e;
                    j += 2;
                    continue;
                }
                value += src[j++];
            }
            if (value.size() > 4096) fail("E_LIMIT", "string literal too long", at);
            out.push_back({Tok::string, value, 0, at});
            advance(j + 1 - i);
            continue;
        }
        Tok kind;
        switch (c) {
            case '(': kind = Tok::lparen; break;
            case ')': kind = Tok::rparen; break;
            case '[': kind = Tok::lbracket; break;
            case ']': kind = Tok::rbracket; break;
            case ',': kind = Tok::comma; break;
            case '=': kind = Tok::equals; break;
            default: fail("E_PARSE", std::string("unexpected character '") + c + "'", at);
        }
        out.push_back({kind, std::string(1, c), 0, at});
        advance(1);
    }
    out.push_back({Tok::newline, "\n", 0, {line, col}});
    out.push_back({Tok::end, "", 0, {line, col}});
    return out;
}

std::string describe(const Token& t) {
    switch (t.kind) {
        case Tok::newline: return "end of line";
        case Tok::end: return "end of input";
        case Tok::string: return "string literal";
        default: return "'" + t.text + "'";
    }
}

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    Program program() {
        Program p;
        skip_newlines();
        while (peek().kind != Tok::end) {
            if (is_kw("end") || is_kw("else")) fail("E_PARSE", "unexpected " + describe(peek()), peek().at);
            p.statements.push_back(statement(0));
            skip_newlines();
        }
        p.statement_count = count_;
        return p;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& take() { return toks_[pos_++]; }
    bool is_kw(const char* kw) const { return peek().kind == Tok::keyword && peek().text == kw; }

    const Token& expect(Tok kind, const char* what) {
        if (peek().kind != kind) fail("E_PARSE", std::string("expected ") + what + ", found " + describe(peek()), peek().at);
        return take();
    }
    void expect_kw(const char* kw) {
        if (!is_kw(kw)) fail("E_PARSE", std::string("expected '") + kw + "', found " + describe(peek()), peek().at);
        take();
    }
    void end_of_statement() {
        if (peek().kind != Tok::newline) fail("E_PARSE", "unexpected " + describe(peek()), peek().at);
        skip_newlines();
    }
    void skip_newlines() {
        while (peek().kind == Tok::newline) take();
    }

    std::unique_ptr<Stmt> statement(size_t depth) {
        if (depth >= kMaxDepth) fail("E_LIMIT", "blocks nested deeper than " + std::to_string(kMaxDepth), peek().at);
        if (++count_ > kMaxStatements) {
            fail("E_LIMIT", "more than " + std::to_string(kMaxStatements) + " statements", peek().at);
        }
        auto s = std::make_unique<Stmt>();
        s->at = peek().at;
        if (is_kw("let")) {
            take();
            s->kind = Stmt::Kind::let;
            s->name = expect(Tok::ident, "a variable name").text;
            expect(Tok::equals, "'='");
            s->expr = expr();
            end_of_statement();
        } else if (is_kw("return")) {
            take();
            s->kind = Stmt::Kind::ret;
            s->expr = expr();
            end_of_statement();
        } else if (is_kw("if")) {
            take();
            s->kind = Stmt::Kind::if_;
            s->cond = cond();
            expect_kw("then");
            end_of_statement();
            s->body = block(depth, {"else", "end"});
            if (is_kw("else")) {
                take();
                end_of_statement();
                s->has_else = true;
                s->else_body = block(depth, {"end"});
            }
            expect_kw("end");
            end_of_statement();
        } else if (is_kw("for")) {
            take();
            s->kind = Stmt::Kind::for_each;
            s->name = expect(Tok::ident, "a loop variable").text;
            expect_kw("in");
            s->expr = expr();
            expect_kw("do");
            end_of_statement();
            s->body = block(depth, {"end"});
            expect_kw("end");
            end_of_statement();
        } else {
            fail("E_PARSE", "expected a statement, found " + describe(peek()), peek().at);
        }
        return s;
    }

    Block block(size_t depth, std::initializer_list<const char*> terminators) {
        Block b;
        for (;;) {
            for (const char* t : terminators) {
                if (is_kw(t)) return b;
            }
            if (peek().kind == Tok::end) fail("E_PARSE", "missing 'end'", peek().at);
            b.push_back(statement(depth + 1));
        }
    }

    std::unique_ptr<Cond> cond() {
        auto c = std::make_unique<Cond>();
        c->at = peek().at;
        if (is_kw("not")) {
            take();
            c->kind = Cond::Kind::negation;
            c->inner = cond();
            return c;
        }
        if (peek().kind == Tok::lparen) {
            take();
            auto inner = cond();
            expect(Tok::rparen, "')'");
            return inner;
        }
        expect_kw("empty");
        c->kind = Cond::Kind::empty;
        expect(Tok::lparen, "'('");
        c->expr = expr();
        expect(Tok::rparen, "')'");
        return c;
    }

    ExprPtr expr() {
        ExprPtr e = primary();
        while (peek().kind == Tok::lbracket) {
            auto idx = std::make_unique<Expr>();
            idx->kind = Expr::Kind::index;
            idx->at = take().at;
            idx->integer = expect(Tok::integer, "an integer index").value;
            if (idx->integer < 0) fail("E_PARSE", "negative index", idx->at);
            expect(Tok::rbracket, "']'");
            idx->target = std::move(e);
            e = std::move(idx);
        }
        return e;
    }

    ExprPtr primary() {
        auto e = std::make_unique<Expr>();
        e->at = peek().at;
        const Token& t = peek();
        if (t.kind == Tok::string) {
            e->kind = Expr::Kind::str;
            e->name = take().text;
        } else if (t.kind == Tok::integer) {
            e->kind = Expr::Kind::integer;
            e->integer = take().value;
        } else if (is_kw("true") || is_kw("false")) {
            e->kind = Expr::Kind::boolean;
            e->boolean = take().text == "true";
        } else if (is_kw("sample")) {
            take();
            e->kind = Expr::Kind::sample;
            expect(Tok::lparen, "'('");
            e->target = expr();
            expect(Tok::comma, "','");
            e->integer = expect(Tok::integer, "a sample size").value;
            if (e->integer < 1) fail("E_PARSE", "sample size must be positive", e->at);
            expect(Tok::rparen, "')'");
        } else if (t.kind == Tok::ident) {
            e->name = take().text;
            if (peek().kind == Tok::lparen) {
                take();
                e->kind = Expr::Kind::call;
                call_args(*e);
            } else {
                e->kind = Expr::Kind::var;
            }
        } else {
            fail("E_PARSE", "expected an expression, found " + describe(t), t.at);
        }
        return e;
    }

    void call_args(Expr& call) {
        if (peek().kind == Tok::rparen) {
            take();
            return;
        }
        for (;;) {
            Arg a;
            a.at = peek().at;
            if (peek().kind == Tok::ident && toks_[pos_ + 1].kind == Tok::equals) {
                a.keyword = take().text;
                take();
            }
            a.value = expr();
            call.args.push_back(std::move(a));
            if (peek().kind == Tok::comma) {
                take();
                continue;
            }
            expect(Tok::rparen, "',' or ')'");
            return;
        }
    }

    std::vector<Token> toks_;
    size_t pos_ = 0;
    size_t count_ = 0;
};

// Definite assignment and return analysis.
class Structure {
public:
    explicit Structure(const std::vector<std::string>& globals) : globals_(globals.begin(), globals.end()) {}

    void program(const Program& p) {
        std::set<std::string> defined = globals_;
        if (!block(p.statements, defined)) {
            Locus at = p.statements.empty() ? Locus{1, 1} : p.statements.back()->at;
            fail("E_MISSING_RETURN", "not every path ends in a return", at);
        }
    }

private:
    // Returns true when every path through the block returns.
    bool block(const Block& b, std::set<std::string>& defined) {
        for (size_t i = 0; i < b.size(); ++i) {
            const Stmt& s = *b[i];
            bool returns = statement(s, defined);
            if (returns) {
                if (i + 1 < b.size()) fail("E_PARSE", "unreachable statement after return", b[i + 1]->at);
                return true;
            }
        }
        return false;
    }

    bool statement(const Stmt& s, std::set<std::string>& defined) {
        switch (s.kind) {
            case Stmt::Kind::let:
                uses(*s.expr, defined);
                defined.insert(s.name);
                return false;
            case Stmt::Kind::ret:
                uses(*s.expr, defined);
                return true;
            case Stmt::Kind::if_: {
                cond(*s.cond, defined);
                auto then_defs = defined;
                auto else_defs = defined;
                bool a = block(s.body, then_defs);
                bool b = s.has_else && block(s.else_body, else_defs);
                // names defined on every path that falls through
                if (a && b) return true;
                if (a) {
                    defined = else_defs;
                } else if (b) {
                    defined = then_defs;
                } else {
                    std::set<std::string> both;
                    for (const auto& n : then_defs) {
                        if (else_defs.count(n)) both.insert(n);
                    }
                    defined = both;
                }
                return false;
            }
            case Stmt::Kind::for_each: {
                uses(*s.expr, defined);
                auto inner = defined;
                inner.insert(s.name);
                block(s.body, inner);  // may run zero times
                return false;
            }
        }
        return false;
    }

    void cond(const Cond& c, const std::set<std::string>& defined) {
        if (c.kind == Cond::Kind::negation) {
            cond(*c.inner, defined);
        } else {
            uses(*c.expr, defined);
        }
    }

    void uses(const Expr& e, const std::set<std::string>& defined) {
        for_each_expr(e, [&](const Expr& x) {
            if (x.kind == Expr::Kind::var && !defined.count(x.name)) {
                fail("E_UNDEFINED", "'" + x.name + "' is used before it is defined", x.at);
            }
        });
    }

    std::set<std::string> globals_;
};

}  // namespace

Program parse_plan(std::string_view source, const std::vector<std::string>& globals) {
    if (source.size() > 256 * 1024) throw Error("E_LIMIT", "plan source larger than 256 KiB", "1:1");
    Parser parser(lex(source));
    Program p = parser.program();
    Structure(globals).program(p);
    return p;
}

ValidationReport check_syntax(std::string_view source, Program* out, const std::vector<std::string>& globals) {
    ValidationReport r;
    r.tier = Tier::syntax;
    try {
        Program p = parse_plan(source, globals);
        if (out) *out = std::move(p);
    } catch (const Error& e) {
        r.fail({e.code(), e.what(), e.locus(), std::nullopt});
    }
    return r;
}

}  // namespace law::plan
