#include "ncw/dsl.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>

namespace ncw::dsl {

namespace {

enum class Tok { ident, number, lparen, rparen, comma, caret, plus, minus, end };

const char* tok_name(Tok t) {
    switch (t) {
        case Tok::ident: return "identifier";
        case Tok::number: return "number";
        case Tok::lparen: return "\"(\"";
        case Tok::rparen: return "\")\"";
        case Tok::comma: return "\",\"";
        case Tok::caret: return "\"^\"";
        case Tok::plus: return "\"+\"";
        case Tok::minus: return "\"-\"";
        case Tok::end: return "end of input";
    }
    return "?";
}

struct Token {
    Tok kind = Tok::end;
    std::size_t begin = 0;
    std::size_t end = 0;
    std::string text;
    double num = 0.0;
};

class Lexer {
public:
    explicit Lexer(std::string_view s) : s_(s) { advance(); }

    const Token& peek() const { return cur_; }

    Token take() {
        Token t = cur_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < s_.size() &&
               std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        cur_ = Token{};
        cur_.begin = pos_;
        if (pos_ >= s_.size()) {
            cur_.kind = Tok::end;
            cur_.end = pos_;
            return;
        }
        const char c = s_[pos_];
        switch (c) {
            case '(': single(Tok::lparen); return;
            case ')': single(Tok::rparen); return;
            case ',': single(Tok::comma); return;
            case '^': single(Tok::caret); return;
            case '+': single(Tok::plus); return;
            case '-': single(Tok::minus); return;
            default: break;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t e = pos_;
            while (e < s_.size() && std::isalpha(static_cast<unsigned char>(s_[e])))
                ++e;
            cur_.kind = Tok::ident;
            cur_.text = std::string(s_.substr(pos_, e - pos_));
            cur_.end = e;
            pos_ = e;
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t e = pos_;
            bool any_digit = false;
            while (e < s_.size() && std::isdigit(static_cast<unsigned char>(s_[e]))) {
                ++e;
                any_digit = true;
            }
            if (e < s_.size() && s_[e] == '.') {
                ++e;
                while (e < s_.size() && std::isdigit(static_cast<unsigned char>(s_[e]))) {
                    ++e;
                    any_digit = true;
                }
            }
            if (any_digit && e < s_.size() && (s_[e] == 'e' || s_[e] == 'E')) {
                std::size_t x = e + 1;
                if (x < s_.size() && (s_[x] == '+' || s_[x] == '-')) ++x;
                bool exp_digit = false;
                while (x < s_.size() && std::isdigit(static_cast<unsigned char>(s_[x]))) {
                    ++x;
                    exp_digit = true;
                }
                if (exp_digit) e = x;
            }
            if (!any_digit)
                throw ParseError(pos_, {"number"}, "malformed number");
            cur_.kind = Tok::number;
            cur_.text = std::string(s_.substr(pos_, e - pos_));
            cur_.num = std::strtod(cur_.text.c_str(), nullptr);
            cur_.end = e;
            pos_ = e;
            return;
        }
        throw ParseError(pos_, {}, "unexpected character");
    }

    void single(Tok k) {
        cur_.kind = k;
        cur_.end = pos_ + 1;
        pos_ += 1;
    }

    std::string_view s_;
    std::size_t pos_ = 0;
    Token cur_;
};

[[noreturn]] void fail(const Token& got, std::vector<std::string> expected) {
    std::string msg = "expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
        if (i) msg += i + 1 == expected.size() ? " or " : ", ";
        msg += expected[i];
    }
    msg += ", found ";
    msg += got.kind == Tok::ident || got.kind == Tok::number
               ? "\"" + got.text + "\""
               : tok_name(got.kind);
    msg += " at offset " + std::to_string(got.begin);
    throw ParseError(got.begin, std::move(expected), msg);
}

class Parser {
public:
    explicit Parser(std::string_view s) : lex_(s) {}

    StateExpr run() {
        StateExpr e;
        for (;;) {
            const Token& t = lex_.peek();
            if (t.kind != Tok::ident)
                fail(t, {"\"D\"", "\"S\"", "\"A\"", "\"vac\"", "\"fock\"",
                         "\"coh\"", "\"thermal\"", "\"cat\""});
            if (t.text == "D" || t.text == "S" || t.text == "A") {
                e.ops.push_back(parse_unary());
            } else {
                e.prim = parse_primitive();
                break;
            }
        }
        const Token& t = lex_.peek();
        if (t.kind != Tok::end) fail(t, {"end of input"});
        return e;
    }

private:
    Token expect(Tok k, const char* what) {
        const Token& t = lex_.peek();
        if (t.kind != k) fail(t, {what});
        return lex_.take();
    }

    double parse_num() {
        double sign = 1.0;
        const Token& t = lex_.peek();
        if (t.kind == Tok::plus || t.kind == Tok::minus) {
            sign = t.kind == Tok::minus ? -1.0 : 1.0;
            lex_.take();
        }
        const Token& n = lex_.peek();
        if (n.kind != Tok::number) fail(n, {"number"});
        return sign * lex_.take().num;
    }

    int parse_uint() {
        const Token& t = lex_.peek();
        if (t.kind != Tok::number) fail(t, {"unsigned integer"});
        const Token n = lex_.take();
        double ip;
        if (n.text.find_first_of(".eE") != std::string::npos ||
            std::modf(n.num, &ip) != 0.0 || n.num < 0.0 || n.num > 1e9)
            throw ParseError(n.begin, {"unsigned integer"},
                             "expected unsigned integer, found \"" + n.text +
                                 "\" at offset " + std::to_string(n.begin));
        return static_cast<int>(n.num);
    }

    Unary parse_unary() {
        const Token id = lex_.take();
        Unary op;
        op.span.begin = id.begin;
        if (id.text == "A") {
            op.kind = Unary::Kind::add;
            op.m = 1;
            op.span.end = id.end;
            if (lex_.peek().kind == Tok::caret) {
                lex_.take();
                const Token n = lex_.peek();
                op.m = parse_uint();
                op.span.end = n.end;
            }
            return op;
        }
        if (id.text == "D") {
            op.kind = Unary::Kind::displace;
            expect(Tok::lparen, "\"(\"");
            op.a = parse_num();
            expect(Tok::comma, "\",\"");
            op.b = parse_num();
            const Token r = expect(Tok::rparen, "\")\"");
            op.span.end = r.end;
            return op;
        }
        op.kind = Unary::Kind::squeeze;
        expect(Tok::lparen, "\"(\"");
        op.a = parse_num();
        const Token& t = lex_.peek();
        if (t.kind == Tok::comma) {
            lex_.take();
            op.b = parse_num();
        } else if (t.kind != Tok::rparen) {
            fail(t, {"\")\"", "\",\""});
        }
        const Token r = expect(Tok::rparen, "\")\"");
        op.span.end = r.end;
        return op;
    }

    Primitive parse_primitive() {
        const Token id = lex_.take();
        Primitive p;
        p.span.begin = id.begin;
        p.span.end = id.end;
        if (id.text == "vac") {
            p.kind = Primitive::Kind::vac;
            return p;
        }
        if (id.text == "fock") {
            p.kind = Primitive::Kind::fock;
            expect(Tok::lparen, "\"(\"");
            p.m = parse_uint();
            const Token r = expect(Tok::rparen, "\")\"");
            p.span.end = r.end;
            return p;
        }
        if (id.text == "coh") {
            p.kind = Primitive::Kind::coh;
            expect(Tok::lparen, "\"(\"");
            p.a = parse_num();
            expect(Tok::comma, "\",\"");
            p.b = parse_num();
            const Token r = expect(Tok::rparen, "\")\"");
            p.span.end = r.end;
            return p;
        }
        if (id.text == "thermal") {
            p.kind = Primitive::Kind::thermal;
            expect(Tok::lparen, "\"(\"");
            p.a = parse_num();
            const Token r = expect(Tok::rparen, "\")\"");
            p.span.end = r.end;
            return p;
        }
        if (id.text == "cat") {
            p.kind = Primitive::Kind::cat;
            const Token& sgn = lex_.peek();
            if (sgn.kind == Tok::plus)
                p.parity = Parity::even;
            else if (sgn.kind == Tok::minus)
                p.parity = Parity::odd;
            else
                fail(sgn, {"\"+\"", "\"-\""});
            lex_.take();
            expect(Tok::lparen, "\"(\"");
            p.a = parse_num();
            const Token r = expect(Tok::rparen, "\")\"");
            p.span.end = r.end;
            return p;
        }
        fail(id, {"\"vac\"", "\"fock\"", "\"coh\"", "\"thermal\"", "\"cat\""});
    }

    Lexer lex_;
};

std::string fmt_num(double v) {
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, p);
}

}  // namespace

bool StateExpr::operator==(const StateExpr& o) const {
    if (ops.size() != o.ops.size()) return false;
    for (std::size_t i = 0; i < ops.size(); ++i) {
        const Unary& a = ops[i];
        const Unary& b = o.ops[i];
        if (a.kind != b.kind || a.a != b.a || a.b != b.b || a.m != b.m)
            return false;
    }
    return prim.kind == o.prim.kind && prim.a == o.prim.a && prim.b == o.prim.b &&
           prim.m == o.prim.m && prim.parity == o.prim.parity;
}

StateExpr parse(std::string_view text) { return Parser(text).run(); }

std::string pretty_print(const StateExpr& e) {
    std::string out;
    for (const Unary& op : e.ops) {
        switch (op.kind) {
            case Unary::Kind::displace:
                out += "D(" + fmt_num(op.a) + "," + fmt_num(op.b) + ") ";
                break;
            case Unary::Kind::squeeze:
                out += "S(" + fmt_num(op.a);
                if (op.b != 0.0) out += "," + fmt_num(op.b);
                out += ") ";
                break;
            case Unary::Kind::add:
                out += op.m == 1 ? "A " : "A^" + std::to_string(op.m) + " ";
                break;
        }
    }
    const Primitive& p = e.prim;
    switch (p.kind) {
        case Primitive::Kind::vac: out += "vac"; break;
        case Primitive::Kind::fock: out += "fock(" + std::to_string(p.m) + ")"; break;
        case Primitive::Kind::coh:
            out += "coh(" + fmt_num(p.a) + "," + fmt_num(p.b) + ")";
            break;
        case Primitive::Kind::thermal: out += "thermal(" + fmt_num(p.a) + ")"; break;
        case Primitive::Kind::cat:
            out += std::string("cat") + (p.parity == Parity::even ? "+" : "-") + "(" +
                   fmt_num(p.a) + ")";
            break;
    }
    return out;
}

namespace {

[[noreturn]] void rethrow_with_span(const Error& e, const Span& span) {
    throw EvalError(e.code(), span.begin, span.end,
                    std::string(e.what()) + " (at offset " +
                        std::to_string(span.begin) + ")");
}

State eval_primitive(const Primitive& p, int dim, double tail_tol) {
    try {
        switch (p.kind) {
            case Primitive::Kind::vac: return fock(0, dim);
            case Primitive::Kind::fock: return fock(p.m, dim);
            case Primitive::Kind::coh:
                return coherent(cx(p.a, p.b), dim, tail_tol);
            case Primitive::Kind::thermal: return thermal(p.a, dim, tail_tol);
            case Primitive::Kind::cat:
                return cat_state(p.a, p.parity, dim, tail_tol);
        }
        throw Error(errc::internal_check, "unhandled primitive");
    } catch (const EvalError&) {
        throw;
    } catch (const Error& e) {
        rethrow_with_span(e, p.span);
    }
}

State apply_unary(const Unary& op, State s, double tail_tol) {
    try {
        switch (op.kind) {
            case Unary::Kind::displace: {
                const cx beta(op.a, op.b);
                if (std::holds_alternative<FockVector>(s))
                    return displace(std::get<FockVector>(s), beta, tail_tol);
                return displace(std::get<DensityOperator>(s), beta, tail_tol);
            }
            case Unary::Kind::squeeze: {
                const SqueezeParam sq(op.a, op.b);
                if (std::holds_alternative<FockVector>(s))
                    return apply_squeeze(std::get<FockVector>(s), sq, tail_tol);
                return apply_squeeze(std::get<DensityOperator>(s), sq, tail_tol);
            }
            case Unary::Kind::add: {
                if (std::holds_alternative<FockVector>(s))
                    return add_photons(std::get<FockVector>(s), op.m, tail_tol);
                return add_photons(std::get<DensityOperator>(s), op.m, tail_tol);
            }
        }
        throw Error(errc::internal_check, "unhandled operator");
    } catch (const EvalError&) {
        throw;
    } catch (const Error& e) {
        rethrow_with_span(e, op.span);
    }
}

}  // namespace

State eval(const StateExpr& e, int dim, double tail_tol) {
    std::size_t n_ops = e.ops.size();

    // "S(r[,th]) thermal(n)" takes the dedicated squeezed-thermal
    // construction, which stays exact at dimensions where squeezing a large
    // thermal mixture column-by-column would not.
    const bool st_shortcut = n_ops > 0 &&
                             e.ops.back().kind == Unary::Kind::squeeze &&
                             e.prim.kind == Primitive::Kind::thermal;
    State cur = [&]() -> State {
        if (!st_shortcut) return eval_primitive(e.prim, dim, tail_tol);
        const Unary& op = e.ops.back();
        try {
            return squeezed_thermal(e.prim.a, SqueezeParam(op.a, op.b), dim, tail_tol);
        } catch (const EvalError&) {
            throw;
        } catch (const Error& err) {
            rethrow_with_span(err, op.span);
        }
    }();
    if (st_shortcut) --n_ops;

    for (std::size_t i = n_ops; i-- > 0;)
        cur = apply_unary(e.ops[i], std::move(cur), tail_tol);
    return cur;
}

}  // namespace ncw::dsl
