#include "cmot/parse.hpp"

#include <cctype>

#include "cmot/errors.hpp"
#include "cmot/qalg.hpp"

namespace cmot {

namespace {

struct Token {
    enum Kind { Int, Ident, Op, End } kind;
    std::string text;
    long long value = 0;
};

class Lexer {
public:
    explicit Lexer(const std::string& s) : s_(s) { advance(); }
    const Token& peek() const { return tok_; }
    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    std::string s_;
    size_t pos_ = 0;
    Token tok_;

    void advance() {
        while (pos_ < s_.size() && std::isspace((unsigned char)s_[pos_])) ++pos_;
        if (pos_ >= s_.size()) {
            tok_ = {Token::End, "", 0};
            return;
        }
        char c = s_[pos_];
        if (std::isdigit((unsigned char)c)) {
            size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit((unsigned char)s_[pos_])) ++pos_;
            std::string text = s_.substr(start, pos_ - start);
            tok_ = {Token::Int, text, std::stoll(text)};
            return;
        }
        if (std::isalpha((unsigned char)c) || c == '_') {
            size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum((unsigned char)s_[pos_]) || s_[pos_] == '_'))
                ++pos_;
            tok_ = {Token::Ident, s_.substr(start, pos_ - start), 0};
            return;
        }
        if (std::string("+-*/^()").find(c) != std::string::npos) {
            tok_ = {Token::Op, std::string(1, c), 0};
            ++pos_;
            return;
        }
        throw parse_error("unexpected character '" + std::string(1, c) + "'");
    }
};

// parser producing polynomials in x over F(t)
class Parser {
public:
    Parser(const std::string& s, const FqFieldPtr& F, bool allow_x, bool allow_t)
        : lex_(s), F_(F), allow_x_(allow_x), allow_t_(allow_t) {}

    QPoly run() {
        QPoly v = expr();
        if (lex_.peek().kind != Token::End) throw parse_error("trailing input");
        return v;
    }

private:
    Lexer lex_;
    FqFieldPtr F_;
    bool allow_x_, allow_t_;

    QPoly expr() {
        QPoly v = term();
        for (;;) {
            const Token& t = lex_.peek();
            if (t.kind == Token::Op && (t.text == "+" || t.text == "-")) {
                std::string op = lex_.take().text;
                QPoly w = term();
                v = (op == "+") ? v + w : v - w;
            } else {
                return v;
            }
        }
    }

    QPoly term() {
        QPoly v = factor();
        for (;;) {
            const Token& t = lex_.peek();
            if (t.kind == Token::Op && (t.text == "*" || t.text == "/")) {
                std::string op = lex_.take().text;
                QPoly w = factor();
                if (op == "*") {
                    v = v * w;
                } else {
                    if (w.degree() > 0) throw parse_error("division by an expression in x");
                    if (w.is_zero()) throw parse_error("division by zero");
                    QElem inv = w.coeff(0).inv();
                    v = v.scaled(inv);
                }
            } else {
                return v;
            }
        }
    }

    QPoly factor() {
        const Token& t = lex_.peek();
        if (t.kind == Token::Op && t.text == "-") {
            lex_.take();
            return -factor();
        }
        return power();
    }

    QPoly power() {
        QPoly base = atom();
        const Token& t = lex_.peek();
        if (t.kind == Token::Op && t.text == "^") {
            lex_.take();
            long long e = exponent();
            if (e >= 0) {
                if (base.is_zero() && e == 0) throw parse_error("0^0");
                return base.pow(e);
            }
            if (base.degree() > 0) throw parse_error("negative power of an expression in x");
            if (base.is_zero()) throw parse_error("negative power of zero");
            return QPoly::constant(q_zero(F_), base.coeff(0).pow(e));
        }
        return base;
    }

    long long exponent() {
        bool neg = false;
        const Token& t = lex_.peek();
        if (t.kind == Token::Op && t.text == "-") {
            lex_.take();
            neg = true;
        }
        Token n = lex_.take();
        if (n.kind != Token::Int) throw parse_error("exponent must be an integer");
        return neg ? -n.value : n.value;
    }

    QPoly atom() {
        Token t = lex_.take();
        if (t.kind == Token::Int)
            return QPoly::constant(q_zero(F_), q_from_int(F_, t.value));
        if (t.kind == Token::Ident) {
            if (t.text == "t") {
                if (!allow_t_) throw parse_error("variable t not allowed here");
                return QPoly::constant(q_zero(F_), q_t(F_));
            }
            if (t.text == "x") {
                if (!allow_x_) throw parse_error("variable x not allowed here");
                return qpoly_x(F_);
            }
            if (t.text == F_->gen_name()) {
                if (F_->degree() == 1)
                    throw parse_error("generator '" + t.text + "' undefined over a prime field");
                return QPoly::constant(q_zero(F_), QElem::constant(F_->gen()));
            }
            throw parse_error("unknown identifier '" + t.text + "'");
        }
        if (t.kind == Token::Op && t.text == "(") {
            QPoly v = expr();
            Token close = lex_.take();
            if (close.kind != Token::Op || close.text != ")") throw parse_error("expected ')'");
            return v;
        }
        throw parse_error("unexpected token '" + t.text + "'");
    }
};

} // namespace

QPoly parse_qpoly(const std::string& s, const FqFieldPtr& F) {
    return Parser(s, F, true, true).run();
}

QElem parse_qelem(const std::string& s, const FqFieldPtr& F) {
    QPoly v = Parser(s, F, false, true).run();
    if (v.degree() > 0) throw parse_error("expected an element without x");
    return v.is_zero() ? q_zero(F) : v.coeff(0);
}

FqElem parse_fqelem(const std::string& s, const FqFieldPtr& F) {
    QElem v = parse_qelem(s, F);
    if (!v.is_polynomial() || v.num().degree() > 0)
        throw parse_error("expected a constant field element");
    return v.is_zero() ? F->zero() : v.num().coeff(0);
}

FqPoly parse_tpoly(const std::string& s, const FqFieldPtr& F) {
    QElem v = parse_qelem(s, F);
    if (!v.is_polynomial()) throw parse_error("expected a polynomial in t");
    return v.num();
}

std::vector<int> parse_prime_poly(const std::string& s, int p, const std::string& var) {
    auto Fp = FqField::prime_field(p);
    // reuse the main parser with the variable mapped to t
    std::string normalized;
    normalized.reserve(s.size());
    // tokenize-level substitution: replace standalone identifier `var` by t
    for (size_t i = 0; i < s.size();) {
        if (std::isalpha((unsigned char)s[i]) || s[i] == '_') {
            size_t j = i;
            while (j < s.size() && (std::isalnum((unsigned char)s[j]) || s[j] == '_')) ++j;
            std::string ident = s.substr(i, j - i);
            normalized += (ident == var) ? "t" : ident;
            i = j;
        } else {
            normalized += s[i++];
        }
    }
    FqPoly f = parse_tpoly(normalized, Fp);
    std::vector<int> out;
    out.reserve(f.degree() + 1);
    for (int i = 0; i <= f.degree(); ++i)
        out.push_back(f.coeff(i).is_zero() ? 0 : f.coeff(i).coeffs()[0]);
    return out;
}

} // namespace cmot
