#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "edsff/ratfunc.hpp"

namespace edsff {

// Recursive-descent parser for rational function expressions over F_p(t).
//
//   expr   := ['-'] term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*      juxtaposition with '(' or 't'
//                                             acts as an implicit '*'
//   factor := base ('^' uint)?
//   base   := uint | 't' | '(' expr ')'
//
// Integers are nonnegative decimal literals reduced mod p; '^' binds tighter
// than the leading unary minus, so "-t^2" is -(t^2).
namespace detail {

class ExprParser {
public:
    ExprParser(std::string_view src, const Field& field) : src_(src), f_(field) {}

    RatFunc run() {
        skip_ws();
        RatFunc v = expr();
        skip_ws();
        if (pos_ != src_.size()) throw parse_error("unexpected trailing input", pos_);
        return v;
    }

private:
    void skip_ws() {
        while (pos_ < src_.size() && std::isspace((unsigned char)src_[pos_])) ++pos_;
    }
    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    RatFunc expr() {
        bool neg = false;
        if (peek() == '-') {
            ++pos_;
            neg = true;
        }
        RatFunc v = term();
        if (neg) v = -v;
        for (;;) {
            char c = peek();
            if (c == '+') {
                ++pos_;
                v = v + term();
            } else if (c == '-') {
                ++pos_;
                v = v - term();
            } else {
                return v;
            }
        }
    }

    RatFunc term() {
        RatFunc v = factor();
        for (;;) {
            char c = peek();
            if (c == '*') {
                ++pos_;
                v = v * factor();
            } else if (c == '/') {
                size_t at = pos_;
                ++pos_;
                RatFunc d = factor();
                if (d.is_zero()) throw parse_error("division by the zero expression", at);
                v = v / d;
            } else if (c == '(' || c == 't') {
                v = v * factor();  // implicit multiplication
            } else {
                return v;
            }
        }
    }

    RatFunc factor() {
        RatFunc b = base();
        if (peek() == '^') {
            size_t at = pos_;
            ++pos_;
            u64 e = uint_lit();
            if (e > 100000) throw parse_error("exponent too large", at);
            b = b.pow((long)e);
        }
        return b;
    }

    RatFunc base() {
        char c = peek();
        if (c == 't') {
            ++pos_;
            return RatFunc(Poly::variable(f_));
        }
        if (c == '(') {
            size_t open = pos_;
            ++pos_;
            RatFunc v = expr();
            if (peek() != ')') throw parse_error("missing ')'", open);
            ++pos_;
            return v;
        }
        if (std::isdigit((unsigned char)c)) {
            return RatFunc(Poly::from_ints(f_, {(long long)(uint_lit() % f_.p)}));
        }
        throw parse_error("expected a number, 't', or '('", pos_);
    }

    u64 uint_lit() {
        skip_ws();
        if (pos_ >= src_.size() || !std::isdigit((unsigned char)src_[pos_])) {
            throw parse_error("expected an integer", pos_);
        }
        u64 v = 0;
        while (pos_ < src_.size() && std::isdigit((unsigned char)src_[pos_])) {
            v = v * 10 + (u64)(src_[pos_] - '0');
            if (v > (1ull << 62)) throw parse_error("integer literal too large", pos_);
            ++pos_;
        }
        return v;
    }

    std::string_view src_;
    const Field& f_;
    size_t pos_ = 0;
};

}  // namespace detail

inline RatFunc parse_ratfunc(std::string_view src, const Field& field) {
    return detail::ExprParser(src, field).run();
}

inline Poly parse_poly(std::string_view src, const Field& field) {
    RatFunc r = parse_ratfunc(src, field);
    require(r.is_polynomial(), "expression is not a polynomial");
    return r.num();
}

// Canonical printing: descending powers, residues 0..p-1, explicit '*'.
// Round-trips exactly through parse_ratfunc.
inline std::string to_string(const Fq& a) { return std::to_string(a.packed()); }

inline std::string to_string(const Poly& f) {
    if (f.is_zero()) return "0";
    std::string out;
    for (long i = f.degree(); i >= 0; --i) {
        Fq c = f.coeff((size_t)i);
        if (c.is_zero()) continue;
        if (!out.empty()) out += " + ";
        if (i == 0) {
            out += to_string(c);
            continue;
        }
        if (!c.is_one()) {
            out += to_string(c);
            out += "*";
        }
        out += "t";
        if (i > 1) {
            out += "^";
            out += std::to_string(i);
        }
    }
    return out;
}

inline std::string to_string(const RatFunc& x) {
    if (x.is_polynomial()) return to_string(x.num());
    return "(" + to_string(x.num()) + ")/(" + to_string(x.den()) + ")";
}

}  // namespace edsff
