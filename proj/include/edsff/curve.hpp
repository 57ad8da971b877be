#pragma once

#include <optional>
#include <string>
#include <vector>

#include "edsff/parse.hpp"
#include "edsff/ratfunc.hpp"

namespace edsff {

// Point on a Weierstrass curve: the identity O or an affine pair.
struct Point {
    static Point infinity() { return Point(); }
    static Point affine(RatFunc x, RatFunc y) {
        Point p;
        p.inf_ = false;
        p.x_ = std::move(x);
        p.y_ = std::move(y);
        return p;
    }

    bool is_infinity() const { return inf_; }
    const RatFunc& x() const {
        require(!inf_, "coordinate of the point at infinity");
        return x_;
    }
    const RatFunc& y() const {
        require(!inf_, "coordinate of the point at infinity");
        return y_;
    }

    friend bool operator==(const Point& a, const Point& b) {
        if (a.inf_ != b.inf_) return false;
        return a.inf_ || (a.x_ == b.x_ && a.y_ == b.y_);
    }
    friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }

private:
    Point() = default;
    bool inf_ = true;
    RatFunc x_, y_;
};

// Long Weierstrass curve y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over
// F_q(t), with the b/c-invariants, discriminant and j cached at construction.
// Construction rejects singular models.
class Curve {
public:
    Curve(RatFunc a1, RatFunc a2, RatFunc a3, RatFunc a4, RatFunc a6)
        : a1_(std::move(a1)), a2_(std::move(a2)), a3_(std::move(a3)),
          a4_(std::move(a4)), a6_(std::move(a6)) {
        const Field& F = a1_.field();
        require(F.same_as(a2_.field()) && F.same_as(a3_.field()) && F.same_as(a4_.field()) &&
                    F.same_as(a6_.field()),
                "curve coefficients over different fields");
        RatFunc four = RatFunc::from_int(F, 4);
        b2_ = a1_ * a1_ + four * a2_;
        b4_ = RatFunc::from_int(F, 2) * a4_ + a1_ * a3_;
        b6_ = a3_ * a3_ + four * a6_;
        b8_ = a1_ * a1_ * a6_ + four * a2_ * a6_ - a1_ * a3_ * a4_ + a2_ * a3_ * a3_ -
              a4_ * a4_;
        c4_ = b2_ * b2_ - RatFunc::from_int(F, 24) * b4_;
        c6_ = -(b2_ * b2_ * b2_) + RatFunc::from_int(F, 36) * b2_ * b4_ -
              RatFunc::from_int(F, 216) * b6_;
        disc_ = -(b2_ * b2_ * b8_) - RatFunc::from_int(F, 8) * b4_.pow(3) -
                RatFunc::from_int(F, 27) * b6_ * b6_ + RatFunc::from_int(F, 9) * b2_ * b4_ * b6_;
        require(!disc_.is_zero(), "singular curve: discriminant is zero");
        j_ = c4_.pow(3) / disc_;
        ensure(four * b8_ == b2_ * b6_ - b4_ * b4_, "b-invariant relation failed");
        ensure(RatFunc::from_int(F, 1728) * disc_ == c4_.pow(3) - c6_ * c6_,
               "c-invariant relation failed");
    }

    const Field& field() const { return a1_.field(); }
    const RatFunc& a1() const { return a1_; }
    const RatFunc& a2() const { return a2_; }
    const RatFunc& a3() const { return a3_; }
    const RatFunc& a4() const { return a4_; }
    const RatFunc& a6() const { return a6_; }
    const RatFunc& b2() const { return b2_; }
    const RatFunc& b4() const { return b4_; }
    const RatFunc& b6() const { return b6_; }
    const RatFunc& b8() const { return b8_; }
    const RatFunc& c4() const { return c4_; }
    const RatFunc& c6() const { return c6_; }
    const RatFunc& disc() const { return disc_; }
    const RatFunc& j() const { return j_; }

    bool is_integral() const {
        return a1_.is_polynomial() && a2_.is_polynomial() && a3_.is_polynomial() &&
               a4_.is_polynomial() && a6_.is_polynomial();
    }
    bool is_b_form() const { return a1_.is_zero() && a3_.is_zero(); }
    bool is_short() const { return is_b_form() && a2_.is_zero(); }

    friend bool operator==(const Curve& a, const Curve& b) {
        return a.a1_ == b.a1_ && a.a2_ == b.a2_ && a.a3_ == b.a3_ && a.a4_ == b.a4_ &&
               a.a6_ == b.a6_;
    }

    bool contains(const Point& P) const {
        if (P.is_infinity()) return true;
        const RatFunc& x = P.x();
        const RatFunc& y = P.y();
        RatFunc lhs = y * y + a1_ * x * y + a3_ * y;
        RatFunc rhs = (x * x + a2_ * x) * x + a4_ * x + a6_;
        return lhs == rhs;
    }
    void require_contains(const Point& P) const {
        require(contains(P), "point does not satisfy the curve equation");
    }

    Point negate(const Point& P) const {
        if (P.is_infinity()) return P;
        return Point::affine(P.x(), -P.y() - a1_ * P.x() - a3_);
    }

    Point add(const Point& P, const Point& Q) const {
        if (P.is_infinity()) return Q;
        if (Q.is_infinity()) return P;
        const RatFunc &x1 = P.x(), &y1 = P.y(), &x2 = Q.x(), &y2 = Q.y();
        RatFunc lambda, mu;
        if (x1 == x2) {
            if (y2 == -y1 - a1_ * x1 - a3_) return Point::infinity();
            // tangent line
            RatFunc den = RatFunc::from_int(field(), 2) * y1 + a1_ * x1 + a3_;
            RatFunc num = RatFunc::from_int(field(), 3) * x1 * x1 +
                          RatFunc::from_int(field(), 2) * a2_ * x1 + a4_ - a1_ * y1;
            lambda = num / den;
            mu = y1 - lambda * x1;
        } else {
            lambda = (y2 - y1) / (x2 - x1);
            mu = y1 - lambda * x1;
        }
        RatFunc x3 = lambda * lambda + a1_ * lambda - a2_ - x1 - x2;
        RatFunc y3 = -(lambda + a1_) * x3 - mu - a3_;
        return Point::affine(std::move(x3), std::move(y3));
    }

    Point dbl(const Point& P) const { return add(P, P); }

    Point scalar_mul(long n, const Point& P) const {
        if (n < 0) return scalar_mul(-n, negate(P));
        Point acc = Point::infinity();
        if (n == 0 || P.is_infinity()) return acc;
        unsigned long m = (unsigned long)n;
        int bits = 0;
        for (unsigned long t = m; t; t >>= 1) ++bits;
        for (int i = bits - 1; i >= 0; --i) {
            acc = dbl(acc);
            if ((m >> i) & 1) acc = add(acc, P);
        }
        return acc;
    }

private:
    RatFunc a1_, a2_, a3_, a4_, a6_;
    RatFunc b2_, b4_, b6_, b8_, c4_, c6_, disc_, j_;
};

// Short-form model Y^2 = X^3 + aX + b obtained through the u = 6 substitution
// X = 36x + 3b2, Y = 216y + 108(a1 x + a3); this keeps integral models
// integral (a = -27 c4, b = -54 c6) and multiplies the discriminant by 6^12.
// A curve that is already short gets the identity substitution.
struct ShortForm {
    Curve curve;            // the short model
    RatFunc a, b;           // its coefficients
    RatFunc pb2, pa1, pa3;  // parent data needed by the point maps
    bool identity = false;

    Point to_short(const Point& P) const {
        if (P.is_infinity() || identity) return P;
        const Field& F = curve.field();
        RatFunc X = RatFunc::from_int(F, 36) * P.x() + RatFunc::from_int(F, 3) * pb2;
        RatFunc Y = RatFunc::from_int(F, 216) * P.y() +
                    RatFunc::from_int(F, 108) * (pa1 * P.x() + pa3);
        return Point::affine(std::move(X), std::move(Y));
    }
    Point from_short(const Point& P) const {
        if (P.is_infinity() || identity) return P;
        const Field& F = curve.field();
        RatFunc x = (P.x() - RatFunc::from_int(F, 3) * pb2) / RatFunc::from_int(F, 36);
        RatFunc y = (P.y() - RatFunc::from_int(F, 108) * (pa1 * x + pa3)) /
                    RatFunc::from_int(F, 216);
        return Point::affine(std::move(x), std::move(y));
    }
};

inline ShortForm to_short_form(const Curve& E) {
    const Field& F = E.field();
    require(F.p >= 5, "short form requires characteristic >= 5");
    if (E.is_short()) return ShortForm{E, E.a4(), E.a6(), E.b2(), E.a1(), E.a3(), true};
    RatFunc zero(F);
    RatFunc a = RatFunc::from_int(F, -27) * E.c4();
    RatFunc b = RatFunc::from_int(F, -54) * E.c6();
    Curve S(zero, zero, zero, a, b);
    ensure(S.j() == E.j(), "short form must preserve the j-invariant");
    ensure(S.disc() == RatFunc::from_int(F, 6).pow(12) * E.disc(),
           "short form discriminant must scale by 6^12");
    return ShortForm{std::move(S), std::move(a), std::move(b), E.b2(), E.a1(), E.a3(), false};
}

// psi_2^2 and theta_2 of a short model evaluated at x: the duplication law
// reads x(2Q) = theta_2(x(Q)) / psi_2^2(x(Q)).
struct DivisionValues {
    RatFunc psi2_sq;  // 4(x^3 + a x + b)
    RatFunc theta2;   // x^4 - 2a x^2 - 8b x + a^2
};

inline DivisionValues division_values(const RatFunc& a, const RatFunc& b, const RatFunc& x) {
    const Field& F = x.field();
    RatFunc two = RatFunc::from_int(F, 2), four = RatFunc::from_int(F, 4),
            eight = RatFunc::from_int(F, 8);
    RatFunc x2 = x * x;
    RatFunc psi = four * ((x2 + a) * x + b);
    RatFunc theta = x2 * x2 - two * a * x2 - eight * b * x + a * a;
    return {std::move(psi), std::move(theta)};
}

inline DivisionValues division_values(const ShortForm& sf, const RatFunc& x) {
    return division_values(sf.a, sf.b, x);
}

// All roots in F_q(t) of sum coeffs[i] X^i: clear denominators, monicize via
// z = lc * X, and test unit * (monic divisor of the constant term). Complete
// because F_q[t] is integrally closed; exponential in the number of prime
// factors of the constant term, which is fine at the scale this is used.
inline std::vector<RatFunc> rational_roots(const std::vector<RatFunc>& coeffs, Rng& rng) {
    require(!coeffs.empty(), "rational_roots: empty polynomial");
    const Field& F = coeffs.front().field();
    size_t n = coeffs.size() - 1;
    while (n > 0 && coeffs[n].is_zero()) --n;
    require(n >= 1, "rational_roots: constant polynomial");

    // common denominator, then primitive part
    Poly L = Poly::from_ints(F, {1});
    for (size_t i = 0; i <= n; ++i) {
        if (coeffs[i].is_zero()) continue;
        Poly g = gcd(L, coeffs[i].den());
        L = L * exact_div(coeffs[i].den(), g);
    }
    std::vector<Poly> C(n + 1, Poly(F));
    for (size_t i = 0; i <= n; ++i) {
        if (coeffs[i].is_zero()) continue;
        RatFunc scaled = coeffs[i] * RatFunc(L);
        C[i] = scaled.as_poly();
    }
    Poly content(F);
    for (auto& c : C) {
        if (!c.is_zero()) content = content.is_zero() ? c : gcd(content, c);
    }
    for (auto& c : C) {
        if (!c.is_zero()) c = exact_div(c, content);
    }

    // z = lc * X turns it into a monic integral polynomial in z:
    // M[i] = C[i] * lc^(n-1-i), M[n] = 1
    Poly lc = C[n];
    std::vector<Poly> M(n + 1, Poly(F));
    M[n] = Poly::from_ints(F, {1});
    Poly lcpow = Poly::from_ints(F, {1});
    for (size_t i = n; i-- > 0;) {
        M[i] = C[i] * lcpow;
        lcpow = lcpow * lc;
    }

    std::vector<RatFunc> roots;
    size_t v = 0;
    while (v <= n && M[v].is_zero()) ++v;
    if (v > 0) roots.push_back(RatFunc(F));  // z = 0
    std::vector<Poly> body(M.begin() + v, M.end());

    if (body.size() >= 2) {
        Factorization fac = factor(body.front(), rng);
        std::vector<Poly> divisors = {Poly::from_ints(F, {1})};
        for (auto& [prime, mult] : fac.factors) {
            std::vector<Poly> next;
            next.reserve(divisors.size() * (size_t)(mult + 1));
            for (auto& d : divisors) {
                Poly acc = d;
                next.push_back(acc);
                for (long e = 1; e <= mult; ++e) {
                    acc = acc * prime;
                    next.push_back(acc);
                }
            }
            divisors = std::move(next);
            require(divisors.size() <= 200000, "too many divisor candidates for root search");
        }
        require(divisors.size() * (F.q - 1) <= 2000000,
                "too many root candidates (field or constant term too large)");
        for (const Poly& d : divisors) {
            for (u64 u = 1; u < F.q; ++u) {
                Poly z0 = Fq(F, u) * d;
                Poly acc = body.back();
                for (size_t i = body.size() - 1; i-- > 0;) acc = acc * z0 + body[i];
                if (acc.is_zero()) {
                    roots.push_back(RatFunc(z0, lc));
                }
            }
        }
    }
    std::sort(roots.begin(), roots.end(), [](const RatFunc& a, const RatFunc& b) {
        if (a.den() < b.den()) return true;
        if (b.den() < a.den()) return false;
        return a.num() < b.num();
    });
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

// x-coordinates of the rational 2-torsion of a curve with a1 = a3 = 0:
// the rational roots of x^3 + a2 x^2 + a4 x + a6. Between 0 and 3 of them.
inline std::vector<RatFunc> two_torsion_x(const Curve& E, Rng& rng) {
    require(E.field().p >= 5, "two-torsion search requires characteristic >= 5");
    require(E.is_b_form(), "two-torsion needs a model with a1 = a3 = 0");
    const Field& F = E.field();
    std::vector<RatFunc> cubic = {E.a6(), E.a4(), E.a2(), RatFunc::from_int(F, 1)};
    return rational_roots(cubic, rng);
}

inline std::vector<RatFunc> two_torsion_x(const Curve& E) {
    Rng rng(0x70705);
    return two_torsion_x(E, rng);
}

// All Q with 2Q = P: roots of theta_2(X) - x(P) psi_2^2(X) on the short
// model, y recovered by square roots and each candidate verified by the
// group law. Possibly empty.
inline std::vector<Point> halve_point(const Curve& E, const Point& P, Rng& rng) {
    require(E.field().p >= 5, "halving requires characteristic >= 5");
    require(!P.is_infinity(), "halving the identity is out of scope");
    E.require_contains(P);
    const Field& F = E.field();
    ShortForm sf = to_short_form(E);
    Point Ps = sf.to_short(P);
    const RatFunc& xp = Ps.x();
    RatFunc four = RatFunc::from_int(F, 4), eight = RatFunc::from_int(F, 8),
            two = RatFunc::from_int(F, 2);
    std::vector<RatFunc> quartic = {
        sf.a * sf.a - four * sf.b * xp,   // X^0
        -eight * sf.b - four * sf.a * xp, // X^1
        -two * sf.a,                      // X^2
        -four * xp,                       // X^3
        RatFunc::from_int(F, 1),          // X^4
    };
    std::vector<Point> out;
    for (const RatFunc& xq : rational_roots(quartic, rng)) {
        RatFunc w = (xq * xq + sf.a) * xq + sf.b;  // y^2 on the short model
        std::vector<RatFunc> ys;
        if (w.is_zero()) {
            ys.push_back(RatFunc(F));
        } else {
            auto rn = exact_sqrt(w.num());
            auto rd = exact_sqrt(w.den());
            if (!rn || !rd) continue;
            Fq un;
            if (!fq_sqrt(rn->unit, un)) continue;
            RatFunc y0 = RatFunc(Poly::constant(un) * rn->root, rd->root);
            ys.push_back(y0);
            ys.push_back(-y0);
        }
        for (const RatFunc& y : ys) {
            Point Q = sf.from_short(Point::affine(xq, y));
            if (!E.contains(Q)) continue;
            if (E.dbl(Q) == P) {
                if (std::find(out.begin(), out.end(), Q) == out.end()) out.push_back(Q);
            }
        }
    }
    return out;
}

inline std::vector<Point> halve_point(const Curve& E, const Point& P) {
    Rng rng(0xa17e);
    return halve_point(E, P, rng);
}

// Largest s with j in K^(p^s); throws for constant j (isotrivial curves are
// outside the theory this library computes with).
inline unsigned frobenius_power(const RatFunc& j) {
    require(!j.is_constant(), "isotrivial curve: j-invariant is constant");
    Poly num = j.num(), den = j.den();
    unsigned s = 0;
    for (;;) {
        auto rn = poly_pth_root(num);
        if (!rn) return s;
        auto rd = poly_pth_root(den);
        if (!rd) return s;
        num = *rn;
        den = *rd;
        ++s;
    }
}

inline unsigned frobenius_power(const Curve& E) { return frobenius_power(E.j()); }

struct Descent {
    Curve curve;  // E' with E = Fr_{p^s}(E')
    unsigned s;
};

// Constructive p^s-Frobenius descent: requires every coefficient to be a
// literal p^s-th power (the general twist construction is non-effective and
// out of scope here).
inline Descent frobenius_descend(const Curve& E) {
    unsigned s = frobenius_power(E);
    require(s >= 1, "no descent: j-invariant is not a p-th power");
    auto root_s = [&](const RatFunc& x) -> RatFunc {
        if (x.is_zero()) return x;
        Poly num = x.num(), den = x.den();
        for (unsigned i = 0; i < s; ++i) {
            auto rn = poly_pth_root(num);
            auto rd = poly_pth_root(den);
            require(rn && rd, "descent requires a twist; out of scope");
            num = *rn;
            den = *rd;
        }
        return RatFunc(num, den);
    };
    Curve Eprime(root_s(E.a1()), root_s(E.a2()), root_s(E.a3()), root_s(E.a4()),
                 root_s(E.a6()));
    u64 ps = 1;
    for (unsigned i = 0; i < s; ++i) ps *= E.field().p;
    ensure(Eprime.j().pow((long)ps) == E.j(), "descent must invert the Frobenius on j");
    return Descent{std::move(Eprime), s};
}

// (x, y) -> (x^(p^s), y^(p^s)); maps E'(K) into E(K) when E = Fr_{p^s}(E').
inline Point frobenius_image(const Point& P, const Field& F, unsigned s) {
    if (P.is_infinity()) return P;
    long ps = 1;
    for (unsigned i = 0; i < s; ++i) ps *= (long)F.p;
    return Point::affine(P.x().pow(ps), P.y().pow(ps));
}

// Base change t -> r(u) applied coefficient-wise; r must be non-constant.
inline Curve base_change(const Curve& E, const RatFunc& r) {
    require(!r.is_constant(), "base change substitution must be non-constant");
    return Curve(substitute(E.a1(), r), substitute(E.a2(), r), substitute(E.a3(), r),
                 substitute(E.a4(), r), substitute(E.a6(), r));
}

inline Point base_change(const Point& P, const RatFunc& r) {
    require(!r.is_constant(), "base change substitution must be non-constant");
    if (P.is_infinity()) return P;
    return Point::affine(substitute(P.x(), r), substitute(P.y(), r));
}

// ---- text io ----------------------------------------------------------

// Five comma-separated coefficient expressions a1,a2,a3,a4,a6.
inline Curve parse_curve(std::string_view src, const Field& F) {
    std::vector<RatFunc> parts;
    size_t start = 0;
    int depth = 0;
    for (size_t i = 0; i <= src.size(); ++i) {
        if (i < src.size() && src[i] == '(') ++depth;
        if (i < src.size() && src[i] == ')') --depth;
        if (i == src.size() || (src[i] == ',' && depth == 0)) {
            parts.push_back(parse_ratfunc(src.substr(start, i - start), F));
            start = i + 1;
        }
    }
    if (parts.size() != 5) {
        throw parse_error("curve needs exactly five coefficients a1,a2,a3,a4,a6", 0);
    }
    return Curve(parts[0], parts[1], parts[2], parts[3], parts[4]);
}

// "O" for the identity, otherwise "<x>;<y>".
inline Point parse_point(std::string_view src, const Field& F) {
    size_t a = src.find_first_not_of(" \t");
    if (a != std::string_view::npos && src[a] == 'O') {
        size_t b = src.find_first_not_of(" \t", a + 1);
        if (b == std::string_view::npos) return Point::infinity();
    }
    size_t semi = src.find(';');
    if (semi == std::string_view::npos) {
        throw parse_error("point must be 'O' or '<x>;<y>'", 0);
    }
    RatFunc x = parse_ratfunc(src.substr(0, semi), F);
    RatFunc y = parse_ratfunc(src.substr(semi + 1), F);
    return Point::affine(std::move(x), std::move(y));
}

inline std::string to_string(const Curve& E) {
    return to_string(E.a1()) + "," + to_string(E.a2()) + "," + to_string(E.a3()) + "," +
           to_string(E.a4()) + "," + to_string(E.a6());
}

inline std::string to_string(const Point& P) {
    if (P.is_infinity()) return "O";
    return to_string(P.x()) + ";" + to_string(P.y());
}

}  // namespace edsff
