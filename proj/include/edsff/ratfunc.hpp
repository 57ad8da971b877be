#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "edsff/factor.hpp"
#include "edsff/poly.hpp"

namespace edsff {

// Element of F_q(t), kept reduced: gcd(num, den) = 1, den monic, zero = 0/1.
class RatFunc {
public:
    RatFunc() = default;
    explicit RatFunc(const Field& f) : num_(f), den_(Poly::from_ints(f, {1})) {}
    RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
        require(!den_.is_zero(), "rational function with zero denominator");
        normalize();
    }
    // NOLINTNEXTLINE(google-explicit-constructor): polynomials embed naturally
    RatFunc(const Poly& num) : num_(num), den_(Poly::from_ints(num.field(), {1})) {}

    static RatFunc from_int(const Field& f, long long v) {
        return RatFunc(Poly::from_ints(f, {v}));
    }

    const Field& field() const { return num_.field(); }
    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_polynomial() const { return den_.is_one(); }
    bool is_constant() const { return num_.is_constant() && den_.is_one(); }

    const Poly& as_poly() const {
        require(is_polynomial(), "rational function is not a polynomial");
        return num_;
    }

    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        Poly g = gcd(a.den_, b.den_);
        if (g.is_one()) {
            return reduced_known(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
        }
        Poly da = exact_div(a.den_, g), db = exact_div(b.den_, g);
        Poly t = a.num_ * db + b.num_ * da;
        Poly g2 = gcd(t, g);
        return reduced_known(exact_div(t, g2), da * exact_div(b.den_, g2));
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
    RatFunc operator-() const {
        RatFunc r = *this;
        r.num_ = -r.num_;
        return r;
    }

    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        if (a.is_zero() || b.is_zero()) return RatFunc(a.field());
        if (&a == &b || (a.num_ == b.num_ && a.den_ == b.den_)) {
            // square of a reduced fraction is already reduced
            return reduced_known(a.num_ * a.num_, a.den_ * a.den_);
        }
        Poly g1 = gcd(a.num_, b.den_);
        Poly g2 = gcd(b.num_, a.den_);
        return reduced_known(exact_div(a.num_, g1) * exact_div(b.num_, g2),
                             exact_div(a.den_, g2) * exact_div(b.den_, g1));
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        require(!b.is_zero(), "division by zero rational function");
        return a * b.inverse();
    }

    RatFunc inverse() const {
        require(!is_zero(), "inverse of zero");
        RatFunc r;
        r.num_ = den_;
        r.den_ = num_;
        Fq lc = r.den_.leading();
        if (!lc.is_one()) {
            Fq s = lc.inverse();
            r.num_ = s * r.num_;
            r.den_ = s * r.den_;
        }
        return r;
    }

    RatFunc pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        RatFunc r = RatFunc::from_int(field(), 1), b = *this;
        u64 k = (u64)e;
        while (k) {
            if (k & 1) r = r * b;
            b = b * b;
            k >>= 1;
        }
        return r;
    }

    // max(deg num, deg den); undefined (throws) for 0.
    long height() const {
        require(!is_zero(), "height of zero is undefined");
        return std::max(num_.degree(), den_.degree());
    }

private:
    static RatFunc reduced_known(Poly n, Poly d) {
        RatFunc r;
        r.num_ = std::move(n);
        r.den_ = std::move(d);
        if (r.num_.is_zero()) {
            r.den_ = Poly::from_ints(r.den_.field(), {1});
            return r;
        }
        Fq lc = r.den_.leading();
        if (!lc.is_one()) {
            Fq s = lc.inverse();
            r.num_ = s * r.num_;
            r.den_ = s * r.den_;
        }
        return r;
    }

    void normalize() {
        if (num_.is_zero()) {
            den_ = Poly::from_ints(den_.field(), {1});
            return;
        }
        Poly g = gcd(num_, den_);
        if (!g.is_one()) {
            num_ = exact_div(num_, g);
            den_ = exact_div(den_, g);
        }
        Fq lc = den_.leading();
        if (!lc.is_one()) {
            Fq s = lc.inverse();
            num_ = s * num_;
            den_ = s * den_;
        }
    }

    Poly num_, den_;
};

// A place of F_q(t): either a monic irreducible polynomial or the place at
// infinity (1/t). Finite places are irreducibility-checked on construction.
class Place {
public:
    static Place finite(Poly pi) {
        require(pi.degree() >= 1 && pi.is_monic(), "finite place needs a monic polynomial");
        require(is_irreducible(pi), "finite place polynomial must be irreducible");
        Place v;
        v.pi_ = std::move(pi);
        return v;
    }
    static Place infinity() { return Place(); }

    bool is_infinite() const { return !pi_.has_value(); }
    const Poly& uniformizer() const {
        require(pi_.has_value(), "infinite place has no polynomial uniformizer");
        return *pi_;
    }
    long degree() const { return is_infinite() ? 1 : pi_->degree(); }

    friend bool operator==(const Place& a, const Place& b) {
        if (a.is_infinite() != b.is_infinite()) return false;
        return a.is_infinite() || *a.pi_ == *b.pi_;
    }
    friend bool operator<(const Place& a, const Place& b) {
        if (a.is_infinite() != b.is_infinite()) return b.is_infinite();
        if (a.is_infinite()) return false;
        return *a.pi_ < *b.pi_;
    }

private:
    Place() = default;
    std::optional<Poly> pi_;
};

// pi-adic order of a nonzero polynomial.
inline long poly_ord(const Poly& f, const Poly& pi) {
    require(!f.is_zero(), "order of zero polynomial");
    long ord = 0;
    Poly r = f;
    for (;;) {
        auto [q, rem] = divmod(r, pi);
        if (!rem.is_zero()) return ord;
        ++ord;
        r = q;
        if (r.is_constant()) return ord;
    }
}

inline long valuation(const RatFunc& x, const Place& v) {
    require(!x.is_zero(), "valuation of zero is +infinity");
    if (v.is_infinite()) return x.den().degree() - x.num().degree();
    long a = x.num().is_constant() ? 0 : poly_ord(x.num(), v.uniformizer());
    long b = x.den().is_constant() ? 0 : poly_ord(x.den(), v.uniformizer());
    return a - b;
}

inline long height(const RatFunc& x) { return x.height(); }

// All places where x has nonzero valuation, with the valuations.
inline std::vector<std::pair<Place, long>> support(const RatFunc& x, Rng& rng) {
    require(!x.is_zero(), "support of zero");
    std::vector<std::pair<Place, long>> out;
    if (x.num().degree() >= 1) {
        for (auto& fp : factor(x.num(), rng).factors) {
            out.push_back({Place::finite(fp.prime), fp.mult});
        }
    }
    if (x.den().degree() >= 1) {
        for (auto& fp : factor(x.den(), rng).factors) {
            out.push_back({Place::finite(fp.prime), -fp.mult});
        }
    }
    long vinf = x.den().degree() - x.num().degree();
    if (vinf != 0) out.push_back({Place::infinity(), vinf});
    return out;
}

// Independent route to the height: -sum of negative valuations weighted by
// place degree. Used to cross-check the max-degree formula.
inline long height_via_valuations(const RatFunc& x, Rng& rng) {
    long h = 0;
    for (auto& [v, ord] : support(x, rng)) {
        if (ord < 0) h -= ord * v.degree();
    }
    return h;
}

// Number of distinct places with nonzero valuation (each place counted once,
// regardless of its degree), including infinity.
inline long distinct_place_count(const RatFunc& x, Rng& rng) {
    require(!x.is_zero(), "place count of zero");
    return (long)support(x, rng).size();
}

// f(r) for a polynomial f; spreads exponents directly when r = c*u^e.
inline RatFunc substitute(const Poly& f, const RatFunc& r) {
    const Field& F = r.field();
    require(F.same_as(f.field()), "substitution across different fields");
    if (f.is_zero()) return RatFunc(F);
    if (r.is_polynomial() && r.num().degree() >= 1 &&
        r.num().trailing_zeros() == r.num().degree()) {
        // monomial c*u^e
        long e = r.num().degree();
        Fq c = r.num().leading();
        std::vector<u64> out((size_t)(f.degree() * e) + 1, 0);
        Fq ci = Fq(F, F.one());
        for (long i = 0; i <= f.degree(); ++i) {
            out[(size_t)(i * e)] = (f.coeff((size_t)i) * ci).packed();
            ci = ci * c;
        }
        return RatFunc(Poly(F, std::move(out)));
    }
    RatFunc acc(F);
    for (long i = f.degree(); i >= 0; --i) {
        acc = acc * r + RatFunc(Poly::constant(f.coeff((size_t)i)));
    }
    return acc;
}

inline RatFunc substitute(const RatFunc& x, const RatFunc& r) {
    return substitute(x.num(), r) / substitute(x.den(), r);
}

// Finite set of places plus an infinity flag (infinity is a member by
// default, matching the convention that denominators live in F_q[t]).
struct PlaceSet {
    std::vector<Poly> finite;  // monic irreducibles, sorted, duplicate-free
    bool includes_infinity = true;

    void add_finite(const Poly& pi) {
        require(pi.degree() >= 1 && pi.is_monic(), "place must be a monic polynomial");
        require(is_irreducible(pi), "place polynomial must be irreducible");
        auto it = std::lower_bound(finite.begin(), finite.end(), pi);
        if (it == finite.end() || !(*it == pi)) finite.insert(it, pi);
    }
    bool contains_finite(const Poly& pi) const {
        auto it = std::lower_bound(finite.begin(), finite.end(), pi);
        return it != finite.end() && *it == pi;
    }
};

}  // namespace edsff
