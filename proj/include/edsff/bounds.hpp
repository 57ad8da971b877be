#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "edsff/identities.hpp"
#include "edsff/ratfunc.hpp"

namespace edsff {

// Small exact rational on 64-bit integers; all bound arithmetic is exact and
// floors happen only at the final reporting step.
struct Rational {
    long long num = 0;
    long long den = 1;

    static Rational make(long long n, long long d) {
        require(d != 0, "rational with zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        long long g = std::gcd(n < 0 ? -n : n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        return Rational{n, d};
    }
    static Rational of(long long n) { return Rational{n, 1}; }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return make(checked(a.num, b.den) + checked(b.num, a.den), checked(a.den, b.den));
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return make(checked(a.num, b.den) - checked(b.num, a.den), checked(a.den, b.den));
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return make(checked(a.num, b.num), checked(a.den, b.den));
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        require(b.num != 0, "rational division by zero");
        return make(checked(a.num, b.den), checked(a.den, b.num));
    }
    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator<=(const Rational& a, const Rational& b) {
        return (__int128)a.num * b.den <= (__int128)b.num * a.den;
    }

    long long floor() const {
        long long q = num / den;
        if (num % den != 0 && num < 0) --q;
        return q;
    }
    std::string str() const {
        return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
    }

private:
    static long long checked(long long a, long long b) {
        __int128 p = (__int128)a * b;
        require(p <= INT64_MAX && p >= INT64_MIN, "rational overflow");
        return (long long)p;
    }
};

// Result of testing Mason's inequality h(g1/g2) <= |T| + 2g - 2 on a triple
// with g1 + g2 + g3 = 0. T is the set of places where the three valuations
// do not all agree; |T| sums place degrees (each place counted once).
struct MasonReport {
    long h12 = 0;
    std::vector<Place> T;
    long T_degree = 0;
    long genus = 0;
    long bound = 0;
    bool pth_power_escape = false;
    bool holds = false;
};

inline MasonReport mason_check(const RatFunc& g1, const RatFunc& g2, const RatFunc& g3,
                               long genus, Rng& rng) {
    require(!g1.is_zero() && !g2.is_zero() && !g3.is_zero(), "Mason needs nonzero terms");
    require((g1 + g2 + g3).is_zero(), "Mason needs g1 + g2 + g3 = 0");
    std::map<Place, std::array<long, 3>> vals;
    const RatFunc* gs[3] = {&g1, &g2, &g3};
    for (int i = 0; i < 3; ++i) {
        for (auto& [pl, v] : support(*gs[i], rng)) {
            auto it = vals.try_emplace(pl, std::array<long, 3>{0, 0, 0}).first;
            it->second[(size_t)i] = v;
        }
    }
    MasonReport rep;
    rep.genus = genus;
    for (auto& [pl, v] : vals) {
        if (v[0] != v[1] || v[1] != v[2]) {
            rep.T.push_back(pl);
            rep.T_degree += pl.degree();
        }
    }
    RatFunc ratio = g1 / g2;
    rep.h12 = ratio.is_constant() ? 0 : ratio.height();
    rep.pth_power_escape = is_pth_power(ratio);
    rep.bound = rep.T_degree + 2 * genus - 2;
    rep.holds = rep.pth_power_escape || rep.h12 <= rep.bound;
    return rep;
}

// h(a X^3 + b Y^2) <= h(a) + h(b) + 3h(X) + 2h(Y).
inline long long sum_height_bound(long long h_a, long long h_b, long long h_X, long long h_Y) {
    require(h_a >= 0 && h_b >= 0 && h_X >= 0 && h_Y >= 0, "heights must be nonnegative");
    return h_a + h_b + 3 * h_X + 2 * h_Y;
}

// Specialization with h(X) + h(Y) <= 11C and max height of coefficients kappa.
inline long long sum_height_bound_kappa(long long kappa, long long C) {
    require(kappa >= 0, "kappa must be nonnegative");
    return 2 * kappa + 33 * C;
}

// A calculator's output, every number tagged with the pipeline it came from
// and the exact pre-floor value where flooring happened.
struct BoundReport {
    std::string formula;
    std::optional<long long> l_max;
    std::optional<long long> n_max;
    std::optional<long long> degB_max;
    std::optional<Rational> n_pre_floor;
    std::optional<Rational> degB_pre_floor;
    std::optional<long long> C;
    std::optional<long long> crude_n_max;  // the 732 deg(disc) ceiling for comparison
    bool degenerate = false;  // C <= 0
    bool vacuous = false;     // 12 h(x) <= h(j)
};

// The shipped preset of S-unit representatives for the worked rank-one
// example after the base change t = u^2: {2, u+1, u-1, u+2, u-2}. Their
// maximal height is the kappa fed to the generic bound (together with
// |S| = 6 for S = {1/u, u, u +- 1, u +- 2}).
inline std::vector<RatFunc> preset_unit_representatives(const Field& F) {
    require(F.p >= 5, "the shipped preset lives over characteristic >= 5");
    Poly u = Poly::variable(F);
    auto c = [&](long long v) { return Poly::from_ints(F, {v}); };
    return {RatFunc(c(2)), RatFunc(u + c(1)), RatFunc(u - c(1)), RatFunc(u + c(2)),
            RatFunc(u - c(2))};
}

inline long long max_height(const std::vector<RatFunc>& reps) {
    long long k = 0;
    for (const auto& r : reps) {
        require(!r.is_zero(), "unit representatives must be nonzero");
        k = std::max(k, (long long)height(r));
    }
    return k;
}

// C = 2g - 2 + |S|; n <= (2 kappa + 33 C)/4; l <= n/2.
inline BoundReport generic_exponent_bound(long long genus, long long S_size, long long kappa) {
    require(S_size >= 1, "S must be nonempty");
    require(kappa >= 0 && genus >= 0, "inputs must be nonnegative");
    BoundReport rep;
    rep.formula = "generic: C = 2g-2+|S|, n <= (2k+33C)/4, l <= n/2";
    long long C = 2 * genus - 2 + S_size;
    rep.C = C;
    if (C <= 0) {
        rep.degenerate = true;
        return rep;
    }
    Rational n_pre = Rational::make(2 * kappa + 33 * C, 4);
    rep.n_pre_floor = n_pre;
    rep.n_max = n_pre.floor();
    rep.l_max = *rep.n_max / 2;
    return rep;
}

// l <= 4 deg(disc), deg B_n <= 61/2 deg(disc), n <= 732 deg(disc)/(12h(x)-h(j)).
inline BoundReport prop19_bounds(long long deg_disc, long long h_x, long long h_j) {
    require(deg_disc >= 1, "deg(disc) must be >= 1");
    require(h_x >= 0 && h_j >= 0, "heights must be nonnegative");
    BoundReport rep;
    rep.formula = "prop19: l <= 4D, degB <= 61D/2, n <= 732D/(12h(x)-h(j))";
    rep.l_max = 4 * deg_disc;
    Rational degb = Rational::make(61 * deg_disc, 2);
    rep.degB_pre_floor = degb;
    rep.degB_max = degb.floor();
    long long den = 12 * h_x - h_j;
    if (den <= 0) {
        rep.vacuous = true;
        return rep;
    }
    Rational n_pre = Rational::make(732 * deg_disc, den);
    rep.n_pre_floor = n_pre;
    rep.n_max = n_pre.floor();
    return rep;
}

// (l - 1) h(X) <= -2 + n0(a) + n0(b) + h(a) + h(b) with h(X) >= 1:
// l <= (-2 + 2 N_ab + 2 H_ab) + 1.
inline long long refined_exponent_bound(long long H_ab, long long N_ab) {
    require(H_ab >= 0 && N_ab >= 0, "inputs must be nonnegative");
    return (-2 + 2 * N_ab + 2 * H_ab) + 1;
}

// n <= (29 D + 32 (n0 - 1)) / (h(x) - h(j)/12), plus the cruder 732-ceiling.
inline BoundReport eee_index_bound(long long deg_disc, long long n0_disc, long long h_x,
                                   long long h_j) {
    require(deg_disc >= 1 && n0_disc >= 1, "discriminant data must be positive");
    require(h_x >= 0 && h_j >= 0, "heights must be nonnegative");
    BoundReport rep;
    rep.formula = "eee: n <= (29D + 32(n0-1))/(h(x) - h(j)/12)";
    long long den = 12 * h_x - h_j;
    if (den <= 0) {
        rep.vacuous = true;
        return rep;
    }
    Rational n_pre =
        Rational::make(29 * deg_disc + 32 * (n0_disc - 1), 1) / Rational::make(den, 12);
    rep.n_pre_floor = n_pre;
    rep.n_max = n_pre.floor();
    rep.crude_n_max = Rational::make(732 * deg_disc, den).floor();
    return rep;
}

// -h(j)/24 <= hhat(P) - h(x(P))/2 <= 0, reported as the bracket for hhat(P).
inline std::pair<Rational, Rational> hhat_bracket(long long h_x, long long h_j) {
    require(h_x >= 0 && h_j >= 0, "heights must be nonnegative");
    Rational lo = Rational::make(h_x, 2) - Rational::make(h_j, 24);
    Rational hi = Rational::make(h_x, 2);
    return {lo, hi};
}

}  // namespace edsff
