#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <vector>

#include "edsff/poly.hpp"
#include "edsff/rng.hpp"

namespace edsff {

// f = unit * prod parts[i].base ^ parts[i].mult, bases monic squarefree and
// pairwise coprime, multiplicities exact (including p-th power towers).
struct SqfPart {
    Poly base;
    long mult;
};
struct SqfDecomp {
    Fq unit;
    std::vector<SqfPart> parts;

    Poly reassemble() const {
        Poly r = Poly::constant(unit);
        for (const auto& pt : parts) r = r * pt.base.pow((u64)pt.mult);
        return r;
    }
};

// g with g^p = f, if one exists: every exponent divisible by p and each
// coefficient replaced by its (always unique) p-th root.
inline std::optional<Poly> poly_pth_root(const Poly& f) {
    require(!f.is_zero(), "poly_pth_root of zero polynomial");
    const Field& F = f.field();
    u64 p = F.p;
    if ((u64)f.degree() % p != 0 && f.degree() > 0) return std::nullopt;
    std::vector<u64> c((size_t)(f.degree() / (long)p) + 1, 0);
    for (long i = 0; i <= f.degree(); ++i) {
        u64 v = f.coeff((size_t)i).packed();
        if (!v) continue;
        if ((u64)i % p != 0) return std::nullopt;
        c[(size_t)i / p] = F.pth_root(v);
    }
    return Poly(F, std::move(c));
}

namespace detail {

inline void sqf_recurse(const Poly& f, long stride, std::vector<SqfPart>& out) {
    if (f.degree() == 0) return;
    const Field& F = f.field();
    Poly df = f.derivative();
    if (df.is_zero()) {
        // f = g(t^p): pull out the p-th root and scale multiplicities
        auto g = poly_pth_root(f);
        ensure(g.has_value(), "zero derivative without a p-th root");
        sqf_recurse(*g, stride * (long)F.p, out);
        return;
    }
    Poly c = gcd(f, df);
    Poly w = exact_div(f, c);
    long i = 1;
    while (w.degree() > 0) {
        Poly y = gcd(w, c);
        Poly z = exact_div(w, y);
        if (z.degree() > 0) out.push_back({z, i * stride});
        c = exact_div(c, y);
        w = y;
        ++i;
    }
    // what remains carries only multiplicities divisible by p
    if (c.degree() > 0) sqf_recurse(c, stride, out);
}

}  // namespace detail

inline SqfDecomp squarefree_decomp(const Poly& f) {
    require(!f.is_zero(), "squarefree decomposition of zero polynomial");
    SqfDecomp d{f.is_constant() ? f.coeff(0) : f.leading(), {}};
    if (f.degree() < 1) return d;
    detail::sqf_recurse(f.monic(), 1, d.parts);
    // merge equal multiplicities and order canonically
    std::map<long, Poly> merged;
    for (auto& pt : d.parts) {
        auto it = merged.find(pt.mult);
        if (it == merged.end()) {
            merged.emplace(pt.mult, pt.base);
        } else {
            it->second = it->second * pt.base;
        }
    }
    d.parts.clear();
    for (auto& [m, b] : merged) d.parts.push_back({b, m});
    return d;
}

// Largest l* such that f is an l-th power (up to a constant) exactly for the
// divisors l of l*: the gcd of all multiplicities.
inline long max_power_exponent(const Poly& f) {
    require(!f.is_zero(), "max_power_exponent of zero polynomial");
    require(f.degree() >= 1, "max_power_exponent of a constant: every exponent divides");
    SqfDecomp d = squarefree_decomp(f);
    long g = 0;
    for (const auto& pt : d.parts) g = std::gcd(g, pt.mult);
    return g;
}

inline bool is_perfect_power(const Poly& f, long ell) {
    return max_power_exponent(f) % ell == 0;
}

namespace detail {

inline Poly poly_powmod(Poly base, u64 e, const Poly& mod) {
    Poly r = Poly::from_ints(base.field(), {1});
    base = base % mod;
    while (e) {
        if (e & 1) r = (r * base) % mod;
        base = (base * base) % mod;
        e >>= 1;
    }
    return r;
}

// Split a product of degree-d irreducibles (Cantor-Zassenhaus).
inline void edf(const Poly& f, long d, Rng& rng, std::vector<Poly>& out) {
    const Field& F = f.field();
    if (f.degree() == d) {
        out.push_back(f.monic());
        return;
    }
    for (;;) {
        std::vector<u64> c((size_t)f.degree(), 0);
        for (auto& x : c) x = rng.below(F.q);
        Poly a(F, std::move(c));
        if (a.is_zero()) continue;
        Poly g = gcd(a, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            edf(g, d, rng, out);
            edf(exact_div(f, g), d, rng, out);
            return;
        }
        Poly split(F);
        if (F.p != 2) {
            // trace to F_{q^d}, then the Euler criterion over F_q
            Poly s = a % f;
            Poly t = s;
            for (long i = 1; i < d; ++i) {
                t = poly_powmod(t, F.q, f);
                s = (s + t) % f;
            }
            if (s.is_zero()) continue;
            Poly u = poly_powmod(s, (F.q - 1) / 2, f);
            split = gcd(u - Poly::from_ints(F, {1}), f);
        } else {
            // absolute F_2-trace
            Poly s = a % f;
            Poly t = s;
            long bits = d * (long)F.k;
            for (long i = 1; i < bits; ++i) {
                t = (t * t) % f;
                s = s + t;
            }
            s = s % f;
            split = gcd(s, f);
        }
        if (split.degree() > 0 && split.degree() < f.degree()) {
            edf(split, d, rng, out);
            edf(exact_div(f, split), d, rng, out);
            return;
        }
    }
}

}  // namespace detail

struct FactorPair {
    Poly prime;  // monic irreducible
    long mult;
};
struct Factorization {
    Fq unit;
    std::vector<FactorPair> factors;

    Poly reassemble() const {
        Poly r = Poly::constant(unit);
        for (const auto& fp : factors) r = r * fp.prime.pow((u64)fp.mult);
        return r;
    }
};

// Complete factorization: squarefree decomposition, then distinct-degree,
// then randomized equal-degree splitting. Deterministic for a fixed seed.
inline Factorization factor(const Poly& f, Rng& rng) {
    require(!f.is_zero(), "factorization of zero polynomial");
    Factorization result{f.is_constant() ? f.coeff(0) : f.leading(), {}};
    if (f.degree() < 1) return result;
    const Field& F = f.field();
    SqfDecomp sq = squarefree_decomp(f);
    Poly x = Poly::variable(F);
    for (const auto& part : sq.parts) {
        Poly rest = part.base;
        std::vector<std::pair<Poly, long>> stages;
        Poly h = x % rest;
        long d = 0;
        while (rest.degree() >= 2 * (d + 1)) {
            ++d;
            h = detail::poly_powmod(h, F.q, rest);
            Poly g = gcd(h - x, rest);
            if (g.degree() > 0) {
                stages.push_back({g, d});
                rest = exact_div(rest, g);
                h = h % rest;
            }
        }
        // anything left is a single irreducible of higher degree
        if (rest.degree() > 0) stages.push_back({rest, rest.degree()});
        for (auto& [prod, deg] : stages) {
            std::vector<Poly> irr;
            detail::edf(prod, deg, rng, irr);
            for (auto& pi : irr) result.factors.push_back({pi, part.mult});
        }
    }
    std::sort(result.factors.begin(), result.factors.end(),
              [](const FactorPair& a, const FactorPair& b) { return a.prime < b.prime; });
    return result;
}

inline Factorization factor(const Poly& f, u64 seed = 0x5eedf00d) {
    Rng rng(seed);
    return factor(f, rng);
}

inline bool is_irreducible(const Poly& f) {
    require(!f.is_zero(), "irreducibility of zero polynomial");
    if (f.degree() < 1) return false;
    if (f.degree() == 1) return true;
    const Field& F = f.field();
    Poly x = Poly::variable(F);
    Poly m = f.monic();
    long n = f.degree();
    // x^(q^n) = x mod f, and gcd(x^(q^(n/l)) - x, f) = 1 for primes l | n
    std::vector<Poly> frob(1, x % m);  // frob[j] = x^(q^j) mod m
    for (long j = 1; j <= n; ++j) frob.push_back(detail::poly_powmod(frob.back(), F.q, m));
    if (!(frob[(size_t)n] - x % m).is_zero()) return false;
    for (long l = 2; l <= n; ++l) {
        if (n % l != 0 || !detail::is_prime_u64((u64)l)) continue;
        if (gcd(frob[(size_t)(n / l)] - x, m).degree() != 0) return false;
    }
    return true;
}

// Distinct monic irreducible divisors (the radical's factor list).
inline std::vector<Poly> distinct_prime_factors(const Poly& f, Rng& rng) {
    Factorization fac = factor(f, rng);
    std::vector<Poly> out;
    out.reserve(fac.factors.size());
    for (auto& fp : fac.factors) out.push_back(fp.prime);
    return out;
}

}  // namespace edsff
