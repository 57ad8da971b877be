#pragma once

#include <functional>
#include <string>
#include <vector>

#include "edsff/curve.hpp"

namespace edsff {

// One term of the elliptic divisibility sequence attached to (E, P):
// x(nP) = A/B^2 and y(nP) = C/B^3 with B monic and gcd(A, B) = gcd(C, B) = 1.
// When nP = O the term is marked infinite and A, B, C are unset.
struct EdsTerm {
    long n = 0;
    bool infinite = false;
    Poly A, B, C;
};

enum class EdsStrategy {
    Iterative,  // cached nP, one addition per step
    Ladder,     // independent double-and-add per n (parallel-friendly)
    Both,       // run both and insist they agree
};

namespace detail {

inline EdsTerm extract_term(const Point& nP, long n) {
    EdsTerm t;
    t.n = n;
    if (nP.is_infinity()) {
        t.infinite = true;
        return t;
    }
    // The denominator structure is asserted, never assumed: den(x) must be a
    // perfect monic square B^2 and den(y) must equal B^3 exactly.
    auto sq = exact_sqrt(nP.x().den());
    require(sq.has_value() && sq->unit.is_one(),
            "denominator of x(nP) is not a perfect square: model is not integral enough");
    const Poly& B = sq->root;
    require(nP.y().den() == B * B * B,
            "denominator of y(nP) is not the matching cube: model is not integral enough");
    t.A = nP.x().num();
    t.B = B;
    t.C = nP.y().num();
    return t;
}

inline void check_eds_inputs(const Curve& E, const Point& P) {
    require(E.is_integral(), "EDS needs a curve model with polynomial coefficients");
    require(!P.is_infinity(), "EDS base point must be affine");
    E.require_contains(P);
}

}  // namespace detail

inline EdsTerm eds_term(const Curve& E, const Point& P, long n) {
    detail::check_eds_inputs(E, P);
    require(n >= 1, "EDS index must be >= 1");
    return detail::extract_term(E.scalar_mul(n, P), n);
}

// Stream terms lo..hi in order. The iterative strategy amortizes the scalar
// multiple across the range; the ladder recomputes each n independently.
inline void eds_foreach(const Curve& E, const Point& P, long lo, long hi,
                        EdsStrategy strategy, const std::function<void(const EdsTerm&)>& sink) {
    detail::check_eds_inputs(E, P);
    require(1 <= lo && lo <= hi, "empty or invalid EDS range");
    if (strategy == EdsStrategy::Ladder) {
        for (long n = lo; n <= hi; ++n) sink(detail::extract_term(E.scalar_mul(n, P), n));
        return;
    }
    Point cur = E.scalar_mul(lo, P);
    for (long n = lo; n <= hi; ++n) {
        EdsTerm t = detail::extract_term(cur, n);
        if (strategy == EdsStrategy::Both) {
            EdsTerm u = detail::extract_term(E.scalar_mul(n, P), n);
            ensure(t.infinite == u.infinite && t.A == u.A && t.B == u.B && t.C == u.C,
                   "iterative and ladder strategies disagree");
        }
        sink(t);
        if (n < hi) cur = E.add(cur, P);
    }
}

inline std::vector<EdsTerm> eds_range(const Curve& E, const Point& P, long n_max,
                                      EdsStrategy strategy = EdsStrategy::Iterative) {
    std::vector<EdsTerm> out;
    out.reserve((size_t)n_max);
    eds_foreach(E, P, 1, n_max, strategy, [&](const EdsTerm& t) { out.push_back(t); });
    return out;
}

// Divisibility-set membership: every valuation outside
// S at which x(P) is negative must be divisible by n. Finite negative valuations
// live on the primes of B; infinity is exempt whenever it belongs to S.
inline bool eds_membership(const Curve& E, const Point& P, long n, const PlaceSet& S,
                           Rng& rng) {
    detail::check_eds_inputs(E, P);
    require(n >= 1, "membership index must be >= 1");
    EdsTerm t = detail::extract_term(P, 1);
    if (t.B.degree() >= 1) {
        for (auto& fp : factor(t.B, rng).factors) {
            if (S.contains_finite(fp.prime)) continue;
            long vx = -2 * fp.mult;  // v(x(P)) at this prime
            if (vx % n != 0) return false;
        }
    }
    if (!S.includes_infinity) {
        long vinf = valuation(P.x(), Place::infinity());
        if (vinf < 0 && vinf % n != 0) return false;
    }
    return true;
}

struct LawViolation {
    long m = 0;
    long n = 0;
    std::string what;
};

struct LawReport {
    std::vector<LawViolation> violations;
    bool ok() const { return violations.empty(); }
};

// B_m | B_n whenever m | n.
inline LawReport check_divisibility(const std::vector<EdsTerm>& terms) {
    LawReport rep;
    for (const EdsTerm& tm : terms) {
        if (tm.infinite || tm.B.degree() < 1) continue;
        for (const EdsTerm& tn : terms) {
            if (tn.infinite || tn.n <= tm.n || tn.n % tm.n != 0) continue;
            if (!divides(tm.B, tn.B)) {
                rep.violations.push_back({tm.n, tn.n, "B_m does not divide B_n"});
            }
        }
    }
    return rep;
}

// Once a prime enters B_n, it keeps the same multiplicity in every B_{mn}
// with m coprime to p: equivalently B_n | B_{mn} with cofactor coprime to
// B_n. The coprimality restriction on the multiplier is essential: the
// p-series of the formal group has no linear term in characteristic p, so
// multiplicities jump by a factor of p along n -> pn (e.g. ord(B_15) = 5
// while ord(B_3) = 1 at the same prime, on the rank-one example curve).
inline LawReport check_rigidity(const std::vector<EdsTerm>& terms) {
    LawReport rep;
    for (const EdsTerm& tm : terms) {
        if (tm.infinite || tm.B.degree() < 1) continue;
        u64 p = tm.B.field().p;
        for (const EdsTerm& tn : terms) {
            if (tn.infinite || tn.n <= tm.n || tn.n % tm.n != 0) continue;
            if ((u64)(tn.n / tm.n) % p == 0) continue;
            if (!divides(tm.B, tn.B)) {
                rep.violations.push_back({tm.n, tn.n, "divisibility fails"});
                continue;
            }
            Poly cof = exact_div(tn.B, tm.B);
            if (gcd(cof, tm.B).degree() != 0) {
                rep.violations.push_back({tm.n, tn.n, "a prime of B_m gained multiplicity in B_n"});
            }
        }
    }
    return rep;
}

}  // namespace edsff
