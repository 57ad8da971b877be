#pragma once

#include "edsff/curve.hpp"
#include "edsff/rng.hpp"

// Shared generators for randomized tests. Everything is driven by an
// explicit Rng so failures reproduce from the seed.
namespace testutil {

using namespace edsff;

inline Poly random_poly(const Field& F, long deg, Rng& rng, bool monic = false) {
    if (deg < 0) return Poly(F);
    std::vector<u64> c((size_t)deg + 1);
    for (auto& x : c) x = rng.below(F.q);
    c.back() = monic ? 1 : (1 + rng.below(F.q - 1));
    return Poly(F, std::move(c));
}

inline Poly random_nonzero_poly(const Field& F, long max_deg, Rng& rng) {
    return random_poly(F, (long)rng.below((u64)max_deg + 1), rng);
}

inline RatFunc random_ratfunc(const Field& F, long max_deg, Rng& rng) {
    Poly num = random_nonzero_poly(F, max_deg, rng);
    Poly den = random_nonzero_poly(F, max_deg, rng);
    return RatFunc(num, den);
}

// A short curve y^2 = x^3 + a x + b with a chosen integral point on it:
// pick x0, y0, a and solve for b.
struct CurveWithPoint {
    Curve curve;
    Point point;
};

inline CurveWithPoint random_short_curve_with_point(const Field& F, Rng& rng, long deg = 2) {
    for (;;) {
        Poly x0 = random_nonzero_poly(F, deg, rng);
        Poly y0 = random_nonzero_poly(F, deg + 1, rng);
        Poly a = random_nonzero_poly(F, deg, rng);
        Poly b = y0 * y0 - x0 * x0 * x0 - a * x0;
        RatFunc zero(F);
        RatFunc disc = RatFunc::from_int(F, -16) *
                       (RatFunc::from_int(F, 4) * RatFunc(a).pow(3) +
                        RatFunc::from_int(F, 27) * RatFunc(b) * RatFunc(b));
        if (disc.is_zero()) continue;
        Curve E(zero, zero, zero, RatFunc(a), RatFunc(b));
        Point P = Point::affine(RatFunc(x0), RatFunc(y0));
        E.require_contains(P);
        return {std::move(E), std::move(P)};
    }
}

// A curve with full rational 2-torsion y^2 = (x - r0)(x - r1)(x - r2) plus a
// rational point whose A - alpha_i B^2 values are exact squares: choose B and
// z_i with z_i^2 congruent mod B^2, then read the alphas off.
struct SplitCurveData {
    Curve curve;
    Point point;
    std::array<RatFunc, 3> alphas;
};

inline SplitCurveData random_split_curve_with_square_point(const Field& F, Rng& rng,
                                                           bool trace_zero = false) {
    for (;;) {
        Poly B = random_poly(F, 1 + (long)rng.below(2), rng, /*monic=*/true);
        Poly w = random_nonzero_poly(F, 2, rng);
        if (gcd(w, B).degree() != 0) continue;
        Poly B2 = B * B;
        std::array<Poly, 3> z;
        bool zero_z = false;
        for (auto& zi : z) {
            zi = w + B2 * random_nonzero_poly(F, 1, rng);
            if (zi.is_zero()) zero_z = true;
        }
        if (zero_z) continue;
        Poly alpha0 = random_nonzero_poly(F, 1, rng);
        Poly A = z[0] * z[0] + alpha0 * B2;
        if (gcd(A, B).degree() != 0) continue;
        std::array<Poly, 3> alpha;
        alpha[0] = alpha0;
        alpha[1] = alpha0 + exact_div(z[0] * z[0] - z[1] * z[1], B2);
        alpha[2] = alpha0 + exact_div(z[0] * z[0] - z[2] * z[2], B2);
        if (alpha[0] == alpha[1] || alpha[0] == alpha[2] || alpha[1] == alpha[2]) continue;
        if (trace_zero) {
            // shift so the x^2 coefficient vanishes (short split model);
            // works only when the alpha sum is divisible by 3 exactly
            Poly s = alpha[0] + alpha[1] + alpha[2];
            Fq three = Fq::from_int(F, 3);
            Poly shift = three.inverse() * s;
            for (auto& al : alpha) al = al - shift;
            A = A - shift * B2;
            if (gcd(A, B).degree() != 0) continue;
        }
        RatFunc e1 = RatFunc(alpha[0] + alpha[1] + alpha[2]);
        RatFunc e2 = RatFunc(alpha[0] * alpha[1] + alpha[0] * alpha[2] + alpha[1] * alpha[2]);
        RatFunc e3 = RatFunc(alpha[0] * alpha[1] * alpha[2]);
        RatFunc zero(F);
        RatFunc a2 = -e1, a4 = e2, a6 = -e3;
        // discriminant nonzero since the alphas are distinct
        Curve E(zero, a2, zero, a4, a6);
        Poly C = z[0] * z[1] * z[2];
        Point P = Point::affine(RatFunc(A, B2), RatFunc(C, B * B2));
        if (!E.contains(P)) continue;  // sign of C may need flipping; retry is fine
        SplitCurveData out{std::move(E), std::move(P),
                           {RatFunc(alpha[0]), RatFunc(alpha[1]), RatFunc(alpha[2])}};
        return out;
    }
}

}  // namespace testutil
