#include "doctest.h"
#include "edsff/parse.hpp"
#include "edsff/ratfunc.hpp"
#include "util.hpp"

using namespace edsff;
using testutil::random_nonzero_poly;
using testutil::random_ratfunc;

TEST_SUITE("ratfunc") {

TEST_CASE("reduction invariants") {
    auto F5 = Field::prime(5);
    const Field& F = *F5;
    RatFunc x(parse_poly("2*t^2+2*t", F), parse_poly("4*t+4", F));
    CHECK(x.den().is_monic());
    CHECK(gcd(x.num(), x.den()).is_one());
    CHECK(x == parse_ratfunc("3*t", F));
    CHECK(RatFunc(Poly(F), parse_poly("t", F)).den().is_one());  // zero is 0/1
    CHECK_THROWS_AS(RatFunc(parse_poly("t", F), Poly(F)), domain_error);
}

TEST_CASE("valuations") {
    auto F5 = Field::prime(5);
    const Field& F = *F5;
    RatFunc x = parse_ratfunc("t^2/(t+1)", F);
    CHECK(valuation(x, Place::finite(parse_poly("t", F))) == 2);
    CHECK(valuation(x, Place::infinity()) == -1);
    CHECK_THROWS_AS(valuation(RatFunc(F), Place::infinity()), domain_error);
    // places verify irreducibility
    CHECK_THROWS_AS(Place::finite(parse_poly("t^2+1", F)), domain_error);
    CHECK_THROWS_AS(Place::finite(parse_poly("2*t", F)), domain_error);
}

TEST_CASE("product formula instance (t^2-1)/t^3") {
    auto F5 = Field::prime(5);
    const Field& F = *F5;
    RatFunc x = parse_ratfunc("(t^2-1)/t^3", F);
    CHECK(valuation(x, Place::finite(parse_poly("t+1", F))) == 1);
    CHECK(valuation(x, Place::finite(parse_poly("t+4", F))) == 1);
    CHECK(valuation(x, Place::finite(parse_poly("t", F))) == -3);
    CHECK(valuation(x, Place::infinity()) == 1);
}

TEST_CASE("product formula on random elements") {
    for (auto Fp : {Field::prime(5), Field::prime(13)}) {
        const Field& F = *Fp;
        Rng rng(2024);
        for (int i = 0; i < 250; ++i) {
            RatFunc x = random_ratfunc(F, 8, rng);
            if (x.is_zero()) continue;
            long sum = 0;
            for (auto& [pl, v] : support(x, rng)) sum += v * pl.degree();
            CHECK(sum == 0);
        }
    }
}

TEST_CASE("height examples and the valuation route") {
    auto F5 = Field::prime(5);
    const Field& F = *F5;
    CHECK(height(parse_ratfunc("t", F)) == 1);
    RatFunc j = parse_ratfunc("-(t^2-2)^3/(t^2-1)^2", F);
    CHECK(height(j) == 6);
    CHECK_THROWS_AS(height(RatFunc(F)), domain_error);

    Rng rng(404);
    for (int i = 0; i < 100; ++i) {
        RatFunc x = random_ratfunc(F, 9, rng);
        if (x.is_zero()) continue;
        CHECK(height(x) == height_via_valuations(x, rng));
        CHECK(height(x.inverse()) == height(x));
    }
}

TEST_CASE("height inequalities for sums, products and scalings") {
    auto F5 = Field::prime(5);
    const Field& F = *F5;
    Rng rng(808);
    for (int i = 0; i < 200; ++i) {
        RatFunc x = random_ratfunc(F, 7, rng);
        RatFunc y = random_ratfunc(F, 7, rng);
        if (x.is_zero() || y.is_zero()) continue;
        if (!(x * y).is_zero()) CHECK(height(x * y) <= height(x) + height(y));
        if (!(x + y).is_zero()) CHECK(height(x + y) <= height(x) + height(y));
        RatFunc alpha = random_ratfunc(F, 4, rng);
        if (alpha.is_zero() || (alpha * x).is_zero()) continue;
        CHECK(height(alpha * x) >= height(x) - 2 * height(alpha));
    }
}

TEST_CASE("distinct place count") {
    auto F5 = Field::prime(5);
    const Field& F = *F5;
    Rng rng(3);
    // the discriminant of the running example: 4 t^6 (t+1)^2 (t-1)^2
    RatFunc disc = parse_ratfunc("4*t^6*(t+1)^2*(t-1)^2", F);
    CHECK(distinct_place_count(disc, rng) == 4);  // t, t+1, t-1, infinity
    CHECK(distinct_place_count(parse_ratfunc("2", F), rng) == 0);
    CHECK(distinct_place_count(parse_ratfunc("(t^2+1)/(t^2-1)", F), rng) == 4);
}

TEST_CASE("substitution scales heights and matches the slow route") {
    auto F5 = Field::prime(5);
    const Field& F = *F5;
    RatFunc u2 = parse_ratfunc("t^2", F);
    CHECK(height(substitute(parse_ratfunc("t", F), u2)) == 2);
    Rng rng(12);
    RatFunc r = parse_ratfunc("(t^2+1)/(t+3)", F);
    for (int i = 0; i < 20; ++i) {
        Poly f = random_nonzero_poly(F, 6, rng);
        // Horner route vs monomial fast path consistency via two substitutions
        RatFunc lhs = substitute(f, u2);
        RatFunc rhs(F);
        for (long k = f.degree(); k >= 0; --k) {
            rhs = rhs * u2 + RatFunc(Poly::constant(f.coeff((size_t)k)));
        }
        CHECK(lhs == rhs);
        // substitution is a ring homomorphism
        Poly g = random_nonzero_poly(F, 5, rng);
        CHECK(substitute(f * g, r) == substitute(f, r) * substitute(g, r));
    }
    // base-change by u^e multiplies heights by e
    for (int i = 0; i < 20; ++i) {
        RatFunc x = random_ratfunc(F, 6, rng);
        if (x.is_zero()) continue;
        CHECK(height(substitute(x, u2)) == 2 * height(x));
    }
}

TEST_CASE("place set membership") {
    auto F5 = Field::prime(5);
    const Field& F = *F5;
    PlaceSet S;
    CHECK(S.includes_infinity);
    S.add_finite(parse_poly("t", F));
    S.add_finite(parse_poly("t", F));
    S.add_finite(parse_poly("t+1", F));
    CHECK(S.finite.size() == 2);
    CHECK(S.contains_finite(parse_poly("t", F)));
    CHECK(!S.contains_finite(parse_poly("t+2", F)));
}

}  // TEST_SUITE
