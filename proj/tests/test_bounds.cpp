#include "doctest.h"
#include "edsff/bounds.hpp"
#include "util.hpp"

using namespace edsff;
using testutil::random_nonzero_poly;

TEST_SUITE("bounds") {

TEST_CASE("exact rationals") {
    Rational a = Rational::make(386, 1), b = Rational::make(1, 2);
    CHECK((a / b).num == 772);
    CHECK((a / b).den == 1);
    CHECK(Rational::make(134, 4).floor() == 33);
    CHECK(Rational::make(-7, 2).floor() == -4);
    CHECK(Rational::make(6, -4).num == -3);
    CHECK(Rational::make(6, -4).den == 2);
    CHECK_THROWS_AS(Rational::make(1, 0), domain_error);
}

TEST_CASE("mason: the minimal abc instance") {
    auto F5 = Field::prime(5);
    const Field& F = *F5;
    Rng rng(1);
    auto rep = mason_check(parse_ratfunc("t", F), parse_ratfunc("1-t", F),
                           parse_ratfunc("-1", F), 0, rng);
    CHECK(rep.h12 == 1);
    CHECK(rep.T_degree == 3);  // t, t-1, infinity
    CHECK(rep.bound == 1);
    CHECK(!rep.pth_power_escape);
    CHECK(rep.holds);
}

TEST_CASE("mason: the frobenius escape") {
    auto F5 = Field::prime(5);
    const Field& F = *F5;
    Rng rng(2);
    auto rep = mason_check(parse_ratfunc("t^5", F), parse_ratfunc("1-t^5", F),
                           parse_ratfunc("-1", F), 0, rng);
    CHECK(rep.pth_power_escape);  // t^5 / (1-t)^5 is a 5th power
    CHECK(rep.holds);
}

TEST_CASE("mason holds on 200 generated triples") {
    for (auto Fp : {Field::prime(5), Field::prime(7)}) {
        const Field& F = *Fp;
        Rng rng(99);
        int done = 0;
        while (done < 100) {
            RatFunc g1(random_nonzero_poly(F, 6, rng));
            RatFunc g2(random_nonzero_poly(F, 6, rng));
            RatFunc g3 = -(g1 + g2);
            if (g3.is_zero()) continue;
            auto rep = mason_check(g1, g2, g3, 0, rng);
            CHECK(rep.holds);
            ++done;
        }
    }
}

TEST_CASE("mason rejects bad input") {
    auto F5 = Field::prime(5);
    const Field& F = *F5;
    Rng rng(3);
    CHECK_THROWS_AS(mason_check(parse_ratfunc("t", F), parse_ratfunc("t", F),
                                parse_ratfunc("t", F), 0, rng),
                    domain_error);
    CHECK_THROWS_AS(mason_check(parse_ratfunc("t", F), parse_ratfunc("-t", F), RatFunc(F), 0, rng),
                    domain_error);
}

TEST_CASE("height-sum bound") {
    CHECK(sum_height_bound(1, 1, 2, 3) == 14);
    CHECK(sum_height_bound(0, 0, 0, 0) == 0);
    CHECK(sum_height_bound_kappa(1, 4) == 134);
    CHECK_THROWS_AS(sum_height_bound(-1, 0, 0, 0), domain_error);
}

TEST_CASE("the shipped unit-representative preset feeds the generic bound") {
    auto F5 = Field::prime(5);
    auto reps = preset_unit_representatives(*F5);
    CHECK(reps.size() == 5);
    CHECK(max_height(reps) == 1);
    auto rep = generic_exponent_bound(0, 6, max_height(reps));
    CHECK(*rep.n_max == 33);
    CHECK(*rep.l_max == 16);
}

TEST_CASE("generic exponent bound") {
    auto rep = generic_exponent_bound(0, 6, 1);
    CHECK(*rep.C == 4);
    CHECK(*rep.n_max == 33);
    CHECK(*rep.l_max == 16);
    CHECK(rep.n_pre_floor->num == 67);  // 134/4 = 67/2
    CHECK(rep.n_pre_floor->den == 2);

    auto degenerate = generic_exponent_bound(0, 2, 0);
    CHECK(degenerate.degenerate);
    CHECK(!degenerate.n_max.has_value());

    auto g1 = generic_exponent_bound(1, 1, 0);
    CHECK(*g1.C == 1);
    CHECK(*g1.n_max == 8);
    CHECK(*g1.l_max == 4);
}

TEST_CASE("degree-linear bounds") {
    auto rep = prop19_bounds(10, 1, 6);
    CHECK(*rep.l_max == 40);
    CHECK(*rep.degB_max == 305);
    CHECK(*rep.n_max == 1220);

    auto vac = prop19_bounds(10, 1, 12);
    CHECK(vac.vacuous);
    CHECK(*vac.l_max == 40);  // l and degB survive the vacuous n case
    CHECK(!vac.n_max.has_value());

    auto unit = prop19_bounds(1, 1, 0);
    CHECK(*unit.l_max == 4);
    CHECK(*unit.degB_max == 30);
    CHECK(*unit.n_max == 61);
}

TEST_CASE("refined exponent bound") {
    CHECK(refined_exponent_bound(4, 4) == 15);
    CHECK(refined_exponent_bound(10, 11) == 4 * 10 + 1);
    CHECK(refined_exponent_bound(0, 0) == -1);  // no constraint below 1
}

TEST_CASE("index bound with the n0 refinement") {
    auto rep = eee_index_bound(10, 4, 1, 6);
    CHECK(*rep.n_max == 772);
    CHECK(rep.n_pre_floor->num == 772);
    CHECK(*rep.crude_n_max == 1220);

    auto collapsed = eee_index_bound(10, 1, 1, 6);
    // n0 = 1 drops the 32-term: 290 / (1/2) = 580
    CHECK(*collapsed.n_max == 580);

    auto vac = eee_index_bound(10, 4, 1, 12);
    CHECK(vac.vacuous);
}

TEST_CASE("canonical height bracket") {
    auto [lo, hi] = hhat_bracket(2, 12);
    CHECK(lo == Rational::make(1, 2));
    CHECK(hi == Rational::make(1, 1));
    auto [lo0, hi0] = hhat_bracket(3, 0);
    CHECK(lo0 == hi0);
    // never empty
    for (long hx : {0L, 1L, 5L}) {
        for (long hj : {0L, 3L, 24L}) {
            auto [a, b] = hhat_bracket(hx, hj);
            CHECK(a <= b);
        }
    }
}

TEST_CASE("monotonicity sweeps") {
    long long prev_l = 0, prev_n = 0;
    for (long long D = 1; D <= 20; ++D) {
        auto rep = prop19_bounds(D, 2, 3);
        CHECK(*rep.l_max >= prev_l);
        CHECK(*rep.n_max >= prev_n);
        prev_l = *rep.l_max;
        prev_n = *rep.n_max;
    }
    // antitone in h_x (larger point height shrinks the index bound) and
    // monotone in h_j (the denominator 12 h_x - h_j shrinks as h_j grows)
    long long prev = INT64_MAX;
    for (long long hx = 1; hx <= 10; ++hx) {
        auto rep = prop19_bounds(10, hx, 0);
        CHECK(*rep.n_max <= prev);
        prev = *rep.n_max;
    }
    prev = 0;
    for (long long hj = 0; hj < 12; ++hj) {
        auto rep = prop19_bounds(10, 1, hj);
        CHECK(*rep.n_max >= prev);
        prev = *rep.n_max;
    }
}

}  // TEST_SUITE
