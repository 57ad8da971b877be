#include "doctest.h"
#include "edsff/factor.hpp"
#include "edsff/parse.hpp"
#include "util.hpp"

using namespace edsff;
using testutil::random_nonzero_poly;

TEST_SUITE("factor") {

TEST_CASE("squarefree decomposition examples over F_5") {
    auto F5 = Field::prime(5);
    const Field& F = *F5;
    SUBCASE("constructed multiplicities") {
        auto d = squarefree_decomp(parse_poly("(t+1)^4*(t^2+2)^2", F));
        REQUIRE(d.parts.size() == 2);
        CHECK(d.parts[0].base == parse_poly("t^2+2", F));
        CHECK(d.parts[0].mult == 2);
        CHECK(d.parts[1].base == parse_poly("t+1", F));
        CHECK(d.parts[1].mult == 4);
    }
    SUBCASE("frobenius power t^5+1 = (t+1)^5") {
        auto d = squarefree_decomp(parse_poly("t^5+1", F));
        REQUIRE(d.parts.size() == 1);
        CHECK(d.parts[0].base == parse_poly("t+1", F));
        CHECK(d.parts[0].mult == 5);
    }
    SUBCASE("squarefree input") {
        auto d = squarefree_decomp(parse_poly("t^2-1", F));
        REQUIRE(d.parts.size() == 1);
        CHECK(d.parts[0].mult == 1);
        CHECK(d.parts[0].base == parse_poly("t^2+4", F));
    }
    CHECK_THROWS_AS(squarefree_decomp(Poly(F)), domain_error);
}

TEST_CASE("decomposition reconstructs and matches factor multiplicities") {
    for (auto Fp : {Field::prime(5), Field::prime(13), Field::extension(5, {2, 0, 1})}) {
        const Field& F = *Fp;
        Rng rng(77);
        for (int i = 0; i < 25; ++i) {
            Poly f = random_nonzero_poly(F, 6, rng) * random_nonzero_poly(F, 4, rng).pow(2) *
                     random_nonzero_poly(F, 2, rng).pow((long)F.p);
            if (f.degree() > 30 || f.degree() < 1) continue;
            SqfDecomp d = squarefree_decomp(f);
            CHECK(d.reassemble() == f);
            // multiplicities agree with the full factorization
            Rng frng(rng.next());
            Factorization fac = factor(f, frng);
            CHECK(fac.reassemble() == f);
            for (const auto& fp2 : fac.factors) {
                long from_sqf = 0;
                for (const auto& part : d.parts) {
                    if (divides(fp2.prime, part.base)) from_sqf = part.mult;
                }
                CHECK(from_sqf == fp2.mult);
            }
        }
    }
}

TEST_CASE("p-th roots") {
    auto F5 = Field::prime(5);
    const Field& F = *F5;
    auto r = poly_pth_root(parse_poly("t^5+1", F));
    REQUIRE(r.has_value());
    CHECK(*r == parse_poly("t+1", F));
    CHECK(!poly_pth_root(parse_poly("t^5+t", F)).has_value());
    auto c = poly_pth_root(parse_poly("2", F));
    REQUIRE(c.has_value());
    CHECK(*c == parse_poly("2", F));  // a^p = a in F_p

    Rng rng(123);
    for (int i = 0; i < 30; ++i) {
        Poly g = random_nonzero_poly(F, 12, rng);
        auto rr = poly_pth_root(g.pow(5));
        REQUIRE(rr.has_value());
        CHECK(*rr == g);
    }
}

TEST_CASE("maximal perfect-power exponent") {
    auto F5 = Field::prime(5);
    const Field& F = *F5;
    CHECK(max_power_exponent(parse_poly("(t+1)^4*(t^2+2)^2", F)) == 2);
    CHECK(max_power_exponent(parse_poly("t^5+1", F)) == 5);
    CHECK(max_power_exponent(parse_poly("t^2-1", F)) == 1);
    CHECK_THROWS_AS(max_power_exponent(parse_poly("3", F)), domain_error);

    Rng rng(9);
    for (long ell : {2L, 3L, 5L, 6L}) {
        Poly f = random_nonzero_poly(F, 4, rng);
        if (f.degree() < 1) continue;
        CHECK(max_power_exponent(f.pow((u64)ell)) % ell == 0);
    }
}

TEST_CASE("complete factorization examples") {
    auto F5 = Field::prime(5);
    const Field& F = *F5;
    Rng rng(1);
    SUBCASE("t^2 - 1") {
        auto fac = factor(parse_poly("t^2-1", F), rng);
        REQUIRE(fac.factors.size() == 2);
        CHECK(fac.factors[0].prime == parse_poly("t+1", F));
        CHECK(fac.factors[1].prime == parse_poly("t+4", F));
    }
    SUBCASE("t^2 + 1 = (t+2)(t+3)") {
        auto fac = factor(parse_poly("t^2+1", F), rng);
        REQUIRE(fac.factors.size() == 2);
        CHECK(fac.factors[0].prime == parse_poly("t+2", F));
        CHECK(fac.factors[1].prime == parse_poly("t+3", F));
    }
    SUBCASE("the fifth denominator splits into two cubics") {
        Poly B5 = parse_poly("(t^3+t^2-2*t-1)*(t^3-t^2-2*t+1)", F);
        auto fac = factor(B5, rng);
        REQUIRE(fac.factors.size() == 2);
        CHECK(fac.factors[0].mult == 1);
        CHECK(fac.factors[1].mult == 1);
        CHECK(fac.factors[0].prime * fac.factors[1].prime == B5.monic());
        CHECK(fac.factors[0].prime == parse_poly("t^3+t^2+3*t+4", F));
        CHECK(fac.factors[1].prime == parse_poly("t^3+4*t^2+3*t+1", F));
        CHECK(is_irreducible(fac.factors[0].prime));
        CHECK(is_irreducible(fac.factors[1].prime));
    }
}

TEST_CASE("factorization is deterministic for a fixed seed") {
    auto F5 = Field::prime(5);
    const Field& F = *F5;
    Poly f = parse_poly("(t^2+1)*(t^2+2)*(t^2+3)*(t+1)^3", F);
    auto f1 = factor(f, 0xabcd);
    auto f2 = factor(f, 0xabcd);
    REQUIRE(f1.factors.size() == f2.factors.size());
    for (size_t i = 0; i < f1.factors.size(); ++i) {
        CHECK(f1.factors[i].prime == f2.factors[i].prime);
        CHECK(f1.factors[i].mult == f2.factors[i].mult);
    }
}

TEST_CASE("factorization over extension fields and characteristic 2") {
    auto F25 = Field::extension(5, {2, 0, 1});
    Rng rng(55);
    for (int i = 0; i < 10; ++i) {
        Poly f = random_nonzero_poly(*F25, 8, rng);
        if (f.degree() < 1) continue;
        auto fac = factor(f, rng);
        CHECK(fac.reassemble() == f);
        for (auto& fp : fac.factors) CHECK(is_irreducible(fp.prime));
    }
    auto F2 = Field::prime(2);
    for (int i = 0; i < 10; ++i) {
        Poly f = random_nonzero_poly(*F2, 12, rng);
        if (f.degree() < 1) continue;
        auto fac = factor(f, rng);
        CHECK(fac.reassemble() == f);
        for (auto& fp : fac.factors) CHECK(is_irreducible(fp.prime));
    }
}

TEST_CASE("irreducibility test") {
    auto F5 = Field::prime(5);
    const Field& F = *F5;
    CHECK(is_irreducible(parse_poly("t+2", F)));
    CHECK(is_irreducible(parse_poly("t^2+2", F)));
    CHECK(!is_irreducible(parse_poly("t^2+1", F)));
    CHECK(is_irreducible(parse_poly("t^3+t^2+3*t+4", F)));
    CHECK(!is_irreducible(parse_poly("t^6+t^2+1", F)));
}

}  // TEST_SUITE
