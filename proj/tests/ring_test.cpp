#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "edslab/ring.hpp"

using namespace edslab;

TEST_CASE("padic valuation") {
    CHECK(padic_valuation(Rational(50), 5) == 2);
    CHECK(padic_valuation(Rational(-3, 7), 7) == -1);
    CHECK(!padic_valuation(Rational(0), 3).has_value());
    CHECK(padic_valuation(Rational(12, 25), 5) == -2);
    CHECK_THROWS_AS(padic_valuation(Rational(1), 6), NotPrime);
}

TEST_CASE("valuation is additive") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> d(-300, 300);
    for (int i = 0; i < 200; ++i) {
        Rational x(d(rng), 1 + std::abs(d(rng)));
        Rational y(d(rng), 1 + std::abs(d(rng)));
        if (sgn(x) == 0 || sgn(y) == 0) continue;
        for (long p : {2, 3, 5, 13}) {
            auto vx = padic_valuation(x, p);
            auto vy = padic_valuation(y, p);
            auto vxy = padic_valuation(x * y, p);
            CHECK(*vxy == *vx + *vy);
        }
    }
}

TEST_CASE("residue_of") {
    // Oracle for 1/2 mod 25: extended gcd says 2 * 13 = 26 = 1 (mod 25).
    CHECK(residue_of(Rational(1, 2), 5, 2).value() == 13);
    CHECK((Residue(2, 5, 2) * Residue(13, 5, 2)).value() == 1);
    CHECK(residue_of(Rational(7), 7, 3).value() == 7);
    CHECK_THROWS_AS(residue_of(Rational(1, 5), 5, 2), NonUnitDenominator);
}

TEST_CASE("residue_of is a ring homomorphism") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> d(-500, 500);
    const long p = 7;
    const unsigned mu = 4;
    for (int i = 0; i < 100; ++i) {
        long dx = 1 + std::abs(d(rng)), dy = 1 + std::abs(d(rng));
        while (dx % p == 0) dx++;
        while (dy % p == 0) dy++;
        Rational x(d(rng), dx), y(d(rng), dy);
        CHECK(residue_of(x + y, p, mu) == residue_of(x, p, mu) + residue_of(y, p, mu));
        CHECK(residue_of(x * y, p, mu) == residue_of(x, p, mu) * residue_of(y, p, mu));
    }
}

TEST_CASE("residue ring basics") {
    Residue a(17, 5, 3);
    CHECK(a.modulus() == 125);
    CHECK(a.str() == "17 mod 5^3");
    CHECK((-a).value() == 108);
    CHECK_THROWS_AS(a + Residue(1, 5, 2), PrecisionMismatch);
    CHECK_THROWS_AS(a + Residue(1, 7, 3), PrecisionMismatch);
    CHECK(a.truncate(1).value() == 2);
}

TEST_CASE("unit_inverse") {
    CHECK(unit_inverse(Residue(2, 5, 2)).value() == 13);
    CHECK(unit_inverse(Residue(1, 11, 4)).value() == 1);
    CHECK_THROWS_AS(unit_inverse(Residue(5, 5, 2)), NonUnit);
}

TEST_CASE("teichmuller character") {
    // Fixed-point oracle: 2^5 = 32 = 7 (mod 25), 7^5 = 16807 = 7 (mod 25).
    Residue z = teichmuller_unit(Residue(2, 5, 2));
    CHECK(z.value() == 7);
    CHECK(teichmuller_unit(Residue(1, 7, 5)).value() == 1);
    Integer p = 13;
    unsigned mu = 4;
    Residue m1 = teichmuller_unit(Residue(p - 1, p, mu));
    Integer pmu;
    mpz_pow_ui(pmu.get_mpz_t(), p.get_mpz_t(), mu);
    CHECK(m1.value() == pmu - 1);
    CHECK_THROWS_AS(teichmuller_unit(Residue(5, 5, 2)), NonUnit);
    CHECK_THROWS_AS(teichmuller_unit(Residue(1, 2, 3)), PEqualsTwo);
}

TEST_CASE("teichmuller properties on random units") {
    std::mt19937_64 rng(13);
    std::vector<long> primes = {3, 5, 7, 11, 13, 37, 101};
    for (int i = 0; i < 200; ++i) {
        long p = primes[rng() % primes.size()];
        unsigned mu = 1 + rng() % 8;
        Residue model(0, p, mu);
        Integer a = rng() % model.modulus().get_ui();
        if (a % p == 0) a += 1;
        Residue x = model.same(a);
        Residue chi = teichmuller_unit(x);
        CHECK(chi.pow(p - 1) == model.same(1));
        CHECK(chi.truncate(1) == x.truncate(1));
        // multiplicativity
        Integer b = rng() % model.modulus().get_ui();
        if (b % p == 0) b += 1;
        Residue y = model.same(b);
        CHECK(teichmuller_unit(x * y) == chi * teichmuller_unit(y));
    }
}

TEST_CASE("mult_order") {
    CHECK(mult_order(5, 8) == 2);
    CHECK(mult_order(123, 1) == 1);
    CHECK(mult_order(7, 9) == 3);
    CHECK_THROWS_AS(mult_order(6, 9), NotCoprime);
}

TEST_CASE("rational parse and print") {
    CHECK(to_string(parse_rational("-3/7")) == "-3/7");
    CHECK(to_string(parse_rational("42")) == "42");
    CHECK(to_string(parse_rational("6/4")) == "3/2");
    CHECK_THROWS_AS(parse_rational("1/0"), InputError);
    CHECK_THROWS_AS(parse_rational("x"), InputError);
}
