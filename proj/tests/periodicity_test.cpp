#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "edslab/periodicity.hpp"

using namespace edslab;

namespace {

CurveQ example1() { return parse_curve("0 0 1 -1 0"); }

struct Sample {
    CurveQ E;
    PointQ P;
    Integer p;
};

std::optional<Sample> sample_curve_point(std::mt19937_64& rng, const std::vector<long>& primes) {
    std::uniform_int_distribution<long> coef(-3, 3);
    long p = primes[rng() % primes.size()];
    CurveQ E(Rational(coef(rng)), Rational(coef(rng)), Rational(coef(rng)), Rational(coef(rng)),
             Rational(coef(rng)));
    if (sgn(E.discriminant()) == 0) return std::nullopt;
    CurveZp Ep = reduce_curve(E, p, 1);
    if (Ep.discriminant().is_zero()) return std::nullopt;
    Residue model(0, p, 1);
    std::vector<std::pair<long, long>> pts;
    for (long x = 0; x < p; ++x)
        for (long y = 0; y < p; ++y)
            if (Ep.on_curve(Ep.affine(model.same(x), model.same(y)))) pts.push_back({x, y});
    if (pts.empty()) return std::nullopt;
    auto [x, y] = pts[rng() % pts.size()];
    Rational xr(x), yr(y);
    Rational rhs = yr * yr + E.a1() * xr * yr + E.a3() * yr - xr * xr * xr - E.a2() * xr * xr -
                   E.a4() * xr;
    CurveQ E2(E.a1(), E.a2(), E.a3(), E.a4(), rhs);
    if (sgn(E2.discriminant()) == 0) return std::nullopt;
    return Sample{E2, E2.affine(xr, yr), p};
}

} // namespace

TEST_CASE("symmetry constants at p = 5 and p = 7") {
    CurveQ E = example1();
    PointQ P = E.affine(0, 0);
    // Reduced sequence gives a = 3, b = 4 at p = 5 (r = 8, indices 9, 10)
    // and a = 4, b = 6 at p = 7 (r = 9, indices 10, 11).
    auto [a5, b5] = symmetry_constants(E, P, 5);
    CHECK(a5.value() == 3);
    CHECK(b5.value() == 4);
    auto [a7, b7] = symmetry_constants(E, P, 7);
    CHECK(a7.value() == 4);
    CHECK(b7.value() == 6);
    // a * b = F_{r+1} (the two formulas in (14) telescope).
    auto f5 = divpoly_sequence_mod_p(E, P, 5, 10);
    CHECK(a5 * b5 == f5[9]);
    auto f7 = divpoly_sequence_mod_p(E, P, 7, 11);
    CHECK(a7 * b7 == f7[10]);
}

TEST_CASE("find_period on the running example") {
    CurveQ E = example1();
    PointQ P = E.affine(0, 0);
    PeriodCertificate c5 = find_period(E, P, 5);
    CHECK(c5.r == 8);
    CHECK(c5.t == 4);
    CHECK(c5.period == c5.r * c5.s);
    CHECK(c5.t % c5.s == 0);
    CHECK((Integer(5) - 1) % c5.t == 0);

    PeriodCertificate c7 = find_period(E, P, 7);
    CHECK(c7.r == 9);
    CHECK(c7.period % c7.r == 0);
    CHECK((Integer(7) - 1) % c7.t == 0);

    // The detected period really is a period: zero pattern and window hold.
    auto f = divpoly_sequence_mod_p(E, P, 5, 3 * c5.period);
    for (long n = 0; n + c5.period <= 3 * c5.period; ++n) CHECK(f[n + c5.period] == f[n]);
}

TEST_CASE("find_period error paths") {
    CurveQ E = example1();
    PointQ P = E.affine(0, 0);
    CHECK_THROWS_AS(find_period(E, P, 37), SingularReduction);
    CHECK_THROWS_AS(find_period(E, E.infinity(), 5), TrivialPoint);
    CHECK_THROWS_AS(find_period(E, P, 5, 8), BoundTooSmall);
}

TEST_CASE("verify_symmetry on the running example") {
    CurveQ E = example1();
    PointQ P = E.affine(0, 0);
    CHECK(verify_symmetry(E, P, 5, 10, 20).ok);
    CHECK(verify_symmetry(E, P, 7, 10, 20).ok);
}

TEST_CASE("r = 2 pathway") {
    // (0,0) has order 2 on y^2 = x^3 - x; good reduction away from 2.
    CurveQ E = parse_curve("0 0 0 -1 0");
    PointQ P = E.affine(0, 0);
    REQUIRE(sgn(E.discriminant()) != 0);
    for (long p : {5, 7, 11, 13}) {
        if (reduce_curve(E, p, 1).discriminant().is_zero()) continue;
        long r = point_order_fp(E, P, p);
        REQUIRE(r == 2);
        auto [a, b] = symmetry_constants(E, P, p);
        auto f = divpoly_sequence_mod_p(E, P, p, 3);
        CHECK(a == f[3]);
        PeriodCertificate c = find_period(E, P, p);
        CHECK(c.r2_mode);
        CHECK(c.r == 2);
        CHECK(c.period % 2 == 0);
        CHECK(Integer(2 * p - 2) % c.t == 0);
        CHECK(verify_symmetry(E, P, p, 12, 0).ok);
    }
}

TEST_CASE("randomized periodicity corpus") {
    std::mt19937_64 rng(404);
    std::vector<long> primes = {5, 7, 11, 13, 17, 19, 23, 29};
    int done = 0;
    while (done < 25) {
        auto s = sample_curve_point(rng, primes);
        if (!s) continue;
        CurveZp E1 = reduce_curve(s->E, s->p, 1);
        if (E1.is_infinity(reduce_point(s->E, s->P, s->p, 1))) continue;
        PeriodCertificate c = find_period(s->E, s->P, s->p);
        CHECK(c.period % c.r == 0);
        CHECK(c.t % c.s == 0);
        if (c.r >= 3)
            CHECK((s->p - 1) % c.t == 0);
        else
            CHECK((2 * s->p - 2) % c.t == 0);
        CHECK(verify_symmetry(s->E, s->P, s->p, 8, c.r2_mode ? 0 : 2 * c.r).ok);
        ++done;
    }
}

TEST_CASE("certificate JSON round trip") {
    CurveQ E = example1();
    PeriodCertificate c = find_period(E, E.affine(0, 0), 5);
    PeriodCertificate c2 = period_certificate_from_json(to_json(c));
    CHECK(c2.p == c.p);
    CHECK(c2.r == c.r);
    CHECK(c2.t == c.t);
    CHECK(c2.s == c.s);
    CHECK(c2.period == c.period);
    CHECK(c2.a == c.a);
    CHECK(c2.b == c.b);
    CHECK(c2.window_k == c.window_k);
    CHECK(c2.r2_mode == c.r2_mode);
}
