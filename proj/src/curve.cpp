#include "edslab/curve.hpp"

#include <cmath>
#include <sstream>

namespace edslab {

CurveZp reduce_curve(const CurveQ& E, const Integer& p, unsigned mu) {
    try {
        return CurveZp(residue_of(E.a1(), p, mu), residue_of(E.a2(), p, mu),
                       residue_of(E.a3(), p, mu), residue_of(E.a4(), p, mu),
                       residue_of(E.a6(), p, mu));
    } catch (const NonUnitDenominator&) {
        throw BadCoefficients("curve coefficients are not p-integral");
    }
}

PointZp reduce_point(const CurveQ& E, const PointQ& Pin, const Integer& p, unsigned mu) {
    CurveZp Ep = reduce_curve(E, p, mu);
    PointQ P = E.canonicalize(Pin);
    // Common denominator, then strip the p-content to get a primitive lift.
    Integer d = 1;
    mpz_lcm(d.get_mpz_t(), P.X.get_den().get_mpz_t(), P.Y.get_den().get_mpz_t());
    mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), P.Z.get_den().get_mpz_t());
    Integer X(P.X.get_num() * (d / P.X.get_den()));
    Integer Y(P.Y.get_num() * (d / P.Y.get_den()));
    Integer Z(P.Z.get_num() * (d / P.Z.get_den()));
    while (mpz_divisible_p(X.get_mpz_t(), p.get_mpz_t()) &&
           mpz_divisible_p(Y.get_mpz_t(), p.get_mpz_t()) &&
           mpz_divisible_p(Z.get_mpz_t(), p.get_mpz_t())) {
        mpz_divexact(X.get_mpz_t(), X.get_mpz_t(), p.get_mpz_t());
        mpz_divexact(Y.get_mpz_t(), Y.get_mpz_t(), p.get_mpz_t());
        mpz_divexact(Z.get_mpz_t(), Z.get_mpz_t(), p.get_mpz_t());
    }
    Residue model(0, p, mu);
    return Ep.canonicalize(PointZp{model.same(X), model.same(Y), model.same(Z)});
}

long point_order_fp(const CurveQ& E, const PointQ& P, const Integer& p, bool allow_singular) {
    CurveZp Ep = reduce_curve(E, p, 1);
    bool singular = Ep.discriminant().is_zero();
    if (singular && !allow_singular) throw SingularReduction("p divides the discriminant");
    PointZp Pp = reduce_point(E, P, p, 1);
    if (singular) {
        if (is_singular_point_mod_p(E, P, p))
            throw SingularReduction("point reduces to the singular point");
    }
    if (Ep.is_infinity(Pp)) return 1;
    PointZp R = Pp;
    // Hasse bound even for the smooth locus of a bad fiber (#E_ns <= p + 1).
    long bound = 2 * mpz_get_ui(p.get_mpz_t()) + 2 * static_cast<long>(sqrt(p.get_d())) + 4;
    for (long r = 1; r <= bound; ++r) {
        if (Ep.is_infinity(R)) return r;
        R = Ep.add(R, Pp);
    }
    throw Error("point order exceeded the Hasse bound");
}

long count_points_fp(const CurveQ& E, const Integer& p) {
    if (p == 2) throw PEqualsTwo("point counting requires p odd");
    CurveZp Ep = reduce_curve(E, p, 1);
    if (Ep.discriminant().is_zero()) throw SingularReduction("p divides the discriminant");
    // Complete the square: (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6.
    Residue model(0, p, 1);
    long count = 1;
    for (Integer x = 0; x < p; ++x) {
        Residue xr = model.same(x);
        Residue g = 4 * (xr * xr * xr) + Ep.b2() * xr * xr + 2 * (Ep.b4() * xr) + Ep.b6();
        int chi = mpz_legendre(g.value().get_mpz_t(), p.get_mpz_t());
        count += 1 + chi;
    }
    return count;
}

bool is_supersingular(const CurveQ& E, const Integer& p) {
    if (p == 2) throw PEqualsTwo("supersingularity test requires p odd");
    long n = count_points_fp(E, p);
    Integer ap = p + 1 - n;
    return mpz_divisible_p(ap.get_mpz_t(), p.get_mpz_t());
}

bool is_singular_point_mod_p(const CurveQ& E, const PointQ& P, const Integer& p) {
    CurveZp Ep = reduce_curve(E, p, 1);
    if (!Ep.discriminant().is_zero()) return false;
    PointZp Pp = reduce_point(E, P, p, 1);
    if (Ep.is_infinity(Pp)) return false; // O is always smooth
    if (!Pp.Z.is_unit()) return false;
    Residue x = Pp.X, y = Pp.Y;
    Residue fx = Ep.a1() * y - 3 * (x * x) - 2 * (Ep.a2() * x) - Ep.a4();
    Residue fy = 2 * y + Ep.a1() * x + Ep.a3();
    return fx.is_zero() && fy.is_zero();
}

CurveQ parse_curve(const std::string& s) {
    std::istringstream is(s);
    std::string tok;
    std::vector<Rational> a;
    while (is >> tok) a.push_back(parse_rational(tok));
    if (a.size() != 5) throw InputError("curve wants 5 coefficients \"a1 a2 a3 a4 a6\"");
    return CurveQ(a[0], a[1], a[2], a[3], a[4]);
}

PointQ parse_point(const CurveQ& E, const std::string& s) {
    std::istringstream is(s);
    std::string tok;
    std::vector<std::string> toks;
    while (is >> tok) toks.push_back(tok);
    if (toks.size() == 1 && (toks[0] == "O" || toks[0] == "o")) return E.infinity();
    if (toks.size() != 2) throw InputError("point wants \"x y\" or \"O\"");
    PointQ P = E.affine(parse_rational(toks[0]), parse_rational(toks[1]));
    if (!E.on_curve(P)) throw InputError("point is not on the curve");
    return P;
}

std::string to_string(const CurveQ& E) {
    std::ostringstream os;
    os << to_string(E.a1()) << " " << to_string(E.a2()) << " " << to_string(E.a3()) << " "
       << to_string(E.a4()) << " " << to_string(E.a6());
    return os.str();
}

std::string to_string(const CurveQ& E, const PointQ& P) {
    if (E.is_infinity(P)) return "O";
    PointQ c = E.canonicalize(P);
    return to_string(c.X) + " " + to_string(c.Y);
}

} // namespace edslab
