#pragma once

#include <array>
#include <string>
#include <vector>

#include "edslab/ring.hpp"

namespace edslab {

/// A projective point (X : Y : Z), O = (0 : 1 : 0). Representatives are
/// canonicalized: Z = 1 when Z is a unit, else Y = 1 (over Z/p^mu at least
/// one of them is a unit for any primitive point on a Weierstrass curve).
template <typename E>
struct Point {
    E X, Y, Z;
};

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over the coefficient ring E.
template <typename E>
class Curve {
  public:
    Curve(E a1, E a2, E a3, E a4, E a6);

    const E& a1() const { return a1_; }
    const E& a2() const { return a2_; }
    const E& a3() const { return a3_; }
    const E& a4() const { return a4_; }
    const E& a6() const { return a6_; }
    const E& b2() const { return b2_; }
    const E& b4() const { return b4_; }
    const E& b6() const { return b6_; }
    const E& b8() const { return b8_; }
    const E& discriminant() const { return disc_; }

    E zero() const { return same_ring(a1_, 0); }
    E one() const { return same_ring(a1_, 1); }

    Point<E> infinity() const { return Point<E>{zero(), one(), zero()}; }
    Point<E> affine(const E& x, const E& y) const { return Point<E>{x, y, one()}; }

    bool is_infinity(const Point<E>& P) const {
        return is_zero(P.X) && is_zero(P.Z) && is_unit(P.Y);
    }

    /// Homogeneous curve equation F(X, Y, Z); zero exactly on curve points.
    E eval(const Point<E>& P) const;
    /// Gradient (F_X, F_Y, F_Z) of the homogeneous equation.
    std::array<E, 3> gradient(const Point<E>& P) const;

    bool on_curve(const Point<E>& P) const;
    bool eq(const Point<E>& P, const Point<E>& Q) const;

    Point<E> neg(const Point<E>& P) const;
    Point<E> add(const Point<E>& P, const Point<E>& Q) const;
    Point<E> mul(const Integer& n, const Point<E>& P) const;

    /// Canonical scaling; throws if the representative is not primitive.
    Point<E> canonicalize(const Point<E>& P) const;

    /// z = -X/Y, the uniformizer at O; defined whenever Y is invertible
    /// (in particular on the kernel of reduction).
    E z_coordinate(const Point<E>& P) const;

  private:
    Point<E> chord(const Point<E>& P, const Point<E>& Q) const;
    Point<E> tangent_double(const Point<E>& P) const;

    E a1_, a2_, a3_, a4_, a6_;
    E b2_, b4_, b6_, b8_, disc_;
};

using CurveQ = Curve<Rational>;
using PointQ = Point<Rational>;
using CurveZp = Curve<Residue>;
using PointZp = Point<Residue>;

// ---------------------------------------------------------------------------

template <typename E>
Curve<E>::Curve(E a1, E a2, E a3, E a4, E a6)
    : a1_(a1), a2_(a2), a3_(a3), a4_(a4), a6_(a6) {
    b2_ = a1_ * a1_ + 4 * a2_;
    b4_ = 2 * a4_ + a1_ * a3_;
    b6_ = a3_ * a3_ + 4 * a6_;
    b8_ = a1_ * a1_ * a6_ + 4 * (a2_ * a6_) - a1_ * a3_ * a4_ + a2_ * a3_ * a3_ - a4_ * a4_;
    // Classical identity 4b8 = b2 b6 - b4^2; a failure would mean the
    // b-invariant formulas above were mistyped.
    E lhs = 4 * b8_;
    E rhs = b2_ * b6_ - b4_ * b4_;
    if (!(lhs == rhs)) throw Error("b-invariant consistency broken");
    disc_ = -(b2_ * b2_ * b8_) - 8 * (b4_ * b4_ * b4_) - 27 * (b6_ * b6_) + 9 * (b2_ * b4_ * b6_);
}

template <typename E>
E Curve<E>::eval(const Point<E>& P) const {
    const E &X = P.X, &Y = P.Y, &Z = P.Z;
    return Y * Y * Z + a1_ * X * Y * Z + a3_ * Y * Z * Z - X * X * X - a2_ * X * X * Z -
           a4_ * X * Z * Z - a6_ * Z * Z * Z;
}

template <typename E>
std::array<E, 3> Curve<E>::gradient(const Point<E>& P) const {
    const E &X = P.X, &Y = P.Y, &Z = P.Z;
    E FX = a1_ * Y * Z - 3 * (X * X) - 2 * (a2_ * X * Z) - a4_ * Z * Z;
    E FY = 2 * (Y * Z) + a1_ * X * Z + a3_ * Z * Z;
    E FZ = Y * Y + a1_ * X * Y + 2 * (a3_ * Y * Z) - a2_ * X * X - 2 * (a4_ * X * Z) -
           3 * (a6_ * Z * Z);
    return {FX, FY, FZ};
}

template <typename E>
bool Curve<E>::on_curve(const Point<E>& P) const {
    if (!(is_unit(P.X) || is_unit(P.Y) || is_unit(P.Z))) return false;
    return is_zero(eval(P));
}

template <typename E>
Point<E> Curve<E>::canonicalize(const Point<E>& P) const {
    if (is_unit(P.Z)) {
        E zi = invert(P.Z);
        return Point<E>{P.X * zi, P.Y * zi, one()};
    }
    if (is_unit(P.Y)) {
        E yi = invert(P.Y);
        return Point<E>{P.X * yi, one(), P.Z * yi};
    }
    throw InputError("point representative is not primitive");
}

template <typename E>
bool Curve<E>::eq(const Point<E>& P, const Point<E>& Q) const {
    Point<E> a = canonicalize(P);
    Point<E> b = canonicalize(Q);
    return a.X == b.X && a.Y == b.Y && a.Z == b.Z;
}

template <typename E>
Point<E> Curve<E>::neg(const Point<E>& P) const {
    return canonicalize(Point<E>{P.X, -P.Y - a1_ * P.X - a3_ * P.Z, P.Z});
}

template <typename E>
E Curve<E>::z_coordinate(const Point<E>& P) const {
    if (!is_unit(P.Y)) throw InputError("z = -X/Y needs Y invertible");
    return -(P.X * invert(P.Y));
}

// Third intersection of the line {sP + tQ} with the cubic, negated.
// For a cubic form F with F(P) = F(Q) = 0,
//   F(sP + tQ) = s^2 t (grad F(P).Q) + s t^2 (grad F(Q).P),
// so the residual root is R = (grad F(Q).P) P - (grad F(P).Q) Q.
// Valid whenever the reductions of P and Q are distinct projective points.
template <typename E>
Point<E> Curve<E>::chord(const Point<E>& P, const Point<E>& Q) const {
    auto gP = gradient(P);
    auto gQ = gradient(Q);
    E g2 = gP[0] * Q.X + gP[1] * Q.Y + gP[2] * Q.Z; // grad F(P) . Q
    E g1 = gQ[0] * P.X + gQ[1] * P.Y + gQ[2] * P.Z; // grad F(Q) . P
    Point<E> R{g1 * P.X - g2 * Q.X, g1 * P.Y - g2 * Q.Y, g1 * P.Z - g2 * Q.Z};
    return neg(R);
}

// Doubling via the tangent line at P, parametrized as {sP + tV} with
// grad F(P).V = 0 and V independent of P modulo the maximal ideal. Then
//   F(sP + tV) = s t^2 (grad F(V).P) + t^3 F(V),
// with residual root R = F(V) P - (grad F(V).P) V.
template <typename E>
Point<E> Curve<E>::tangent_double(const Point<E>& P) const {
    auto g = gradient(P);
    std::array<Point<E>, 3> candidates = {
        Point<E>{g[1], -g[0], zero()},
        Point<E>{zero(), g[2], -g[1]},
        Point<E>{g[2], zero(), -g[0]},
    };
    for (const Point<E>& V : candidates) {
        // Independence of V and P mod p: some 2x2 minor must be a unit.
        E m1 = P.X * V.Y - P.Y * V.X;
        E m2 = P.X * V.Z - P.Z * V.X;
        E m3 = P.Y * V.Z - P.Z * V.Y;
        if (!(is_unit(m1) || is_unit(m2) || is_unit(m3))) continue;
        E fv = eval(V);
        auto gv = gradient(V);
        E c = gv[0] * P.X + gv[1] * P.Y + gv[2] * P.Z; // grad F(V) . P
        Point<E> R{fv * P.X - c * V.X, fv * P.Y - c * V.Y, fv * P.Z - c * V.Z};
        if (is_unit(R.X) || is_unit(R.Y) || is_unit(R.Z)) return neg(R);
    }
    throw Error("tangent doubling found no usable direction");
}

namespace detail {

// Power series w(z) = z^3 + ... solving the Weierstrass chart equation
//   w = z^3 + a1 z w + a2 z^2 w + a3 w^2 + a4 z w^2 + a6 w^3,
// truncated at degree `deg`. Coefficients live in the coefficient ring.
template <typename E>
std::vector<E> kernel_chart_series(const Curve<E>& C, unsigned deg);

// Difference quotient (w(z1) - w(z2))/(z1 - z2) evaluated term-by-term,
// which needs no division.
template <typename E>
E series_difference_quotient(const std::vector<E>& c, const E& z1, const E& z2);

} // namespace detail

// Complete addition. Case split on the reductions of P and Q modulo the
// maximal ideal (over a field the maximal ideal is (0) and only the exact
// cases arise). See chord/tangent_double for the generic laws; congruent
// pairs are routed through the formal-group chart or a decomposition.
template <typename E>
Point<E> Curve<E>::add(const Point<E>& Pin, const Point<E>& Qin) const {
    Point<E> P = canonicalize(Pin);
    Point<E> Q = canonicalize(Qin);
    if (is_infinity(P)) return Q;
    if (is_infinity(Q)) return P;

    // Reductions distinct <=> the cross product P x Q has a unit coordinate.
    E c1 = P.Y * Q.Z - P.Z * Q.Y;
    E c2 = P.Z * Q.X - P.X * Q.Z;
    E c3 = P.X * Q.Y - P.Y * Q.X;
    if (is_unit(c1) || is_unit(c2) || is_unit(c3)) return canonicalize(chord(P, Q));

    bool same_point = eq(P, Q);
    if (same_point) return canonicalize(tangent_double(P));

    // From here on the ring is a genuine local ring (over a field, congruent
    // means equal) and P != Q reduce to the same point.
    bool P_kernel = !is_unit(P.Z);
    if (P_kernel) {
        // Both near O: chord in the (z, w) = (-X/Y, -Z/Y) chart. The slope
        // is a series difference quotient, so no division by z1 - z2 occurs.
        unsigned deg = 0;
        if constexpr (std::is_same_v<E, Residue>) deg = a1_.precision() + 2;
        auto c = detail::kernel_chart_series(*this, deg);
        E yi1 = invert(P.Y), yi2 = invert(Q.Y);
        E z1 = -(P.X * yi1), w1 = -(P.Z * yi1);
        E z2 = -(Q.X * yi2), w2 = -(Q.Z * yi2);
        E lam = detail::series_difference_quotient(c, z1, z2);
        E nu = w1 - lam * z1;
        // Cubic in z along w = lam z + nu; leading coefficient is a unit.
        E A = one() + a2_ * lam + a4_ * lam * lam + a6_ * lam * lam * lam;
        E B = a1_ * lam + a2_ * nu + 2 * (a4_ * lam * nu) + a3_ * lam * lam +
              3 * (a6_ * lam * lam * nu);
        E z3 = -(B * invert(A)) - z1 - z2;
        E w3 = lam * z3 + nu;
        return neg(Point<E>{z3, -one(), w3});
    }

    // Congruent non-kernel pair. If 2P does not reduce to O, split off the
    // kernel part D = Q - P and recombine: P + Q = 2P + D.
    Point<E> two_p_red_test = neg(P); // reductions of Q and -P agree iff 2P = O mod p
    {
        E d1 = Q.Y * two_p_red_test.Z - Q.Z * two_p_red_test.Y;
        E d2 = Q.Z * two_p_red_test.X - Q.X * two_p_red_test.Z;
        E d3 = Q.X * two_p_red_test.Y - Q.Y * two_p_red_test.X;
        if (is_unit(d1) || is_unit(d2) || is_unit(d3)) {
            Point<E> D = add(Q, two_p_red_test);
            Point<E> P2 = tangent_double(P);
            return add(P2, D);
        }
    }

    // P and Q congruent to a 2-torsion point. Translate by an auxiliary
    // point T whose reduction is affine and not 2-torsion:
    //   P + Q = ((P + T) + Q) - T.
    if constexpr (std::is_same_v<E, Residue>) {
        const Residue& model = a1_;
        const Integer& p = model.prime();
        for (Integer x = 0; x < p; ++x) {
            Residue xr = model.same(x);
            // y^2 + (a1 x + a3) y - (x^3 + a2 x^2 + a4 x + a6) = 0 mod p
            for (Integer y = 0; y < p; ++y) {
                Residue yr = model.same(y);
                Residue f = yr * yr + a1_ * xr * yr + a3_ * yr - xr * xr * xr - a2_ * xr * xr -
                            a4_ * xr - a6_;
                if (!mpz_divisible_p(f.value().get_mpz_t(), p.get_mpz_t())) continue;
                Residue fy = 2 * yr + a1_ * xr + a3_;
                if (!fy.is_unit()) continue; // 2-torsion direction, useless here
                // Not congruent to +-P.
                Point<E> T0 = affine(xr, yr);
                E e2 = P.Z * T0.X - P.X * T0.Z;
                if (!is_unit(e2) && !is_unit(P.Y * T0.Z - P.Z * T0.Y) &&
                    !is_unit(P.X * T0.Y - P.Y * T0.X))
                    continue;
                // Hensel-lift y to full precision: Newton for f(x, y) = 0.
                Residue ylift = yr;
                for (unsigned it = 0; it <= model.precision() + 1; ++it) {
                    Residue fv = ylift * ylift + a1_ * xr * ylift + a3_ * ylift - xr * xr * xr -
                                 a2_ * xr * xr - a4_ * xr - a6_;
                    if (fv.is_zero()) break;
                    Residue der = 2 * ylift + a1_ * xr + a3_;
                    ylift = ylift - fv * der.inverse();
                }
                Point<E> T = affine(xr, ylift);
                if (!on_curve(T)) continue;
                Point<E> U = add(P, T);   // distinct reductions
                Point<E> W = add(U, Q);   // reductions P+T vs P, distinct since T != O
                return add(W, neg(T));    // reductions 2P+T = T vs -T, distinct since T not 2-torsion
            }
        }
        throw Error("complete addition: no auxiliary point available "
                    "(residue group is entirely 2-torsion)");
    } else {
        throw Error("unreachable: congruent distinct points over a field");
    }
}

template <typename E>
Point<E> Curve<E>::mul(const Integer& n, const Point<E>& P) const {
    if (n == 0) return infinity();
    if (n < 0) return mul(-n, neg(P));
    Point<E> R = canonicalize(P);
    size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
    for (size_t i = bits - 1; i-- > 0;) {
        R = add(R, R);
        if (mpz_tstbit(n.get_mpz_t(), i)) R = add(R, P);
    }
    return R;
}

namespace detail {

template <typename E>
std::vector<E> kernel_chart_series(const Curve<E>& C, unsigned deg) {
    // Fixed-point iteration on truncated polynomials in z.
    auto mul_trunc = [&](const std::vector<E>& a, const std::vector<E>& b) {
        std::vector<E> r(deg + 1, C.zero());
        for (unsigned i = 0; i < a.size() && i <= deg; ++i) {
            if (is_zero(a[i])) continue;
            for (unsigned j = 0; j + i <= deg && j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
        }
        return r;
    };
    auto shift = [&](const std::vector<E>& a, unsigned k) {
        std::vector<E> r(deg + 1, C.zero());
        for (unsigned i = 0; i + k <= deg && i < a.size(); ++i) r[i + k] = a[i];
        return r;
    };
    std::vector<E> w(deg + 1, C.zero());
    if (deg >= 3) w[3] = C.one();
    for (unsigned it = 0; it < deg + 2; ++it) {
        std::vector<E> w2 = mul_trunc(w, w);
        std::vector<E> w3 = mul_trunc(w2, w);
        std::vector<E> nxt(deg + 1, C.zero());
        if (deg >= 3) nxt[3] = C.one();
        std::vector<E> t1 = shift(w, 1);  // z w
        std::vector<E> t2 = shift(w, 2);  // z^2 w
        std::vector<E> t4 = shift(w2, 1); // z w^2
        for (unsigned i = 0; i <= deg; ++i) {
            nxt[i] = nxt[i] + C.a1() * t1[i] + C.a2() * t2[i] + C.a3() * w2[i] + C.a4() * t4[i] +
                     C.a6() * w3[i];
        }
        if (nxt == w) break;
        w = nxt;
    }
    return w;
}

template <typename E>
E series_difference_quotient(const std::vector<E>& c, const E& z1, const E& z2) {
    // sum_n c_n * (z1^{n-1} + z1^{n-2} z2 + ... + z2^{n-1})
    E acc = same_ring(z1, 0);
    for (size_t n = 1; n < c.size(); ++n) {
        if (is_zero(c[n])) continue;
        E term = same_ring(z1, 0);
        E p1 = same_ring(z1, 1);
        // p1 runs over z1^i, inner accumulates z2^{n-1-i}
        for (size_t i = 0; i < n; ++i) {
            E p2 = same_ring(z2, 1);
            for (size_t j = 0; j + i + 1 < n; ++j) p2 = p2 * z2;
            term = term + p1 * p2;
            p1 = p1 * z1;
        }
        acc = acc + c[n] * term;
    }
    return acc;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Concrete operations on curves over Q and over Z/p^mu.

/// Reduce a curve over Q modulo p^mu. Throws BadCoefficients if some a_i is
/// not p-integral.
CurveZp reduce_curve(const CurveQ& E, const Integer& p, unsigned mu);

/// Reduction map E(Q) -> E(Z/p^mu): clear denominators projectively, strip
/// the p-content, reduce.
PointZp reduce_point(const CurveQ& E, const PointQ& P, const Integer& p, unsigned mu);

/// Order of P mod p by brute-force multiples. Throws SingularReduction if
/// p divides the discriminant (pass allow_singular to work on the smooth
/// locus of a bad fiber; P itself must then be nonsingular).
long point_order_fp(const CurveQ& E, const PointQ& P, const Integer& p,
                    bool allow_singular = false);

/// #E(F_p) by the quadratic-character sum over x, p odd with good reduction.
long count_points_fp(const CurveQ& E, const Integer& p);

/// a_p = p + 1 - #E(F_p); supersingular iff a_p = 0 (mod p).
bool is_supersingular(const CurveQ& E, const Integer& p);

/// True iff p | disc and P mod p is the singular point of the reduced curve.
bool is_singular_point_mod_p(const CurveQ& E, const PointQ& P, const Integer& p);

/// "a1 a2 a3 a4 a6" as rationals.
CurveQ parse_curve(const std::string& s);
/// "x y" as rationals, or "O".
PointQ parse_point(const CurveQ& E, const std::string& s);

std::string to_string(const CurveQ& E);
std::string to_string(const CurveQ& E, const PointQ& P);

} // namespace edslab
