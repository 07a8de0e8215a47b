#pragma once

#include <array>
#include <vector>

#include "edslab/curve.hpp"

namespace edslab {

/// Everything the block evaluator needs to produce F_n(P) in a fixed ring:
/// the curve, an affine base point and the initial values F_1..F_4.
/// Immutable after construction.
template <typename E>
class NetContext {
  public:
    NetContext(const Curve<E>& curve, const Point<E>& point);

    const Curve<E>& curve() const { return curve_; }
    const Point<E>& point() const { return point_; }
    const E& F2() const { return f2_; }
    const E& F3() const { return f3_; }
    const E& F4() const { return f4_; }

    /// F_n(P) with F_0 = 0, F_1 = 1 and F_{-n} = -F_n, in O(log n) ring
    /// operations. The only divisions are by F_2.
    E eval(const Integer& n) const;

    /// F_0..F_N by the ascending odd/even recursion; O(1) operations per term.
    std::vector<E> range(long N) const;

  private:
    // Values F_{center-3} .. F_{center+4}.
    using Block = std::array<E, 8>;
    Block step(const Block& v, bool odd) const;
    E double_index(const E& fm2, const E& fm1, const E& f0, const E& f1, const E& f2) const;

    Curve<E> curve_;
    Point<E> point_;
    E f2_, f3_, f4_;
    E f2inv_; // cached; only valid when f2_invertible_
    bool f2_invertible_ = false;
    bool f2_zero_field_ = false; // field with F2 = 0: order-2 point, F_even = 0
};

/// (F2, F3, F4) at an affine point, from the standard b-invariant polynomials.
template <typename E>
std::array<E, 3> initial_division_values(const Curve<E>& C, const Point<E>& P);

/// F_{mn}(P) - F_n([m]P) F_m(P)^{n^2}; zero by the division-polynomial chain
/// rule. When F_m(P) = 0 both sides vanish and the zero of the ring is
/// returned directly.
template <typename E>
E chain_rule_residual(const NetContext<E>& ctx, long m, long n);

// ---------------------------------------------------------------------------

template <typename E>
std::array<E, 3> initial_division_values(const Curve<E>& C, const Point<E>& Pin) {
    if (C.is_infinity(Pin)) throw PointAtInfinity("division values need an affine point");
    Point<E> P = C.canonicalize(Pin);
    if (!is_unit(P.Z)) throw PointAtInfinity("point reduces into the kernel of reduction");
    const E &x = P.X, &y = P.Y;
    E f2 = 2 * y + C.a1() * x + C.a3();
    E x2 = x * x;
    E f3 = 3 * (x2 * x2) + C.b2() * x2 * x + 3 * (C.b4() * x2) + 3 * (C.b6() * x) + C.b8();
    E g = 2 * (x2 * x2 * x2) + C.b2() * x2 * x2 * x + 5 * (C.b4() * x2 * x2) +
          10 * (C.b6() * x2 * x) + 10 * (C.b8() * x2) + (C.b2() * C.b8() - C.b4() * C.b6()) * x +
          (C.b4() * C.b8() - C.b6() * C.b6());
    E f4 = f2 * g;
    return {f2, f3, f4};
}

template <typename E>
NetContext<E>::NetContext(const Curve<E>& curve, const Point<E>& point)
    : curve_(curve), point_(curve.canonicalize(point)), f2_(curve.zero()), f3_(curve.zero()),
      f4_(curve.zero()), f2inv_(curve.zero()) {
    auto init = initial_division_values(curve_, point_);
    f2_ = init[0];
    f3_ = init[1];
    f4_ = init[2];
    if (is_unit(f2_)) {
        f2_invertible_ = true;
        f2inv_ = invert(f2_);
    } else if (field_like(f2_) && is_zero(f2_)) {
        // Exact 2-torsion over a field: every even-index value vanishes.
        f2_zero_field_ = true;
    }
}

// F_{2n} = F_n (F_{n+2} F_{n-1}^2 - F_{n-2} F_{n+1}^2) / F_2, arguments
// centered at n.
template <typename E>
E NetContext<E>::double_index(const E& fm2, const E& fm1, const E& f0, const E& f1,
                              const E& f2) const {
    if (f2_zero_field_) return curve_.zero();
    if (!f2_invertible_)
        throw NonUnitDivisor("F_2 is not invertible; even indices need the order-2 pathway");
    return f0 * (f2 * fm1 * fm1 - fm2 * f1 * f1) * f2inv_;
}

template <typename E>
typename NetContext<E>::Block NetContext<E>::step(const Block& v, bool odd) const {
    // v holds F_{c-3}..F_{c+4}; produce the block at center 2c (+1 if odd).
    Block out{curve_.zero(), curve_.zero(), curve_.zero(), curve_.zero(),
              curve_.zero(), curve_.zero(), curve_.zero(), curve_.zero()};
    auto at = [&](long rel) -> const E& { return v[rel + 3]; };
    auto dbl = [&](long j) -> E { // F_{2j}, j relative to center c
        return double_index(at(j - 2), at(j - 1), at(j), at(j + 1), at(j + 2));
    };
    auto dbl1 = [&](long j) -> E { // F_{2j+1} = F_{j+2} F_j^3 - F_{j-1} F_{j+1}^3
        return at(j + 2) * at(j) * at(j) * at(j) - at(j - 1) * at(j + 1) * at(j + 1) * at(j + 1);
    };
    long base = odd ? 1 : 0;
    for (long d = -3; d <= 4; ++d) {
        long M = base + d; // target index relative to 2c
        long idx = d + 3;
        if (((M % 2) + 2) % 2 == 0)
            out[idx] = dbl(M / 2);
        else
            out[idx] = dbl1((M - 1) / 2);
    }
    return out;
}

template <typename E>
E NetContext<E>::eval(const Integer& n) const {
    if (n == 0) return curve_.zero();
    if (n < 0) return -eval(-n);
    if (n == 1) return curve_.one();
    if (n == 2) return f2_;
    if (n == 3) return f3_;
    if (n == 4) return f4_;
    if (!f2_invertible_ && !f2_zero_field_)
        throw NonUnitDivisor("F_2 is not invertible; only |n| <= 4 is available");
    // Seed block centered at 1: F_{-2}..F_5.
    E f5 = f4_ * f2_ * f2_ * f2_ - f3_ * f3_ * f3_; // (41) with n = 2
    Block v{-f2_, -curve_.one(), curve_.zero(), curve_.one(), f2_, f3_, f4_, f5};
    size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
    for (size_t i = bits - 1; i-- > 0;) v = step(v, mpz_tstbit(n.get_mpz_t(), i));
    return v[3];
}

template <typename E>
std::vector<E> NetContext<E>::range(long N) const {
    std::vector<E> f;
    f.reserve(N + 1);
    f.push_back(curve_.zero());
    if (N >= 1) f.push_back(curve_.one());
    if (N >= 2) f.push_back(f2_);
    if (N >= 3) f.push_back(f3_);
    if (N >= 4) f.push_back(f4_);
    for (long M = 5; M <= N; ++M) {
        if (M % 2) {
            long k = (M - 1) / 2;
            f.push_back(f[k + 2] * f[k] * f[k] * f[k] - f[k - 1] * f[k + 1] * f[k + 1] * f[k + 1]);
        } else {
            long k = M / 2;
            f.push_back(double_index(f[k - 2], f[k - 1], f[k], f[k + 1], f[k + 2]));
        }
    }
    return f;
}

template <typename E>
E chain_rule_residual(const NetContext<E>& ctx, long m, long n) {
    E fm = ctx.eval(m);
    E fmn = ctx.eval(Integer(m) * n);
    if (is_zero(fm)) return ctx.curve().zero(); // both sides vanish
    Point<E> mP = ctx.curve().mul(m, ctx.point());
    NetContext<E> shifted(ctx.curve(), mP);
    E fn_at = shifted.eval(n);
    E pw = same_ring(fm, 1);
    Integer e = Integer(n) * n;
    // fm^(n^2) by square-and-multiply to keep Q-arithmetic shallow.
    E base = fm;
    size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (size_t i = bits; i-- > 0;) {
        pw = pw * pw;
        if (mpz_tstbit(e.get_mpz_t(), i)) pw = pw * base;
    }
    return fmn - fn_at * pw;
}

} // namespace edslab
