#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

#include "edslab/errors.hpp"

namespace edslab {

/// Exact rationals. Always stored in lowest terms with positive denominator
/// (mpq_class canonicalizes on construction and arithmetic).
using Rational = mpq_class;

using Integer = mpz_class;

bool is_prime(const Integer& p);

/// "n" or "n/d", base 10.
Rational parse_rational(const std::string& s);
std::string to_string(const Rational& x);

/// ord_p(x) = ord_p(num) - ord_p(den); std::nullopt encodes +infinity (x = 0).
std::optional<long> padic_valuation(const Rational& x, const Integer& p);

/// An element of Z/p^mu with explicit prime and precision. All arithmetic
/// stays at the declared precision; mixing precisions or primes is an error,
/// never a coercion.
class Residue {
  public:
    Residue() = default;
    Residue(Integer value, Integer prime, unsigned precision);

    const Integer& value() const { return value_; }
    const Integer& prime() const { return prime_; }
    unsigned precision() const { return precision_; }
    const Integer& modulus() const { return modulus_; }

    /// Another element of the same ring.
    Residue same(const Integer& v) const { return Residue(v, prime_, precision_); }

    bool is_zero() const { return value_ == 0; }
    bool is_unit() const;
    Residue inverse() const;
    Residue pow(const Integer& e) const;

    /// Image in Z/p^nu for nu <= mu.
    Residue truncate(unsigned nu) const;

    friend Residue operator+(const Residue& a, const Residue& b);
    friend Residue operator-(const Residue& a, const Residue& b);
    friend Residue operator*(const Residue& a, const Residue& b);
    friend Residue operator-(const Residue& a);
    friend Residue operator*(long a, const Residue& b);
    friend bool operator==(const Residue& a, const Residue& b);
    friend bool operator!=(const Residue& a, const Residue& b) { return !(a == b); }

    /// "v mod p^mu"
    std::string str() const;

  private:
    static void require_same_ring(const Residue& a, const Residue& b);

    Integer value_{0};
    Integer prime_{0};
    unsigned precision_{0};
    Integer modulus_{0};
};

/// Reduction map Q -> Z/p^mu on p-integral rationals.
/// Throws NonUnitDenominator when p divides the denominator.
Residue residue_of(const Rational& x, const Integer& p, unsigned mu);

/// Inverse of a unit of Z/p^mu. Throws NonUnit when p | a.
Residue unit_inverse(const Residue& a);

/// The Teichmueller representative: the unique zeta with zeta^(p-1) = 1 in
/// Z/p^mu and zeta = a (mod p), computed as the fixed point of x -> x^p.
/// Requires p odd and a a unit.
Residue teichmuller_unit(const Residue& a);

/// Least e >= 1 with a^e = 1 (mod n). Throws NotCoprime if gcd(a, n) != 1.
Integer mult_order(const Integer& a, const Integer& n);

// ---- small helpers shared by the ring-generic curve/divpoly templates ----

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
inline bool is_zero(const Residue& x) { return x.is_zero(); }

inline bool is_unit(const Rational& x) { return sgn(x) != 0; }
inline bool is_unit(const Residue& x) { return x.is_unit(); }

inline Rational invert(const Rational& x) {
    if (sgn(x) == 0) throw NonUnit("division by zero in Q");
    return 1 / x;
}
inline Residue invert(const Residue& x) { return x.inverse(); }

/// Integer literal carried into the same ring as `model`.
inline Rational same_ring(const Rational&, long v) { return Rational(v); }
inline Residue same_ring(const Residue& model, long v) { return model.same(v); }

/// True in rings where every nonzero element is invertible (Q, Z/p).
inline bool field_like(const Rational&) { return true; }
inline bool field_like(const Residue& x) { return x.precision() == 1; }

inline std::string to_string(const Residue& x) { return x.str(); }

} // namespace edslab
