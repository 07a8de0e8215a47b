#pragma once

#include <optional>
#include <string>
#include <vector>

#include "edslab/padic.hpp"

namespace edslab {

/// Theorem 20's per-prime gate: the flags spanning the excluded set S_W.
struct PrimeClassification {
    Integer p;
    bool is_two = false;
    bool point_at_O = false;
    bool singular_point = false;
    bool supersingular = false;
    bool admissible() const { return !is_two && !point_at_O && !singular_point && !supersingular; }
};

/// A proper elliptic divisibility sequence, optionally attached to a curve
/// and point via W_n = gamma^(n^2-1) F_n(P).
class Eds {
  public:
    /// Abstract sequence from its defining triple.
    Eds(Integer w2, Integer w3, Integer w4);

    /// Attached form: W_n = gamma^(n^2-1) F_n(P). from_curve_point builds
    /// the gamma = 1 instance; other gammas are accepted as explicit input.
    Eds(CurveQ curve, PointQ point, Rational gamma = Rational(1));

    const Integer& w2() const { return w2_; }
    const Integer& w3() const { return w3_; }
    const Integer& w4() const { return w4_; }
    bool attached() const { return curve_.has_value(); }
    const CurveQ& curve() const;
    const PointQ& point() const;
    const Rational& gamma() const { return gamma_; }

    /// W_0..W_N. Terms are cached; the division by W_2 in the even-index
    /// rule is checked exact (NonIntegralStep otherwise).
    std::vector<Integer> generate(long N) const;

  private:
    Integer w2_, w3_, w4_;
    std::optional<CurveQ> curve_;
    std::optional<PointQ> point_;
    Rational gamma_{1};
    mutable std::vector<Integer> cache_;
};

/// W0 = 0, W1 = 1, W2 W3 != 0, W2 | W4.
bool is_proper(const Integer& w0, const Integer& w1, const Integer& w2, const Integer& w3,
               const Integer& w4);

/// The eight-term discriminant polynomial (39); nonzero iff the attached
/// curve is nonsingular.
Integer eds_discriminant(const Integer& w2, const Integer& w3, const Integer& w4);

/// Recursion W_{m+n} W_{m-n} = W_{m+1} W_{m-1} W_n^2 - W_{n+1} W_{n-1} W_m^2
/// for all m >= n >= 1 with m + n <= M.
bool check_recursion(const Eds& W, long M);

/// m | n implies W_m | W_n, for n <= M.
bool divisibility_check(const Eds& W, long M);

/// gamma = 1 bridge: W_n := F_n(P) for an integral model and integral point.
Eds from_curve_point(const CurveQ& E, const PointQ& P);

PrimeClassification classify_prime(const Eds& W, const Integer& p);

/// Theorem 20 limit: refused on inadmissible primes; on the gamma = 1 path
/// equals padic_limit (with the reduction-type gate relaxed to the smooth
/// locus); general gamma scales the value by chi(gamma)^(m^2) gamma^(-1).
LimitCertificate eds_padic_limit(const Eds& W, const Integer& p, long m, unsigned mu);

/// Remark 7 prediction: vanishing iff ord_p(gamma) > 0 or r_p | mp.
bool vanishing_predict(const Eds& W, const Integer& p, long m);

std::string to_json(const PrimeClassification& c);

} // namespace edslab
