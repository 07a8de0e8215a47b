#pragma once

#include <string>

#include "edslab/periodicity.hpp"

namespace edslab {

/// Witness for the p-adic limit G_{m,q}(P) = lim_k F_{m q^k}(P) in Z/p^mu.
struct LimitCertificate {
    Integer p;
    long m = 0;
    unsigned mu = 0;
    long e = 0;      // q = p^e with q = 1 (mod r' t)
    Integer q;
    long r = 0;      // order of P mod p
    long r_prime = 0; // p-free part of r
    long t = 0;      // symmetry order
    Integer value;   // stabilized residue in [0, p^mu)
    long k_stable = 0;
    bool vanishing = false;
    bool crosscheck = false; // value agreed with a rerun at precision mu+1
};

/// Report on Theorem 14's periodicity of (F_{kr}(P) mod p^mu).
struct PmuPeriodReport {
    unsigned mu = 0;
    long lambda = 0;
    Integer period_divisor; // p^lambda (p - 1)
    long window = 0;
    bool pass = false;
};

/// Smallest positive lambda with min_{0<=i<=lambda} {(lambda-i)e + p^i} >= mu.
/// Over Q_p (e = 1) this is max(1, mu-1).
long lambda_for(unsigned mu, unsigned e, const Integer& p);

/// The exponent e with q = p^e = 1 (mod r' t), via the multiplicative order.
long choose_q(const Integer& p, long r_prime, long t);

/// Teichmueller lift of a point: the torsion point T = Q (mod p) with
/// [tau]T = O at precision mu, computed as the fixed point of [p^e'].
/// Requires p odd and p not dividing tau = order of Q mod p.
PointZp teichmuller_point(const CurveQ& E, const PointZp& Q, const Integer& p, unsigned mu);

/// Theorem 12 limit certificate. Gates: p >= 3, good ordinary reduction,
/// P nontrivial and nonsingular mod p, r >= 3.
LimitCertificate padic_limit(const CurveQ& E, const PointQ& P, const Integer& p, long m,
                             unsigned mu);

/// Same computation with the reduction-type gate relaxed to "P mod p is a
/// smooth point": used by the EDS module, whose admissible set (Theorem 20)
/// keeps bad-reduction primes when the point misses the singular locus.
LimitCertificate padic_limit_smooth(const CurveQ& E, const PointQ& P, const Integer& p, long m,
                                    unsigned mu);

/// Check F_{(k+ell) r}(P) = F_{kr}(P) mod p^mu for ell = p^lambda (p-1) and
/// all 1 <= k <= window.
PmuPeriodReport verify_period_mod_pmu(const CurveQ& E, const PointQ& P, const Integer& p,
                                      unsigned mu, long window);

/// Eq. (37) consistency via the alpha-free cross ratio: with
/// S_k = F_{kr}(P)/F_r(P) computed exactly over Q,
///   (S_j / j)^(k^2-1) = (S_k / k)^(j^2-1)  (mod p)
/// for all 2 <= j < k <= k_max with p not dividing jk.
/// Throws DegenerateValuation when ord_p F_r(P) >= 2 (test void).
bool shipsey_consistency(const CurveQ& E, const PointQ& P, const Integer& p, long k_max);

/// Lemma 15(b): z([p^lambda]([r]P)) = 0 mod p^mu, carried at precision
/// mu + lambda.
bool kernel_valuation_check(const CurveQ& E, const PointQ& P, const Integer& p, unsigned mu);

std::string to_json(const LimitCertificate& c);
LimitCertificate limit_certificate_from_json(const std::string& s);
std::string to_json(const PmuPeriodReport& r);

} // namespace edslab
