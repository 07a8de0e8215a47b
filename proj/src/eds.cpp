#include "edslab/eds.hpp"

#include <nlohmann/json.hpp>

namespace edslab {

using nlohmann::json;

bool is_proper(const Integer& w0, const Integer& w1, const Integer& w2, const Integer& w3,
               const Integer& w4) {
    if (w0 != 0 || w1 != 1) return false;
    if (w2 == 0 || w3 == 0) return false;
    return mpz_divisible_p(w4.get_mpz_t(), w2.get_mpz_t());
}

Integer eds_discriminant(const Integer& w2, const Integer& w3, const Integer& w4) {
    auto pw = [](const Integer& b, unsigned e) {
        Integer r;
        mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
        return r;
    };
    return w4 * pw(w2, 15) - pw(w3, 3) * pw(w2, 12) + 3 * pw(w4, 2) * pw(w2, 10) -
           20 * w4 * pw(w3, 3) * pw(w2, 7) + 3 * pw(w4, 3) * pw(w2, 5) +
           16 * pw(w3, 6) * pw(w2, 4) + 8 * pw(w4, 2) * pw(w3, 3) * pw(w2, 2) + pw(w4, 4);
}

Eds::Eds(Integer w2, Integer w3, Integer w4)
    : w2_(std::move(w2)), w3_(std::move(w3)), w4_(std::move(w4)) {
    if (!is_proper(0, 1, w2_, w3_, w4_)) throw ImproperResult("initial terms are not proper");
}

Eds::Eds(CurveQ curve, PointQ point, Rational gamma) : curve_(curve), point_(point), gamma_(gamma) {
    if (sgn(gamma_) == 0) throw InputError("gamma must be nonzero");
    NetContext<Rational> ctx(*curve_, *point_);
    Rational g3 = gamma_ * gamma_ * gamma_;
    Rational g8 = g3 * g3 * gamma_ * gamma_;
    Rational w2 = g3 * ctx.F2();
    Rational w3 = g8 * ctx.F3();
    Rational w4 = g8 * g3 * g3 * gamma_ * ctx.F4(); // gamma^15 F_4
    if (w2.get_den() != 1 || w3.get_den() != 1 || w4.get_den() != 1)
        throw ImproperResult("scaled initial terms are not integers");
    w2_ = w2.get_num();
    w3_ = w3.get_num();
    w4_ = w4.get_num();
    if (!is_proper(0, 1, w2_, w3_, w4_)) throw ImproperResult("initial terms are not proper");
}

const CurveQ& Eds::curve() const {
    if (!curve_) throw InputError("sequence has no attached curve");
    return *curve_;
}

const PointQ& Eds::point() const {
    if (!point_) throw InputError("sequence has no attached point");
    return *point_;
}

std::vector<Integer> Eds::generate(long N) const {
    if (static_cast<long>(cache_.size()) > N)
        return std::vector<Integer>(cache_.begin(), cache_.begin() + N + 1);
    if (cache_.empty()) cache_ = {Integer(0), Integer(1), w2_, w3_, w4_};
    for (long M = cache_.size(); M <= N; ++M) {
        if (M % 2) {
            long k = (M - 1) / 2;
            cache_.push_back(cache_[k + 2] * cache_[k] * cache_[k] * cache_[k] -
                             cache_[k - 1] * cache_[k + 1] * cache_[k + 1] * cache_[k + 1]);
        } else {
            long k = M / 2;
            Integer num = cache_[k] * (cache_[k + 2] * cache_[k - 1] * cache_[k - 1] -
                                       cache_[k - 2] * cache_[k + 1] * cache_[k + 1]);
            if (!mpz_divisible_p(num.get_mpz_t(), w2_.get_mpz_t()))
                throw NonIntegralStep("even-index division by W_2 is not exact");
            Integer q;
            mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), w2_.get_mpz_t());
            cache_.push_back(q);
        }
    }
    return std::vector<Integer>(cache_.begin(), cache_.begin() + N + 1);
}

bool check_recursion(const Eds& W, long M) {
    std::vector<Integer> w = W.generate(M);
    for (long m = 1; m <= M; ++m) {
        for (long n = 1; n <= m && m + n <= M; ++n) {
            Integer lhs = w[m + n] * w[m - n];
            Integer rhs = w[m + 1] * w[m - 1] * w[n] * w[n] - w[n + 1] * w[n - 1] * w[m] * w[m];
            if (lhs != rhs) return false;
        }
    }
    return true;
}

bool divisibility_check(const Eds& W, long M) {
    std::vector<Integer> w = W.generate(M);
    for (long m = 1; m <= M; ++m) {
        if (w[m] == 0) continue;
        for (long n = m; n <= M; n += m) {
            if (!mpz_divisible_p(w[n].get_mpz_t(), w[m].get_mpz_t())) return false;
        }
    }
    return true;
}

Eds from_curve_point(const CurveQ& E, const PointQ& P) {
    for (const Rational* a : {&E.a1(), &E.a2(), &E.a3(), &E.a4(), &E.a6()})
        if (a->get_den() != 1) throw BadCoefficients("curve model must be integral");
    PointQ c = E.canonicalize(P);
    if (E.is_infinity(c)) throw PointAtInfinity("the base point must be affine");
    if (c.X.get_den() != 1 || c.Y.get_den() != 1)
        throw NonIntegralPoint("the base point must have integral coordinates");
    return Eds(E, P, Rational(1));
}

PrimeClassification classify_prime(const Eds& W, const Integer& p) {
    const CurveQ& E = W.curve();
    const PointQ& P = W.point();
    PrimeClassification c;
    c.p = p;
    if (p == 2) {
        c.is_two = true;
        return c;
    }
    CurveZp E1 = reduce_curve(E, p, 1);
    PointZp P1 = reduce_point(E, P, p, 1);
    c.point_at_O = E1.is_infinity(P1);
    c.singular_point = is_singular_point_mod_p(E, P, p);
    if (!E1.discriminant().is_zero()) c.supersingular = is_supersingular(E, p);
    return c;
}

LimitCertificate eds_padic_limit(const Eds& W, const Integer& p, long m, unsigned mu) {
    PrimeClassification cls = classify_prime(W, p);
    if (!cls.admissible()) throw InadmissiblePrime("prime excluded by Theorem 20: " + to_json(cls));
    auto vg = padic_valuation(W.gamma(), p);
    if (vg && *vg > 0) {
        // W_n = gamma^(n^2-1) F_n -> 0 once ord_p(gamma) > 0.
        LimitCertificate cert;
        cert.p = p;
        cert.m = m;
        cert.mu = mu;
        cert.vanishing = true;
        cert.crosscheck = true;
        cert.value = 0;
        cert.r = point_order_fp(W.curve(), W.point(), p, true);
        cert.r_prime = cert.r;
        while (Integer(cert.r_prime) % p == 0) cert.r_prime /= mpz_get_si(p.get_mpz_t());
        return cert;
    }
    LimitCertificate cert = padic_limit_smooth(W.curve(), W.point(), p, m, mu);
    if (W.gamma() != 1) {
        // lim gamma^(m^2 q^(2k) - 1) = chi(gamma)^(m^2) gamma^(-1).
        Residue g = residue_of(W.gamma(), p, mu);
        Residue scale = teichmuller_unit(g).pow(Integer(m) * m) * unit_inverse(g);
        cert.value = (scale * Residue(cert.value, p, mu)).value();
        cert.vanishing = (cert.value == 0);
    }
    return cert;
}

bool vanishing_predict(const Eds& W, const Integer& p, long m) {
    auto vg = padic_valuation(W.gamma(), p);
    if (vg && *vg > 0) return true;
    long r = point_order_fp(W.curve(), W.point(), p, true);
    return (Integer(m) * p) % r == 0;
}

std::string to_json(const PrimeClassification& c) {
    json j;
    j["p"] = c.p.get_str();
    j["is_two"] = c.is_two;
    j["point_at_O"] = c.point_at_O;
    j["singular_point"] = c.singular_point;
    j["supersingular"] = c.supersingular;
    j["admissible"] = c.admissible();
    return j.dump();
}

} // namespace edslab
