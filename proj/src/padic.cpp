#include "edslab/padic.hpp"

#include <nlohmann/json.hpp>

namespace edslab {

using nlohmann::json;

long lambda_for(unsigned mu, unsigned e, const Integer& p) {
    if (mu < 1 || e < 1 || p < 3) throw InputError("lambda_for wants mu >= 1, e >= 1, p >= 3");
    for (long lam = 1;; ++lam) {
        bool ok = true;
        Integer pi = 1;
        for (long i = 0; i <= lam; ++i) {
            if (pi >= mu) break; // p^i >= mu makes the term unconstraining
            if (Integer(lam - i) * e + pi < mu) {
                ok = false;
                break;
            }
            pi *= p;
        }
        if (ok) return lam;
    }
}

long choose_q(const Integer& p, long r_prime, long t) {
    Integer n = Integer(r_prime) * t;
    Integer g;
    mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), n.get_mpz_t());
    if (g != 1) throw NotCoprime("p shares a factor with r't");
    return mpz_get_si(mult_order(p, n).get_mpz_t());
}

PointZp teichmuller_point(const CurveQ& E, const PointZp& Q, const Integer& p, unsigned mu) {
    if (p < 3) throw PEqualsTwo("teichmuller_point requires p odd");
    CurveZp Ep = reduce_curve(E, p, mu);
    CurveZp E1 = reduce_curve(E, p, 1);
    PointZp Q1 = E1.canonicalize(
        PointZp{Q.X.truncate(1), Q.Y.truncate(1), Q.Z.truncate(1)});
    // Order of the reduction in E(F_p).
    long tau = 1;
    if (!E1.is_infinity(Q1)) {
        PointZp R = Q1;
        long bound = 2 * mpz_get_ui(p.get_mpz_t()) + 8;
        for (tau = 1; tau <= bound; ++tau) {
            if (E1.is_infinity(R)) break;
            R = E1.add(R, Q1);
        }
        if (tau > bound) throw Error("order search exceeded the Hasse bound");
    }
    if (Integer(tau) % p == 0) throw OrderDivisibleByP("p divides the order of Q mod p");
    Integer step;
    mpz_pow_ui(step.get_mpz_t(), p.get_mpz_t(),
               mpz_get_ui(mult_order(p, tau).get_mpz_t()));
    PointZp T = Ep.canonicalize(Q);
    for (unsigned i = 0; i <= 2 * mu + 8; ++i) {
        PointZp next = Ep.mul(step, T);
        if (Ep.eq(next, T)) return T;
        T = next;
    }
    throw Error("teichmuller point iteration failed to stabilize");
}

namespace {

struct LimitSetting {
    long r = 0;
    long r_prime = 0;
    long t = 0;
    long e = 0;
    Integer q;
};

LimitSetting limit_setting(const CurveQ& E, const PointQ& P, const Integer& p,
                           bool allow_singular) {
    LimitSetting s;
    s.r = point_order_fp(E, P, p, allow_singular);
    if (s.r == 1) throw TrivialPoint("point reduces to O mod p");
    if (s.r == 2) throw OrderTwo("reduction has order 2");
    s.r_prime = s.r;
    while (Integer(s.r_prime) % p == 0) s.r_prime /= mpz_get_si(p.get_mpz_t());
    auto [a, b] = symmetry_constants(E, P, p, allow_singular);
    // Smallest t with a^t = b^{t^2} = 1 (r >= 3 here).
    long tmax = mpz_get_ui(Integer(p - 1).get_mpz_t());
    s.t = 0;
    for (long t = 1; t <= tmax; ++t) {
        if (!(a.pow(t) == a.same(1))) continue;
        if (b.pow(Integer(t) * t) == b.same(1)) {
            s.t = t;
            break;
        }
    }
    if (s.t == 0) throw Error("symmetry order not found");
    s.e = choose_q(p, s.r_prime, s.t);
    mpz_pow_ui(s.q.get_mpz_t(), p.get_mpz_t(), s.e);
    return s;
}

// A_k = F_{m q^k}(P) mod p^mu.
Residue limit_term(const NetContext<Residue>& ctx, long m, const Integer& q, long k) {
    Integer idx = m;
    for (long i = 0; i < k; ++i) idx *= q;
    return ctx.eval(idx);
}

LimitCertificate padic_limit_impl(const CurveQ& E, const PointQ& P, const Integer& p, long m,
                                  unsigned mu, bool allow_singular) {
    if (p < 3) throw PEqualsTwo("p-adic limits require p >= 3");
    if (m < 1) throw InputError("m must be >= 1");
    CurveZp E1 = reduce_curve(E, p, 1);
    bool singular = E1.discriminant().is_zero();
    if (singular) {
        if (!allow_singular) throw SingularReduction("p divides the discriminant");
        if (is_singular_point_mod_p(E, P, p))
            throw SingularReduction("point reduces to the singular point");
    } else {
        if (is_supersingular(E, p)) throw SupersingularReduction("supersingular reduction");
    }
    {
        PointZp P1 = reduce_point(E, P, p, 1);
        if (E1.is_infinity(P1)) throw TrivialPoint("point reduces to O mod p");
    }

    LimitSetting st = limit_setting(E, P, p, allow_singular);
    LimitCertificate cert;
    cert.p = p;
    cert.m = m;
    cert.mu = mu;
    cert.e = st.e;
    cert.q = st.q;
    cert.r = st.r;
    cert.r_prime = st.r_prime;
    cert.t = st.t;

    long lambda = lambda_for(mu, 1, p);

    auto make_ctx = [&](unsigned prec) {
        CurveZp Ep = reduce_curve(E, p, prec);
        PointZp Pp = reduce_point(E, P, p, prec);
        return NetContext<Residue>(Ep, Pp);
    };
    NetContext<Residue> ctx = make_ctx(mu);

    if (m % st.r_prime == 0) {
        // Theorem 12(d) vanishing branch: confirm past the lambda threshold.
        cert.vanishing = true;
        bool seen = false;
        for (long k = lambda + 1; k <= lambda + static_cast<long>(mu) + 20; ++k) {
            Residue A = limit_term(ctx, m, st.q, k);
            if (A.is_zero()) {
                cert.k_stable = k;
                cert.value = 0;
                seen = true;
                break;
            }
        }
        if (!seen) throw Error("vanishing limit failed to reach 0 mod p^mu");
        // The same confirmation one precision higher.
        NetContext<Residue> ctx2 = make_ctx(mu + 1);
        cert.crosscheck = false;
        for (long k = cert.k_stable; k <= cert.k_stable + static_cast<long>(mu) + 20; ++k) {
            Residue A = limit_term(ctx2, m, st.q, k);
            if ((A.truncate(mu)).is_zero()) {
                cert.crosscheck = true;
                break;
            }
        }
        return cert;
    }

    // Nonvanishing branch: iterate until three consecutive values agree and
    // k is past the lambda threshold; then rerun one precision higher and
    // compare truncations.
    Residue base_mod_p = limit_term(make_ctx(1), m, st.q, 0); // F_m(P) mod p
    auto stabilize = [&](const NetContext<Residue>& c, long& k_out) {
        Residue prev1 = c.curve().zero(), prev2 = c.curve().zero();
        long have = 0;
        for (long k = 0; k <= lambda + 60; ++k) {
            Residue A = limit_term(c, m, st.q, k);
            // Constancy mod p (Section 6): A_k = F_m(P) mod p, available
            // whenever p does not divide r.
            if (st.r == st.r_prime && !(A.truncate(1) == base_mod_p))
                throw Error("A_k mod p is not constant; q-selection broken");
            if (have >= 2 && A == prev1 && prev1 == prev2 && k >= lambda + 1) {
                k_out = k;
                return A;
            }
            prev2 = prev1;
            prev1 = A;
            have++;
        }
        throw Error("limit failed to stabilize within the iteration budget");
    };

    long k1 = 0;
    Residue v1 = stabilize(ctx, k1);
    NetContext<Residue> ctx2 = make_ctx(mu + 1);
    long k2 = 0;
    Residue v2 = stabilize(ctx2, k2);
    cert.value = v1.value();
    cert.k_stable = k1;
    cert.vanishing = v1.is_zero();
    cert.crosscheck = (v2.truncate(mu) == v1);
    if (cert.vanishing)
        throw Error("nonvanishing branch stabilized at zero; Theorem 12(d) violated");
    return cert;
}

} // namespace

LimitCertificate padic_limit(const CurveQ& E, const PointQ& P, const Integer& p, long m,
                             unsigned mu) {
    return padic_limit_impl(E, P, p, m, mu, false);
}

LimitCertificate padic_limit_smooth(const CurveQ& E, const PointQ& P, const Integer& p, long m,
                                    unsigned mu) {
    return padic_limit_impl(E, P, p, m, mu, true);
}

PmuPeriodReport verify_period_mod_pmu(const CurveQ& E, const PointQ& P, const Integer& p,
                                      unsigned mu, long window) {
    if (p < 3) throw PEqualsTwo("p >= 3 required");
    CurveZp E1 = reduce_curve(E, p, 1);
    if (E1.discriminant().is_zero()) throw SingularReduction("p divides the discriminant");
    if (is_supersingular(E, p)) throw SupersingularReduction("supersingular reduction");
    long r = point_order_fp(E, P, p);
    if (r == 1) throw TrivialPoint("point reduces to O mod p");
    if (r == 2) throw OrderTwo("reduction has order 2");

    PmuPeriodReport rep;
    rep.mu = mu;
    rep.lambda = lambda_for(mu, 1, p);
    Integer plam;
    mpz_pow_ui(plam.get_mpz_t(), p.get_mpz_t(), rep.lambda);
    rep.period_divisor = plam * (p - 1);
    rep.window = window;

    if (rep.period_divisor * r * (window + 1) > 20000000)
        throw InputError("mod-p^mu window too large to tabulate");
    long ell = mpz_get_si(rep.period_divisor.get_mpz_t());
    CurveZp Ep = reduce_curve(E, p, mu);
    PointZp Pp = reduce_point(E, P, p, mu);
    NetContext<Residue> ctx(Ep, Pp);
    std::vector<Residue> f = ctx.range((window + ell) * r);
    rep.pass = true;
    for (long k = 1; k <= window; ++k) {
        if (!(f[(k + ell) * r] == f[k * r])) {
            rep.pass = false;
            break;
        }
    }
    return rep;
}

bool shipsey_consistency(const CurveQ& E, const PointQ& P, const Integer& p, long k_max) {
    if (p < 3) throw PEqualsTwo("p >= 3 required");
    CurveZp E1 = reduce_curve(E, p, 1);
    if (E1.discriminant().is_zero()) throw SingularReduction("p divides the discriminant");
    if (is_supersingular(E, p)) throw SupersingularReduction("supersingular reduction");
    long r = point_order_fp(E, P, p);
    if (r == 1) throw TrivialPoint("point reduces to O mod p");
    if (r == 2) throw OrderTwo("reduction has order 2");

    NetContext<Rational> ctx(E, P);
    std::vector<Rational> f = ctx.range(k_max * r);
    Rational fr = f[r];
    auto v = padic_valuation(fr, p);
    if (!v || *v < 1) throw Error("F_r(P) should vanish mod p");
    if (*v >= 2) throw DegenerateValuation("ord_p F_r(P) >= 2; the mod-p^2 test is void");

    // S_k = F_{kr}/F_r is p-integral; reduce mod p and test the cross ratio.
    Residue model(0, p, 1);
    std::vector<Residue> S(k_max + 1, model);
    for (long k = 1; k <= k_max; ++k) S[k] = residue_of(f[k * r] / fr, p, 1);
    if (!(S[1] == model.same(1))) return false;
    for (long j = 2; j <= k_max; ++j) {
        if (Integer(j) % p == 0) continue;
        for (long k = j + 1; k <= k_max; ++k) {
            if (Integer(k) % p == 0) continue;
            Residue lhs = (S[j] * unit_inverse(model.same(j))).pow(Integer(k) * k - 1);
            Residue rhs = (S[k] * unit_inverse(model.same(k))).pow(Integer(j) * j - 1);
            if (!(lhs == rhs)) return false;
        }
    }
    return true;
}

bool kernel_valuation_check(const CurveQ& E, const PointQ& P, const Integer& p, unsigned mu) {
    if (p < 3) throw PEqualsTwo("p >= 3 required");
    long lambda = lambda_for(mu, 1, p);
    unsigned work = mu + lambda; // buffer precision for the projective ladder
    long r = point_order_fp(E, P, p);
    CurveZp Ep = reduce_curve(E, p, work);
    PointZp Pp = reduce_point(E, P, p, work);
    PointZp R = Ep.mul(r, Pp);
    if (Ep.is_infinity(R)) return true; // already O at full precision
    {
        // rP must land in the kernel of reduction.
        Residue z0 = Ep.z_coordinate(R);
        if (!mpz_divisible_p(z0.value().get_mpz_t(), p.get_mpz_t()))
            throw Error("[r]P is not in the kernel of reduction");
    }
    Integer plam;
    mpz_pow_ui(plam.get_mpz_t(), p.get_mpz_t(), lambda);
    PointZp S = Ep.mul(plam, R);
    if (Ep.is_infinity(S)) return true;
    Residue z = Ep.z_coordinate(S);
    Integer pmu;
    mpz_pow_ui(pmu.get_mpz_t(), p.get_mpz_t(), mu);
    return mpz_divisible_p(z.value().get_mpz_t(), pmu.get_mpz_t());
}

std::string to_json(const LimitCertificate& c) {
    json j;
    j["p"] = c.p.get_str();
    j["m"] = c.m;
    j["mu"] = c.mu;
    j["e"] = c.e;
    j["q"] = c.q.get_str();
    j["r"] = c.r;
    j["r_prime"] = c.r_prime;
    j["t"] = c.t;
    j["value"] = c.value.get_str();
    j["k_stable"] = c.k_stable;
    j["vanishing"] = c.vanishing;
    j["crosscheck"] = c.crosscheck;
    return j.dump();
}

LimitCertificate limit_certificate_from_json(const std::string& s) {
    json j = json::parse(s);
    LimitCertificate c;
    c.p = Integer(j.at("p").get<std::string>());
    c.m = j.at("m").get<long>();
    c.mu = j.at("mu").get<unsigned>();
    c.e = j.at("e").get<long>();
    c.q = Integer(j.at("q").get<std::string>());
    c.r = j.at("r").get<long>();
    c.r_prime = j.at("r_prime").get<long>();
    c.t = j.at("t").get<long>();
    c.value = Integer(j.at("value").get<std::string>());
    c.k_stable = j.at("k_stable").get<long>();
    c.vanishing = j.at("vanishing").get<bool>();
    c.crosscheck = j.at("crosscheck").get<bool>();
    return c;
}

std::string to_json(const PmuPeriodReport& r) {
    json j;
    j["mu"] = r.mu;
    j["lambda"] = r.lambda;
    j["period_divisor"] = r.period_divisor.get_str();
    j["window"] = r.window;
    j["pass"] = r.pass;
    return j.dump();
}

} // namespace edslab
