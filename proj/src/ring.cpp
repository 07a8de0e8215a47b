#include "edslab/ring.hpp"

#include <sstream>

namespace edslab {

bool is_prime(const Integer& p) {
    if (p < 2) return false;
    return mpz_probab_prime_p(p.get_mpz_t(), 32) != 0;
}

Rational parse_rational(const std::string& s) {
    std::string t = s;
    // mpq parses "n/d" directly but accepts degenerate input; validate first.
    if (t.empty()) throw InputError("empty rational");
    auto slash = t.find('/');
    try {
        if (slash == std::string::npos) {
            Integer n(t);
            return Rational(n);
        }
        Integer n(t.substr(0, slash));
        Integer d(t.substr(slash + 1));
        if (d == 0) throw InputError("zero denominator: " + s);
        Rational q(n, d);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw InputError("bad rational: " + s);
    }
}

std::string to_string(const Rational& x) {
    std::ostringstream os;
    if (x.get_den() == 1)
        os << x.get_num();
    else
        os << x.get_num() << "/" << x.get_den();
    return os.str();
}

static long ord_p(const Integer& n, const Integer& p) {
    Integer m = n;
    long v = 0;
    while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
        mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
        ++v;
    }
    return v;
}

std::optional<long> padic_valuation(const Rational& x, const Integer& p) {
    if (!is_prime(p)) throw NotPrime("p is not prime");
    if (sgn(x) == 0) return std::nullopt;
    return ord_p(x.get_num(), p) - ord_p(x.get_den(), p);
}

Residue::Residue(Integer value, Integer prime, unsigned precision)
    : prime_(std::move(prime)), precision_(precision) {
    if (prime_ < 2) throw InputError("residue prime must be >= 2");
    if (precision_ < 1) throw InputError("residue precision must be >= 1");
    mpz_pow_ui(modulus_.get_mpz_t(), prime_.get_mpz_t(), precision_);
    mpz_mod(value_.get_mpz_t(), value.get_mpz_t(), modulus_.get_mpz_t());
}

bool Residue::is_unit() const {
    return !mpz_divisible_p(value_.get_mpz_t(), prime_.get_mpz_t());
}

Residue Residue::inverse() const { return unit_inverse(*this); }

Residue Residue::pow(const Integer& e) const {
    if (e < 0) return inverse().pow(-e);
    Integer r;
    mpz_powm(r.get_mpz_t(), value_.get_mpz_t(), e.get_mpz_t(), modulus_.get_mpz_t());
    return same(r);
}

Residue Residue::truncate(unsigned nu) const {
    if (nu > precision_) throw PrecisionMismatch("truncate to higher precision");
    return Residue(value_, prime_, nu);
}

void Residue::require_same_ring(const Residue& a, const Residue& b) {
    if (a.prime_ != b.prime_ || a.precision_ != b.precision_)
        throw PrecisionMismatch("mixed residue rings: " + a.str() + " vs " + b.str());
}

Residue operator+(const Residue& a, const Residue& b) {
    Residue::require_same_ring(a, b);
    return a.same(a.value_ + b.value_);
}

Residue operator-(const Residue& a, const Residue& b) {
    Residue::require_same_ring(a, b);
    return a.same(a.value_ - b.value_);
}

Residue operator*(const Residue& a, const Residue& b) {
    Residue::require_same_ring(a, b);
    return a.same(a.value_ * b.value_);
}

Residue operator-(const Residue& a) { return a.same(-a.value_); }

Residue operator*(long a, const Residue& b) { return b.same(a * b.value_); }

bool operator==(const Residue& a, const Residue& b) {
    Residue::require_same_ring(a, b);
    return a.value_ == b.value_;
}

std::string Residue::str() const {
    std::ostringstream os;
    os << value_ << " mod " << prime_;
    if (precision_ != 1) os << "^" << precision_;
    return os.str();
}

Residue residue_of(const Rational& x, const Integer& p, unsigned mu) {
    Residue model(0, p, mu);
    if (mpz_divisible_p(x.get_den().get_mpz_t(), p.get_mpz_t()))
        throw NonUnitDenominator("p divides denominator of " + to_string(x));
    Integer dinv;
    if (!mpz_invert(dinv.get_mpz_t(), x.get_den().get_mpz_t(), model.modulus().get_mpz_t()))
        throw NonUnitDenominator("denominator not invertible mod p^mu");
    return model.same(x.get_num() * dinv);
}

Residue unit_inverse(const Residue& a) {
    Integer r;
    if (!mpz_invert(r.get_mpz_t(), a.value().get_mpz_t(), a.modulus().get_mpz_t()))
        throw NonUnit("not a unit: " + a.str());
    return a.same(r);
}

Residue teichmuller_unit(const Residue& a) {
    if (a.prime() == 2) throw PEqualsTwo("teichmuller_unit requires p odd");
    if (!a.is_unit()) throw NonUnit("not a unit: " + a.str());
    // x -> x^p gains at least one digit of agreement per step, so mu+1
    // iterations reach the fixed point.
    Residue x = a;
    for (unsigned i = 0; i <= a.precision() + 1; ++i) {
        Residue y = x.pow(a.prime());
        if (y == x) return x;
        x = y;
    }
    throw Error("teichmuller iteration failed to stabilize");
}

Integer mult_order(const Integer& a, const Integer& n) {
    if (n < 1) throw InputError("modulus must be positive");
    if (n == 1) return 1;
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t());
    if (g != 1) throw NotCoprime("arguments not coprime");
    Integer x;
    mpz_mod(x.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t());
    Integer acc = x;
    Integer e = 1;
    while (acc != 1) {
        acc = (acc * x) % n;
        ++e;
    }
    return e;
}

} // namespace edslab
