#include "relcluster/field.hpp"

namespace relcluster {

bool is_prime_long(long n)
{
    if (n < 2)
        return false;
    if (n % 2 == 0)
        return n == 2;
    for (long d = 3; d <= n / d; d += 2)
        if (n % d == 0)
            return false;
    return true;
}

CoefficientField CoefficientField::prime(long p)
{
    if (p >= (1L << 31))
        throw std::invalid_argument("prime field characteristic must be < 2^31");
    if (!is_prime_long(p))
        throw std::invalid_argument("prime field characteristic must be prime: " + std::to_string(p));
    return CoefficientField(Kind::prime_field, p);
}

mpq_class CoefficientField::reduce(const mpq_class& a) const
{
    if (kind_ == Kind::rationals) {
        mpq_class r = a;
        r.canonicalize();
        return r;
    }
    // In F_p every element has an integer representative in [0, p).
    mpz_class p(p_);
    mpz_class den = a.get_den();
    mpz_class num = a.get_num() % p;
    if (den != 1) {
        mpz_class dinv;
        if (mpz_invert(dinv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t()) == 0)
            throw std::domain_error("denominator not invertible mod p");
        num = (num * dinv) % p;
    }
    if (num < 0)
        num += p;
    return mpq_class(num);
}

mpq_class CoefficientField::inv(const mpq_class& a) const
{
    if (a == 0)
        throw std::domain_error("division by zero coefficient");
    if (kind_ == Kind::rationals)
        return 1 / a;
    mpz_class p(p_);
    mpz_class num = reduce(a).get_num();
    mpz_class r;
    if (mpz_invert(r.get_mpz_t(), num.get_mpz_t(), p.get_mpz_t()) == 0)
        throw std::domain_error("element not invertible mod p");
    return mpq_class(r);
}

std::string CoefficientField::to_string() const
{
    if (kind_ == Kind::rationals)
        return "Q";
    return "F" + std::to_string(p_);
}

} // namespace relcluster
