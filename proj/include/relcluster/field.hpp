#pragma once

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace relcluster {

// Exact coefficient domains: Q by default, F_p as a labelled heuristic mode.
// All coefficient arithmetic in the library is routed through this class so
// that a polynomial ring can switch fields without changing representations:
// elements are mpq_class values, with denominator 1 and numerator in [0, p)
// in the prime-field case.
class CoefficientField {
public:
    enum class Kind { rationals, prime_field };

    static CoefficientField rationals() { return CoefficientField(Kind::rationals, 0); }
    static CoefficientField prime(long p);

    Kind kind() const { return kind_; }
    long characteristic() const { return p_; }
    bool is_rationals() const { return kind_ == Kind::rationals; }

    bool operator==(const CoefficientField& o) const { return kind_ == o.kind_ && p_ == o.p_; }
    bool operator!=(const CoefficientField& o) const { return !(*this == o); }

    // Canonical representative of a value in this field.
    mpq_class reduce(const mpq_class& a) const;

    mpq_class add(const mpq_class& a, const mpq_class& b) const { return reduce(a + b); }
    mpq_class sub(const mpq_class& a, const mpq_class& b) const { return reduce(a - b); }
    mpq_class mul(const mpq_class& a, const mpq_class& b) const { return reduce(a * b); }
    mpq_class neg(const mpq_class& a) const { return reduce(-a); }
    mpq_class inv(const mpq_class& a) const;
    mpq_class div(const mpq_class& a, const mpq_class& b) const { return mul(a, inv(b)); }

    std::string to_string() const;

private:
    CoefficientField(Kind k, long p) : kind_(k), p_(p) {}
    Kind kind_;
    long p_;
};

bool is_prime_long(long n);

} // namespace relcluster
