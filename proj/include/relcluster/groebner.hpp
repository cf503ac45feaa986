#pragma once

#include "relcluster/poly.hpp"

#include <mutex>

namespace relcluster {

struct GBOptions {
    long max_degree = 60;     // cap on S-pair lcm total degree
    long max_pairs = 200000;  // cap on processed critical pairs
};

struct ResourceLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

bool same_order(const MonomialOrder& a, const MonomialOrder& b);

// Finitely generated ideal with a cached reduced Groebner basis for the most
// recently used order. Value semantics; copies share the cache slot.
class Ideal {
public:
    Ideal() = default;
    Ideal(RingPtr ring, std::vector<Polynomial> gens);
    static Ideal zero(const RingPtr& ring) { return Ideal(ring, {}); }
    static Ideal unit(const RingPtr& ring);

    const RingPtr& ring() const { return ring_; }
    const std::vector<Polynomial>& generators() const { return gens_; }
    bool has_generators() const { return !gens_.empty(); }

    // The unique reduced basis: monic, interreduced, sorted by increasing
    // leading monomial. Cached per order.
    const std::vector<Polynomial> groebner(const MonomialOrder& ord = MonomialOrder::grevlex(),
                                           const GBOptions& opts = {}) const;

    bool contains(const Polynomial& f, const GBOptions& opts = {}) const;
    bool is_unit(const GBOptions& opts = {}) const;
    bool is_zero_ideal() const { return gens_.empty(); }
    bool equals(const Ideal& other, const GBOptions& opts = {}) const;

    std::string to_string() const;

private:
    RingPtr ring_;
    std::vector<Polynomial> gens_;
    struct CacheSlot;
    std::shared_ptr<CacheSlot> cache_;
};

// Reduced Groebner basis of the span of `gens`.
std::vector<Polynomial> buchberger(const RingPtr& ring, const std::vector<Polynomial>& gens,
                                   const MonomialOrder& ord, const GBOptions& opts = {});

// Unique remainder of f modulo a reduced basis (full tail reduction).
Polynomial normal_form(const Polynomial& f, const std::vector<Polynomial>& basis,
                       const MonomialOrder& ord);
Polynomial normal_form(const Polynomial& f, const Ideal& I,
                       const MonomialOrder& ord = MonomialOrder::grevlex(),
                       const GBOptions& opts = {});
bool ideal_membership(const Polynomial& f, const Ideal& I, const GBOptions& opts = {});

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, const MonomialOrder& ord);

Ideal ideal_sum(const Ideal& I, const Ideal& J);
Ideal ideal_product(const Ideal& I, const Ideal& J);
// Intersection via an auxiliary variable t: eliminate t from t*I + (1-t)*J.
Ideal ideal_intersection(const Ideal& I, const Ideal& J, const GBOptions& opts = {});

// (I : J) = { f : f*J subseteq I }. J must have a nonzero generator.
Ideal ideal_quotient(const Ideal& I, const Ideal& J, const GBOptions& opts = {});
// (I : J^infty) by iterated quotient; second component is the first
// exponent s with (I : J^s) stable.
std::pair<Ideal, int> saturation(const Ideal& I, const Ideal& J, const GBOptions& opts = {});
// Same stable ideal without the exponent, by localization: (I : g^infty) is
// one elimination of z from I + (1 - z g), and (I : J^infty) intersects the
// per-generator saturations.
Ideal saturation_fast(const Ideal& I, const Polynomial& g, const GBOptions& opts = {});
Ideal saturation_fast(const Ideal& I, const Ideal& J, const GBOptions& opts = {});

// I intersect K[vars minus `vars`], returned inside that subring.
Ideal eliminate(const Ideal& I, const std::vector<std::string>& vars, const GBOptions& opts = {});
// Same computation, but generators kept in the original ring.
std::vector<Polynomial> eliminate_in_ring(const Ideal& I, const std::vector<std::string>& vars,
                                          const GBOptions& opts = {});

// f in radical(I), by the Rabinowitsch trick.
bool radical_membership(const Polynomial& f, const Ideal& I, const GBOptions& opts = {});

// Affine Krull dimension of R/I (nvars for the zero ideal, -1 for the unit
// ideal), from the independent-set combinatorics of the initial ideal.
int krull_dimension(const Ideal& I, const GBOptions& opts = {});

// Number of standard monomials of a zero-dimensional quotient.
mpz_class vector_space_degree(const Ideal& I, const GBOptions& opts = {});

// dim_K of { degree <= d part of R/I }, exact (used as a flatness proxy).
mpz_class affine_hilbert_function(const Ideal& I, long d, const GBOptions& opts = {});

struct HilbertData {
    std::vector<mpz_class> series_numerator;   // numerator over (1-t)^nvars
    std::vector<mpq_class> hilbert_polynomial; // coefficient i of n^i
    int dimension = -1;                        // degree of HP; -1 for empty
    mpz_class degree = 0;                      // leading coeff * dimension!
    long regularity = 0;                       // HF(d) = HP(d) for d >= regularity
};

// Standard-graded Hilbert data of R/I; requires total-degree-homogeneous
// generators.
HilbertData hilbert(const Ideal& I, const GBOptions& opts = {});

// Evaluate the Hilbert function at degree d directly from the initial ideal
// (number of degree-d standard monomials).
mpz_class hilbert_function(const Ideal& I, long d, const GBOptions& opts = {});

mpq_class eval_poly_at(const std::vector<mpq_class>& coeffs, const mpq_class& x);

} // namespace relcluster
