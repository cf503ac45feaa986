#pragma once

#include "relcluster/field.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace relcluster {

class PolyRing;
using RingPtr = std::shared_ptr<const PolyRing>;

struct RingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ExponentOverflow : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One factor of a multigraded ambient: a named set of variables, either the
// homogeneous coordinates of a projective factor or affine coordinates.
struct GradingBlock {
    std::string name;
    std::vector<int> vars; // indices into the ring's variable list
    bool projective = false;
};

// Immutable coordinate ring: named variables over Q or F_p, partitioned into
// grading blocks. All polynomials hold a shared pointer to their ring.
class PolyRing {
public:
    // Variables not mentioned in `blocks` are collected into a trailing
    // affine block named "affine".
    static RingPtr make(std::vector<std::string> vars,
                        CoefficientField field = CoefficientField::rationals(),
                        std::vector<GradingBlock> blocks = {});

    std::size_t nvars() const { return vars_.size(); }
    const std::vector<std::string>& var_names() const { return vars_; }
    const std::string& var_name(int i) const { return vars_.at(i); }
    int var_index(const std::string& name) const; // -1 if absent
    const CoefficientField& field() const { return field_; }
    const std::vector<GradingBlock>& blocks() const { return blocks_; }
    int block_of_var(int var) const { return var_block_.at(var); }

    bool same_ring(const PolyRing& o) const; // structural equality

    std::string to_string() const;

private:
    PolyRing() = default;
    std::vector<std::string> vars_;
    CoefficientField field_ = CoefficientField::rationals();
    std::vector<GradingBlock> blocks_;
    std::map<std::string, int> index_;
    std::vector<int> var_block_;
};

// Derived rings. Variable identity across rings is by name.
RingPtr extend_ring(const RingPtr& ring, const GradingBlock& extra,
                    const std::vector<std::string>& extra_names);
RingPtr subring_without(const RingPtr& ring, const std::vector<std::string>& removed);

// Exponent vector, one entry per ring variable. Exponents are 16-bit with
// overflow detection (desk-scale degrees only).
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::size_t nvars) : e_(nvars, 0) {}
    static Monomial of_var(std::size_t nvars, int var, unsigned power = 1);

    std::size_t size() const { return e_.size(); }
    std::uint16_t operator[](std::size_t i) const { return e_[i]; }
    void set(std::size_t i, unsigned v);

    long total_degree() const;
    long degree_on(const std::vector<int>& vars) const;

    bool is_one() const;
    bool divides(const Monomial& m) const;
    Monomial mul(const Monomial& m) const;
    Monomial div(const Monomial& m) const; // requires divisibility
    Monomial lcm(const Monomial& m) const;
    Monomial gcd(const Monomial& m) const;
    bool coprime(const Monomial& m) const;

    bool operator==(const Monomial& m) const { return e_ == m.e_; }
    bool operator!=(const Monomial& m) const { return e_ != m.e_; }
    bool operator<(const Monomial& m) const { return e_ < m.e_; } // container order only

private:
    std::vector<std::uint16_t> e_;
};

struct Term {
    mpq_class coeff;
    Monomial mono;
};

// Total orders on monomials of a fixed ring. lex and grevlex read the ring's
// variable sequence; block orders compare an ordered partition of the
// variables one block at a time (the standard elimination construction).
class MonomialOrder {
public:
    enum class Kind { lex, grevlex, block };
    struct Block {
        std::vector<int> vars;
        Kind inner = Kind::grevlex;
    };

    static MonomialOrder lex();
    static MonomialOrder grevlex();
    static MonomialOrder block(std::vector<Block> blocks);
    // Elimination order: `first` dominates everything else; grevlex inside.
    static MonomialOrder eliminating(const PolyRing& ring, const std::vector<int>& first);

    Kind kind() const { return kind_; }
    const std::vector<Block>& blocks() const { return blocks_; }

    // +1 if a > b, 0 if equal, -1 if a < b.
    int compare(const Monomial& a, const Monomial& b) const;
    bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

    std::string to_string(const PolyRing& ring) const;

private:
    Kind kind_ = Kind::grevlex;
    std::vector<Block> blocks_;
};

// Immutable multivariate polynomial. Terms are kept nonzero, duplicate-free
// and strictly decreasing under the ring's canonical order (grevlex over the
// full variable sequence); every operation restores that form.
class Polynomial {
public:
    Polynomial() = default;
    static Polynomial zero(const RingPtr& ring);
    static Polynomial constant(const RingPtr& ring, const mpq_class& c);
    static Polynomial variable(const RingPtr& ring, int var);
    static Polynomial variable(const RingPtr& ring, const std::string& name);
    static Polynomial from_terms(const RingPtr& ring, std::vector<Term> terms);

    const RingPtr& ring() const { return ring_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    mpq_class constant_value() const; // requires is_constant()

    Polynomial operator+(const Polynomial& g) const;
    Polynomial operator-(const Polynomial& g) const;
    Polynomial operator-() const;
    Polynomial operator*(const Polynomial& g) const;
    Polynomial scaled(const mpq_class& c) const;
    Polynomial pow(unsigned n) const;
    bool operator==(const Polynomial& g) const;
    bool operator!=(const Polynomial& g) const { return !(*this == g); }

    long total_degree() const; // -1 for zero
    long degree_in(int var) const;
    // Degree in one grading block; nullopt when not block-homogeneous.
    std::optional<long> block_degree(int block) const;
    bool is_homogeneous_in_block(int block) const { return is_zero() || block_degree(block).has_value(); }

    const Term& leading_term(const MonomialOrder& ord) const;
    Polynomial monic(const MonomialOrder& ord) const;

    std::string to_string() const; // canonical printer, grevlex-descending
    std::string to_string(const MonomialOrder& ord) const;

private:
    RingPtr ring_;
    std::vector<Term> terms_;
};

// Ring homomorphism Q[vars] -> target given by a full variable assignment.
// Variables of f absent from `images` raise RingError.
Polynomial substitute(const Polynomial& f,
                      const std::map<std::string, Polynomial>& images,
                      const RingPtr& target);

// Transport by name into a ring containing all of f's variables.
Polynomial inject(const Polynomial& f, const RingPtr& target);

Polynomial partial_derivative(const Polynomial& f, int var);
Polynomial partial_derivative(const Polynomial& f, const std::string& var);

// Block homogenization with respect to an auxiliary variable of that block.
Polynomial homogenize(const Polynomial& f, int block, const std::string& aux);
Polynomial dehomogenize(const Polynomial& f, const std::string& var, const mpq_class& value = 1);

// Exact division; nullopt when g does not divide f.
std::optional<Polynomial> divide_exactly(const Polynomial& f, const Polynomial& g);

// Multivariate gcd over Q by content/primitive-part recursion on the
// smallest variable present. Result is primitive with positive leading
// rational normalized away (monic content 1 convention for units).
Polynomial poly_gcd(const Polynomial& f, const Polynomial& g);

} // namespace relcluster
