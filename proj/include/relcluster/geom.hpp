#pragma once

#include "relcluster/groebner.hpp"

namespace relcluster {

// Product of projective and affine factors, carried by a graded ring whose
// blocks are the factors. Projective blocks need >= 2 variables.
class AmbientSpace {
public:
    AmbientSpace() = default;
    explicit AmbientSpace(RingPtr ring);

    const RingPtr& ring() const { return ring_; }
    const std::vector<GradingBlock>& factors() const { return ring_->blocks(); }
    std::vector<int> projective_blocks() const;
    bool is_affine() const { return projective_blocks().empty(); }
    Ideal irrelevant_ideal(int block) const;
    bool same_space(const AmbientSpace& o) const { return ring_->same_ring(*o.ring()); }

    std::string to_string() const;

private:
    RingPtr ring_;
};

// Closed subscheme of an ambient: a per-projective-block homogeneous ideal.
class Subscheme {
public:
    Subscheme() = default;
    Subscheme(AmbientSpace ambient, Ideal ideal, bool saturated = false);

    const AmbientSpace& ambient() const { return ambient_; }
    const Ideal& ideal() const { return ideal_; }
    bool saturated_flag() const { return saturated_; }

private:
    AmbientSpace ambient_;
    Ideal ideal_;
    bool saturated_ = false;
};

// Saturate by each projective factor's irrelevant ideal in sequence until
// stable (products of projective spaces need the round-robin).
Subscheme saturate(const Subscheme& Z, const GBOptions& opts = {});

// One affine chart: a chosen coordinate of every projective factor set to 1.
struct Chart {
    std::vector<int> unit_vars; // one ring-variable index per projective block
    RingPtr ring;               // parent ring without the unit variables
    Ideal ideal;                // restricted ideal
    std::string label;          // e.g. "u=1"
};

std::vector<Chart> atlas(const Subscheme& Z);
// Restrict any ideal of the ambient ring to a chart of that atlas.
Ideal restrict_to_chart(const Ideal& I, const Chart& chart);

bool subscheme_is_empty(const Subscheme& Z, const GBOptions& opts = {});
bool subscheme_equals(const Subscheme& A, const Subscheme& B, const GBOptions& opts = {});
// Z subseteq X, i.e. I_X subseteq sat(I_Z).
bool subscheme_contains(const Subscheme& X, const Subscheme& Z, const GBOptions& opts = {});

// Closure of the image of `source` under the rational map whose components,
// per target factor, are the given polynomials in the source ring.
Subscheme scheme_image(const std::vector<std::vector<Polynomial>>& map_blocks,
                       const Subscheme& source, const AmbientSpace& target,
                       const GBOptions& opts = {});

// Jacobian-criterion singular locus. Affine complete intersections and
// hypersurfaces in any ambient are supported; anything else is refused.
Subscheme singular_locus(const Subscheme& X, const GBOptions& opts = {});

enum class CartierVerdict { cartier, not_cartier, unsupported };

struct CartierChartWitness {
    std::string chart;
    std::string generator; // gcd of the restricted ideal
    bool principal = false;
};

struct CartierResult {
    CartierVerdict verdict = CartierVerdict::unsupported;
    std::string reason;
    std::vector<CartierChartWitness> charts;
};

// Effective-Cartier test for Z inside X, where X must restrict to the whole
// ambient (UFD chart rings). The empty subscheme passes as the zero divisor;
// Z = X fails. Unsupported configurations are reported, never guessed.
CartierResult is_effective_cartier_divisor(const Subscheme& Z, const Subscheme& X,
                                           const GBOptions& opts = {});

int subscheme_dimension(const Subscheme& Z, const GBOptions& opts = {});
// Degree of a zero- or one-dimensional subscheme of a single projective
// factor; forces saturation first.
mpz_class subscheme_degree(const Subscheme& Z, const GBOptions& opts = {});

std::string verdict_name(CartierVerdict v);

} // namespace relcluster
