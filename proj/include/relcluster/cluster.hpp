#pragma once

#include "relcluster/blowup.hpp"

#include <optional>

namespace relcluster {

// Hypotheses of the family definition; trusted inputs, echoed into reports.
struct FamilyAssumptions {
    bool flat = true;
    bool separated = true;
    bool surjective = true;
    bool generic_fibre_integral = true;
};

// A fibration pi: total -> base given by per-base-factor polynomial
// components in the total ring, defined everywhere on the total space.
class Family {
public:
    Family() = default;
    Family(Subscheme total, AmbientSpace base, std::vector<std::vector<Polynomial>> projection,
           FamilyAssumptions assumptions = {}, const GBOptions& opts = {});

    const Subscheme& total() const { return total_; }
    const AmbientSpace& base() const { return base_; }
    const std::vector<std::vector<Polynomial>>& projection() const { return projection_; }
    const FamilyAssumptions& assumptions() const { return assumptions_; }

private:
    Subscheme total_;
    AmbientSpace base_;
    std::vector<std::vector<Polynomial>> projection_;
    FamilyAssumptions assumptions_;
};

// A section of a family: per total-ambient factor, coordinates that are
// polynomials in the base variables.
class Section {
public:
    Section() = default;
    Section(std::string name, std::vector<std::vector<Polynomial>> coords)
        : name_(std::move(name)), coords_(std::move(coords))
    {
    }

    const std::string& name() const { return name_; }
    const std::vector<std::vector<Polynomial>>& coords() const { return coords_; }

private:
    std::string name_;
    std::vector<std::vector<Polynomial>> coords_;
};

// Substitution total-ambient variable -> section coordinate.
std::map<std::string, Polynomial> section_substitution(const Family& fam, const Section& s);

// pi composed with s must be the identity of the base (componentwise on
// affine factors, proportionality of nonzero tuples on projective ones) and
// s must land inside the total space. Throws DomainError with the failing
// identity otherwise.
void verify_section(const Family& fam, const Section& s, const GBOptions& opts = {});

// Closed image s(B) as a subscheme of the total ambient.
Subscheme section_image(const Family& fam, const Section& s, const GBOptions& opts = {});

// Fibrewise equality locus of two sections, as a subscheme of the base:
// 2x2 minors per projective factor, differences per affine factor,
// saturated in the base.
Subscheme intersection_scheme(const Family& fam, const Section& s, const Section& t,
                              const GBOptions& opts = {});

enum class PairVerdict { admissible, not_admissible, diagonal, unsupported };
std::string verdict_name(PairVerdict v);

struct PairAnalysis {
    std::string first, second;
    Subscheme intersection;          // subscheme of the base
    int dimension = -2;              // -1 for the empty intersection
    std::optional<mpz_class> degree; // when zero-dimensional
    PairVerdict verdict = PairVerdict::unsupported;
    std::string certificate;
    std::optional<CartierResult> cartier; // filled when the divisor test ran
};

// Ordered pair analysis: the intersection scheme is viewed inside the first
// section's image, which is identified with the base.
PairAnalysis analyze_pair(const Family& fam, const Section& s, const Section& t,
                          const GBOptions& opts = {});

// One stage of an ordered relative cluster.
struct ClusterStep {
    Section section;             // section of this stage's family
    bool infinitely_near = false;
    Ideal centre;                // image ideal generators modulo the total space
    BlowupResult blowup;         // of this stage's total space at the image
    Family next_family;          // the blown-up family
};

struct ClusterSpec {
    Family family; // stage 0
    std::vector<ClusterStep> steps;
};

struct ClusterStepSpec {
    Section section; // stage-n coordinates, or stage-(n-1) coordinates to lift
    bool lift = false;
    static ClusterStepSpec explicit_coords(Section s) { return {std::move(s), false}; }
    static ClusterStepSpec lift_of(Section s) { return {std::move(s), true}; }
};

// Lift a section of the blown-up stage through `b`: composes the centre
// generators with the section, removes their gcd, and certifies that the
// ratio tuple has empty base locus, that the lifted coordinates satisfy the
// Rees equations, and that the lifted graph agrees set-theoretically with
// the strict transform of the section image on every chart.
Section lift_section(const Family& fam, const BlowupResult& b, const Family& next,
                     const Section& sigma, const GBOptions& opts = {});

ClusterSpec build_cluster(const Family& fam, const std::vector<ClusterStepSpec>& specs,
                          const GBOptions& opts = {});

struct PairInput {
    Section first, second;
    std::string label;
};

struct StratumKey {
    bool diagonal = false;
    int dimension = -2;
    std::optional<mpz_class> degree;
    PairVerdict verdict = PairVerdict::unsupported;
    bool operator<(const StratumKey& o) const;
    bool operator==(const StratumKey& o) const;
    std::string to_string() const;
};

struct StratumGroup {
    StratumKey key;
    std::vector<std::string> members;
    PairAnalysis representative;
};

struct StratumReport {
    std::vector<StratumGroup> groups; // diagonal stratum first, then by key
    std::vector<std::pair<std::string, std::string>> errors;
    FamilyAssumptions assumptions;
};

// Pointwise image of the flattening stratification: group pairs by
// (dimension, degree, verdict); the diagonal is its own type II stratum.
StratumReport stratify_pairs(const Family& fam, const std::vector<PairInput>& pairs,
                             const GBOptions& opts = {});

// Sections whose coordinates carry extra parameter variables, evaluated at
// rational parameter points.
struct ParamPairFamily {
    RingPtr coord_ring; // base variables plus parameters
    std::vector<std::string> params;
    Section sigma, tau; // coordinates in coord_ring
};

Section evaluate_param_section(const Family& fam, const ParamPairFamily& fam_pairs,
                               const Section& tpl, const std::vector<mpq_class>& point,
                               const std::string& name);

StratumReport stratify_param_pairs(const Family& fam, const ParamPairFamily& pairs,
                                   const std::vector<std::vector<mpq_class>>& points,
                                   const GBOptions& opts = {});

// Intersection calculus on the Hirzebruch surface F_e: classes n*C + m*F
// with C^2 = -e, F^2 = 0, C.F = 1.
struct HirzebruchClass {
    long n = 0, m = 0;
};
long hirzebruch_intersection(long e, HirzebruchClass d1, HirzebruchClass d2);
bool hirzebruch_is_section_class(long e, HirzebruchClass d);

} // namespace relcluster
