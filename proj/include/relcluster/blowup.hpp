#pragma once

#include "relcluster/geom.hpp"

namespace relcluster {

struct BlowupChart {
    int index = 0;          // which E_i was set to 1
    RingPtr ring;           // total ring without that variable
    Ideal ideal;            // chart ideal, saturated by the exceptional
    Polynomial exceptional; // the centre generator f_index, in the chart ring
    std::string label;
};

// Blow-up of X at a centre ideal, presented by its Rees ideal: eliminate t
// from I_X + (E_j - t f_j), saturate by (f_0,...,f_k). For a single-generator
// centre the blow-up is the f-saturation of X itself and no E variable is
// introduced.
struct BlowupResult {
    Subscheme source;
    Ideal centre; // as given, in the source ambient ring
    // Generator list actually presented to Proj, parallel to e_names and
    // charts. Differs from centre.generators() only when block degrees had
    // to be equalized by irrelevant monomial padding.
    std::vector<Polynomial> proj_generators;
    std::vector<std::string> e_names; // empty for principal centres
    AmbientSpace total_ambient;
    Subscheme total;                  // V(rees ideal)
    std::vector<BlowupChart> charts;

    const Ideal& rees_ideal() const { return total.ideal(); }
};

BlowupResult rees_blowup(const Subscheme& X, const Ideal& centre,
                         std::vector<std::string> e_names = {}, const GBOptions& opts = {});

// Pullback of Z per chart, and its exceptional-saturated strict transform.
std::vector<Ideal> total_transform(const BlowupResult& b, const Subscheme& Z,
                                   const GBOptions& opts = {});
std::vector<Ideal> strict_transform(const BlowupResult& b, const Subscheme& Z,
                                    const GBOptions& opts = {});

enum class Commutation { commutes, fails, inconclusive };

struct CommutationReport {
    Commutation verdict = Commutation::inconclusive;
    std::string detail;
    std::vector<mpz_class> hilbert_proxy_given;   // affine HF of the specialized centre
    std::vector<mpz_class> hilbert_proxy_generic; // same at reference specializations
};

// Specialize-then-blow-up versus blow-up-then-specialize, compared as reduced
// Groebner bases per chart. Flatness of the centre over the parameters is not
// decided; a low-degree Hilbert-function proxy gates the verdict and failures
// come back inconclusive rather than false.
CommutationReport base_change_commutation_check(const Subscheme& X, const Ideal& centre,
                                                const std::vector<std::string>& params,
                                                const std::vector<mpq_class>& values,
                                                const GBOptions& opts = {});

// Composition of the centre generators with a section substitution, reduced
// by their gcd: the homogeneous coordinates of the lifted section along the
// exceptional block.
std::vector<Polynomial> lift_ratios(const BlowupResult& b,
                                    const std::map<std::string, Polynomial>& section_images,
                                    const RingPtr& base_ring, const GBOptions& opts = {});

} // namespace relcluster
