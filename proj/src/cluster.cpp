#include "relcluster/cluster.hpp"

#include <algorithm>
#include <sstream>

namespace relcluster {

Family::Family(Subscheme total, AmbientSpace base, std::vector<std::vector<Polynomial>> projection,
               FamilyAssumptions assumptions, const GBOptions& opts)
    : total_(std::move(total)), base_(std::move(base)), projection_(std::move(projection)),
      assumptions_(assumptions)
{
    const RingPtr& tring = total_.ambient().ring();
    const auto& bblocks = base_.ring()->blocks();
    if (projection_.size() != bblocks.size())
        throw DomainError("family: one projection component list per base factor required");
    for (std::size_t b = 0; b < bblocks.size(); ++b) {
        if (projection_[b].size() != bblocks[b].vars.size())
            throw DomainError("family: projection component count mismatch on base factor " +
                              bblocks[b].name);
        for (const auto& p : projection_[b])
            if (!p.is_zero() && !p.ring()->same_ring(*tring))
                throw RingError("family: projection component in wrong ring");
        // The projection must be defined on all of the total space: on each
        // projective base factor the components may not vanish simultaneously
        // anywhere on it.
        if (!bblocks[b].projective)
            continue;
        std::vector<Polynomial> locus = total_.ideal().generators();
        for (const auto& p : projection_[b])
            locus.push_back(p);
        if (!subscheme_is_empty(Subscheme(total_.ambient(), Ideal(tring, locus)), opts))
            throw DomainError("family: projection has a base locus on the total space "
                              "(factor " + bblocks[b].name + ")");
    }
}

std::map<std::string, Polynomial> section_substitution(const Family& fam, const Section& s)
{
    const RingPtr& tring = fam.total().ambient().ring();
    const auto& tblocks = tring->blocks();
    if (s.coords().size() != tblocks.size())
        throw DomainError("section '" + s.name() + "': one coordinate list per total factor "
                          "required");
    std::map<std::string, Polynomial> images;
    for (std::size_t b = 0; b < tblocks.size(); ++b) {
        if (s.coords()[b].size() != tblocks[b].vars.size())
            throw DomainError("section '" + s.name() + "': coordinate count mismatch on factor " +
                              tblocks[b].name);
        for (std::size_t i = 0; i < tblocks[b].vars.size(); ++i)
            images.emplace(tring->var_name(tblocks[b].vars[i]), s.coords()[b][i]);
    }
    return images;
}

void verify_section(const Family& fam, const Section& s, const GBOptions& opts)
{
    const RingPtr& bring = fam.base().ring();
    auto images = section_substitution(fam, s);
    for (const auto& [name, img] : images) {
        (void)name;
        if (!img.is_zero() && !img.ring()->same_ring(*bring))
            throw RingError("section '" + s.name() + "': coordinates must live in the base ring");
    }
    // s lands inside the total space
    for (const auto& g : fam.total().ideal().generators())
        if (!substitute(g, images, bring).is_zero())
            throw DomainError("section '" + s.name() + "' does not satisfy the total-space "
                              "equation " + g.to_string());
    // projective coordinate tuples must be base-point-free, so that the
    // section is a morphism presentation on all of the base
    const auto& tblocks = fam.total().ambient().ring()->blocks();
    for (std::size_t b = 0; b < tblocks.size(); ++b) {
        if (!tblocks[b].projective)
            continue;
        Subscheme locus(fam.base(), Ideal(bring, s.coords()[b]));
        if (!subscheme_is_empty(locus, opts))
            throw DomainError("section '" + s.name() + "': coordinates of factor " +
                              tblocks[b].name + " have a common zero on the base");
    }
    // pi composed with s is the identity on the base
    const auto& bblocks = bring->blocks();
    for (std::size_t b = 0; b < bblocks.size(); ++b) {
        std::vector<Polynomial> comp;
        for (const auto& p : fam.projection()[b])
            comp.push_back(substitute(p, images, bring));
        if (bblocks[b].projective) {
            bool some_nonzero = false;
            for (const auto& c : comp)
                some_nonzero = some_nonzero || !c.is_zero();
            if (!some_nonzero)
                throw DomainError("section '" + s.name() + "': projection composes to zero on "
                                  "factor " + bblocks[b].name);
            for (std::size_t i = 0; i < comp.size(); ++i)
                for (std::size_t j = i + 1; j < comp.size(); ++j) {
                    Polynomial xi = Polynomial::variable(bring, bblocks[b].vars[i]);
                    Polynomial xj = Polynomial::variable(bring, bblocks[b].vars[j]);
                    if (!(comp[i] * xj - comp[j] * xi).is_zero())
                        throw DomainError("section '" + s.name() + "': pi o s is not the "
                                          "identity on factor " + bblocks[b].name);
                }
        } else {
            for (std::size_t i = 0; i < comp.size(); ++i) {
                Polynomial xi = Polynomial::variable(bring, bblocks[b].vars[i]);
                if (comp[i] != xi)
                    throw DomainError("section '" + s.name() + "': pi o s is not the identity "
                                      "on affine factor " + bblocks[b].name);
            }
        }
    }
}

Subscheme section_image(const Family& fam, const Section& s, const GBOptions& opts)
{
    Subscheme base_scheme(fam.base(), Ideal::zero(fam.base().ring()));
    return scheme_image(s.coords(), base_scheme, fam.total().ambient(), opts);
}

Subscheme intersection_scheme(const Family& fam, const Section& s, const Section& t,
                              const GBOptions& opts)
{
    const RingPtr& bring = fam.base().ring();
    auto sc = s.coords();
    auto tc = t.coords();
    const auto& tblocks = fam.total().ambient().ring()->blocks();
    if (sc.size() != tblocks.size() || tc.size() != tblocks.size())
        throw DomainError("intersection_scheme: sections of different stages");
    std::vector<Polynomial> gens;
    for (std::size_t b = 0; b < tblocks.size(); ++b) {
        if (tblocks[b].projective) {
            for (std::size_t i = 0; i < sc[b].size(); ++i)
                for (std::size_t j = i + 1; j < sc[b].size(); ++j)
                    gens.push_back(sc[b][i] * tc[b][j] - sc[b][j] * tc[b][i]);
        } else {
            for (std::size_t i = 0; i < sc[b].size(); ++i)
                gens.push_back(sc[b][i] - tc[b][i]);
        }
    }
    return saturate(Subscheme(fam.base(), Ideal(bring, std::move(gens))), opts);
}

std::string verdict_name(PairVerdict v)
{
    switch (v) {
    case PairVerdict::admissible:
        return "admissible";
    case PairVerdict::not_admissible:
        return "not_admissible";
    case PairVerdict::diagonal:
        return "diagonal";
    case PairVerdict::unsupported:
        return "unsupported";
    }
    return "?";
}

PairAnalysis analyze_pair(const Family& fam, const Section& s, const Section& t,
                          const GBOptions& opts)
{
    PairAnalysis pa;
    pa.first = s.name();
    pa.second = t.name();
    pa.intersection = intersection_scheme(fam, s, t, opts);

    if (!pa.intersection.ideal().has_generators()) {
        pa.dimension = subscheme_dimension(pa.intersection, opts);
        pa.verdict = PairVerdict::diagonal;
        pa.certificate = "the sections agree fibrewise; the pair sits on the diagonal stratum";
        return pa;
    }
    pa.dimension = subscheme_dimension(pa.intersection, opts);

    const auto& bblocks = fam.base().ring()->blocks();
    const bool single_factor = bblocks.size() == 1;
    const bool projective_base = single_factor && bblocks[0].projective;
    const bool affine_base = single_factor && !bblocks[0].projective;

    if (pa.dimension == 0) {
        if (projective_base)
            pa.degree = subscheme_degree(pa.intersection, opts);
        else if (affine_base)
            pa.degree = vector_space_degree(saturate(pa.intersection, opts).ideal(), opts);
    }

    if (!single_factor) {
        pa.verdict = PairVerdict::unsupported;
        pa.certificate = "admissibility test not implemented for multi-factor bases";
        return pa;
    }
    if (projective_base && bblocks[0].vars.size() == 2) {
        // Base P^1: proper closed subschemes of a smooth curve are Cartier.
        pa.verdict = PairVerdict::admissible;
        pa.certificate = pa.dimension < 0
                             ? "empty intersection: the zero divisor is Cartier"
                             : "zero-dimensional subscheme of a smooth curve";
        return pa;
    }
    // General UFD chart test inside s(B) identified with the base.
    Subscheme full(fam.base(), Ideal::zero(fam.base().ring()));
    CartierResult cr = is_effective_cartier_divisor(pa.intersection, full, opts);
    pa.cartier = cr;
    switch (cr.verdict) {
    case CartierVerdict::cartier:
        pa.verdict = PairVerdict::admissible;
        break;
    case CartierVerdict::not_cartier:
        pa.verdict = PairVerdict::not_admissible;
        break;
    case CartierVerdict::unsupported:
        pa.verdict = PairVerdict::unsupported;
        break;
    }
    pa.certificate = cr.reason;
    return pa;
}

namespace {

// Generators of the image ideal modulo the total space, for use as a
// blow-up centre.
Ideal centre_from_image(const Subscheme& image, const Subscheme& total, const GBOptions& opts)
{
    const RingPtr& ring = image.ambient().ring();
    std::vector<Polynomial> gens;
    for (const auto& g : image.ideal().groebner(MonomialOrder::grevlex(), opts)) {
        Polynomial r = normal_form(g, total.ideal(), MonomialOrder::grevlex(), opts);
        if (!r.is_zero())
            gens.push_back(r);
    }
    // Drop generators implied by the remaining ones modulo the total space;
    // fewer centre generators keep the exceptional block small.
    for (std::size_t i = 0; i < gens.size() && gens.size() > 1;) {
        std::vector<Polynomial> others = total.ideal().generators();
        for (std::size_t j = 0; j < gens.size(); ++j)
            if (j != i)
                others.push_back(gens[j]);
        if (ideal_membership(gens[i], Ideal(ring, others), opts))
            gens.erase(gens.begin() + static_cast<long>(i));
        else
            ++i;
    }
    return Ideal(ring, std::move(gens));
}

Family blownup_family(const Family& fam, const BlowupResult& b, const GBOptions& opts)
{
    const RingPtr& tot = b.total_ambient.ring();
    std::vector<std::vector<Polynomial>> projection;
    for (const auto& block : fam.projection()) {
        std::vector<Polynomial> comps;
        for (const auto& p : block)
            comps.push_back(inject(p, tot));
        projection.push_back(std::move(comps));
    }
    return Family(b.total, fam.base(), std::move(projection), fam.assumptions(), opts);
}

} // namespace

Section lift_section(const Family& fam, const BlowupResult& b, const Family& next,
                     const Section& sigma, const GBOptions& opts)
{
    verify_section(fam, sigma, opts);
    const RingPtr& bring = fam.base().ring();
    auto images = section_substitution(fam, sigma);
    std::vector<Polynomial> ratios = lift_ratios(b, images, bring, opts);

    // Certified graph: after removing the gcd, the ratio tuple may not have
    // a common zero on the base.
    Subscheme base_locus(fam.base(), Ideal(bring, ratios));
    if (!subscheme_is_empty(base_locus, opts))
        throw DomainError("lift_section: the reduced ratio tuple of '" + sigma.name() +
                          "' still has a base locus; the strict transform is not the graph of "
                          "a section");

    std::vector<std::vector<Polynomial>> coords = sigma.coords();
    if (!b.e_names.empty())
        coords.push_back(ratios);
    Section lifted(sigma.name() + "~", std::move(coords));
    verify_section(next, lifted, opts); // also certifies the Rees equations

    // The lifted graph agrees with the strict transform of sigma(B) on every
    // chart, at the level of radicals.
    if (!b.e_names.empty()) {
        Subscheme img = section_image(fam, sigma, opts);
        auto strict = strict_transform(b, img, opts);
        Subscheme lifted_img = section_image(next, lifted, opts);
        for (std::size_t i = 0; i < strict.size(); ++i) {
            Ideal graph_chart = [&] {
                std::vector<Polynomial> gens;
                for (const auto& g : lifted_img.ideal().generators())
                    gens.push_back(inject(dehomogenize(g, b.e_names[i]), b.charts[i].ring));
                return Ideal(b.charts[i].ring, std::move(gens));
            }();
            for (const auto& g : strict[i].generators())
                if (!radical_membership(g, graph_chart, opts))
                    throw DomainError("lift_section: strict transform of '" + sigma.name() +
                                      "' has a component away from the lifted graph on chart " +
                                      b.charts[i].label);
            for (const auto& g : graph_chart.generators())
                if (!radical_membership(g, strict[i], opts))
                    throw DomainError("lift_section: lifted graph of '" + sigma.name() +
                                      "' leaves the strict transform on chart " +
                                      b.charts[i].label);
        }
    }
    return lifted;
}

ClusterSpec build_cluster(const Family& fam, const std::vector<ClusterStepSpec>& specs,
                          const GBOptions& opts)
{
    ClusterSpec spec;
    spec.family = fam;
    Family current = fam;
    for (std::size_t n = 0; n < specs.size(); ++n) {
        ClusterStep step;
        if (specs[n].lift) {
            if (n == 0)
                throw DomainError("build_cluster: step 0 cannot be a lift");
            const ClusterStep& prev = spec.steps.back();
            Family prev_family = n >= 2 ? spec.steps[n - 2].next_family : fam;
            step.section =
                lift_section(prev_family, prev.blowup, current, specs[n].section, opts);
        } else {
            step.section = specs[n].section;
            verify_section(current, step.section, opts);
        }
        // infinitely near iff the image sits inside the previous exceptional
        if (n > 0) {
            const auto& prev_centre = spec.steps.back().centre;
            auto images = section_substitution(current, step.section);
            bool inside = true;
            for (const auto& f : prev_centre.generators())
                if (!substitute(inject(f, current.total().ambient().ring()), images,
                                fam.base().ring())
                         .is_zero())
                    inside = false;
            step.infinitely_near = inside;
        }
        Subscheme img = section_image(current, step.section, opts);
        step.centre = centre_from_image(img, current.total(), opts);
        if (!step.centre.has_generators())
            throw DomainError("build_cluster: section image has no equations modulo the total "
                              "space");
        step.blowup = rees_blowup(current.total(), step.centre, {}, opts);
        step.next_family = blownup_family(current, step.blowup, opts);
        current = step.next_family;
        spec.steps.push_back(std::move(step));
    }
    return spec;
}

bool StratumKey::operator<(const StratumKey& o) const
{
    if (diagonal != o.diagonal)
        return diagonal; // diagonal stratum first
    if (dimension != o.dimension)
        return dimension < o.dimension;
    mpz_class a = degree ? *degree : -1, b = o.degree ? *o.degree : -1;
    if (a != b)
        return a < b;
    return static_cast<int>(verdict) < static_cast<int>(o.verdict);
}

bool StratumKey::operator==(const StratumKey& o) const
{
    mpz_class a = degree ? *degree : -1, b = o.degree ? *o.degree : -1;
    return diagonal == o.diagonal && dimension == o.dimension && a == b && verdict == o.verdict;
}

std::string StratumKey::to_string() const
{
    if (diagonal)
        return "diagonal (type II)";
    std::ostringstream os;
    if (dimension < 0)
        os << "empty";
    else {
        os << "dim " << dimension;
        if (degree)
            os << " deg " << degree->get_str();
    }
    os << ", " << verdict_name(verdict);
    return os.str();
}

StratumReport stratify_pairs(const Family& fam, const std::vector<PairInput>& pairs,
                             const GBOptions& opts)
{
    StratumReport rep;
    rep.assumptions = fam.assumptions();
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        std::string label =
            pairs[i].label.empty()
                ? "(" + pairs[i].first.name() + "," + pairs[i].second.name() + ")"
                : pairs[i].label;
        try {
            PairAnalysis pa = analyze_pair(fam, pairs[i].first, pairs[i].second, opts);
            StratumKey key;
            key.diagonal = pa.verdict == PairVerdict::diagonal;
            key.dimension = pa.dimension;
            key.degree = pa.degree;
            key.verdict = pa.verdict;
            auto it = std::find_if(rep.groups.begin(), rep.groups.end(),
                                   [&](const StratumGroup& g) { return g.key == key; });
            if (it == rep.groups.end()) {
                StratumGroup g;
                g.key = key;
                g.representative = pa;
                g.members.push_back(label);
                rep.groups.push_back(std::move(g));
            } else {
                it->members.push_back(label);
            }
        } catch (const std::exception& e) {
            rep.errors.emplace_back(label, e.what());
        }
    }
    std::stable_sort(rep.groups.begin(), rep.groups.end(),
                     [](const StratumGroup& a, const StratumGroup& b) { return a.key < b.key; });
    return rep;
}

Section evaluate_param_section(const Family& fam, const ParamPairFamily& fam_pairs,
                               const Section& tpl, const std::vector<mpq_class>& point,
                               const std::string& name)
{
    if (point.size() != fam_pairs.params.size())
        throw DomainError("parameter point arity mismatch");
    const RingPtr& bring = fam.base().ring();
    std::vector<std::vector<Polynomial>> coords;
    for (const auto& block : tpl.coords()) {
        std::vector<Polynomial> comps;
        for (const auto& c : block) {
            Polynomial h = c;
            for (std::size_t i = 0; i < point.size(); ++i)
                h = dehomogenize(h, fam_pairs.params[i], point[i]);
            comps.push_back(inject(h, bring));
        }
        coords.push_back(std::move(comps));
    }
    return Section(name, std::move(coords));
}

StratumReport stratify_param_pairs(const Family& fam, const ParamPairFamily& pairs,
                                   const std::vector<std::vector<mpq_class>>& points,
                                   const GBOptions& opts)
{
    std::vector<PairInput> list;
    for (std::size_t i = 0; i < points.size(); ++i) {
        std::ostringstream label;
        label << "point[";
        for (std::size_t j = 0; j < points[i].size(); ++j)
            label << (j ? "," : "") << points[i][j];
        label << "]";
        PairInput in;
        in.first = evaluate_param_section(fam, pairs, pairs.sigma, points[i],
                                          pairs.sigma.name() + "@" + std::to_string(i));
        in.second = evaluate_param_section(fam, pairs, pairs.tau, points[i],
                                           pairs.tau.name() + "@" + std::to_string(i));
        in.label = label.str();
        list.push_back(std::move(in));
    }
    return stratify_pairs(fam, list, opts);
}

long hirzebruch_intersection(long e, HirzebruchClass d1, HirzebruchClass d2)
{
    if (e < 0)
        throw DomainError("hirzebruch_intersection: e must be >= 0");
    return -e * d1.n * d2.n + d1.n * d2.m + d2.n * d1.m;
}

bool hirzebruch_is_section_class(long e, HirzebruchClass d)
{
    if (e < 0)
        throw DomainError("hirzebruch_is_section_class: e must be >= 0");
    return d.n == 1 && (d.m == 0 || d.m >= e);
}

} // namespace relcluster
