#include "relcluster/blowup.hpp"
#include "relcluster/rng.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace relcluster {

namespace {

std::string fresh_name(const PolyRing& ring, std::string base)
{
    while (ring.var_index(base) >= 0)
        base += "_";
    return base;
}

Polynomial specialize(const Polynomial& f, const std::map<std::string, mpq_class>& values,
                      const RingPtr& target)
{
    Polynomial h = f;
    for (const auto& [name, val] : values)
        h = dehomogenize(h, name, val);
    return inject(h, target);
}

} // namespace

BlowupResult rees_blowup(const Subscheme& X, const Ideal& centre,
                         std::vector<std::string> e_names, const GBOptions& opts)
{
    const RingPtr& ring = X.ambient().ring();
    if (!centre.ring()->same_ring(*ring))
        throw RingError("rees_blowup: centre ideal lives in a different ring");
    if (!centre.has_generators())
        throw DomainError("rees_blowup: centre has no nonzero generator");
    std::vector<Polynomial> f = centre.generators();
    for (const auto& g : f)
        if (X.ideal().has_generators() &&
            normal_form(g, X.ideal(), MonomialOrder::grevlex(), opts).is_zero())
            throw DomainError("rees_blowup: centre generator " + g.to_string() +
                              " vanishes on the source");
    // Per projective block all presented generators must share one degree so
    // that the Rees ideal stays block-homogeneous. Deficient generators are
    // padded by every block monomial of the missing degree; the padded ideal
    // cuts the same subscheme of the product, hence the same blow-up.
    for (int b : X.ambient().projective_blocks()) {
        long target = 0;
        for (const auto& g : f) {
            auto d = g.block_degree(b);
            if (!d)
                throw DomainError("rees_blowup: centre generator " + g.to_string() +
                                  " is not homogeneous in block '" + ring->blocks()[b].name +
                                  "'");
            target = std::max(target, *d);
        }
        std::vector<Polynomial> padded;
        for (const auto& g : f) {
            long deficit = target - *g.block_degree(b);
            if (deficit == 0) {
                padded.push_back(g);
                continue;
            }
            const auto& bvars = ring->blocks()[b].vars;
            std::vector<Monomial> mons;
            std::vector<unsigned> exps(bvars.size(), 0);
            std::function<void(std::size_t, long)> enumerate = [&](std::size_t i, long rem) {
                if (i + 1 == bvars.size()) {
                    Monomial m(ring->nvars());
                    for (std::size_t k = 0; k + 1 < bvars.size(); ++k)
                        m.set(bvars[k], exps[k]);
                    m.set(bvars.back(), static_cast<unsigned>(rem));
                    mons.push_back(m);
                    return;
                }
                for (long x = 0; x <= rem; ++x) {
                    exps[i] = static_cast<unsigned>(x);
                    enumerate(i + 1, rem - x);
                }
                exps[i] = 0;
            };
            enumerate(0, deficit);
            for (const auto& m : mons)
                padded.push_back(g * Polynomial::from_terms(ring, {Term{1, m}}));
        }
        f = std::move(padded);
    }

    BlowupResult res;
    res.source = X;
    res.centre = centre;
    res.proj_generators = f;

    if (f.size() == 1) {
        // Principal centre: the blow-up is X itself under the saturation
        // convention; no exceptional coordinate is introduced.
        res.total_ambient = X.ambient();
        Ideal sat = X.ideal().has_generators() ? saturation_fast(X.ideal(), centre, opts)
                                               : X.ideal();
        res.total = Subscheme(X.ambient(), sat, X.saturated_flag());
        BlowupChart c;
        c.index = 0;
        c.ring = ring;
        c.ideal = sat;
        c.exceptional = f[0];
        c.label = "principal";
        res.charts.push_back(std::move(c));
        return res;
    }

    if (e_names.empty())
        for (std::size_t j = 0; j < f.size(); ++j)
            e_names.push_back(fresh_name(*ring, "E" + std::to_string(j)));
    if (e_names.size() != f.size())
        throw DomainError("rees_blowup: need one exceptional coordinate name per centre generator");
    res.e_names = e_names;

    // Big ring with the auxiliary t and the exceptional block.
    std::string tname = fresh_name(*ring, "t0");
    std::vector<std::string> names = ring->var_names();
    names.push_back(tname);
    int ebase = static_cast<int>(names.size());
    for (const auto& n : e_names) {
        if (std::find(names.begin(), names.end(), n) != names.end())
            throw RingError("rees_blowup: exceptional name '" + n + "' collides with a variable");
        names.push_back(n);
    }
    std::vector<GradingBlock> blocks = ring->blocks();
    blocks.push_back(GradingBlock{"aux", {ebase - 1}, false});
    GradingBlock eblock{"E", {}, true};
    for (std::size_t j = 0; j < e_names.size(); ++j)
        eblock.vars.push_back(ebase + static_cast<int>(j));
    blocks.push_back(eblock);
    RingPtr big = PolyRing::make(names, ring->field(), blocks);

    std::vector<Polynomial> gens;
    for (const auto& g : X.ideal().generators())
        gens.push_back(inject(g, big));
    Polynomial t = Polynomial::variable(big, tname);
    for (std::size_t j = 0; j < f.size(); ++j)
        gens.push_back(Polynomial::variable(big, e_names[j]) - t * inject(f[j], big));
    auto kept = eliminate_in_ring(Ideal(big, std::move(gens)), {tname}, opts);

    // Total ring: source variables plus the projective exceptional block.
    std::vector<std::string> tot_names = ring->var_names();
    std::vector<GradingBlock> tot_blocks = ring->blocks();
    GradingBlock tot_eblock{"E", {}, true};
    for (std::size_t j = 0; j < e_names.size(); ++j) {
        tot_eblock.vars.push_back(static_cast<int>(tot_names.size()));
        tot_names.push_back(e_names[j]);
    }
    tot_blocks.push_back(tot_eblock);
    RingPtr tot = PolyRing::make(tot_names, ring->field(), tot_blocks);
    res.total_ambient = AmbientSpace(tot);

    std::vector<Polynomial> rees_gens;
    for (const auto& g : kept)
        rees_gens.push_back(inject(g, tot));
    std::vector<Polynomial> centre_tot;
    for (const auto& g : f)
        centre_tot.push_back(inject(g, tot));
    Ideal rees = saturation_fast(Ideal(tot, rees_gens), Ideal(tot, centre_tot), opts);
    res.total = Subscheme(res.total_ambient, rees);

    for (std::size_t i = 0; i < e_names.size(); ++i) {
        BlowupChart c;
        c.index = static_cast<int>(i);
        c.ring = subring_without(tot, {e_names[i]});
        std::vector<Polynomial> cgens;
        for (const auto& g : rees.generators())
            cgens.push_back(inject(dehomogenize(g, e_names[i]), c.ring));
        c.exceptional = inject(f[i], c.ring);
        c.ideal = saturation_fast(Ideal(c.ring, std::move(cgens)), c.exceptional, opts);
        c.label = e_names[i] + "=1";
        res.charts.push_back(std::move(c));
    }
    return res;
}

std::vector<Ideal> total_transform(const BlowupResult& b, const Subscheme& Z,
                                   const GBOptions& opts)
{
    if (!subscheme_contains(b.source, Z, opts))
        throw DomainError("total_transform: Z is not contained in the blown-up scheme");
    std::vector<Ideal> out;
    for (const auto& chart : b.charts) {
        std::vector<Polynomial> gens;
        for (const auto& g : Z.ideal().generators())
            gens.push_back(inject(g, chart.ring));
        for (const auto& g : chart.ideal.generators())
            gens.push_back(g);
        out.push_back(Ideal(chart.ring, std::move(gens)));
    }
    return out;
}

std::vector<Ideal> strict_transform(const BlowupResult& b, const Subscheme& Z,
                                    const GBOptions& opts)
{
    std::vector<Ideal> total = total_transform(b, Z, opts);
    std::vector<Ideal> out;
    for (std::size_t i = 0; i < total.size(); ++i) {
        out.push_back(saturation_fast(total[i], b.charts[i].exceptional, opts));
    }
    return out;
}

CommutationReport base_change_commutation_check(const Subscheme& X, const Ideal& centre,
                                                const std::vector<std::string>& params,
                                                const std::vector<mpq_class>& values,
                                                const GBOptions& opts)
{
    CommutationReport rep;
    const RingPtr& ring = X.ambient().ring();
    if (!X.ambient().is_affine())
        throw DomainError("base_change_commutation_check: affine ambients only");
    if (params.size() != values.size())
        throw DomainError("base_change_commutation_check: one value per parameter required");
    std::map<std::string, mpq_class> given;
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (ring->var_index(params[i]) < 0)
            throw RingError("unknown parameter '" + params[i] + "'");
        given.emplace(params[i], values[i]);
    }
    RingPtr spec_ring = subring_without(ring, params);
    AmbientSpace spec_amb(spec_ring);

    auto specialize_ideal = [&](const Ideal& I, const std::map<std::string, mpq_class>& at) {
        std::vector<Polynomial> gens;
        for (const auto& g : I.generators())
            gens.push_back(specialize(g, at, spec_ring));
        return Ideal(spec_ring, std::move(gens));
    };

    // Flatness proxy: the affine Hilbert function of the specialized centre,
    // in degrees <= 6, must match reference specializations.
    const long proxy_degree = 6;
    Ideal centre_given = specialize_ideal(centre, given);
    if (centre_given.generators().size() != centre.generators().size()) {
        rep.verdict = Commutation::inconclusive;
        rep.detail = "a centre generator vanishes under the specialization";
        return rep;
    }
    for (long d = 0; d <= proxy_degree; ++d)
        rep.hilbert_proxy_given.push_back(affine_hilbert_function(centre_given, d, opts));
    SeededRng rng(0x9d2c5680ULL);
    for (int ref = 0; ref < 3; ++ref) {
        std::map<std::string, mpq_class> at;
        for (const auto& p : params)
            at.emplace(p, rng.rational(7, 3));
        Ideal centre_ref = specialize_ideal(centre, at);
        std::vector<mpz_class> hf;
        if (centre_ref.generators().size() == centre.generators().size())
            for (long d = 0; d <= proxy_degree; ++d)
                hf.push_back(affine_hilbert_function(centre_ref, d, opts));
        if (ref == 0)
            rep.hilbert_proxy_generic = hf;
        if (hf != rep.hilbert_proxy_given) {
            rep.verdict = Commutation::inconclusive;
            rep.detail = "Hilbert-function proxy differs from reference specializations";
            return rep;
        }
    }

    // Route A: specialize, then blow up.
    Subscheme Xspec(spec_amb, specialize_ideal(X.ideal(), given));
    std::vector<std::string> enames;
    for (std::size_t j = 0; j < centre.generators().size(); ++j)
        enames.push_back(fresh_name(*ring, "E" + std::to_string(j)));
    BlowupResult A = rees_blowup(Xspec, centre_given, enames, opts);

    // Route B: blow up, then specialize.
    BlowupResult B = rees_blowup(X, centre, enames, opts);
    const RingPtr& btot = B.total_ambient.ring();
    RingPtr bspec_ring = centre.generators().size() == 1 ? spec_ring
                                                         : subring_without(btot, params);
    std::vector<Polynomial> bgens;
    for (const auto& g : B.rees_ideal().generators())
        bgens.push_back(specialize(g, given, bspec_ring));
    // Normalize route B exactly like route A: the saturated Rees presentation
    // with respect to the specialized centre.
    Ideal rees_B_spec(bspec_ring, std::move(bgens));
    if (centre.generators().size() > 1) {
        std::vector<Polynomial> cg;
        for (const auto& g : centre_given.generators())
            cg.push_back(inject(g, bspec_ring));
        rees_B_spec = saturation_fast(rees_B_spec, Ideal(bspec_ring, cg), opts);
    }
    Ideal rees_A = A.rees_ideal();
    if (!rees_A.ring()->same_ring(*rees_B_spec.ring())) {
        std::vector<Polynomial> moved;
        for (const auto& g : rees_B_spec.generators())
            moved.push_back(inject(g, rees_A.ring()));
        rees_B_spec = Ideal(rees_A.ring(), std::move(moved));
    }
    if (!rees_A.equals(rees_B_spec, opts)) {
        rep.verdict = Commutation::fails;
        rep.detail = "Rees ideals differ after specialization";
        return rep;
    }
    for (std::size_t i = 0; i < B.charts.size(); ++i) {
        RingPtr target = A.charts[i].ring;
        std::vector<Polynomial> gens;
        for (const auto& g : B.charts[i].ideal.generators())
            gens.push_back(specialize(g, given, target));
        // Specializing a chart may reintroduce exceptional-supported
        // components; re-saturate exactly as the chart construction does.
        Ideal chart_B =
            saturation_fast(Ideal(target, std::move(gens)), A.charts[i].exceptional, opts);
        if (!A.charts[i].ideal.equals(chart_B, opts)) {
            rep.verdict = Commutation::fails;
            rep.detail = "chart " + A.charts[i].label + " differs after specialization";
            return rep;
        }
    }
    rep.verdict = Commutation::commutes;
    rep.detail = "reduced Groebner bases agree on the Rees ideal and every chart";
    return rep;
}

std::vector<Polynomial> lift_ratios(const BlowupResult& b,
                                    const std::map<std::string, Polynomial>& section_images,
                                    const RingPtr& base_ring, const GBOptions& opts)
{
    (void)opts;
    std::vector<Polynomial> g;
    bool all_zero = true;
    for (const auto& fj : b.proj_generators) {
        Polynomial gj = substitute(fj, section_images, base_ring);
        all_zero = all_zero && gj.is_zero();
        g.push_back(std::move(gj));
    }
    if (all_zero)
        throw DomainError("lift_ratios: the section image is contained in the centre "
                          "(infinitely near case)");
    Polynomial d;
    bool first = true;
    for (const auto& gj : g) {
        if (gj.is_zero())
            continue;
        d = first ? gj : poly_gcd(d, gj);
        first = false;
    }
    std::vector<Polynomial> r;
    for (const auto& gj : g) {
        if (gj.is_zero()) {
            r.push_back(gj);
            continue;
        }
        auto q = divide_exactly(gj, d);
        if (!q)
            throw DomainError("lift_ratios: gcd division failed");
        r.push_back(*q);
    }
    return r;
}

} // namespace relcluster
