#include "relcluster/geom.hpp"

#include <algorithm>
#include <sstream>

namespace relcluster {

AmbientSpace::AmbientSpace(RingPtr ring) : ring_(std::move(ring))
{
    for (const auto& b : ring_->blocks())
        if (b.projective && b.vars.size() < 2)
            throw RingError("projective factor '" + b.name + "' needs at least 2 variables");
}

std::vector<int> AmbientSpace::projective_blocks() const
{
    std::vector<int> out;
    for (std::size_t i = 0; i < ring_->blocks().size(); ++i)
        if (ring_->blocks()[i].projective)
            out.push_back(static_cast<int>(i));
    return out;
}

Ideal AmbientSpace::irrelevant_ideal(int block) const
{
    std::vector<Polynomial> gens;
    for (int v : ring_->blocks().at(block).vars)
        gens.push_back(Polynomial::variable(ring_, v));
    return Ideal(ring_, std::move(gens));
}

std::string AmbientSpace::to_string() const
{
    std::ostringstream os;
    for (std::size_t i = 0; i < ring_->blocks().size(); ++i) {
        const auto& b = ring_->blocks()[i];
        if (i)
            os << " x ";
        os << (b.projective ? "P" : "A") << (b.projective ? b.vars.size() - 1 : b.vars.size());
        os << "(";
        for (std::size_t j = 0; j < b.vars.size(); ++j)
            os << (j ? "," : "") << ring_->var_name(b.vars[j]);
        os << ")";
    }
    return os.str();
}

Subscheme::Subscheme(AmbientSpace ambient, Ideal ideal, bool saturated)
    : ambient_(std::move(ambient)), ideal_(std::move(ideal)), saturated_(saturated)
{
    if (!ideal_.ring())
        ideal_ = Ideal::zero(ambient_.ring());
    if (!ideal_.ring()->same_ring(*ambient_.ring()))
        throw RingError("subscheme ideal lives in a different ring than its ambient");
    for (int b : ambient_.projective_blocks())
        for (const auto& g : ideal_.generators())
            if (!g.is_homogeneous_in_block(b))
                throw DomainError("subscheme generator " + g.to_string() +
                                  " is not homogeneous in block '" +
                                  ambient_.ring()->blocks()[b].name + "'");
}

Subscheme saturate(const Subscheme& Z, const GBOptions& opts)
{
    if (Z.saturated_flag())
        return Z;
    auto blocks = Z.ambient().projective_blocks();
    if (blocks.empty() || Z.ideal().is_zero_ideal())
        return Subscheme(Z.ambient(), Z.ideal(), true);
    Ideal current = Z.ideal();
    while (true) {
        Ideal before = current;
        for (int b : blocks)
            current = saturation_fast(current, Z.ambient().irrelevant_ideal(b), opts);
        if (current.equals(before, opts))
            break;
    }
    return Subscheme(Z.ambient(), current, true);
}

std::vector<Chart> atlas(const Subscheme& Z)
{
    const AmbientSpace& amb = Z.ambient();
    auto blocks = amb.projective_blocks();
    std::vector<Chart> charts;
    // One chosen variable per projective block, in block order.
    std::vector<std::size_t> pick(blocks.size(), 0);
    while (true) {
        Chart c;
        std::vector<std::string> removed;
        std::ostringstream label;
        for (std::size_t i = 0; i < blocks.size(); ++i) {
            int v = amb.ring()->blocks()[blocks[i]].vars[pick[i]];
            c.unit_vars.push_back(v);
            removed.push_back(amb.ring()->var_name(v));
            label << (i ? "," : "") << amb.ring()->var_name(v) << "=1";
        }
        c.label = blocks.empty() ? "affine" : label.str();
        c.ring = removed.empty() ? amb.ring() : subring_without(amb.ring(), removed);
        std::vector<Polynomial> gens;
        for (const auto& g : Z.ideal().generators()) {
            Polynomial h = g;
            for (const auto& name : removed)
                h = dehomogenize(h, name);
            gens.push_back(inject(h, c.ring));
        }
        c.ideal = Ideal(c.ring, std::move(gens));
        charts.push_back(std::move(c));
        std::size_t i = 0;
        while (i < blocks.size()) {
            if (++pick[i] < amb.ring()->blocks()[blocks[i]].vars.size())
                break;
            pick[i] = 0;
            ++i;
        }
        if (i == blocks.size() || blocks.empty())
            break;
    }
    return charts;
}

Ideal restrict_to_chart(const Ideal& I, const Chart& chart)
{
    std::vector<Polynomial> gens;
    for (const auto& g : I.generators()) {
        Polynomial h = g;
        for (int v : chart.unit_vars)
            h = dehomogenize(h, g.ring()->var_name(v));
        gens.push_back(inject(h, chart.ring));
    }
    return Ideal(chart.ring, std::move(gens));
}

bool subscheme_is_empty(const Subscheme& Z, const GBOptions& opts)
{
    for (const auto& c : atlas(Z))
        if (!c.ideal.is_unit(opts))
            return false;
    return true;
}

bool subscheme_equals(const Subscheme& A, const Subscheme& B, const GBOptions& opts)
{
    if (!A.ambient().same_space(B.ambient()))
        return false;
    return saturate(A, opts).ideal().equals(saturate(B, opts).ideal(), opts);
}

bool subscheme_contains(const Subscheme& X, const Subscheme& Z, const GBOptions& opts)
{
    if (!X.ambient().same_space(Z.ambient()))
        return false;
    Ideal zsat = saturate(Z, opts).ideal();
    for (const auto& g : X.ideal().generators())
        if (!ideal_membership(g, zsat, opts))
            return false;
    return true;
}

namespace {

Polynomial rename_vars(const Polynomial& f, const std::vector<int>& where, const RingPtr& target)
{
    std::vector<Term> out;
    for (const auto& t : f.terms()) {
        Monomial m(target->nvars());
        for (std::size_t i = 0; i < t.mono.size(); ++i)
            if (t.mono[i] > 0)
                m.set(where[i], t.mono[i]);
        out.push_back(Term{t.coeff, m});
    }
    return Polynomial::from_terms(target, std::move(out));
}

} // namespace

Subscheme scheme_image(const std::vector<std::vector<Polynomial>>& map_blocks,
                       const Subscheme& source, const AmbientSpace& target,
                       const GBOptions& opts)
{
    const RingPtr& sring = source.ambient().ring();
    const RingPtr& tring = target.ring();
    if (map_blocks.size() != tring->blocks().size())
        throw DomainError("scheme_image: one component list per target factor required");
    for (std::size_t b = 0; b < map_blocks.size(); ++b) {
        if (map_blocks[b].size() != tring->blocks()[b].vars.size())
            throw DomainError("scheme_image: component count mismatch on target factor " +
                              tring->blocks()[b].name);
        for (const auto& g : map_blocks[b])
            if (!g.is_zero() && !g.ring()->same_ring(*sring))
                throw RingError("scheme_image: map component in wrong ring");
    }
    // Components of a projective factor must share their multidegree.
    for (std::size_t b = 0; b < map_blocks.size(); ++b) {
        if (!tring->blocks()[b].projective)
            continue;
        for (int sb : source.ambient().projective_blocks()) {
            std::optional<long> deg;
            for (const auto& g : map_blocks[b]) {
                if (g.is_zero())
                    continue;
                auto d = g.block_degree(sb);
                if (!d)
                    throw DomainError("scheme_image: component " + g.to_string() +
                                      " is not homogeneous in a source block");
                if (deg && *deg != *d)
                    throw DomainError("scheme_image: components of target factor " +
                                      tring->blocks()[b].name + " have unequal degrees");
                deg = d;
            }
        }
    }

    // The map must be defined somewhere on the source.
    Ideal ssat = saturate(source, opts).ideal();
    for (std::size_t b = 0; b < map_blocks.size(); ++b) {
        if (!tring->blocks()[b].projective)
            continue;
        bool all_zero = true;
        for (const auto& g : map_blocks[b])
            if (!ideal_membership(g, ssat, opts))
                all_zero = false;
        if (all_zero)
            throw DomainError("scheme_image: components of factor " + tring->blocks()[b].name +
                              " vanish identically on the source");
    }

    // Big ring: target variables plus renamed source variables.
    std::vector<std::string> names = tring->var_names();
    std::vector<int> where(sring->nvars());
    for (std::size_t i = 0; i < sring->nvars(); ++i) {
        std::string n = "s_" + sring->var_name(static_cast<int>(i));
        while (std::find(names.begin(), names.end(), n) != names.end())
            n += "_";
        where[i] = static_cast<int>(names.size());
        names.push_back(n);
    }
    std::vector<GradingBlock> blocks = tring->blocks();
    GradingBlock srcblock{"source", {}, false};
    for (std::size_t i = 0; i < sring->nvars(); ++i)
        srcblock.vars.push_back(where[i]);
    blocks.push_back(srcblock);
    RingPtr big = PolyRing::make(names, tring->field(), blocks);

    std::vector<Polynomial> gens;
    for (const auto& g : source.ideal().generators())
        gens.push_back(rename_vars(g, where, big));
    std::vector<Ideal> component_ideals;
    for (std::size_t b = 0; b < map_blocks.size(); ++b) {
        std::vector<Polynomial> comps;
        for (const auto& g : map_blocks[b])
            comps.push_back(rename_vars(g, where, big));
        const auto& tvars = tring->blocks()[b].vars;
        if (tring->blocks()[b].projective) {
            for (std::size_t i = 0; i < comps.size(); ++i)
                for (std::size_t j = i + 1; j < comps.size(); ++j) {
                    Polynomial yi = Polynomial::variable(big, tring->var_name(tvars[i]));
                    Polynomial yj = Polynomial::variable(big, tring->var_name(tvars[j]));
                    gens.push_back(yi * comps[j] - yj * comps[i]);
                }
            component_ideals.push_back(Ideal(big, comps));
        } else {
            for (std::size_t i = 0; i < comps.size(); ++i) {
                Polynomial yi = Polynomial::variable(big, tring->var_name(tvars[i]));
                gens.push_back(yi - comps[i]);
            }
        }
    }

    Ideal graph(big, std::move(gens));
    for (const auto& ci : component_ideals)
        graph = saturation_fast(graph, ci, opts);

    std::vector<std::string> eliminated;
    for (std::size_t i = 0; i < sring->nvars(); ++i)
        eliminated.push_back(big->var_name(where[i]));
    auto kept = eliminate_in_ring(graph, eliminated, opts);
    std::vector<Polynomial> out;
    for (const auto& f : kept)
        out.push_back(inject(f, tring));
    return saturate(Subscheme(target, Ideal(tring, std::move(out))), opts);
}

namespace {

Polynomial determinant(const std::vector<std::vector<Polynomial>>& m, const RingPtr& ring)
{
    const std::size_t n = m.size();
    if (n == 1)
        return m[0][0];
    Polynomial det = Polynomial::zero(ring);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::vector<Polynomial>> minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<Polynomial> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != j)
                    row.push_back(m[i][k]);
            minor.push_back(std::move(row));
        }
        Polynomial cof = m[0][j] * determinant(minor, ring);
        det = (j % 2 == 0) ? det + cof : det - cof;
    }
    return det;
}

void combinations(int n, int k, std::vector<int>& cur, std::vector<std::vector<int>>& out,
                  int start)
{
    if (static_cast<int>(cur.size()) == k) {
        out.push_back(cur);
        return;
    }
    for (int i = start; i < n; ++i) {
        cur.push_back(i);
        combinations(n, k, cur, out, i + 1);
        cur.pop_back();
    }
}

} // namespace

Subscheme singular_locus(const Subscheme& X, const GBOptions& opts)
{
    const RingPtr& ring = X.ambient().ring();
    const auto& gens = X.ideal().generators();
    if (gens.empty())
        return Subscheme(X.ambient(), Ideal::unit(ring), true); // the ambient is smooth
    if (X.ideal().is_unit(opts))
        return Subscheme(X.ambient(), Ideal::unit(ring), true);

    const bool affine = X.ambient().is_affine();
    std::size_t codim = 1;
    if (gens.size() > 1) {
        if (!affine)
            throw DomainError("singular_locus: only hypersurfaces are supported in projective "
                              "ambients; got " +
                              std::to_string(gens.size()) + " equations");
        int dim = krull_dimension(X.ideal(), opts);
        codim = ring->nvars() - static_cast<std::size_t>(dim);
        if (codim != gens.size())
            throw DomainError("singular_locus: presentation is not a complete intersection "
                              "(codimension " +
                              std::to_string(codim) + " with " + std::to_string(gens.size()) +
                              " equations)");
    }

    std::vector<std::vector<Polynomial>> jac;
    for (const auto& g : gens) {
        std::vector<Polynomial> row;
        for (std::size_t v = 0; v < ring->nvars(); ++v)
            row.push_back(partial_derivative(g, static_cast<int>(v)));
        jac.push_back(std::move(row));
    }

    std::vector<Polynomial> out = gens;
    std::vector<std::vector<int>> rowsets, colsets;
    std::vector<int> cur;
    combinations(static_cast<int>(gens.size()), static_cast<int>(codim), cur, rowsets, 0);
    combinations(static_cast<int>(ring->nvars()), static_cast<int>(codim), cur, colsets, 0);
    for (const auto& rs : rowsets)
        for (const auto& cs : colsets) {
            std::vector<std::vector<Polynomial>> sub;
            for (int r : rs) {
                std::vector<Polynomial> row;
                for (int c : cs)
                    row.push_back(jac[r][c]);
                sub.push_back(std::move(row));
            }
            Polynomial d = determinant(sub, ring);
            if (!d.is_zero())
                out.push_back(d);
        }
    return saturate(Subscheme(X.ambient(), Ideal(ring, std::move(out))), opts);
}

std::string verdict_name(CartierVerdict v)
{
    switch (v) {
    case CartierVerdict::cartier:
        return "cartier";
    case CartierVerdict::not_cartier:
        return "not_cartier";
    case CartierVerdict::unsupported:
        return "unsupported";
    }
    return "?";
}

CartierResult is_effective_cartier_divisor(const Subscheme& Z, const Subscheme& X,
                                           const GBOptions& opts)
{
    CartierResult res;
    if (!Z.ambient().same_space(X.ambient()))
        throw RingError("cartier test: Z and X live in different ambients");
    if (!subscheme_contains(X, Z, opts))
        throw DomainError("cartier test: Z is not contained in X");
    Subscheme Xs = saturate(X, opts);
    if (Xs.ideal().has_generators()) {
        res.verdict = CartierVerdict::unsupported;
        res.reason = "X does not restrict to the full ambient on its charts; chart coordinate "
                     "rings are not known to be factorial";
        return res;
    }
    Subscheme Zs = saturate(Z, opts);
    if (!Zs.ideal().has_generators()) {
        res.verdict = CartierVerdict::not_cartier;
        res.reason = "Z equals X (a divisor must be a proper subscheme)";
        return res;
    }

    bool all_principal = true;
    for (const auto& chart : atlas(Zs)) {
        CartierChartWitness w;
        w.chart = chart.label;
        const auto& gens = chart.ideal.generators();
        if (gens.empty()) {
            w.generator = "0";
            w.principal = false;
            res.reason = "Z fills the chart " + chart.label;
            all_principal = false;
            res.charts.push_back(std::move(w));
            continue;
        }
        Polynomial g = gens[0];
        for (std::size_t i = 1; i < gens.size(); ++i)
            g = poly_gcd(g, gens[i]);
        w.generator = g.to_string();
        // I subseteq (g) holds by construction; equality iff g is a member.
        w.principal = ideal_membership(g, chart.ideal, opts);
        if (!w.principal && res.reason.empty())
            res.reason = "on chart " + chart.label + " the saturated ideal is strictly smaller "
                         "than (" +
                         w.generator + ")";
        all_principal = all_principal && w.principal;
        res.charts.push_back(std::move(w));
    }
    res.verdict = all_principal ? CartierVerdict::cartier : CartierVerdict::not_cartier;
    if (res.verdict == CartierVerdict::cartier)
        res.reason = "locally principal on every chart";
    return res;
}

int subscheme_dimension(const Subscheme& Z, const GBOptions& opts)
{
    Subscheme s = saturate(Z, opts);
    if (subscheme_is_empty(s, opts))
        return -1;
    int cone = krull_dimension(s.ideal(), opts);
    return cone - static_cast<int>(s.ambient().projective_blocks().size());
}

mpz_class subscheme_degree(const Subscheme& Z, const GBOptions& opts)
{
    const auto& blocks = Z.ambient().ring()->blocks();
    if (blocks.size() != 1 || !blocks[0].projective)
        throw DomainError("subscheme_degree: only single projective factors are supported");
    Subscheme s = saturate(Z, opts);
    HilbertData hd = hilbert(s.ideal(), opts);
    if (hd.dimension < 0)
        throw DomainError("subscheme_degree: empty scheme has no degree");
    if (hd.dimension > 1)
        throw DomainError("subscheme_degree: dimension " + std::to_string(hd.dimension) +
                          " exceeds the supported range");
    return hd.degree;
}

} // namespace relcluster
