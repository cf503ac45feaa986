#include "relcluster/groebner.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace relcluster {

bool same_order(const MonomialOrder& a, const MonomialOrder& b)
{
    if (a.kind() != b.kind())
        return false;
    if (a.kind() != MonomialOrder::Kind::block)
        return true;
    if (a.blocks().size() != b.blocks().size())
        return false;
    for (std::size_t i = 0; i < a.blocks().size(); ++i)
        if (a.blocks()[i].vars != b.blocks()[i].vars || a.blocks()[i].inner != b.blocks()[i].inner)
            return false;
    return true;
}

namespace {

// Working polynomial: terms strictly decreasing under the active order.
using WPoly = std::vector<Term>;

WPoly to_wpoly(const Polynomial& p, const MonomialOrder& ord)
{
    WPoly w(p.terms().begin(), p.terms().end());
    std::sort(w.begin(), w.end(),
              [&](const Term& a, const Term& b) { return ord.greater(a.mono, b.mono); });
    return w;
}

Polynomial from_wpoly(const RingPtr& ring, const WPoly& w)
{
    return Polynomial::from_terms(ring, std::vector<Term>(w.begin(), w.end()));
}

WPoly wp_add(const CoefficientField& field, const WPoly& f, const WPoly& g, const MonomialOrder& ord)
{
    WPoly r;
    r.reserve(f.size() + g.size());
    std::size_t i = 0, j = 0;
    while (i < f.size() || j < g.size()) {
        if (j == g.size() || (i < f.size() && ord.greater(f[i].mono, g[j].mono))) {
            r.push_back(f[i++]);
        } else if (i == f.size() || ord.greater(g[j].mono, f[i].mono)) {
            r.push_back(g[j++]);
        } else {
            mpq_class c = field.add(f[i].coeff, g[j].coeff);
            if (c != 0)
                r.push_back(Term{c, f[i].mono});
            ++i;
            ++j;
        }
    }
    return r;
}

// c * m * f; monomial multiplication preserves the order (multiplicativity).
WPoly wp_scale(const CoefficientField& field, const WPoly& f, const mpq_class& c, const Monomial& m)
{
    WPoly r;
    r.reserve(f.size());
    for (const auto& t : f)
        r.push_back(Term{field.mul(t.coeff, c), t.mono.mul(m)});
    return r;
}

// Full division: unique remainder whose monomials avoid all leading terms.
WPoly wp_normal_form(const CoefficientField& field, WPoly f, const std::vector<WPoly>& basis,
                     const MonomialOrder& ord)
{
    WPoly out;
    while (!f.empty()) {
        const Term& lt = f.front();
        bool reduced = false;
        for (const auto& g : basis) {
            if (g.empty())
                continue;
            if (g.front().mono.divides(lt.mono)) {
                mpq_class c = field.neg(field.div(lt.coeff, g.front().coeff));
                f = wp_add(field, f, wp_scale(field, g, c, lt.mono.div(g.front().mono)), ord);
                reduced = true;
                break;
            }
        }
        if (!reduced) {
            out.push_back(f.front());
            f.erase(f.begin());
        }
    }
    return out;
}

WPoly wp_spoly(const CoefficientField& field, const WPoly& f, const WPoly& g, const MonomialOrder& ord)
{
    const Monomial L = f.front().mono.lcm(g.front().mono);
    WPoly a = wp_scale(field, f, field.inv(f.front().coeff), L.div(f.front().mono));
    WPoly b = wp_scale(field, g, field.neg(field.inv(g.front().coeff)), L.div(g.front().mono));
    return wp_add(field, a, b, ord);
}

struct PairKey {
    Monomial lcm;
    int i, j;
};

} // namespace

std::vector<Polynomial> buchberger(const RingPtr& ring, const std::vector<Polynomial>& gens,
                                   const MonomialOrder& ord, const GBOptions& opts)
{
    const CoefficientField& field = ring->field();
    std::vector<WPoly> G;
    for (const auto& g : gens) {
        if (!g.ring()->same_ring(*ring))
            throw RingError("buchberger: generator from a different ring");
        if (!g.is_zero())
            G.push_back(to_wpoly(g, ord));
    }

    auto pair_less = [&](const PairKey& a, const PairKey& b) {
        int c = ord.compare(a.lcm, b.lcm);
        if (c != 0)
            return c < 0; // smaller lcm first (normal strategy)
        if (a.i != b.i)
            return a.i < b.i;
        return a.j < b.j;
    };
    std::set<PairKey, decltype(pair_less)> pending(pair_less);
    std::set<std::pair<int, int>> done;

    auto push_pairs_for = [&](int k) {
        for (int i = 0; i < k; ++i)
            pending.insert(PairKey{G[i].front().mono.lcm(G[k].front().mono), i, k});
    };
    for (int k = 0; k < static_cast<int>(G.size()); ++k)
        push_pairs_for(k);

    long processed = 0;
    while (!pending.empty()) {
        PairKey pk = *pending.begin();
        pending.erase(pending.begin());
        if (pk.lcm.total_degree() > opts.max_degree) {
            std::ostringstream os;
            os << "degree cap " << opts.max_degree << " exceeded by an S-pair of degree "
               << pk.lcm.total_degree() << " (basis size " << G.size() << ", pending pairs "
               << pending.size() << ")";
            throw ResourceLimitError(os.str());
        }
        if (++processed > opts.max_pairs) {
            std::ostringstream os;
            os << "pair cap " << opts.max_pairs << " exceeded (basis size " << G.size() << ")";
            throw ResourceLimitError(os.str());
        }

        const Monomial& li = G[pk.i].front().mono;
        const Monomial& lj = G[pk.j].front().mono;
        // First Buchberger criterion: coprime leading monomials.
        if (li.coprime(lj)) {
            done.insert({pk.i, pk.j});
            continue;
        }
        // Chain criterion. Only pairs that genuinely reduced to zero or were
        // coprime-skipped count as done, so the justification cannot be
        // circular.
        bool chain = false;
        for (int k = 0; k < static_cast<int>(G.size()) && !chain; ++k) {
            if (k == pk.i || k == pk.j)
                continue;
            if (!G[k].front().mono.divides(pk.lcm))
                continue;
            auto key = [&](int a, int b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
            if (done.count(key(pk.i, k)) && done.count(key(pk.j, k)))
                chain = true;
        }
        if (chain)
            continue;

        WPoly s = wp_spoly(field, G[pk.i], G[pk.j], ord);
        WPoly h = wp_normal_form(field, std::move(s), G, ord);
        done.insert({pk.i, pk.j});
        if (!h.empty()) {
            G.push_back(std::move(h));
            push_pairs_for(static_cast<int>(G.size()) - 1);
        }
    }

    // Minimalize: drop elements whose leading monomial is divisible by the
    // leading monomial of another survivor.
    std::vector<bool> keep(G.size(), true);
    for (std::size_t i = 0; i < G.size(); ++i) {
        if (!keep[i])
            continue;
        for (std::size_t j = 0; j < G.size(); ++j) {
            if (i == j || !keep[j])
                continue;
            const Monomial& mi = G[i].front().mono;
            const Monomial& mj = G[j].front().mono;
            if (mj.divides(mi) && (mi != mj || j < i)) {
                keep[i] = false;
                break;
            }
        }
    }
    std::vector<WPoly> minimal;
    for (std::size_t i = 0; i < G.size(); ++i)
        if (keep[i])
            minimal.push_back(std::move(G[i]));

    // Tail-reduce each element against the others and make monic.
    std::vector<WPoly> reduced(minimal.size());
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<WPoly> others;
        for (std::size_t j = 0; j < minimal.size(); ++j)
            if (j != i)
                others.push_back(minimal[j]);
        WPoly h = wp_normal_form(field, minimal[i], others, ord);
        mpq_class inv = field.inv(h.front().coeff);
        for (auto& t : h)
            t.coeff = field.mul(t.coeff, inv);
        reduced[i] = std::move(h);
    }
    std::sort(reduced.begin(), reduced.end(), [&](const WPoly& a, const WPoly& b) {
        return ord.compare(a.front().mono, b.front().mono) < 0;
    });

    std::vector<Polynomial> out;
    out.reserve(reduced.size());
    for (const auto& w : reduced)
        out.push_back(from_wpoly(ring, w));
    return out;
}

struct Ideal::CacheSlot {
    std::mutex mu;
    bool filled = false;
    MonomialOrder ord = MonomialOrder::grevlex();
    std::vector<Polynomial> basis;
};

Ideal::Ideal(RingPtr ring, std::vector<Polynomial> gens)
    : ring_(std::move(ring)), cache_(std::make_shared<CacheSlot>())
{
    for (auto& g : gens) {
        if (g.is_zero())
            continue;
        if (!g.ring()->same_ring(*ring_))
            throw RingError("ideal generator from a different ring");
        gens_.push_back(std::move(g));
    }
}

Ideal Ideal::unit(const RingPtr& ring)
{
    return Ideal(ring, {Polynomial::constant(ring, 1)});
}

const std::vector<Polynomial> Ideal::groebner(const MonomialOrder& ord, const GBOptions& opts) const
{
    if (!ring_)
        throw RingError("groebner basis of uninitialized ideal");
    {
        std::lock_guard<std::mutex> lock(cache_->mu);
        if (cache_->filled && same_order(cache_->ord, ord))
            return cache_->basis;
    }
    auto basis = buchberger(ring_, gens_, ord, opts);
    {
        std::lock_guard<std::mutex> lock(cache_->mu);
        cache_->filled = true;
        cache_->ord = ord;
        cache_->basis = basis;
    }
    return basis;
}

bool Ideal::contains(const Polynomial& f, const GBOptions& opts) const
{
    return normal_form(f, *this, MonomialOrder::grevlex(), opts).is_zero();
}

bool Ideal::is_unit(const GBOptions& opts) const
{
    auto gb = groebner(MonomialOrder::grevlex(), opts);
    return gb.size() == 1 && gb[0].is_constant() && !gb[0].is_zero();
}

bool Ideal::equals(const Ideal& other, const GBOptions& opts) const
{
    if (!ring_->same_ring(*other.ring_))
        return false;
    auto a = groebner(MonomialOrder::grevlex(), opts);
    auto b = other.groebner(MonomialOrder::grevlex(), opts);
    if (a.size() != b.size())
        return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i])
            return false;
    return true;
}

std::string Ideal::to_string() const
{
    if (gens_.empty())
        return "(0)";
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < gens_.size(); ++i)
        os << (i ? ", " : "") << gens_[i].to_string();
    os << ")";
    return os.str();
}

Polynomial normal_form(const Polynomial& f, const std::vector<Polynomial>& basis,
                       const MonomialOrder& ord)
{
    if (basis.empty())
        return f;
    const RingPtr& ring = f.ring();
    std::vector<WPoly> B;
    for (const auto& g : basis)
        if (!g.is_zero())
            B.push_back(to_wpoly(g, ord));
    return from_wpoly(ring, wp_normal_form(ring->field(), to_wpoly(f, ord), B, ord));
}

Polynomial normal_form(const Polynomial& f, const Ideal& I, const MonomialOrder& ord,
                       const GBOptions& opts)
{
    if (!f.ring()->same_ring(*I.ring()))
        throw RingError("normal_form: ring mismatch");
    return normal_form(f, I.groebner(ord, opts), ord);
}

bool ideal_membership(const Polynomial& f, const Ideal& I, const GBOptions& opts)
{
    return normal_form(f, I, MonomialOrder::grevlex(), opts).is_zero();
}

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, const MonomialOrder& ord)
{
    if (f.is_zero() || g.is_zero())
        throw RingError("s_polynomial of zero polynomial");
    const CoefficientField& field = f.ring()->field();
    return from_wpoly(f.ring(), wp_spoly(field, to_wpoly(f, ord), to_wpoly(g, ord), ord));
}

Ideal ideal_sum(const Ideal& I, const Ideal& J)
{
    if (!I.ring()->same_ring(*J.ring()))
        throw RingError("ideal_sum: ring mismatch");
    std::vector<Polynomial> gens = I.generators();
    for (const auto& g : J.generators())
        gens.push_back(g);
    return Ideal(I.ring(), std::move(gens));
}

Ideal ideal_product(const Ideal& I, const Ideal& J)
{
    if (!I.ring()->same_ring(*J.ring()))
        throw RingError("ideal_product: ring mismatch");
    std::vector<Polynomial> gens;
    for (const auto& f : I.generators())
        for (const auto& g : J.generators())
            gens.push_back(f * g);
    return Ideal(I.ring(), std::move(gens));
}

namespace {

std::string fresh_var_name(const PolyRing& ring, const std::string& base)
{
    std::string name = base;
    while (ring.var_index(name) >= 0)
        name += "_";
    return name;
}

} // namespace

Ideal ideal_intersection(const Ideal& I, const Ideal& J, const GBOptions& opts)
{
    if (!I.ring()->same_ring(*J.ring()))
        throw RingError("ideal_intersection: ring mismatch");
    const RingPtr& ring = I.ring();
    if (I.is_zero_ideal() || J.is_zero_ideal())
        return Ideal::zero(ring);
    std::string tname = fresh_var_name(*ring, "t0");
    RingPtr ext = extend_ring(ring, GradingBlock{"aux", {}, false}, {tname});
    Polynomial t = Polynomial::variable(ext, tname);
    Polynomial one = Polynomial::constant(ext, 1);
    std::vector<Polynomial> gens;
    for (const auto& f : I.generators())
        gens.push_back(t * inject(f, ext));
    for (const auto& g : J.generators())
        gens.push_back((one - t) * inject(g, ext));
    Ideal big(ext, std::move(gens));
    auto kept = eliminate_in_ring(big, {tname}, opts);
    std::vector<Polynomial> out;
    for (const auto& f : kept)
        out.push_back(inject(f, ring));
    return Ideal(ring, std::move(out));
}

std::vector<Polynomial> eliminate_in_ring(const Ideal& I, const std::vector<std::string>& vars,
                                          const GBOptions& opts)
{
    const RingPtr& ring = I.ring();
    std::vector<int> first;
    for (const auto& n : vars) {
        int i = ring->var_index(n);
        if (i < 0)
            throw RingError("eliminate: unknown variable '" + n + "'");
        first.push_back(i);
    }
    MonomialOrder ord = MonomialOrder::eliminating(*ring, first);
    auto gb = buchberger(ring, I.generators(), ord, opts);
    std::vector<Polynomial> kept;
    for (const auto& g : gb) {
        bool free = true;
        for (const auto& t : g.terms())
            for (int v : first)
                if (t.mono[v] != 0)
                    free = false;
        if (free)
            kept.push_back(g);
    }
    return kept;
}

Ideal eliminate(const Ideal& I, const std::vector<std::string>& vars, const GBOptions& opts)
{
    auto kept = eliminate_in_ring(I, vars, opts);
    RingPtr sub = subring_without(I.ring(), vars);
    std::vector<Polynomial> out;
    for (const auto& f : kept)
        out.push_back(inject(f, sub));
    return Ideal(sub, std::move(out));
}

Ideal ideal_quotient(const Ideal& I, const Ideal& J, const GBOptions& opts)
{
    if (!I.ring()->same_ring(*J.ring()))
        throw RingError("ideal_quotient: ring mismatch");
    if (J.is_zero_ideal())
        throw DomainError("ideal_quotient: J must have a nonzero generator");
    bool firstg = true;
    Ideal result;
    for (const auto& g : J.generators()) {
        // (I : g) = (I cap (g)) / g
        Ideal inter = ideal_intersection(I, Ideal(I.ring(), {g}), opts);
        std::vector<Polynomial> quots;
        for (const auto& h : inter.generators()) {
            auto q = divide_exactly(h, g);
            if (!q)
                throw DomainError("ideal_quotient: internal exact-division failure");
            quots.push_back(*q);
        }
        Ideal qg(I.ring(), std::move(quots));
        if (firstg) {
            result = qg;
            firstg = false;
        } else {
            result = ideal_intersection(result, qg, opts);
        }
    }
    return result;
}

std::pair<Ideal, int> saturation(const Ideal& I, const Ideal& J, const GBOptions& opts)
{
    if (J.is_zero_ideal())
        throw DomainError("saturation: J must have a nonzero generator");
    Ideal current = I;
    int exponent = 0;
    while (true) {
        Ideal next = ideal_quotient(current, J, opts);
        if (next.equals(current, opts))
            return {current, exponent};
        current = next;
        ++exponent;
        if (exponent > 4096)
            throw ResourceLimitError("saturation did not stabilize within 4096 steps");
    }
}

Ideal saturation_fast(const Ideal& I, const Polynomial& g, const GBOptions& opts)
{
    if (g.is_zero())
        throw DomainError("saturation_fast: zero polynomial");
    if (g.is_constant() || I.is_zero_ideal())
        return I;
    const RingPtr& ring = I.ring();
    std::string z = fresh_var_name(*ring, "z0");
    RingPtr ext = extend_ring(ring, GradingBlock{"aux", {}, false}, {z});
    std::vector<Polynomial> gens;
    for (const auto& h : I.generators())
        gens.push_back(inject(h, ext));
    gens.push_back(Polynomial::constant(ext, 1) -
                   Polynomial::variable(ext, z) * inject(g, ext));
    auto kept = eliminate_in_ring(Ideal(ext, std::move(gens)), {z}, opts);
    std::vector<Polynomial> out;
    for (const auto& h : kept)
        out.push_back(inject(h, ring));
    return Ideal(ring, std::move(out));
}

Ideal saturation_fast(const Ideal& I, const Ideal& J, const GBOptions& opts)
{
    if (!J.has_generators())
        throw DomainError("saturation_fast: J must have a nonzero generator");
    bool first = true;
    Ideal result;
    for (const auto& g : J.generators()) {
        Ideal part = saturation_fast(I, g, opts);
        if (first) {
            result = part;
            first = false;
        } else {
            result = ideal_intersection(result, part, opts);
        }
        if (result.is_zero_ideal())
            return result;
    }
    return result;
}

bool radical_membership(const Polynomial& f, const Ideal& I, const GBOptions& opts)
{
    if (f.is_zero())
        return true;
    const RingPtr& ring = I.ring();
    std::string z = fresh_var_name(*ring, "z0");
    RingPtr ext = extend_ring(ring, GradingBlock{"aux", {}, false}, {z});
    std::vector<Polynomial> gens;
    for (const auto& g : I.generators())
        gens.push_back(inject(g, ext));
    gens.push_back(Polynomial::constant(ext, 1) -
                   Polynomial::variable(ext, z) * inject(f, ext));
    return Ideal(ext, std::move(gens)).is_unit(opts);
}

namespace {

std::vector<Monomial> leading_monomials(const Ideal& I, const GBOptions& opts)
{
    MonomialOrder ord = MonomialOrder::grevlex();
    std::vector<Monomial> lts;
    for (const auto& g : I.groebner(ord, opts))
        lts.push_back(g.leading_term(ord).mono);
    return lts;
}

// Remove monomials divisible by another list member.
std::vector<Monomial> minimalize(std::vector<Monomial> mons)
{
    std::vector<Monomial> out;
    for (std::size_t i = 0; i < mons.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < mons.size() && !redundant; ++j)
            if (i != j && mons[j].divides(mons[i]) && (mons[i] != mons[j] || j < i))
                redundant = true;
        if (!redundant)
            out.push_back(mons[i]);
    }
    return out;
}

} // namespace

int krull_dimension(const Ideal& I, const GBOptions& opts)
{
    const std::size_t n = I.ring()->nvars();
    auto lts = leading_monomials(I, opts);
    for (const auto& m : lts)
        if (m.is_one())
            return -1; // unit ideal, empty variety
    if (lts.empty())
        return static_cast<int>(n);
    if (n > 24)
        throw ResourceLimitError("krull_dimension: too many variables for subset search");
    // Largest S with no leading monomial supported inside S.
    int best = 0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        int size = __builtin_popcount(mask);
        if (size <= best)
            continue;
        bool independent = true;
        for (const auto& m : lts) {
            bool inside = true;
            for (std::size_t v = 0; v < n && inside; ++v)
                if (m[v] > 0 && !(mask & (1u << v)))
                    inside = false;
            if (inside) {
                independent = false;
                break;
            }
        }
        if (independent)
            best = size;
    }
    return best;
}

mpz_class vector_space_degree(const Ideal& I, const GBOptions& opts)
{
    int dim = krull_dimension(I, opts);
    if (dim != 0)
        throw DomainError("vector_space_degree: quotient is not zero-dimensional (dim " +
                          std::to_string(dim) + ")");
    auto lts = minimalize(leading_monomials(I, opts));
    const std::size_t n = I.ring()->nvars();
    // Zero-dimensional staircase: every variable has a pure power among the
    // leading monomials, so the standard monomials sit inside a finite box.
    std::vector<long> bound(n, -1);
    for (const auto& m : lts) {
        int support = -1;
        bool pure = true;
        for (std::size_t v = 0; v < n; ++v) {
            if (m[v] > 0) {
                if (support >= 0)
                    pure = false;
                support = static_cast<int>(v);
            }
        }
        if (pure && support >= 0)
            bound[support] = m[support];
    }
    for (std::size_t v = 0; v < n; ++v)
        if (bound[v] < 0)
            throw DomainError("vector_space_degree: staircase is not finite");
    mpz_class count = 0;
    std::vector<long> e(n, 0);
    while (true) {
        Monomial m(n);
        for (std::size_t v = 0; v < n; ++v)
            m.set(v, static_cast<unsigned>(e[v]));
        bool standard = true;
        for (const auto& lm : lts)
            if (lm.divides(m)) {
                standard = false;
                break;
            }
        if (standard)
            ++count;
        // next point in the box
        std::size_t v = 0;
        while (v < n) {
            if (++e[v] < bound[v])
                break;
            e[v] = 0;
            ++v;
        }
        if (v == n)
            break;
    }
    return count;
}

namespace {

mpz_class count_standard_monomials(const std::vector<Monomial>& lts, std::size_t n, long deg,
                                   bool at_most)
{
    // Enumerate exponent vectors of total degree == deg (or <= deg).
    mpz_class count = 0;
    std::vector<long> e(n, 0);
    std::function<void(std::size_t, long)> rec = [&](std::size_t v, long rem) {
        if (v + 1 == n) {
            for (long last = at_most ? 0 : rem; last <= rem; ++last) {
                e[v] = at_most ? last : rem;
                Monomial m(n);
                for (std::size_t i = 0; i < n; ++i)
                    m.set(i, static_cast<unsigned>(e[i]));
                bool standard = true;
                for (const auto& lm : lts)
                    if (lm.divides(m)) {
                        standard = false;
                        break;
                    }
                if (standard)
                    ++count;
                if (!at_most)
                    break;
            }
            return;
        }
        for (long x = 0; x <= rem; ++x) {
            e[v] = x;
            rec(v + 1, rem - x);
        }
        e[v] = 0;
    };
    if (n == 0)
        return deg == 0 || at_most ? 1 : 0;
    rec(0, deg);
    return count;
}

} // namespace

mpz_class affine_hilbert_function(const Ideal& I, long d, const GBOptions& opts)
{
    auto lts = minimalize(leading_monomials(I, opts));
    return count_standard_monomials(lts, I.ring()->nvars(), d, true);
}

mpz_class hilbert_function(const Ideal& I, long d, const GBOptions& opts)
{
    auto lts = minimalize(leading_monomials(I, opts));
    return count_standard_monomials(lts, I.ring()->nvars(), d, false);
}

namespace {

using ZPoly = std::vector<mpz_class>; // coefficient i of t^i

ZPoly zp_mul(const ZPoly& a, const ZPoly& b)
{
    ZPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    return r;
}

// Numerator of the Hilbert series of R/(mons) over (1-t)^nvars.
ZPoly hilbert_numerator(std::vector<Monomial> mons, std::size_t n)
{
    mons = minimalize(std::move(mons));
    if (mons.empty())
        return {1};
    for (const auto& m : mons)
        if (m.is_one())
            return {0};
    // Pairwise coprime generators form a regular sequence.
    bool coprime = true;
    for (std::size_t i = 0; i < mons.size() && coprime; ++i)
        for (std::size_t j = i + 1; j < mons.size() && coprime; ++j)
            if (!mons[i].coprime(mons[j]))
                coprime = false;
    if (coprime) {
        ZPoly r{1};
        for (const auto& m : mons) {
            ZPoly f(static_cast<std::size_t>(m.total_degree()) + 1, 0);
            f[0] = 1;
            f[static_cast<std::size_t>(m.total_degree())] = -1;
            r = zp_mul(r, f);
        }
        return r;
    }
    // Pivot on the most shared variable: N(I) = N(I + p) + t^|p| N(I : p).
    // Exponent 1 makes both branches strictly simpler.
    std::vector<int> freq(n, 0);
    for (const auto& m : mons)
        for (std::size_t v = 0; v < n; ++v)
            if (m[v] > 0)
                ++freq[v];
    int pivot_var = 0;
    for (std::size_t v = 1; v < n; ++v)
        if (freq[v] > freq[pivot_var])
            pivot_var = static_cast<int>(v);
    Monomial p = Monomial::of_var(n, pivot_var, 1);

    std::vector<Monomial> plus = mons;
    plus.push_back(p);
    std::vector<Monomial> colon;
    for (const auto& m : mons)
        colon.push_back(m.div(m.gcd(p)));
    ZPoly a = hilbert_numerator(std::move(plus), n);
    ZPoly b = hilbert_numerator(std::move(colon), n);
    ZPoly shifted(static_cast<std::size_t>(p.total_degree()), 0);
    shifted.insert(shifted.end(), b.begin(), b.end());
    ZPoly r = a;
    if (r.size() < shifted.size())
        r.resize(shifted.size(), 0);
    for (std::size_t i = 0; i < shifted.size(); ++i)
        r[i] += shifted[i];
    while (r.size() > 1 && r.back() == 0)
        r.pop_back();
    return r;
}

// Divide by (1 - t); requires exact divisibility (numerator vanishing at 1).
ZPoly zp_div_one_minus_t(const ZPoly& a)
{
    // a(t) = (1 - t) q(t): q_i = a_0 + a_1 + ... + a_i.
    ZPoly q(a.size() > 1 ? a.size() - 1 : 1, 0);
    mpz_class run = 0;
    for (std::size_t i = 0; i + 1 < a.size(); ++i) {
        run += a[i];
        q[i] = run;
    }
    return q;
}

// Binomial-type polynomial C(d + off, k) expanded in powers of d.
std::vector<mpq_class> binomial_poly(long off, long k)
{
    std::vector<mpq_class> r{1};
    for (long j = 0; j < k; ++j) {
        // multiply by (d + off - j)
        std::vector<mpq_class> nr(r.size() + 1, 0);
        for (std::size_t i = 0; i < r.size(); ++i) {
            nr[i + 1] += r[i];
            nr[i] += r[i] * mpq_class(off - j);
        }
        r = std::move(nr);
    }
    mpz_class kfact = 1;
    for (long j = 2; j <= k; ++j)
        kfact *= j;
    for (auto& c : r)
        c /= mpq_class(kfact);
    return r;
}

} // namespace

mpq_class eval_poly_at(const std::vector<mpq_class>& coeffs, const mpq_class& x)
{
    mpq_class v = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;)
        v = v * x + coeffs[i];
    return v;
}

HilbertData hilbert(const Ideal& I, const GBOptions& opts)
{
    for (const auto& g : I.generators()) {
        long d = -1;
        for (const auto& t : g.terms()) {
            if (d < 0)
                d = t.mono.total_degree();
            else if (t.mono.total_degree() != d)
                throw DomainError("hilbert: non-homogeneous generator " + g.to_string());
        }
    }
    const std::size_t n = I.ring()->nvars();
    auto lts = leading_monomials(I, opts);
    HilbertData data;
    data.series_numerator = hilbert_numerator(lts, n);

    ZPoly q = data.series_numerator;
    auto value_at_one = [](const ZPoly& p) {
        mpz_class s = 0;
        for (const auto& c : p)
            s += c;
        return s;
    };
    long D = static_cast<long>(n);
    bool zero_series = q.size() == 1 && q[0] == 0;
    while (!zero_series && D > 0 && value_at_one(q) == 0) {
        q = zp_div_one_minus_t(q);
        --D;
        zero_series = q.size() == 1 && q[0] == 0;
    }
    if (zero_series || D == 0) {
        data.dimension = -1;
        data.hilbert_polynomial = {};
        data.degree = 0;
        data.regularity = zero_series ? 0 : static_cast<long>(q.size());
        return data;
    }

    std::vector<mpq_class> hp(static_cast<std::size_t>(D), 0);
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (q[i] == 0)
            continue;
        auto b = binomial_poly(D - 1 - static_cast<long>(i), D - 1);
        for (std::size_t j = 0; j < b.size(); ++j)
            hp[j] += mpq_class(q[i]) * b[j];
    }
    while (!hp.empty() && hp.back() == 0)
        hp.pop_back();
    data.hilbert_polynomial = hp;
    data.dimension = static_cast<int>(hp.size()) - 1;
    mpz_class fact = 1;
    for (int j = 2; j <= data.dimension; ++j)
        fact *= j;
    if (!hp.empty()) {
        mpq_class lead = hp.back() * mpq_class(fact);
        data.degree = lead.get_num(); // integral by construction
    }
    data.regularity = std::max<long>(0, static_cast<long>(q.size()) - 1 - (D - 1));
    return data;
}

} // namespace relcluster
