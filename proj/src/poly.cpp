#include "relcluster/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace relcluster {

namespace {

bool valid_var_name(const std::string& s)
{
    if (s.empty())
        return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])))
        return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
            return false;
    return true;
}

// Canonical storage order: grevlex over the full variable sequence.
int cmp_grevlex_full(const Monomial& a, const Monomial& b)
{
    long da = a.total_degree(), db = b.total_degree();
    if (da != db)
        return da < db ? -1 : 1;
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i])
            return a[i] > b[i] ? -1 : 1;
    }
    return 0;
}

int cmp_lex_on(const Monomial& a, const Monomial& b, const std::vector<int>& vars)
{
    for (int v : vars) {
        if (a[v] != b[v])
            return a[v] < b[v] ? -1 : 1;
    }
    return 0;
}

int cmp_grevlex_on(const Monomial& a, const Monomial& b, const std::vector<int>& vars)
{
    long da = a.degree_on(vars), db = b.degree_on(vars);
    if (da != db)
        return da < db ? -1 : 1;
    for (std::size_t i = vars.size(); i-- > 0;) {
        int v = vars[i];
        if (a[v] != b[v])
            return a[v] > b[v] ? -1 : 1;
    }
    return 0;
}

} // namespace

RingPtr PolyRing::make(std::vector<std::string> vars, CoefficientField field,
                       std::vector<GradingBlock> blocks)
{
    auto ring = std::shared_ptr<PolyRing>(new PolyRing());
    ring->vars_ = std::move(vars);
    ring->field_ = field;
    for (std::size_t i = 0; i < ring->vars_.size(); ++i) {
        const std::string& name = ring->vars_[i];
        if (!valid_var_name(name))
            throw RingError("invalid variable name: '" + name + "'");
        if (!ring->index_.emplace(name, static_cast<int>(i)).second)
            throw RingError("duplicate variable name: '" + name + "'");
    }
    ring->var_block_.assign(ring->vars_.size(), -1);
    for (auto& b : blocks) {
        int bi = static_cast<int>(ring->blocks_.size());
        for (int v : b.vars) {
            if (v < 0 || v >= static_cast<int>(ring->vars_.size()))
                throw RingError("grading block references unknown variable index");
            if (ring->var_block_[v] != -1)
                throw RingError("variable '" + ring->vars_[v] + "' assigned to two grading blocks");
            ring->var_block_[v] = bi;
        }
        ring->blocks_.push_back(std::move(b));
    }
    std::vector<int> rest;
    for (std::size_t i = 0; i < ring->vars_.size(); ++i)
        if (ring->var_block_[i] == -1)
            rest.push_back(static_cast<int>(i));
    if (!rest.empty()) {
        int bi = static_cast<int>(ring->blocks_.size());
        for (int v : rest)
            ring->var_block_[v] = bi;
        ring->blocks_.push_back(GradingBlock{"affine", rest, false});
    }
    return ring;
}

int PolyRing::var_index(const std::string& name) const
{
    auto it = index_.find(name);
    return it == index_.end() ? -1 : it->second;
}

bool PolyRing::same_ring(const PolyRing& o) const
{
    if (this == &o)
        return true;
    if (vars_ != o.vars_ || field_ != o.field_ || blocks_.size() != o.blocks_.size())
        return false;
    for (std::size_t i = 0; i < blocks_.size(); ++i)
        if (blocks_[i].vars != o.blocks_[i].vars || blocks_[i].projective != o.blocks_[i].projective)
            return false;
    return true;
}

std::string PolyRing::to_string() const
{
    std::ostringstream os;
    os << field_.to_string() << "[";
    for (std::size_t i = 0; i < vars_.size(); ++i)
        os << (i ? "," : "") << vars_[i];
    os << "]";
    return os.str();
}

RingPtr extend_ring(const RingPtr& ring, const GradingBlock& extra,
                    const std::vector<std::string>& extra_names)
{
    std::vector<std::string> vars = ring->var_names();
    int base = static_cast<int>(vars.size());
    for (const auto& n : extra_names)
        vars.push_back(n);
    std::vector<GradingBlock> blocks = ring->blocks();
    GradingBlock nb = extra;
    nb.vars.clear();
    for (std::size_t i = 0; i < extra_names.size(); ++i)
        nb.vars.push_back(base + static_cast<int>(i));
    blocks.push_back(nb);
    return PolyRing::make(std::move(vars), ring->field(), std::move(blocks));
}

RingPtr subring_without(const RingPtr& ring, const std::vector<std::string>& removed)
{
    std::vector<bool> drop(ring->nvars(), false);
    for (const auto& n : removed) {
        int i = ring->var_index(n);
        if (i < 0)
            throw RingError("subring_without: unknown variable '" + n + "'");
        drop[i] = true;
    }
    std::vector<std::string> vars;
    std::vector<int> newindex(ring->nvars(), -1);
    for (std::size_t i = 0; i < ring->nvars(); ++i) {
        if (!drop[i]) {
            newindex[i] = static_cast<int>(vars.size());
            vars.push_back(ring->var_name(static_cast<int>(i)));
        }
    }
    std::vector<GradingBlock> blocks;
    for (const auto& b : ring->blocks()) {
        GradingBlock nb;
        nb.name = b.name;
        nb.projective = b.projective;
        for (int v : b.vars)
            if (newindex[v] >= 0)
                nb.vars.push_back(newindex[v]);
        // A projective block that loses a variable to dehomogenization
        // becomes affine coordinates of the corresponding chart.
        if (b.projective && nb.vars.size() < b.vars.size())
            nb.projective = false;
        if (!nb.vars.empty())
            blocks.push_back(std::move(nb));
    }
    return PolyRing::make(std::move(vars), ring->field(), std::move(blocks));
}

Monomial Monomial::of_var(std::size_t nvars, int var, unsigned power)
{
    Monomial m(nvars);
    m.set(var, power);
    return m;
}

void Monomial::set(std::size_t i, unsigned v)
{
    if (v > 0xffffu)
        throw ExponentOverflow("exponent exceeds 16-bit bound");
    e_.at(i) = static_cast<std::uint16_t>(v);
}

long Monomial::total_degree() const
{
    long d = 0;
    for (auto v : e_)
        d += v;
    return d;
}

long Monomial::degree_on(const std::vector<int>& vars) const
{
    long d = 0;
    for (int v : vars)
        d += e_[v];
    return d;
}

bool Monomial::is_one() const
{
    for (auto v : e_)
        if (v)
            return false;
    return true;
}

bool Monomial::divides(const Monomial& m) const
{
    for (std::size_t i = 0; i < e_.size(); ++i)
        if (e_[i] > m.e_[i])
            return false;
    return true;
}

Monomial Monomial::mul(const Monomial& m) const
{
    Monomial r(e_.size());
    for (std::size_t i = 0; i < e_.size(); ++i) {
        unsigned s = unsigned(e_[i]) + unsigned(m.e_[i]);
        if (s > 0xffffu)
            throw ExponentOverflow("exponent overflow in monomial product");
        r.e_[i] = static_cast<std::uint16_t>(s);
    }
    return r;
}

Monomial Monomial::div(const Monomial& m) const
{
    Monomial r(e_.size());
    for (std::size_t i = 0; i < e_.size(); ++i) {
        if (m.e_[i] > e_[i])
            throw RingError("monomial division is not exact");
        r.e_[i] = static_cast<std::uint16_t>(e_[i] - m.e_[i]);
    }
    return r;
}

Monomial Monomial::lcm(const Monomial& m) const
{
    Monomial r(e_.size());
    for (std::size_t i = 0; i < e_.size(); ++i)
        r.e_[i] = std::max(e_[i], m.e_[i]);
    return r;
}

Monomial Monomial::gcd(const Monomial& m) const
{
    Monomial r(e_.size());
    for (std::size_t i = 0; i < e_.size(); ++i)
        r.e_[i] = std::min(e_[i], m.e_[i]);
    return r;
}

bool Monomial::coprime(const Monomial& m) const
{
    for (std::size_t i = 0; i < e_.size(); ++i)
        if (e_[i] && m.e_[i])
            return false;
    return true;
}

MonomialOrder MonomialOrder::lex()
{
    MonomialOrder o;
    o.kind_ = Kind::lex;
    return o;
}

MonomialOrder MonomialOrder::grevlex()
{
    MonomialOrder o;
    o.kind_ = Kind::grevlex;
    return o;
}

MonomialOrder MonomialOrder::block(std::vector<Block> blocks)
{
    MonomialOrder o;
    o.kind_ = Kind::block;
    o.blocks_ = std::move(blocks);
    for (const auto& b : o.blocks_)
        if (b.inner == Kind::block)
            throw RingError("block order blocks must use lex or grevlex inside");
    return o;
}

MonomialOrder MonomialOrder::eliminating(const PolyRing& ring, const std::vector<int>& first)
{
    std::vector<bool> in_first(ring.nvars(), false);
    for (int v : first)
        in_first.at(v) = true;
    Block b1{first, Kind::grevlex};
    Block b2;
    b2.inner = Kind::grevlex;
    for (std::size_t i = 0; i < ring.nvars(); ++i)
        if (!in_first[i])
            b2.vars.push_back(static_cast<int>(i));
    if (b1.vars.empty())
        return grevlex();
    if (b2.vars.empty())
        return grevlex();
    return block({b1, b2});
}

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const
{
    switch (kind_) {
    case Kind::grevlex:
        return cmp_grevlex_full(a, b);
    case Kind::lex: {
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] != b[i])
                return a[i] < b[i] ? -1 : 1;
        return 0;
    }
    case Kind::block: {
        for (const auto& blk : blocks_) {
            int c = blk.inner == Kind::lex ? cmp_lex_on(a, b, blk.vars)
                                           : cmp_grevlex_on(a, b, blk.vars);
            if (c)
                return c;
        }
        return 0;
    }
    }
    return 0;
}

std::string MonomialOrder::to_string(const PolyRing& ring) const
{
    switch (kind_) {
    case Kind::lex:
        return "lex";
    case Kind::grevlex:
        return "grevlex";
    case Kind::block: {
        std::ostringstream os;
        os << "block(";
        for (std::size_t i = 0; i < blocks_.size(); ++i) {
            if (i)
                os << " > ";
            os << (blocks_[i].inner == Kind::lex ? "lex[" : "grevlex[");
            for (std::size_t j = 0; j < blocks_[i].vars.size(); ++j)
                os << (j ? "," : "") << ring.var_name(blocks_[i].vars[j]);
            os << "]";
        }
        os << ")";
        return os.str();
    }
    }
    return "?";
}

Polynomial Polynomial::zero(const RingPtr& ring)
{
    Polynomial p;
    p.ring_ = ring;
    return p;
}

Polynomial Polynomial::constant(const RingPtr& ring, const mpq_class& c)
{
    Polynomial p;
    p.ring_ = ring;
    mpq_class r = ring->field().reduce(c);
    if (r != 0)
        p.terms_.push_back(Term{r, Monomial(ring->nvars())});
    return p;
}

Polynomial Polynomial::variable(const RingPtr& ring, int var)
{
    Polynomial p;
    p.ring_ = ring;
    p.terms_.push_back(Term{mpq_class(1), Monomial::of_var(ring->nvars(), var)});
    return p;
}

Polynomial Polynomial::variable(const RingPtr& ring, const std::string& name)
{
    int i = ring->var_index(name);
    if (i < 0)
        throw RingError("unknown variable '" + name + "' in " + ring->to_string());
    return variable(ring, i);
}

Polynomial Polynomial::from_terms(const RingPtr& ring, std::vector<Term> terms)
{
    std::map<Monomial, mpq_class> acc;
    for (auto& t : terms) {
        if (t.mono.size() != ring->nvars())
            throw RingError("term monomial has wrong variable count");
        acc[t.mono] += t.coeff;
    }
    Polynomial p;
    p.ring_ = ring;
    for (auto& [m, c] : acc) {
        mpq_class r = ring->field().reduce(c);
        if (r != 0)
            p.terms_.push_back(Term{r, m});
    }
    std::sort(p.terms_.begin(), p.terms_.end(),
              [](const Term& a, const Term& b) { return cmp_grevlex_full(a.mono, b.mono) > 0; });
    return p;
}

bool Polynomial::is_constant() const
{
    return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one());
}

mpq_class Polynomial::constant_value() const
{
    if (terms_.empty())
        return 0;
    if (!is_constant())
        throw RingError("polynomial is not constant");
    return terms_[0].coeff;
}

Polynomial Polynomial::operator+(const Polynomial& g) const
{
    if (!ring_ || !g.ring_)
        throw RingError("operation on uninitialized polynomial");
    if (!ring_->same_ring(*g.ring_))
        throw RingError("ring mismatch in addition");
    // Merge of two canonically sorted term lists.
    Polynomial r;
    r.ring_ = ring_;
    std::size_t i = 0, j = 0;
    const auto& F = terms_;
    const auto& G = g.terms_;
    while (i < F.size() || j < G.size()) {
        if (j == G.size() || (i < F.size() && cmp_grevlex_full(F[i].mono, G[j].mono) > 0)) {
            r.terms_.push_back(F[i++]);
        } else if (i == F.size() || cmp_grevlex_full(G[j].mono, F[i].mono) > 0) {
            r.terms_.push_back(G[j++]);
        } else {
            mpq_class c = ring_->field().add(F[i].coeff, G[j].coeff);
            if (c != 0)
                r.terms_.push_back(Term{c, F[i].mono});
            ++i;
            ++j;
        }
    }
    return r;
}

Polynomial Polynomial::operator-() const
{
    Polynomial r;
    r.ring_ = ring_;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_)
        r.terms_.push_back(Term{ring_->field().neg(t.coeff), t.mono});
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& g) const
{
    return *this + (-g);
}

Polynomial Polynomial::operator*(const Polynomial& g) const
{
    if (!ring_->same_ring(*g.ring_))
        throw RingError("ring mismatch in multiplication");
    std::map<Monomial, mpq_class> acc;
    for (const auto& a : terms_)
        for (const auto& b : g.terms_)
            acc[a.mono.mul(b.mono)] += a.coeff * b.coeff;
    std::vector<Term> out;
    for (auto& [m, c] : acc) {
        mpq_class r = ring_->field().reduce(c);
        if (r != 0)
            out.push_back(Term{r, m});
    }
    return from_terms(ring_, std::move(out));
}

Polynomial Polynomial::scaled(const mpq_class& c) const
{
    mpq_class cc = ring_->field().reduce(c);
    Polynomial r;
    r.ring_ = ring_;
    if (cc == 0)
        return r;
    for (const auto& t : terms_)
        r.terms_.push_back(Term{ring_->field().mul(t.coeff, cc), t.mono});
    return r;
}

Polynomial Polynomial::pow(unsigned n) const
{
    Polynomial result = constant(ring_, 1);
    Polynomial base = *this;
    while (n) {
        if (n & 1)
            result = result * base;
        n >>= 1;
        if (n)
            base = base * base;
    }
    return result;
}

bool Polynomial::operator==(const Polynomial& g) const
{
    if (!ring_ || !g.ring_)
        return terms_.empty() && g.terms_.empty();
    if (!ring_->same_ring(*g.ring_))
        return false;
    if (terms_.size() != g.terms_.size())
        return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
        if (terms_[i].mono != g.terms_[i].mono || terms_[i].coeff != g.terms_[i].coeff)
            return false;
    return true;
}

long Polynomial::total_degree() const
{
    long d = -1;
    for (const auto& t : terms_)
        d = std::max(d, t.mono.total_degree());
    return d;
}

long Polynomial::degree_in(int var) const
{
    long d = 0;
    for (const auto& t : terms_)
        d = std::max<long>(d, t.mono[var]);
    return d;
}

std::optional<long> Polynomial::block_degree(int block) const
{
    if (terms_.empty())
        return std::nullopt;
    const auto& vars = ring_->blocks().at(block).vars;
    long d = terms_[0].mono.degree_on(vars);
    for (const auto& t : terms_)
        if (t.mono.degree_on(vars) != d)
            return std::nullopt;
    return d;
}

const Term& Polynomial::leading_term(const MonomialOrder& ord) const
{
    if (terms_.empty())
        throw RingError("leading term of zero polynomial");
    std::size_t best = 0;
    for (std::size_t i = 1; i < terms_.size(); ++i)
        if (ord.greater(terms_[i].mono, terms_[best].mono))
            best = i;
    return terms_[best];
}

Polynomial Polynomial::monic(const MonomialOrder& ord) const
{
    if (terms_.empty())
        return *this;
    return scaled(ring_->field().inv(leading_term(ord).coeff));
}

namespace {

void print_monomial(std::ostringstream& os, const PolyRing& ring, const Monomial& m)
{
    bool first = true;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0)
            continue;
        if (!first)
            os << "*";
        os << ring.var_name(static_cast<int>(i));
        if (m[i] > 1)
            os << "^" << m[i];
        first = false;
    }
}

std::string coeff_str(const mpq_class& c)
{
    mpq_class a = abs(c);
    return a.get_den() == 1 ? a.get_num().get_str() : a.get_str();
}

} // namespace

std::string Polynomial::to_string() const
{
    return to_string(MonomialOrder::grevlex());
}

std::string Polynomial::to_string(const MonomialOrder& ord) const
{
    if (terms_.empty())
        return "0";
    std::vector<const Term*> sorted;
    for (const auto& t : terms_)
        sorted.push_back(&t);
    std::stable_sort(sorted.begin(), sorted.end(), [&](const Term* a, const Term* b) {
        return ord.greater(a->mono, b->mono);
    });
    std::ostringstream os;
    bool first = true;
    for (const Term* t : sorted) {
        bool neg = t->coeff < 0;
        if (first) {
            if (neg)
                os << "-";
        } else {
            os << (neg ? " - " : " + ");
        }
        first = false;
        std::string cs = coeff_str(t->coeff);
        if (t->mono.is_one()) {
            os << cs;
        } else {
            if (cs != "1")
                os << cs << "*";
            print_monomial(os, *ring_, t->mono);
        }
    }
    return os.str();
}

Polynomial substitute(const Polynomial& f, const std::map<std::string, Polynomial>& images,
                      const RingPtr& target)
{
    if (f.ring()->field() != target->field())
        throw RingError("substitute: source and target fields differ");
    // Resolve images for exactly the variables that occur.
    std::vector<const Polynomial*> img(f.ring()->nvars(), nullptr);
    for (const auto& t : f.terms()) {
        for (std::size_t i = 0; i < t.mono.size(); ++i) {
            if (t.mono[i] == 0 || img[i])
                continue;
            auto it = images.find(f.ring()->var_name(static_cast<int>(i)));
            if (it == images.end())
                throw RingError("substitute: no image for variable '" +
                                f.ring()->var_name(static_cast<int>(i)) + "'");
            if (!it->second.ring()->same_ring(*target))
                throw RingError("substitute: image of '" + it->first + "' lives in a different ring");
            img[i] = &it->second;
        }
    }
    Polynomial result = Polynomial::zero(target);
    for (const auto& t : f.terms()) {
        Polynomial term = Polynomial::constant(target, t.coeff);
        for (std::size_t i = 0; i < t.mono.size(); ++i)
            if (t.mono[i] > 0)
                term = term * img[i]->pow(t.mono[i]);
        result = result + term;
    }
    return result;
}

Polynomial inject(const Polynomial& f, const RingPtr& target)
{
    if (f.ring()->same_ring(*target))
        return f;
    if (f.ring()->field() != target->field())
        throw RingError("inject: field mismatch");
    std::vector<int> where(f.ring()->nvars(), -1);
    for (std::size_t i = 0; i < f.ring()->nvars(); ++i)
        where[i] = target->var_index(f.ring()->var_name(static_cast<int>(i)));
    std::vector<Term> out;
    for (const auto& t : f.terms()) {
        Monomial m(target->nvars());
        for (std::size_t i = 0; i < t.mono.size(); ++i) {
            if (t.mono[i] == 0)
                continue;
            if (where[i] < 0)
                throw RingError("inject: variable '" + f.ring()->var_name(static_cast<int>(i)) +
                                "' is absent from target ring");
            m.set(where[i], t.mono[i]);
        }
        out.push_back(Term{t.coeff, m});
    }
    return Polynomial::from_terms(target, std::move(out));
}

Polynomial partial_derivative(const Polynomial& f, int var)
{
    if (var < 0 || var >= static_cast<int>(f.ring()->nvars()))
        throw RingError("partial_derivative: unknown variable");
    std::vector<Term> out;
    for (const auto& t : f.terms()) {
        if (t.mono[var] == 0)
            continue;
        Monomial m = t.mono;
        unsigned e = m[var];
        m.set(var, e - 1);
        out.push_back(Term{f.ring()->field().mul(t.coeff, mpq_class(e)), m});
    }
    return Polynomial::from_terms(f.ring(), std::move(out));
}

Polynomial partial_derivative(const Polynomial& f, const std::string& var)
{
    int i = f.ring()->var_index(var);
    if (i < 0)
        throw RingError("partial_derivative: unknown variable '" + var + "'");
    return partial_derivative(f, i);
}

Polynomial homogenize(const Polynomial& f, int block, const std::string& aux)
{
    const auto& ring = f.ring();
    int av = ring->var_index(aux);
    if (av < 0)
        throw RingError("homogenize: unknown variable '" + aux + "'");
    const auto& blk = ring->blocks().at(block);
    if (ring->block_of_var(av) != block)
        throw RingError("homogenize: variable '" + aux + "' does not belong to the block");
    long d = 0;
    for (const auto& t : f.terms())
        d = std::max(d, t.mono.degree_on(blk.vars));
    std::vector<Term> out;
    for (const auto& t : f.terms()) {
        Monomial m = t.mono;
        long gap = d - t.mono.degree_on(blk.vars);
        m.set(av, m[av] + static_cast<unsigned>(gap));
        out.push_back(Term{t.coeff, m});
    }
    return Polynomial::from_terms(ring, std::move(out));
}

Polynomial dehomogenize(const Polynomial& f, const std::string& var, const mpq_class& value)
{
    int v = f.ring()->var_index(var);
    if (v < 0)
        throw RingError("dehomogenize: unknown variable '" + var + "'");
    std::vector<Term> out;
    for (const auto& t : f.terms()) {
        Monomial m = t.mono;
        unsigned e = m[v];
        m.set(v, 0);
        mpq_class c = t.coeff;
        for (unsigned k = 0; k < e; ++k)
            c *= value;
        out.push_back(Term{f.ring()->field().reduce(c), m});
    }
    return Polynomial::from_terms(f.ring(), std::move(out));
}

std::optional<Polynomial> divide_exactly(const Polynomial& f, const Polynomial& g)
{
    if (g.is_zero())
        return std::nullopt;
    MonomialOrder ord = MonomialOrder::grevlex();
    Polynomial rem = f;
    Polynomial quot = Polynomial::zero(f.ring());
    const Term& lg = g.leading_term(ord);
    while (!rem.is_zero()) {
        const Term& lr = rem.leading_term(ord);
        if (!lg.mono.divides(lr.mono))
            return std::nullopt;
        Monomial q = lr.mono.div(lg.mono);
        mpq_class c = f.ring()->field().div(lr.coeff, lg.coeff);
        Polynomial qt = Polynomial::from_terms(f.ring(), {Term{c, q}});
        quot = quot + qt;
        rem = rem - qt * g;
    }
    return quot;
}

namespace {

// Smallest-index variable appearing in f or g; -1 when both are constants.
int pivot_variable(const Polynomial& f, const Polynomial& g)
{
    for (std::size_t i = 0; i < f.ring()->nvars(); ++i)
        if (f.degree_in(static_cast<int>(i)) > 0 || g.degree_in(static_cast<int>(i)) > 0)
            return static_cast<int>(i);
    return -1;
}

// View as univariate in `v`: coefficients indexed by the v-exponent.
std::vector<Polynomial> coeffs_in(const Polynomial& f, int v)
{
    long d = f.degree_in(v);
    std::vector<std::vector<Term>> buckets(static_cast<std::size_t>(d + 1));
    for (const auto& t : f.terms()) {
        Monomial m = t.mono;
        unsigned e = m[v];
        m.set(v, 0);
        buckets[e].push_back(Term{t.coeff, m});
    }
    std::vector<Polynomial> out;
    for (auto& b : buckets)
        out.push_back(Polynomial::from_terms(f.ring(), std::move(b)));
    return out;
}

// Normalize a nonzero polynomial to integer coprime coefficients with
// positive leading (canonical-order) coefficient.
Polynomial normalize_primitive(const Polynomial& f)
{
    if (f.is_zero())
        return f;
    mpz_class num_gcd = 0, den_lcm = 1;
    for (const auto& t : f.terms()) {
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.coeff.get_num().get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.coeff.get_den().get_mpz_t());
    }
    mpq_class scale(den_lcm, num_gcd);
    scale.canonicalize();
    Polynomial r = f.scaled(scale);
    if (r.terms().front().coeff < 0)
        r = -r;
    return r;
}

Polynomial gcd_recursive(Polynomial f, Polynomial g)
{
    if (f.is_zero())
        return normalize_primitive(g);
    if (g.is_zero())
        return normalize_primitive(f);
    int v = pivot_variable(f, g);
    if (v < 0)
        return Polynomial::constant(f.ring(), 1);

    auto content_and_primitive = [&](const Polynomial& p) {
        auto cs = coeffs_in(p, v);
        Polynomial cont = Polynomial::zero(p.ring());
        for (const auto& c : cs)
            cont = gcd_recursive(cont, c);
        auto q = divide_exactly(p, cont);
        return std::make_pair(cont, *q);
    };

    auto [cf, pf] = content_and_primitive(f);
    auto [cg, pg] = content_and_primitive(g);
    Polynomial cont = gcd_recursive(cf, cg);

    // Primitive Euclid on the pivot variable via pseudo-remainders.
    Polynomial a = pf, b = pg;
    if (a.degree_in(v) < b.degree_in(v))
        std::swap(a, b);
    while (!b.is_zero() && b.degree_in(v) > 0) {
        auto cb = coeffs_in(b, v);
        long db = static_cast<long>(cb.size()) - 1;
        Polynomial lb = cb.back();
        Polynomial rem = a;
        while (!rem.is_zero() && rem.degree_in(v) >= db) {
            auto cr = coeffs_in(rem, v);
            long dr = static_cast<long>(cr.size()) - 1;
            Polynomial xshift = Polynomial::variable(a.ring(), v).pow(static_cast<unsigned>(dr - db));
            rem = rem * lb - b * xshift * cr.back();
        }
        a = b;
        if (rem.is_zero()) {
            b = rem;
        } else {
            auto cp = content_and_primitive(rem);
            b = cp.second;
        }
    }
    // A nonzero final remainder free of v forces the v-primitive gcd to 1.
    Polynomial prim = b.is_zero() ? a : Polynomial::constant(f.ring(), 1);
    return normalize_primitive(cont * prim);
}

} // namespace

Polynomial poly_gcd(const Polynomial& f, const Polynomial& g)
{
    if (!f.ring()->same_ring(*g.ring()))
        throw RingError("poly_gcd: ring mismatch");
    return gcd_recursive(f, g);
}

} // namespace relcluster
