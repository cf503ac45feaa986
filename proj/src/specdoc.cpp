#include "relcluster/specdoc.hpp"
#include "relcluster/parse.hpp"
#include "relcluster/rng.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

namespace relcluster {

namespace {

std::vector<std::string> split_ws(const std::string& s)
{
    std::istringstream is(s);
    std::vector<std::string> out;
    std::string tok;
    while (is >> tok)
        out.push_back(tok);
    return out;
}

std::string trim(const std::string& s)
{
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos)
        return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_semis(const std::string& s)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ';') {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

mpq_class parse_rational_token(const std::string& tok, std::size_t line)
{
    try {
        mpq_class q(tok);
        q.canonicalize();
        return q;
    } catch (const std::exception&) {
        throw SpecError(line, "bad rational literal '" + tok + "'");
    }
}

const std::vector<std::string> kKeywords = {"ring",   "ambient", "ideal",  "subscheme",
                                            "family", "section", "query"};

} // namespace

SpecDocument parse_specdoc(const std::string& text)
{
    SpecDocument doc;
    std::istringstream is(text);
    std::string raw;
    std::size_t lineno = 0;
    SpecDocument::Block* open = nullptr;
    while (std::getline(is, raw)) {
        ++lineno;
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#')
            continue;
        auto toks = split_ws(line);
        const std::string& head = toks[0];
        if (!open) {
            if (std::find(kKeywords.begin(), kKeywords.end(), head) == kKeywords.end())
                throw SpecError(lineno, "expected a declaration keyword, got '" + head + "'");
            if (toks.size() != 2)
                throw SpecError(lineno, "'" + head + "' takes exactly one name");
            doc.blocks.push_back(SpecDocument::Block{head, toks[1], {}, lineno});
            open = &doc.blocks.back();
        } else if (head == "end") {
            if (toks.size() != 1)
                throw SpecError(lineno, "'end' takes no arguments");
            open = nullptr;
        } else {
            std::string payload = trim(line.substr(head.size()));
            open->fields.emplace_back(head, payload);
        }
    }
    if (open)
        throw SpecError(lineno, "unterminated '" + open->keyword + " " + open->name + "' block");
    return doc;
}

std::string serialize_specdoc(const SpecDocument& doc)
{
    std::ostringstream os;
    for (const auto& b : doc.blocks) {
        os << b.keyword << " " << b.name << "\n";
        for (const auto& [k, v] : b.fields)
            os << "  " << k << (v.empty() ? "" : " " + v) << "\n";
        os << "end\n";
    }
    return os.str();
}

namespace {

struct UndeclaredName : DomainError {
    using DomainError::DomainError;
};

struct BoundBlowup {
    BlowupResult blowup;
    std::string source; // subscheme name
};

// Name environment built while executing a document.
struct Env {
    std::map<std::string, RingPtr> rings;
    std::map<std::string, AmbientSpace> ambients;
    std::map<std::string, std::string> ambient_ring; // ambient name -> ring name
    std::map<std::string, Ideal> ideals;
    std::map<std::string, Subscheme> subschemes;
    std::map<std::string, Family> families;
    std::map<std::string, std::string> section_family;
    std::map<std::string, Section> sections;
    std::map<std::string, BoundBlowup> blowups;

    template <typename M>
    const typename M::mapped_type& get(const M& m, const std::string& name,
                                       const std::string& what) const
    {
        auto it = m.find(name);
        if (it == m.end())
            throw UndeclaredName("undeclared " + what + " '" + name + "'");
        return it->second;
    }
};

ordered_json gens_json(const std::vector<Polynomial>& gens)
{
    ordered_json a = ordered_json::array();
    for (const auto& g : gens)
        a.push_back(g.to_string());
    if (a.empty())
        a.push_back("0");
    return a;
}

ordered_json basis_json(const Ideal& I, const GBOptions& opts)
{
    auto gb = I.groebner(MonomialOrder::grevlex(), opts);
    ordered_json a = ordered_json::array();
    for (const auto& g : gb)
        a.push_back(g.to_string());
    if (a.empty())
        a.push_back("0");
    return a;
}

std::string hilbert_poly_string(const std::vector<mpq_class>& hp)
{
    if (hp.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = hp.size(); i-- > 0;) {
        if (hp[i] == 0)
            continue;
        mpq_class c = hp[i];
        if (first) {
            if (c < 0)
                os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        mpq_class a = abs(c);
        if (a != 1 || i == 0)
            os << a.get_str();
        if (i > 0) {
            if (a != 1)
                os << "*";
            os << "n";
            if (i > 1)
                os << "^" << i;
        }
    }
    return first ? "0" : os.str();
}

// The single `field value...` of a block, with uniqueness enforcement.
class FieldView {
public:
    FieldView(const SpecDocument::Block& b) : b_(b) {}

    std::optional<std::string> maybe(const std::string& key) const
    {
        std::optional<std::string> found;
        for (const auto& [k, v] : b_.fields)
            if (k == key) {
                if (found)
                    throw DomainError("duplicate field '" + key + "' in '" + b_.keyword + " " +
                                      b_.name + "'");
                found = v;
            }
        return found;
    }

    std::string require(const std::string& key) const
    {
        auto v = maybe(key);
        if (!v)
            throw DomainError("missing field '" + key + "' in '" + b_.keyword + " " + b_.name +
                              "'");
        return *v;
    }

    std::vector<std::string> all(const std::string& key) const
    {
        std::vector<std::string> out;
        for (const auto& [k, v] : b_.fields)
            if (k == key)
                out.push_back(v);
        return out;
    }

private:
    const SpecDocument::Block& b_;
};

class Executor {
public:
    Executor(const ExecOptions& opts) : opts_(opts) {}

    Report run(const SpecDocument& doc, const std::string& raw_text)
    {
        Report rep;
        rep.input_digest = "fnv1a64:" + fnv1a64_hex(raw_text);
        rep.seed = opts_.seed;
        if (opts_.field_override && !opts_.field_override->is_rationals()) {
            rep.field_of_definition = opts_.field_override->to_string();
            rep.heuristic_field = true;
        }
        for (const auto& b : doc.blocks) {
            if (b.keyword == "query") {
                QueryResult qr;
                qr.kind = b.name;
                auto t0 = std::chrono::steady_clock::now();
                try {
                    qr.data = execute_query(b);
                } catch (const UndeclaredName& e) {
                    throw SpecError(b.line, e.what()); // validation, aborts the run
                } catch (const std::exception& e) {
                    qr.ok = false;
                    qr.error = e.what();
                }
                auto t1 = std::chrono::steady_clock::now();
                qr.elapsed_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
                rep.results.push_back(std::move(qr));
            } else {
                try {
                    declare(b); // declaration failures abort the whole run
                } catch (const SpecError&) {
                    throw;
                } catch (const std::exception& e) {
                    throw SpecError(b.line, e.what());
                }
            }
        }
        // Echo the family hypothesis flags.
        ordered_json fams = ordered_json::object();
        for (const auto& [name, fam] : env_.families) {
            ordered_json flags = ordered_json::array();
            if (fam.assumptions().flat)
                flags.push_back("flat");
            if (fam.assumptions().separated)
                flags.push_back("separated");
            if (fam.assumptions().surjective)
                flags.push_back("surjective");
            if (fam.assumptions().generic_fibre_integral)
                flags.push_back("integral");
            fams[name] = flags;
        }
        rep.assumptions = fams;
        rep.include_timings = opts_.timings;
        return rep;
    }

    void declare(const SpecDocument::Block& b)
    {
        FieldView f(b);
        if (b.keyword == "ring")
            declare_ring(b, f);
        else if (b.keyword == "ambient") {
            const RingPtr& ring = env_.get(env_.rings, f.require("ring"), "ring");
            env_.ambients.emplace(b.name, AmbientSpace(ring));
            env_.ambient_ring.emplace(b.name, f.require("ring"));
        } else if (b.keyword == "ideal") {
            const RingPtr& ring = env_.get(env_.rings, f.require("ring"), "ring");
            std::vector<Polynomial> gens;
            for (const auto& g : f.all("gen"))
                gens.push_back(parse_polynomial(g, ring));
            env_.ideals.emplace(b.name, Ideal(ring, std::move(gens)));
        } else if (b.keyword == "subscheme") {
            const AmbientSpace& amb = env_.get(env_.ambients, f.require("ambient"), "ambient");
            std::vector<Polynomial> gens;
            for (const auto& g : f.all("gen"))
                gens.push_back(parse_polynomial(g, amb.ring()));
            env_.subschemes.emplace(b.name, Subscheme(amb, Ideal(amb.ring(), std::move(gens))));
        } else if (b.keyword == "family") {
            declare_family(b, f);
        } else if (b.keyword == "section") {
            const Family& fam = env_.get(env_.families, f.require("family"), "family");
            std::vector<std::vector<Polynomial>> coords;
            for (const auto& line : f.all("coords")) {
                std::vector<Polynomial> comps;
                for (const auto& e : split_semis(line))
                    comps.push_back(parse_polynomial(e, fam.base().ring()));
                coords.push_back(std::move(comps));
            }
            Section s(b.name, std::move(coords));
            verify_section(fam, s, opts_.gb);
            env_.sections.emplace(b.name, std::move(s));
            env_.section_family.emplace(b.name, f.require("family"));
        } else {
            throw DomainError("unknown declaration '" + b.keyword + "'");
        }
    }

private:
    void declare_ring(const SpecDocument::Block& b, const FieldView& f)
    {
        CoefficientField field = CoefficientField::rationals();
        auto ftoks = split_ws(f.require("field"));
        if (ftoks.size() == 1 && ftoks[0] == "Q")
            field = CoefficientField::rationals();
        else if (ftoks.size() == 2 && ftoks[0] == "Fp")
            field = CoefficientField::prime(std::stol(ftoks[1]));
        else
            throw DomainError("ring field must be 'Q' or 'Fp <prime>'");
        if (opts_.field_override)
            field = *opts_.field_override;
        std::vector<std::string> vars;
        std::vector<GradingBlock> blocks;
        for (const auto& line : f.all("block")) {
            auto toks = split_ws(line);
            if (toks.size() < 2 || (toks[0] != "proj" && toks[0] != "affine"))
                throw DomainError("block line must be 'proj|affine v1 v2 ...'");
            GradingBlock gb;
            gb.projective = toks[0] == "proj";
            gb.name = (gb.projective ? "P" : "A") + std::to_string(blocks.size());
            for (std::size_t i = 1; i < toks.size(); ++i) {
                gb.vars.push_back(static_cast<int>(vars.size()));
                vars.push_back(toks[i]);
            }
            blocks.push_back(std::move(gb));
        }
        if (vars.empty())
            throw DomainError("ring '" + b.name + "' declares no variables");
        env_.rings.emplace(b.name, PolyRing::make(vars, field, blocks));
    }

    void declare_family(const SpecDocument::Block& b, const FieldView& f)
    {
        const Subscheme& total = env_.get(env_.subschemes, f.require("total"), "subscheme");
        const AmbientSpace& base = env_.get(env_.ambients, f.require("base"), "ambient");
        std::vector<std::vector<Polynomial>> projection;
        for (const auto& line : f.all("map")) {
            std::vector<Polynomial> comps;
            for (const auto& e : split_semis(line))
                comps.push_back(parse_polynomial(e, total.ambient().ring()));
            projection.push_back(std::move(comps));
        }
        FamilyAssumptions as;
        if (auto flags = f.maybe("flags")) {
            as = FamilyAssumptions{false, false, false, false};
            for (const auto& t : split_ws(*flags)) {
                if (t == "flat")
                    as.flat = true;
                else if (t == "separated")
                    as.separated = true;
                else if (t == "surjective")
                    as.surjective = true;
                else if (t == "integral")
                    as.generic_fibre_integral = true;
                else
                    throw DomainError("unknown family flag '" + t + "'");
            }
        }
        env_.families.emplace(b.name, Family(total, base, std::move(projection), as, opts_.gb));
    }

    std::string canonical_list(const std::string& payload, const RingPtr& ring)
    {
        std::ostringstream os;
        auto parts = split_semis(payload);
        for (std::size_t i = 0; i < parts.size(); ++i)
            os << (i ? " ; " : "") << parse_polynomial(parts[i], ring).to_string();
        return os.str();
    }

    ordered_json execute_query(const SpecDocument::Block& b)
    {
        FieldView f(b);
        const std::string& kind = b.name;
        if (kind == "gb")
            return query_gb(f);
        if (kind == "eliminate")
            return query_eliminate(f);
        if (kind == "saturate")
            return query_saturate(f);
        if (kind == "hilbert")
            return query_hilbert(f);
        if (kind == "image")
            return query_image(f);
        if (kind == "singular")
            return query_singular(f);
        if (kind == "cartier")
            return query_cartier(f);
        if (kind == "blowup")
            return query_blowup(f);
        if (kind == "strict")
            return query_strict(f);
        if (kind == "lift")
            return query_lift(f);
        if (kind == "pair")
            return query_pair(f);
        if (kind == "cluster")
            return query_cluster(f);
        if (kind == "stratify")
            return query_stratify(f);
        if (kind == "hirzebruch")
            return query_hirzebruch(f);
        throw DomainError("unknown query kind '" + kind + "'");
    }

    ordered_json query_gb(const FieldView& f)
    {
        const Ideal& I = env_.get(env_.ideals, f.require("ideal"), "ideal");
        MonomialOrder ord = MonomialOrder::grevlex();
        std::string oname = "grevlex";
        if (auto o = f.maybe("order")) {
            oname = *o;
            if (*o == "lex")
                ord = MonomialOrder::lex();
            else if (*o != "grevlex")
                throw DomainError("order must be grevlex or lex");
        }
        auto gb = I.groebner(ord, opts_.gb);
        ordered_json j;
        j["ideal"] = f.require("ideal");
        j["order"] = oname;
        ordered_json a = ordered_json::array();
        for (const auto& g : gb)
            a.push_back(g.to_string(ord));
        if (a.empty())
            a.push_back("0");
        j["basis"] = a;
        return j;
    }

    ordered_json query_eliminate(const FieldView& f)
    {
        const Ideal& I = env_.get(env_.ideals, f.require("ideal"), "ideal");
        auto vars = split_ws(f.require("vars"));
        Ideal out = eliminate(I, vars, opts_.gb);
        ordered_json j;
        j["ideal"] = f.require("ideal");
        j["vars"] = vars;
        j["ring"] = out.ring()->to_string();
        j["generators"] = gens_json(out.generators());
        return j;
    }

    ordered_json query_saturate(const FieldView& f)
    {
        const Ideal& I = env_.get(env_.ideals, f.require("ideal"), "ideal");
        const Ideal& J = env_.get(env_.ideals, f.require("by"), "ideal");
        auto [sat, expo] = saturation(I, J, opts_.gb);
        ordered_json j;
        j["ideal"] = f.require("ideal");
        j["by"] = f.require("by");
        j["exponent"] = expo;
        j["generators"] = basis_json(sat, opts_.gb);
        return j;
    }

    ordered_json query_hilbert(const FieldView& f)
    {
        const Ideal& I = env_.get(env_.ideals, f.require("ideal"), "ideal");
        HilbertData hd = hilbert(I, opts_.gb);
        ordered_json j;
        j["ideal"] = f.require("ideal");
        j["dimension"] = hd.dimension;
        j["degree"] = hd.degree.get_str();
        j["hilbert_polynomial"] = hilbert_poly_string(hd.hilbert_polynomial);
        ordered_json num = ordered_json::array();
        for (const auto& c : hd.series_numerator)
            num.push_back(c.get_str());
        j["series_numerator"] = num;
        j["regularity"] = hd.regularity;
        return j;
    }

    ordered_json query_image(const FieldView& f)
    {
        Subscheme img;
        ordered_json j;
        if (auto sname = f.maybe("section")) {
            const Section& s = env_.get(env_.sections, *sname, "section");
            const Family& fam =
                env_.get(env_.families, env_.section_family.at(*sname), "family");
            img = section_image(fam, s, opts_.gb);
            j["section"] = *sname;
        } else {
            const Subscheme& src = env_.get(env_.subschemes, f.require("source"), "subscheme");
            const AmbientSpace& tgt = env_.get(env_.ambients, f.require("target"), "ambient");
            std::vector<std::vector<Polynomial>> map_blocks;
            for (const auto& line : f.all("map")) {
                std::vector<Polynomial> comps;
                for (const auto& e : split_semis(line))
                    comps.push_back(parse_polynomial(e, src.ambient().ring()));
                map_blocks.push_back(std::move(comps));
            }
            img = scheme_image(map_blocks, src, tgt, opts_.gb);
            j["source"] = f.require("source");
        }
        j["generators"] = gens_json(img.ideal().generators());
        j["dimension"] = subscheme_dimension(img, opts_.gb);
        return j;
    }

    ordered_json query_singular(const FieldView& f)
    {
        const Subscheme& X = env_.get(env_.subschemes, f.require("subscheme"), "subscheme");
        Subscheme sing = singular_locus(X, opts_.gb);
        ordered_json j;
        j["subscheme"] = f.require("subscheme");
        j["generators"] = basis_json(sing.ideal(), opts_.gb);
        j["empty"] = subscheme_is_empty(sing, opts_.gb);
        return j;
    }

    ordered_json query_cartier(const FieldView& f)
    {
        const Subscheme& Z = env_.get(env_.subschemes, f.require("divisor"), "subscheme");
        const Subscheme& X = env_.get(env_.subschemes, f.require("in"), "subscheme");
        CartierResult res = is_effective_cartier_divisor(Z, X, opts_.gb);
        ordered_json j;
        j["divisor"] = f.require("divisor");
        j["in"] = f.require("in");
        j["verdict"] = verdict_name(res.verdict);
        j["reason"] = res.reason;
        ordered_json charts = ordered_json::array();
        for (const auto& c : res.charts) {
            ordered_json e;
            e["chart"] = c.chart;
            e["generator"] = c.generator;
            e["principal"] = c.principal;
            charts.push_back(std::move(e));
        }
        j["charts"] = charts;
        return j;
    }

    ordered_json blowup_json(const BlowupResult& res)
    {
        ordered_json j;
        j["rees_generators"] = basis_json(res.rees_ideal(), opts_.gb);
        j["exceptional_names"] = res.e_names;
        ordered_json charts = ordered_json::array();
        for (const auto& c : res.charts) {
            ordered_json e;
            e["chart"] = c.label;
            e["generators"] = basis_json(c.ideal, opts_.gb);
            e["exceptional"] = c.exceptional.to_string();
            charts.push_back(std::move(e));
        }
        j["charts"] = charts;
        return j;
    }

    ordered_json query_blowup(const FieldView& f)
    {
        const Subscheme& X = env_.get(env_.subschemes, f.require("source"), "subscheme");
        const Ideal& centre = env_.get(env_.ideals, f.require("centre"), "ideal");
        std::vector<std::string> names;
        if (auto n = f.maybe("names"))
            names = split_ws(*n);
        BlowupResult res = rees_blowup(X, centre, names, opts_.gb);
        ordered_json j;
        j["source"] = f.require("source");
        j["centre"] = f.require("centre");
        ordered_json body = blowup_json(res);
        for (auto it = body.begin(); it != body.end(); ++it)
            j[it.key()] = it.value();
        if (auto as = f.maybe("as"))
            env_.blowups[*as] = BoundBlowup{std::move(res), f.require("source")};
        return j;
    }

    ordered_json query_strict(const FieldView& f)
    {
        const BoundBlowup& b = env_.get(env_.blowups, f.require("blowup"), "blowup binding");
        const Subscheme& Z = env_.get(env_.subschemes, f.require("of"), "subscheme");
        auto strict = strict_transform(b.blowup, Z, opts_.gb);
        auto total = total_transform(b.blowup, Z, opts_.gb);
        ordered_json j;
        j["blowup"] = f.require("blowup");
        j["of"] = f.require("of");
        ordered_json charts = ordered_json::array();
        for (std::size_t i = 0; i < strict.size(); ++i) {
            ordered_json e;
            e["chart"] = b.blowup.charts[i].label;
            e["total"] = basis_json(total[i], opts_.gb);
            e["strict"] = basis_json(strict[i], opts_.gb);
            charts.push_back(std::move(e));
        }
        j["charts"] = charts;
        return j;
    }

    ordered_json query_lift(const FieldView& f)
    {
        const Family& fam = env_.get(env_.families, f.require("family"), "family");
        const Section& at = env_.get(env_.sections, f.require("at"), "section");
        const Section& target = env_.get(env_.sections, f.require("lift"), "section");
        ClusterSpec spec = build_cluster(
            fam, {ClusterStepSpec::explicit_coords(at), ClusterStepSpec::lift_of(target)},
            opts_.gb);
        const Section& lifted = spec.steps[1].section;
        ordered_json j;
        j["family"] = f.require("family");
        j["at"] = f.require("at");
        j["lift"] = f.require("lift");
        ordered_json ratios = ordered_json::array();
        for (const auto& r : lifted.coords().back())
            ratios.push_back(r.to_string());
        j["ratios"] = ratios;
        j["certified"] = true;
        j["infinitely_near"] = spec.steps[1].infinitely_near;
        return j;
    }

    ordered_json pair_json(const PairAnalysis& pa)
    {
        ordered_json j;
        j["first"] = pa.first;
        j["second"] = pa.second;
        j["verdict"] = verdict_name(pa.verdict);
        j["dimension"] = pa.dimension;
        if (pa.degree)
            j["degree"] = pa.degree->get_str();
        j["intersection"] = gens_json(pa.intersection.ideal().generators());
        j["certificate"] = pa.certificate;
        return j;
    }

    ordered_json query_pair(const FieldView& f)
    {
        const Section& s = env_.get(env_.sections, f.require("first"), "section");
        const Section& t = env_.get(env_.sections, f.require("second"), "section");
        const Family& fam = env_.get(env_.families, f.require("family"), "family");
        return pair_json(analyze_pair(fam, s, t, opts_.gb));
    }

    ordered_json query_cluster(const FieldView& f)
    {
        const Family& fam = env_.get(env_.families, f.require("family"), "family");
        std::vector<ClusterStepSpec> steps;
        for (const auto& line : f.all("step")) {
            auto toks = split_ws(line);
            if (toks.size() == 1)
                steps.push_back(
                    ClusterStepSpec::explicit_coords(env_.get(env_.sections, toks[0], "section")));
            else if (toks.size() == 2 && toks[0] == "lift")
                steps.push_back(
                    ClusterStepSpec::lift_of(env_.get(env_.sections, toks[1], "section")));
            else
                throw DomainError("step line must be '<section>' or 'lift <section>'");
        }
        ClusterSpec spec = build_cluster(fam, steps, opts_.gb);
        ordered_json j;
        j["family"] = f.require("family");
        ordered_json arr = ordered_json::array();
        for (const auto& st : spec.steps) {
            ordered_json e;
            e["section"] = st.section.name();
            e["infinitely_near"] = st.infinitely_near;
            e["centre"] = gens_json(st.centre.generators());
            e["exceptional_names"] = st.blowup.e_names;
            arr.push_back(std::move(e));
        }
        j["steps"] = arr;
        return j;
    }

    ordered_json query_stratify(const FieldView& f)
    {
        const Family& fam = env_.get(env_.families, f.require("family"), "family");
        StratumReport rep;
        if (auto par = f.maybe("parametric")) {
            auto toks = split_ws(*par);
            if (toks.size() != 3)
                throw DomainError("parametric takes '<coordring> <sigma> <tau>'");
            ParamPairFamily ppf;
            ppf.coord_ring = env_.get(env_.rings, toks[0], "ring");
            ppf.params = split_ws(f.require("params"));
            ppf.sigma = parse_param_section(f, "sigma", toks[1], ppf.coord_ring);
            ppf.tau = parse_param_section(f, "tau", toks[2], ppf.coord_ring);
            std::vector<std::vector<mpq_class>> points;
            for (const auto& line : f.all("point")) {
                std::vector<mpq_class> pt;
                for (const auto& t : split_ws(line))
                    pt.push_back(parse_rational_token(t, 0));
                points.push_back(std::move(pt));
            }
            if (auto samples = f.maybe("samples")) {
                long n = std::stol(*samples);
                SeededRng rng(opts_.seed);
                for (long i = 0; i < n; ++i) {
                    std::vector<mpq_class> pt;
                    for (std::size_t k = 0; k < ppf.params.size(); ++k)
                        pt.push_back(rng.rational(5, 2));
                    points.push_back(std::move(pt));
                }
            }
            rep = stratify_param_pairs(fam, ppf, points, opts_.gb);
        } else {
            std::vector<PairInput> pairs;
            for (const auto& line : f.all("pair")) {
                auto toks = split_ws(line);
                if (toks.size() != 2)
                    throw DomainError("pair line must be '<first> <second>'");
                pairs.push_back(PairInput{env_.get(env_.sections, toks[0], "section"),
                                          env_.get(env_.sections, toks[1], "section"),
                                          toks[0] + "," + toks[1]});
            }
            rep = stratify_pairs(fam, pairs, opts_.gb);
        }
        ordered_json j;
        j["family"] = f.require("family");
        ordered_json groups = ordered_json::array();
        for (const auto& g : rep.groups) {
            ordered_json e;
            e["stratum"] = g.key.to_string();
            e["members"] = g.members;
            e["representative"] = pair_json(g.representative);
            groups.push_back(std::move(e));
        }
        j["groups"] = groups;
        ordered_json errs = ordered_json::array();
        for (const auto& [label, msg] : rep.errors) {
            ordered_json e;
            e["pair"] = label;
            e["error"] = msg;
            errs.push_back(std::move(e));
        }
        j["errors"] = errs;
        return j;
    }

    Section parse_param_section(const FieldView& f, const std::string& role,
                                const std::string& name, const RingPtr& coord_ring)
    {
        // coordinate lines: `sigma_coords e ; e | tau_coords ...`
        std::vector<std::vector<Polynomial>> coords;
        for (const auto& line : f.all(role + "_coords")) {
            std::vector<Polynomial> comps;
            for (const auto& e : split_semis(line))
                comps.push_back(parse_polynomial(e, coord_ring));
            coords.push_back(std::move(comps));
        }
        if (coords.empty())
            throw DomainError("parametric stratify needs " + role + "_coords lines");
        return Section(name, std::move(coords));
    }

    ordered_json query_hirzebruch(const FieldView& f)
    {
        long e = std::stol(f.require("e"));
        auto d1t = split_ws(f.require("d1"));
        auto d2t = split_ws(f.require("d2"));
        if (d1t.size() != 2 || d2t.size() != 2)
            throw DomainError("d1/d2 take two integers n m");
        HirzebruchClass d1{std::stol(d1t[0]), std::stol(d1t[1])};
        HirzebruchClass d2{std::stol(d2t[0]), std::stol(d2t[1])};
        ordered_json j;
        j["e"] = e;
        j["d1"] = {d1.n, d1.m};
        j["d2"] = {d2.n, d2.m};
        j["intersection"] = hirzebruch_intersection(e, d1, d2);
        j["d1_is_section_class"] = hirzebruch_is_section_class(e, d1);
        j["d2_is_section_class"] = hirzebruch_is_section_class(e, d2);
        return j;
    }

    ExecOptions opts_;
    Env env_;
};

} // namespace

Report run_specdoc(const std::string& text, const ExecOptions& opts)
{
    SpecDocument doc = parse_specdoc(text);
    Executor ex(opts);
    return ex.run(doc, text);
}

} // namespace relcluster
