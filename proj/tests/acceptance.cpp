// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Every tolerance and time bound is pinned here.

#include "relcluster/cluster.hpp"
#include "relcluster/parse.hpp"
#include "relcluster/repro.hpp"
#include "relcluster/rng.hpp"
#include "relcluster/specdoc.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

using namespace relcluster;

namespace {

Polynomial oracle_random(SeededRng& rng, const RingPtr& ring, int max_exp = 3);

int failures = 0;

void report(int n, const std::string& what, bool pass, double ms, double budget_ms,
            const std::string& detail = "")
{
    bool ok = pass && ms < budget_ms;
    std::ostringstream os;
    os << (ok ? "PASS" : "FAIL") << " criterion " << n << ": " << what << " ["
       << static_cast<long>(ms) << " ms < " << static_cast<long>(budget_ms) << " ms]";
    if (!pass && !detail.empty())
        os << " -- " << detail;
    if (pass && ms >= budget_ms)
        os << " -- time budget exceeded";
    std::cout << os.str() << "\n";
    if (!ok)
        ++failures;
}

struct CheckSummary {
    bool pass = true;
    double ms = 0;
    std::string detail;
};

CheckSummary collect(const std::vector<ReproCheck>& checks, std::initializer_list<const char*> names)
{
    CheckSummary s;
    for (const char* name : names) {
        bool found = false;
        for (const auto& c : checks) {
            if (c.name != name)
                continue;
            found = true;
            s.ms += c.elapsed_ms;
            if (!c.pass) {
                s.pass = false;
                s.detail += std::string(name) + ": " + c.detail + "; ";
            }
        }
        if (!found) {
            s.pass = false;
            s.detail += std::string("missing check ") + name + "; ";
        }
    }
    return s;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    std::stringstream os;
    os << in.rdbuf();
    return os.str();
}

// ------------------------------------------------------------- criterion 7

CheckSummary base_change_suite()
{
    CheckSummary s;
    auto t0 = std::chrono::steady_clock::now();
    SeededRng rng(0xbcde1234ULL);
    int done = 0;
    while (done < 25 && s.pass) {
        auto R = PolyRing::make({"x", "y", "z", "w", "p", "q"});
        AmbientSpace amb(R);
        Subscheme X(amb, Ideal::zero(R));
        auto body = [&](std::initializer_list<const char*> vars) {
            Polynomial h = Polynomial::constant(R, rng.rational(4));
            for (const char* v : vars) {
                h = h + Polynomial::variable(R, v).scaled(rng.rational(4));
                if (rng.below(2))
                    h = h + (Polynomial::variable(R, v) * Polynomial::variable(R, "p"))
                                .scaled(rng.rational(3));
                if (rng.below(2))
                    h = h + (Polynomial::variable(R, v) * Polynomial::variable(R, "q"))
                                .scaled(rng.rational(3));
            }
            return h;
        };
        std::vector<Polynomial> gens;
        int shape = done % 3;
        if (shape == 0) {
            // principal flat centre of degree <= 2
            gens.push_back(Polynomial::variable(R, "x") - body({"y", "z"}));
        } else if (shape == 1) {
            gens.push_back(Polynomial::variable(R, "x") - body({"z", "w"}));
            gens.push_back(Polynomial::variable(R, "y") - body({"z", "w"}));
        } else {
            gens.push_back(Polynomial::variable(R, "x") - body({"w"}));
            gens.push_back(Polynomial::variable(R, "y") - body({"w"}));
            gens.push_back(Polynomial::variable(R, "z") - body({"w"}));
        }
        Ideal centre(R, gens);
        CommutationReport rep = base_change_commutation_check(
            X, centre, {"p", "q"}, {rng.rational(5, 2), rng.rational(5, 2)});
        if (rep.verdict != Commutation::commutes) {
            s.pass = false;
            s.detail = "instance " + std::to_string(done) + ": " + rep.detail;
        }
        ++done;
    }
    auto t1 = std::chrono::steady_clock::now();
    s.ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    if (s.pass)
        s.detail = "25 randomized flat centres commute";
    return s;
}

// ------------------------------------------------------------- criterion 8

CheckSummary engine_property_suite()
{
    CheckSummary s;
    auto t0 = std::chrono::steady_clock::now();
    auto fail = [&](const std::string& d) {
        s.pass = false;
        s.detail += d + "; ";
    };

    // (a) reduced-GB uniqueness under generator permutation, 50 seeded ideals
    {
        SeededRng rng(0x6bu);
        auto R = PolyRing::make({"x", "y", "z"});
        for (int trial = 0; trial < 50 && s.pass; ++trial) {
            std::vector<Polynomial> gens;
            int k = 2 + static_cast<int>(rng.below(3));
            for (int i = 0; i < k; ++i)
                gens.push_back(oracle_random(rng, R, 2));
            Ideal I(R, gens);
            std::vector<Polynomial> perm(gens.rbegin(), gens.rend());
            perm.push_back(gens.front());
            Ideal J(R, perm);
            if (!I.equals(J))
                fail("GB uniqueness failed at trial " + std::to_string(trial));
            auto a = I.groebner(), b = J.groebner();
            if (a.size() != b.size())
                fail("GB sizes differ");
            for (std::size_t i = 0; i < a.size() && i < b.size(); ++i)
                if (!(a[i] == b[i]))
                    fail("GB elements differ");
        }
    }

    // (b) Buchberger certificate on the acceptance ideals
    {
        auto R8 = PolyRing::make({"a", "b", "c", "d", "a2", "b2", "c2", "d2"});
        auto RP = PolyRing::make({"u", "v", "w"});
        auto RL = PolyRing::make({"x", "y"});
        std::vector<std::pair<Ideal, MonomialOrder>> instances;
        instances.emplace_back(
            Ideal(R8, {parse_polynomial("(a-a2)*(d-d2)-(b-b2)*(c-c2)", R8),
                       parse_polynomial("a-a2", R8), parse_polynomial("b-b2", R8)}),
            MonomialOrder::grevlex());
        instances.emplace_back(Ideal(RP, {parse_polynomial("u^2-v^2", RP),
                                          parse_polynomial("w*(u-v)", RP)}),
                               MonomialOrder::grevlex());
        instances.emplace_back(Ideal(RL, {parse_polynomial("x^2-1", RL),
                                          parse_polynomial("x*y-1", RL)}),
                               MonomialOrder::lex());
        instances.emplace_back(Ideal(R8, {parse_polynomial("a - c", R8),
                                          parse_polynomial("b - c^2", R8)}),
                               MonomialOrder::eliminating(*R8, {2}));
        // the pencil Rees ideal and a section image ideal, as computed
        {
            AmbientSpace amb8(R8);
            Subscheme X8(amb8, Ideal::zero(R8));
            Ideal centre(R8, {parse_polynomial("a-a2", R8), parse_polynomial("b-b2", R8)});
            BlowupResult bu = rees_blowup(X8, centre);
            instances.emplace_back(bu.rees_ideal(), MonomialOrder::grevlex());
        }
        {
            auto tring = PolyRing::make({"x", "y", "z", "t", "u", "v"},
                                        CoefficientField::rationals(),
                                        {GradingBlock{"P3", {0, 1, 2, 3}, true},
                                         GradingBlock{"P1", {4, 5}, true}});
            auto bring = PolyRing::make({"u", "v"}, CoefficientField::rationals(),
                                        {GradingBlock{"P1", {0, 1}, true}});
            AmbientSpace tot(tring);
            AmbientSpace base(bring);
            Family fam(Subscheme(tot, Ideal(tring, {parse_polynomial("u*y - v*x", tring)})),
                       base, {{Polynomial::variable(tring, "u"), Polynomial::variable(tring, "v")}});
            Polynomial u = Polynomial::variable(bring, "u"), v = Polynomial::variable(bring, "v");
            Section L1("L1", {{u, v, -u, v.scaled(2)}, {u, v}});
            instances.emplace_back(section_image(fam, L1).ideal(), MonomialOrder::grevlex());
        }
        for (const auto& [I, ord] : instances) {
            auto gb = I.groebner(ord);
            for (std::size_t i = 0; i < gb.size(); ++i)
                for (std::size_t j = i + 1; j < gb.size(); ++j)
                    if (!normal_form(s_polynomial(gb[i], gb[j], ord), gb, ord).is_zero())
                        fail("an S-polynomial does not reduce to zero");
            for (const auto& g : I.generators())
                if (!normal_form(g, gb, ord).is_zero())
                    fail("an input generator does not reduce to zero");
        }
    }

    // (c) saturation idempotence
    {
        auto R = PolyRing::make({"x", "y"});
        Ideal I(R, {parse_polynomial("x^2*y", R), parse_polynomial("x*y^2", R)});
        Ideal J(R, {parse_polynomial("x", R)});
        auto [sat, e1] = saturation(I, J);
        auto [sat2, e2] = saturation(sat, J);
        if (e2 != 0 || !sat2.equals(sat))
            fail("saturation is not idempotent");
        if (e1 != 2)
            fail("stabilizing exponent is wrong");
    }

    // (d) strict transform of the centre is the unit ideal
    {
        auto R8 = PolyRing::make({"a", "b", "c", "d", "a2", "b2", "c2", "d2"});
        AmbientSpace amb(R8);
        Subscheme X(amb, Ideal::zero(R8));
        Ideal centre(R8, {parse_polynomial("a-a2", R8), parse_polynomial("b-b2", R8)});
        BlowupResult b = rees_blowup(X, centre);
        for (const auto& I : strict_transform(b, Subscheme(amb, centre)))
            if (!I.is_unit())
                fail("strict transform of the centre is not the unit ideal");
    }

    // (e) blow-up at a principal nonzerodivisor ideal is an isomorphism, 10x
    {
        SeededRng rng(0x15eedULL);
        auto R = PolyRing::make({"x", "y", "z"});
        AmbientSpace amb(R);
        auto graph_body = [&](SeededRng& r) {
            // polynomial in x and y only, so V(z - h) is an integral graph
            std::vector<Term> ts;
            int k = 1 + static_cast<int>(r.below(4));
            for (int i = 0; i < k; ++i) {
                Monomial m(R->nvars());
                m.set(0, static_cast<unsigned>(r.below(3)));
                m.set(1, static_cast<unsigned>(r.below(3)));
                mpq_class c = r.rational(9, 3);
                ts.push_back(Term{c == 0 ? mpq_class(1) : c, m});
            }
            return Polynomial::from_terms(R, std::move(ts));
        };
        for (int trial = 0; trial < 10 && s.pass; ++trial) {
            Polynomial src = Polynomial::variable(R, "z") - graph_body(rng);
            Subscheme X(amb, Ideal(R, {src}));
            Polynomial f = oracle_random(rng, R, 2);
            if (f.is_zero() ||
                normal_form(f, X.ideal()).is_zero())
                continue;
            BlowupResult b = rees_blowup(X, Ideal(R, {f}));
            if (b.charts.size() != 1)
                fail("principal blow-up created charts");
            // X is integral (a graph), so the saturation is the identity
            if (!b.charts[0].ideal.equals(X.ideal()))
                fail("principal blow-up changed the chart ideal at trial " +
                     std::to_string(trial));
        }
    }

    auto t1 = std::chrono::steady_clock::now();
    s.ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    if (s.pass)
        s.detail = "uniqueness, certificates, saturation, transforms, isomorphisms";
    return s;
}

// ------------------------------------------------------------- criterion 9

CheckSummary cli_suite()
{
    CheckSummary s;
    auto t0 = std::chrono::steady_clock::now();
    std::string tmp = std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp";
    auto shell = [&](const std::string& args, const std::string& outfile) {
        std::string cmd = std::string(RELCLUSTER_BIN) + " " + args + " > " + outfile +
                          " 2>/dev/null";
        return WEXITSTATUS(std::system(cmd.c_str()));
    };
    for (const char* id : {"ex1", "ex2", "ex3"}) {
        int rc = shell(std::string("repro ") + id, tmp + "/acc_repro.txt");
        if (rc != 0) {
            s.pass = false;
            s.detail += std::string("repro ") + id + " exited " + std::to_string(rc) + "; ";
        }
    }
    // byte-identical reports across two runs
    std::string spec = std::string(RELCLUSTER_SPEC_DIR) + "/ex3.rcs";
    if (shell("run " + spec + " --seed 7", tmp + "/acc_a.json") != 0 ||
        shell("run " + spec + " --seed 7", tmp + "/acc_b.json") != 0) {
        s.pass = false;
        s.detail += "spec run failed; ";
    } else if (read_file(tmp + "/acc_a.json") != read_file(tmp + "/acc_b.json")) {
        s.pass = false;
        s.detail += "reports are not byte-identical; ";
    }
    // round-trip fixpoint of the shipped specs
    for (const char* name : {"ex1.rcs", "ex2.rcs", "ex3.rcs"}) {
        std::string text = read_file(std::string(RELCLUSTER_SPEC_DIR) + "/" + name);
        SpecDocument doc = parse_specdoc(text);
        std::string ser = serialize_specdoc(doc);
        if (serialize_specdoc(parse_specdoc(ser)) != ser) {
            s.pass = false;
            s.detail += std::string(name) + " round trip not a fixpoint; ";
        }
    }
    auto t1 = std::chrono::steady_clock::now();
    s.ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    if (s.pass)
        s.detail = "repro suites pass; reports deterministic; specs round-trip";
    return s;
}

// small local random-poly helper
Polynomial oracle_random(SeededRng& rng, const RingPtr& ring, int max_exp)
{
    std::vector<Term> ts;
    int k = 1 + static_cast<int>(rng.below(4));
    for (int i = 0; i < k; ++i) {
        Monomial m(ring->nvars());
        for (std::size_t v = 0; v < ring->nvars(); ++v)
            m.set(v, static_cast<unsigned>(rng.below(static_cast<std::uint64_t>(max_exp + 1))));
        mpq_class c = rng.rational(9, 3);
        if (c == 0)
            c = 1;
        ts.push_back(Term{c, m});
    }
    return Polynomial::from_terms(ring, std::move(ts));
}

} // namespace

int main()
{
    const std::uint64_t seed = 20240101;
    std::cout << "relcluster acceptance suite (seed " << seed << ")\n";

    auto ex1 = repro_example(1, seed);
    auto ex2 = repro_example(2, seed);
    auto ex3 = repro_example(3, seed);

    {
        auto s = collect(ex3, {"blowup-equation"});
        report(1, "pencil blow-up equation is E1*(a-a2) - E0*(b-b2)", s.pass, s.ms, 1000,
               s.detail);
    }
    {
        auto s = collect(ex3, {"singular-locus-diagonal"});
        report(2, "singular locus of the quadric equals the diagonal (radical)", s.pass, s.ms,
               5000, s.detail);
    }
    {
        auto s = collect(ex3, {"simple-points"});
        report(3, "20 vanishing pairs meet at simple points; 20 others are disjoint", s.pass,
               s.ms, 30000, s.detail);
    }
    {
        auto s = collect(ex3, {"strict-transform", "lift-ratio-identity", "alternative-centre"});
        report(4, "strict transform, lifted ratios and both alternative centres", s.pass, s.ms,
               30000, s.detail);
    }
    {
        auto s = collect(ex2, {"swap-not-admissible", "constant-pairs-admissible",
                               "nonconstant-grid"});
        report(5, "plane-product admissibility matches the constant-only classification",
               s.pass, s.ms, 60000, s.detail);
    }
    {
        auto s = collect(ex1, {"lattice-grid", "section-classes"});
        report(6, "Hirzebruch lattice numbers and section classes on the grid", s.pass, s.ms,
               1000, s.detail);
    }
    {
        auto s = base_change_suite();
        report(7, "25 randomized flat centres commute with specialization", s.pass, s.ms, 60000,
               s.detail);
    }
    {
        auto s = engine_property_suite();
        report(8, "engine property suites", s.pass, s.ms, 120000, s.detail);
    }
    {
        auto s = cli_suite();
        report(9, "CLI golden tests (repro, determinism, round-trip)", s.pass, s.ms, 300000,
               s.detail);
    }

    if (failures) {
        std::cout << failures << " criterion(s) FAILED\n";
        return 1;
    }
    std::cout << "all 9 criteria PASSED\n";
    return 0;
}
