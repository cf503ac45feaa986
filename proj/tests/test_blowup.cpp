#include <doctest.h>

#include "oracle.hpp"
#include "relcluster/blowup.hpp"
#include "relcluster/parse.hpp"

using namespace relcluster;

namespace {

AmbientSpace A8()
{
    return AmbientSpace(PolyRing::make({"a", "b", "c", "d", "a2", "b2", "c2", "d2"}));
}

Ideal ideal_of(const RingPtr& R, std::initializer_list<const char*> gens)
{
    std::vector<Polynomial> gs;
    for (const char* e : gens)
        gs.push_back(parse_polynomial(e, R));
    return Ideal(R, std::move(gs));
}

} // namespace

TEST_CASE("classical blow-up of the plane at the origin")
{
    auto amb = AmbientSpace(PolyRing::make({"x", "y"}));
    Subscheme X(amb, Ideal::zero(amb.ring()));
    BlowupResult b = rees_blowup(X, ideal_of(amb.ring(), {"x", "y"}));
    REQUIRE(b.e_names.size() == 2);
    const RingPtr& tot = b.total_ambient.ring();
    // rees ideal = (y*E0 - x*E1), verified by the substitution oracle
    CHECK(b.rees_ideal().equals(Ideal(tot, {parse_polynomial("y*E0 - x*E1", tot)})));
    std::map<std::string, Polynomial> subst{{"x", Polynomial::variable(tot, "x")},
                                            {"y", Polynomial::variable(tot, "y")},
                                            {"E0", parse_polynomial("x", tot)},
                                            {"E1", parse_polynomial("y", tot)}};
    for (const auto& g : b.rees_ideal().generators())
        CHECK(substitute(g, subst, tot).is_zero());
    // both charts are smooth surfaces
    REQUIRE(b.charts.size() == 2);
    for (const auto& c : b.charts) {
        AmbientSpace camb(c.ring);
        Subscheme chart_scheme(camb, c.ideal);
        CHECK(subscheme_is_empty(singular_locus(chart_scheme)));
        CHECK(subscheme_dimension(chart_scheme) == 2);
    }
}

TEST_CASE("the parameter-space blow-up has the expected principal equation")
{
    auto amb = A8();
    Subscheme X(amb, Ideal::zero(amb.ring()));
    BlowupResult b = rees_blowup(X, ideal_of(amb.ring(), {"a-a2", "b-b2"}));
    const RingPtr& tot = b.total_ambient.ring();
    CHECK(b.rees_ideal().equals(Ideal(tot, {parse_polynomial("E1*(a-a2) - E0*(b-b2)", tot)})));
    for (const auto& c : b.charts)
        CHECK_FALSE(c.exceptional.is_zero());
}

TEST_CASE("universal family blow-up over the section parameters")
{
    // Blow up A4 x V(uy - vx) along the universal line (ax+by+z, cx+dy+t):
    // the total space of the blown-up family is cut by nu*f0 - mu*f1... with
    // [nu:mu] the exceptional coordinates, together with the pencil equation.
    auto tring = PolyRing::make({"a", "b", "c", "d", "x", "y", "z", "t", "u", "v"},
                                CoefficientField::rationals(),
                                {GradingBlock{"A4", {0, 1, 2, 3}, false},
                                 GradingBlock{"P3", {4, 5, 6, 7}, true},
                                 GradingBlock{"P1", {8, 9}, true}});
    AmbientSpace amb(tring);
    Subscheme total(amb, ideal_of(tring, {"u*y - v*x"}));
    Ideal centre = ideal_of(tring, {"a*x + b*y + z", "c*x + d*y + t"});
    BlowupResult b = rees_blowup(total, centre, {"nu", "mu"});
    const RingPtr& tot = b.total_ambient.ring();
    Subscheme expected(b.total_ambient,
                       ideal_of(tot, {"u*y - v*x", "mu*(a*x + b*y + z) - nu*(c*x + d*y + t)"}));
    CHECK(subscheme_equals(b.total, expected));
    // the centre generators vanish on the universal section, which lifts with
    // constant ratios along the exceptional block
    std::map<std::string, Polynomial> sub;
    for (const char* n : {"a", "b", "c", "d", "u", "v"})
        sub.emplace(n, Polynomial::variable(tot, n));
    sub.emplace("x", Polynomial::variable(tot, "u"));
    sub.emplace("y", Polynomial::variable(tot, "v"));
    sub.emplace("z", parse_polynomial("-a*u - b*v", tot));
    sub.emplace("t", parse_polynomial("-c*u - d*v", tot));
    for (const auto& f : b.centre.generators())
        CHECK(substitute(inject(f, tot), sub, tot).is_zero());
}

TEST_CASE("blow-up at the unit ideal and principal nonzerodivisors is an isomorphism")
{
    auto amb = AmbientSpace(PolyRing::make({"x", "y"}));
    Subscheme X(amb, ideal_of(amb.ring(), {"y - x^2"}));
    BlowupResult unit = rees_blowup(X, Ideal::unit(amb.ring()));
    REQUIRE(unit.charts.size() == 1);
    CHECK(unit.charts[0].ideal.equals(X.ideal()));
    CHECK(unit.total.ideal().equals(X.ideal()));

    BlowupResult princ = rees_blowup(X, ideal_of(amb.ring(), {"x - 3"}));
    REQUIRE(princ.charts.size() == 1);
    CHECK(princ.charts[0].ideal.equals(X.ideal()));
}

TEST_CASE("centre vanishing on the source is rejected")
{
    auto amb = AmbientSpace(PolyRing::make({"x", "y"}));
    Subscheme X(amb, ideal_of(amb.ring(), {"x"}));
    CHECK_THROWS_AS(rees_blowup(X, ideal_of(amb.ring(), {"x"})), DomainError);
}

TEST_CASE("strict transform of the discriminant quadric is the small resolution")
{
    auto amb = A8();
    Subscheme X(amb, Ideal::zero(amb.ring()));
    BlowupResult b = rees_blowup(X, ideal_of(amb.ring(), {"a-a2", "b-b2"}), {"om", "eta"});
    Subscheme Y(amb, ideal_of(amb.ring(), {"(a-a2)*(d-d2)-(b-b2)*(c-c2)"}));
    auto total = total_transform(b, Y);
    auto strict = strict_transform(b, Y);
    REQUIRE(strict.size() == 2);

    // chart eta = 1 is index 1
    const RingPtr& cr = b.charts[1].ring;
    Polynomial t1 = parse_polynomial("(a-a2) - om*(b-b2)", cr);
    Polynomial t2 = parse_polynomial("om*(d-d2) - (c-c2)", cr);
    CHECK(ideal_membership(t1, strict[1]));
    CHECK(ideal_membership(t2, strict[1]));
    // hand-derived closed form of the strict transform on this chart
    CHECK(strict[1].equals(Ideal(cr, {t1, t2})));
    // the total transform does not contain the divided relation
    CHECK_FALSE(ideal_membership(t2, total[1]));

    // strict transform is idempotent through saturation
    Ideal again = saturation(strict[1], Ideal(cr, {b.charts[1].exceptional})).first;
    CHECK(again.equals(strict[1]));

    // chart om = 1 carries the mirrored relations
    const RingPtr& cr0 = b.charts[0].ring;
    CHECK(ideal_membership(parse_polynomial("eta*(a-a2) - (b-b2)", cr0), strict[0]));
    CHECK(ideal_membership(parse_polynomial("(d-d2) - eta*(c-c2)", cr0), strict[0]));
}

TEST_CASE("strict transform of the centre is empty; disjoint subschemes are untouched")
{
    auto amb = A8();
    Subscheme X(amb, Ideal::zero(amb.ring()));
    Ideal centre = ideal_of(amb.ring(), {"a-a2", "b-b2"});
    BlowupResult b = rees_blowup(X, centre);
    Subscheme C(amb, centre);
    for (const auto& I : strict_transform(b, C))
        CHECK(I.is_unit());

    // disjoint from the centre: exceptional saturation is a no-op
    Subscheme Z(amb, ideal_of(amb.ring(), {"a - a2 - 1", "c"}));
    auto tot = total_transform(b, Z);
    auto str = strict_transform(b, Z);
    for (std::size_t i = 0; i < tot.size(); ++i)
        CHECK(tot[i].equals(str[i]));
}

TEST_CASE("chart overlap consistency for the plane blow-up")
{
    // On E0 != 0, E1 != 0 the two charts describe the same locus: mapping
    // the chart-0 ideal through E1 -> 1/E0 lands inside the chart-1 ideal
    // after clearing denominators, and vice versa.
    auto amb = AmbientSpace(PolyRing::make({"x", "y"}));
    Subscheme X(amb, Ideal::zero(amb.ring()));
    BlowupResult b = rees_blowup(X, ideal_of(amb.ring(), {"x", "y"}));
    // chart 0 (E0=1, coordinate E1): ideal (y - E1 x); on the overlap E1 is
    // invertible with inverse the chart-1 coordinate E0, so substituting
    // E1 -> 1/E0 and clearing gives y*E0 - x, the chart-1 generator.
    const RingPtr& r1 = b.charts[1].ring;
    Polynomial g1 = parse_polynomial("y*E0 - x", r1);
    CHECK(ideal_membership(g1, b.charts[1].ideal));
    const RingPtr& r0 = b.charts[0].ring;
    CHECK(ideal_membership(parse_polynomial("y - E1*x", r0), b.charts[0].ideal));
}

TEST_CASE("base change commutation on the pencil-family centre")
{
    auto amb = A8();
    Subscheme X(amb, Ideal::zero(amb.ring()));
    Ideal centre = ideal_of(amb.ring(), {"a-a2", "b-b2"});
    CommutationReport rep =
        base_change_commutation_check(X, centre, {"a2", "b2", "c2", "d2"}, {0, 0, 0, 0});
    CHECK(rep.verdict == Commutation::commutes);
    CHECK(rep.hilbert_proxy_given == rep.hilbert_proxy_generic);
}

TEST_CASE("base change commutation for unit and principal flat centres")
{
    auto amb = AmbientSpace(PolyRing::make({"x", "y", "p"}));
    Subscheme X(amb, Ideal::zero(amb.ring()));
    CHECK(base_change_commutation_check(X, Ideal::unit(amb.ring()), {"p"}, {5}).verdict ==
          Commutation::commutes);
    // flat family of lines x - p*y
    CHECK(base_change_commutation_check(X, ideal_of(amb.ring(), {"x - p*y"}), {"p"}, {2})
              .verdict == Commutation::commutes);
}

TEST_CASE("non-flat centre comes back inconclusive, not false")
{
    auto amb = AmbientSpace(PolyRing::make({"x", "y", "p"}));
    Subscheme X(amb, Ideal::zero(amb.ring()));
    // (x - p, p*y): at p=0 the centre degenerates
    CommutationReport rep =
        base_change_commutation_check(X, ideal_of(amb.ring(), {"x - p", "p*y"}), {"p"}, {0});
    CHECK(rep.verdict == Commutation::inconclusive);
}

TEST_CASE("randomized graph-form centres commute with specialization")
{
    SeededRng rng(424242);
    for (int trial = 0; trial < 5; ++trial) {
        auto R = PolyRing::make({"x", "y", "z", "p", "q"});
        AmbientSpace amb(R);
        Subscheme X(amb, Ideal::zero(R));
        // solved-variable centres are flat over the parameters
        auto rnd = [&]() {
            Polynomial h = Polynomial::constant(R, rng.rational(4));
            h = h + Polynomial::variable(R, "z").scaled(rng.rational(4));
            if (rng.below(2))
                h = h + (Polynomial::variable(R, "z") * Polynomial::variable(R, "p"))
                            .scaled(rng.rational(3));
            if (rng.below(2))
                h = h + (Polynomial::variable(R, "z") * Polynomial::variable(R, "q"))
                            .scaled(rng.rational(3));
            return h;
        };
        Ideal centre(R, {Polynomial::variable(R, "x") - rnd(),
                         Polynomial::variable(R, "y") - rnd()});
        CommutationReport rep = base_change_commutation_check(
            X, centre, {"p", "q"}, {rng.rational(5), rng.rational(5)});
        CHECK(rep.verdict == Commutation::commutes);
    }
}

TEST_CASE("lift ratios")
{
    // line y = 3x through the origin of the plane, parametrized by x
    auto amb = AmbientSpace(PolyRing::make({"x", "y"}));
    Subscheme X(amb, Ideal::zero(amb.ring()));
    BlowupResult b = rees_blowup(X, ideal_of(amb.ring(), {"x", "y"}));
    RingPtr base = PolyRing::make({"s"});
    std::map<std::string, Polynomial> sigma{{"x", Polynomial::variable(base, "s")},
                                            {"y", Polynomial::variable(base, "s").scaled(3)}};
    auto r = lift_ratios(b, sigma, base);
    REQUIRE(r.size() == 2);
    CHECK(r[0] == Polynomial::constant(base, 1));
    CHECK(r[1] == Polynomial::constant(base, 3));

    // a section through the centre has no lift
    std::map<std::string, Polynomial> inside{{"x", Polynomial::zero(base)},
                                             {"y", Polynomial::zero(base)}};
    CHECK_THROWS_AS(lift_ratios(b, inside, base), DomainError);

    // disjoint sections keep a nowhere-zero ratio tuple
    std::map<std::string, Polynomial> off{{"x", Polynomial::constant(base, 1)},
                                          {"y", Polynomial::variable(base, "s")}};
    auto r2 = lift_ratios(b, off, base);
    CHECK(r2[0] == Polynomial::constant(base, 1));
    CHECK(r2[1] == Polynomial::variable(base, "s"));
}
