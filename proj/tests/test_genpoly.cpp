#include "polcheck/genpoly/genpoly.hpp"
#include "polcheck/oracle_expr.hpp"
#include "polcheck/sampling/sampling.hpp"
#include "support.hpp"

using namespace polcheck;
using support::el;
using support::els;

namespace {

SymmetricForm norm_form(const SpecPtr& s) {
    return SymmetricForm::product_sym({AdditiveMap::identity(s), build_endomorphism(s, {}, true)});
}

AdditiveMap d_plus_id(const SpecPtr& s) {
    return sum_map({build_derivation(s, {{"t", el(s, "1")}}), AdditiveMap::identity(s)});
}

Function square(const SpecPtr& s) {
    Function f;
    f.spec = s;
    f.eval = [](const FieldElement& x) { return x * x; };
    f.oracle = ox::lambda("x", ox::pow(ox::var("x"), 2));
    f.label = "x^2";
    return f;
}

}  // namespace

TEST_CASE("eval_genpoly") {
    const auto q2 = support::q2();
    const GenPoly p(q2, {trace(norm_form(q2)), trace(SymmetricForm::product_sym({AdditiveMap::identity(q2)}))});
    CHECK(p.degree() == 2);
    CHECK(eval_genpoly(p, el(q2, "1+sqrt(2)")) == el(q2, "sqrt(2)"));
    CHECK(support::oracle_value_is(q2, ox::call(p.as_function().oracle, ox::lit_text("1+sqrt(2)")), "sqrt(2)"));

    const GenPoly empty(q2, {});
    CHECK(empty.degree() == 0);
    CHECK(eval_genpoly(empty, el(q2, "3")).is_zero());

    const auto qt = support::qt();
    const auto f = GenPoly::monomial(SymmetricForm::map_of_product(d_plus_id(qt), 2));
    CHECK(f(el(qt, "t")) == el(qt, "t^2+2*t"));

    // equal degrees merge into one component
    const GenPoly merged(q2, {trace(norm_form(q2)), trace(norm_form(q2))});
    CHECK(merged.is_monomial());
    CHECK(merged(el(q2, "1+sqrt(2)")) == el(q2, "-2"));
}

TEST_CASE("degree_estimate") {
    const auto q2 = support::q2();
    DegreeEstimate e = degree_estimate(trace(norm_form(q2)).as_function(), els(q2, {"1", "sqrt(2)", "1+sqrt(2)"}), 6);
    REQUIRE(e.degree);
    CHECK(*e.degree == 2);
    CHECK(e.report.verdict == Verdict::Pass);
    support::oracle_confirms(e.report);

    const auto qt = support::qt();
    e = degree_estimate(map_function(d_plus_id(qt)), default_probes(qt), 6);
    REQUIRE(e.degree);
    CHECK(*e.degree == 1);

    e = degree_estimate(GenPoly::monomial(SymmetricForm::map_of_product(d_plus_id(qt), 2)).as_function(), default_probes(qt), 6);
    REQUIRE(e.degree);
    CHECK(*e.degree == 2);
    support::oracle_confirms(e.report);

    Function inv;
    inv.spec = support::q();
    inv.eval = [](const FieldElement& x) { return FieldElement::one(x.spec()) / (x * x + FieldElement::one(x.spec())); };
    e = degree_estimate(inv, default_probes(support::q()), 3);
    CHECK_FALSE(e.degree);
    CHECK(e.report.verdict == Verdict::Inconclusive);
    CHECK(e.report.values["degree"] == "NO_BOUND_FOUND");
}

TEST_CASE("extract_component") {
    const auto q2 = support::q2();
    const GenPoly p(q2, {trace(norm_form(q2)), trace(SymmetricForm::product_sym({AdditiveMap::identity(q2)}))});
    const auto probes = els(q2, {"1+sqrt(2)", "sqrt(2)"});
    const auto top = extract_component(p.as_function(), 2, 2, probes);
    CHECK(top.values[0] == el(q2, "-1"));
    CHECK(top.values[1] == el(q2, "-2"));
    const auto lin = extract_component(p.as_function(), 1, 2, probes);
    CHECK(lin.values[0] == el(q2, "1+sqrt(2)"));

    const auto q = support::q();
    Function g;
    g.spec = q;
    g.eval = [](const FieldElement& x) { return x * x + FieldElement::integer(x.spec(), 3); };
    const auto tables = extract_components(g, 2, els(q, {"2"}));
    REQUIRE(tables.size() == 3);
    CHECK(tables[0].degree == 2);
    CHECK(tables[0].values[0] == el(q, "4"));
    CHECK(tables[1].values[0].is_zero());
    CHECK(tables[2].degree == 0);
    CHECK(tables[2].values[0] == el(q, "3"));

    Function cube;
    cube.spec = q;
    cube.eval = [](const FieldElement& x) { return x * x * x; };
    CHECK_THROWS_AS(extract_components(cube, 2, els(q, {"1", "2"})), InconsistentPeeling);
}

TEST_CASE("multiset_tuples") {
    const auto q = support::q();
    const auto ts = multiset_tuples(els(q, {"1", "2", "3"}), 2);
    CHECK(ts.size() == 6);
    CHECK(ts.front() == els(q, {"1", "1"}));
    CHECK(ts.back() == els(q, {"3", "3"}));
    CHECK(multiset_tuples(els(q, {"1", "2", "3"}), 4).size() == 15);
}

TEST_CASE("variety_rank") {
    const auto q = support::q();
    const auto pts = els(q, {"1", "2", "3", "4", "5", "6"});
    Report r = variety_rank_report(square(q), els(q, {"0", "1", "2", "3"}), pts, TranslateOp::Additive);
    CHECK(r.values["rank"] == 3);
    support::oracle_confirms(r);

    Function zero;
    zero.spec = q;
    zero.eval = [](const FieldElement& x) { return FieldElement::zero(x.spec()); };
    CHECK(variety_rank(zero, els(q, {"0", "1"}), pts, TranslateOp::Additive) == 0);

    // x -> x^2 is a multiplicative character up to scale, so its multiplicative translates span one line.
    CHECK(variety_rank(square(q), els(q, {"1", "2", "-1/3"}), pts, TranslateOp::Multiplicative) == 1);
}
