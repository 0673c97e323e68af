#include "polcheck/funceq/funceq.hpp"
#include "polcheck/oracle_expr.hpp"
#include "polcheck/sampling/sampling.hpp"
#include "support.hpp"

using namespace polcheck;
using support::el;
using support::els;

namespace {

AdditiveMap conj(const SpecPtr& s) { return build_endomorphism(s, {}, true).named("conj"); }
AdditiveMap id(const SpecPtr& s) { return AdditiveMap::identity(s).named("id"); }
AdditiveMap d_t(const SpecPtr& s) { return build_derivation(s, {{"t", el(s, "1")}}).named("d"); }
AdditiveMap d_plus_id(const SpecPtr& s) { return sum_map({d_t(s), id(s)}).named("a"); }

SymmetricForm norm_form(const SpecPtr& s) { return SymmetricForm::product_sym({id(s), conj(s)}); }

PolySpec x_pow(const SpecPtr& s, std::size_t k, PolySpec::Side side, const std::string& c = "1") {
    return PolySpec::monomial(el(s, c), k, side);
}

const auto D = PolySpec::Side::Domain;
const auto C = PolySpec::Side::Codomain;

}  // namespace

TEST_CASE("degree_precheck") {
    const auto q = support::q();
    CHECK(degree_precheck(2, x_pow(q, 2, D), x_pow(q, 2, C)).verdict == Verdict::Pass);
    const Report r = degree_precheck(2, x_pow(q, 2, D), x_pow(q, 3, C));
    CHECK(r.verdict == Verdict::NotApplicable);
    CHECK(r.values["lhs_degree"] == 4);
    CHECK(r.values["rhs_degree"] == 6);
    CHECK(degree_precheck(1, x_pow(q, 1, D), x_pow(q, 1, C)).verdict == Verdict::Pass);
    CHECK_THROWS_AS(PolySpec::make({el(q, "1"), el(q, "0")}, D), InvalidSpec);
}

TEST_CASE("check_pointwise") {
    const auto q2 = support::q2();
    const auto n = GenPoly::monomial(norm_form(q2));
    Report r = check_pointwise(n, x_pow(q2, 2, D), x_pow(q2, 2, C), els(q2, {"1+sqrt(2)"}));
    CHECK(r.verdict == Verdict::HoldsOnSample);
    support::oracle_confirms(r);

    const auto qt = support::qt();
    const auto f = GenPoly::monomial(SymmetricForm::map_of_product(d_plus_id(qt), 2));
    r = check_pointwise(f, x_pow(qt, 2, D), x_pow(qt, 2, C), els(qt, {"t"}));
    REQUIRE(r.verdict == Verdict::Refuted);
    REQUIRE(r.witnesses.size() == 1);
    CHECK(r.witnesses[0].lhs == el(qt, "t^4+4*t^3"));
    CHECK(r.witnesses[0].rhs == el(qt, "t^4+4*t^3+4*t^2"));
    CHECK(r.witnesses[0].difference == el(qt, "-4*t^2"));
    CHECK(naive::check_witness(r.field, "t^4+4*t^3", "(2*t+t^2)^2", "-4*t^2").ok);
    support::oracle_confirms(r);

    const GenPoly zero(qt, {});
    SampleConfig cfg;
    r = check_pointwise(zero, x_pow(qt, 3, D), PolySpec::make({el(qt, "0"), el(qt, "2"), el(qt, "1")}, C),
                        sample_elements(qt, cfg));
    CHECK(r.verdict == Verdict::HoldsOnSample);

    // samples where a side is undefined are skipped, not counted
    Function inv;
    inv.spec = qt;
    inv.eval = [](const FieldElement& x) { return x.inverse(); };
    inv.label = "1/x";
    r = check_pointwise(inv, inv, els(qt, {"0", "t"}));
    CHECK(r.verdict == Verdict::HoldsOnSample);
    CHECK(r.values["samples_checked"] == 1);
}

TEST_CASE("check_symmetrized") {
    const auto q2 = support::q2();
    const auto n = GenPoly::monomial(norm_form(q2));
    Report r = check_symmetrized(n, 2, el(q2, "1"), els(q2, {"1", "sqrt(2)", "1+sqrt(2)"}));
    CHECK(r.verdict == Verdict::HoldsOnSpan);
    CHECK(r.values["tuples_checked"] == 15);
    support::oracle_confirms(r);

    const auto qt = support::qt();
    const auto f = GenPoly::monomial(SymmetricForm::map_of_product(d_plus_id(qt), 2));
    r = check_symmetrized(f, 2, el(qt, "1"), els(qt, {"1", "t"}));
    REQUIRE(r.verdict == Verdict::Refuted);
    CHECK_FALSE(r.witnesses.empty());
    CHECK(r.witnesses[0].inputs.size() == 4);
    support::oracle_confirms(r);

    r = check_symmetrized(GenPoly(qt, {}), 2, el(qt, "1"), els(qt, {"1", "t"}));
    CHECK(r.verdict == Verdict::HoldsOnSpan);

    CHECK_THROWS_AS(check_symmetrized(n, 5, el(q2, "1"), els(q2, {"1"}), 8), ArityTooLarge);
}

TEST_CASE("F4 six-term formula matches the lift/product expression") {
    const auto qt = support::qt();
    const auto f2 = SymmetricForm::map_of_product(d_plus_id(qt), 2);
    const auto xs = els(qt, {"t", "t", "1", "1"});
    const FieldElement v = f4_value(f2, xs);
    CHECK_FALSE(v.is_zero());
    CHECK(v == eval_form(f4_form(f2), xs));
    CHECK(support::oracle_value_is(qt, ox::eval_form(f4_form(f2).descriptor(), ox::lits(xs)), v.to_string()));
}

TEST_CASE("classify_quadratic_square") {
    const auto q2 = support::q2();
    Report r = classify_quadratic_square(norm_form(q2), {id(q2), conj(q2)}, default_probes(q2));
    CHECK(r.verdict == Verdict::HoldsOnSample);
    REQUIRE(r.classification);
    CHECK(r.classification->case_tag == "two independent homomorphisms");
    CHECK(*r.classification->f_at_1 == el(q2, "1"));
    CHECK(r.classification->factors == std::vector<std::string>{"id", "conj"});
    support::oracle_confirms(r);

    const auto q = support::q();
    r = classify_quadratic_square(SymmetricForm::product_sym({id(q), id(q)}), default_dictionary(q), default_probes(q));
    CHECK(r.verdict == Verdict::HoldsOnSample);
    CHECK(r.classification->case_tag == "single homomorphism squared");
    CHECK(r.classification->factors == std::vector<std::string>{"id", "id"});
    support::oracle_confirms(r);

    const auto qt = support::qt();
    r = classify_quadratic_square(SymmetricForm::map_of_product(d_plus_id(qt), 2), default_dictionary(qt), default_probes(qt));
    REQUIRE(r.verdict == Verdict::Refuted);
    REQUIRE_FALSE(r.witnesses.empty());
    const Witness& w = r.witnesses.front();
    CHECK(w.inputs.size() == 4);
    CHECK_FALSE(w.difference.is_zero());
    CHECK(naive::check_witness(r.field, w.lhs.to_string(), w.rhs.to_string(), w.difference.to_string()).ok);
    support::oracle_confirms(r);

    r = classify_quadratic_square(SymmetricForm::map_of_product(AdditiveMap::zero(q), 2), default_dictionary(q),
                                  default_probes(q));
    CHECK(r.classification->case_tag == "zero");

    // a dictionary that cannot express a is inconclusive, not refuted
    r = classify_quadratic_square(norm_form(q2), {id(q2)}, default_probes(q2));
    CHECK(r.verdict == Verdict::Inconclusive);
}

TEST_CASE("check_power_identity") {
    const auto q2 = support::q2();
    const auto n = GenPoly::monomial(norm_form(q2));
    Report r = check_power_identity(n, 3, default_probes(q2));
    CHECK(r.verdict == Verdict::HoldsOnSpan);
    CHECK(*r.classification->f_at_1 == el(q2, "1"));
    support::oracle_confirms(r);

    const auto neg = GenPoly::monomial(SymmetricForm::lincomb({{el(q2, "-1"), norm_form(q2)}}));
    r = check_power_identity(neg, 3, default_probes(q2));
    CHECK(r.verdict == Verdict::HoldsOnSpan);
    CHECK(*r.classification->f_at_1 == el(q2, "-1"));
    CHECK(r.classification->case_tag == "f(1) is an (n-1)st root of unity");
    support::oracle_confirms(r);

    r = check_power_identity(neg, 2, default_probes(q2));
    CHECK(r.verdict == Verdict::Refuted);
    CHECK(r.classification->case_tag == "root-of-unity gate failed");
}

TEST_CASE("affine_check") {
    const auto q = support::q();
    const auto xy = SymmetricForm::product_sym({id(q), id(q)});
    Report r = affine_check(xy, {el(q, "3"), el(q, "0"), el(q, "9"), el(q, "0")}, default_probes(q));
    CHECK(r.verdict == Verdict::Pass);
    CHECK(r.conditions.size() == 4);
    for (const auto& c : r.conditions) CHECK(c.holds);
    support::oracle_confirms(r);

    r = affine_check(xy, {el(q, "3"), el(q, "1"), el(q, "9"), el(q, "1")}, default_probes(q));
    CHECK(r.verdict == Verdict::Refuted);
    bool contradiction = false;
    for (const auto& s : r.notes) contradiction |= s.find("contradiction") != std::string::npos;
    CHECK(contradiction);

    const auto zero = SymmetricForm::map_of_product(AdditiveMap::zero(q), 2);
    r = affine_check(zero, {el(q, "5"), el(q, "2"), el(q, "-1"), el(q, "0")}, default_probes(q));
    CHECK(r.verdict == Verdict::Pass);
}

TEST_CASE("quartic_solve") {
    const auto q = support::q();
    for (const auto& [c, c4] : std::vector<std::pair<std::string, std::string>>{{"1", "1"}, {"2", "16"}, {"-3", "81"}}) {
        const auto a = scale_map(el(q, c), id(q));
        const Report r = quartic_solve(a, default_dictionary(q), default_probes(q));
        CHECK(r.verdict == Verdict::HoldsOnSample);
        REQUIRE(r.classification);
        CHECK(r.classification->factors == std::vector<std::string>{"id"});
        CHECK(r.classification->scalars.front().first == "a(1)^4");
        CHECK(r.classification->scalars.front().second == el(q, c4));
        support::oracle_confirms(r);
    }
    const auto qt = support::qt();
    const Report r = quartic_solve(d_plus_id(qt), default_dictionary(qt), default_probes(qt));
    CHECK(r.verdict == Verdict::Refuted);
    CHECK_FALSE(r.witnesses.empty());
    support::oracle_confirms(r);
}

TEST_CASE("levicivita_verify") {
    const auto q2 = support::q2();
    const auto half = el(q2, "1/2");
    const auto avg = scale_map(half, sum_map({id(q2), conj(q2)}));
    Report r = levicivita_verify(avg, TwoExp{half, half, id(q2), conj(q2)}, default_probes(q2));
    CHECK(r.verdict == Verdict::Pass);
    support::oracle_confirms(r);

    const auto qt = support::qt();
    r = levicivita_verify(d_t(qt), LogExp{id(qt), d_t(qt), el(qt, "0")}, default_probes(qt));
    CHECK(r.verdict == Verdict::Pass);
    support::oracle_confirms(r);

    r = levicivita_verify(id(q2), TwoExp{el(q2, "1"), el(q2, "1"), id(q2), conj(q2)}, els(q2, {"sqrt(2)"}));
    REQUIRE(r.verdict == Verdict::Refuted);
    CHECK(r.witnesses.front().inputs.front() == el(q2, "sqrt(2)"));
}
