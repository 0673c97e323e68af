#include <algorithm>

#include "polcheck/forms/symmetric_form.hpp"
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

AdditiveMap d_t(const SpecPtr& s) { return build_derivation(s, {{"t", el(s, "1")}}); }

FieldElement ev(const SymmetricForm& f, const std::vector<FieldElement>& xs) { return eval_form(f, xs); }

}  // namespace

TEST_CASE("eval_form") {
    const auto q2 = support::q2();
    const auto n = norm_form(q2);
    CHECK(ev(n, els(q2, {"1+sqrt(2)", "1+sqrt(2)"})) == el(q2, "-1"));
    CHECK(ev(n, els(q2, {"1", "1+sqrt(2)"})) == el(q2, "1"));
    CHECK(support::oracle_value_is(q2, ox::eval_form(n.descriptor(), {ox::lit_text("1"), ox::lit_text("1+sqrt(2)")}), "1"));

    const auto qt = support::qt();
    const auto m = SymmetricForm::map_of_product(d_t(qt), 2);
    CHECK(ev(m, els(qt, {"t", "t"})) == el(qt, "2*t"));
    CHECK(m.arity() == 2);

    CHECK_THROWS_AS(ev(n, els(q2, {"1"})), Error);
    CHECK_THROWS_AS(eval_form(SymmetricForm::lift(n, 5), els(q2, std::vector<std::string>(10, "1")), 8), ArityTooLarge);
    CHECK_THROWS_AS(SymmetricForm::lift(n, 0), TypeMismatch);
}

TEST_CASE("forms are symmetric and additive in each slot") {
    const auto q2t = FieldSpec::ratfunc(support::q2(), {"t"});
    const auto d = build_derivation(q2t, {{"t", el(q2t, "1")}});
    const auto h = build_endomorphism(q2t, {{"t", el(q2t, "t+1")}}, true);
    const auto id = AdditiveMap::identity(q2t);
    const auto p3 = SymmetricForm::product_sym({d, h, id});
    const auto m2 = SymmetricForm::map_of_product(sum_map({d, id}), 2);
    const std::vector<SymmetricForm> forms = {
        p3, SymmetricForm::lift(m2, 2), SymmetricForm::lincomb({{el(q2t, "sqrt(2)"), p3}, {el(q2t, "-1"), SymmetricForm::form_product({m2, SymmetricForm::product_sym({h})})}})};
    SampleConfig cfg;
    cfg.seed = 5;
    cfg.count = 6;
    cfg.max_height = 3;
    cfg.max_degree = 1;
    const auto xs = sample_elements(q2t, cfg);
    for (const auto& f : forms) {
        const std::size_t n = f.arity();
        std::vector<FieldElement> args(xs.begin(), xs.begin() + static_cast<long>(n));
        const FieldElement base = eval_form(f, args);
        auto perm = args;
        std::reverse(perm.begin(), perm.end());
        CHECK(eval_form(f, perm) == base);
        std::rotate(perm.begin(), perm.begin() + 1, perm.end());
        CHECK(eval_form(f, perm) == base);
        auto split = args;
        split[0] = xs[n];
        const FieldElement other = eval_form(f, split);
        split[0] = args[0] + xs[n];
        CHECK(eval_form(f, split) == base + other);
    }
}

TEST_CASE("trace") {
    const auto q2 = support::q2();
    const auto t = trace(norm_form(q2));
    CHECK(t.degree == 2);
    CHECK(t(el(q2, "1+sqrt(2)")) == el(q2, "-1"));
    CHECK(t(el(q2, "3+2*sqrt(2)")) == el(q2, "1"));

    const auto qt = support::qt();
    const auto a = sum_map({d_t(qt), AdditiveMap::identity(qt)});
    const auto m3 = trace(SymmetricForm::map_of_product(a, 3));
    CHECK(m3(el(qt, "t+1")) == a(el(qt, "(t+1)^3")));

    const auto c = trace(SymmetricForm::constant(el(qt, "7/3")));
    CHECK(c.degree == 0);
    CHECK(c(el(qt, "t")) == el(qt, "7/3"));

    // trace agrees with the diagonal evaluation, and the oracle agrees with both
    const auto lift = SymmetricForm::lift(SymmetricForm::product_sym({a}), 2);
    const auto x = el(qt, "(t+2)/(t-3)");
    CHECK(trace(lift)(x) == ev(lift, {x, x}));
    CHECK(trace(lift)(x) == a(x * x));
    CHECK(support::oracle_value_is(qt, ox::trace(lift.descriptor(), ox::lit(x)), a(x * x).to_string()));
}

TEST_CASE("iterated differences") {
    const auto q2 = support::q2();
    const auto nf = trace(norm_form(q2)).as_function();
    const auto y = el(q2, "1+sqrt(2)");
    for (const auto& x : els(q2, {"0", "5", "2-sqrt(2)", "1/3"})) {
        const std::vector<FieldElement> two{y, y}, three{y, y, y};
        CHECK(iterated_delta(nf, x, two) == el(q2, "-2"));
        CHECK(iterated_delta(nf, x, three).is_zero());
        CHECK(support::oracle_value_is(q2, iterated_delta_expr(nf, x, two), "-2"));
    }
    const auto dn = delta(nf, y);
    CHECK(dn(el(q2, "0")) == nf(y));

    Function c;
    c.spec = q2;
    c.eval = [&](const FieldElement&) { return el(q2, "4"); };
    CHECK(delta(c, y)(el(q2, "sqrt(2)")).is_zero());
}

TEST_CASE("polarize recovers the form") {
    const auto q2 = support::q2();
    const auto t = trace(norm_form(q2));
    CHECK(polarize(t, els(q2, {"1", "1+sqrt(2)"})) == el(q2, "1"));

    const auto qt = support::qt();
    const auto m = trace(SymmetricForm::map_of_product(d_t(qt), 2));
    CHECK(polarize(m, els(qt, {"t", "t+1"})) == el(qt, "2*t+1"));

    const auto a = trace(SymmetricForm::product_sym({sum_map({d_t(qt), AdditiveMap::identity(qt)})}));
    CHECK(polarize(a, els(qt, {"t^3"})) == el(qt, "t^3+3*t^2"));
}

TEST_CASE("polarization_check") {
    const auto q2 = support::q2();
    const auto n = norm_form(q2);
    Report r = polarization_check(n, el(q2, "7"), els(q2, {"1+sqrt(2)", "3"}));
    CHECK(r.verdict == Verdict::Pass);
    CHECK(r.values["lhs"] == "6");
    CHECK(r.values["rhs"] == "6");
    support::oracle_confirms(r);

    r = polarization_check(n, el(q2, "sqrt(2)"), els(q2, {"1", "2", "sqrt(2)"}));
    CHECK(r.verdict == Verdict::Pass);
    CHECK(r.values["lhs"] == "0");
    support::oracle_confirms(r);

    const auto qt = support::qt();
    r = polarization_check(SymmetricForm::map_of_product(AdditiveMap::zero(qt), 3), el(qt, "t"), els(qt, {"1", "t", "t^2"}));
    CHECK(r.verdict == Verdict::Pass);
    CHECK(r.values["lhs"] == "0");
    CHECK(r.values["rhs"] == "0");
}

TEST_CASE("zero trace implies zero form") {
    const auto qt = support::qt();
    const auto id = AdditiveMap::identity(qt);
    const auto f = SymmetricForm::lincomb({{el(qt, "1"), SymmetricForm::product_sym({id, id})},
                                           {el(qt, "-1"), SymmetricForm::map_of_product(id, 2)}});
    const auto tuples = multiset_tuples(default_probes(qt), 2);
    Report r = zero_trace_implies_zero_check(f, tuples);
    CHECK(r.verdict == Verdict::Pass);
    support::oracle_confirms(r);

    r = zero_trace_implies_zero_check(SymmetricForm::map_of_product(AdditiveMap::zero(qt), 2), tuples);
    CHECK(r.verdict == Verdict::Pass);

    const auto q2 = support::q2();
    r = zero_trace_implies_zero_check(norm_form(q2), multiset_tuples(default_probes(q2), 2));
    CHECK(r.verdict == Verdict::NotApplicable);
}
