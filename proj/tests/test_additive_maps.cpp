#include "polcheck/maps/additive_map.hpp"
#include "polcheck/oracle_expr.hpp"
#include "polcheck/sampling/sampling.hpp"
#include "support.hpp"

using namespace polcheck;
using support::el;

namespace {

AdditiveMap d_t(const SpecPtr& s) { return build_derivation(s, {{"t", el(s, "1")}}); }

}  // namespace

TEST_CASE("endomorphisms") {
    const auto q2 = support::q2();
    const auto conj = build_endomorphism(q2, {}, true);
    CHECK(conj(el(q2, "1+sqrt(2)")) == el(q2, "1-sqrt(2)"));
    CHECK(support::oracle_value_is(q2, ox::apply_map(conj.descriptor(), ox::lit_text("1+sqrt(2)")), "1-sqrt(2)"));

    const auto qt = support::qt();
    const auto sq = build_endomorphism(qt, {{"t", el(qt, "t^2")}}, false);
    CHECK(sq(el(qt, "t+1")) == el(qt, "t^2+1"));
    CHECK(sq(el(qt, "1/(t-1)")) == el(qt, "1/(t^2-1)"));
    CHECK_THROWS_AS(build_endomorphism(qt, {{"t", el(qt, "5")}}, false), InvalidImage);
    CHECK_THROWS_AS(build_endomorphism(qt, {{"u", el(qt, "t")}}, false), InvalidImage);
    CHECK_THROWS_AS(build_endomorphism(support::q(), {}, true), UnsupportedSpec);

    const auto q2t = FieldSpec::ratfunc(q2, {"t"});
    const auto both = build_endomorphism(q2t, {{"t", el(q2t, "t+sqrt(2)")}}, true);
    CHECK(both(el(q2t, "sqrt(2)*t")) == el(q2t, "-sqrt(2)*t-2"));
}

TEST_CASE("derivations") {
    const auto qt = support::qt();
    const auto d = d_t(qt);
    CHECK(d(el(qt, "t^2+1")) == el(qt, "2*t"));
    CHECK(d(el(qt, "1/(t-1)")) == el(qt, "-1/(t-1)^2"));
    // Quotient rule by hand, independent of the derivation code.
    CHECK(support::oracle_value_is(qt, ox::apply_map(d.descriptor(), ox::lit_text("1/(t-1)")), "-1/(t^2-2*t+1)"));
    CHECK(d(el(qt, "3")).is_zero());
    CHECK_THROWS_AS(build_derivation(support::q2(), {}), UnsupportedSpec);
    CHECK_THROWS_AS(build_derivation(support::q(), {}), UnsupportedSpec);

    const auto qtu = FieldSpec::ratfunc(support::q(), {"t", "u"});
    const auto du = build_derivation(qtu, {{"u", el(qtu, "t")}});
    CHECK(du(el(qtu, "t*u^2")) == el(qtu, "2*t^2*u"));
}

TEST_CASE("apply_map on composite nodes") {
    const auto qt = support::qt();
    const auto a = sum_map({d_t(qt), AdditiveMap::identity(qt)});
    CHECK(a(el(qt, "t^2")) == el(qt, "t^2+2*t"));
    CHECK(apply_map(AdditiveMap::identity(qt), el(qt, "1/t")) == el(qt, "1/t"));
    const auto q = support::q();
    CHECK(scale_map(el(q, "3"), AdditiveMap::identity(q))(el(q, "1/2")) == el(q, "3/2"));
    const auto sq = build_endomorphism(qt, {{"t", el(qt, "t^2")}}, false);
    const auto c = compose_map(d_t(qt), sq);
    CHECK(c(el(qt, "t")) == el(qt, "2*t"));
    CHECK(AdditiveMap::zero(qt)(el(qt, "t")).is_zero());
    CHECK_THROWS_AS(sum_map({AdditiveMap::identity(qt), AdditiveMap::identity(q)}), SpecMismatch);
}

TEST_CASE("law verification") {
    const auto qt = support::qt();
    const auto d = d_t(qt);
    const std::vector<std::pair<FieldElement, FieldElement>> pairs = {{el(qt, "t"), el(qt, "t+1")},
                                                                     {el(qt, "t^2"), el(qt, "1/t")}};
    Report r = verify_map_laws(d, MapLaw::Leibniz, pairs);
    CHECK(r.verdict == Verdict::Pass);
    support::oracle_confirms(r);

    const auto sq = build_endomorphism(qt, {{"t", el(qt, "t^2")}}, false);
    r = verify_map_laws(sq, MapLaw::Multiplicative, {{el(qt, "t"), el(qt, "t+1")}});
    CHECK(r.verdict == Verdict::Pass);
    support::oracle_confirms(r);

    const auto a = sum_map({d, AdditiveMap::identity(qt)});
    r = verify_map_laws(a, MapLaw::Multiplicative, {{el(qt, "t"), el(qt, "t")}});
    REQUIRE(r.verdict == Verdict::Refuted);
    REQUIRE(r.witnesses.size() == 1);
    CHECK(r.witnesses[0].lhs == el(qt, "t^2+2*t"));
    CHECK(r.witnesses[0].rhs == el(qt, "t^2+2*t+1"));
    CHECK(r.witnesses[0].difference == el(qt, "-1"));
    CHECK(naive::check_witness(r.field, "t^2+2*t", "(1+t)^2", "-1").ok);
    support::oracle_confirms(r);
}

TEST_CASE("every node is additive on samples") {
    const auto q2t = FieldSpec::ratfunc(support::q2(), {"t"});
    const auto d = build_derivation(q2t, {{"t", el(q2t, "t^2+sqrt(2)")}});
    const auto h = build_endomorphism(q2t, {{"t", el(q2t, "1/t")}}, true);
    const std::vector<AdditiveMap> maps = {
        d, h, scale_map(el(q2t, "sqrt(2)"), h), sum_map({d, h, AdditiveMap::identity(q2t)}), compose_map(d, h),
        compose_map(h, d)};
    SampleConfig cfg;
    cfg.seed = 11;
    cfg.count = 8;
    for (const auto& m : maps) {
        const Report r = verify_map_laws(m, MapLaw::Additive, sample_pairs(q2t, cfg));
        CHECK(r.verdict == Verdict::Pass);
        CHECK(support::oracle_confirms(r) >= 2);
    }
}

TEST_CASE("descriptors and names") {
    const auto qt = support::qt();
    const auto d = d_t(qt).named("d");
    CHECK(d.to_string() == "d");
    CHECK(d.descriptor()["kind"] == "derivation");
    CHECK(sum_map({d, AdditiveMap::identity(qt)}).descriptor()["kind"] == "sum");
}
