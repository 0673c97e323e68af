#include "polcheck/dsl/session.hpp"
#include "polcheck/oracle_expr.hpp"
#include "support.hpp"

using namespace polcheck;
using namespace polcheck::dsl;

namespace {

const char* kNorm = R"(field F = Q(sqrt 2);
hom c = conj;
form N2 = product(id, c);
genpoly f = trace(N2);
check f(x^2) == f(x)^2 on span(1, sqrt(2), 1+sqrt(2));
)";

const char* kDPlusId = R"(field K = Q(t);
der d : t -> 1;
map a = d + id;
form A2 = mapprod(a, 2);
genpoly f = trace(A2);
check f(x^2) == f(x)^2;
)";

ReportDocument run(const std::string& src, bool oracle = true) {
    RunFlags flags;
    flags.oracle_check = oracle;
    return run_session(parse_session(src), flags);
}

template <class E, class F>
E caught(F&& f) {
    try {
        f();
    } catch (const E& e) {
        return e;
    }
    FAIL("expected exception");
    throw std::logic_error("unreachable");
}

}  // namespace

TEST_CASE("parse shape") {
    const SessionAst a = parse_syntax(kNorm);
    CHECK(a.stmts.size() == 5);
    CHECK(std::holds_alternative<FieldDecl>(a.stmts[0].body));
    CHECK(std::holds_alternative<CheckCmd>(a.stmts[4].body));
    const Session s = parse_session(kNorm);
    CHECK(s.declarations == 4);
    CHECK(s.commands.size() == 1);
    CHECK(s.commands[0].loc.line == 5);
}

TEST_CASE("round trip") {
    for (const char* src : {kNorm, kDPlusId}) {
        const auto once = format_session(parse_syntax(src));
        CHECK(format_session(parse_syntax(once)) == once);
    }
    const auto e = parse_syntax("field K = Q(t); map m = 2*d @ h - (id + d);");
    CHECK(format_session(parse_syntax(format_session(e))) == format_session(e));
}

TEST_CASE("syntax errors carry position and expected tokens") {
    const auto e = caught<SyntaxError>([] { parse_syntax("field F = Q(sqrt 2);\nhom c = conj\nform N = product(id, c);"); });
    CHECK(e.line() == 3);
    CHECK(e.column() == 1);
    CHECK(e.expected().count("';'") == 1);
    CHECK(std::string(e.what()).find("expected") != std::string::npos);

    const auto e2 = caught<SyntaxError>([] { parse_syntax("field F = Q(sqrt 2);\n  frobnicate F;"); });
    CHECK(e2.line() == 2);
    CHECK(e2.column() == 3);
    CHECK_FALSE(e2.expected().empty());
}

TEST_CASE("elaboration errors") {
    const auto lift0 = caught<SessionError>([] {
        parse_session("field F = Q(sqrt 2);\nhom c = conj;\nform N2 = product(id, c);\nform B = lift(N2, 0);\n");
    });
    CHECK(lift0.kind() == "TypeMismatch");
    CHECK(lift0.loc().line == 4);

    const auto unknown = caught<SessionError>([] { parse_session("field K = Q(t);\ncheck g(x^2) == g(x)^2;\n"); });
    CHECK(unknown.kind() == "NameError");
    CHECK(unknown.loc().line == 2);

    CHECK(caught<SessionError>([] { parse_session("field K = Q(t);\nhom h : t -> 5;\n"); }).kind() == "InvalidImage");
    CHECK(caught<SessionError>([] { parse_session("field K = Q;\nhom c = conj;\n"); }).kind() == "UnsupportedSpec");
    CHECK(caught<SessionError>([] { parse_session("field K = Q;\nder d : t -> 1;\n"); }).kind() == "NameError");
}

TEST_CASE("degree mismatch is not applicable") {
    std::string src = kDPlusId;
    src += "check f(x^2) == f(x)^3 on samples(10, seed=7);\n";
    const ReportDocument doc = run(src);
    REQUIRE(doc.entries.size() == 2);
    CHECK(doc.entries[1].report.verdict == Verdict::NotApplicable);
    CHECK(doc.entries[1].report.values["lhs_degree"] == 4);
    CHECK(doc.entries[1].report.values["rhs_degree"] == 6);
}

TEST_CASE("norm session holds on the span") {
    const ReportDocument doc = run(kNorm);
    REQUIRE(doc.entries.size() == 1);
    CHECK(doc.entries[0].report.verdict == Verdict::HoldsOnSpan);
    CHECK(doc.exit_code() == 0);
    CHECK(doc.oracle_failures.empty());
    CHECK(doc.claims_checked > 0);

    const std::string text = emit_text(doc);
    CHECK(text.find("HOLDS_ON_SPAN") != std::string::npos);
    CHECK(text.find("generators: 1, sqrt(2), 1+sqrt(2)") != std::string::npos);
}

TEST_CASE("nonpolynomial example is refuted at t") {
    const ReportDocument doc = run(kDPlusId);
    REQUIRE(doc.entries.size() == 1);
    const Report& r = doc.entries[0].report;
    REQUIRE(r.verdict == Verdict::Refuted);
    const auto qt = support::qt();
    const Witness& w = r.witnesses.front();
    CHECK(w.inputs == support::els(qt, {"t"}));
    CHECK(w.difference == support::el(qt, "-4*t^2"));
    CHECK(doc.exit_code() == 1);
    CHECK(doc.oracle_failures.empty());

    const Json j = Json::parse(emit_json(doc));
    CHECK(j["schema"] == "1");
    const Json& e = j["entries"][0];
    CHECK(e["verdict"] == "REFUTED");
    REQUIRE_FALSE(e["witnesses"].empty());
    CHECK(e["witnesses"][0]["inputs"][0] == "t");
    CHECK(e["witnesses"][0]["difference"] == "-4*t^2");
    CHECK(j["summary"]["exit_code"] == 1);

    const std::string text = emit_text(doc);
    CHECK(text.find("x = t, lhs = t^4+4*t^3, rhs = t^4+4*t^3+4*t^2, diff = -4*t^2") != std::string::npos);
}

TEST_CASE("json field order is stable") {
    const std::string out = emit_json(run(kNorm));
    const auto at = [&](const char* k) { return out.find(std::string("\"") + k + "\""); };
    CHECK(at("schema") < at("tool"));
    CHECK(at("tool") < at("session_digest"));
    CHECK(at("seed") < at("entries"));
    CHECK(at("entries") < at("summary"));
    CHECK(at("operation") < at("verdict"));
    CHECK(at("verdict") < at("witnesses"));
    CHECK(out == emit_json(run(kNorm)));
}

TEST_CASE("empty session") {
    const ReportDocument doc = run("");
    CHECK(doc.entries.empty());
    CHECK(doc.exit_code() == 0);
    const Json j = Json::parse(emit_json(doc));
    CHECK(j["entries"].empty());
    CHECK(run("# only a comment\nfield K = Q(t);\n").exit_code() == 0);
}

TEST_CASE("a failing command does not stop later ones") {
    Session s = parse_session(kNorm);
    s.commands.insert(s.commands.begin(), Command{"boom", {1, 1}, [](const RunConfig&) -> Report {
                                                      throw DivisionByZero();
                                                  }});
    const ReportDocument doc = run_session(s, {});
    REQUIRE(doc.entries.size() == 2);
    CHECK(doc.entries[0].report.verdict == Verdict::Inconclusive);
    CHECK_FALSE(doc.entries[0].error.empty());
    CHECK(doc.entries[1].report.verdict == Verdict::HoldsOnSpan);
    CHECK(doc.exit_code() == 1);
}

TEST_CASE("oracle disagreement exits with 3") {
    Session s = parse_session(kNorm);
    s.commands.push_back(Command{"faulty", {9, 1}, [](const RunConfig&) {
                                     const auto q2 = support::q2();
                                     Report r;
                                     r.operation = "faulty";
                                     r.verdict = Verdict::Pass;
                                     r.field = field_json(*q2);
                                     // 1+sqrt(2) squared is 3+2*sqrt(2), not 3
                                     add_claim(r, "square", ox::pow(ox::lit_text("1+sqrt(2)"), 2), support::el(q2, "3"));
                                     return r;
                                 }});
    RunFlags flags;
    flags.oracle_check = true;
    const ReportDocument doc = run_session(s, flags);
    CHECK(doc.oracle_failures.size() == 1);
    CHECK(doc.exit_code() == 3);
    // without the check the same session only sees verdicts
    CHECK(run_session(s, {}).exit_code() == 0);
}

TEST_CASE("seed precedence") {
    const Session s = parse_session(std::string(kDPlusId) + "option seed = 5;\n");
    RunFlags flags;
    flags.env_seed = 9;
    CHECK(run_session(s, flags).config.samples.seed == 5);
    flags.seed = 3;
    CHECK(run_session(s, flags).config.samples.seed == 3);
    const Session plain = parse_session(kDPlusId);
    RunFlags env;
    env.env_seed = 9;
    CHECK(run_session(plain, env).config.samples.seed == 9);
    CHECK(run_session(plain, {}).config.samples.seed == 1);
}

TEST_CASE("session digest ignores layout") {
    const auto a = parse_syntax(kNorm);
    const auto b = parse_syntax("field   F = Q(sqrt 2);   hom c = conj; form N2 = product(id,c);\n# note\ngenpoly f = trace(N2);\n"
                                "check f(x^2) == f(x)^2 on span(1, sqrt(2), 1+sqrt(2));");
    CHECK(session_digest(a) == session_digest(b));
    CHECK(session_digest(a).size() == 16);
    CHECK(session_digest(a) != session_digest(parse_syntax(kDPlusId)));
}
