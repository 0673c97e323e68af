#include "polcheck/report.hpp"

namespace polcheck {

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "PASS";
        case Verdict::HoldsOnSample: return "HOLDS_ON_SAMPLE";
        case Verdict::HoldsOnSpan: return "HOLDS_ON_SPAN";
        case Verdict::Refuted: return "REFUTED";
        case Verdict::NotApplicable: return "NOT_APPLICABLE";
        case Verdict::Inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

bool verdict_ok(Verdict v) noexcept {
    return v == Verdict::Pass || v == Verdict::HoldsOnSample || v == Verdict::HoldsOnSpan;
}

Json field_json(const FieldSpec& spec) {
    Json j;
    j["radicand"] = spec.radicand();
    j["vars"] = spec.vars();
    return j;
}

void add_claim(Report& r, std::string label, Json expr, const FieldElement& value) {
    r.claims.push_back({std::move(label), std::move(expr), value.to_string()});
}

Witness make_witness(std::vector<FieldElement> inputs, const FieldElement& lhs, const FieldElement& rhs,
                     std::string note) {
    return Witness{std::move(inputs), lhs, rhs, lhs - rhs, std::move(note)};
}

}  // namespace polcheck
