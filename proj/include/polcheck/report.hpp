#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "polcheck/field/field_element.hpp"

namespace polcheck {

using Json = nlohmann::ordered_json;

enum class Verdict { Pass, HoldsOnSample, HoldsOnSpan, Refuted, NotApplicable, Inconclusive };

std::string verdict_name(Verdict v);
/// Pass and the two HOLDS verdicts.
bool verdict_ok(Verdict v) noexcept;

/// One checked input where the two sides disagree (or, for informative entries, agree).
struct Witness {
    std::vector<FieldElement> inputs;
    FieldElement lhs;
    FieldElement rhs;
    FieldElement difference;
    std::string note;
};

/// A named sub-condition, used where an operation checks several facts at once.
struct Condition {
    std::string name;
    bool holds = true;
    std::vector<Witness> witnesses;
    std::string note;
};

struct Classification {
    std::optional<FieldElement> f_at_1;
    std::vector<std::string> factors;
    std::string case_tag;
    /// Extra derived scalars (power-identity constants, quartic scale), in insertion order.
    std::vector<std::pair<std::string, FieldElement>> scalars;
};

/// An engine value together with a closed expression the naive oracle can evaluate on its own.
struct Claim {
    std::string label;
    Json expr;
    std::string value;
};

struct Report {
    std::string operation;
    Verdict verdict = Verdict::Pass;
    std::vector<Witness> witnesses;
    std::vector<Condition> conditions;
    std::optional<Classification> classification;
    std::string sample_description;
    std::vector<std::string> notes;
    /// Operation-specific results such as a degree, a rank, or a polarized value.
    Json values = Json::object();
    Json field;
    std::vector<Claim> claims;

    bool ok() const noexcept { return verdict_ok(verdict); }
};

/// Field descriptor understood by the oracle: {"radicand": d, "vars": [...]}.
Json field_json(const FieldSpec& spec);

/// Adds a claim that `expr` evaluates to `value`.
void add_claim(Report& r, std::string label, Json expr, const FieldElement& value);

Witness make_witness(std::vector<FieldElement> inputs, const FieldElement& lhs, const FieldElement& rhs,
                     std::string note = {});

}  // namespace polcheck
