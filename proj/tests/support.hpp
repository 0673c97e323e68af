#pragma once

#include <string>
#include <vector>

#include <doctest.h>

#include "naive_oracle.hpp"
#include "polcheck/errors.hpp"
#include "polcheck/field/parse.hpp"
#include "polcheck/report.hpp"

namespace support {

inline polcheck::FieldElement el(const polcheck::SpecPtr& s, const std::string& text) {
    return polcheck::parse_element(text, s);
}

inline std::vector<polcheck::FieldElement> els(const polcheck::SpecPtr& s, const std::vector<std::string>& texts) {
    std::vector<polcheck::FieldElement> out;
    for (const auto& t : texts) out.push_back(el(s, t));
    return out;
}

inline polcheck::SpecPtr q() { return polcheck::FieldSpec::rationals(); }
inline polcheck::SpecPtr q2() { return polcheck::FieldSpec::quadratic(2); }
inline polcheck::SpecPtr qt() { return polcheck::FieldSpec::ratfunc(q(), {"t"}); }

/// Every claim a report makes, re-evaluated by the naive oracle. Returns the number checked.
inline std::size_t oracle_confirms(const polcheck::Report& r) {
    polcheck::Json claims = polcheck::Json::array();
    for (const auto& c : r.claims) claims.push_back({{"label", c.label}, {"expr", c.expr}, {"value", c.value}});
    const naive::Tally t = naive::check_reports(polcheck::Json{{"operation", r.operation}, {"field", r.field}, {"claims", claims}});
    for (const auto& f : t.failures) FAIL_CHECK(f);
    return t.checked;
}

/// Oracle value of a closed expression, as engine-independent text compared against `expected`.
inline bool oracle_value_is(const polcheck::SpecPtr& s, const polcheck::Json& expr, const std::string& expected) {
    return naive::check_claim(polcheck::field_json(*s), {{"label", "v"}, {"expr", expr}, {"value", expected}}).ok;
}

}  // namespace support
