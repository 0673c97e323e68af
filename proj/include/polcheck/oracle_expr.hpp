#pragma once

#include <string>
#include <vector>

#include "polcheck/report.hpp"

// Builders for the closed expressions attached to claims. The shapes are the input language of
// the naive oracle (tests/oracle), which evaluates them without touching engine arithmetic.
namespace polcheck::ox {

Json lit(const FieldElement& e);
Json lit_text(const std::string& text);
Json var(const std::string& name);
Json add(Json a, Json b);
Json sub(Json a, Json b);
Json mul(Json a, Json b);
Json div(Json a, Json b);
Json neg(Json a);
Json pow(Json a, long e);
Json sum(std::vector<Json> terms);
Json apply_map(const Json& map_desc, Json arg);
Json eval_form(const Json& form_desc, std::vector<Json> args);
Json trace(const Json& form_desc, Json arg);
/// Function of one variable `param` given by `body`.
Json lambda(const std::string& param, Json body);
Json call(const Json& fn, Json arg);
/// Iterated difference of `fn` at `at` with the given increments.
Json delta(const Json& fn, Json at, std::vector<Json> incs);
/// Rank of a matrix of closed expressions; the claimed value is the rank as an integer.
Json rank(std::vector<std::vector<Json>> rows);

std::vector<Json> lits(const std::vector<FieldElement>& es);

}  // namespace polcheck::ox
