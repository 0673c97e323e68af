#pragma once

#include <string_view>

#include "polcheck/field/field_element.hpp"

namespace polcheck {

/// Parses integer literals, `sqrt(n)`, indeterminate names, + - * / ^ and parentheses into a
/// canonical element of `spec`. Throws SyntaxError (with byte position and the expected token
/// set) on malformed text and SpecMismatch for tokens the field does not have.
FieldElement parse_element(std::string_view text, const SpecPtr& spec);

/// sqrt(n) inside `spec`: n must be a perfect square or a square times the radicand.
FieldElement sqrt_literal(const mpz_class& n, const SpecPtr& spec);

}  // namespace polcheck
