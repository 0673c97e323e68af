#include "polcheck/field/field_spec.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <set>

#include "polcheck/errors.hpp"

namespace polcheck {

namespace {

constexpr std::array kReserved = {
    "x",         "sqrt",      "field",     "hom",        "der",       "map",      "form",
    "genpoly",   "check",     "classify",  "degree",     "rank",      "verify",   "polarize",
    "option",    "id",        "conj",      "zero",       "Q",         "on",       "samples",
    "span",      "seed",      "with",      "dictionary", "product",   "mapprod",  "lift",
    "lincomb",   "formprod",  "trace",     "quadratic",  "power",     "quartic",  "affine",
    "mult",      "add",       "translates", "points",    "at",        "additive", "multiplicative",
    "leibniz",   "levicivita", "twoexp",   "logexp",     "params",
};

bool is_identifier(std::string_view s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
}

}  // namespace

bool is_reserved_word(std::string_view word) noexcept {
    return std::find(kReserved.begin(), kReserved.end(), word) != kReserved.end();
}

bool is_squarefree(std::int64_t d) noexcept {
    std::uint64_t n = d < 0 ? static_cast<std::uint64_t>(-(d + 1)) + 1 : static_cast<std::uint64_t>(d);
    if (n == 0) return false;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % (p * p) == 0) return false;
    }
    return true;
}

SpecPtr FieldSpec::rationals() {
    static const SpecPtr q(new FieldSpec(Kind::Rationals, 0, {}));
    return q;
}

SpecPtr FieldSpec::quadratic(std::int64_t d) {
    if (d == 0 || d == 1 || !is_squarefree(d)) {
        throw InvalidSpec("radicand " + std::to_string(d) + " must be squarefree and not 0 or 1");
    }
    return SpecPtr(new FieldSpec(Kind::Quadratic, d, {}));
}

SpecPtr FieldSpec::ratfunc(const SpecPtr& base, std::vector<std::string> vars) {
    if (base->kind() == Kind::RatFunc) throw InvalidSpec("rational function fields cannot be nested");
    if (vars.empty()) throw InvalidSpec("a rational function field needs at least one indeterminate");
    std::set<std::string> seen;
    for (const auto& v : vars) {
        if (!is_identifier(v)) throw InvalidSpec("invalid indeterminate name '" + v + "'");
        if (is_reserved_word(v)) throw InvalidSpec("indeterminate name '" + v + "' is reserved");
        if (!seen.insert(v).second) throw InvalidSpec("duplicate indeterminate '" + v + "'");
    }
    return SpecPtr(new FieldSpec(Kind::RatFunc, base->radicand(), std::move(vars)));
}

int FieldSpec::var_index(std::string_view name) const noexcept {
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        if (vars_[i] == name) return static_cast<int>(i);
    }
    return -1;
}

std::string FieldSpec::name() const {
    std::string out = d_ == 0 ? "Q" : "Q(sqrt(" + std::to_string(d_) + "))";
    if (kind_ == Kind::RatFunc) {
        out += "(";
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            if (i) out += ", ";
            out += vars_[i];
        }
        out += ")";
    }
    return out;
}

bool same_spec(const SpecPtr& a, const SpecPtr& b) noexcept {
    return a == b || (a && b && *a == *b);
}

}  // namespace polcheck
