#pragma once

// Reference evaluator for claims. It shares no code with the engine: numbers are GMP rationals
// paired by hand, polynomials are plain std::map, and rational functions keep an unreduced
// denominator as a product of monic factors. Forms are evaluated by polarizing their trace.

#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>
#include "json.hpp"

namespace naive {

using Json = nlohmann::ordered_json;

struct Num {
    mpq_class a, b;  // a + b sqrt(d)
    long d = 0;
};

inline bool operator==(const Num& x, const Num& y) { return x.a == y.a && x.b == y.b; }
inline bool operator<(const Num& x, const Num& y) { return x.a != y.a ? x.a < y.a : x.b < y.b; }

using Mono = std::vector<unsigned>;
using Poly = std::map<Mono, Num>;

struct Ctx {
    long d = 0;
    std::vector<std::string> vars;

    static Ctx from_json(const Json& field);
};

struct Rat {
    Poly num;
    std::map<Poly, unsigned> den;
};

Rat parse(const Ctx& c, const std::string& text);
bool equal(const Ctx& c, const Rat& x, const Rat& y);
std::string debug_text(const Ctx& c, const Rat& x);

/// Evaluates an expression tree. Throws std::runtime_error on malformed input or division by zero.
Rat eval(const Ctx& c, const Json& expr);
std::size_t rank(const Ctx& c, const Json& rows);

struct ClaimResult {
    bool ok;
    std::string detail;
};

/// Checks one claim {"label","expr","value"} against the field description.
ClaimResult check_claim(const Json& field, const Json& claim);

struct Tally {
    std::size_t checked = 0;
    std::vector<std::string> failures;
};

/// lhs - rhs = diff and diff != 0, all three given as element text.
ClaimResult check_witness(const Json& field, const std::string& lhs, const std::string& rhs, const std::string& diff);

/// Checks every claim in a report (object with "field" and "claims") or list of reports.
Tally check_reports(const Json& reports);

}  // namespace naive
