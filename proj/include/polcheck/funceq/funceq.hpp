#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "polcheck/genpoly/genpoly.hpp"

namespace polcheck {

/// Dense univariate polynomial, coefficients from degree 0 upward.
struct PolySpec {
    enum class Side { Domain, Codomain };

    std::vector<FieldElement> coefficients;
    Side side = Side::Domain;

    /// Throws InvalidSpec if the leading coefficient is zero (the zero polynomial is empty).
    static PolySpec make(std::vector<FieldElement> coefficients, Side side);
    /// lambda * x^k
    static PolySpec monomial(const FieldElement& lambda, std::size_t k, Side side);

    /// -1 for the zero polynomial.
    long degree() const noexcept;
    FieldElement operator()(const FieldElement& x) const;
    Json oracle(Json arg) const;
    /// If the polynomial is lambda * x^k, returns (k, lambda).
    std::optional<std::pair<std::size_t, FieldElement>> as_monomial() const;
    std::string to_string(const std::string& var) const;
};

/// Passes iff deg P = deg Q; otherwise NOT_APPLICABLE.
Report degree_precheck(std::size_t f_deg, const PolySpec& p, const PolySpec& q);

/// lhs(x) = rhs(x) at each sample; REFUTED collects every violating sample.
Report check_pointwise(const Function& lhs, const Function& rhs, const std::vector<FieldElement>& samples);
/// f(P(x)) = Q(f(x)) at each sample.
Report check_pointwise(const GenPoly& f, const PolySpec& p, const PolySpec& q, const std::vector<FieldElement>& samples);

Function compose_inner(const Function& f, const PolySpec& p);
Function compose_outer(const PolySpec& q, const Function& f);

/// Compares LIFT(F, k) with lambda * FORMPROD(F, ..., F) on every multiset of n*k generators,
/// certifying f(x^k) = lambda f(x)^k on the Q-span of the n*k-fold generator products.
Report check_symmetrized(const GenPoly& f, std::size_t k, const FieldElement& lambda,
                         const std::vector<FieldElement>& generators, std::size_t max_arity = kDefaultMaxArity);

/// The six-term 4-additive form built from F2.
FieldElement f4_value(const SymmetricForm& f2, std::span<const FieldElement> xs);
/// F4 as a form expression: 3 LIFT(F2, 2) - 3 FORMPROD(F2, F2).
SymmetricForm f4_form(const SymmetricForm& f2);

Report classify_quadratic_square(const SymmetricForm& f2, const std::vector<AdditiveMap>& dictionary,
                                 const std::vector<FieldElement>& probes);

/// f(x^n) = f(x)^n for a degree-2 monomial f.
Report check_power_identity(const GenPoly& f, std::size_t n, const std::vector<FieldElement>& probes,
                            std::size_t max_arity = kDefaultMaxArity);

struct AffineParams {
    FieldElement a, b, A, B;
};

/// Necessary conditions for f(ax + b) = A f(x) + B with f the trace of F2.
Report affine_check(const SymmetricForm& f2, const AffineParams& params, const std::vector<FieldElement>& probes);

/// f(x^2) = a(x)^4 with f = 3/2 a(1)^2 a(x)^2 - 1/2 a(1)^3 a(x^2).
Report quartic_solve(const AdditiveMap& a, const std::vector<AdditiveMap>& dictionary,
                     const std::vector<FieldElement>& probes);

struct TwoExp {
    FieldElement alpha, beta;
    AdditiveMap phi1, phi2;
};
struct LogExp {
    AdditiveMap phi, d;
    FieldElement c;
};
using LeviCivita = std::variant<TwoExp, LogExp>;

/// Checks a claimed representation of a and the product expansion of a(xy) it induces.
Report levicivita_verify(const AdditiveMap& a, const LeviCivita& decomposition, const std::vector<FieldElement>& probes);

/// Q: {id}; Q(sqrt d) and its rational function fields: {id, conj}; Q(t...): {id}.
std::vector<AdditiveMap> default_dictionary(const SpecPtr& spec);

}  // namespace polcheck
