#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "polcheck/field/scalar.hpp"

namespace polcheck {

using Exponents = std::vector<std::uint32_t>;

/// Graded-lexicographic comparison: total degree first, then lexicographic with the first
/// indeterminate most significant.
int grlex_compare(const Exponents& a, const Exponents& b) noexcept;

/// Sparse multivariate polynomial with Scalar coefficients. Terms are kept sorted in
/// descending graded-lex order with no zero coefficients, so equality is structural.
class MPoly {
   public:
    struct Term {
        Exponents exp;
        Scalar coeff;
        bool operator==(const Term&) const = default;
    };

    MPoly() = default;
    MPoly(std::size_t nvars, std::int64_t d) : nvars_(nvars), d_(d) {}

    static MPoly constant(std::size_t nvars, const Scalar& c);
    static MPoly variable(std::size_t nvars, std::int64_t d, std::size_t index);
    /// Builds from arbitrary (unsorted, possibly repeated) terms.
    static MPoly from_terms(std::size_t nvars, std::int64_t d, std::vector<Term> terms);

    std::size_t nvars() const noexcept { return nvars_; }
    std::int64_t radicand() const noexcept { return d_; }
    const std::vector<Term>& terms() const noexcept { return terms_; }

    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const noexcept;
    /// Constant term (zero scalar when absent).
    Scalar constant_term() const;
    /// Leading coefficient under graded-lex; requires nonzero.
    const Scalar& leading_coeff() const { return terms_.front().coeff; }
    const Exponents& leading_exponents() const { return terms_.front().exp; }

    std::uint32_t total_degree() const noexcept;
    std::uint32_t degree_in(std::size_t var) const noexcept;
    bool involves(std::size_t var) const noexcept { return degree_in(var) > 0; }

    MPoly operator-() const;
    MPoly& operator+=(const MPoly& o);
    MPoly& operator-=(const MPoly& o);
    friend MPoly operator+(MPoly l, const MPoly& r) { return l += r; }
    friend MPoly operator-(MPoly l, const MPoly& r) { return l -= r; }
    friend MPoly operator*(const MPoly& l, const MPoly& r);
    MPoly scaled(const Scalar& c) const;
    MPoly pow(unsigned e) const;
    MPoly conjugate_coefficients() const;
    MPoly partial_derivative(std::size_t var) const;

    /// Divides every coefficient by the graded-lex leading coefficient.
    MPoly monic() const;

    friend bool operator==(const MPoly& l, const MPoly& r) { return l.terms_ == r.terms_; }

   private:
    void add_sorted(const MPoly& o, bool negate);

    std::size_t nvars_ = 0;
    std::int64_t d_ = 0;
    std::vector<Term> terms_;
};

/// Exact quotient a / b; throws std::logic_error when b does not divide a.
MPoly exact_divide(const MPoly& a, const MPoly& b);

/// Greatest common divisor normalized to graded-lex leading coefficient 1 (zero if both zero).
/// Recursive primitive pseudo-remainder sequences over K[other variables][v].
MPoly gcd(const MPoly& a, const MPoly& b);

}  // namespace polcheck
