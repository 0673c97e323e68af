#pragma once

#include <gmpxx.h>

#include <map>
#include <span>
#include <string>
#include <string_view>

#include "polcheck/field/field_spec.hpp"
#include "polcheck/field/mpoly.hpp"

namespace polcheck {

/// Exact element of a FieldSpec, always held in canonical form: a fraction num/den of
/// coprime polynomials whose denominator has graded-lex leading coefficient 1. For Q and
/// Q(sqrt d) both polynomials are constants and den == 1, so canonical form coincides with a
/// reduced rational (or a pair of reduced rationals). Equality is structural.
class FieldElement {
   public:
    /// The zero of Q; mostly useful as a placeholder.
    FieldElement();

    static FieldElement zero(const SpecPtr& spec);
    static FieldElement one(const SpecPtr& spec);
    static FieldElement integer(const SpecPtr& spec, long n);
    static FieldElement rational(const SpecPtr& spec, const mpq_class& q);
    static FieldElement scalar(const SpecPtr& spec, const Scalar& s);
    /// sqrt(d) of the coefficient field; SpecMismatch if the coefficients are rational.
    static FieldElement sqrt_radicand(const SpecPtr& spec);
    static FieldElement indeterminate(const SpecPtr& spec, std::string_view name);
    /// Normalizes an arbitrary fraction; throws DivisionByZero when den is zero.
    static FieldElement fraction(const SpecPtr& spec, MPoly num, MPoly den);

    const SpecPtr& spec() const noexcept { return spec_; }
    const MPoly& numerator() const noexcept { return num_; }
    const MPoly& denominator() const noexcept { return den_; }

    bool is_zero() const noexcept { return num_.is_zero(); }
    bool is_one() const noexcept;
    /// True when the element lies in the coefficient field Q or Q(sqrt d).
    bool is_constant() const noexcept { return num_.is_constant() && den_.is_constant(); }
    /// Value of a constant element; SpecMismatch otherwise.
    Scalar constant_value() const;

    FieldElement operator-() const;
    FieldElement& operator+=(const FieldElement& o);
    FieldElement& operator-=(const FieldElement& o);
    FieldElement& operator*=(const FieldElement& o);
    FieldElement& operator/=(const FieldElement& o);
    friend FieldElement operator+(FieldElement l, const FieldElement& r) { return l += r; }
    friend FieldElement operator-(FieldElement l, const FieldElement& r) { return l -= r; }
    friend FieldElement operator*(FieldElement l, const FieldElement& r) { return l *= r; }
    friend FieldElement operator/(FieldElement l, const FieldElement& r) { return l /= r; }
    FieldElement inverse() const;
    /// Negative exponents invert; zero to a negative power throws DivisionByZero.
    FieldElement pow(long e) const;

    /// Applies sqrt(d) -> -sqrt(d) to every coefficient.
    FieldElement conjugate_coefficients() const;
    /// Replaces each indeterminate i by images[i] and normalizes in the images' field.
    /// Throws DenominatorVanishes if the substituted denominator is zero.
    FieldElement substitute(std::span<const FieldElement> images) const;

    /// Canonical text: graded-lex term order, minimal parentheses, `sqrt(d)` spelled out.
    std::string to_string() const;

    friend bool operator==(const FieldElement& l, const FieldElement& r);

   private:
    FieldElement(SpecPtr spec, MPoly num, MPoly den)
        : spec_(std::move(spec)), num_(std::move(num)), den_(std::move(den)) {}
    void check_same(const FieldElement& o) const;

    SpecPtr spec_;
    MPoly num_;
    MPoly den_;
};

enum class ArithOp { Add, Sub, Mul, Div };

/// Binary field operation between two elements of one field; SpecMismatch otherwise.
FieldElement field_arith(ArithOp op, const FieldElement& lhs, const FieldElement& rhs);
FieldElement field_pow(const FieldElement& base, long exponent);

/// Canonicalizes a raw fraction of polynomials; idempotent on canonical input.
FieldElement normalize(const SpecPtr& spec, MPoly num, MPoly den);

/// Substitution with images given by indeterminate name; every indeterminate needs an image.
FieldElement substitute(const FieldElement& e, const std::map<std::string, FieldElement>& images);

/// Text of a polynomial in the canonical element format.
std::string polynomial_to_string(const MPoly& p, const FieldSpec& spec);

std::ostream& operator<<(std::ostream& os, const FieldElement& e);

}  // namespace polcheck
