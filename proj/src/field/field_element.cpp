#include "polcheck/field/field_element.hpp"

#include <ostream>
#include <vector>

#include "polcheck/errors.hpp"

namespace polcheck {

namespace {

Scalar scalar_one(std::int64_t d) { return Scalar(mpq_class(1), d); }

MPoly one_poly(const FieldSpec& spec) { return MPoly::constant(spec.nvars(), scalar_one(spec.radicand())); }

bool is_unit_poly(const MPoly& p) { return p.is_constant() && !p.is_zero() && p.leading_coeff().is_one(); }

}  // namespace

FieldElement::FieldElement()
    : spec_(FieldSpec::rationals()), num_(0, 0), den_(MPoly::constant(0, Scalar(mpq_class(1), 0))) {}

FieldElement FieldElement::zero(const SpecPtr& spec) {
    return FieldElement(spec, MPoly(spec->nvars(), spec->radicand()), one_poly(*spec));
}

FieldElement FieldElement::one(const SpecPtr& spec) { return integer(spec, 1); }

FieldElement FieldElement::integer(const SpecPtr& spec, long n) {
    return rational(spec, mpq_class(n));
}

FieldElement FieldElement::rational(const SpecPtr& spec, const mpq_class& q) {
    return scalar(spec, Scalar(q, spec->radicand()));
}

FieldElement FieldElement::scalar(const SpecPtr& spec, const Scalar& s) {
    if (!s.is_rational() && s.radicand() != spec->radicand()) {
        throw SpecMismatch("scalar with sqrt(" + std::to_string(s.radicand()) + ") does not belong to " +
                           spec->name());
    }
    Scalar c(s.rational_part(), s.sqrt_part(), spec->radicand());
    return FieldElement(spec, MPoly::constant(spec->nvars(), c), one_poly(*spec));
}

FieldElement FieldElement::sqrt_radicand(const SpecPtr& spec) {
    if (!spec->has_sqrt()) throw SpecMismatch("sqrt is not available in " + spec->name());
    return scalar(spec, Scalar(mpq_class(0), mpq_class(1), spec->radicand()));
}

FieldElement FieldElement::indeterminate(const SpecPtr& spec, std::string_view name) {
    const int idx = spec->var_index(name);
    if (idx < 0) throw SpecMismatch("'" + std::string(name) + "' is not an indeterminate of " + spec->name());
    return FieldElement(spec, MPoly::variable(spec->nvars(), spec->radicand(), static_cast<std::size_t>(idx)),
                        one_poly(*spec));
}

FieldElement FieldElement::fraction(const SpecPtr& spec, MPoly num, MPoly den) {
    if (den.is_zero()) throw DivisionByZero();
    if (num.is_zero()) return zero(spec);
    if (den.is_constant()) {
        if (!den.leading_coeff().is_one()) num = num.scaled(den.leading_coeff().inverse());
        return FieldElement(spec, std::move(num), one_poly(*spec));
    }
    if (!num.is_constant()) {
        MPoly g = gcd(num, den);
        if (!g.is_constant()) {
            num = exact_divide(num, g);
            den = exact_divide(den, g);
        }
    }
    const Scalar lc = den.leading_coeff();
    if (!lc.is_one()) {
        const Scalar inv = lc.inverse();
        num = num.scaled(inv);
        den = den.scaled(inv);
    }
    return FieldElement(spec, std::move(num), std::move(den));
}

bool FieldElement::is_one() const noexcept { return is_unit_poly(num_) && is_unit_poly(den_); }

Scalar FieldElement::constant_value() const {
    if (!is_constant()) throw SpecMismatch("element " + to_string() + " is not a constant");
    if (num_.is_zero()) return Scalar(spec_->radicand());
    return num_.leading_coeff();
}

void FieldElement::check_same(const FieldElement& o) const {
    if (!same_spec(spec_, o.spec_)) {
        throw SpecMismatch("operands belong to different fields: " + spec_->name() + " and " + o.spec_->name());
    }
}

FieldElement FieldElement::operator-() const { return FieldElement(spec_, -num_, den_); }

FieldElement& FieldElement::operator+=(const FieldElement& o) {
    check_same(o);
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    if (is_unit_poly(den_) && is_unit_poly(o.den_)) {
        num_ += o.num_;
        return *this;
    }
    if (den_ == o.den_) {
        *this = fraction(spec_, num_ + o.num_, den_);
        return *this;
    }
    // Henrici: only the common part g of the denominators can cancel against the new numerator.
    auto normalized = [this](MPoly num, MPoly den) {
        if (num.is_zero()) return zero(spec_);
        const Scalar lc = den.leading_coeff();
        if (!lc.is_one()) {
            const Scalar inv = lc.inverse();
            num = num.scaled(inv);
            den = den.scaled(inv);
        }
        return FieldElement(spec_, std::move(num), std::move(den));
    };
    const MPoly g = gcd(den_, o.den_);
    if (g.is_constant()) {
        *this = normalized(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
        return *this;
    }
    const MPoly b = exact_divide(den_, g), d = exact_divide(o.den_, g);
    MPoly num = num_ * d + o.num_ * b;
    if (num.is_zero()) return *this = zero(spec_);
    MPoly rest = g;
    const MPoly h = gcd(num, g);
    if (!h.is_constant()) {
        num = exact_divide(num, h);
        rest = exact_divide(g, h);
    }
    *this = normalized(std::move(num), b * d * rest);
    return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) { return *this += -o; }

FieldElement& FieldElement::operator*=(const FieldElement& o) {
    check_same(o);
    if (is_zero() || o.is_zero()) return *this = zero(spec_);
    if (is_unit_poly(den_) && is_unit_poly(o.den_)) {
        num_ = num_ * o.num_;
        return *this;
    }
    // Cross-cancel so the product is already reduced.
    MPoly g1 = gcd(num_, o.den_);
    MPoly g2 = gcd(o.num_, den_);
    MPoly n1 = g1.is_constant() ? num_ : exact_divide(num_, g1);
    MPoly d2 = g1.is_constant() ? o.den_ : exact_divide(o.den_, g1);
    MPoly n2 = g2.is_constant() ? o.num_ : exact_divide(o.num_, g2);
    MPoly d1 = g2.is_constant() ? den_ : exact_divide(den_, g2);
    MPoly num = n1 * n2;
    MPoly den = d1 * d2;
    const Scalar lc = den.leading_coeff();
    if (!lc.is_one()) {
        const Scalar inv = lc.inverse();
        num = num.scaled(inv);
        den = den.scaled(inv);
    }
    num_ = std::move(num);
    den_ = std::move(den);
    return *this;
}

FieldElement FieldElement::inverse() const {
    if (is_zero()) throw DivisionByZero();
    MPoly num = den_;
    MPoly den = num_;
    const Scalar lc = den.leading_coeff();
    if (!lc.is_one()) {
        const Scalar inv = lc.inverse();
        num = num.scaled(inv);
        den = den.scaled(inv);
    }
    return FieldElement(spec_, std::move(num), std::move(den));
}

FieldElement& FieldElement::operator/=(const FieldElement& o) {
    check_same(o);
    return *this *= o.inverse();
}

FieldElement FieldElement::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    if (e == 0) return one(spec_);
    // num and den are coprime, so their powers are too, and a monic den stays monic.
    return FieldElement(spec_, num_.pow(static_cast<unsigned>(e)), den_.pow(static_cast<unsigned>(e)));
}

FieldElement FieldElement::conjugate_coefficients() const {
    return fraction(spec_, num_.conjugate_coefficients(), den_.conjugate_coefficients());
}

namespace {

FieldElement evaluate_poly(const MPoly& p, std::span<const FieldElement> images, const SpecPtr& target) {
    FieldElement acc = FieldElement::zero(target);
    if (p.is_zero()) return acc;
    const std::size_t n = p.nvars();
    // powers[i][k] = images[i]^k, grown on demand
    std::vector<std::vector<FieldElement>> powers(n);
    for (std::size_t i = 0; i < n; ++i) powers[i].push_back(FieldElement::one(target));
    for (const auto& term : p.terms()) {
        FieldElement value = FieldElement::scalar(target, term.coeff);
        for (std::size_t i = 0; i < n; ++i) {
            const std::uint32_t k = term.exp[i];
            if (k == 0) continue;
            while (powers[i].size() <= k) powers[i].push_back(powers[i].back() * images[i]);
            value *= powers[i][k];
        }
        acc += value;
    }
    return acc;
}

}  // namespace

FieldElement FieldElement::substitute(std::span<const FieldElement> images) const {
    if (images.size() != spec_->nvars()) {
        throw SpecMismatch("substitution needs one image per indeterminate of " + spec_->name());
    }
    if (spec_->nvars() == 0) return *this;
    const SpecPtr& target = images.front().spec();
    for (const auto& img : images) {
        if (!same_spec(img.spec(), target)) throw SpecMismatch("substitution images must share one field");
    }
    const FieldElement den = evaluate_poly(den_, images, target);
    if (den.is_zero()) {
        throw DenominatorVanishes("denominator " + polynomial_to_string(den_, *spec_) +
                                  " vanishes under the substitution");
    }
    return evaluate_poly(num_, images, target) / den;
}

bool operator==(const FieldElement& l, const FieldElement& r) {
    return same_spec(l.spec_, r.spec_) && l.num_ == r.num_ && l.den_ == r.den_;
}

FieldElement field_arith(ArithOp op, const FieldElement& lhs, const FieldElement& rhs) {
    switch (op) {
        case ArithOp::Add: return lhs + rhs;
        case ArithOp::Sub: return lhs - rhs;
        case ArithOp::Mul: return lhs * rhs;
        case ArithOp::Div: return lhs / rhs;
    }
    throw std::logic_error("unknown arithmetic operation");
}

FieldElement field_pow(const FieldElement& base, long exponent) { return base.pow(exponent); }

FieldElement normalize(const SpecPtr& spec, MPoly num, MPoly den) {
    return FieldElement::fraction(spec, std::move(num), std::move(den));
}

FieldElement substitute(const FieldElement& e, const std::map<std::string, FieldElement>& images) {
    std::vector<FieldElement> ordered;
    for (const auto& name : e.spec()->vars()) {
        auto it = images.find(name);
        if (it == images.end()) throw SpecMismatch("no image given for indeterminate '" + name + "'");
        ordered.push_back(it->second);
    }
    return e.substitute(ordered);
}

// ---- canonical text -------------------------------------------------------------------------

namespace {

struct Piece {
    bool negative;
    std::string body;
};

std::string monomial_text(const Exponents& e, const FieldSpec& spec) {
    std::string out;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!out.empty()) out += "*";
        out += spec.vars()[i];
        if (e[i] > 1) out += "^" + std::to_string(e[i]);
    }
    return out;
}

std::string piece_body(const mpq_class& magnitude, bool with_sqrt, std::int64_t d, const std::string& mono) {
    std::string out;
    auto append = [&out](const std::string& s) {
        if (!out.empty()) out += "*";
        out += s;
    };
    if (magnitude != 1 || (!with_sqrt && mono.empty())) append(magnitude.get_str());
    if (with_sqrt) append("sqrt(" + std::to_string(d) + ")");
    if (!mono.empty()) append(mono);
    return out;
}

std::vector<Piece> pieces_of(const MPoly& p, const FieldSpec& spec) {
    std::vector<Piece> pieces;
    for (const auto& t : p.terms()) {
        const std::string mono = monomial_text(t.exp, spec);
        const mpq_class& a = t.coeff.rational_part();
        const mpq_class& b = t.coeff.sqrt_part();
        if (sgn(a) != 0) pieces.push_back({sgn(a) < 0, piece_body(abs(a), false, spec.radicand(), mono)});
        if (sgn(b) != 0) pieces.push_back({sgn(b) < 0, piece_body(abs(b), true, spec.radicand(), mono)});
    }
    return pieces;
}

std::string join(const std::vector<Piece>& pieces) {
    if (pieces.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        if (i == 0) {
            if (pieces[i].negative) out += "-";
        } else {
            out += pieces[i].negative ? "-" : "+";
        }
        out += pieces[i].body;
    }
    return out;
}

}  // namespace

std::string polynomial_to_string(const MPoly& p, const FieldSpec& spec) { return join(pieces_of(p, spec)); }

std::string FieldElement::to_string() const {
    const auto num_pieces = pieces_of(num_, *spec_);
    std::string num = join(num_pieces);
    if (is_unit_poly(den_)) return num;
    const auto den_pieces = pieces_of(den_, *spec_);
    std::string den = join(den_pieces);
    if (num_pieces.size() > 1) num = "(" + num + ")";
    if (den_pieces.size() > 1 || den.find('*') != std::string::npos) den = "(" + den + ")";
    return num + "/" + den;
}

std::ostream& operator<<(std::ostream& os, const FieldElement& e) { return os << e.to_string(); }

}  // namespace polcheck
