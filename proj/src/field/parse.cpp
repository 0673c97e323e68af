#include "polcheck/field/parse.hpp"

#include <cctype>

#include "polcheck/errors.hpp"

namespace polcheck {

FieldElement sqrt_literal(const mpz_class& n, const SpecPtr& spec) {
    if (n == 0) return FieldElement::zero(spec);
    if (n > 0 && mpz_perfect_square_p(n.get_mpz_t())) {
        return FieldElement::rational(spec, mpq_class(sqrt(n)));
    }
    if (spec->has_sqrt()) {
        const mpz_class d(static_cast<long>(spec->radicand()));
        if (n % d == 0) {
            const mpz_class q = n / d;
            if (q > 0 && mpz_perfect_square_p(q.get_mpz_t())) {
                return FieldElement::rational(spec, mpq_class(sqrt(q))) * FieldElement::sqrt_radicand(spec);
            }
        }
    }
    throw SpecMismatch("sqrt(" + n.get_str() + ") does not lie in " + spec->name());
}

namespace {

class ElementParser {
   public:
    ElementParser(std::string_view text, const SpecPtr& spec) : text_(text), spec_(spec) {}

    FieldElement parse() {
        FieldElement e = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'", {"+", "-", "*", "/", "^", "end of input"});
        return e;
    }

   private:
    static inline const std::set<std::string> kOperand = {"integer", "identifier", "sqrt", "(", "-", "+"};

    [[noreturn]] void fail(const std::string& msg, std::set<std::string> expected) const {
        throw SyntaxError("syntax error at position " + std::to_string(pos_) + ": " + msg, pos_, std::move(expected));
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'", {std::string(1, c)});
    }

    mpz_class integer() {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected integer", {"integer"});
        return mpz_class(std::string(text_.substr(start, pos_ - start)));
    }

    mpz_class signed_integer() {
        const bool neg = accept('-');
        mpz_class v = integer();
        return neg ? mpz_class(-v) : v;
    }

    FieldElement expr() {
        FieldElement acc = term();
        for (;;) {
            if (accept('+')) {
                acc += term();
            } else if (accept('-')) {
                acc -= term();
            } else {
                return acc;
            }
        }
    }

    FieldElement term() {
        FieldElement acc = unary();
        for (;;) {
            if (accept('*')) {
                acc *= unary();
            } else if (accept('/')) {
                const std::size_t at = pos_;
                FieldElement rhs = unary();
                if (rhs.is_zero()) {
                    pos_ = at;
                    throw DivisionByZero();
                }
                acc /= rhs;
            } else {
                return acc;
            }
        }
    }

    FieldElement unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    FieldElement power() {
        FieldElement base = atom();
        if (!accept('^')) return base;
        mpz_class e;
        if (accept('(')) {
            e = signed_integer();
            expect(')');
        } else {
            e = signed_integer();
        }
        if (!e.fits_slong_p()) fail("exponent out of range", {"integer"});
        return base.pow(e.get_si());
    }

    FieldElement atom() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input", kOperand);
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) return FieldElement::rational(spec_, mpq_class(integer()));
        if (c == '(') {
            ++pos_;
            FieldElement e = expr();
            expect(')');
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                ++pos_;
            }
            const std::string name(text_.substr(start, pos_ - start));
            if (name == "sqrt") {
                expect('(');
                mpz_class n = signed_integer();
                expect(')');
                return sqrt_literal(n, spec_);
            }
            return FieldElement::indeterminate(spec_, name);
        }
        fail(std::string("unexpected '") + c + "'", kOperand);
    }

    std::string_view text_;
    SpecPtr spec_;
    std::size_t pos_ = 0;
};

}  // namespace

FieldElement parse_element(std::string_view text, const SpecPtr& spec) { return ElementParser(text, spec).parse(); }

}  // namespace polcheck
