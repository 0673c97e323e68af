#include "polcheck/field/scalar.hpp"

#include "polcheck/errors.hpp"

namespace polcheck {

Scalar& Scalar::operator*=(const Scalar& o) {
    if (d_ == 0 && o.d_ == 0) {
        a_ *= o.a_;
        return *this;
    }
    const std::int64_t d = d_ != 0 ? d_ : o.d_;
    mpq_class a = a_ * o.a_ + mpq_class(d) * b_ * o.b_;
    mpq_class b = a_ * o.b_ + b_ * o.a_;
    a_ = std::move(a);
    b_ = std::move(b);
    d_ = d;
    return *this;
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw DivisionByZero();
    if (sgn(b_) == 0) return Scalar(mpq_class(1) / a_, mpq_class(0), d_);
    const mpq_class n = norm();
    return Scalar(a_ / n, -b_ / n, d_);
}

}  // namespace polcheck
