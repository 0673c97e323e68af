#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace polcheck {

/// An element a + b*sqrt(d) of Q or Q(sqrt d); d == 0 encodes plain Q and then b == 0.
class Scalar {
   public:
    Scalar() = default;
    explicit Scalar(std::int64_t d) : d_(d) {}
    Scalar(mpq_class a, std::int64_t d) : a_(std::move(a)), d_(d) { a_.canonicalize(); }
    Scalar(mpq_class a, mpq_class b, std::int64_t d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
        a_.canonicalize();
        b_.canonicalize();
        if (d_ == 0) b_ = 0;
    }

    const mpq_class& rational_part() const noexcept { return a_; }
    const mpq_class& sqrt_part() const noexcept { return b_; }
    std::int64_t radicand() const noexcept { return d_; }

    bool is_zero() const noexcept { return sgn(a_) == 0 && sgn(b_) == 0; }
    bool is_one() const noexcept { return a_ == 1 && sgn(b_) == 0; }
    bool is_rational() const noexcept { return sgn(b_) == 0; }

    Scalar operator-() const { return Scalar(-a_, -b_, d_); }
    Scalar& operator+=(const Scalar& o) {
        if (d_ == 0) d_ = o.d_;
        a_ += o.a_;
        b_ += o.b_;
        return *this;
    }
    Scalar& operator-=(const Scalar& o) {
        if (d_ == 0) d_ = o.d_;
        a_ -= o.a_;
        b_ -= o.b_;
        return *this;
    }
    Scalar& operator*=(const Scalar& o);

    /// a^2 - d*b^2; never zero for a nonzero element because d is not a square.
    mpq_class norm() const { return a_ * a_ - mpq_class(d_) * b_ * b_; }
    Scalar conjugate() const { return Scalar(a_, -b_, d_); }
    /// Throws DivisionByZero on zero.
    Scalar inverse() const;

    friend Scalar operator+(Scalar l, const Scalar& r) { return l += r; }
    friend Scalar operator-(Scalar l, const Scalar& r) { return l -= r; }
    friend Scalar operator*(Scalar l, const Scalar& r) { return l *= r; }
    friend Scalar operator/(const Scalar& l, const Scalar& r) { return l * r.inverse(); }
    friend bool operator==(const Scalar& l, const Scalar& r) { return l.a_ == r.a_ && l.b_ == r.b_; }

   private:
    mpq_class a_{0};
    mpq_class b_{0};
    std::int64_t d_ = 0;
};

}  // namespace polcheck
