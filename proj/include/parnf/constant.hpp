#ifndef PARNF_CONSTANT_HPP
#define PARNF_CONSTANT_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <iosfwd>
#include <string>

namespace parnf {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

/// Element of the constant field C = Q(theta) with theta^2 = 2, stored as
/// a + b*theta with exact rational a, b.  Plain rationals embed with b = 0,
/// which is the default everywhere; theta is only exercised by G2 data.
class Constant {
public:
    Constant() : a_(0), b_(0) {}
    Constant(long v) : a_(v), b_(0) {}
    Constant(const BigInt& v) : a_(v), b_(0) {}
    Constant(const BigRat& v) : a_(v), b_(0) {}
    Constant(BigRat a, BigRat b) : a_(std::move(a)), b_(std::move(b)) {}

    static Constant sqrt2() { return Constant(BigRat(0), BigRat(1)); }
    static Constant from_fraction(const BigInt& num, const BigInt& den) {
        return Constant(BigRat(num, den));
    }

    const BigRat& rat_part() const { return a_; }
    const BigRat& theta_part() const { return b_; }

    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_one() const { return a_ == 1 && b_ == 0; }
    bool is_rational() const { return b_ == 0; }
    /// Integer value if the constant is a rational integer.
    bool integer_value(BigInt& out) const;

    Constant operator-() const { return Constant(-a_, -b_); }
    Constant operator+(const Constant& o) const { return Constant(a_ + o.a_, b_ + o.b_); }
    Constant operator-(const Constant& o) const { return Constant(a_ - o.a_, b_ - o.b_); }
    Constant operator*(const Constant& o) const {
        return Constant(a_ * o.a_ + 2 * b_ * o.b_, a_ * o.b_ + b_ * o.a_);
    }
    Constant inverse() const;
    Constant operator/(const Constant& o) const { return *this * o.inverse(); }

    Constant& operator+=(const Constant& o) { *this = *this + o; return *this; }
    Constant& operator-=(const Constant& o) { *this = *this - o; return *this; }
    Constant& operator*=(const Constant& o) { *this = *this * o; return *this; }
    Constant& operator/=(const Constant& o) { *this = *this / o; return *this; }

    bool operator==(const Constant& o) const { return a_ == o.a_ && b_ == o.b_; }
    bool operator!=(const Constant& o) const { return !(*this == o); }
    /// Total order used only for canonical sorting, not magnitude.
    bool operator<(const Constant& o) const {
        if (a_ != o.a_) return a_ < o.a_;
        return b_ < o.b_;
    }

    /// Sign of the real value a + b*sqrt(2).
    int sign() const;

    std::string str() const;

private:
    BigRat a_, b_;
};

std::ostream& operator<<(std::ostream& os, const Constant& c);

} // namespace parnf

#endif
