#ifndef PARNF_RATFUN_HPP
#define PARNF_RATFUN_HPP

#include "parnf/upoly.hpp"

#include <string>

namespace parnf {

/// Normalized rational function in z over the constant field: numerator and
/// denominator coprime, denominator monic and nonzero.
class RatFun {
public:
    RatFun() : num_(), den_(Constant(1)) {}
    RatFun(Constant c) : num_(std::move(c)), den_(Constant(1)) {}
    RatFun(long v) : num_(Constant(v)), den_(Constant(1)) {}
    RatFun(UPoly num, UPoly den);
    explicit RatFun(UPoly num) : num_(std::move(num)), den_(Constant(1)) {}

    static RatFun z() { return RatFun(UPoly::z()); }

    const UPoly& num() const { return num_; }
    const UPoly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_ == UPoly(Constant(1)) && den_ == UPoly(Constant(1)); }
    bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }
    Constant constant_value() const; // requires is_constant()

    RatFun operator-() const;
    RatFun operator+(const RatFun& o) const;
    RatFun operator-(const RatFun& o) const;
    RatFun operator*(const RatFun& o) const;
    RatFun operator/(const RatFun& o) const;
    RatFun inverse() const;
    RatFun& operator+=(const RatFun& o) { *this = *this + o; return *this; }
    RatFun& operator-=(const RatFun& o) { *this = *this - o; return *this; }
    RatFun& operator*=(const RatFun& o) { *this = *this * o; return *this; }
    RatFun& operator/=(const RatFun& o) { *this = *this / o; return *this; }

    bool operator==(const RatFun& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFun& o) const { return !(*this == o); }
    bool operator<(const RatFun& o) const; // canonical sort order only

    /// (p/q)' = (p'q - pq')/q^2, renormalized.
    RatFun derivative() const;
    RatFun derivative(int k) const;
    bool defined_at(const Constant& x) const { return !den_.eval(x).is_zero(); }
    Constant eval(const Constant& x) const;

    std::string str() const;

private:
    UPoly num_, den_;
};

/// Parse the CLI expression grammar: integers, `z`, `+ - * / ^`, parentheses.
/// Throws ParseError (see errors.hpp) with position information.
RatFun parse_ratfun(const std::string& text);

} // namespace parnf

#endif
