#ifndef PARNF_DIFFFRAC_HPP
#define PARNF_DIFFFRAC_HPP

#include "parnf/diffpoly.hpp"

namespace parnf {

/// Fraction of differential polynomials — the differential field C<...> of
/// rational expressions in jets.  No multivariate gcd reduction is attempted;
/// the only normalizations are zero numerator and rational-content cleanup,
/// which is enough at the scale this library targets.
class DiffFrac {
public:
    DiffFrac() : num_(), den_(DiffPoly(1)) {}
    DiffFrac(DiffPoly p) : num_(std::move(p)), den_(DiffPoly(1)) {}
    DiffFrac(long v) : num_(DiffPoly(v)), den_(DiffPoly(1)) {}
    DiffFrac(DiffPoly num, DiffPoly den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw std::domain_error("DiffFrac: zero denominator");
        normalize();
    }

    const DiffPoly& num() const { return num_; }
    const DiffPoly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_ == den_; }

    DiffFrac operator-() const { return DiffFrac(-num_, den_, raw_tag{}); }
    DiffFrac operator+(const DiffFrac& o) const {
        if (den_ == o.den_) return DiffFrac(num_ + o.num_, den_);
        return DiffFrac(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    DiffFrac operator-(const DiffFrac& o) const { return *this + (-o); }
    DiffFrac operator*(const DiffFrac& o) const { return DiffFrac(num_ * o.num_, den_ * o.den_); }
    DiffFrac operator/(const DiffFrac& o) const {
        if (o.is_zero()) throw std::domain_error("DiffFrac: division by zero");
        return DiffFrac(num_ * o.den_, den_ * o.num_);
    }
    DiffFrac inverse() const {
        if (is_zero()) throw std::domain_error("DiffFrac: inverse of zero");
        return DiffFrac(den_, num_);
    }
    DiffFrac& operator+=(const DiffFrac& o) { *this = *this + o; return *this; }
    DiffFrac& operator-=(const DiffFrac& o) { *this = *this - o; return *this; }
    DiffFrac& operator*=(const DiffFrac& o) { *this = *this * o; return *this; }

    /// Equality by cross multiplication.
    bool operator==(const DiffFrac& o) const { return (num_ * o.den_ - o.num_ * den_).is_zero(); }
    bool operator!=(const DiffFrac& o) const { return !(*this == o); }

    DiffFrac derivative() const {
        return DiffFrac(num_.total_derivative() * den_ - num_ * den_.total_derivative(), den_ * den_);
    }

    std::string str() const {
        if (den_ == DiffPoly(1)) return num_.str();
        return "(" + num_.str() + ")/(" + den_.str() + ")";
    }

private:
    struct raw_tag {};
    DiffFrac(DiffPoly num, DiffPoly den, raw_tag) : num_(std::move(num)), den_(std::move(den)) {}

    void normalize() {
        if (num_.is_zero()) { den_ = DiffPoly(1); return; }
        if (den_.is_ratfun()) {
            RatFun d = den_.ratfun_value();
            num_ = num_ * d.inverse();
            den_ = DiffPoly(1);
        }
    }

    DiffPoly num_, den_;
};

} // namespace parnf

#endif
