#ifndef PARNF_UPOLY_HPP
#define PARNF_UPOLY_HPP

#include "parnf/constant.hpp"

#include <utility>
#include <vector>

namespace parnf {

/// Dense univariate polynomial in z over the constant field.
class UPoly {
public:
    UPoly() {}
    UPoly(Constant c) { if (!c.is_zero()) coeffs_.push_back(std::move(c)); }
    explicit UPoly(std::vector<Constant> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    static UPoly z() { return UPoly({Constant(0), Constant(1)}); }
    static UPoly monomial(const Constant& c, int deg);

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; } // -1 for zero
    const Constant& coeff(int i) const;
    const Constant& leading() const { return coeffs_.back(); }
    const std::vector<Constant>& coeffs() const { return coeffs_; }

    UPoly operator-() const;
    UPoly operator+(const UPoly& o) const;
    UPoly operator-(const UPoly& o) const;
    UPoly operator*(const UPoly& o) const;
    UPoly operator*(const Constant& c) const;

    /// Euclidean division; requires divisor nonzero.
    static void divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r);
    UPoly operator/(const UPoly& o) const; // exact or truncating euclidean quotient
    UPoly operator%(const UPoly& o) const;

    bool operator==(const UPoly& o) const { return coeffs_ == o.coeffs_; }
    bool operator!=(const UPoly& o) const { return !(*this == o); }

    UPoly derivative() const;
    Constant eval(const Constant& x) const;
    UPoly monic() const;
    /// Shift z -> z + c.
    UPoly shifted(const Constant& c) const;

    static UPoly gcd(UPoly a, UPoly b);

    std::string str() const;

private:
    void trim();
    std::vector<Constant> coeffs_; // coeffs_[i] multiplies z^i
};

/// All roots of p lying in C = Q(sqrt2), with multiplicities, plus a flag
/// telling whether the factorization over C was complete (false when an
/// irreducible factor of degree >= 2 over C remains).
struct RootsInC {
    std::vector<std::pair<Constant, int>> roots;
    bool complete = true;
};
RootsInC roots_in_constant_field(const UPoly& p);

} // namespace parnf

#endif
