#ifndef PARNF_DIFFPOLY_HPP
#define PARNF_DIFFPOLY_HPP

#include "parnf/ratfun.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace parnf {

/// Identifier of a differential indeterminate.  Names are interned process
/// wide; ids are assigned in registration order.
using Var = int;

struct VarPool {
    static Var intern(const std::string& name);
    static const std::string& name(Var v);
};

/// One jet factor v_i^(j) raised to a power.
struct JetPow {
    Var var;
    int order;
    int exp;
    friend bool operator==(const JetPow& a, const JetPow& b) {
        return a.var == b.var && a.order == b.order && a.exp == b.exp;
    }
};

/// Product of jet powers, kept sorted by (var, order).
class Monomial {
public:
    Monomial() {}
    explicit Monomial(std::vector<JetPow> factors);

    const std::vector<JetPow>& factors() const { return f_; }
    bool is_one() const { return f_.empty(); }
    int degree() const;
    Monomial times(const Monomial& o) const;

    bool operator==(const Monomial& o) const { return f_ == o.f_; }
    bool operator<(const Monomial& o) const;

private:
    std::vector<JetPow> f_;
};

/// Sparse differential polynomial: sum of RatFun-coefficient terms in jet
/// variables of named differential indeterminates.  The coefficient field
/// C(z) acts through d/dz under the total derivative.
class DiffPoly {
public:
    DiffPoly() {}
    DiffPoly(RatFun c) { if (!c.is_zero()) terms_[Monomial()] = std::move(c); }
    DiffPoly(Constant c) : DiffPoly(RatFun(std::move(c))) {}
    DiffPoly(long v) : DiffPoly(RatFun(v)) {}

    static DiffPoly jet(Var v, int order, int exp = 1);
    static DiffPoly variable(Var v) { return jet(v, 0); }

    const std::map<Monomial, RatFun>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_ratfun() const;           // no jet variables at all
    RatFun ratfun_value() const;      // requires is_ratfun()
    bool is_constant_coefficient() const; // all coefficients in C (z-free)

    DiffPoly operator-() const;
    DiffPoly operator+(const DiffPoly& o) const;
    DiffPoly operator-(const DiffPoly& o) const;
    DiffPoly operator*(const DiffPoly& o) const;
    DiffPoly operator*(const RatFun& c) const;
    DiffPoly& operator+=(const DiffPoly& o) { *this = *this + o; return *this; }
    DiffPoly& operator-=(const DiffPoly& o) { *this = *this - o; return *this; }
    DiffPoly& operator*=(const DiffPoly& o) { *this = *this * o; return *this; }
    bool operator==(const DiffPoly& o) const { return terms_ == o.terms_; }
    bool operator!=(const DiffPoly& o) const { return !(*this == o); }

    /// Total derivative: D(v_i^(j)) = v_i^(j+1), coefficients by d/dz.
    DiffPoly total_derivative() const;
    DiffPoly total_derivative(int k) const;

    /// Full substitution v_i -> sigma(v_i) in F, jets via derivatives of the
    /// image.  Every occurring variable must be assigned.
    RatFun substitute_jets(const std::map<Var, RatFun>& sigma) const;

    /// Differential substitution v -> q (a DiffPoly); jets map to total
    /// derivatives of q.  Unassigned variables are left untouched.
    DiffPoly substitute_diff(const std::map<Var, DiffPoly>& sigma) const;

    std::set<Var> variables() const;
    int max_order(Var v) const;      // -1 when absent
    int degree() const;              // total degree in jets
    RatFun coefficient(const Monomial& m) const;

    std::string str() const;

private:
    std::map<Monomial, RatFun> terms_; // zero coefficients never stored
};

inline DiffPoly operator*(const RatFun& c, const DiffPoly& p) { return p * c; }

/// Parse a differential-polynomial expression.  Grammar extends the rational
/// function grammar with named indeterminates (e.g. `v1`, `s2`, `u`) carrying
/// primes for jets (`v1''`), plus the constant `sqrt2`.
DiffPoly parse_diffpoly(const std::string& text);

} // namespace parnf

#endif
