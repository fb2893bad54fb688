#include "parnf/upoly.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace parnf {

void UPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

UPoly UPoly::monomial(const Constant& c, int deg) {
    if (c.is_zero()) return UPoly();
    std::vector<Constant> v(deg + 1, Constant(0));
    v[deg] = c;
    return UPoly(std::move(v));
}

const Constant& UPoly::coeff(int i) const {
    static const Constant zero(0);
    if (i < 0 || i >= static_cast<int>(coeffs_.size())) return zero;
    return coeffs_[i];
}

UPoly UPoly::operator-() const {
    UPoly r(*this);
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

UPoly UPoly::operator+(const UPoly& o) const {
    std::vector<Constant> v(std::max(coeffs_.size(), o.coeffs_.size()), Constant(0));
    for (size_t i = 0; i < v.size(); ++i) v[i] = coeff(static_cast<int>(i)) + o.coeff(static_cast<int>(i));
    return UPoly(std::move(v));
}

UPoly UPoly::operator-(const UPoly& o) const { return *this + (-o); }

UPoly UPoly::operator*(const UPoly& o) const {
    if (is_zero() || o.is_zero()) return UPoly();
    std::vector<Constant> v(coeffs_.size() + o.coeffs_.size() - 1, Constant(0));
    for (size_t i = 0; i < coeffs_.size(); ++i)
        for (size_t j = 0; j < o.coeffs_.size(); ++j)
            v[i + j] += coeffs_[i] * o.coeffs_[j];
    return UPoly(std::move(v));
}

UPoly UPoly::operator*(const Constant& c) const {
    if (c.is_zero()) return UPoly();
    UPoly r(*this);
    for (auto& x : r.coeffs_) x *= c;
    return r;
}

void UPoly::divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r) {
    if (b.is_zero()) throw std::domain_error("UPoly: division by zero polynomial");
    r = a;
    q = UPoly();
    if (a.degree() < b.degree()) return;
    std::vector<Constant> qc(a.degree() - b.degree() + 1, Constant(0));
    Constant lb_inv = b.leading().inverse();
    while (!r.is_zero() && r.degree() >= b.degree()) {
        int shift = r.degree() - b.degree();
        Constant f = r.leading() * lb_inv;
        qc[shift] = f;
        r = r - UPoly::monomial(f, shift) * b;
    }
    q = UPoly(std::move(qc));
}

UPoly UPoly::operator/(const UPoly& o) const { UPoly q, r; divmod(*this, o, q, r); return q; }
UPoly UPoly::operator%(const UPoly& o) const { UPoly q, r; divmod(*this, o, q, r); return r; }

UPoly UPoly::derivative() const {
    if (coeffs_.size() <= 1) return UPoly();
    std::vector<Constant> v(coeffs_.size() - 1, Constant(0));
    for (size_t i = 1; i < coeffs_.size(); ++i) v[i - 1] = coeffs_[i] * Constant(static_cast<long>(i));
    return UPoly(std::move(v));
}

Constant UPoly::eval(const Constant& x) const {
    Constant acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

UPoly UPoly::monic() const {
    if (is_zero()) return *this;
    return *this * leading().inverse();
}

UPoly UPoly::shifted(const Constant& c) const {
    UPoly zc({c, Constant(1)});
    UPoly acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * zc + UPoly(*it);
    return acc;
}

namespace {

// Rescale to coefficients in Z[sqrt2] with integer content 1.  Keeps the
// primitive-PRS gcd free of rational blowup.
UPoly integer_primitive(const UPoly& p) {
    if (p.is_zero()) return p;
    BigInt l = 1;
    for (auto& c : p.coeffs()) {
        l = boost::multiprecision::lcm(l, denominator(c.rat_part()));
        l = boost::multiprecision::lcm(l, denominator(c.theta_part()));
    }
    std::vector<BigInt> na, nb;
    BigInt g = 0;
    for (auto& c : p.coeffs()) {
        BigRat ar = c.rat_part() * l, br = c.theta_part() * l;
        na.push_back(numerator(ar));
        nb.push_back(numerator(br));
        g = boost::multiprecision::gcd(g, na.back());
        g = boost::multiprecision::gcd(g, nb.back());
    }
    if (g == 0) g = 1;
    std::vector<Constant> out;
    for (size_t i = 0; i < na.size(); ++i) out.push_back(Constant(BigRat(na[i] / g), BigRat(nb[i] / g)));
    return UPoly(std::move(out));
}

UPoly pseudo_rem(UPoly a, const UPoly& b) {
    Constant lb = b.leading();
    while (!a.is_zero() && a.degree() >= b.degree()) {
        int shift = a.degree() - b.degree();
        Constant la = a.leading();
        a = a * lb - UPoly::monomial(la, shift) * b;
    }
    return a;
}

} // namespace

UPoly UPoly::gcd(UPoly a, UPoly b) {
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    a = integer_primitive(a);
    b = integer_primitive(b);
    while (!b.is_zero()) {
        UPoly r = integer_primitive(pseudo_rem(a, b));
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

std::string UPoly::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        if (coeffs_[i].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << coeffs_[i] << ")";
        if (i == 1) os << "*z";
        else if (i > 1) os << "*z^" << i;
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Roots in Q(sqrt2)
// ---------------------------------------------------------------------------

namespace {

std::optional<Constant> sqrt_in_c(const Constant& c) {
    // Solve (x + y sqrt2)^2 = a + b sqrt2 exactly.
    auto rat_sqrt = [](const BigRat& r) -> std::optional<BigRat> {
        if (r < 0) return std::nullopt;
        BigInt n = numerator(r), d = denominator(r);
        BigInt sn = boost::multiprecision::sqrt(n), sd = boost::multiprecision::sqrt(d);
        if (sn * sn != n || sd * sd != d) return std::nullopt;
        return BigRat(sn, sd);
    };
    const BigRat &a = c.rat_part(), &b = c.theta_part();
    if (b == 0) {
        if (auto s = rat_sqrt(a)) return Constant(*s);
        if (auto s = rat_sqrt(a / 2)) return Constant(BigRat(0), *s); // a = 2 y^2
        return std::nullopt;
    }
    // x^2 + 2y^2 = a, 2xy = b  =>  x^2 satisfies t^2 - a t + b^2/2 = 0.
    BigRat disc = a * a - 2 * b * b;
    auto sd = rat_sqrt(disc);
    if (!sd) return std::nullopt;
    for (int sgn : {+1, -1}) {
        BigRat t = (a + (sgn > 0 ? *sd : BigRat(-*sd))) / 2;
        if (auto x = rat_sqrt(t)) {
            if (*x == 0) continue;
            BigRat y = b / (2 * *x);
            Constant r(*x, y);
            if (r * r == c) return r;
        }
    }
    return std::nullopt;
}

// Divisors of |n| by trial division; empty result means we gave up.
std::vector<BigInt> small_divisors(BigInt n) {
    std::vector<BigInt> divs;
    if (n < 0) n = -n;
    if (n == 0) return divs;
    std::vector<std::pair<BigInt, int>> fac;
    BigInt m = n;
    for (BigInt p = 2; p * p <= m; ++p) {
        if (p > 1000000) return {}; // give up; caller reports incomplete
        int e = 0;
        while (m % p == 0) { m /= p; ++e; }
        if (e) fac.push_back({p, e});
    }
    if (m > 1) fac.push_back({m, 1});
    divs.push_back(1);
    for (auto& [p, e] : fac) {
        size_t sz = divs.size();
        BigInt pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (size_t i = 0; i < sz; ++i) divs.push_back(divs[i] * pk);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

// Roots in Q(sqrt2) of a polynomial with *rational* coefficients.
bool roots_of_rational_poly(const UPoly& p, std::vector<Constant>& out) {
    UPoly f = p;
    // Clear denominators to integer coefficients.
    BigInt lcm = 1;
    for (auto& c : f.coeffs()) lcm = boost::multiprecision::lcm(lcm, denominator(c.rat_part()));
    std::vector<Constant> ic;
    for (auto& c : f.coeffs()) ic.push_back(Constant(BigRat(numerator(c.rat_part()) * (lcm / denominator(c.rat_part())))));
    f = UPoly(ic);
    // Primitive part.
    BigInt g = 0;
    for (auto& c : f.coeffs()) g = boost::multiprecision::gcd(g, numerator(c.rat_part()));
    if (g > 1) {
        std::vector<Constant> v;
        for (auto& c : f.coeffs()) v.push_back(Constant(BigRat(numerator(c.rat_part()) / g)));
        f = UPoly(v);
    }

    bool complete = true;
    // Rational roots via the rational root theorem.
    while (!f.is_zero() && f.degree() >= 1) {
        if (f.coeff(0).is_zero()) { out.push_back(Constant(0)); f = f / UPoly::z(); continue; }
        BigInt a0, an;
        f.coeff(0).integer_value(a0);
        f.leading().integer_value(an);
        auto d0 = small_divisors(a0), dn = small_divisors(an);
        if (d0.empty() || dn.empty()) { complete = false; break; }
        bool found = false;
        for (auto& num : d0) {
            for (auto& den : dn) {
                if (boost::multiprecision::gcd(num, den) != 1) continue;
                for (int s : {+1, -1}) {
                    Constant r(BigRat(s > 0 ? num : BigInt(-num), den));
                    if (f.eval(r).is_zero()) {
                        out.push_back(r);
                        UPoly lin({-r, Constant(1)});
                        f = f / lin;
                        found = true;
                        break;
                    }
                }
                if (found) break;
            }
            if (found) break;
        }
        if (!found) break;
    }
    if (f.degree() == 2) {
        // x^2 + p x + q over Q: roots (-p +- sqrt(disc))/2 if disc has a
        // square root in C.
        UPoly m = f.monic();
        Constant pc = m.coeff(1), qc = m.coeff(0);
        Constant disc = pc * pc - Constant(4) * qc;
        if (auto s = sqrt_in_c(disc)) {
            Constant half = Constant(BigRat(1, 2));
            out.push_back((-pc + *s) * half);
            out.push_back((-pc - *s) * half);
            f = UPoly(Constant(1));
        }
    }
    if (f.degree() >= 1) complete = false;
    return complete;
}

} // namespace

RootsInC roots_in_constant_field(const UPoly& p) {
    RootsInC result;
    if (p.is_zero() || p.degree() == 0) return result;

    bool rational = true;
    for (auto& c : p.coeffs()) rational = rational && c.is_rational();

    std::vector<Constant> raw;
    if (rational) {
        result.complete = roots_of_rational_poly(p, raw);
    } else {
        // Norm trick: p * sigma(p) has rational coefficients and contains all
        // roots of p that lie in Q(sqrt2).
        std::vector<Constant> conj;
        for (auto& c : p.coeffs()) conj.push_back(Constant(c.rat_part(), -c.theta_part()));
        UPoly norm = p * UPoly(conj);
        std::vector<Constant> cand;
        result.complete = roots_of_rational_poly(norm, cand);
        for (auto& r : cand)
            if (p.eval(r).is_zero()) raw.push_back(r);
    }

    // Deduplicate and attach multiplicities by repeated deflation.
    std::sort(raw.begin(), raw.end());
    raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
    for (auto& r : raw) {
        UPoly f = p;
        UPoly lin({-r, Constant(1)});
        int mult = 0;
        while (!f.is_zero() && f.eval(r).is_zero() && f.degree() >= 1) {
            f = f / lin;
            ++mult;
        }
        result.roots.push_back({r, mult});
    }
    return result;
}

} // namespace parnf
