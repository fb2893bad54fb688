#include "parnf/constant.hpp"

#include <ostream>
#include <sstream>
#include <stdexcept>

namespace parnf {

bool Constant::integer_value(BigInt& out) const {
    if (b_ != 0) return false;
    if (denominator(a_) != 1) return false;
    out = numerator(a_);
    return true;
}

Constant Constant::inverse() const {
    if (is_zero()) throw std::domain_error("Constant: division by zero");
    // (a + b t)^-1 = (a - b t) / (a^2 - 2 b^2); the norm is nonzero since
    // sqrt(2) is irrational.
    BigRat norm = a_ * a_ - 2 * b_ * b_;
    return Constant(a_ / norm, -b_ / norm);
}

int Constant::sign() const {
    auto sgn = [](const BigRat& r) { return r == 0 ? 0 : (r > 0 ? 1 : -1); };
    if (b_ == 0) return sgn(a_);
    if (a_ == 0) return sgn(b_);
    int sa = sgn(a_), sb = sgn(b_);
    if (sa == sb) return sa;
    // Compare a^2 with 2 b^2; sign follows the larger magnitude part.
    BigRat lhs = a_ * a_, rhs = 2 * b_ * b_;
    if (lhs == rhs) return 0; // impossible for nonzero parts, kept for safety
    return lhs > rhs ? sa : sb;
}

static void print_rat(std::ostream& os, const BigRat& r) {
    os << numerator(r);
    if (denominator(r) != 1) os << "/" << denominator(r);
}

std::ostream& operator<<(std::ostream& os, const Constant& c) {
    if (c.theta_part() == 0) {
        print_rat(os, c.rat_part());
        return os;
    }
    if (c.rat_part() != 0) {
        os << "(";
        print_rat(os, c.rat_part());
        os << (c.theta_part() > 0 ? "+" : "-");
        BigRat abs_b = c.theta_part() > 0 ? c.theta_part() : BigRat(-c.theta_part());
        if (abs_b != 1) { print_rat(os, abs_b); os << "*"; }
        os << "sqrt2)";
        return os;
    }
    if (c.theta_part() == 1) { os << "sqrt2"; return os; }
    if (c.theta_part() == -1) { os << "-sqrt2"; return os; }
    print_rat(os, c.theta_part());
    os << "*sqrt2";
    return os;
}

std::string Constant::str() const {
    std::ostringstream os;
    os << *this;
    return os.str();
}

} // namespace parnf
