#include "parnf/ratfun.hpp"
#include "parnf/errors.hpp"

#include <cctype>
#include <sstream>

namespace parnf {

RatFun::RatFun(UPoly num, UPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("RatFun: zero denominator");
    if (num_.is_zero()) { den_ = UPoly(Constant(1)); return; }
    if (num_.degree() > 0 && den_.degree() > 0) {
        UPoly g = UPoly::gcd(num_, den_);
        if (g.degree() > 0) { num_ = num_ / g; den_ = den_ / g; }
    }
    Constant lead = den_.leading();
    if (!lead.is_one()) {
        Constant inv = lead.inverse();
        num_ = num_ * inv;
        den_ = den_ * inv;
    }
}

Constant RatFun::constant_value() const {
    if (!is_constant()) throw std::domain_error("RatFun: not a constant");
    return num_.is_zero() ? Constant(0) : num_.coeff(0);
}

RatFun RatFun::operator-() const { RatFun r; r.num_ = -num_; r.den_ = den_; return r; }

RatFun RatFun::operator+(const RatFun& o) const {
    if (den_ == o.den_) return RatFun(num_ + o.num_, den_);
    return RatFun(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFun RatFun::operator-(const RatFun& o) const {
    if (den_ == o.den_) return RatFun(num_ - o.num_, den_);
    return RatFun(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RatFun RatFun::operator*(const RatFun& o) const { return RatFun(num_ * o.num_, den_ * o.den_); }

RatFun RatFun::operator/(const RatFun& o) const {
    if (o.is_zero()) throw std::domain_error("RatFun: division by zero");
    return RatFun(num_ * o.den_, den_ * o.num_);
}

RatFun RatFun::inverse() const {
    if (is_zero()) throw std::domain_error("RatFun: inverse of zero");
    return RatFun(den_, num_);
}

bool RatFun::operator<(const RatFun& o) const {
    auto key = [](const UPoly& p) {
        std::vector<Constant> v = p.coeffs();
        return v;
    };
    auto a = key(num_), b = key(o.num_);
    if (a != b) return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    auto c = key(den_), d = key(o.den_);
    return std::lexicographical_compare(c.begin(), c.end(), d.begin(), d.end());
}

RatFun RatFun::derivative() const {
    return RatFun(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

RatFun RatFun::derivative(int k) const {
    RatFun r = *this;
    for (int i = 0; i < k; ++i) r = r.derivative();
    return r;
}

Constant RatFun::eval(const Constant& x) const {
    Constant d = den_.eval(x);
    if (d.is_zero()) throw SingularPointError("RatFun: evaluation at a pole");
    return num_.eval(x) / d;
}

std::string RatFun::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    auto print_poly = [&os](const UPoly& p, bool parens) {
        std::string s = p.str();
        if (parens && (s.find('+') != std::string::npos || s.find('-') != std::string::npos || s.find('*') != std::string::npos))
            os << "(" << s << ")";
        else
            os << s;
    };
    if (den_.degree() == 0) {
        print_poly(num_, false);
    } else {
        print_poly(num_, true);
        os << "/";
        print_poly(den_, true);
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Expression parser: expr := term (('+'|'-') term)*
//                    term := factor (('*'|'/') factor)*
//                    factor := ('-')* atom ('^' integer)?
//                    atom := integer | 'z' | '(' expr ')'
// ---------------------------------------------------------------------------

namespace {

struct Parser {
    const std::string& s;
    size_t pos = 0;

    explicit Parser(const std::string& text) : s(text) {}

    void skip_ws() { while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos; }

    bool peek(char c) {
        skip_ws();
        return pos < s.size() && s[pos] == c;
    }

    bool accept(char c) {
        if (peek(c)) { ++pos; return true; }
        return false;
    }

    RatFun parse_expr() {
        RatFun v = parse_term();
        for (;;) {
            if (accept('+')) v += parse_term();
            else if (accept('-')) v -= parse_term();
            else return v;
        }
    }

    RatFun parse_term() {
        RatFun v = parse_factor();
        for (;;) {
            if (accept('*')) v *= parse_factor();
            else if (accept('/')) {
                RatFun d = parse_factor();
                if (d.is_zero()) throw ParseError("division by zero", pos);
                v /= d;
            } else return v;
        }
    }

    RatFun parse_factor() {
        bool neg = false;
        while (accept('-')) neg = !neg;
        RatFun v = parse_atom();
        if (accept('^')) {
            long e = parse_integer();
            RatFun base = v;
            v = RatFun(1);
            long n = e < 0 ? -e : e;
            for (long i = 0; i < n; ++i) v *= base;
            if (e < 0) {
                if (v.is_zero()) throw ParseError("zero to a negative power", pos);
                v = v.inverse();
            }
        }
        return neg ? -v : v;
    }

    RatFun parse_atom() {
        skip_ws();
        if (pos >= s.size()) throw ParseError("unexpected end of expression", pos);
        char c = s[pos];
        if (c == '(') {
            ++pos;
            RatFun v = parse_expr();
            if (!accept(')')) throw ParseError("expected ')'", pos);
            return v;
        }
        if (c == 'z') { ++pos; return RatFun::z(); }
        if (std::isdigit(static_cast<unsigned char>(c))) return RatFun(Constant(BigInt(parse_digits())));
        throw ParseError(std::string("unexpected character '") + c + "'", pos);
    }

    std::string parse_digits() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (start == pos) throw ParseError("expected integer", pos);
        return s.substr(start, pos - start);
    }

    long parse_integer() {
        skip_ws();
        bool neg = false;
        while (accept('-')) neg = !neg;
        long v = std::stol(parse_digits());
        return neg ? -v : v;
    }
};

} // namespace

RatFun parse_ratfun(const std::string& text) {
    Parser p(text);
    RatFun v = p.parse_expr();
    p.skip_ws();
    if (p.pos != text.size()) throw ParseError("trailing input", p.pos);
    return v;
}

} // namespace parnf
