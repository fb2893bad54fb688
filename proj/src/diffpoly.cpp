#include "parnf/diffpoly.hpp"
#include "parnf/errors.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <sstream>

namespace parnf {

// ---------------------------------------------------------------------------
// VarPool
// ---------------------------------------------------------------------------

namespace {
struct PoolState {
    std::vector<std::string> names;
    std::map<std::string, Var> ids;
    std::mutex mu;
};
PoolState& pool() {
    static PoolState s;
    return s;
}
} // namespace

Var VarPool::intern(const std::string& name) {
    auto& p = pool();
    std::lock_guard<std::mutex> lock(p.mu);
    auto it = p.ids.find(name);
    if (it != p.ids.end()) return it->second;
    Var v = static_cast<Var>(p.names.size());
    p.names.push_back(name);
    p.ids[name] = v;
    return v;
}

const std::string& VarPool::name(Var v) {
    auto& p = pool();
    std::lock_guard<std::mutex> lock(p.mu);
    return p.names.at(static_cast<size_t>(v));
}

// ---------------------------------------------------------------------------
// Monomial
// ---------------------------------------------------------------------------

Monomial::Monomial(std::vector<JetPow> factors) : f_(std::move(factors)) {
    std::sort(f_.begin(), f_.end(), [](const JetPow& a, const JetPow& b) {
        if (a.var != b.var) return a.var < b.var;
        return a.order < b.order;
    });
    // merge equal jets, drop zero exponents
    std::vector<JetPow> merged;
    for (auto& jp : f_) {
        if (jp.exp == 0) continue;
        if (!merged.empty() && merged.back().var == jp.var && merged.back().order == jp.order)
            merged.back().exp += jp.exp;
        else
            merged.push_back(jp);
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(), [](const JetPow& j) { return j.exp == 0; }),
                 merged.end());
    f_ = std::move(merged);
}

int Monomial::degree() const {
    int d = 0;
    for (auto& jp : f_) d += jp.exp;
    return d;
}

Monomial Monomial::times(const Monomial& o) const {
    std::vector<JetPow> v = f_;
    v.insert(v.end(), o.f_.begin(), o.f_.end());
    return Monomial(std::move(v));
}

bool Monomial::operator<(const Monomial& o) const {
    auto key = [](const JetPow& j) { return std::tuple<int, int, int>(j.var, j.order, j.exp); };
    return std::lexicographical_compare(
        f_.begin(), f_.end(), o.f_.begin(), o.f_.end(),
        [&](const JetPow& a, const JetPow& b) { return key(a) < key(b); });
}

// ---------------------------------------------------------------------------
// DiffPoly
// ---------------------------------------------------------------------------

DiffPoly DiffPoly::jet(Var v, int order, int exp) {
    DiffPoly p;
    p.terms_[Monomial({{v, order, exp}})] = RatFun(1);
    return p;
}

bool DiffPoly::is_ratfun() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

RatFun DiffPoly::ratfun_value() const {
    if (terms_.empty()) return RatFun(0);
    if (!is_ratfun()) throw std::domain_error("DiffPoly: not a pure rational function");
    return terms_.begin()->second;
}

bool DiffPoly::is_constant_coefficient() const {
    for (auto& [m, c] : terms_)
        if (!c.is_constant()) return false;
    return true;
}

DiffPoly DiffPoly::operator-() const {
    DiffPoly r;
    for (auto& [m, c] : terms_) r.terms_[m] = -c;
    return r;
}

DiffPoly DiffPoly::operator+(const DiffPoly& o) const {
    DiffPoly r(*this);
    for (auto& [m, c] : o.terms_) {
        auto it = r.terms_.find(m);
        if (it == r.terms_.end()) {
            r.terms_[m] = c;
        } else {
            it->second += c;
            if (it->second.is_zero()) r.terms_.erase(it);
        }
    }
    return r;
}

DiffPoly DiffPoly::operator-(const DiffPoly& o) const { return *this + (-o); }

DiffPoly DiffPoly::operator*(const DiffPoly& o) const {
    DiffPoly r;
    for (auto& [m1, c1] : terms_) {
        for (auto& [m2, c2] : o.terms_) {
            Monomial m = m1.times(m2);
            RatFun c = c1 * c2;
            auto it = r.terms_.find(m);
            if (it == r.terms_.end()) {
                if (!c.is_zero()) r.terms_[m] = c;
            } else {
                it->second += c;
                if (it->second.is_zero()) r.terms_.erase(it);
            }
        }
    }
    return r;
}

DiffPoly DiffPoly::operator*(const RatFun& c) const {
    if (c.is_zero()) return DiffPoly();
    DiffPoly r;
    for (auto& [m, k] : terms_) r.terms_[m] = k * c;
    return r;
}

DiffPoly DiffPoly::total_derivative() const {
    DiffPoly r;
    for (auto& [m, c] : terms_) {
        RatFun dc = c.derivative();
        if (!dc.is_zero()) r += [&] { DiffPoly t; t.terms_[m] = dc; return t; }();
        auto& fs = m.factors();
        for (size_t i = 0; i < fs.size(); ++i) {
            std::vector<JetPow> rest;
            for (size_t j = 0; j < fs.size(); ++j) {
                if (j == i) {
                    if (fs[j].exp > 1) rest.push_back({fs[j].var, fs[j].order, fs[j].exp - 1});
                    rest.push_back({fs[j].var, fs[j].order + 1, 1});
                } else {
                    rest.push_back(fs[j]);
                }
            }
            DiffPoly t;
            t.terms_[Monomial(std::move(rest))] = c * RatFun(Constant(fs[i].exp));
            r += t;
        }
    }
    return r;
}

DiffPoly DiffPoly::total_derivative(int k) const {
    DiffPoly r = *this;
    for (int i = 0; i < k; ++i) r = r.total_derivative();
    return r;
}

RatFun DiffPoly::substitute_jets(const std::map<Var, RatFun>& sigma) const {
    // Cache derivatives of the images.
    std::map<std::pair<Var, int>, RatFun> cache;
    auto image = [&](Var v, int order) -> RatFun {
        auto it = sigma.find(v);
        if (it == sigma.end())
            throw MissingAssignmentError("substitute_jets: no assignment for " + VarPool::name(v));
        auto key = std::make_pair(v, order);
        auto c = cache.find(key);
        if (c != cache.end()) return c->second;
        RatFun r = it->second.derivative(order);
        cache[key] = r;
        return r;
    };
    RatFun acc(0);
    for (auto& [m, c] : terms_) {
        RatFun t = c;
        for (auto& jp : m.factors()) {
            RatFun base = image(jp.var, jp.order);
            for (int e = 0; e < jp.exp; ++e) t *= base;
        }
        acc += t;
    }
    return acc;
}

DiffPoly DiffPoly::substitute_diff(const std::map<Var, DiffPoly>& sigma) const {
    std::map<std::pair<Var, int>, DiffPoly> cache;
    auto image = [&](Var v, int order) -> DiffPoly {
        auto it = sigma.find(v);
        if (it == sigma.end()) return DiffPoly::jet(v, order);
        auto c = cache.find({v, order});
        if (c != cache.end()) return c->second;
        int k = order - 1;
        while (k >= 0 && !cache.count({v, k})) --k;
        DiffPoly r;
        if (k < 0) {
            r = it->second;
            cache[{v, 0}] = r;
            k = 0;
        } else {
            r = cache.at({v, k});
        }
        while (k < order) {
            r = r.total_derivative();
            cache[{v, ++k}] = r;
        }
        return r;
    };
    DiffPoly acc;
    for (auto& [m, c] : terms_) {
        DiffPoly t{c};
        for (auto& jp : m.factors()) {
            DiffPoly base = image(jp.var, jp.order);
            for (int e = 0; e < jp.exp; ++e) t *= base;
        }
        acc += t;
    }
    return acc;
}

std::set<Var> DiffPoly::variables() const {
    std::set<Var> vs;
    for (auto& [m, c] : terms_)
        for (auto& jp : m.factors()) vs.insert(jp.var);
    return vs;
}

int DiffPoly::max_order(Var v) const {
    int mo = -1;
    for (auto& [m, c] : terms_)
        for (auto& jp : m.factors())
            if (jp.var == v) mo = std::max(mo, jp.order);
    return mo;
}

int DiffPoly::degree() const {
    int d = 0;
    for (auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
}

RatFun DiffPoly::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? RatFun(0) : it->second;
}

std::string DiffPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [m, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        bool need_coeff = m.is_one() || !c.is_one();
        if (need_coeff) {
            std::string cs = c.str();
            bool wrap = cs.find_first_of("+-*/") != std::string::npos && !(cs.size() > 1 && cs[0] == '-' && cs.find_first_of("+-*/", 1) == std::string::npos);
            if (wrap) os << "(" << cs << ")";
            else os << cs;
        }
        bool first_factor = !need_coeff;
        for (auto& jp : m.factors()) {
            if (!first_factor) os << "*";
            first_factor = false;
            os << VarPool::name(jp.var);
            for (int k = 0; k < jp.order; ++k) os << "'";
            if (jp.exp > 1) os << "^" << jp.exp;
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace {

struct DPParser {
    const std::string& s;
    size_t pos = 0;

    explicit DPParser(const std::string& text) : s(text) {}

    void skip_ws() { while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos; }

    bool peek(char c) {
        skip_ws();
        return pos < s.size() && s[pos] == c;
    }

    bool accept(char c) {
        if (peek(c)) { ++pos; return true; }
        return false;
    }

    DiffPoly parse_expr() {
        DiffPoly v = parse_term();
        for (;;) {
            if (accept('+')) v += parse_term();
            else if (accept('-')) v -= parse_term();
            else return v;
        }
    }

    DiffPoly parse_term() {
        DiffPoly v = parse_factor();
        for (;;) {
            if (accept('*')) v *= parse_factor();
            else if (accept('/')) {
                DiffPoly d = parse_factor();
                if (!d.is_ratfun()) throw ParseError("division by a non-rational expression", pos);
                v = v * d.ratfun_value().inverse();
            } else {
                return v;
            }
        }
    }

    DiffPoly parse_factor() {
        bool neg = false;
        while (accept('-')) neg = !neg;
        DiffPoly v = parse_atom();
        if (accept('^')) {
            long e = parse_unsigned();
            DiffPoly base = v;
            v = DiffPoly(1);
            for (long i = 0; i < e; ++i) v *= base;
        }
        return neg ? -v : v;
    }

    DiffPoly parse_atom() {
        skip_ws();
        if (pos >= s.size()) throw ParseError("unexpected end of expression", pos);
        char c = s[pos];
        if (c == '(') {
            ++pos;
            DiffPoly v = parse_expr();
            if (!accept(')')) throw ParseError("expected ')'", pos);
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            return DiffPoly(RatFun(Constant(BigInt(parse_digits()))));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            size_t start = pos;
            while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) ++pos;
            std::string name = s.substr(start, pos - start);
            if (name == "z") return DiffPoly(RatFun::z());
            if (name == "sqrt2") return DiffPoly(RatFun(Constant::sqrt2()));
            int order = 0;
            while (pos < s.size() && s[pos] == '\'') { ++order; ++pos; }
            return DiffPoly::jet(VarPool::intern(name), order);
        }
        throw ParseError(std::string("unexpected character '") + c + "'", pos);
    }

    std::string parse_digits() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (start == pos) throw ParseError("expected integer", pos);
        return s.substr(start, pos - start);
    }

    long parse_unsigned() { return std::stol(parse_digits()); }
};

} // namespace

DiffPoly parse_diffpoly(const std::string& text) {
    DPParser p(text);
    DiffPoly v = p.parse_expr();
    p.skip_ws();
    if (p.pos != text.size()) throw ParseError("trailing input", p.pos);
    return v;
}

} // namespace parnf
