#ifndef PARNF_ORE_HPP
#define PARNF_ORE_HPP

#include "parnf/difffrac.hpp"
#include "parnf/errors.hpp"
#include "parnf/matrix.hpp"

#include <algorithm>
#include <vector>

namespace parnf {

/// Skew polynomial in D over a differential field K with D a = a D + a'.
/// K needs: K(Constant), +, -, *, inverse(), derivative(), is_zero(), ==.
template <class K>
class Operator {
public:
    Operator() {}
    explicit Operator(std::vector<K> coeffs) : c_(std::move(coeffs)) { trim(); }
    Operator(const K& constant) { c_.push_back(constant); trim(); }

    static Operator dx() { return Operator(std::vector<K>{K(Constant(0)), K(Constant(1))}); }

    bool is_zero() const { return c_.empty(); }
    int order() const { return static_cast<int>(c_.size()) - 1; } // -1 for zero
    const K& coeff(int i) const {
        static const K zero{Constant(0)};
        if (i < 0 || i >= static_cast<int>(c_.size())) return zero;
        return c_[static_cast<size_t>(i)];
    }
    const K& leading() const { return c_.back(); }
    const std::vector<K>& coeffs() const { return c_; }

    Operator operator-() const {
        Operator r = *this;
        for (auto& x : r.c_) x = K(Constant(0)) - x;
        return r;
    }
    Operator operator+(const Operator& o) const {
        std::vector<K> v(std::max(c_.size(), o.c_.size()), K(Constant(0)));
        for (size_t i = 0; i < v.size(); ++i) v[i] = coeff(static_cast<int>(i)) + o.coeff(static_cast<int>(i));
        return Operator(std::move(v));
    }
    Operator operator-(const Operator& o) const { return *this + (-o); }

    /// Skew product using D^i a = sum_k C(i,k) a^(k) D^(i-k).
    Operator operator*(const Operator& o) const {
        if (is_zero() || o.is_zero()) return Operator();
        std::vector<K> out(c_.size() + o.c_.size() - 1, K(Constant(0)));
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            // derivatives of o's coefficients
            std::vector<K> der(o.c_.begin(), o.c_.end());
            BigInt binom = 1;
            for (size_t k = 0; k <= i; ++k) {
                if (k > 0) {
                    for (auto& d : der) d = d.derivative();
                    binom = binom * BigInt(i - k + 1) / BigInt(k);
                }
                K factor = c_[i] * K(Constant(BigRat(binom)));
                for (size_t j = 0; j < der.size(); ++j) {
                    if (der[j].is_zero()) continue;
                    out[i - k + j] = out[i - k + j] + factor * der[j];
                }
            }
        }
        return Operator(std::move(out));
    }

    Operator operator*(const K& k) const {
        Operator r = *this;
        for (auto& x : r.c_) x = x * k;
        return r;
    }

    bool operator==(const Operator& o) const { return c_ == o.c_; }
    bool operator!=(const Operator& o) const { return !(*this == o); }

    Operator monic() const {
        if (is_zero()) return *this;
        K inv = c_.back().inverse();
        return *this * inv;
    }

    /// Apply to an element of a differential K-module.
    template <class T>
    T apply(const T& y) const {
        T acc{};
        T der = y;
        for (size_t i = 0; i < c_.size(); ++i) {
            if (i > 0) der = der.derivative();
            if (!c_[i].is_zero()) acc = acc + mul_scalar(der, c_[i]);

        }
        return acc;
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::string s;
        for (int i = order(); i >= 0; --i) {
            if (c_[static_cast<size_t>(i)].is_zero()) continue;
            if (!s.empty()) s += " + ";
            s += "(" + c_[static_cast<size_t>(i)].str() + ")";
            if (i == 1) s += "*D";
            else if (i > 1) s += "*D^" + std::to_string(i);
        }
        return s;
    }

private:
    template <class T>
    static T mul_scalar(const T& t, const K& k) { return t * k; }

    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<K> c_;
};

/// Incremental dependency detector over a field: feed rows one at a time;
/// the first row lying in the span of the previous ones returns the
/// dependency coefficients (with trailing coefficient 1).
template <class K>
class DependencyScanner {
public:
    explicit DependencyScanner(int width) : width_(width) {}

    std::optional<std::vector<K>> feed(std::vector<K> row) {
        std::vector<K> aug(static_cast<size_t>(count_) + 1, K(Constant(0)));
        aug.back() = K(Constant(1));
        ++count_;
        for (auto& rec : rows_) {
            K f = row[static_cast<size_t>(rec.pivot)];
            if (f.is_zero()) continue;
            for (int j = 0; j < width_; ++j)
                if (!rec.row[static_cast<size_t>(j)].is_zero())
                    row[static_cast<size_t>(j)] = row[static_cast<size_t>(j)] - f * rec.row[static_cast<size_t>(j)];
            for (size_t j = 0; j < rec.aug.size(); ++j)
                if (!rec.aug[j].is_zero()) aug[j] = aug[j] - f * rec.aug[j];
        }
        int pivot = -1;
        for (int j = 0; j < width_ && pivot < 0; ++j)
            if (!row[static_cast<size_t>(j)].is_zero()) pivot = j;
        if (pivot < 0) return aug;
        K inv = row[static_cast<size_t>(pivot)].inverse();
        for (auto& x : row) x = x * inv;
        for (auto& x : aug) x = x * inv;
        rows_.push_back({std::move(row), std::move(aug), pivot});
        return std::nullopt;
    }

private:
    struct Rec {
        std::vector<K> row, aug;
        int pivot;
    };
    int width_;
    int count_ = 0;
    std::vector<Rec> rows_;
};

/// L1 = Q L2 + R with ord R < ord L2.
template <class K>
void op_right_divide(const Operator<K>& l1, const Operator<K>& l2, Operator<K>& q, Operator<K>& r) {
    if (l2.is_zero()) throw DivisionByZeroOperatorError("right division by the zero operator");
    q = Operator<K>();
    r = l1;
    K lead_inv = l2.leading().inverse();
    while (!r.is_zero() && r.order() >= l2.order()) {
        int shift = r.order() - l2.order();
        // factor * D^shift with factor chosen to cancel the leading term:
        // (f D^shift) * l2 has leading f * lc(l2)
        K f = r.leading() * lead_inv;
        std::vector<K> mono(static_cast<size_t>(shift) + 1, K(Constant(0)));
        mono[static_cast<size_t>(shift)] = f;
        Operator<K> term(std::move(mono));
        q = q + term;
        r = r - term * l2;
    }
}

template <class K>
Operator<K> op_gcrd(Operator<K> a, Operator<K> b) {
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    while (!b.is_zero()) {
        Operator<K> q, r;
        op_right_divide(a, b, q, r);
        a = b;
        b = r;
    }
    return a.monic();
}

/// Monic least common left multiple: the minimal-order monic operator every
/// input divides on the right.  Found by the first K-linear dependency among
/// the joint remainder sequences of D^t modulo each input.
template <class K>
Operator<K> op_lclm(const std::vector<Operator<K>>& ops) {
    if (ops.empty()) throw DivisionByZeroOperatorError("lclm of an empty list");
    int total = 0;
    for (auto& l : ops) {
        if (l.is_zero()) throw DivisionByZeroOperatorError("lclm with a zero operator");
        total += l.order();
    }
    // remainder of D^t modulo each monic op, tracked incrementally
    std::vector<Operator<K>> monics;
    for (auto& l : ops) monics.push_back(l.monic());
    std::vector<Operator<K>> rem(monics.size(), Operator<K>(K(Constant(1)))); // D^0 mod L
    auto pack = [&]() {
        std::vector<K> row;
        for (size_t i = 0; i < monics.size(); ++i) {
            int len = monics[i].order();
            for (int j = 0; j < len; ++j) row.push_back(rem[i].coeff(j));
        }
        return row;
    };
    int width = 0;
    for (auto& l : monics) width += l.order();
    DependencyScanner<K> scan(width);
    if (auto rel = scan.feed(pack())) return Operator<K>(std::move(*rel)).monic();
    for (int t = 1; t <= total + 1; ++t) {
        for (size_t i = 0; i < monics.size(); ++i) {
            Operator<K> q, r;
            op_right_divide(Operator<K>::dx() * rem[i], monics[i], q, r);
            rem[i] = r;
        }
        if (auto rel = scan.feed(pack())) return Operator<K>(std::move(*rel)).monic();
    }
    throw Error(ErrorCode::Internal, "lclm search exceeded the order bound");
}

template <class K>
Operator<K> op_lclm(const Operator<K>& a, const Operator<K>& b) {
    return op_lclm(std::vector<Operator<K>>{a, b});
}

// ---------------------------------------------------------------------------
// Riccati construction via the P_k recursion P_0 = 1, P_{k+1} = P_k' + u P_k.
// ---------------------------------------------------------------------------

/// Riccati polynomial of L in the differential indeterminate `uvar`; for
/// fraction coefficients the common denominator is cleared, which does not
/// change the zero set.
DiffPoly riccati_of_ratfun(const std::vector<RatFun>& coeffs, Var uvar);
DiffPoly riccati_of_difffrac(const std::vector<DiffFrac>& coeffs, Var uvar);

template <class K>
DiffPoly riccati_of(const Operator<K>& l, Var uvar);

template <>
inline DiffPoly riccati_of<RatFun>(const Operator<RatFun>& l, Var uvar) {
    return riccati_of_ratfun(l.coeffs(), uvar);
}

template <>
inline DiffPoly riccati_of<DiffFrac>(const Operator<DiffFrac>& l, Var uvar) {
    return riccati_of_difffrac(l.coeffs(), uvar);
}

// ---------------------------------------------------------------------------
// Associated operators: minimal operator annihilating all i x i wronskians
// of solutions of a monic operator L.
// ---------------------------------------------------------------------------

/// Exterior-power wronskian module element: coefficients on sorted order
/// subsets S of {0..n-1}; derivative raises one order per summand, reducing
/// order n via the relation of L.
template <class K>
Operator<K> associated_operator(const Operator<K>& l, int i) {
    int n = l.order();
    if (i < 1 || i > n) throw Error(ErrorCode::Internal, "associated operator index out of range");
    if (i == 1) return l.monic();
    Operator<K> lm = l.monic();

    // subsets of {0..n-1} of size i, sorted; index lookup
    std::vector<std::vector<int>> subsets;
    std::vector<int> cur;
    std::function<void(int)> gen = [&](int start) {
        if (static_cast<int>(cur.size()) == i) { subsets.push_back(cur); return; }
        for (int v = start; v < n; ++v) {
            cur.push_back(v);
            gen(v + 1);
            cur.pop_back();
        }
    };
    gen(0);
    auto index_of = [&](const std::vector<int>& s) {
        auto it = std::lower_bound(subsets.begin(), subsets.end(), s);
        return static_cast<int>(it - subsets.begin());
    };
    int dim = static_cast<int>(subsets.size());

    // derivative of a coefficient vector over the D_S basis
    auto derive = [&](const std::vector<K>& vec) {
        std::vector<K> out(static_cast<size_t>(dim), K(Constant(0)));
        for (int s = 0; s < dim; ++s) {
            const K& c = vec[static_cast<size_t>(s)];
            if (!c.is_zero()) {
                // coefficient derivative
                out[static_cast<size_t>(s)] = out[static_cast<size_t>(s)] + c.derivative();
            }
            if (vec[static_cast<size_t>(s)].is_zero()) continue;
            const auto& S = subsets[static_cast<size_t>(s)];
            for (int k = 0; k < i; ++k) {
                int raised = S[static_cast<size_t>(k)] + 1;
                if (raised < n) {
                    if (std::binary_search(S.begin(), S.end(), raised)) continue;
                    std::vector<int> s2 = S;
                    s2[static_cast<size_t>(k)] = raised; // still sorted
                    out[static_cast<size_t>(index_of(s2))] = out[static_cast<size_t>(index_of(s2))] + c;
                } else {
                    // y^(n) = -sum_j c_j y^(j)
                    for (int j = 0; j < n; ++j) {
                        const K& a = lm.coeff(j);
                        if (a.is_zero()) continue;
                        if (std::binary_search(S.begin(), S.end() - 1, j)) continue;
                        std::vector<int> s2(S.begin(), S.end() - 1);
                        // insert j with sign of the sorting permutation
                        auto pos = std::lower_bound(s2.begin(), s2.end(), j);
                        int swaps = static_cast<int>(s2.end() - pos); // moves past this many rows
                        s2.insert(pos, j);
                        K term = c * a;
                        if (swaps % 2 == 0) term = K(Constant(0)) - term; // -a with even swaps
                        // sign: replacing the last row by j gives (-1)^{swaps}
                        // relative to sorted order, combined with the -c_j.
                        out[static_cast<size_t>(index_of(s2))] = out[static_cast<size_t>(index_of(s2))] + term;
                    }
                }
            }
        }
        return out;
    };

    // w = D_{0..i-1}; iterate derivatives until the rows become dependent
    std::vector<K> w(static_cast<size_t>(dim), K(Constant(0)));
    std::vector<int> first(static_cast<size_t>(i));
    for (int k = 0; k < i; ++k) first[static_cast<size_t>(k)] = k;
    w[static_cast<size_t>(index_of(first))] = K(Constant(1));
    DependencyScanner<K> scan(dim);
    std::vector<K> wrow = w;
    if (auto rel = scan.feed(wrow)) return Operator<K>(std::move(*rel)).monic();
    for (int t = 1; t <= dim + 1; ++t) {
        wrow = derive(wrow);
        if (auto rel = scan.feed(wrow)) return Operator<K>(std::move(*rel)).monic();
    }
    throw Error(ErrorCode::Internal, "associated operator search exceeded its bound");
}

} // namespace parnf

#endif
