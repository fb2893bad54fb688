#include "parnf/series.hpp"
#include "parnf/errors.hpp"

#include <algorithm>
#include <functional>

namespace parnf {

TruncatedSeries TruncatedSeries::from_ratfun(const RatFun& f, const Constant& z0, int order) {
    // numerator and denominator Taylor coefficients at z0 via shifted polys
    UPoly num = f.num().shifted(z0), den = f.den().shifted(z0);
    if (den.coeff(0).is_zero())
        throw SingularPointError("coefficient denominator vanishes at the expansion point");
    TruncatedSeries out(z0, order);
    Constant d0_inv = den.coeff(0).inverse();
    for (int k = 0; k <= order; ++k) {
        Constant acc = num.coeff(k);
        for (int j = 1; j <= k; ++j) acc -= den.coeff(j) * out.c_[static_cast<size_t>(k - j)];
        out.c_[static_cast<size_t>(k)] = acc * d0_inv;
    }
    return out;
}

TruncatedSeries TruncatedSeries::monomial_shift(const Constant& z0, int order) {
    TruncatedSeries out(z0, order);
    if (order >= 1) out.c_[1] = Constant(1);
    return out;
}

bool TruncatedSeries::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Constant& c) { return c.is_zero(); });
}

TruncatedSeries TruncatedSeries::operator+(const TruncatedSeries& o) const {
    TruncatedSeries r = *this;
    for (size_t k = 0; k < c_.size(); ++k) r.c_[k] += o.c_[k];
    return r;
}

TruncatedSeries TruncatedSeries::operator-(const TruncatedSeries& o) const {
    TruncatedSeries r = *this;
    for (size_t k = 0; k < c_.size(); ++k) r.c_[k] -= o.c_[k];
    return r;
}

TruncatedSeries TruncatedSeries::operator*(const TruncatedSeries& o) const {
    TruncatedSeries r(z0_, order());
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (size_t j = 0; i + j < c_.size(); ++j) r.c_[i + j] += c_[i] * o.c_[j];
    }
    return r;
}

TruncatedSeries TruncatedSeries::derivative() const {
    TruncatedSeries r(z0_, order());
    for (size_t k = 1; k < c_.size(); ++k) r.c_[k - 1] = c_[k] * Constant(static_cast<long>(k));
    r.c_.back() = Constant(0);
    return r;
}

Constant default_expansion_point(const std::vector<DiffPoly>& eqs) {
    for (long cand = 0;; ++cand) {
        Constant z0(cand);
        bool ok = true;
        for (auto& eq : eqs) {
            for (auto& [mono, coeff] : eq.terms())
                if (coeff.den().eval(z0).is_zero()) { ok = false; break; }
            if (!ok) break;
        }
        if (ok) return z0;
    }
}

namespace {

struct Matching {
    struct Entry {
        int eq;
        Var var;
        int order;
        Constant lead;
    };
    std::vector<Entry> entries;
    std::vector<int> checks; // unmatched equations act as residual checks
};

/// A jet (v, d) is a usable leader of eq when every monomial containing it is
/// the bare degree-one jet and the total coefficient is a nonzero constant.
bool leading_jet(const DiffPoly& eq, Var v, int d, Constant& lead) {
    RatFun total(0);
    for (auto& [mono, coeff] : eq.terms()) {
        bool contains = false;
        for (auto& jp : mono.factors())
            if (jp.var == v && jp.order == d) contains = true;
        if (!contains) continue;
        if (mono.factors().size() != 1 || mono.factors()[0].exp != 1) return false;
        total += coeff;
    }
    if (!total.is_constant()) return false;
    lead = total.constant_value();
    return !lead.is_zero();
}

std::optional<Matching> find_matching(const std::vector<DiffPoly>& eqs) {
    int ne = static_cast<int>(eqs.size());
    std::vector<std::vector<Matching::Entry>> cand(static_cast<size_t>(ne));
    for (int e = 0; e < ne; ++e) {
        for (Var v : eqs[static_cast<size_t>(e)].variables()) {
            int d = eqs[static_cast<size_t>(e)].max_order(v);
            Constant lead;
            if (leading_jet(eqs[static_cast<size_t>(e)], v, d, lead))
                cand[static_cast<size_t>(e)].push_back({e, v, d, lead});
        }
        std::sort(cand[static_cast<size_t>(e)].begin(), cand[static_cast<size_t>(e)].end(),
                  [](const Matching::Entry& a, const Matching::Entry& b) { return a.order < b.order; });
    }
    std::map<Var, int> var_to_eq;
    std::function<bool(int, std::set<Var>&)> augment = [&](int e, std::set<Var>& seen) {
        for (auto& entry : cand[static_cast<size_t>(e)]) {
            if (seen.count(entry.var)) continue;
            seen.insert(entry.var);
            auto holder = var_to_eq.find(entry.var);
            if (holder == var_to_eq.end() || augment(holder->second, seen)) {
                var_to_eq[entry.var] = e;
                return true;
            }
        }
        return false;
    };
    for (int e = 0; e < ne; ++e) {
        std::set<Var> seen;
        augment(e, seen);
    }
    Matching m;
    std::set<int> matched;
    for (auto& [v, e] : var_to_eq)
        for (auto& entry : cand[static_cast<size_t>(e)])
            if (entry.var == v) {
                m.entries.push_back(entry);
                matched.insert(e);
                break;
            }
    for (int e = 0; e < ne; ++e)
        if (!matched.count(e)) m.checks.push_back(e);
    if (m.entries.empty() && !eqs.empty()) return std::nullopt;
    return m;
}

} // namespace

ConsistencyResult series_consistent(const std::vector<DiffPoly>& eqs, const Constant& z0, int order) {
    ConsistencyResult result;
    for (auto& eq : eqs)
        for (auto& [mono, coeff] : eq.terms())
            if (coeff.den().eval(z0).is_zero())
                throw SingularPointError("expansion point is a pole of an equation coefficient");

    auto matching_opt = find_matching(eqs);
    if (!matching_opt) {
        result.detail = "no triangular leading-jet matching found";
        return result;
    }
    Matching matching = *matching_opt;

    int jet_slack = 0;
    std::set<Var> vars;
    for (auto& eq : eqs)
        for (Var v : eq.variables()) {
            vars.insert(v);
            jet_slack = std::max(jet_slack, eq.max_order(v));
        }
    int work = order + jet_slack + 1;

    std::map<Var, std::vector<Constant>> series;
    std::map<Var, std::vector<bool>> known;
    for (Var v : vars) {
        series[v].assign(static_cast<size_t>(work) + 1, Constant(0));
        known[v].assign(static_cast<size_t>(work) + 1, true); // parametric -> 0 by default
    }
    bool parametric_used = false;
    for (auto& entry : matching.entries) {
        auto& kn = known[entry.var];
        for (int k = entry.order; k <= work; ++k) kn[static_cast<size_t>(k)] = false;
        if (entry.order > 0) parametric_used = true;
    }
    for (Var v : vars) {
        bool matched = std::any_of(matching.entries.begin(), matching.entries.end(),
                                   [&](const Matching::Entry& e) { return e.var == v; });
        if (!matched) parametric_used = true;
    }

    auto eval_eq = [&](const DiffPoly& eq) {
        std::map<std::pair<Var, int>, TruncatedSeries> jets;
        std::function<const TruncatedSeries&(Var, int)> jet = [&](Var v, int d) -> const TruncatedSeries& {
            auto key = std::make_pair(v, d);
            auto it = jets.find(key);
            if (it != jets.end()) return it->second;
            if (d == 0) {
                TruncatedSeries s(z0, work);
                for (int k = 0; k <= work; ++k) s.coeff(k) = series[v][static_cast<size_t>(k)];
                return jets.emplace(key, std::move(s)).first->second;
            }
            TruncatedSeries s = jet(v, d - 1).derivative();
            return jets.emplace(key, std::move(s)).first->second;
        };
        TruncatedSeries acc(z0, work);
        for (auto& [mono, coeff] : eq.terms()) {
            TruncatedSeries term = TruncatedSeries::from_ratfun(coeff, z0, work);
            for (auto& jp : mono.factors())
                for (int e = 0; e < jp.exp; ++e) term = term * jet(jp.var, jp.order);
            acc = acc + term;
        }
        return acc;
    };

    for (int layer = 0; layer <= order; ++layer) {
        bool progress = true;
        while (progress) {
            progress = false;
            for (auto& entry : matching.entries) {
                int target = entry.order + layer;
                if (target > work || known[entry.var][static_cast<size_t>(target)]) continue;
                bool ready = true;
                for (Var w : eqs[static_cast<size_t>(entry.eq)].variables()) {
                    int top = std::min(eqs[static_cast<size_t>(entry.eq)].max_order(w) + layer, work);
                    for (int k = 0; k <= top; ++k) {
                        if (w == entry.var && k == target) continue;
                        if (!known[w][static_cast<size_t>(k)]) { ready = false; break; }
                    }
                    if (!ready) break;
                }
                if (!ready) continue;
                TruncatedSeries val = eval_eq(eqs[static_cast<size_t>(entry.eq)]);
                // residual is linear in the target coefficient with slope
                // lead * target!/layer!
                Constant factorial(1);
                for (int k = layer + 1; k <= target; ++k) factorial *= Constant(static_cast<long>(k));
                series[entry.var][static_cast<size_t>(target)] = -(val.coeff(layer) / (entry.lead * factorial));
                known[entry.var][static_cast<size_t>(target)] = true;
                progress = true;
            }
        }
    }
    for (auto& entry : matching.entries)
        for (int layer = 0; layer <= order; ++layer) {
            int target = entry.order + layer;
            if (target <= work && !known[entry.var][static_cast<size_t>(target)]) {
                result.detail = "coupled leading jets could not be ordered";
                return result;
            }
        }

    for (auto& eq : eqs) {
        TruncatedSeries val = eval_eq(eq);
        for (int k = 0; k <= order; ++k) {
            if (!val.coeff(k).is_zero()) {
                if (!parametric_used) {
                    result.verdict = ConsistencyVerdict::Inconsistent;
                    result.contradiction = val.coeff(k);
                    result.detail = "forced reduction reached a nonzero constant";
                } else {
                    result.detail = "residual nonzero under defaulted parametric coefficients";
                }
                return result;
            }
        }
    }

    result.verdict = ConsistencyVerdict::Consistent;
    for (Var v : vars) {
        auto& s = series[v];
        result.witness[v] = std::vector<Constant>(s.begin(), s.begin() + order + 1);
    }
    return result;
}

} // namespace parnf
