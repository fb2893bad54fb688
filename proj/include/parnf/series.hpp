#ifndef PARNF_SERIES_HPP
#define PARNF_SERIES_HPP

#include "parnf/diffpoly.hpp"

#include <map>
#include <optional>
#include <vector>

namespace parnf {

/// Power series at z0 truncated to a fixed order; arithmetic is exact on the
/// retained coefficients.
class TruncatedSeries {
public:
    TruncatedSeries(Constant z0, int order) : z0_(std::move(z0)), c_(static_cast<size_t>(order) + 1, Constant(0)) {}

    static TruncatedSeries from_ratfun(const RatFun& f, const Constant& z0, int order); // throws SingularPointError
    static TruncatedSeries monomial_shift(const Constant& z0, int order); // the series of (z - z0)

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const Constant& z0() const { return z0_; }
    const Constant& coeff(int k) const { return c_[static_cast<size_t>(k)]; }
    Constant& coeff(int k) { return c_[static_cast<size_t>(k)]; }
    bool is_zero() const;

    TruncatedSeries operator+(const TruncatedSeries& o) const;
    TruncatedSeries operator-(const TruncatedSeries& o) const;
    TruncatedSeries operator*(const TruncatedSeries& o) const;
    /// d/dz; the top retained coefficient becomes unreliable and is dropped
    /// into the order budget the caller reserved.
    TruncatedSeries derivative() const;

private:
    Constant z0_;
    std::vector<Constant> c_;
};

enum class ConsistencyVerdict { Consistent, Inconsistent, Unknown };

struct ConsistencyResult {
    ConsistencyVerdict verdict = ConsistencyVerdict::Unknown;
    /// Consistent: witness jet series per variable (coefficients at z0).
    std::map<Var, std::vector<Constant>> witness;
    /// Inconsistent: a nonzero constant reached by exact reduction.
    std::optional<Constant> contradiction;
    std::string detail;
};

/// Triangular truncated-prolongation consistency oracle.  Matches each
/// equation to a leading jet occurring linearly with constant coefficient,
/// solves the series coefficients layer by layer (parametric coefficients
/// default to zero), and classifies the residuals of the remaining
/// equations.  `Inconsistent` is only reported when no parametric choice was
/// made, so the derived contradiction is forced.
ConsistencyResult series_consistent(const std::vector<DiffPoly>& eqs, const Constant& z0, int order);

/// Smallest non-negative integer that is a regular point of every equation
/// coefficient.
Constant default_expansion_point(const std::vector<DiffPoly>& eqs);

} // namespace parnf

#endif
