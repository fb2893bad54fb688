#include "parnf/ore.hpp"
#include "parnf/series.hpp"

#include <algorithm>

namespace parnf {

// ---------------------------------------------------------------------------
// Riccati polynomials via P_0 = 1, P_{k+1} = P_k' + u P_k.
// ---------------------------------------------------------------------------

namespace {

std::vector<DiffPoly> riccati_powers(Var uvar, int order) {
    std::vector<DiffPoly> p;
    p.push_back(DiffPoly(1));
    DiffPoly u = DiffPoly::variable(uvar);
    for (int k = 0; k < order; ++k) p.push_back(p.back().total_derivative() + u * p.back());
    return p;
}

} // namespace

DiffPoly riccati_of_ratfun(const std::vector<RatFun>& coeffs, Var uvar) {
    int d = static_cast<int>(coeffs.size()) - 1;
    auto p = riccati_powers(uvar, d);
    DiffPoly acc;
    for (int k = 0; k <= d; ++k)
        if (!coeffs[static_cast<size_t>(k)].is_zero()) acc += p[static_cast<size_t>(k)] * coeffs[static_cast<size_t>(k)];
    return acc;
}

DiffPoly riccati_of_difffrac(const std::vector<DiffFrac>& coeffs, Var uvar) {
    int d = static_cast<int>(coeffs.size()) - 1;
    auto p = riccati_powers(uvar, d);
    DiffFrac acc;
    for (int k = 0; k <= d; ++k)
        if (!coeffs[static_cast<size_t>(k)].is_zero())
            acc += coeffs[static_cast<size_t>(k)] * DiffFrac(p[static_cast<size_t>(k)]);
    // clearing the denominator does not change the zero set
    return acc.num();
}

} // namespace parnf
