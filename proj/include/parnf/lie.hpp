#ifndef PARNF_LIE_HPP
#define PARNF_LIE_HPP

#include "parnf/constant.hpp"
#include "parnf/errors.hpp"
#include "parnf/matrix.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace parnf {

enum class GroupType { A, B, C, G2 };

GroupType parse_group_type(const std::string& s); // throws UnsupportedTypeError
std::string group_type_name(GroupType t);

/// Root as integer coefficient vector over the simple roots.
using Root = std::vector<int>;
int root_height(const Root& r);

/// Root system, Chevalley-basis matrices and Weyl data for one classical
/// group in the matrix representation the normal-form construction uses.
/// Built once per (type, rank) and shared immutably.
struct GroupData {
    GroupType type;
    int rank = 0; // l
    int dim = 0;  // n

    /// Positive roots alpha_1..alpha_m: the simple roots first, then by
    /// ascending height with ties broken by lexicographically descending
    /// coefficient vector.  beta_i = -alpha_i shares the index.
    std::vector<Root> pos_roots;
    int num_roots() const { return static_cast<int>(pos_roots.size()); } // m

    std::vector<Mat<Constant>> x_pos;   // X_{alpha_i}
    std::vector<Mat<Constant>> x_neg;   // X_{beta_i}
    /// Torus basis of the Cartan subalgebra: the parametrization behind
    /// t_i(x) and the exp-coordinates.  Coincides with the coroots for A and
    /// G2; B and C use the epsilon-style basis E_ii - E_{-i,-i} matching the
    /// printed torus data.
    std::vector<Mat<Constant>> cartan;
    std::vector<Mat<Constant>> coroot;  // H_{alpha_i}^vee with [H, X_{alpha_i}] = 2 X_{alpha_i}
    std::vector<int> pair_sign;         // lambda_i: [X_{alpha_i}, X_{beta_i}] = lambda_i H_i^vee

    std::vector<Mat<Constant>> weyl_simple; // n(w_{alpha_i})
    Mat<Constant> weyl_longest;             // n(wbar)
    Mat<Constant> weyl_longest_inv;
    std::vector<int> longest_word;          // simple-reflection indices, applied left to right
    std::vector<int> wbar_neg_simple_image; // pi: wbar(-alpha_i) = alpha_{pi[i]}

    std::vector<std::vector<int>> weight;   // weight[j][i] = (H_i)_{jj}
    std::vector<int> weight_perm;           // basis order sorted by descending weight
    std::vector<std::pair<int, int>> peel_entry; // designated read position per beta_k
    std::vector<std::vector<BigInt>> torus_exponent_solver; // l x n left inverse of weight; empty when none over Z
    std::vector<std::vector<BigInt>> torus_relations;       // integer kernel of weight^T: torus = {d : d^kappa = 1}

    int root_index(const Root& r) const;   // index into pos_roots or -1
    bool is_root(const Root& r) const { return root_index(r) >= 0; }

    // Exact linear projector onto the Chevalley basis, precomputed over C.
    // pivot_positions lists n^2-flattened entries; dual(i,j) expresses basis
    // coefficient i through pivot entry j.
    std::vector<int> lie_pivots;
    Mat<Constant> lie_dual;
};

using GroupPtr = std::shared_ptr<const GroupData>;

/// Construct (or fetch from cache) the group data.  Supported: A_l with
/// l >= 1, B_l and C_l with l >= 2, G2 with l = 2, all within the rank cap.
GroupPtr build_group(GroupType type, int rank, int rank_cap = 4);

/// Chevalley-basis coefficients of a matrix.
template <class R>
struct LieCoeffs {
    std::vector<R> cartan; // on H_1..H_l
    std::vector<R> pos;    // on X_{alpha_i}
    std::vector<R> neg;    // on X_{beta_i}
};

/// Bruhat big-cell parameters: Y = u(x) n(wbar) t u(w) with t the diagonal
/// torus factor.  The t_i-coordinates of the torus exist over the base field
/// only when the representation's weight lattice admits them (they do for
/// A_l, C_l, G2; for B_l the parametrization is a double cover), so they are
/// exposed through torus_parameters() instead of being stored.
template <class F>
struct BruhatParams {
    std::vector<F> x;
    std::vector<F> torus_diag;
    std::vector<F> w;
};

/// Solve the torus diagonal for t_i-parameters z with t(z) = diag(d);
/// returns false when the weight lattice does not determine them over F.
template <class F>
bool torus_parameters(const GroupData& g, const std::vector<F>& d, std::vector<F>& z) {
    if (g.torus_exponent_solver.empty()) return false;
    z.clear();
    for (int i = 0; i < g.rank; ++i) {
        F zi{Constant(1)};
        for (int j = 0; j < g.dim; ++j) {
            const BigInt& e = g.torus_exponent_solver[static_cast<size_t>(i)][static_cast<size_t>(j)];
            if (e == 0) continue;
            F base = e > 0 ? d[static_cast<size_t>(j)] : d[static_cast<size_t>(j)].inverse();
            BigInt cnt = e > 0 ? e : BigInt(-e);
            for (BigInt c = 0; c < cnt; ++c) zi = zi * base;
        }
        z.push_back(zi);
    }
    std::vector<F> rebuilt(static_cast<size_t>(g.dim));
    Mat<F> t = torus_element(g, z);
    for (int j = 0; j < g.dim; ++j)
        if (!(t(j, j) - d[static_cast<size_t>(j)]).is_zero()) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Templated operations over a commutative ring R (constructible from
// Constant; field routines additionally need inverse()).
// ---------------------------------------------------------------------------

template <class R>
Mat<R> embed_matrix(const Mat<Constant>& m) {
    return m.template map<R>([](const Constant& c) { return R(c); });
}

/// exp(x X) for nilpotent X with exact Chevalley denominators.
template <class R>
Mat<R> exp_nilpotent(const Mat<Constant>& X, const R& x) {
    int n = X.rows();
    Mat<R> result = Mat<R>::identity(n, R(Constant(1)));
    Mat<Constant> power = X;
    BigInt factorial = 1;
    R xk = x;
    for (int k = 1; !power.is_zero(); ++k) {
        Mat<Constant> scaled = power * Constant(BigRat(BigInt(1), factorial));
        result = result + embed_matrix<R>(scaled) * xk;
        power = power * X;
        factorial *= (k + 1);
        xk = xk * x;
    }
    return result;
}

template <class R>
Mat<R> root_group_pos(const GroupData& g, int idx, const R& x) {
    return exp_nilpotent(g.x_pos[static_cast<size_t>(idx)], x);
}

template <class R>
Mat<R> root_group_neg(const GroupData& g, int idx, const R& x) {
    return exp_nilpotent(g.x_neg[static_cast<size_t>(idx)], x);
}

/// u(x) = u_{beta_1}(x_1) ... u_{beta_m}(x_m).
template <class R>
Mat<R> u_neg_product(const GroupData& g, const std::vector<R>& x) {
    Mat<R> acc = Mat<R>::identity(g.dim, R(Constant(1)));
    for (int i = 0; i < g.num_roots(); ++i) acc = acc * root_group_neg(g, i, x[static_cast<size_t>(i)]);
    return acc;
}

/// t(z) = t_1(z_1) ... t_l(z_l); diagonal with entries prod z_i^weight.
template <class F>
Mat<F> torus_element(const GroupData& g, const std::vector<F>& z) {
    Mat<F> t(g.dim, g.dim);
    for (int j = 0; j < g.dim; ++j) {
        F e{Constant(1)};
        for (int i = 0; i < g.rank; ++i) {
            int w = g.weight[static_cast<size_t>(j)][static_cast<size_t>(i)];
            const F& zi = z[static_cast<size_t>(i)];
            if (w > 0)
                for (int k = 0; k < w; ++k) e = e * zi;
            else if (w < 0) {
                F inv = zi.inverse();
                for (int k = 0; k < -w; ++k) e = e * inv;
            }
        }
        t(j, j) = e;
    }
    return t;
}

/// Inverse of a unipotent matrix over any ring via the nilpotent Neumann sum.
template <class R>
Mat<R> unipotent_inverse(const Mat<R>& u) {
    int n = u.rows();
    Mat<R> id = Mat<R>::identity(n, R(Constant(1)));
    Mat<R> nil = u - id;
    Mat<R> acc = id, power = nil;
    int sign = -1;
    for (int k = 1; k <= n && !power.is_zero(); ++k) {
        acc = sign < 0 ? acc - power : acc + power;
        power = power * nil;
        sign = -sign;
    }
    return acc;
}

/// Exact Chevalley-basis coordinates; throws NotInLieAlgebra with the
/// residual when the matrix is outside the span.
template <class R>
LieCoeffs<R> lie_decompose(const GroupData& g, const Mat<R>& mat) {
    int l = g.rank, m = g.num_roots();
    std::vector<R> all(static_cast<size_t>(l + 2 * m));
    for (size_t i = 0; i < all.size(); ++i) {
        R acc{Constant(0)};
        for (size_t j = 0; j < g.lie_pivots.size(); ++j) {
            const Constant& d = g.lie_dual(static_cast<int>(i), static_cast<int>(j));
            if (d.is_zero()) continue;
            int pos = g.lie_pivots[j];
            acc = acc + R(d) * mat(pos / g.dim, pos % g.dim);
        }
        all[i] = acc;
    }
    // residual check
    Mat<R> rec(g.dim, g.dim);
    for (int i = 0; i < l; ++i) rec = rec + embed_matrix<R>(g.cartan[static_cast<size_t>(i)]) * all[static_cast<size_t>(i)];
    for (int i = 0; i < m; ++i) rec = rec + embed_matrix<R>(g.x_pos[static_cast<size_t>(i)]) * all[static_cast<size_t>(l + i)];
    for (int i = 0; i < m; ++i) rec = rec + embed_matrix<R>(g.x_neg[static_cast<size_t>(i)]) * all[static_cast<size_t>(l + m + i)];
    if (!(rec - mat).is_zero())
        throw NotInLieAlgebraError("matrix outside the Chevalley span; residual " + (mat - rec).str());
    LieCoeffs<R> c;
    c.cartan.assign(all.begin(), all.begin() + l);
    c.pos.assign(all.begin() + l, all.begin() + l + m);
    c.neg.assign(all.begin() + l + m, all.end());
    return c;
}

/// Successive extraction of u(x) parameters in the fixed beta order.
template <class R>
std::vector<R> peel_unipotent(const GroupData& g, const Mat<R>& u) {
    Mat<R> m = u;
    std::vector<R> params;
    for (int k = 0; k < g.num_roots(); ++k) {
        auto [r, c] = g.peel_entry[static_cast<size_t>(k)];
        Constant base = g.x_neg[static_cast<size_t>(k)](r, c);
        R x = m(r, c) * R(base.inverse());
        params.push_back(x);
        m = root_group_neg(g, k, R(Constant(0)) - x) * m;
    }
    if (!(m - Mat<R>::identity(g.dim, R(Constant(1)))).is_zero())
        throw NotUnipotentError("residue after peeling is not the identity");
    return params;
}

/// Big-cell Bruhat decomposition Y = u(x) n(wbar) t(z) u(w) over a field.
template <class F>
BruhatParams<F> bruhat_big_cell(const GroupData& g, const Mat<F>& y) {
    int n = g.dim;
    const auto& perm = g.weight_perm;
    auto sorted = [&](const Mat<F>& m) {
        Mat<F> r(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) r(i, j) = m(perm[static_cast<size_t>(i)], perm[static_cast<size_t>(j)]);
        return r;
    };
    Mat<F> ys = sorted(y);
    Mat<F> w_inv = sorted(embed_matrix<F>(g.weyl_longest_inv));

    // Find unipotent lower-triangular L with (w_inv L ys) lower triangular:
    // row r of (L ys) must be orthogonal to columns n-r+2..n (1-based).
    Mat<F> lmat = Mat<F>::identity(n, F(Constant(1)));
    for (int r = 1; r < n; ++r) { // 0-based row; r unknowns
        int k = n - 1 - r;        // system matrix is Y^(k) in the paper's numbering
        Mat<F> a(r, r);
        std::vector<F> b(static_cast<size_t>(r));
        for (int eq = 0; eq < r; ++eq) {
            int col = k + 1 + eq;
            for (int s = 0; s < r; ++s) a(eq, s) = ys(s, col);
            b[static_cast<size_t>(eq)] = F(Constant(0)) - ys(r, col);
        }
        std::vector<F> sol;
        Mat<F> a_echelon = a;
        if (row_echelon(a_echelon) < r || !solve_linear(a, b, sol))
            throw NotInBigCellError("vanishing leading minor det(Y^(" + std::to_string(k + 1) + "))");
        for (int s = 0; s < r; ++s) lmat(r, s) = sol[static_cast<size_t>(s)];
    }
    Mat<F> bmat = w_inv * lmat * ys;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (!bmat(i, j).is_zero()) throw NotInBigCellError("upper residue after elimination");

    // u(x) from L^{-1}, mapped back to the representation's basis order.
    Mat<F> l_orig(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) l_orig(perm[static_cast<size_t>(i)], perm[static_cast<size_t>(j)]) = lmat(i, j);
    BruhatParams<F> out;
    out.x = peel_unipotent(g, unipotent_inverse(l_orig));

    // Split B = D * u(w) with the raw diagonal and verify that D satisfies
    // the multiplicative relations of the maximal torus.
    std::vector<F> d(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        if (bmat(i, i).is_zero()) throw NotInBigCellError("vanishing torus entry");
        d[static_cast<size_t>(perm[static_cast<size_t>(i)])] = bmat(i, i);
    }
    Mat<F> b_orig(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) b_orig(perm[static_cast<size_t>(i)], perm[static_cast<size_t>(j)]) = bmat(i, j);
    Mat<F> uw_mat(n, n);
    for (int i = 0; i < n; ++i) {
        F inv = d[static_cast<size_t>(i)].inverse();
        for (int j = 0; j < n; ++j) uw_mat(i, j) = inv * b_orig(i, j);
    }
    out.w = peel_unipotent(g, uw_mat);
    out.torus_diag = d;

    for (const auto& rel : g.torus_relations) {
        F acc{Constant(1)};
        for (int j = 0; j < n; ++j) {
            const BigInt& e = rel[static_cast<size_t>(j)];
            if (e == 0) continue;
            F base = e > 0 ? d[static_cast<size_t>(j)] : d[static_cast<size_t>(j)].inverse();
            BigInt cnt = e > 0 ? e : BigInt(-e);
            for (BigInt c = 0; c < cnt; ++c) acc = acc * base;
        }
        if (!(acc - F(Constant(1))).is_zero())
            throw NotInBigCellError("diagonal factor not in the maximal torus");
    }

    // exact reconstruction is part of the contract
    Mat<F> t(n, n);
    for (int i = 0; i < n; ++i) t(i, i) = d[static_cast<size_t>(i)];
    Mat<F> ux = u_neg_product(g, out.x);
    Mat<F> uw = u_neg_product(g, out.w);
    Mat<F> full = ux * embed_matrix<F>(g.weyl_longest) * t * uw;
    if (!(full - y).is_zero()) throw Error(ErrorCode::Internal, "bruhat reconstruction mismatch");
    return out;
}

} // namespace parnf

#endif
