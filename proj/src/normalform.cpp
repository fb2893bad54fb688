#include "parnf/normalform.hpp"

#include <algorithm>
#include <mutex>

namespace parnf {

namespace {

Mat<Constant> ad_bracket(const Mat<Constant>& a, const Mat<Constant>& b) { return a * b - b * a; }

std::vector<std::vector<int>> level_indices(const GroupData& g) {
    int max_ht = 0;
    for (auto& r : g.pos_roots) max_ht = std::max(max_ht, root_height(r));
    std::vector<std::vector<int>> levels(static_cast<size_t>(max_ht) + 1);
    for (int i = 0; i < g.num_roots(); ++i)
        levels[static_cast<size_t>(root_height(g.pos_roots[static_cast<size_t>(i)]))].push_back(i);
    return levels;
}

} // namespace

std::vector<int> complementary_root_indices(const GroupData& g) {
    // b+ = ad(A_0^-)(u+) + sum g_{gamma_i}: per height h the image of the
    // (h+1)-level under ad(A_0^-) misses exactly one direction when h is an
    // exponent; the complementary root is the last root at that height whose
    // root space completes the level.
    Mat<Constant> a0_neg(g.dim, g.dim);
    for (int i = 0; i < g.rank; ++i) a0_neg = a0_neg + g.x_neg[static_cast<size_t>(i)];
    auto levels = level_indices(g);
    std::vector<int> comp;
    for (size_t h = 1; h < levels.size(); ++h) {
        const auto& level = levels[h];
        int level_dim = static_cast<int>(level.size());
        std::vector<std::vector<Constant>> images;
        if (h + 1 < levels.size()) {
            for (int src : levels[h + 1]) {
                Mat<Constant> img = ad_bracket(a0_neg, g.x_pos[static_cast<size_t>(src)]);
                auto coeffs = lie_decompose<Constant>(g, img);
                std::vector<Constant> row;
                for (int j : level) row.push_back(coeffs.pos[static_cast<size_t>(j)]);
                images.push_back(std::move(row));
            }
        }
        auto rank_of = [&](const std::vector<std::vector<Constant>>& rows) {
            if (rows.empty()) return 0;
            Mat<Constant> m(static_cast<int>(rows.size()), level_dim);
            for (size_t r = 0; r < rows.size(); ++r)
                for (int c = 0; c < level_dim; ++c) m(static_cast<int>(r), c) = rows[r][static_cast<size_t>(c)];
            return row_echelon(m);
        };
        int base_rank = rank_of(images);
        int deficiency = level_dim - base_rank;
        if (deficiency == 0) continue;
        if (deficiency != 1)
            throw Error(ErrorCode::Internal, "unexpected multiplicity in the complementary decomposition");
        int chosen = -1;
        for (int pos = level_dim - 1; pos >= 0 && chosen < 0; --pos) {
            auto rows = images;
            std::vector<Constant> e(static_cast<size_t>(level_dim), Constant(0));
            e[static_cast<size_t>(pos)] = Constant(1);
            rows.push_back(e);
            if (rank_of(rows) == level_dim) chosen = level[static_cast<size_t>(pos)];
        }
        if (chosen < 0) throw Error(ErrorCode::Internal, "no complementary root found at an exponent height");
        comp.push_back(chosen);
    }
    if (static_cast<int>(comp.size()) != g.rank)
        throw Error(ErrorCode::Internal, "complementary root count differs from the rank");
    return comp;
}

Mat<DiffPoly> gauge_by_root_element(const GroupData& g, bool negative, int root_idx, const DiffPoly& x,
                                    const Mat<DiffPoly>& a) {
    const Mat<Constant>& xmat = negative ? g.x_neg[static_cast<size_t>(root_idx)] : g.x_pos[static_cast<size_t>(root_idx)];
    Mat<DiffPoly> u = exp_nilpotent<DiffPoly>(xmat, x);
    Mat<DiffPoly> u_inv = exp_nilpotent<DiffPoly>(xmat, -x);
    Mat<DiffPoly> out = u * a * u_inv;
    DiffPoly dx = x.total_derivative();
    if (!dx.is_zero()) out = out + embed_matrix<DiffPoly>(xmat) * dx;
    return out;
}

std::vector<int> assoc_exponent_table(GroupType t, int rank) {
    std::vector<int> b(static_cast<size_t>(rank), 0);
    switch (t) {
        case GroupType::A:
            std::fill(b.begin(), b.end(), 1);
            break;
        case GroupType::C:
            std::fill(b.begin(), b.end(), -1);
            break;
        case GroupType::B:
            std::fill(b.begin(), b.end(), -1);
            b.back() = -2;
            break;
        case GroupType::G2:
            std::fill(b.begin(), b.end(), 1);
            break;
    }
    return b;
}

Operator<DiffFrac> NormalFormData::lg_operator_s() const {
    std::vector<DiffFrac> c;
    for (auto& lg : lg_coeffs) c.push_back(DiffFrac(lg));
    c.push_back(DiffFrac(DiffPoly(1)));
    return Operator<DiffFrac>(std::move(c));
}

std::map<Var, DiffPoly> NormalFormData::s_substitution() const {
    std::map<Var, DiffPoly> sigma;
    for (int i = 0; i < rank(); ++i) sigma[s_vars[static_cast<size_t>(i)]] = s_polys[static_cast<size_t>(i)];
    return sigma;
}

Operator<DiffFrac> NormalFormData::lg_operator_v() const {
    auto sigma = s_substitution();
    std::vector<DiffFrac> c;
    for (auto& lg : lg_coeffs) c.push_back(DiffFrac(lg.substitute_diff(sigma)));
    c.push_back(DiffFrac(DiffPoly(1)));
    return Operator<DiffFrac>(std::move(c));
}

namespace {

// Split a coefficient into its linear part over the listed unknowns (bare
// order-zero jets with constant coefficients) and the known remainder.
void split_linear_unknowns(const DiffPoly& p, const std::map<Var, int>& unknown_pos,
                           std::vector<Constant>& linear, DiffPoly& rest) {
    for (auto& [mono, coeff] : p.terms()) {
        bool has_unknown = false;
        for (auto& jp : mono.factors())
            if (unknown_pos.count(jp.var)) has_unknown = true;
        if (!has_unknown) {
            rest += DiffPoly(coeff) * [&] {
                DiffPoly m{RatFun(1)};
                for (auto& jp : mono.factors()) m *= DiffPoly::jet(jp.var, jp.order, jp.exp);
                return m;
            }();
            continue;
        }
        if (mono.factors().size() != 1 || mono.factors()[0].exp != 1 || mono.factors()[0].order != 0 ||
            !coeff.is_constant())
            throw DerivationFailedError("unknown correction enters nonlinearly at its height");
        linear[static_cast<size_t>(unknown_pos.at(mono.factors()[0].var))] += coeff.constant_value();
    }
}

} // namespace

NormalFormPtr derive_normal_form(GroupPtr gp) {
    static std::map<const GroupData*, NormalFormPtr> cache;
    static std::mutex mu;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(gp.get());
        if (it != cache.end()) return it->second;
    }

    const GroupData& g = *gp;
    int l = g.rank, m = g.num_roots(), n = g.dim;
    auto nf = std::make_shared<NormalFormData>();
    nf->group = gp;
    for (int i = 1; i <= l; ++i) {
        nf->v_vars.push_back(VarPool::intern("v" + std::to_string(i)));
        nf->s_vars.push_back(VarPool::intern("s" + std::to_string(i)));
    }
    nf->comp_roots = complementary_root_indices(g);
    std::sort(nf->comp_roots.begin(), nf->comp_roots.end(), [&](int a, int b) {
        return root_height(g.pos_roots[static_cast<size_t>(a)]) < root_height(g.pos_roots[static_cast<size_t>(b)]);
    });

    // c_i fixed by requiring coefficient +1 on X_{alpha_pi(i)} after the
    // wbar conjugation.
    Mat<Constant> wbar = g.weyl_longest, wbar_inv = g.weyl_longest_inv;
    std::vector<Constant> eps(static_cast<size_t>(l));
    for (int i = 0; i < l; ++i) {
        Mat<Constant> conj = wbar * g.x_neg[static_cast<size_t>(i)] * wbar_inv;
        auto coeffs = lie_decompose<Constant>(g, conj);
        int target = g.wbar_neg_simple_image[static_cast<size_t>(i)];
        Constant e = coeffs.pos[static_cast<size_t>(target)];
        for (int j = 0; j < g.num_roots(); ++j)
            if (j != target && !coeffs.pos[static_cast<size_t>(j)].is_zero())
                throw DerivationFailedError("wbar conjugation of a simple negative is not a simple positive");
        if (e.is_zero()) throw DerivationFailedError("vanishing wbar twist constant");
        eps[static_cast<size_t>(i)] = e;
        nf->c_consts.push_back(e.inverse());
    }

    // g_i from the Cartan condition
    //   sum_i g_i Ad(wbar)(H_i) = sum_j lambda_j v_j H_j^vee
    // in the torus-basis coordinates.
    {
        Mat<Constant> t(l, l); // columns: Ad(wbar)(H_i)
        Mat<Constant> s(l, l); // columns: coroot_j
        for (int i = 0; i < l; ++i) {
            Mat<Constant> conj = wbar * g.cartan[static_cast<size_t>(i)] * wbar_inv;
            auto coeffs = lie_decompose<Constant>(g, conj);
            auto co = lie_decompose<Constant>(g, g.coroot[static_cast<size_t>(i)]);
            for (int k = 0; k < l; ++k) {
                t(k, i) = coeffs.cartan[static_cast<size_t>(k)];
                s(k, i) = co.cartan[static_cast<size_t>(k)];
            }
        }
        Mat<Constant> m = field_inverse(t, Constant(1)) * s;
        for (int i = 0; i < l; ++i) {
            DiffPoly gi;
            for (int j = 0; j < l; ++j) {
                Constant coeff = m(i, j) * Constant(g.pair_sign[static_cast<size_t>(j)]);
                if (!coeff.is_zero())
                    gi += DiffPoly(coeff) * DiffPoly::variable(nf->v_vars[static_cast<size_t>(j)]);
            }
            nf->g_polys.push_back(gi);
        }
    }

    // Height-graded solve for the unipotent corrections f_j.
    std::vector<Var> f_vars(static_cast<size_t>(m), -1);
    for (int k = l; k < m; ++k) f_vars[static_cast<size_t>(k)] = VarPool::intern("F" + std::to_string(k + 1));

    auto build_gauge = [&](const std::vector<DiffPoly>& params) {
        // A_Liou
        Mat<DiffPoly> acc(n, n);
        for (int i = 0; i < l; ++i)
            acc = acc + embed_matrix<DiffPoly>(g.cartan[static_cast<size_t>(i)]) * nf->g_polys[static_cast<size_t>(i)];
        for (int i = 0; i < l; ++i)
            acc = acc + embed_matrix<DiffPoly>(g.x_neg[static_cast<size_t>(i)]) * DiffPoly(nf->c_consts[static_cast<size_t>(i)]);
        // wbar conjugation (constant, no derivative part)
        Mat<DiffPoly> w = embed_matrix<DiffPoly>(wbar), winv = embed_matrix<DiffPoly>(wbar_inv);
        acc = w * acc * winv;
        // u(v, f) applied right-to-left
        for (int k = m - 1; k >= 0; --k) acc = gauge_by_root_element(g, true, k, params[static_cast<size_t>(k)], acc);
        return acc;
    };

    std::vector<DiffPoly> params(static_cast<size_t>(m));
    for (int k = 0; k < l; ++k) params[static_cast<size_t>(k)] = DiffPoly::variable(nf->v_vars[static_cast<size_t>(k)]);
    for (int k = l; k < m; ++k) params[static_cast<size_t>(k)] = DiffPoly::variable(f_vars[static_cast<size_t>(k)]);

    auto levels = level_indices(g);
    std::set<int> comp_set(nf->comp_roots.begin(), nf->comp_roots.end());
    for (size_t h = 1; h < levels.size(); ++h) {
        Mat<DiffPoly> current = build_gauge(params);
        auto coeffs = lie_decompose<DiffPoly>(g, current);
        // unknown corrections attached to roots at height h+1
        std::vector<int> unknown_roots;
        if (h + 1 < levels.size())
            for (int idx : levels[h + 1])
                if (idx >= l) unknown_roots.push_back(idx);
        std::map<Var, int> unknown_pos;
        for (size_t u = 0; u < unknown_roots.size(); ++u)
            unknown_pos[f_vars[static_cast<size_t>(unknown_roots[u])]] = static_cast<int>(u);
        std::vector<int> eq_roots;
        for (int idx : levels[h])
            if (!comp_set.count(idx)) eq_roots.push_back(idx);
        if (eq_roots.size() != unknown_roots.size())
            throw DerivationFailedError("graded layer " + std::to_string(h) + " is not square");
        if (eq_roots.empty()) continue;
        Mat<Constant> sys(static_cast<int>(eq_roots.size()), static_cast<int>(unknown_roots.size()));
        std::vector<DiffPoly> rhs(eq_roots.size());
        for (size_t e = 0; e < eq_roots.size(); ++e) {
            std::vector<Constant> linear(unknown_roots.size(), Constant(0));
            DiffPoly rest;
            split_linear_unknowns(coeffs.neg[static_cast<size_t>(eq_roots[e])], unknown_pos, linear, rest);
            for (size_t u = 0; u < unknown_roots.size(); ++u) sys(static_cast<int>(e), static_cast<int>(u)) = linear[u];
            rhs[e] = rest;
        }
        Mat<Constant> probe = sys;
        if (row_echelon(probe) != static_cast<int>(unknown_roots.size()))
            throw DerivationFailedError("graded layer " + std::to_string(h) + " is singular");
        Mat<Constant> inv = field_inverse(sys, Constant(1));
        std::map<Var, DiffPoly> assignment;
        for (size_t u = 0; u < unknown_roots.size(); ++u) {
            DiffPoly val;
            for (size_t e = 0; e < eq_roots.size(); ++e) {
                Constant c = inv(static_cast<int>(u), static_cast<int>(e));
                if (!c.is_zero()) val -= DiffPoly(c) * rhs[e];
            }
            assignment[f_vars[static_cast<size_t>(unknown_roots[u])]] = val;
        }
        for (auto& p : params) p = p.substitute_diff(assignment);
    }

    for (int k = l; k < m; ++k) nf->f_polys.push_back(params[static_cast<size_t>(k)]);

    // Final gauge and extraction of the s_i plus the full shape verification.
    {
        Mat<DiffPoly> final_gauge = build_gauge(params);
        auto coeffs = lie_decompose<DiffPoly>(g, final_gauge);
        for (int i = 0; i < l; ++i)
            if (!coeffs.cartan[static_cast<size_t>(i)].is_zero())
                throw DerivationFailedError("Cartan part of the normal form did not vanish");
        for (int j = 0; j < m; ++j) {
            DiffPoly want = DiffPoly(Constant(j < l ? 1 : 0));
            if (coeffs.pos[static_cast<size_t>(j)] != want)
                throw DerivationFailedError("positive part of the normal form is not A_0^+");
        }
        for (int i = 0; i < l; ++i)
            nf->s_polys.push_back(coeffs.neg[static_cast<size_t>(nf->comp_roots[static_cast<size_t>(i)])]);
        for (int j = 0; j < m; ++j)
            if (!comp_set.count(j) && !coeffs.neg[static_cast<size_t>(j)].is_zero())
                throw DerivationFailedError("stray negative component outside the complementary roots");
        nf->a_matrix_v = final_gauge;
    }

    // Abstract normal-form matrix over the s-jets.
    {
        Mat<DiffPoly> a(n, n);
        for (int i = 0; i < l; ++i) a = a + embed_matrix<DiffPoly>(g.x_pos[static_cast<size_t>(i)]);
        for (int i = 0; i < l; ++i)
            a = a + embed_matrix<DiffPoly>(g.x_neg[static_cast<size_t>(nf->comp_roots[static_cast<size_t>(i)])]) *
                        DiffPoly::variable(nf->s_vars[static_cast<size_t>(i)]);
        nf->a_matrix_s = a;
    }

    // Companion transform: rows r_1 = e_c, r_{k+1} = r_k A + r_k'.
    {
        int cyc = g.type == GroupType::G2 ? 1 : 0;
        Mat<DiffPoly> b(n, n);
        std::vector<DiffPoly> row(static_cast<size_t>(n));
        row[static_cast<size_t>(cyc)] = DiffPoly(1);
        auto step = [&](const std::vector<DiffPoly>& r) {
            std::vector<DiffPoly> nr(static_cast<size_t>(n));
            for (int j = 0; j < n; ++j) {
                DiffPoly acc = r[static_cast<size_t>(j)].total_derivative();
                for (int k = 0; k < n; ++k) acc += r[static_cast<size_t>(k)] * nf->a_matrix_s(k, j);
                nr[static_cast<size_t>(j)] = acc;
            }
            return nr;
        };
        for (int k = 0; k < n; ++k) {
            for (int j = 0; j < n; ++j) b(k, j) = row[static_cast<size_t>(j)];
            if (k + 1 < n) row = step(row);
        }
        nf->b_companion = b;
        // L_G from r_n A + r_n' = sum lambda_k r_k
        std::vector<DiffPoly> top = step(row);
        Mat<DiffFrac> sys(n, n);
        std::vector<DiffFrac> rhs_f(static_cast<size_t>(n));
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) sys(j, k) = DiffFrac(b(k, j));
            rhs_f[static_cast<size_t>(j)] = DiffFrac(top[static_cast<size_t>(j)]);
        }
        std::vector<DiffFrac> lambda;
        if (!solve_linear(sys, rhs_f, lambda))
            throw CyclicVectorFailureError("companion rows are dependent");
        for (int k = 0; k < n; ++k) {
            const DiffFrac& lf = lambda[static_cast<size_t>(k)];
            if (!lf.den().is_ratfun())
                throw CyclicVectorFailureError("nonpolynomial operator coefficient");
            nf->lg_coeffs.push_back(-(lf.num() * lf.den().ratfun_value().inverse()));
        }
        // verify B' + B A = companion(L) B exactly
        Mat<DiffPoly> bprime(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) bprime(i, j) = b(i, j).total_derivative();
        Mat<DiffPoly> comp(n, n);
        for (int i = 0; i + 1 < n; ++i) comp(i, i + 1) = DiffPoly(1);
        for (int k = 0; k < n; ++k) comp(n - 1, k) = -nf->lg_coeffs[static_cast<size_t>(k)];
        if (!(bprime + b * nf->a_matrix_s - comp * b).is_zero())
            throw CyclicVectorFailureError("companion transform identity failed");
    }

    // First-order factorization.
    {
        if (g.type == GroupType::G2) {
            Var v1 = nf->v_vars[0], v2 = nf->v_vars[1];
            auto V1 = DiffPoly::variable(v1), V2 = DiffPoly::variable(v2);
            nf->factor_as = {V1, -V1 + V2, DiffPoly(2) * V1 - V2, DiffPoly(0), -(DiffPoly(2) * V1) + V2, V1 - V2, -V1};
        } else {
            // diagonal of n(wbar).A_Liou(v); shape check: bidiagonal with
            // constant superdiagonal
            Mat<DiffPoly> acc(n, n);
            for (int i = 0; i < l; ++i)
                acc = acc + embed_matrix<DiffPoly>(g.cartan[static_cast<size_t>(i)]) * nf->g_polys[static_cast<size_t>(i)];
            for (int i = 0; i < l; ++i)
                acc = acc + embed_matrix<DiffPoly>(g.x_neg[static_cast<size_t>(i)]) *
                                DiffPoly(nf->c_consts[static_cast<size_t>(i)]);
            acc = embed_matrix<DiffPoly>(wbar) * acc * embed_matrix<DiffPoly>(wbar_inv);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (j != i && j != i + 1 && !acc(i, j).is_zero())
                        throw DerivationFailedError("gauged Liouvillian matrix is not bidiagonal");
            for (int i = 0; i + 1 < n; ++i)
                if (!acc(i, i + 1).is_ratfun())
                    throw DerivationFailedError("nonconstant superdiagonal in the gauged Liouvillian matrix");
            for (int i = 0; i < n; ++i) nf->factor_as.push_back(acc(i, i));
        }
        // product identity: (D - a_n)...(D - a_1) = L_G(s(v), D)
        Operator<DiffFrac> prod{DiffFrac(DiffPoly(1))};
        for (int k = 0; k < n; ++k) {
            Operator<DiffFrac> lin(std::vector<DiffFrac>{DiffFrac(-nf->factor_as[static_cast<size_t>(k)]),
                                                         DiffFrac(DiffPoly(1))});
            prod = lin * prod;
        }
        if (prod != nf->lg_operator_v())
            throw DerivationFailedError("first-order factorization does not multiply back to the operator");
    }

    nf->assoc_exponents = assoc_exponent_table(g.type, g.rank);

    NormalFormPtr result = nf;
    {
        std::lock_guard<std::mutex> lock(mu);
        cache[gp.get()] = result;
    }
    return result;
}

} // namespace parnf
