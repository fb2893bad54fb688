#include "parnf/lie.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <numeric>
#include <set>

namespace parnf {

GroupType parse_group_type(const std::string& s) {
    if (s == "A" || s == "a") return GroupType::A;
    if (s == "B" || s == "b") return GroupType::B;
    if (s == "C" || s == "c") return GroupType::C;
    if (s == "G2" || s == "g2") return GroupType::G2;
    throw UnsupportedTypeError("unsupported group type '" + s + "' (supported: A, B, C, G2)");
}

std::string group_type_name(GroupType t) {
    switch (t) {
        case GroupType::A: return "A";
        case GroupType::B: return "B";
        case GroupType::C: return "C";
        case GroupType::G2: return "G2";
    }
    return "?";
}

int root_height(const Root& r) { return std::accumulate(r.begin(), r.end(), 0); }

int GroupData::root_index(const Root& r) const {
    for (int i = 0; i < num_roots(); ++i)
        if (pos_roots[static_cast<size_t>(i)] == r) return i;
    return -1;
}

namespace {

// A[i][j] = <alpha_j, alpha_i^vee>
std::vector<std::vector<int>> cartan_matrix(GroupType t, int l) {
    std::vector<std::vector<int>> a(static_cast<size_t>(l), std::vector<int>(static_cast<size_t>(l), 0));
    for (int i = 0; i < l; ++i) a[static_cast<size_t>(i)][static_cast<size_t>(i)] = 2;
    for (int i = 0; i + 1 < l; ++i) {
        a[static_cast<size_t>(i)][static_cast<size_t>(i + 1)] = -1;
        a[static_cast<size_t>(i + 1)][static_cast<size_t>(i)] = -1;
    }
    if (t == GroupType::B) {
        a[static_cast<size_t>(l - 1)][static_cast<size_t>(l - 2)] = -2; // alpha_l short
    } else if (t == GroupType::C) {
        a[static_cast<size_t>(l - 2)][static_cast<size_t>(l - 1)] = -2; // alpha_l long
    } else if (t == GroupType::G2) {
        a[0][1] = -3; // alpha_1 short, alpha_2 long
        a[1][0] = -1;
    }
    return a;
}

int pairing(const std::vector<std::vector<int>>& a, const Root& r, int i) {
    int s = 0;
    for (size_t j = 0; j < r.size(); ++j) s += r[j] * a[static_cast<size_t>(i)][j];
    return s;
}

std::vector<Root> generate_positive_roots(const std::vector<std::vector<int>>& a, int l) {
    std::set<Root> roots;
    for (int i = 0; i < l; ++i) {
        Root r(static_cast<size_t>(l), 0);
        r[static_cast<size_t>(i)] = 1;
        roots.insert(r);
    }
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<Root> cur(roots.begin(), roots.end());
        for (auto& r : cur) {
            for (int i = 0; i < l; ++i) {
                int p = 0;
                Root down = r;
                for (;;) {
                    down[static_cast<size_t>(i)] -= 1;
                    if (root_height(down) > 0 && roots.count(down)) ++p;
                    else break;
                }
                if (p - pairing(a, r, i) > 0) {
                    Root up = r;
                    up[static_cast<size_t>(i)] += 1;
                    if (roots.insert(up).second) changed = true;
                }
            }
        }
    }
    auto simple_index = [](const Root& r) {
        return std::distance(r.begin(), std::find(r.begin(), r.end(), 1));
    };
    std::vector<Root> out(roots.begin(), roots.end());
    std::sort(out.begin(), out.end(), [&](const Root& x, const Root& y) {
        bool sx = root_height(x) == 1, sy = root_height(y) == 1;
        if (sx != sy) return sx;
        if (sx && sy) return simple_index(x) < simple_index(y);
        int hx = root_height(x), hy = root_height(y);
        if (hx != hy) return hx < hy;
        return x > y; // descending lexicographic coefficient vector
    });
    return out;
}

Root weyl_reflect(const std::vector<std::vector<int>>& a, const Root& r, int i) {
    Root out = r;
    out[static_cast<size_t>(i)] -= pairing(a, r, i);
    return out;
}

struct RepBasis {
    int n = 0;
    std::vector<Mat<Constant>> xp, xn; // simple root vectors only
};

RepBasis simple_representation(GroupType t, int l) {
    RepBasis rep;
    if (t == GroupType::A) {
        rep.n = l + 1;
        for (int i = 0; i < l; ++i) {
            Mat<Constant> xp(rep.n, rep.n), xn(rep.n, rep.n);
            xp(i, i + 1) = Constant(1);
            xn(i + 1, i) = Constant(1);
            rep.xp.push_back(xp);
            rep.xn.push_back(xn);
        }
        return rep;
    }
    if (t == GroupType::C) {
        // basis order (1..l, -l..-1)
        rep.n = 2 * l;
        auto pos = [&](int idx) { return idx > 0 ? idx - 1 : 2 * l + idx; };
        for (int i = 1; i < l; ++i) {
            Mat<Constant> xp(rep.n, rep.n), xn(rep.n, rep.n);
            xp(pos(i), pos(i + 1)) = Constant(1);
            xp(pos(-i - 1), pos(-i)) = Constant(-1);
            xn(pos(i + 1), pos(i)) = Constant(-1);
            xn(pos(-i), pos(-i - 1)) = Constant(1);
            rep.xp.push_back(xp);
            rep.xn.push_back(xn);
        }
        Mat<Constant> xpl(rep.n, rep.n), xnl(rep.n, rep.n);
        xpl(pos(l), pos(-l)) = Constant(1);
        xnl(pos(-l), pos(l)) = Constant(1);
        rep.xp.push_back(xpl);
        rep.xn.push_back(xnl);
        return rep;
    }
    if (t == GroupType::B) {
        // basis order (1..l, 0, -l..-1)
        rep.n = 2 * l + 1;
        auto pos = [&](int idx) { return idx > 0 ? idx - 1 : (idx == 0 ? l : 2 * l + 1 + idx); };
        for (int i = 1; i < l; ++i) {
            Mat<Constant> xp(rep.n, rep.n), xn(rep.n, rep.n);
            xp(pos(i), pos(i + 1)) = Constant(1);
            xp(pos(-i - 1), pos(-i)) = Constant(-1);
            xn(pos(i + 1), pos(i)) = Constant(-1);
            xn(pos(-i), pos(-i - 1)) = Constant(1);
            rep.xp.push_back(xp);
            rep.xn.push_back(xn);
        }
        Mat<Constant> xpl(rep.n, rep.n), xnl(rep.n, rep.n);
        xpl(pos(l), pos(0)) = Constant(2);
        xpl(pos(0), pos(-l)) = Constant(1);
        xnl(pos(0), pos(l)) = Constant(-1);
        xnl(pos(-l), pos(0)) = Constant(-2);
        rep.xp.push_back(xpl);
        rep.xn.push_back(xnl);
        return rep;
    }
    // G2 in its 7-dimensional representation; the basis carries the weights
    // (0, 2a1+a2, -a1, -(a1+a2), -(2a1+a2), a1, a1+a2) in this order, and the
    // sqrt2 normalization of the middle sl2-string matches the companion
    // matrix data for the group.
    rep.n = 7;
    Constant s2 = Constant::sqrt2();
    Mat<Constant> xp1(7, 7), xn1(7, 7), xp2(7, 7), xn2(7, 7);
    xp1(5, 0) = -s2;
    xp1(0, 2) = s2;
    xp1(1, 6) = Constant(1);
    xp1(3, 4) = Constant(-1);
    xn1(0, 5) = -s2;
    xn1(2, 0) = s2;
    xn1(6, 1) = Constant(1);
    xn1(4, 3) = Constant(-1);
    xp2(6, 5) = Constant(-1);
    xp2(2, 3) = Constant(1);
    xn2(5, 6) = Constant(-1);
    xn2(3, 2) = Constant(1);
    rep.xp = {xp1, xp2};
    rep.xn = {xn1, xn2};
    return rep;
}

Mat<Constant> bracket(const Mat<Constant>& a, const Mat<Constant>& b) { return a * b - b * a; }

} // namespace

GroupPtr build_group(GroupType type, int rank, int rank_cap) {
    static std::map<std::pair<GroupType, int>, GroupPtr> cache;
    static std::mutex mu;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find({type, rank});
        if (it != cache.end()) return it->second;
    }

    if (rank > rank_cap)
        throw UnsupportedTypeError("rank " + std::to_string(rank) + " exceeds the desk-scale cap " +
                                   std::to_string(rank_cap));
    if (type == GroupType::A && rank < 1) throw UnsupportedTypeError("A_l needs l >= 1");
    if ((type == GroupType::B || type == GroupType::C) && rank < 2)
        throw UnsupportedTypeError(group_type_name(type) + "_l needs l >= 2");
    if (type == GroupType::G2 && rank != 2) throw UnsupportedTypeError("G2 has rank 2");

    auto g = std::make_shared<GroupData>();
    g->type = type;
    g->rank = rank;
    auto a = cartan_matrix(type, rank);
    g->pos_roots = generate_positive_roots(a, rank);
    int l = rank, m = g->num_roots();

    RepBasis rep = simple_representation(type, rank);
    g->dim = rep.n;

    // Root vectors: X_gamma = [X_alpha, X_{gamma-alpha}]/(p+1) with alpha the
    // first simple root such that gamma - alpha is a positive root, and
    // X_{-gamma} = [X_{-(gamma-alpha)}, X_{-alpha}]/(p+1); p is the length of
    // the alpha-string below gamma - alpha.
    g->x_pos.resize(static_cast<size_t>(m));
    g->x_neg.resize(static_cast<size_t>(m));
    for (int i = 0; i < l; ++i) {
        g->x_pos[static_cast<size_t>(i)] = rep.xp[static_cast<size_t>(i)];
        g->x_neg[static_cast<size_t>(i)] = rep.xn[static_cast<size_t>(i)];
    }
    for (int k = l; k < m; ++k) {
        const Root& gamma = g->pos_roots[static_cast<size_t>(k)];
        int alpha = -1, rest = -1;
        for (int i = 0; i < l && alpha < 0; ++i) {
            Root diff = gamma;
            diff[static_cast<size_t>(i)] -= 1;
            if (std::any_of(diff.begin(), diff.end(), [](int c) { return c < 0; })) continue;
            int idx = g->root_index(diff);
            if (idx >= 0) { alpha = i; rest = idx; }
        }
        if (alpha < 0) throw Error(ErrorCode::Internal, "no simple summand found for a positive root");
        int p = 0;
        Root down = g->pos_roots[static_cast<size_t>(rest)];
        for (;;) {
            down[static_cast<size_t>(alpha)] -= 1;
            if (root_height(down) > 0 && g->root_index(down) >= 0) ++p;
            else break;
        }
        Constant scale(BigRat(1, p + 1));
        g->x_pos[static_cast<size_t>(k)] =
            bracket(g->x_pos[static_cast<size_t>(alpha)], g->x_pos[static_cast<size_t>(rest)]) * scale;
        g->x_neg[static_cast<size_t>(k)] =
            bracket(g->x_neg[static_cast<size_t>(rest)], g->x_neg[static_cast<size_t>(alpha)]) * scale;
        if (g->x_pos[static_cast<size_t>(k)].is_zero() || g->x_neg[static_cast<size_t>(k)].is_zero())
            throw Error(ErrorCode::Internal, "degenerate root vector from bracket construction");
    }
    if (type == GroupType::G2) {
        // The highest-root pair is oriented to reproduce the printed
        // companion matrix (the +2 s2 entry in B_G).
        int top = g->root_index(Root{3, 2});
        g->x_pos[static_cast<size_t>(top)] = -g->x_pos[static_cast<size_t>(top)];
        g->x_neg[static_cast<size_t>(top)] = -g->x_neg[static_cast<size_t>(top)];
    }

    // Coroots normalized to [H_i, X_{alpha_i}] = 2 X_{alpha_i}.
    for (int i = 0; i < l; ++i) {
        Mat<Constant> k = bracket(g->x_pos[static_cast<size_t>(i)], g->x_neg[static_cast<size_t>(i)]);
        Mat<Constant> kx = bracket(k, g->x_pos[static_cast<size_t>(i)]);
        int lambda = 0;
        for (int r = 0; r < g->dim && lambda == 0; ++r)
            for (int c = 0; c < g->dim && lambda == 0; ++c)
                if (!g->x_pos[static_cast<size_t>(i)](r, c).is_zero()) {
                    Constant ratio = kx(r, c) / g->x_pos[static_cast<size_t>(i)](r, c);
                    if (ratio == Constant(2)) lambda = 1;
                    else if (ratio == Constant(-2)) lambda = -1;
                    else throw Error(ErrorCode::Internal, "simple pair is not an sl2 triple");
                }
        g->pair_sign.push_back(lambda);
        Mat<Constant> h = lambda == 1 ? k : -k;
        if (!(bracket(h, g->x_pos[static_cast<size_t>(i)]) - g->x_pos[static_cast<size_t>(i)] * Constant(2)).is_zero())
            throw Error(ErrorCode::Internal, "Cartan normalization failed");
        g->coroot.push_back(h);
    }

    // Torus basis: epsilon-style generators for B and C (the printed torus
    // data and the module relation of the associated exponents use them),
    // the coroots otherwise.
    if (type == GroupType::B || type == GroupType::C) {
        int nn = g->dim;
        for (int i = 1; i <= l; ++i) {
            Mat<Constant> h(nn, nn);
            h(i - 1, i - 1) = Constant(1);
            h(nn - i, nn - i) = Constant(-1);
            g->cartan.push_back(h);
        }
    } else {
        g->cartan = g->coroot;
    }

    // Basis weights from the diagonal Cartan matrices.
    g->weight.assign(static_cast<size_t>(g->dim), std::vector<int>(static_cast<size_t>(l), 0));
    for (int i = 0; i < l; ++i)
        for (int r = 0; r < g->dim; ++r)
            for (int c = 0; c < g->dim; ++c) {
                if (r == c) {
                    BigInt v;
                    if (!g->cartan[static_cast<size_t>(i)](r, c).integer_value(v))
                        throw Error(ErrorCode::Internal, "non-integer Cartan diagonal");
                    g->weight[static_cast<size_t>(r)][static_cast<size_t>(i)] = static_cast<int>(v);
                } else if (!g->cartan[static_cast<size_t>(i)](r, c).is_zero()) {
                    throw Error(ErrorCode::Internal, "Cartan generator is not diagonal");
                }
            }

    // Weyl representatives n_{alpha_i}(eps); eps = -1 reproduces the printed
    // G2 matrices, eps = +1 the printed SL data.
    int eps = type == GroupType::G2 ? -1 : 1;
    for (int i = 0; i < l; ++i) {
        Constant e(eps);
        Constant inner = Constant(-g->pair_sign[static_cast<size_t>(i)]) / e;
        Mat<Constant> n = exp_nilpotent(g->x_pos[static_cast<size_t>(i)], e) *
                          exp_nilpotent(g->x_neg[static_cast<size_t>(i)], inner) *
                          exp_nilpotent(g->x_pos[static_cast<size_t>(i)], e);
        g->weyl_simple.push_back(n);
    }

    // Longest word: greedy smallest-index ascent; G2 uses the fixed word
    // behind (n(w2) n(w1))^3.
    if (type == GroupType::G2) {
        g->longest_word = {1, 0, 1, 0, 1, 0};
    } else {
        std::vector<int> word;
        auto apply_word = [&](Root r) {
            for (auto it = word.rbegin(); it != word.rend(); ++it) r = weyl_reflect(a, r, *it);
            return r;
        };
        for (int guard = 0; guard <= m; ++guard) {
            int pick = -1;
            for (int i = 0; i < l && pick < 0; ++i) {
                Root alpha_i(static_cast<size_t>(l), 0);
                alpha_i[static_cast<size_t>(i)] = 1;
                if (root_height(apply_word(alpha_i)) > 0) pick = i;
            }
            if (pick < 0) break;
            word.push_back(pick);
        }
        g->longest_word = word;
    }
    if (static_cast<int>(g->longest_word.size()) != m)
        throw Error(ErrorCode::Internal, "longest word has wrong length");

    g->weyl_longest = Mat<Constant>::identity(g->dim, Constant(1));
    for (int i : g->longest_word) g->weyl_longest = g->weyl_longest * g->weyl_simple[static_cast<size_t>(i)];
    g->weyl_longest_inv = field_inverse(g->weyl_longest, Constant(1));

    // wbar maps -Delta bijectively onto Delta; record the index map.
    auto wbar_apply = [&](Root r) {
        for (auto it = g->longest_word.rbegin(); it != g->longest_word.rend(); ++it)
            r = weyl_reflect(a, r, *it);
        return r;
    };
    g->wbar_neg_simple_image.assign(static_cast<size_t>(l), -1);
    for (int i = 0; i < l; ++i) {
        Root neg(static_cast<size_t>(l), 0);
        neg[static_cast<size_t>(i)] = -1;
        int idx = g->root_index(wbar_apply(neg));
        if (idx < 0 || idx >= l) throw Error(ErrorCode::Internal, "wbar does not map -Delta onto Delta");
        g->wbar_neg_simple_image[static_cast<size_t>(i)] = idx;
    }

    // Designated peel entries: the first nonzero entry of X_{beta_k}; no
    // later root or product of later roots can touch it at first order.
    for (int k = 0; k < m; ++k) {
        bool found = false;
        for (int r = 0; r < g->dim && !found; ++r)
            for (int c = 0; c < g->dim && !found; ++c)
                if (!g->x_neg[static_cast<size_t>(k)](r, c).is_zero()) {
                    g->peel_entry.push_back({r, c});
                    found = true;
                }
        if (!found) throw Error(ErrorCode::Internal, "zero root vector");
    }

    // Basis order sorted by descending weight (phi = sum of root coordinates)
    // for the big-cell elimination; n(wbar) must become antidiagonal there.
    {
        Mat<Constant> amat(l, l);
        for (int i = 0; i < l; ++i)
            for (int j = 0; j < l; ++j) amat(i, j) = Constant(a[static_cast<size_t>(i)][static_cast<size_t>(j)]);
        Mat<Constant> ainv = field_inverse(amat, Constant(1));
        std::vector<Constant> phi(static_cast<size_t>(g->dim), Constant(0));
        for (int j = 0; j < g->dim; ++j)
            for (int i = 0; i < l; ++i)
                for (int k = 0; k < l; ++k)
                    phi[static_cast<size_t>(j)] +=
                        ainv(i, k) * Constant(g->weight[static_cast<size_t>(j)][static_cast<size_t>(k)]);
        g->weight_perm.resize(static_cast<size_t>(g->dim));
        std::iota(g->weight_perm.begin(), g->weight_perm.end(), 0);
        std::sort(g->weight_perm.begin(), g->weight_perm.end(), [&](int x, int y) {
            Constant diff = phi[static_cast<size_t>(x)] - phi[static_cast<size_t>(y)];
            if (diff.is_zero()) throw Error(ErrorCode::Internal, "weight order tie");
            return diff.sign() > 0;
        });
        for (int i = 0; i < g->dim; ++i)
            for (int j = 0; j < g->dim; ++j)
                if (i + j != g->dim - 1 &&
                    !g->weyl_longest(g->weight_perm[static_cast<size_t>(i)], g->weight_perm[static_cast<size_t>(j)])
                         .is_zero())
                    throw Error(ErrorCode::Internal, "n(wbar) not antidiagonal in the sorted basis");
    }

    // Integer exponents extracting torus parameters from a diagonal: find a
    // unimodular l x l minor of the weight matrix and invert it.  B_l has
    // none (the parametrization is a double cover of the torus there); the
    // solver stays empty and only the diagonal form is available.
    {
        std::vector<int> subset(static_cast<size_t>(l));
        std::vector<int> best;
        std::function<bool(int, int)> search = [&](int start, int depth) {
            if (depth == l) {
                Mat<Constant> mm(l, l);
                for (int i = 0; i < l; ++i)
                    for (int j = 0; j < l; ++j)
                        mm(i, j) = Constant(
                            g->weight[static_cast<size_t>(subset[static_cast<size_t>(i)])][static_cast<size_t>(j)]);
                Constant det = determinant(mm);
                if (det == Constant(1) || det == Constant(-1)) {
                    best = subset;
                    return true;
                }
                return false;
            }
            for (int c = start; c < g->dim; ++c) {
                subset[static_cast<size_t>(depth)] = c;
                if (search(c + 1, depth + 1)) return true;
            }
            return false;
        };
        if (search(0, 0)) {
            Mat<Constant> mm(l, l);
            for (int i = 0; i < l; ++i)
                for (int j = 0; j < l; ++j)
                    mm(i, j) =
                        Constant(g->weight[static_cast<size_t>(best[static_cast<size_t>(i)])][static_cast<size_t>(j)]);
            Mat<Constant> inv = field_inverse(mm, Constant(1));
            g->torus_exponent_solver.assign(static_cast<size_t>(l),
                                            std::vector<BigInt>(static_cast<size_t>(g->dim), 0));
            for (int i = 0; i < l; ++i)
                for (int j = 0; j < l; ++j) {
                    BigInt v;
                    if (!inv(i, j).integer_value(v)) throw Error(ErrorCode::Internal, "non-integral torus solver");
                    g->torus_exponent_solver[static_cast<size_t>(i)]
                                            [static_cast<size_t>(best[static_cast<size_t>(j)])] = v;
                }
        }
    }

    // Multiplicative relations cutting out the maximal torus among diagonal
    // matrices: the integer kernel of the transposed weight matrix.
    {
        Mat<Constant> wt(l, g->dim);
        for (int i = 0; i < l; ++i)
            for (int j = 0; j < g->dim; ++j)
                wt(i, j) = Constant(g->weight[static_cast<size_t>(j)][static_cast<size_t>(i)]);
        auto basis = kernel_basis(wt, Constant(1));
        for (auto& vec : basis) {
            BigInt denom_lcm = 1;
            for (auto& c : vec) denom_lcm = boost::multiprecision::lcm(denom_lcm, denominator(c.rat_part()));
            std::vector<BigInt> rel;
            BigInt content = 0;
            for (auto& c : vec) {
                BigRat scaled = c.rat_part() * denom_lcm;
                rel.push_back(numerator(scaled));
                content = boost::multiprecision::gcd(content, rel.back());
            }
            if (content > 1)
                for (auto& v : rel) v /= content;
            g->torus_relations.push_back(std::move(rel));
        }
    }

    // Chevalley-basis projector.
    {
        int basis_count = l + 2 * m;
        Mat<Constant> bm(basis_count, g->dim * g->dim);
        auto put = [&](int row, const Mat<Constant>& x) {
            for (int r = 0; r < g->dim; ++r)
                for (int c = 0; c < g->dim; ++c) bm(row, r * g->dim + c) = x(r, c);
        };
        for (int i = 0; i < l; ++i) put(i, g->cartan[static_cast<size_t>(i)]);
        for (int i = 0; i < m; ++i) put(l + i, g->x_pos[static_cast<size_t>(i)]);
        for (int i = 0; i < m; ++i) put(l + m + i, g->x_neg[static_cast<size_t>(i)]);
        Mat<Constant> ech = bm;
        std::vector<int> pivots;
        if (row_echelon(ech, &pivots) != basis_count)
            throw Error(ErrorCode::Internal, "Chevalley basis not independent");
        g->lie_pivots = pivots;
        Mat<Constant> s(basis_count, basis_count);
        for (int i = 0; i < basis_count; ++i)
            for (int j = 0; j < basis_count; ++j) s(i, j) = bm(i, pivots[static_cast<size_t>(j)]);
        g->lie_dual = field_inverse(s, Constant(1)).transpose();
    }

    // Build-time structural checks: bracket closure in the Chevalley span
    // and torus normalization by the Weyl representatives.
    {
        const GroupData& gd = *g;
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                lie_decompose<Constant>(gd, bracket(gd.x_pos[static_cast<size_t>(i)], gd.x_pos[static_cast<size_t>(j)]));
                lie_decompose<Constant>(gd, bracket(gd.x_pos[static_cast<size_t>(i)], gd.x_neg[static_cast<size_t>(j)]));
                lie_decompose<Constant>(gd, bracket(gd.x_neg[static_cast<size_t>(i)], gd.x_neg[static_cast<size_t>(j)]));
            }
        for (int i = 0; i < l; ++i) {
            Mat<Constant> ninv = field_inverse(gd.weyl_simple[static_cast<size_t>(i)], Constant(1));
            for (int j = 0; j < l; ++j) {
                Mat<Constant> conj = gd.weyl_simple[static_cast<size_t>(i)] * gd.cartan[static_cast<size_t>(j)] * ninv;
                for (int r = 0; r < gd.dim; ++r)
                    for (int c = 0; c < gd.dim; ++c)
                        if (r != c && !conj(r, c).is_zero())
                            throw Error(ErrorCode::Internal, "Weyl representative does not normalize the torus");
            }
        }
    }

    GroupPtr result = g;
    {
        std::lock_guard<std::mutex> lock(mu);
        cache[{type, rank}] = result;
    }
    return result;
}

} // namespace parnf
