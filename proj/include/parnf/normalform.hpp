#ifndef PARNF_NORMALFORM_HPP
#define PARNF_NORMALFORM_HPP

#include "parnf/diffpoly.hpp"
#include "parnf/lie.hpp"
#include "parnf/ore.hpp"

#include <memory>

namespace parnf {

/// Complete normal-form data for one group: complementary roots, the
/// Liouvillian matrix data (c_i, g_i), the unipotent corrections f_j, the
/// coefficients s_i, the normal-form matrix in both the v-jet and abstract
/// s-jet worlds, the companion transform B_G with the scalar operator L_G,
/// the first-order factorization and the associated-equation exponents.
struct NormalFormData {
    GroupPtr group;

    std::vector<Var> v_vars; // v1..vl
    std::vector<Var> s_vars; // s1..sl as abstract differential indeterminates

    std::vector<int> comp_roots;     // indices into pos_roots of gamma_1..gamma_l
    std::vector<Constant> c_consts;  // c_1..c_l
    std::vector<DiffPoly> g_polys;   // g_i(v), degree-one homogeneous over Z
    std::vector<DiffPoly> f_polys;   // f_{l+1}..f_m, aligned with beta_{l+1}..beta_m
    std::vector<DiffPoly> s_polys;   // s_1..s_l in C{v}

    Mat<DiffPoly> a_matrix_v; // A_G(s(v)) over C{v}
    Mat<DiffPoly> a_matrix_s; // A_G over the abstract s-jets

    Mat<DiffPoly> b_companion;        // B_G over C{s}
    std::vector<DiffPoly> lg_coeffs;  // L_G = D^n + sum lg[k] D^k (lg has n entries, monic implied)
    std::vector<DiffPoly> factor_as;  // a_1..a_n with L_G = (D - a_n)...(D - a_1) over C<v>
    std::vector<int> assoc_exponents; // b_1..b_l in {1, -1, -2}

    int dim() const { return group->dim; }
    int rank() const { return group->rank; }

    /// L_G as an operator over fractions of s-jet polynomials.
    Operator<DiffFrac> lg_operator_s() const;
    /// L_G with the s-jets specialized to the s_i(v) (coefficients in C{v}).
    Operator<DiffFrac> lg_operator_v() const;
    /// sigma: s-jet variables -> s_i(v).
    std::map<Var, DiffPoly> s_substitution() const;
};

using NormalFormPtr = std::shared_ptr<const NormalFormData>;

/// Indices (into pos_roots) of the complementary roots; their heights are
/// the exponents of the Lie algebra.
std::vector<int> complementary_root_indices(const GroupData& g);

/// Height-graded derivation of the full normal-form data (cached per group).
NormalFormPtr derive_normal_form(GroupPtr g);

/// Gauge of a matrix over DiffPoly by exp(x X_beta): U A U^{-1} + x' X.
Mat<DiffPoly> gauge_by_root_element(const GroupData& g, bool negative, int root_idx, const DiffPoly& x,
                                    const Mat<DiffPoly>& a);

/// Prop C.1 exponent constants per type.
std::vector<int> assoc_exponent_table(GroupType t, int rank);

} // namespace parnf

#endif
