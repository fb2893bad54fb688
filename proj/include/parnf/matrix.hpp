#ifndef PARNF_MATRIX_HPP
#define PARNF_MATRIX_HPP

#include "parnf/errors.hpp"

#include <functional>
#include <sstream>
#include <vector>

namespace parnf {

/// Dense matrix over a commutative ring R.  R needs default construction to
/// zero, +, -, *, is_zero(), ==; field-only routines additionally use
/// inverse().
template <class R>
class Mat {
public:
    Mat() : rows_(0), cols_(0) {}
    Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, R()) {}

    static Mat identity(int n, const R& one) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = one;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    R& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const R& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    Mat operator+(const Mat& o) const {
        Mat r(rows_, cols_);
        for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
        return r;
    }
    Mat operator-(const Mat& o) const {
        Mat r(rows_, cols_);
        for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
        return r;
    }
    Mat operator*(const Mat& o) const {
        Mat r(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const R& x = (*this)(i, k);
                if (x.is_zero()) continue;
                for (int j = 0; j < o.cols_; ++j) {
                    const R& y = o(k, j);
                    if (y.is_zero()) continue;
                    r(i, j) = r(i, j) + x * y;
                }
            }
        return r;
    }
    Mat operator*(const R& c) const {
        Mat r(rows_, cols_);
        for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] * c;
        return r;
    }
    Mat operator-() const {
        Mat r(rows_, cols_);
        for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = R() - a_[i];
        return r;
    }
    bool operator==(const Mat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }
    bool operator!=(const Mat& o) const { return !(*this == o); }

    bool is_zero() const {
        for (auto& x : a_)
            if (!x.is_zero()) return false;
        return true;
    }

    Mat transpose() const {
        Mat r(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    /// Entry-wise map into another ring.
    template <class S>
    Mat<S> map(const std::function<S(const R&)>& f) const {
        Mat<S> r(rows_, cols_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r(i, j) = f((*this)(i, j));
        return r;
    }

    std::string str() const {
        std::ostringstream os;
        os << "[";
        for (int i = 0; i < rows_; ++i) {
            os << "[";
            for (int j = 0; j < cols_; ++j) {
                os << (*this)(i, j).str();
                if (j + 1 < cols_) os << ", ";
            }
            os << "]";
            if (i + 1 < rows_) os << ", ";
        }
        os << "]";
        return os.str();
    }

private:
    int rows_, cols_;
    std::vector<R> a_;
};

/// Gaussian elimination over a field.  Returns rank; `m` ends in row echelon
/// form; when `pivots` given, stores the pivot column of each pivot row.
template <class F>
int row_echelon(Mat<F>& m, std::vector<int>* pivots = nullptr) {
    int rank = 0;
    for (int col = 0; col < m.cols() && rank < m.rows(); ++col) {
        int p = -1;
        for (int i = rank; i < m.rows(); ++i)
            if (!m(i, col).is_zero()) { p = i; break; }
        if (p < 0) continue;
        if (p != rank)
            for (int j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(rank, j));
        F inv = m(rank, col).inverse();
        for (int j = col; j < m.cols(); ++j) m(rank, j) = m(rank, j) * inv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == rank || m(i, col).is_zero()) continue;
            F f = m(i, col);
            for (int j = col; j < m.cols(); ++j) m(i, j) = m(i, j) - f * m(rank, j);
        }
        if (pivots) pivots->push_back(col);
        ++rank;
    }
    return rank;
}

/// Solve A x = b over a field; returns false when inconsistent.  Free
/// variables are set to zero.
template <class F>
bool solve_linear(const Mat<F>& A, const std::vector<F>& b, std::vector<F>& x) {
    Mat<F> aug(A.rows(), A.cols() + 1);
    for (int i = 0; i < A.rows(); ++i) {
        for (int j = 0; j < A.cols(); ++j) aug(i, j) = A(i, j);
        aug(i, A.cols()) = b[static_cast<size_t>(i)];
    }
    std::vector<int> pivots;
    int rank = row_echelon(aug, &pivots);
    for (int r = 0; r < rank; ++r)
        if (pivots[static_cast<size_t>(r)] == A.cols()) return false; // pivot in RHS
    x.assign(static_cast<size_t>(A.cols()), F());
    for (int r = 0; r < rank; ++r) x[static_cast<size_t>(pivots[static_cast<size_t>(r)])] = aug(r, A.cols());
    return true;
}

/// Kernel basis of A over a field.
template <class F>
std::vector<std::vector<F>> kernel_basis(Mat<F> A, const F& one) {
    std::vector<int> pivots;
    int rank = row_echelon(A, &pivots);
    std::vector<bool> is_pivot(static_cast<size_t>(A.cols()), false);
    for (int p : pivots) is_pivot[static_cast<size_t>(p)] = true;
    std::vector<std::vector<F>> basis;
    for (int j = 0; j < A.cols(); ++j) {
        if (is_pivot[static_cast<size_t>(j)]) continue;
        std::vector<F> v(static_cast<size_t>(A.cols()), F());
        v[static_cast<size_t>(j)] = one;
        for (int r = 0; r < rank; ++r) v[static_cast<size_t>(pivots[static_cast<size_t>(r)])] = F() - A(r, j);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Inverse over a field; throws SingularGaugeError when singular.
template <class F>
Mat<F> field_inverse(const Mat<F>& m, const F& one) {
    int n = m.rows();
    Mat<F> aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = one;
    }
    int rank = row_echelon(aug);
    if (rank < n) throw SingularGaugeError("matrix is singular");
    Mat<F> inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

template <class F>
F determinant(Mat<F> m) {
    int n = m.rows();
    bool neg = false;
    F acc;
    bool first = true;
    for (int col = 0; col < n; ++col) {
        int p = -1;
        for (int i = col; i < n; ++i)
            if (!m(i, col).is_zero()) { p = i; break; }
        if (p < 0) return F(); // zero
        if (p != col) {
            for (int j = 0; j < n; ++j) std::swap(m(p, j), m(col, j));
            neg = !neg;
        }
        if (first) { acc = m(col, col); first = false; }
        else acc = acc * m(col, col);
        F inv = m(col, col).inverse();
        for (int i = col + 1; i < n; ++i) {
            if (m(i, col).is_zero()) continue;
            F f = m(i, col) * inv;
            for (int j = col; j < n; ++j) m(i, j) = m(i, j) - f * m(col, j);
        }
    }
    if (neg) acc = F() - acc;
    return acc;
}

} // namespace parnf

#endif
