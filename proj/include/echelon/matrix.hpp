#pragma once

#include <functional>
#include <string>
#include <vector>

#include "echelon/frac.hpp"

namespace echelon {

template <class K>
Poly<K> zero_like(const Poly<K>& p) { return Poly<K>::zero(p.table()); }
template <class K>
Poly<K> one_like(const Poly<K>& p) {
    K one = p.is_zero() ? K{}.similar(1) : p.lead().second.similar(1);
    return Poly<K>::constant(p.table(), one);
}
template <class K>
Frac<K> zero_like(const Frac<K>& f) { return Frac<K>::of_poly(zero_like(f.num())); }
template <class K>
Frac<K> one_like(const Frac<K>& f) { return Frac<K>::of_poly(one_like(f.num())); }

// Small dense matrix; row-major.
template <class T>
class Mat {
public:
    Mat() = default;
    Mat(int rows, int cols, const T& fill) : r_(rows), c_(cols), a_(size_t(rows) * cols, fill) {}

    static Mat identity(int n, const T& exemplar) {
        Mat m(n, n, zero_like(exemplar));
        T one = one_like(exemplar);
        for (int i = 0; i < n; ++i) m.at(i, i) = one;
        return m;
    }

    int rows() const { return r_; }
    int cols() const { return c_; }
    T& at(int i, int j) { return a_[size_t(i) * c_ + j]; }
    const T& at(int i, int j) const { return a_[size_t(i) * c_ + j]; }

    std::vector<T> col(int j) const {
        std::vector<T> v;
        v.reserve(r_);
        for (int i = 0; i < r_; ++i) v.push_back(at(i, j));
        return v;
    }
    void set_col(int j, const std::vector<T>& v) {
        for (int i = 0; i < r_; ++i) at(i, j) = v[i];
    }
    void append_col(const std::vector<T>& v) {
        Mat m(r_ == 0 ? static_cast<int>(v.size()) : r_, c_ + 1, v.empty() ? T{} : zero_like(v[0]));
        for (int i = 0; i < m.rows(); ++i) {
            for (int j = 0; j < c_; ++j) m.at(i, j) = at(i, j);
            m.at(i, c_) = v[i];
        }
        *this = std::move(m);
    }

    Mat operator*(const Mat& o) const {
        if (c_ != o.r_) throw DimensionMismatch("matrix product");
        Mat m(r_, o.c_, zero_like(a_[0]));
        for (int i = 0; i < r_; ++i)
            for (int k = 0; k < c_; ++k)
                for (int j = 0; j < o.c_; ++j) m.at(i, j) += at(i, k) * o.at(k, j);
        return m;
    }

    std::vector<T> apply(const std::vector<T>& v) const {
        if (static_cast<int>(v.size()) != c_) throw DimensionMismatch("matrix-vector product");
        std::vector<T> w(r_, zero_like(a_[0]));
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) w[i] += at(i, j) * v[j];
        return w;
    }

    bool operator==(const Mat& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }

private:
    int r_ = 0, c_ = 0;
    std::vector<T> a_;
};

namespace detail {
template <class T>
T det_rec(const Mat<T>& m, std::vector<int>& rows, int col_from) {
    int n = static_cast<int>(rows.size());
    if (n == 0) return one_like(m.at(0, 0));
    if (n == 1) return m.at(rows[0], col_from);
    T acc = zero_like(m.at(0, 0));
    for (int k = 0; k < n; ++k) {
        const T& pivot = m.at(rows[k], col_from);
        if (pivot.is_zero()) continue;
        std::vector<int> sub;
        sub.reserve(n - 1);
        for (int l = 0; l < n; ++l)
            if (l != k) sub.push_back(rows[l]);
        T minor = det_rec(m, sub, col_from + 1);
        T term = pivot * minor;
        if (k % 2 == 0)
            acc += term;
        else
            acc -= term;
    }
    return acc;
}
} // namespace detail

// Laplace expansion; fine at the ranks this project handles.
template <class T>
T det(const Mat<T>& m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("determinant of non-square matrix");
    std::vector<int> rows(m.rows());
    for (int i = 0; i < m.rows(); ++i) rows[i] = i;
    return detail::det_rec(m, rows, 0);
}

// Minor with one row and one column removed.
template <class T>
Mat<T> minor_matrix(const Mat<T>& m, int drop_row, int drop_col) {
    Mat<T> s(m.rows() - 1, m.cols() - 1, zero_like(m.at(0, 0)));
    for (int i = 0, si = 0; i < m.rows(); ++i) {
        if (i == drop_row) continue;
        for (int j = 0, sj = 0; j < m.cols(); ++j) {
            if (j == drop_col) continue;
            s.at(si, sj) = m.at(i, j);
            ++sj;
        }
        ++si;
    }
    return s;
}

template <class T>
Mat<T> adjugate(const Mat<T>& m) {
    int n = m.rows();
    if (n != m.cols()) throw DimensionMismatch("adjugate of non-square matrix");
    if (n == 1) return Mat<T>::identity(1, m.at(0, 0));
    Mat<T> adj(n, n, zero_like(m.at(0, 0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            T c = det(minor_matrix(m, i, j));
            if ((i + j) % 2 != 0) c = -c;
            adj.at(j, i) = c; // transpose of the cofactor matrix
        }
    return adj;
}

template <class K>
Mat<Frac<K>> to_frac_matrix(const Mat<Poly<K>>& m) {
    Mat<Frac<K>> f(m.rows(), m.cols(), Frac<K>::of_poly(zero_like(m.at(0, 0))));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) f.at(i, j) = Frac<K>::of_poly(m.at(i, j));
    return f;
}

template <class T>
std::string matrix_to_string(const Mat<T>& m) {
    std::string s;
    for (int i = 0; i < m.rows(); ++i) {
        s += "  [";
        for (int j = 0; j < m.cols(); ++j) {
            if (j) s += ", ";
            s += m.at(i, j).to_string();
        }
        s += "]\n";
    }
    return s;
}

} // namespace echelon
