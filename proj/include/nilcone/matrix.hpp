#pragma once

#include <functional>
#include <initializer_list>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace nilcone {

// Dense matrix over an exact field (Rat, Quad, Poly-quotients) or a
// numeric field (BigC). All exact routines pivot on the first nonzero
// entry; numeric callers pass an explicit pivot-weight functor.
template <class T>
struct Mat {
    int r = 0, c = 0;
    std::vector<T> a;

    Mat() = default;
    Mat(int rows, int cols) : r(rows), c(cols), a(static_cast<size_t>(rows) * cols, T(0)) {}
    Mat(int rows, int cols, std::initializer_list<T> init) : r(rows), c(cols), a(init) {
        if (static_cast<int>(a.size()) != rows * cols) throw DimensionMismatch("initializer size");
    }

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }
    static Mat zero(int rows, int cols) { return Mat(rows, cols); }

    T& operator()(int i, int j) { return a[static_cast<size_t>(i) * c + j]; }
    const T& operator()(int i, int j) const { return a[static_cast<size_t>(i) * c + j]; }

    bool operator==(const Mat& o) const { return r == o.r && c == o.c && a == o.a; }
    bool operator!=(const Mat& o) const { return !(*this == o); }

    Mat operator+(const Mat& o) const {
        if (r != o.r || c != o.c) throw DimensionMismatch("matrix add");
        Mat m(r, c);
        for (size_t i = 0; i < a.size(); ++i) m.a[i] = a[i] + o.a[i];
        return m;
    }
    Mat operator-(const Mat& o) const {
        if (r != o.r || c != o.c) throw DimensionMismatch("matrix sub");
        Mat m(r, c);
        for (size_t i = 0; i < a.size(); ++i) m.a[i] = a[i] - o.a[i];
        return m;
    }
    Mat operator*(const Mat& o) const {
        if (c != o.r) throw DimensionMismatch("matrix mul");
        Mat m(r, o.c);
        for (int i = 0; i < r; ++i)
            for (int k = 0; k < c; ++k) {
                const T& aik = (*this)(i, k);
                if (aik == T(0)) continue;
                for (int j = 0; j < o.c; ++j) m(i, j) = m(i, j) + aik * o(k, j);
            }
        return m;
    }
    Mat operator*(const T& s) const {
        Mat m(r, c);
        for (size_t i = 0; i < a.size(); ++i) m.a[i] = a[i] * s;
        return m;
    }
    Mat operator-() const { return (*this) * T(-1); }

    Mat transpose() const {
        Mat m(c, r);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) m(j, i) = (*this)(i, j);
        return m;
    }

    bool is_zero() const {
        for (const T& v : a)
            if (!(v == T(0))) return false;
        return true;
    }

    bool is_square() const { return r == c; }

    T trace() const {
        if (!is_square()) throw DimensionMismatch("trace of non-square matrix");
        T t(0);
        for (int i = 0; i < r; ++i) t = t + (*this)(i, i);
        return t;
    }

    Mat col(int j) const {
        Mat m(r, 1);
        for (int i = 0; i < r; ++i) m(i, 0) = (*this)(i, j);
        return m;
    }

    Mat cols(int j0, int j1) const {  // half-open [j0, j1)
        Mat m(r, j1 - j0);
        for (int i = 0; i < r; ++i)
            for (int j = j0; j < j1; ++j) m(i, j - j0) = (*this)(i, j);
        return m;
    }
};

template <class T>
Mat<T> hstack(const Mat<T>& a, const Mat<T>& b) {
    if (a.r != b.r) throw DimensionMismatch("hstack");
    Mat<T> m(a.r, a.c + b.c);
    for (int i = 0; i < a.r; ++i) {
        for (int j = 0; j < a.c; ++j) m(i, j) = a(i, j);
        for (int j = 0; j < b.c; ++j) m(i, a.c + j) = b(i, j);
    }
    return m;
}

// Row-reduce in place over the field T; returns the pivot columns.
template <class T>
std::vector<int> rref_inplace(Mat<T>& m) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.c && row < m.r; ++col) {
        int p = -1;
        for (int i = row; i < m.r; ++i)
            if (!(m(i, col) == T(0))) { p = i; break; }
        if (p < 0) continue;
        if (p != row)
            for (int j = 0; j < m.c; ++j) std::swap(m(p, j), m(row, j));
        T inv = T(1) / m(row, col);
        for (int j = col; j < m.c; ++j) m(row, j) = m(row, j) * inv;
        for (int i = 0; i < m.r; ++i) {
            if (i == row) continue;
            T f = m(i, col);
            if (f == T(0)) continue;
            for (int j = col; j < m.c; ++j) m(i, j) = m(i, j) - f * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

template <class T>
int rank(Mat<T> m) {
    return static_cast<int>(rref_inplace(m).size());
}

template <class T>
Mat<T> inverse(const Mat<T>& m) {
    if (!m.is_square()) throw DimensionMismatch("inverse of non-square matrix");
    Mat<T> aug = hstack(m, Mat<T>::identity(m.r));
    auto piv = rref_inplace(aug);
    if (static_cast<int>(piv.size()) != m.r) throw Singular("matrix not invertible");
    return aug.cols(m.c, 2 * m.c);
}

template <class T>
T det(Mat<T> m) {
    if (!m.is_square()) throw DimensionMismatch("det of non-square matrix");
    T d(1);
    for (int col = 0; col < m.c; ++col) {
        int p = -1;
        for (int i = col; i < m.r; ++i)
            if (!(m(i, col) == T(0))) { p = i; break; }
        if (p < 0) return T(0);
        if (p != col) {
            for (int j = 0; j < m.c; ++j) std::swap(m(p, j), m(col, j));
            d = d * T(-1);
        }
        d = d * m(col, col);
        T inv = T(1) / m(col, col);
        for (int i = col + 1; i < m.r; ++i) {
            T f = m(i, col) * inv;
            if (f == T(0)) continue;
            for (int j = col; j < m.c; ++j) m(i, j) = m(i, j) - f * m(col, j);
        }
    }
    return d;
}

// Integer power; negative exponents go through the exact inverse.
template <class T>
Mat<T> mpow(const Mat<T>& m, long e) {
    if (!m.is_square()) throw DimensionMismatch("power of non-square matrix");
    Mat<T> base = e < 0 ? inverse(m) : m;
    unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
    Mat<T> acc = Mat<T>::identity(m.r);
    while (k) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

// Columns spanning the kernel.
template <class T>
Mat<T> nullspace(const Mat<T>& m) {
    Mat<T> red = m;
    auto piv = rref_inplace(red);
    std::vector<int> free_cols;
    {
        size_t pi = 0;
        for (int j = 0; j < m.c; ++j) {
            if (pi < piv.size() && piv[pi] == j) { ++pi; continue; }
            free_cols.push_back(j);
        }
    }
    Mat<T> basis(m.c, static_cast<int>(free_cols.size()));
    for (size_t k = 0; k < free_cols.size(); ++k) {
        int fc = free_cols[k];
        basis(fc, static_cast<int>(k)) = T(1);
        for (size_t pi = 0; pi < piv.size(); ++pi)
            basis(piv[pi], static_cast<int>(k)) = -red(static_cast<int>(pi), fc);
    }
    return basis;
}

// Canonical basis of the column space: rref of the transpose, transposed back.
template <class T>
Mat<T> col_echelon(const Mat<T>& m) {
    Mat<T> t = m.transpose();
    auto piv = rref_inplace(t);
    Mat<T> basis(m.r, static_cast<int>(piv.size()));
    for (size_t k = 0; k < piv.size(); ++k)
        for (int i = 0; i < m.r; ++i) basis(i, static_cast<int>(k)) = t(static_cast<int>(k), i);
    return basis;
}

template <class T>
bool same_colspan(const Mat<T>& a, const Mat<T>& b) {
    return col_echelon(a) == col_echelon(b);
}

template <class T>
bool colspan_contains(const Mat<T>& space, const Mat<T>& vecs) {
    return rank(hstack(space, vecs)) == rank(space);
}

template <class T>
Mat<T> span_sum(const Mat<T>& a, const Mat<T>& b) {
    return col_echelon(hstack(a, b));
}

template <class T>
Mat<T> span_intersect(const Mat<T>& a, const Mat<T>& b) {
    if (a.c == 0 || b.c == 0) return Mat<T>(a.r, 0);
    Mat<T> ns = nullspace(hstack(a, -b));
    // Top block of each kernel vector gives coefficients in a's basis.
    Mat<T> gens(a.r, ns.c);
    for (int k = 0; k < ns.c; ++k)
        for (int i = 0; i < a.r; ++i) {
            T v(0);
            for (int j = 0; j < a.c; ++j) v = v + a(i, j) * ns(j, k);
            gens(i, k) = v;
        }
    return col_echelon(gens);
}

// Solve m x = rhs exactly; throws Singular when inconsistent or underdetermined.
template <class T>
Mat<T> solve_exact(const Mat<T>& m, const Mat<T>& rhs) {
    if (m.r != rhs.r) throw DimensionMismatch("solve");
    Mat<T> aug = hstack(m, rhs);
    auto piv = rref_inplace(aug);
    for (int k : piv)
        if (k >= m.c) throw Singular("inconsistent linear system");
    if (static_cast<int>(piv.size()) != m.c) throw Singular("underdetermined linear system");
    Mat<T> x(m.c, rhs.c);
    for (size_t pi = 0; pi < piv.size(); ++pi)
        for (int j = 0; j < rhs.c; ++j) x(piv[pi], j) = aug(static_cast<int>(pi), m.c + j);
    return x;
}

// Characteristic polynomial by Faddeev-LeVerrier; coefficient k multiplies
// lambda^(n-k), so coeffs[0] = 1 and coeffs[n] = (-1)^n det.
template <class T>
std::vector<T> char_poly(const Mat<T>& m) {
    if (!m.is_square()) throw DimensionMismatch("char_poly");
    int n = m.r;
    std::vector<T> coeffs(n + 1, T(0));
    coeffs[0] = T(1);
    Mat<T> mk = Mat<T>::identity(n);
    for (int k = 1; k <= n; ++k) {
        mk = m * mk;
        T ck = mk.trace() * (T(-1) / T(k));
        coeffs[k] = ck;
        for (int i = 0; i < n; ++i) mk(i, i) = mk(i, i) + ck;
    }
    return coeffs;
}

using RMat = Mat<Rat>;

} // namespace nilcone
