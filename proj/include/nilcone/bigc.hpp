#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/mpfr.hpp>

#include "matrix.hpp"

namespace nilcone {

using BigF = boost::multiprecision::mpfr_float;

// Scoped precision context: every BigF constructed while alive carries at
// least `bits` of mantissa. Operations on such values keep full precision.
struct PrecisionContext {
    unsigned prev;
    explicit PrecisionContext(unsigned bits)
        : prev(BigF::default_precision()) {
        BigF::default_precision(static_cast<unsigned>(bits * 0.3010299957) + 4);
    }
    ~PrecisionContext() { BigF::default_precision(prev); }
};

inline BigF big_from_rat(const Rat& q) {
    return BigF(q.get_num().get_str()) / BigF(q.get_den().get_str());
}

struct BigC {
    BigF re, im;

    BigC() : re(0), im(0) {}
    BigC(const BigF& r) : re(r), im(0) {}
    BigC(const BigF& r, const BigF& i) : re(r), im(i) {}
    explicit BigC(const Rat& q) : re(big_from_rat(q)), im(0) {}
    static BigC from_double(double r, double i = 0) { return {BigF(r), BigF(i)}; }

    BigC operator+(const BigC& o) const { return {re + o.re, im + o.im}; }
    BigC operator-(const BigC& o) const { return {re - o.re, im - o.im}; }
    BigC operator-() const { return {-re, -im}; }
    BigC operator*(const BigC& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    BigC operator/(const BigC& o) const {
        BigF n = o.re * o.re + o.im * o.im;
        return {(re * o.re + im * o.im) / n, (im * o.re - re * o.im) / n};
    }
    BigC& operator+=(const BigC& o) { re += o.re; im += o.im; return *this; }
    BigF abs2() const { return re * re + im * im; }
    BigF abs() const { return boost::multiprecision::sqrt(abs2()); }
    std::complex<double> to_complex() const {
        return {static_cast<double>(re), static_cast<double>(im)};
    }
};

// dense complex matrix
struct CMat {
    int r = 0, c = 0;
    std::vector<BigC> a;

    CMat() = default;
    CMat(int rr, int cc) : r(rr), c(cc), a(static_cast<size_t>(rr) * cc) {}
    BigC& operator()(int i, int j) { return a[static_cast<size_t>(i) * c + j]; }
    const BigC& operator()(int i, int j) const { return a[static_cast<size_t>(i) * c + j]; }
    static CMat identity(int n) {
        CMat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = BigC(BigF(1));
        return m;
    }
    CMat operator*(const CMat& o) const {
        if (c != o.r) throw DimensionMismatch("CMat product");
        CMat out(r, o.c);
        for (int i = 0; i < r; ++i)
            for (int k = 0; k < c; ++k) {
                const BigC& v = (*this)(i, k);
                if (v.re == 0 && v.im == 0) continue;
                for (int j = 0; j < o.c; ++j) out(i, j) += v * o(k, j);
            }
        return out;
    }
    CMat operator+(const CMat& o) const {
        CMat out(r, c);
        for (size_t i = 0; i < a.size(); ++i) out.a[i] = a[i] + o.a[i];
        return out;
    }
    CMat operator-(const CMat& o) const {
        CMat out(r, c);
        for (size_t i = 0; i < a.size(); ++i) out.a[i] = a[i] - o.a[i];
        return out;
    }
    CMat scaled(const BigC& s) const {
        CMat out(r, c);
        for (size_t i = 0; i < a.size(); ++i) out.a[i] = a[i] * s;
        return out;
    }
    BigF max_abs() const {
        BigF m(0);
        for (auto& v : a) m = std::max(m, BigC(v).abs());
        return m;
    }
    BigC trace() const {
        BigC t;
        for (int i = 0; i < r; ++i) t += (*this)(i, i);
        return t;
    }
};

inline BigF max_deviation(const CMat& a, const CMat& b) { return (a - b).max_abs(); }

inline CMat cinverse(const CMat& m) {
    if (m.r != m.c) throw DimensionMismatch("cinverse");
    int n = m.r;
    CMat a = m, inv = CMat::identity(n);
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int i = col + 1; i < n; ++i)
            if (a(i, col).abs2() > a(piv, col).abs2()) piv = i;
        if (a(piv, col).abs2() == 0) throw Singular("numerically singular matrix");
        for (int j = 0; j < n; ++j) {
            std::swap(a.a[static_cast<size_t>(col) * n + j], a.a[static_cast<size_t>(piv) * n + j]);
            std::swap(inv.a[static_cast<size_t>(col) * n + j], inv.a[static_cast<size_t>(piv) * n + j]);
        }
        BigC d = a(col, col);
        for (int j = 0; j < n; ++j) {
            a(col, j) = a(col, j) / d;
            inv(col, j) = inv(col, j) / d;
        }
        for (int i = 0; i < n; ++i) {
            if (i == col) continue;
            BigC f = a(i, col);
            if (f.re == 0 && f.im == 0) continue;
            for (int j = 0; j < n; ++j) {
                a(i, j) = a(i, j) - f * a(col, j);
                inv(i, j) = inv(i, j) - f * inv(col, j);
            }
        }
    }
    return inv;
}

inline BigC cdet(CMat a) {
    int n = a.r;
    BigC d(BigF(1));
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int i = col + 1; i < n; ++i)
            if (a(i, col).abs2() > a(piv, col).abs2()) piv = i;
        if (a(piv, col).abs2() == 0) return BigC();
        if (piv != col) {
            for (int j = 0; j < n; ++j)
                std::swap(a.a[static_cast<size_t>(col) * n + j], a.a[static_cast<size_t>(piv) * n + j]);
            d = -d;
        }
        d = d * a(col, col);
        for (int i = col + 1; i < n; ++i) {
            BigC f = a(i, col) / a(col, col);
            for (int j = col; j < n; ++j) a(i, j) = a(i, j) - f * a(col, j);
        }
    }
    return d;
}

// characteristic polynomial coefficients (monic, coeffs[k] multiplies
// lambda^(n-k)) via Faddeev-LeVerrier
inline std::vector<BigC> char_poly_numeric(const CMat& m) {
    int n = m.r;
    std::vector<BigC> coeffs(n + 1);
    coeffs[0] = BigC(BigF(1));
    CMat mk = m;
    for (int k = 1; k <= n; ++k) {
        BigC ck = mk.trace() * BigC(BigF(-1) / k);
        coeffs[k] = ck;
        for (int i = 0; i < n; ++i) mk(i, i) += ck;
        if (k < n) mk = m * mk;
    }
    return coeffs;
}

} // namespace nilcone
