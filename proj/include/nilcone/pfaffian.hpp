#pragma once

#include <algorithm>
#include <vector>

#include "series.hpp"

namespace nilcone {

// theta-monomial exponent pair (a, b) = theta_x^a theta_y^b
using TMono = std::pair<int, int>;

using PolyMat = std::vector<std::vector<Poly2>>;

inline PolyMat poly_mat(int r, int c) { return PolyMat(r, std::vector<Poly2>(c)); }

inline PolyMat operator*(const PolyMat& a, const PolyMat& b) {
    size_t r = a.size(), k = b.size(), c = b[0].size();
    PolyMat out = poly_mat(static_cast<int>(r), static_cast<int>(c));
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < c; ++j)
            for (size_t l = 0; l < k; ++l) out[i][j] = out[i][j] + a[i][l] * b[l][j];
    return out;
}

// First-order flat system theta_x F = (Nx/delta) F, theta_y F = (Ny/delta) F
// on the vector F = (m w)_{m in basis} of theta-monomial derivatives of a
// solution w.
struct PfaffianSystem {
    std::vector<TMono> basis;
    PolyMat nx, ny;     // numerator matrices
    Poly2 delta;        // common denominator
    bool uses_y = true; // false for one-variable systems embedded in (x, y)

    int rank() const { return static_cast<int>(basis.size()); }

    // flatness residual, cleared of denominators:
    //   delta*theta_y(Nx) - theta_y(delta)*Nx - delta*theta_x(Ny)
    //     + theta_x(delta)*Ny - (Ny Nx - Nx Ny)
    PolyMat flatness_residual() const {
        int n = rank();
        PolyMat res = poly_mat(n, n);
        Poly2 tx_d = delta.theta_x(), ty_d = delta.theta_y();
        PolyMat comm = ny * nx;
        PolyMat comm2 = nx * ny;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                res[i][j] = delta * nx[i][j].theta_y() - ty_d * nx[i][j] -
                            delta * ny[i][j].theta_x() + tx_d * ny[i][j] -
                            (comm[i][j] - comm2[i][j]);
        return res;
    }
    bool is_flat() const {
        for (auto& row : flatness_residual())
            for (auto& e : row)
                if (!e.is_zero()) return false;
        return true;
    }
};

namespace detail {

// Fraction-free Gauss-Jordan (Bareiss): after elimination every pivot entry
// equals the same determinant delta (up to global sign handling below) and
// non-pivot columns hold delta times the reduced coordinates.
struct Elimination {
    std::vector<int> pivot_cols;            // column index per pivot row
    PolyMat m;                              // reduced matrix
    Poly2 delta;                            // common pivot value
};

inline Elimination bareiss_jordan(PolyMat m) {
    Elimination el;
    int rows = static_cast<int>(m.size());
    int cols = rows ? static_cast<int>(m[0].size()) : 0;
    Poly2 prev(Rat(1));
    int prow = 0;
    for (int col = 0; col < cols && prow < rows; ++col) {
        int sel = -1;
        for (int i = prow; i < rows; ++i)
            if (!m[i][col].is_zero()) { sel = i; break; }
        if (sel < 0) continue;
        std::swap(m[prow], m[sel]);
        const Poly2 piv = m[prow][col];
        for (int i = 0; i < rows; ++i) {
            if (i == prow) continue;
            const Poly2 fac = m[i][col];
            for (int j = 0; j < cols; ++j) {
                Poly2 num = piv * m[i][j] - fac * m[prow][j];
                Poly2 q;
                if (!divides_exactly(prev, num, &q))
                    throw Singular("fraction-free elimination: inexact division");
                m[i][j] = q;
            }
        }
        el.pivot_cols.push_back(col);
        prev = piv;
        ++prow;
    }
    // normalize earlier pivot rows to share the final pivot value
    if (!el.pivot_cols.empty()) {
        Poly2 last = m[prow - 1][el.pivot_cols.back()];
        for (int k = 0; k < prow; ++k) {
            const Poly2& pk = m[k][el.pivot_cols[k]];
            if (pk == last) continue;
            Poly2 q;
            if (divides_exactly(pk, last, &q)) {
                for (int j = 0; j < cols; ++j) m[k][j] = m[k][j] * q;
            } else if (divides_exactly(pk * Rat(-1), last, &q)) {
                for (int j = 0; j < cols; ++j) m[k][j] = -(m[k][j] * q);
            } else {
                throw Singular("fraction-free elimination: incompatible pivots");
            }
        }
        el.delta = last;
    } else {
        el.delta = Poly2(Rat(1));
    }
    el.m = std::move(m);
    return el;
}

} // namespace detail

// Left-multiply an operator by the monomial theta_x^a theta_y^b.
inline ThetaOperator prolong(ThetaOperator op, int a, int b) {
    for (int i = 0; i < a; ++i) op = op.left_theta(true);
    for (int i = 0; i < b; ++i) op = op.left_theta(false);
    return op;
}

// D-module reduction of the left ideal generated by `ops`: prolong each
// operator by theta-monomials up to total degree `cap`, eliminate over
// Q(x, y) preferring to keep low-order monomials as the basis, and express
// theta_x/theta_y action on the surviving basis.
inline PfaffianSystem build_pfaffian(const std::vector<ThetaOperator>& ops, int expected_rank,
                                     int cap = -1) {
    if (ops.empty()) throw WrongHolonomicRank("no operators");
    bool uses_y = false;
    int max_order = 0;
    for (const auto& op : ops) {
        max_order = std::max(max_order, op.max_order());
        for (auto& [ab, c] : op.terms) {
            if (ab.second > 0) uses_y = true;
            for (auto& [e, v] : c.t)
                if (e.second > 0) uses_y = true;
        }
    }
    if (cap < 0) cap = max_order + 1;

    // monomial universe up to degree cap, ordered: high degree first (pivot
    // preference), preferred basis candidates last in reverse preference order
    std::vector<TMono> monos;
    for (int d = cap; d >= 0; --d)
        for (int a = d; a >= 0; --a) {
            int b = d - a;
            if (b > 0 && !uses_y) continue;
            monos.push_back({a, b});
        }
    const std::vector<TMono> preferred{{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {3, 0}};
    std::vector<TMono> tail;
    for (auto it = preferred.rbegin(); it != preferred.rend(); ++it) {
        auto pos = std::find(monos.begin(), monos.end(), *it);
        if (pos != monos.end()) {
            monos.erase(pos);
            tail.push_back(*it);
        }
    }
    monos.insert(monos.end(), tail.begin(), tail.end());

    // prolongation rows
    std::vector<ThetaOperator> rows;
    for (const auto& op : ops) {
        int room = cap - op.max_order();
        for (int a = 0; a <= room; ++a)
            for (int b = 0; a + b <= room; ++b) {
                if (b > 0 && !uses_y) continue;
                rows.push_back(prolong(op, a, b));
            }
    }
    PolyMat m = poly_mat(static_cast<int>(rows.size()), static_cast<int>(monos.size()));
    for (size_t i = 0; i < rows.size(); ++i)
        for (auto& [ab, c] : rows[i].terms) {
            auto pos = std::find(monos.begin(), monos.end(), ab);
            if (pos == monos.end()) throw WrongHolonomicRank("prolongation exceeded cap");
            m[i][pos - monos.begin()] = c;
        }

    auto el = detail::bareiss_jordan(std::move(m));
    std::vector<TMono> basis;
    std::vector<int> basis_col;
    for (size_t j = 0; j < monos.size(); ++j)
        if (std::find(el.pivot_cols.begin(), el.pivot_cols.end(), static_cast<int>(j)) ==
            el.pivot_cols.end()) {
            basis.push_back(monos[j]);
            basis_col.push_back(static_cast<int>(j));
        }
    if (static_cast<int>(basis.size()) != expected_rank)
        throw WrongHolonomicRank("elimination quotient has dimension " +
                                 std::to_string(basis.size()) + ", expected " +
                                 std::to_string(expected_rank));
    std::sort(basis_col.begin(), basis_col.end(), std::greater<int>());  // preferred order
    basis.clear();
    for (int j : basis_col) basis.push_back(monos[j]);

    PfaffianSystem sys;
    sys.basis = basis;
    sys.delta = el.delta;
    sys.uses_y = uses_y;
    int n = static_cast<int>(basis.size());
    auto reduce_mono = [&](const TMono& mono, std::vector<Poly2>& out) {
        out.assign(n, Poly2());
        auto pos = std::find(basis.begin(), basis.end(), mono);
        if (pos != basis.end()) {
            out[pos - basis.begin()] = el.delta;
            return;
        }
        auto mpos = std::find(monos.begin(), monos.end(), mono);
        if (mpos == monos.end()) throw WrongHolonomicRank("basis closure exceeds prolongation cap");
        int col = static_cast<int>(mpos - monos.begin());
        auto ppos = std::find(el.pivot_cols.begin(), el.pivot_cols.end(), col);
        if (ppos == el.pivot_cols.end())
            throw WrongHolonomicRank("monomial not reducible to the basis");
        int row = static_cast<int>(ppos - el.pivot_cols.begin());
        // delta * mono + sum(entries over basis cols) = 0 mod ideal
        for (int k = 0; k < n; ++k) out[k] = -el.m[row][basis_col[k]];
    };
    sys.nx = poly_mat(n, n);
    sys.ny = poly_mat(n, n);
    for (int i = 0; i < n; ++i) {
        std::vector<Poly2> red;
        reduce_mono({basis[i].first + 1, basis[i].second}, red);
        sys.nx[i] = red;
        if (uses_y) {
            reduce_mono({basis[i].first, basis[i].second + 1}, red);
            sys.ny[i] = red;
        }
    }
    return sys;
}

} // namespace nilcone
