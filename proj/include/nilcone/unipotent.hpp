#pragma once

#include <utility>

#include "matrix.hpp"
#include "quad.hpp"

namespace nilcone {

using RMat = Mat<Rat>;

// Pairing preserved by the monodromies. The threefold cases use the
// antisymmetric intersection form with column-acting matrices; the K3
// lattice matrices act on row vectors of the symmetric Gram matrix.
struct FormSpec {
    RMat j;
    bool column_action = true;
    bool antisymmetric = true;
};

inline bool preserves_form(const RMat& m, const FormSpec& form) {
    if (!m.is_square() || m.r != form.j.r) throw DimensionMismatch("preserves_form");
    if (form.column_action) return m.transpose() * form.j * m == form.j;
    return m * form.j * m.transpose() == form.j;
}

inline int nilpotency_index(const RMat& n) {  // smallest k with N^k = 0, or -1
    RMat p = RMat::identity(n.r);
    for (int k = 0; k <= n.r; ++k) {
        if (p.is_zero()) return k;
        p = p * n;
    }
    return -1;
}

inline bool is_nilpotent(const RMat& n) { return n.is_square() && nilpotency_index(n) >= 0; }

inline bool is_unipotent(const RMat& m) {
    return m.is_square() && is_nilpotent(m - RMat::identity(m.r));
}

// log via the finite series sum (-1)^(k-1) (M - I)^k / k.
inline RMat unipotent_log(const RMat& m) {
    if (!m.is_square()) throw DimensionMismatch("unipotent_log");
    RMat x = m - RMat::identity(m.r);
    int idx = nilpotency_index(x);
    if (idx < 0) throw NotUnipotent("no power of (M - I) vanishes up to dim");
    RMat acc(m.r, m.r), p = RMat::identity(m.r);
    for (int k = 1; k < idx; ++k) {
        p = p * x;
        acc = acc + p * (Rat(k % 2 ? 1 : -1) / Rat(k));
    }
    return acc;
}

inline RMat nilpotent_exp(const RMat& n) {
    if (!n.is_square()) throw DimensionMismatch("nilpotent_exp");
    int idx = nilpotency_index(n);
    if (idx < 0) throw NotNilpotent("matrix is not nilpotent");
    RMat acc = RMat::identity(n.r), p = RMat::identity(n.r);
    for (int k = 1; k < idx; ++k) {
        p = p * n * (Rat(1) / Rat(k));
        acc = acc + p;
    }
    return acc;
}

inline int quasi_unipotency_order(const RMat& m, int k_max) {
    if (k_max < 1) throw NotQuasiUnipotent("k_max must be >= 1");
    RMat p = m;
    for (int k = 1; k <= k_max; ++k) {
        if (is_unipotent(p)) return k;
        p = p * m;
    }
    throw NotQuasiUnipotent("no power up to k_max is unipotent");
}

// A = transpose(M)^-1: action on the dual basis.
inline RMat dual_action(const RMat& m) { return inverse(m.transpose()); }

inline long squarefree_part(long n, long& square_root_factor) {
    long sf = 1, f = 1;
    for (long p = 2; p * p <= n; ++p) {
        int e = 0;
        while (n % p == 0) { n /= p; ++e; }
        for (int i = 0; i < e / 2; ++i) f *= p;
        if (e % 2) sf *= p;
    }
    sf *= n;
    square_root_factor = f;
    return sf;
}

// Eigen-directions of an integer 2x2 matrix with irrational spectrum,
// as exact vectors over Q(sqrt(d)). Normalized so the rational part of
// the first coordinate is -1, matching printed forms like (-1, 2+sqrt 3).
inline std::pair<QuadRay, QuadRay> eigenrays_2x2(const RMat& m) {
    if (m.r != 2 || m.c != 2) throw NotTwoByTwo("eigenrays_2x2 needs a 2x2 matrix");
    for (const Rat& v : m.a)
        if (!is_integer(v)) throw NotTwoByTwo("eigenrays_2x2 needs integer entries");
    Rat tr = m(0, 0) + m(1, 1);
    Rat dt = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    Rat disc = tr * tr - Rat(4) * dt;
    if (sgn(disc) <= 0) throw RationalSpectrum("non-positive discriminant");
    long dl = disc.get_num().get_si();
    long f = 1;
    long sf = squarefree_part(dl, f);
    if (sf == 1) throw RationalSpectrum("discriminant is a perfect square");
    // lambda = (tr +- f sqrt(sf)) / 2
    auto make_ray = [&](int sign_branch) {
        Quad lam((tr) / Rat(2), Rat(sign_branch * f) / Rat(2), sf);
        Quad v0, v1;
        if (m(0, 1) != 0) {
            v0 = Quad(m(0, 1));
            v1 = lam - Quad(m(0, 0));
        } else {
            v0 = lam - Quad(m(1, 1));
            v1 = Quad(m(1, 0));
        }
        // scale so the first coordinate becomes exactly -1
        Quad scale = Quad(Rat(-1)) / v0;
        return QuadRay{v0 * scale, v1 * scale};
    };
    QuadRay plus = make_ray(1), minus = make_ray(-1);
    // order the branches by the sqrt-coefficient of the second coordinate
    if (plus[1].b < minus[1].b) std::swap(plus, minus);
    return {plus, minus};
}

// Exact residual check (M - lambda I) v for a claimed eigenray.
inline bool is_eigenray(const RMat& m, const QuadRay& v) {
    Quad w0 = Quad(m(0, 0)) * v[0] + Quad(m(0, 1)) * v[1];
    Quad w1 = Quad(m(1, 0)) * v[0] + Quad(m(1, 1)) * v[1];
    // proportionality: w x v = 0
    return (w0 * v[1] - w1 * v[0]) == Quad(0);
}

} // namespace nilcone
