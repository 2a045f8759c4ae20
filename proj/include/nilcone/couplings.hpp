#pragma once

#include <array>
#include <vector>

#include "matrix.hpp"

namespace nilcone {

// Totally symmetric coupling tensor C_ijk from N_i N_j N_k = C_ijk N0.
struct CouplingTensor {
    int r = 0;
    std::vector<Rat> c;  // r^3 entries, index (i*r + j)*r + k
    RMat n0;

    Rat& at(int i, int j, int k) { return c[(static_cast<size_t>(i) * r + j) * r + k]; }
    const Rat& at(int i, int j, int k) const { return c[(static_cast<size_t>(i) * r + j) * r + k]; }

    // (C111, C112, C122, C222) convenience for the r = 2 cases
    std::array<Rat, 4> diag_profile() const {
        return {at(0, 0, 0), at(0, 0, 1), at(0, 1, 1), at(1, 1, 1)};
    }
};

inline RMat rank_one_n0(int dim) {
    RMat n0(dim, dim);
    n0(0, dim - 1) = 1;
    return n0;
}

// Scalar c with p = c * n0; throws NotProportional otherwise.
inline Rat proportionality(const RMat& p, const RMat& n0) {
    Rat c(0);
    bool found = false;
    for (int i = 0; i < p.r; ++i)
        for (int j = 0; j < p.c; ++j)
            if (n0(i, j) != 0) {
                Rat cand = p(i, j) / n0(i, j);
                if (found && cand != c) throw NotProportional("inconsistent ratios");
                c = cand;
                found = true;
            }
    if (!(p == n0 * c)) throw NotProportional("product not a multiple of N0");
    return c;
}

inline CouplingTensor extract_couplings(const std::vector<RMat>& gens, const RMat& n0) {
    CouplingTensor t;
    t.r = static_cast<int>(gens.size());
    t.n0 = n0;
    t.c.assign(static_cast<size_t>(t.r) * t.r * t.r, Rat(0));
    for (int i = 0; i < t.r; ++i)
        for (int j = 0; j < t.r; ++j)
            for (int k = 0; k < t.r; ++k)
                t.at(i, j, k) = proportionality(gens[i] * gens[j] * gens[k], n0);
    for (int i = 0; i < t.r; ++i)
        for (int j = 0; j < t.r; ++j)
            for (int k = 0; k < t.r; ++k) {
                const Rat& v = t.at(i, j, k);
                if (v != t.at(i, k, j) || v != t.at(j, i, k) || v != t.at(k, j, i))
                    throw NotProportional("coupling tensor not totally symmetric");
            }
    return t;
}

// K3 analogue: pair products N_i N_j = C_ij * n0.
inline RMat extract_couplings_quadratic(const std::vector<RMat>& gens, const RMat& n0) {
    int r = static_cast<int>(gens.size());
    RMat c(r, r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) c(i, j) = proportionality(gens[i] * gens[j], n0);
    return c;
}

// Image of an endomorphism on the W_2 basis: the finite representation
// of its class mod the left ideal I_2 = {X : X|_W2 = 0}.
inline RMat project_mod_I2(const RMat& x, const RMat& w2_basis) {
    if (x.c != w2_basis.r) throw DimensionMismatch("project_mod_I2");
    return x * w2_basis;
}

// Cubic-form transformation C'_ijk = sum C_lmn A_li A_mj A_nk.
inline CouplingTensor coupling_transform(const CouplingTensor& t, const RMat& a) {
    if (a.r != t.r || a.c != t.r) throw DimensionMismatch("coupling_transform");
    CouplingTensor out;
    out.r = t.r;
    out.n0 = t.n0;
    out.c.assign(t.c.size(), Rat(0));
    for (int i = 0; i < t.r; ++i)
        for (int j = 0; j < t.r; ++j)
            for (int k = 0; k < t.r; ++k) {
                Rat s(0);
                for (int l = 0; l < t.r; ++l)
                    for (int m = 0; m < t.r; ++m)
                        for (int n = 0; n < t.r; ++n)
                            s += t.at(l, m, n) * a(l, i) * a(m, j) * a(n, k);
                out.at(i, j, k) = s;
            }
    return out;
}

} // namespace nilcone
