#pragma once

#include <map>
#include <vector>

#include "unipotent.hpp"

namespace nilcone {

// Monodromy weight filtration W_0 <= W_2 <= ... <= W_{2*center},
// each step a canonical column basis.
struct Filtration {
    int dimension = 0;
    int center = 0;
    std::map<int, RMat> steps;  // even j -> basis of W_j

    const RMat& w(int j) const {
        auto it = steps.find(j);
        if (it == steps.end()) throw DimensionMismatch("filtration has no step W_" + std::to_string(j));
        return it->second;
    }
    std::vector<int> dims() const {
        std::vector<int> out;
        for (auto& [j, b] : steps) out.push_back(b.c);
        return out;
    }
};

// Deligne's closed form: W_j = sum over a-b = j-center of Ker N^(a+1) ^ Im N^b.
inline Filtration weight_filtration(const RMat& n, int center) {
    if (!is_nilpotent(n)) throw NotNilpotent("weight_filtration input");
    int dim = n.r;
    if (!mpow(n, center + 1).is_zero()) throw WrongCenter("N^(center+1) != 0");
    std::vector<RMat> kers(dim + 2), ims(dim + 1);
    RMat p = RMat::identity(dim);
    for (int a = 0; a <= dim; ++a) {
        ims[a] = col_echelon(p);
        kers[a] = col_echelon(nullspace(p));
        p = p * n;
    }
    kers[dim + 1] = kers[dim];
    Filtration f;
    f.dimension = dim;
    f.center = center;
    for (int j = 0; j <= 2 * center; j += 2) {
        RMat acc(dim, 0);
        for (int a = 0; a <= dim; ++a) {
            int b = a - (j - center);
            if (b < 0 || b > dim) continue;
            acc = span_sum(acc, span_intersect(kers[a + 1], ims[b]));
        }
        f.steps[j] = acc;
    }
    return f;
}

inline bool check_filtration_preserved(const RMat& g, const Filtration& f) {
    if (g.r != f.dimension) throw DimensionMismatch("check_filtration_preserved");
    for (auto& [j, basis] : f.steps)
        if (!same_colspan(g * basis, basis)) return false;
    return true;
}

// Primitive integer representative of a 1-dim space.
inline RMat primitive_column(const RMat& v) {
    mpz_class num_gcd = 0, den_lcm = 1;
    for (int i = 0; i < v.r; ++i) {
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), v(i, 0).get_num().get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), v(i, 0).get_den().get_mpz_t());
    }
    if (num_gcd == 0) return v;
    RMat out = v * (Rat(den_lcm) / Rat(num_gcd));
    int lead = 0;
    while (lead < out.r && out(lead, 0) == 0) ++lead;
    if (lead < out.r && sgn(out(lead, 0)) < 0) out = -out;
    return out;
}

struct LCSLReport {
    std::vector<bool> unipotent_flags;
    std::vector<int> filtration_dims;
    RMat m_matrix;
    Rat m_det;
    bool verdict = false;
};

// Definition check for a large complex structure limit: unipotent
// generators, filtration dims starting (1, 1+r), invertible m-matrix
// from N_j w_k = m_jk w_0 on a W_2/W_0 extension basis.
inline LCSLReport lcsl_verify(const std::vector<RMat>& generators, int center) {
    LCSLReport rep;
    if (generators.empty()) throw DimensionMismatch("lcsl_verify needs generators");
    int r = static_cast<int>(generators.size());
    bool all_unip = true;
    for (const RMat& t : generators) {
        bool u = is_unipotent(t);
        rep.unipotent_flags.push_back(u);
        all_unip = all_unip && u;
    }
    if (!all_unip) return rep;  // verdict false; filtration undefined
    RMat nsum(generators[0].r, generators[0].c);
    for (const RMat& t : generators) nsum = nsum + unipotent_log(t);
    Filtration f = weight_filtration(nsum, center);
    rep.filtration_dims = f.dims();
    bool dims_ok = f.w(0).c == 1 && f.w(2).c == 1 + r;
    // extension basis: columns of W_2 independent from w_0
    RMat w0 = primitive_column(f.w(0));
    std::vector<RMat> ext;
    RMat span = w0;
    for (int j = 0; j < f.w(2).c && static_cast<int>(ext.size()) < r; ++j) {
        RMat v = f.w(2).col(j);
        if (!colspan_contains(span, v)) {
            ext.push_back(v);
            span = hstack(span, v);
        }
    }
    rep.m_matrix = RMat(r, static_cast<int>(ext.size()));
    bool mult_ok = static_cast<int>(ext.size()) == r;
    for (int j = 0; j < r && mult_ok; ++j) {
        RMat nj = unipotent_log(generators[j]);
        for (int k = 0; k < r; ++k) {
            RMat img = nj * ext[k];
            try {
                RMat coef = solve_exact(w0, img);
                rep.m_matrix(j, k) = coef(0, 0);
            } catch (const Singular&) {
                mult_ok = false;  // N_j w_k not a multiple of w_0
                break;
            }
        }
    }
    rep.m_det = mult_ok ? det(rep.m_matrix) : Rat(0);
    rep.verdict = all_unip && dims_ok && mult_ok && rep.m_det != 0;
    return rep;
}

} // namespace nilcone
