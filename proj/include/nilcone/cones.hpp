#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "dataset.hpp"
#include "filtration.hpp"
#include "unipotent.hpp"

namespace nilcone {

struct NilpotentCone {
    std::string label;
    std::vector<RMat> generators;
};

inline std::vector<RMat> conjugate_generators(const std::vector<RMat>& gens, const RMat& g) {
    RMat gi = inverse(g);
    std::vector<RMat> out;
    out.reserve(gens.size());
    for (const RMat& n : gens) out.push_back(gi * n * g);
    return out;
}

// Delta = target - (c1 base1 + c2 base2) and the flag Delta|_W2 = 0.
inline std::pair<RMat, bool> delta_correction(const RMat& target, const Rat& c1, const Rat& c2,
                                              const RMat& base1, const RMat& base2,
                                              const RMat& w2) {
    RMat delta = target - (base1 * c1 + base2 * c2);
    return {delta, (delta * w2).is_zero()};
}

inline bool verify_relation(const RelationSpec& rel, const MonodromyDataset& ds) {
    return ds.eval(rel.lhs) == ds.eval(rel.rhs);
}

// Coordinates of X in the quotient lattice spanned by pi(N1), pi(N2):
// solve X|_W2 = a N1|_W2 + b N2|_W2 exactly.
inline std::pair<Rat, Rat> quotient_coords(const RMat& x, const RMat& n1, const RMat& n2,
                                           const RMat& w2) {
    RMat a1 = n1 * w2, a2 = n2 * w2, tx = x * w2;
    int len = a1.r * a1.c;
    RMat lhs(len, 2), rhs(len, 1);
    for (int i = 0; i < a1.r; ++i)
        for (int j = 0; j < a1.c; ++j) {
            lhs(i * a1.c + j, 0) = a1(i, j);
            lhs(i * a1.c + j, 1) = a2(i, j);
            rhs(i * a1.c + j, 0) = tx(i, j);
        }
    RMat sol;
    try {
        sol = solve_exact(lhs, rhs);
    } catch (const Singular&) {
        throw NotInQuotientLattice("image not in the span of pi(N1), pi(N2)");
    }
    return {sol(0, 0), sol(1, 0)};
}

// Primitive integer ray, keeping orientation.
inline std::pair<long, long> primitive_ray(const Rat& a, const Rat& b) {
    Rat x = a, y = b;
    mpz_class den_lcm;
    mpz_lcm(den_lcm.get_mpz_t(), x.get_den().get_mpz_t(), y.get_den().get_mpz_t());
    mpz_class nx = x.get_num() * (den_lcm / x.get_den());
    mpz_class ny = y.get_num() * (den_lcm / y.get_den());
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), nx.get_mpz_t(), ny.get_mpz_t());
    if (g != 0) { nx /= g; ny /= g; }
    if (!nx.fits_slong_p() || !ny.fits_slong_p())
        throw NotInQuotientLattice("ray coordinates overflow");
    return {nx.get_si(), ny.get_si()};
}

// Angular order on ray directions (full circle, starting at angle 0).
inline bool ray_angle_less(const std::pair<long, long>& p, const std::pair<long, long>& q) {
    auto half = [](const std::pair<long, long>& v) {
        if (v.second > 0 || (v.second == 0 && v.first > 0)) return 0;  // upper half incl. +x
        return 1;
    };
    int hp = half(p), hq = half(q);
    if (hp != hq) return hp < hq;
    long cross = p.first * q.second - p.second * q.first;
    return cross > 0;
}

struct QuotientFan {
    std::vector<std::pair<long, long>> rays;  // angularly ordered, deduplicated
    QuadRay closure_left, closure_right;      // eigen-directions bounding the union
    int depth = 0;
};

struct ChainReport {
    std::vector<NilpotentCone> cones;
    bool gluing_ok = true;        // shared-generator identities at every n
    bool adjacency_ok = true;     // consecutive cones share exactly one generator,
                                  // remaining generators span rank 3
    bool quotient_coords_ok = true;
};

namespace detail {
inline int shared_generator_count(const NilpotentCone& a, const NilpotentCone& b) {
    int count = 0;
    for (const RMat& x : a.generators)
        for (const RMat& y : b.generators)
            if (x == y) ++count;
    return count;
}

inline int distinct_span_rank(const NilpotentCone& a, const NilpotentCone& b) {
    // distinct generators among the two cones, flattened to vectors
    std::vector<RMat> gens = a.generators;
    for (const RMat& y : b.generators) {
        bool dup = false;
        for (const RMat& x : gens) dup = dup || x == y;
        if (!dup) gens.push_back(y);
    }
    int dim = gens[0].r * gens[0].c;
    RMat flat(dim, static_cast<int>(gens.size()));
    for (size_t k = 0; k < gens.size(); ++k)
        for (int i = 0; i < gens[k].r; ++i)
            for (int j = 0; j < gens[k].c; ++j)
                flat(i * gens[k].c + j, static_cast<int>(k)) = gens[k](i, j);
    return rank(flat);
}
} // namespace detail

// Groupoid chains (p4p4, k3): three boundary points conjugated by rho^n,
// verifying N1(n) = N1''(n), N2(n) = N2'(n), N2''(n) = N1'(n-1).
inline ChainReport cone_chain_groupoid(const MonodromyDataset& ds, int n_min, int n_max,
                                       const RMat& w2) {
    if (n_min > n_max) throw DimensionMismatch("cone_chain: n_min > n_max");
    const Json& chain = ds.raw.at("chain");
    RMat rho = ds.eval(chain.at("conjugator").get<std::string>());
    RMat orbit = parse_matrix_2x2(chain.at("orbit_matrix"), ds.name + " orbit_matrix");
    int power = chain.at("orbit_power").get<int>();
    auto logs_of = [&](const BoundaryPoint& p) {
        std::vector<RMat> out;
        for (auto& g : p.generators) out.push_back(unipotent_log(ds.mat(g)));
        return out;
    };
    auto n_o1 = logs_of(ds.points.at(0));
    auto n_o2 = logs_of(ds.points.at(1));
    auto n_o3 = logs_of(ds.points.at(2));

    ChainReport rep;
    for (int n = n_min; n <= n_max; ++n) {
        RMat g = mpow(rho, n);
        auto c1 = conjugate_generators(n_o1, g);
        auto c2 = conjugate_generators(n_o2, g);
        auto c3 = conjugate_generators(n_o3, g);
        auto c2_prev = conjugate_generators(n_o2, mpow(rho, n - 1));
        rep.gluing_ok = rep.gluing_ok && c1[0] == c3[0] && c1[1] == c2[1] && c3[1] == c2_prev[0];
        // quotient coordinates follow the printed orbit-matrix power
        RMat b = mpow(orbit, static_cast<long>(power) * n);
        for (int gi = 0; gi < 2; ++gi) {
            auto [qa, qb] = quotient_coords(c1[gi], n_o1[0], n_o1[1], w2);
            rep.quotient_coords_ok =
                rep.quotient_coords_ok && qa == b(0, gi) && qb == b(1, gi);
        }
        // chamber order within one period: o3-cone, o1-cone, o2-cone, so the
        // junction Sigma_o2(n) | Sigma_o3(n+1) realizes N2''(n+1) = N1'(n)
        rep.cones.push_back({"Sigma_o3(" + std::to_string(n) + ")", c3});
        rep.cones.push_back({"Sigma_o1(" + std::to_string(n) + ")", c1});
        rep.cones.push_back({"Sigma_o2(" + std::to_string(n) + ")", c2});
    }
    // For the threefold cones the three distinct generators must escape any
    // 2-plane of End(H^3); for the K3 analogue all generators live in the
    // rank-2 Picard quotient, so adjacency only asks for distinct cones.
    int expected_rank = ds.dimension == 6 ? 3 : 2;
    for (size_t i = 0; i + 1 < rep.cones.size(); ++i) {
        rep.adjacency_ok = rep.adjacency_ok &&
                           detail::shared_generator_count(rep.cones[i], rep.cones[i + 1]) == 1 &&
                           detail::distinct_span_rank(rep.cones[i], rep.cones[i + 1]) ==
                               expected_rank;
    }
    return rep;
}

// Group chains (p3p3): orbit of the base cone under words in tau_E1, tau_E2,
// plus the tau-power identities on the untouched generator.
struct GroupChainReport {
    bool tau_fixes_ok = true;       // tau_E1^n(N2) = N2 and tau_E2^n(N1) = N1
    bool tau_quotient_ok = true;    // quotient actions follow the involution matrices
    bool pair_quotient_ok = true;   // tau_12 acts by the printed 2x2 matrix
    bool squares_trivial_ok = true; // tau_i^2 act trivially on the quotient
};

inline RMat quotient_action(const MonodromyDataset& ds, const RMat& g, const RMat& n1,
                            const RMat& n2, const RMat& w2) {
    RMat gi = inverse(g);
    RMat q(2, 2);
    auto [a1, b1] = quotient_coords(gi * n1 * g, n1, n2, w2);
    auto [a2, b2] = quotient_coords(gi * n2 * g, n1, n2, w2);
    q(0, 0) = a1; q(1, 0) = b1;
    q(0, 1) = a2; q(1, 1) = b2;
    return q;
}

inline GroupChainReport cone_chain_group(const MonodromyDataset& ds, int n_range, const RMat& w2) {
    const Json& chain = ds.raw.at("chain");
    RMat b1 = parse_matrix_2x2(chain.at("involutions")[0], ds.name + " involution 1");
    RMat b2 = parse_matrix_2x2(chain.at("involutions")[1], ds.name + " involution 2");
    RMat m12 = parse_matrix_2x2(chain.at("pair_quotient"), ds.name + " pair_quotient");
    RMat te1 = ds.mat("TE1"), te2 = ds.mat("TE2");
    RMat n1 = unipotent_log(ds.mat("Tx")), n2 = unipotent_log(ds.mat("Ty"));
    GroupChainReport rep;
    for (int n = -n_range; n <= n_range; ++n) {
        RMat g1 = mpow(te1, n), g2 = mpow(te2, n);
        rep.tau_fixes_ok = rep.tau_fixes_ok && inverse(g1) * n2 * g1 == n2 &&
                           inverse(g2) * n1 * g2 == n1;
        rep.tau_quotient_ok = rep.tau_quotient_ok &&
                              quotient_action(ds, g1, n1, n2, w2) == mpow(b1, n) &&
                              quotient_action(ds, g2, n1, n2, w2) == mpow(b2, n);
        rep.pair_quotient_ok = rep.pair_quotient_ok &&
                               quotient_action(ds, mpow(te1 * te2, n), n1, n2, w2) == mpow(m12, n);
    }
    rep.squares_trivial_ok = quotient_action(ds, te1 * te1, n1, n2, w2) == RMat::identity(2) &&
                             quotient_action(ds, te2 * te2, n1, n2, w2) == RMat::identity(2);
    return rep;
}

// Rays of the glued cones in the quotient lattice, to a given depth, with
// the exact closure rays. Depth counts applications of the orbit matrix
// (groupoid cases) or word length in the involutions (group case).
inline QuotientFan quotient_fan(const MonodromyDataset& ds, int depth, const RMat& w2) {
    const Json& chain = ds.raw.at("chain");
    std::string type = chain.at("type").get<std::string>();
    std::set<std::pair<long, long>> rays;
    RMat orbit_for_closure(2, 2);
    if (type == "groupoid") {
        RMat orbit = parse_matrix_2x2(chain.at("orbit_matrix"), ds.name + " orbit_matrix");
        int power = chain.at("orbit_power").get<int>();
        orbit_for_closure = mpow(orbit, power);
        std::vector<std::pair<Rat, Rat>> base;
        for (const Json& r : chain.at("base_rays"))
            base.emplace_back(parse_rat(r[0].get<std::string>()), parse_rat(r[1].get<std::string>()));
        for (int n = -depth; n <= depth; ++n) {
            RMat b = mpow(orbit_for_closure, n);
            for (auto& [x, y] : base)
                rays.insert(primitive_ray(b(0, 0) * x + b(0, 1) * y, b(1, 0) * x + b(1, 1) * y));
        }
    } else if (type == "group") {
        RMat b1 = parse_matrix_2x2(chain.at("involutions")[0], ds.name + " involution 1");
        RMat b2 = parse_matrix_2x2(chain.at("involutions")[1], ds.name + " involution 2");
        orbit_for_closure = parse_matrix_2x2(chain.at("pair_quotient"), ds.name + " pair_quotient");
        std::vector<RMat> words{RMat::identity(2)};
        for (int len = 1; len <= depth; ++len)
            for (int start = 0; start < 2; ++start) {
                RMat w = RMat::identity(2);
                for (int k = 0; k < len; ++k) w = ((start + k) % 2 == 0 ? b1 : b2) * w;
                words.push_back(w);
            }
        for (const RMat& w : words)
            for (int gi = 0; gi < 2; ++gi)
                rays.insert(primitive_ray(w(0, gi), w(1, gi)));
    } else {
        throw SchemaError("unknown chain type '" + type + "'");
    }
    QuotientFan fan;
    fan.depth = depth;
    fan.rays.assign(rays.begin(), rays.end());
    std::sort(fan.rays.begin(), fan.rays.end(), ray_angle_less);
    auto [plus, minus] = eigenrays_2x2(orbit_for_closure);
    // The fan fills a salient sector (< 180 degrees), so the normalized ray
    // sum points into its interior; orient each eigen-direction outward and
    // label the counterclockwise bound "left".
    double sx = 0, sy = 0;
    for (auto& [rx, ry] : fan.rays) {
        double norm = std::sqrt(static_cast<double>(rx) * rx + static_cast<double>(ry) * ry);
        sx += rx / norm;
        sy += ry / norm;
    }
    auto orient = [&](QuadRay r) {
        if (r[0].to_double() * sx + r[1].to_double() * sy < 0) r = {-r[0], -r[1]};
        return r;
    };
    QuadRay a = orient(plus), b = orient(minus);
    double cross = a[0].to_double() * b[1].to_double() - a[1].to_double() * b[0].to_double();
    fan.closure_left = cross > 0 ? b : a;
    fan.closure_right = cross > 0 ? a : b;
    // (void)w2 kept in the signature so callers supply the quotient arena explicitly
    (void)w2;
    return fan;
}

// Word enumeration in tau_1, tau_2 classifying quotient actions. The
// quotient action is an antihomomorphism onto the infinite dihedral group
// generated by the two involution matrices, so a word acts trivially
// exactly when its exponent-parity reduction cancels, i.e. when it lies
// over the subgroup generated by tau_1^2 and tau_2^2.
struct StabilizerReport {
    int words_checked = 0;
    bool classification_ok = true;  // quotient matrix = dihedral image of the parity word
    bool squares_trivial_ok = true; // tau_1^2, tau_2^2 and their products act trivially
    bool pair_power_ok = true;      // tau_12^n acts by the printed matrix^n
};

inline StabilizerReport stabilizer_probe(const MonodromyDataset& ds, int max_len, const RMat& w2) {
    const Json& chain = ds.raw.at("chain");
    RMat m12 = parse_matrix_2x2(chain.at("pair_quotient"), ds.name + " pair_quotient");
    RMat binv[2] = {parse_matrix_2x2(chain.at("involutions")[0], "involution 1"),
                    parse_matrix_2x2(chain.at("involutions")[1], "involution 2")};
    RMat te[2] = {ds.mat("TE1"), ds.mat("TE2")};
    RMat n1 = unipotent_log(ds.mat("Tx")), n2 = unipotent_log(ds.mat("Ty"));
    StabilizerReport rep;
    // reduced words: alternating generator indices with nonzero exponents,
    // total letter count bounded by max_len
    std::vector<std::pair<int, int>> cur;
    std::function<void(int)> recurse = [&](int remaining) {
        if (!cur.empty()) {
            RMat g = RMat::identity(ds.dimension);
            for (auto& [gi, e] : cur) g = g * mpow(te[gi], e);
            RMat q = quotient_action(ds, g, n1, n2, w2);
            // conjugation reverses products, so the dihedral image multiplies
            // the involutions for the odd-exponent letters right to left
            RMat expected = RMat::identity(2);
            for (auto& [gi, e] : cur)
                if (e % 2) expected = binv[gi] * expected;
            rep.classification_ok = rep.classification_ok && q == expected;
            bool parity_trivial = true;
            for (auto& [gi, e] : cur) parity_trivial = parity_trivial && e % 2 == 0;
            if (parity_trivial)
                rep.squares_trivial_ok =
                    rep.squares_trivial_ok && q == RMat::identity(2);
            ++rep.words_checked;
        }
        if (remaining == 0) return;
        int last = cur.empty() ? -1 : cur.back().first;
        for (int gi = 0; gi < 2; ++gi) {
            if (gi == last) continue;
            for (int e = -remaining; e <= remaining; ++e) {
                if (e == 0) continue;
                cur.emplace_back(gi, e);
                recurse(remaining - std::abs(e));
                cur.pop_back();
            }
        }
    };
    recurse(max_len);
    for (int n = -3; n <= 3; ++n) {
        RMat g = mpow(te[0] * te[1], n);
        rep.pair_power_ok =
            rep.pair_power_ok && quotient_action(ds, g, n1, n2, w2) == mpow(m12, n);
    }
    return rep;
}

} // namespace nilcone
