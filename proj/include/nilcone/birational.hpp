#pragma once

#include <algorithm>
#include <set>
#include <vector>

#include "cones.hpp"
#include "dataset.hpp"

namespace nilcone {

// 2-d rational cone with primitive integer generators, coordinates in a
// named divisor basis (H1, H2).
struct Cone2 {
    std::pair<long, long> a, b;
};

inline Cone2 pullback_cone(const Cone2& c, const RMat& m) {
    if (det(m) == 0) throw Singular("pullback by singular map");
    auto apply = [&](const std::pair<long, long>& v) {
        return primitive_ray(m(0, 0) * Rat(v.first) + m(0, 1) * Rat(v.second),
                             m(1, 0) * Rat(v.first) + m(1, 1) * Rat(v.second));
    };
    return {apply(c.a), apply(c.b)};
}

// Composite A-side action of the connection chain, validated against the
// dataset's recorded 2x2 matrix; its spectrum must be irrational.
inline RMat rho_star(const MonodromyDataset& ds) {
    const Json& aside = ds.raw.at("aside");
    RMat recorded = parse_matrix_2x2(aside.at("rho"), "rho*");
    if (aside.contains("pullbacks")) {
        RMat phi21 = parse_matrix_2x2(aside.at("pullbacks").at("phi21"), "phi21*");
        RMat phi31 = parse_matrix_2x2(aside.at("pullbacks").at("phi31"), "phi31*");
        // phi32* is the phi21* matrix read in the intermediate bases; the chain
        // composes as phi21* . phi32* . (phi31*)^-1 on (H1, H2) coordinates
        RMat composed = phi21 * phi21 * inverse(phi31);
        if (composed != recorded) throw SchemaError("rho* pullback chain inconsistent with dataset");
    }
    Rat tr = recorded.trace();
    if (tr * tr <= 4) throw SchemaError("rho* not of infinite order");
    Rat disc = tr * tr - Rat(4) * det(recorded);
    long f = 1;
    if (squarefree_part(disc.get_num().get_si(), f) == 1)
        throw RationalSpectrum("rho* has rational eigenvalues");
    return recorded;
}

struct ChamberFan {
    std::vector<std::pair<long, long>> walls;  // angularly ordered primitive rays
    QuadRay closure_left, closure_right;
    int depth = 0;
};

namespace detail {
inline ChamberFan finish_fan(std::set<std::pair<long, long>>& rays, const RMat& orbit, int depth) {
    ChamberFan fan;
    fan.depth = depth;
    fan.walls.assign(rays.begin(), rays.end());
    std::sort(fan.walls.begin(), fan.walls.end(), ray_angle_less);
    auto [plus, minus] = eigenrays_2x2(orbit);
    double sx = 0, sy = 0;
    for (auto& [rx, ry] : fan.walls) {
        double n = std::sqrt(static_cast<double>(rx) * rx + static_cast<double>(ry) * ry);
        sx += rx / n;
        sy += ry / n;
    }
    auto orient = [&](QuadRay r) {
        if (r[0].to_double() * sx + r[1].to_double() * sy < 0) r = {-r[0], -r[1]};
        return r;
    };
    QuadRay a = orient(plus), b = orient(minus);
    double cross = a[0].to_double() * b[1].to_double() - a[1].to_double() * b[0].to_double();
    fan.closure_left = cross > 0 ? b : a;
    fan.closure_right = cross > 0 ? a : b;
    return fan;
}
} // namespace detail

// Movable-cone chamber walls to a given depth.
//  - groupoid cases: (rho*)^n applied to the fundamental domain
//    <4H2-H1, 4H1-H2> together with its interior walls H1, H2
//  - group case: orbit of the Kaehler walls under alternating words in
//    the two involutions
inline ChamberFan movable_chambers(const MonodromyDataset& ds, int depth) {
    if (depth < 0) throw DimensionMismatch("movable_chambers: negative depth");
    const Json& aside = ds.raw.at("aside");
    std::string type = aside.at("type").get<std::string>();
    std::set<std::pair<long, long>> rays;
    if (type == "groupoid") {
        RMat rs = rho_star(ds);
        const Json& chain = ds.raw.at("chain");
        std::vector<std::pair<Rat, Rat>> base;
        for (const Json& r : chain.at("base_rays"))
            base.emplace_back(parse_rat(r[0].get<std::string>()), parse_rat(r[1].get<std::string>()));
        for (int n = -depth; n <= depth; ++n) {
            RMat b = mpow(rs, n);
            for (auto& [x, y] : base)
                rays.insert(primitive_ray(b(0, 0) * x + b(0, 1) * y, b(1, 0) * x + b(1, 1) * y));
        }
        return detail::finish_fan(rays, rs, depth);
    }
    if (type == "group") {
        RMat b1 = parse_matrix_2x2(aside.at("involutions")[0], "involution 1");
        RMat b2 = parse_matrix_2x2(aside.at("involutions")[1], "involution 2");
        std::vector<RMat> words{RMat::identity(2)};
        for (int len = 1; len <= depth; ++len)
            for (int start = 0; start < 2; ++start) {
                RMat w = RMat::identity(2);
                for (int k = 0; k < len; ++k) w = ((start + k) % 2 == 0 ? b1 : b2) * w;
                words.push_back(w);
            }
        for (const RMat& w : words)
            for (int gi = 0; gi < 2; ++gi) rays.insert(primitive_ray(w(0, gi), w(1, gi)));
        return detail::finish_fan(rays, b2 * b1, depth);
    }
    throw SchemaError("unknown aside type '" + type + "'");
}

// Boundary slopes of the positive cone of a rank-2 lattice with an
// indefinite Gram matrix: solve (a, 1) G (a, 1)^t = 0 over Q(sqrt d).
inline std::pair<Quad, Quad> positive_cone_slopes(const RMat& gram) {
    Rat a = gram(0, 0), b = gram(0, 1) + gram(1, 0), c = gram(1, 1);
    Rat disc = b * b - Rat(4) * a * c;
    if (sgn(disc) <= 0) throw RationalSpectrum("Gram matrix not indefinite");
    // slopes are rational multiples of (-b +- sqrt(disc)) / 2a
    Rat disc_n = disc * disc.get_den() * disc.get_den();  // integer numerator scale
    long f = 1;
    long sf = squarefree_part(disc_n.get_num().get_si(), f);
    Rat root_scale = Rat(f) / Rat(disc.get_den());
    Quad s1((-b) / (Rat(2) * a), root_scale / (Rat(2) * a), sf);
    Quad s2((-b) / (Rat(2) * a), -root_scale / (Rat(2) * a), sf);
    if (s2 < s1) std::swap(s1, s2);
    return {s1, s2};
}

// The mirror dictionary (H1, H2) -> (N1bar, N2bar) as a 2x2 matrix carrying
// A-side wall coordinates to B-side quotient coordinates.
inline bool mirror_compare(const ChamberFan& a_fan, const QuotientFan& b_fan, const RMat& dict) {
    if (a_fan.depth != b_fan.depth) throw DepthMismatch("fans computed to different depths");
    if (a_fan.walls.size() != b_fan.rays.size()) return false;
    std::vector<std::pair<long, long>> mapped;
    for (auto& [x, y] : a_fan.walls)
        mapped.push_back(primitive_ray(dict(0, 0) * Rat(x) + dict(0, 1) * Rat(y),
                                       dict(1, 0) * Rat(x) + dict(1, 1) * Rat(y)));
    std::sort(mapped.begin(), mapped.end(), ray_angle_less);
    if (mapped != b_fan.rays) return false;
    auto map_quad = [&](const QuadRay& r) {
        return QuadRay{Quad(dict(0, 0)) * r[0] + Quad(dict(0, 1)) * r[1],
                       Quad(dict(1, 0)) * r[0] + Quad(dict(1, 1)) * r[1]};
    };
    return map_quad(a_fan.closure_left) == b_fan.closure_left &&
           map_quad(a_fan.closure_right) == b_fan.closure_right;
}

} // namespace nilcone
