#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "bigc.hpp"
#include "dataset.hpp"
#include "pfaffian.hpp"

namespace nilcone {

// Piecewise-linear path in C^2; circles enter as inscribed polygons (same
// homotopy class relative to the singular locus, margin-checked per chord).
struct PathSpec {
    struct Point {
        BigC x, y;
    };
    std::vector<Point> points;  // consecutive points joined by line segments

    bool closed() const {
        if (points.size() < 2) return false;
        const Point& a = points.front();
        const Point& b = points.back();
        return (a.x - b.x).abs2() == 0 && (a.y - b.y).abs2() == 0;
    }
};

struct TransportOptions {
    double step_ratio = 0.4;     // step <= ratio * distance to nearest singularity
    double margin = 1e-11;       // minimum allowed distance to the singular locus
                                 // (in segment-parameter units; admits the
                                 // deliberate y -> 0 descent of the E1 loop)
    int circle_segments = 24;
    long max_steps = 200000;
};

namespace detail {

using CPoly = std::vector<BigC>;  // coefficients in t, index = degree

inline CPoly cpoly_mul(const CPoly& a, const CPoly& b) {
    CPoly r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

// expand p(x0 + t dx, y0 + t dy) as a polynomial in t
inline CPoly poly2_in_t(const Poly2& p, const BigC& x0, const BigC& dx, const BigC& y0,
                        const BigC& dy) {
    int dmax = std::max(p.total_deg(), 0);
    std::vector<CPoly> xpow{{BigC(BigF(1))}}, ypow{{BigC(BigF(1))}};
    CPoly xl{x0, dx}, yl{y0, dy};
    for (int i = 1; i <= dmax; ++i) {
        xpow.push_back(cpoly_mul(xpow.back(), xl));
        ypow.push_back(cpoly_mul(ypow.back(), yl));
    }
    CPoly out(dmax + 1);
    for (auto& [e, c] : p.t) {
        CPoly term = cpoly_mul(xpow[e.first], ypow[e.second]);
        BigC cc(big_from_rat(c));
        for (size_t i = 0; i < term.size(); ++i) {
            if (i >= out.size()) out.resize(i + 1);
            out[i] += term[i] * cc;
        }
    }
    return out;
}

// Taylor shift: q(s) = p(t0 + s) by repeated synthetic division
inline CPoly cpoly_shift(const CPoly& p, const BigF& t0) {
    CPoly w = p;
    BigC shift(t0);
    int d = static_cast<int>(p.size()) - 1;
    for (int k = 0; k < d; ++k)
        for (int i = d - 1; i >= k; --i) w[i] += w[i + 1] * shift;
    return w;
}

inline std::vector<std::complex<double>> cpoly_roots(const CPoly& p) {
    // trim trailing ~zero coefficients relative to the largest
    double maxc = 0;
    for (auto& c : p) maxc = std::max(maxc, std::abs(c.to_complex()));
    if (maxc == 0) return {};
    int deg = static_cast<int>(p.size()) - 1;
    while (deg > 0 && std::abs(p[deg].to_complex()) < 1e-14 * maxc) --deg;
    if (deg == 0) return {};
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(deg, deg);
    std::complex<double> lead = p[deg].to_complex();
    for (int i = 0; i < deg; ++i) {
        comp(i, deg - 1) = -p[i].to_complex() / lead;
        if (i + 1 < deg) comp(i + 1, i) = 1.0;
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
    std::vector<std::complex<double>> roots;
    for (int i = 0; i < deg; ++i) roots.push_back(es.eigenvalues()(i));
    return roots;
}

} // namespace detail

// Transfer matrix of the flat connection along one straight segment, by
// adaptive Taylor stepping; F(start) = I.
inline CMat transport_segment(const PfaffianSystem& sys, const PathSpec::Point& p0,
                              const PathSpec::Point& p1, int prec_bits,
                              const TransportOptions& opt) {
    int n = sys.rank();
    BigC dx = p1.x - p0.x, dy = p1.y - p0.y;
    bool move_x = dx.abs2() != 0, move_y = dy.abs2() != 0;
    if (!move_x && !move_y) return CMat::identity(n);

    // numerators and denominator as polynomials in t over [0, 1]
    // M(t) = [dx Nx y + dy Ny x] / (x y delta) (y factors dropped for
    // one-variable systems)
    auto in_t = [&](const Poly2& p) {
        return detail::poly2_in_t(p, p0.x, dx, sys.uses_y ? p0.y : BigC(BigF(1)),
                                  sys.uses_y ? dy : BigC());
    };
    detail::CPoly xl{p0.x, dx}, yl{p0.y, dy};
    detail::CPoly den = detail::cpoly_mul(in_t(sys.delta), xl);
    if (sys.uses_y) den = detail::cpoly_mul(den, yl);
    std::vector<std::vector<detail::CPoly>> num(n, std::vector<detail::CPoly>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            detail::CPoly acc{BigC()};
            if (move_x) {
                detail::CPoly t = detail::cpoly_mul(in_t(sys.nx[i][j]), sys.uses_y ? yl : detail::CPoly{BigC(BigF(1))});
                for (auto& c : t) c = c * dx;
                acc.resize(std::max(acc.size(), t.size()));
                for (size_t k = 0; k < t.size(); ++k) acc[k] += t[k];
            }
            if (move_y && sys.uses_y) {
                detail::CPoly t = detail::cpoly_mul(in_t(sys.ny[i][j]), xl);
                for (auto& c : t) c = c * dy;
                acc.resize(std::max(acc.size(), t.size()));
                for (size_t k = 0; k < t.size(); ++k) acc[k] += t[k];
            }
            num[i][j] = acc;
        }

    auto roots = detail::cpoly_roots(den);
    auto dist_to_locus = [&](double t) {
        double d = 1e300;
        for (auto& r : roots) d = std::min(d, std::abs(r - std::complex<double>(t, 0)));
        return d;
    };
    // margin check along the segment
    for (int s = 0; s <= 32; ++s)
        if (dist_to_locus(s / 32.0) < opt.margin)
            throw SingularityTooClose("segment passes within margin of the singular locus");

    CMat f = CMat::identity(n);
    double t = 0;
    long steps = 0;
    while (t < 1.0) {
        if (++steps > opt.max_steps) throw PrecisionExhausted("step limit exceeded");
        double dist = dist_to_locus(t);
        if (dist < opt.margin) throw SingularityTooClose("stepped within margin of singular locus");
        double h = std::min(opt.step_ratio * dist, 1.0 - t);
        double ratio = h / dist;
        int order = ratio >= 1.0 ? -1
                                 : static_cast<int>(prec_bits / std::log2(1.0 / ratio)) + 12;
        if (order < 0 || order > 4000) throw PrecisionExhausted("Taylor order out of range");

        // shift polynomials to the local parameter s = t' - t
        BigF t0(t);
        detail::CPoly dloc = detail::cpoly_shift(den, t0);
        std::vector<std::vector<detail::CPoly>> nloc(n, std::vector<detail::CPoly>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) nloc[i][j] = detail::cpoly_shift(num[i][j], t0);

        // series inverse of the denominator
        int K = order;
        std::vector<BigC> dinv(K + 1);
        dinv[0] = BigC(BigF(1)) / dloc[0];
        for (int k = 1; k <= K; ++k) {
            BigC s;
            for (int j = 1; j <= k && j < static_cast<int>(dloc.size()); ++j)
                s += dloc[j] * dinv[k - j];
            dinv[k] = -(dinv[0] * s);
        }
        // connection series M_k and solution recurrence
        std::vector<CMat> mser(K + 1, CMat(n, n));
        for (int k = 0; k <= K; ++k)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    BigC s;
                    const detail::CPoly& nl = nloc[i][j];
                    for (int l = 0; l <= k && l < static_cast<int>(nl.size()); ++l)
                        s += nl[l] * dinv[k - l];
                    mser[k](i, j) = s;
                }
        std::vector<CMat> fser(K + 2, CMat(n, n));
        fser[0] = f;
        for (int k = 0; k <= K; ++k) {
            CMat acc(n, n);
            for (int j = 0; j <= k; ++j) acc = acc + mser[j] * fser[k - j];
            fser[k + 1] = acc.scaled(BigC(BigF(1) / (k + 1)));
        }
        // evaluate at s = h (Horner)
        BigC hh{BigF(h)};
        CMat val = fser[K + 1];
        for (int k = K; k >= 0; --k) val = val.scaled(hh) + fser[k];
        f = val;
        t += h;
    }
    return f;
}

inline CMat transport(const PfaffianSystem& sys, const PathSpec& path, int prec_bits,
                      const TransportOptions& opt = {}) {
    PrecisionContext prec(prec_bits);
    if (path.points.size() < 2) throw DimensionMismatch("path needs at least 2 points");
    CMat f = CMat::identity(sys.rank());
    for (size_t i = 0; i + 1 < path.points.size(); ++i)
        f = transport_segment(sys, path.points[i], path.points[i + 1], prec_bits, opt) * f;
    return f;
}

// ---------- path builders ----------

// counterclockwise inscribed polygon starting (and exactly ending) at
// center + radius
inline std::vector<BigC> circle_polygon(const BigC& center, const BigF& radius, int segments,
                                        bool clockwise) {
    std::vector<BigC> pts;
    BigF pi = atan(BigF(1)) * 4;
    for (int k = 0; k < segments; ++k) {
        BigF ang = pi * 2 * k / segments;
        if (clockwise) ang = -ang;
        pts.push_back(center + BigC(radius * cos(ang), radius * sin(ang)));
    }
    pts.push_back(pts.front());
    return pts;
}

struct LoopInvariants {
    std::vector<BigC> char_poly;  // monic coefficients
    BigF det_modulus;
    int prec_bits = 0;
};

// Closed loop named in the dataset's transport section, realized as a
// polyline based at the dataset base point.
inline PathSpec dataset_loop(const MonodromyDataset& ds, const std::string& loop_name,
                             int prec_bits, const TransportOptions& opt = {}) {
    PrecisionContext prec(prec_bits);
    const Json& tr = ds.raw.at("transport");
    Rat bx = parse_rat(tr.at("base")[0].get<std::string>());
    Rat by = parse_rat(tr.at("base")[1].get<std::string>());
    const Json& loops = tr.at("loops");
    if (!loops.contains(loop_name)) throw UnknownCase("no loop '" + loop_name + "' in dataset");
    const Json& spec = loops.at(loop_name);
    std::string kind = spec.at("kind").get<std::string>();
    BigC base_x{big_from_rat(bx)}, base_y{big_from_rat(by)};
    Rat center = parse_rat(spec.at("center").get<std::string>());
    Rat radius = parse_rat(spec.at("radius").get<std::string>());

    PathSpec path;
    auto add = [&](const BigC& x, const BigC& y) { path.points.push_back({x, y}); };
    if (kind == "circle-x") {
        Rat yv = parse_rat(spec.at("y").get<std::string>());
        BigC yc{big_from_rat(yv)};
        BigC cx{big_from_rat(center)};
        BigF rad = big_from_rat(radius);
        BigC start = cx + BigC(rad);  // circle starts at center + radius
        add(base_x, base_y);
        if (yv != by) add(base_x, yc);
        if (spec.contains("approach_im")) {
            BigF im = big_from_rat(parse_rat(spec.at("approach_im").get<std::string>()));
            add(BigC(base_x.re, im), yc);
            add(BigC(start.re, im), yc);
        }
        add(start, yc);
        for (const BigC& p : circle_polygon(cx, rad, opt.circle_segments, false))
            add(p, yc);
        // retrace the approach
        if (spec.contains("approach_im")) {
            BigF im = big_from_rat(parse_rat(spec.at("approach_im").get<std::string>()));
            add(BigC(start.re, im), yc);
            add(BigC(base_x.re, im), yc);
        }
        add(base_x, yc);
        if (yv != by) add(base_x, base_y);
        return path;
    }
    if (kind == "circle-y") {
        Rat xv = parse_rat(spec.at("x").get<std::string>());
        BigC xc{big_from_rat(xv)};
        BigC cy{big_from_rat(center)};
        BigF rad = big_from_rat(radius);
        BigC start = cy + BigC(rad);
        add(base_x, base_y);
        if (xv != bx) add(xc, base_y);
        add(xc, start);
        for (const BigC& p : circle_polygon(cy, rad, opt.circle_segments, false))
            add(xc, p);
        add(base_x, base_y);
        return path;
    }
    throw SchemaError("unknown loop kind '" + kind + "'");
}

inline LoopInvariants loop_invariants(const CMat& m, int prec_bits) {
    LoopInvariants inv;
    inv.char_poly = char_poly_numeric(m);
    inv.det_modulus = cdet(m).abs();
    inv.prec_bits = prec_bits;
    return inv;
}

inline std::pair<CMat, LoopInvariants> loop_monodromy(const PfaffianSystem& sys,
                                                      const PathSpec& loop, int prec_bits,
                                                      const TransportOptions& opt = {}) {
    if (!loop.closed()) throw DimensionMismatch("loop is not closed");
    CMat m = transport(sys, loop, prec_bits, opt);
    PrecisionContext prec(prec_bits);
    return {m, loop_invariants(m, prec_bits)};
}

// Evaluate a word (same DSL as the exact layer, without dual()) over
// numerically computed loop matrices.
inline CMat compose_word_numeric(const std::string& word,
                                 const std::map<std::string, CMat>& names) {
    auto factors = parse_word(word);
    int dim = names.empty() ? 0 : names.begin()->second.r;
    CMat acc;
    bool started = false;
    for (const auto& f : factors) {
        CMat m;
        if (f.identity) {
            if (dim == 0) throw NotComposable("@identity with no named matrices in scope");
            m = CMat::identity(dim);
        } else {
            auto it = names.find(f.name);
            if (it == names.end()) throw UnknownGenerator("'" + f.name + "' in word '" + word + "'");
            m = it->second;
            if (f.dual) throw NotComposable("dual() unsupported on numeric loops");
            long e = f.exponent;
            if (e < 0) {
                m = cinverse(m);
                e = -e;
            }
            CMat p = CMat::identity(m.r);
            for (long k = 0; k < e; ++k) p = p * m;
            m = p;
        }
        if (!started) {
            acc = m;
            started = true;
        } else {
            acc = acc * m;
        }
    }
    if (!started) {
        if (dim == 0) throw NotComposable("empty word with no named matrices in scope");
        return CMat::identity(dim);
    }
    return acc;
}

struct NumericRelationReport {
    std::string name;
    double deviation = 0;
    double tol = 0;
    bool verdict = false;
};

inline NumericRelationReport numeric_relation_check(const std::map<std::string, CMat>& loops,
                                                    const std::string& name,
                                                    const std::string& lhs,
                                                    const std::string& rhs, int prec_bits,
                                                    double tol) {
    PrecisionContext prec(prec_bits);
    CMat l = compose_word_numeric(lhs, loops);
    CMat r = compose_word_numeric(rhs, loops);
    NumericRelationReport rep;
    rep.name = name;
    rep.deviation = static_cast<double>(max_deviation(l, r));
    rep.tol = tol;
    rep.verdict = rep.deviation < tol;
    return rep;
}

} // namespace nilcone
