#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "birational.hpp"
#include "cones.hpp"
#include "couplings.hpp"
#include "dataset.hpp"
#include "filtration.hpp"
#include "pfaffian.hpp"
#include "report.hpp"
#include "series.hpp"
#include "transport.hpp"

namespace nilcone {

struct VerifyOptions {
    std::string data_dir =
#ifdef NILCONE_DATA_DIR
        NILCONE_DATA_DIR;
#else
        "data";
#endif
    int prec_bits = 256;
    double tol = 1e-10;
};

inline RMat w2_basis(const MonodromyDataset& ds) {
    const BoundaryPoint& pt = ds.points.at(0);
    RMat nsum(ds.dimension, ds.dimension);
    for (auto& g : pt.generators) nsum = nsum + unipotent_log(ds.mat(g));
    return weight_filtration(nsum, ds.weight_center).w(2);
}

namespace suites {

inline std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

inline std::string mat_digest(const RMat& m) {
    std::string out;
    for (int i = 0; i < m.r; ++i)
        for (int j = 0; j < m.c; ++j)
            if (m(i, j) != 0)
                out += "[" + std::to_string(i) + "][" + std::to_string(j) + "]=" +
                       rat_str(m(i, j)) + " ";
    return out.empty() ? "0" : out;
}

inline void symplectic(const MonodromyDataset& ds, Report& rep) {
    std::string law = ds.form.column_action ? "tM J M = J" : "M G tM = G";
    for (auto& [name, m] : ds.matrices) {
        if (name == "p23" || name == "p45") continue;  // frame permutations, handled as a pair
        rep.add("form-" + name, law + " for " + name, preserves_form(m, ds.form));
    }
    if (ds.has("p23") && ds.has("p45"))
        rep.add("form-p23p45", law + " for the frame symmetry p23*p45 (the individual "
                               "permutation factors are not form-preserving)",
                preserves_form(ds.mat("p23") * ds.mat("p45"), ds.form));
}

inline void lcsl(const MonodromyDataset& ds, Report& rep) {
    int r = static_cast<int>(ds.points.at(0).generators.size());
    for (const BoundaryPoint& pt : ds.points) {
        std::vector<RMat> gens;
        for (auto& g : pt.generators) gens.push_back(ds.mat(g));
        LCSLReport lr = lcsl_verify(gens, ds.weight_center);
        std::ostringstream w;
        w << "dims (";
        for (size_t i = 0; i < lr.filtration_dims.size(); ++i)
            w << (i ? "," : "") << lr.filtration_dims[i];
        w << "), det m = " << rat_str(lr.m_det);
        rep.add("lcsl-" + pt.name,
                "boundary point " + pt.name + " is a large complex structure limit: unipotent "
                "generators, weight dims start (1," + std::to_string(1 + r) +
                "), invertible m-matrix",
                lr.verdict, w.str());
    }
    if (ds.dimension == 6) {
        // unipotency depth of the coordinate monodromies
        for (const char* nm : {"Tx", "Ty"}) {
            RMat u = ds.mat(nm) - RMat::identity(6);
            rep.add(std::string("unipotency-") + nm,
                    std::string("(") + nm + " - I)^3 != 0 and (" + nm + " - I)^4 = 0",
                    !mpow(u, 3).is_zero() && mpow(u, 4).is_zero());
        }
        // W2 is the span of the first three basis vectors for interior rays
        RMat n1 = unipotent_log(ds.mat(ds.points[0].generators[0]));
        RMat n2 = unipotent_log(ds.mat(ds.points[0].generators[1]));
        RMat e012(6, 3);
        for (int i = 0; i < 3; ++i) e012(i, i) = 1;
        bool span_ok = true;
        for (auto [l1, l2] : {std::pair{1, 1}, {1, 2}, {2, 1}}) {
            Filtration f = weight_filtration(n1 * Rat(l1) + n2 * Rat(l2), ds.weight_center);
            span_ok = span_ok && same_colspan(f.w(2), e012);
        }
        rep.add("w2-span", "W2 = <alpha0, alpha1, alpha2> for three interior rays of the cone",
                span_ok);
    }
    if (ds.name == "p3p3") {
        RMat te1 = ds.mat("TE1");
        RMat sq = mpow(te1, 2) - RMat::identity(6);
        bool single = sq(1, 4) == 96;
        for (int i = 0; i < 6 && single; ++i)
            for (int j = 0; j < 6; ++j)
                if ((i != 1 || j != 4) && sq(i, j) != 0) single = false;
        rep.add("te1-quasi", "TE1 is quasi-unipotent of order exactly 2",
                quasi_unipotency_order(te1, 12) == 2);
        rep.add("te1-square", "TE1^2 - I has the single entry 96 (alpha1 -> alpha1 + 96 beta1)",
                single, mat_digest(sq));
    }
    if (ds.name == "p4p4") {
        RMat d = ds.mat("TE1") - RMat::identity(6);
        bool single = d(1, 4) == 50;
        for (int i = 0; i < 6 && single; ++i)
            for (int j = 0; j < 6; ++j)
                if ((i != 1 || j != 4) && d(i, j) != 0) single = false;
        rep.add("te1-picard-lefschetz",
                "TE1 - I has the single entry 50 (alpha1 -> alpha1 + 50 beta1)", single,
                mat_digest(d));
    }
    if (ds.name == "k3")
        rep.add("te1-trivial", "the exceptional monodromy is trivial: TE1 = id",
                ds.mat("TE1") == RMat::identity(ds.dimension));
}

inline void relations(const MonodromyDataset& ds, Report& rep) {
    for (const RelationSpec& rel : ds.relations)
        rep.add("rel-" + rel.name, "relation " + rel.lhs + " = " + rel.rhs,
                verify_relation(rel, ds));
    if (ds.name == "k3")
        rep.add("exceptional-trivial", "note: the exceptional monodromies are trivial, TE1 = id, "
                                       "so the primed relations need no exceptional factor",
                ds.mat("TE1") == RMat::identity(ds.dimension));
    if (ds.name == "p4p4") {
        // Misprint: with row 1 of the period-frame Ty-hat read as
        // (1,1,0,0,0,0), the symplectic law and the boxed relations all break;
        // the dataset carries the repaired row (0,1,0,0,0,0) forced by the
        // x<->y symmetry p23 p45 Tx p23 p45.
        RMat bad = ds.mat("Tyh");
        bad(1, 0) = 1;
        bool breaks = !preserves_form(bad, ds.form);
        RMat ty_bad = dual_action(bad);
        RMat typ_bad = inverse(ds.mat("phi21")) * ty_bad * ds.mat("phi21");
        breaks = breaks && typ_bad != ty_bad;  // boxed Ty' = Ty fails too
        if (breaks)
            rep.flag("tyh-misprint",
                     "published row 1 of the period-frame Ty reads (1,1,0,0,0,0); the "
                     "symplectic law and the boxed relation Ty' = Ty force (0,1,0,0,0,0)",
                     "dataset uses the repaired row; the published row breaks tM J M = J");
        else
            rep.add("tyh-misprint", "expected misprint signature in the published Ty row", false);
        // phi13 inconsistency: the verbal formula p23 p45 phi21 p23 p45
        // differs from the published phi13 matrix at entry [2][3]; only the
        // published matrix satisfies the boxed Ty'' relation.
        RMat pq = ds.mat("p23") * ds.mat("p45");
        RMat candidate = pq * ds.mat("phi21") * pq;
        RMat printed = ds.mat("phi13");
        RMat diff = printed - candidate;
        bool at23 = !diff.is_zero() && diff(2, 3) != 0;
        RMat phi31c = inverse(candidate);
        RMat typp_c = inverse(phi31c) * ds.mat("Ty") * phi31c;
        RMat typp_expect = ds.eval("TE1pp^-1 * Ty^-1 * Tx^4");
        bool candidate_fails = typp_c != typp_expect;
        bool printed_holds = verify_relation({"", "Typp", "TE1pp^-1 * Ty^-1 * Tx^4"}, ds);
        if (at23 && candidate_fails && printed_holds)
            rep.flag("phi13-formula",
                     "the stated identity phi13 = p23 p45 phi21 p23 p45 disagrees with the "
                     "published phi13 at entry [2][3]; the published matrix is the one that "
                     "satisfies the boxed Ty'' relation",
                     "difference " + mat_digest(diff));
        else
            rep.add("phi13-formula", "expected phi13 discrepancy signature", false);
        rep.add("phi32-formula", "phi32 = phi21 p23 p45 holds exactly",
                ds.mat("phi32") == ds.mat("phi21") * pq);
    }
}

inline std::string profile_str(const std::array<Rat, 4>& p) {
    return "(" + rat_str(p[0]) + "," + rat_str(p[1]) + "," + rat_str(p[2]) + "," + rat_str(p[3]) +
           ")";
}

inline void couplings_suite(const MonodromyDataset& ds, Report& rep) {
    const Json& spec = ds.raw.at("couplings");
    RMat n0 = rank_one_n0(ds.dimension);
    if (ds.name == "k3") {
        std::vector<RMat> gens{unipotent_log(ds.mat("Tx")), unipotent_log(ds.mat("Ty"))};
        RMat c = extract_couplings_quadratic(gens, n0);
        RMat expect(2, 2);
        const Json& arr = spec.at("o1");
        expect(0, 0) = parse_rat(arr[0].get<std::string>());
        expect(0, 1) = parse_rat(arr[1].get<std::string>());
        expect(1, 0) = parse_rat(arr[2].get<std::string>());
        expect(1, 1) = parse_rat(arr[3].get<std::string>());
        rep.add("couplings-quadratic",
                "pair products N_i N_j = C_ij N0 with C = (-4,-6,-6,-4) (minus the rank-2 Gram)",
                c == expect, mat_digest(c));
        return;
    }
    long k = ds.raw.at("flop").at("k").get<long>();
    auto tensor_at = [&](const std::vector<std::string>& gen_names) {
        std::vector<RMat> gens;
        for (auto& g : gen_names) gens.push_back(unipotent_log(ds.mat(g)));
        return extract_couplings(gens, n0);
    };
    auto expect_of = [&](const std::string& key) {
        std::array<Rat, 4> e;
        const Json& arr = spec.at(key);
        for (int i = 0; i < 4; ++i) e[i] = parse_rat(arr[i].get<std::string>());
        return e;
    };
    CouplingTensor base;
    bool have_base = false;
    for (auto& [key, arr] : spec.items()) {
        CouplingTensor t;
        if (key == "flop") {
            if (!have_base) throw SchemaError("flop couplings listed before a frame");
            RMat jac(2, 2);
            jac(0, 0) = -1; jac(0, 1) = 0; jac(1, 0) = Rat(k); jac(1, 1) = 1;
            t = coupling_transform(base, jac);
        } else if (key == "exceptional-frame") {
            RMat te1 = ds.mat("TE1");
            std::vector<RMat> gens{
                unipotent_log(inverse(te1) * ds.mat("Tx") * te1),
                unipotent_log(inverse(te1) * ds.mat("Ty") * te1)};
            t = extract_couplings(gens, n0);
        } else {
            const BoundaryPoint* pt = nullptr;
            for (auto& p : ds.points)
                if (p.name == key || (key == "origin" && p.name == "origin")) pt = &p;
            if (!pt) throw SchemaError("couplings frame '" + key + "' has no boundary point");
            t = tensor_at(pt->generators);
            if (!have_base) { base = t; have_base = true; }
        }
        auto prof = t.diag_profile();
        std::string anchor =
            key == "flop"
                ? "flopped couplings via the cubic pullback by dt/dt' = [[-1,0],[" +
                      std::to_string(k) + ",1]]"
                : "couplings (C111,C112,C122,C222) in the " + key + " frame from N_i N_j N_k = "
                  "C_ijk N0";
        rep.add("couplings-" + key, anchor, prof == expect_of(key), profile_str(prof));
    }
}

inline void gluing(const MonodromyDataset& ds, Report& rep, const RMat& w2) {
    const Json& chain = ds.raw.at("chain");
    std::string type = chain.at("type").get<std::string>();
    if (type == "groupoid") {
        ChainReport cr = cone_chain_groupoid(ds, -5, 5, w2);
        rep.add("chain-gluing", "the three boundary cones glue sequentially along the "
                                "conjugated chain for n in [-5,5]",
                cr.gluing_ok);
        rep.add("chain-adjacency", "consecutive chambers share exactly one generator and span "
                                   "rank 3 together",
                cr.adjacency_ok);
        rep.add("chain-quotient", "quotient coordinates of the conjugated generators follow "
                                  "the printed orbit-matrix powers",
                cr.quotient_coords_ok);
        if (ds.raw.contains("delta")) {
            RMat n1 = unipotent_log(ds.mat("Tx")), n2 = unipotent_log(ds.mat("Ty"));
            RMat d1 = unipotent_log(ds.mat("Txp")) - (n2 * Rat(4) - n1);
            RMat exp1 = parse_matrix(ds.raw["delta"]["prime10"], 6, "delta prime10");
            rep.add("delta-prime", "Delta'_{1,0} = log Tx' - (4 N2 - N1) matches the printed "
                                   "correction matrix and vanishes on W2",
                    d1 == exp1 && (d1 * w2).is_zero(), mat_digest(d1));
            RMat d2 = unipotent_log(ds.mat("Typp")) - (n1 * Rat(4) - n2);
            RMat exp2 = parse_matrix(ds.raw["delta"]["second20"], 6, "delta second20");
            RMat pq = ds.mat("p23") * ds.mat("p45");
            rep.add("delta-second", "Delta''_{2,0} matches the printed matrix, vanishes on W2, "
                                    "and equals p23 p45 Delta' p23 p45",
                    d2 == exp2 && (d2 * w2).is_zero() && d2 == pq * d1 * pq, mat_digest(d2));
        }
        return;
    }
    // group case (p3p3)
    GroupChainReport gr = cone_chain_group(ds, 5, w2);
    rep.add("tau-fixes", "tau_E1^n(N2) = N2 and tau_E2^n(N1) = N1 for |n| <= 5", gr.tau_fixes_ok);
    rep.add("tau-quotient", "tau_Ei^n act on the quotient by the involution matrix powers",
            gr.tau_quotient_ok);
    rep.add("tau-pair", "tau_12^n acts on the quotient by [[35,6],[-6,-1]]^n",
            gr.pair_quotient_ok);
    rep.add("tau-squares", "tau_E1^2, tau_E2^2 act trivially on the quotient",
            gr.squares_trivial_ok);
    StabilizerReport sr = stabilizer_probe(ds, 4, w2);
    rep.add("stabilizer", "every reduced word in tau_E1, tau_E2 (length <= 4) acts on the "
                          "quotient by its infinite-dihedral image",
            sr.classification_ok && sr.squares_trivial_ok && sr.pair_power_ok,
            std::to_string(sr.words_checked) + " words checked");
    // tau-power correction matrices
    RMat te1 = ds.mat("TE1");
    RMat n1 = unipotent_log(ds.mat("Tx")), n2 = unipotent_log(ds.mat("Ty"));
    RMat b1 = parse_matrix_2x2(chain.at("involutions")[0], "involution 1");
    auto delta_n = [&](int n) {
        RMat g = mpow(te1, n), bn = mpow(b1, n);
        return inverse(g) * n1 * g - (n1 * bn(0, 0) + n2 * bn(1, 0));
    };
    RMat d1 = delta_n(1);
    RMat exp1(6, 6);
    exp1(0, 4) = 48; exp1(0, 5) = Rat(-44, 3); exp1(1, 4) = -112; exp1(1, 5) = 48;
    rep.add("delta-odd", "Delta_1 = tau_E1(N1) + N1 - 6 N2 has block ((48,-44/3),(-112,48)) "
                         "and vanishes on W2",
            d1 == exp1 && (d1 * w2).is_zero(), mat_digest(d1));
    rep.flag("delta-odd-published",
             "the published tau-power proposition prints entry -122 where the matrices give "
             "-112 (consistent with the printed Delta_1 display)",
             "computed " + rat_str(d1(1, 4)) + ", published claim -122");
    bool even_ok = true;
    for (int m = 1; m <= 2; ++m) {
        RMat d = delta_n(2 * m);
        RMat expect(6, 6);
        expect(0, 4) = Rat(-96) * m;
        expect(1, 5) = Rat(-96) * m;
        even_ok = even_ok && d == expect && (d * w2).is_zero();
    }
    rep.add("delta-even", "Delta_{2m} = -96 m Id on the (alpha, beta)-block, zero elsewhere",
            even_ok);
}

inline std::string quad_ray_text(const QuadRay& r) { return ray_str(r); }

inline void rays(const MonodromyDataset& ds, Report& rep, const RMat& w2) {
    long disc = ds.raw.at("closure_disc").get<long>();
    QuadRay left = parse_quad_ray(ds.raw.at("closure_rays")[0], disc, ds.name);
    QuadRay right = parse_quad_ray(ds.raw.at("closure_rays")[1], disc, ds.name);
    QuotientFan fan = quotient_fan(ds, 3, w2);
    std::ostringstream rw;
    for (auto& [a, b] : fan.rays) rw << "(" << a << "," << b << ") ";
    rep.add("fan-closure", "depth-3 quotient fan closes up to the eigen-directions " +
                               quad_ray_text(left) + " and " + quad_ray_text(right),
            fan.closure_left == left && fan.closure_right == right,
            "left " + quad_ray_text(fan.closure_left) + ", right " +
                quad_ray_text(fan.closure_right));
    // closure rays are exact eigenrays of the orbit/pair matrix
    RMat orbit(2, 2);
    const Json& chain = ds.raw.at("chain");
    if (chain.at("type").get<std::string>() == "groupoid")
        orbit = mpow(parse_matrix_2x2(chain.at("orbit_matrix"), "orbit"),
                     chain.at("orbit_power").get<int>());
    else
        orbit = parse_matrix_2x2(chain.at("pair_quotient"), "pair quotient");
    rep.add("closure-eigen", "both closure rays are exact eigen-solutions of the glued orbit "
                             "matrix over Q(sqrt " + std::to_string(disc) + ")",
            is_eigenray(orbit, left) && is_eigenray(orbit, right));
    rep.add("fan-rays", "the depth-3 fan contains the coordinate rays (1,0) and (0,1)",
            std::count(fan.rays.begin(), fan.rays.end(), std::pair<long, long>{1, 0}) == 1 &&
                std::count(fan.rays.begin(), fan.rays.end(), std::pair<long, long>{0, 1}) == 1,
            rw.str());
    ChamberFan afan = movable_chambers(ds, 3);
    bool aside_ok = true;
    if (ds.raw.at("aside").at("type").get<std::string>() == "groupoid") {
        for (const Json& r : ds.raw.at("chain").at("base_rays")) {
            std::pair<long, long> ray{std::stol(r[0].get<std::string>()),
                                      std::stol(r[1].get<std::string>())};
            aside_ok = aside_ok &&
                       std::count(afan.walls.begin(), afan.walls.end(), ray) == 1;
        }
    } else {
        for (auto ray : {std::pair<long, long>{1, 0}, {0, 1}, {-1, 6}, {6, -1}})
            aside_ok = aside_ok && std::count(afan.walls.begin(), afan.walls.end(), ray) == 1;
    }
    rep.add("movable-walls", "the depth-3 movable fan contains the transformed Kaehler walls",
            aside_ok);
    if (ds.name == "p3p3") {
        QuadRay published{Quad(Rat(1)), Quad(Rat(3), Rat(-2), 2)};  // 1, 3 - 2 sqrt2
        bool published_not_eigen = !is_eigenray(orbit, published);
        if (published_not_eigen)
            rep.flag("closure-published",
                     "the published right closure ray N1 + (3-2*sqrt2) N2 is not an eigenray "
                     "of [[35,6],[-6,-1]]; the fan bounds at N1 + (-3+2*sqrt2) N2",
                     "dataset carries the eigen-verified ray " + quad_ray_text(right));
        else
            rep.add("closure-published", "expected sign slip in the published closure ray", false);
    }
}

inline void series_suite(const MonodromyDataset& ds, Report& rep) {
    if (ds.raw.contains("series")) {
        const Json& ser = ds.raw.at("series");
        std::map<std::string, std::string> d1s, d2s;
        for (auto& [k, v] : ser.at("operators").at("D1").items()) d1s[k] = v.get<std::string>();
        for (auto& [k, v] : ser.at("operators").at("D2").items()) d2s[k] = v.get<std::string>();
        ThetaOperator d1 = parse_theta_operator(d1s), d2 = parse_theta_operator(d2s);
        PSeries w0 = w0_series(12);
        rep.add("w0-annihilation-1", "the order-2 operator annihilates the holomorphic "
                                     "solution w0 exactly through degree 11",
                apply_theta(d1, w0).zero_through(11));
        rep.add("w0-annihilation-2", "the order-3 operator annihilates w0 exactly through "
                                     "degree 10",
                apply_theta(d2, w0).zero_through(10));
        // discriminant reconstruction and tangency
        Poly2 dis0;
        for (auto& [k, v] : ser.at("dis0").items()) {
            size_t comma = k.find(',');
            dis0 = dis0 + Poly2::monomial(parse_rat(v.get<std::string>()),
                                          std::stoi(k.substr(0, comma)),
                                          std::stoi(k.substr(comma + 1)));
        }
        Poly2 u = Poly2(Rat(1)) - Poly2::monomial(Rat(4), 1, 0) - Poly2::monomial(Rat(4), 0, 1);
        Poly2 closed = u * u * u * u -
                       Poly2::monomial(Rat(128), 1, 1) *
                           (Poly2(Rat(17)) +
                            (Poly2::monomial(Rat(1), 1, 0) + Poly2::monomial(Rat(1), 0, 1)) * Rat(56) +
                            (Poly2::monomial(Rat(1), 2, 0) + Poly2::monomial(Rat(1), 0, 2)) * Rat(16));
        rep.add("dis0-closed-form", "the principal discriminant equals "
                                    "(1-4x-4y)^4 - 128xy(17+56(x+y)+16(x^2+y^2))",
                dis0 == closed);
        Rat x_at = parse_rat(ser.at("tangency").at("x_at").get<std::string>());
        int mult = ser.at("tangency").at("multiplicity").get<int>();
        rep.add("tangency", "Dis0(x, 0) vanishes to order exactly " + std::to_string(mult) +
                                " at x = " + rat_str(x_at),
                root_multiplicity(dis0.substitute_y(Rat(0)), x_at) == mult);
    }
    if (ds.name == "p4p4") {
        // quintic discriminant of the mirror family, fifth-order tangency at x=1
        Poly2 v = Poly2(Rat(1)) - Poly2::monomial(Rat(1), 1, 0) - Poly2::monomial(Rat(1), 0, 1);
        Poly2 quintic = v * v * v * v * v -
                        Poly2::monomial(Rat(625), 1, 1) * (v * v) +
                        Poly2::monomial(Rat(3125), 1, 1) *
                            (Poly2::monomial(Rat(1), 1, 1) - Poly2::monomial(Rat(1), 1, 0) -
                             Poly2::monomial(Rat(1), 0, 1));
        rep.add("tangency", "the quintic discriminant (1-x-y)^5 - 5^4 xy(1-x-y)^2 + "
                            "5^5 xy(xy-x-y) vanishes to order exactly 5 at x = 1 on y = 0",
                root_multiplicity(quintic.substitute_y(Rat(0)), Rat(1)) == 5);
    }
    if (ds.raw.contains("flop")) {
        const Json& flop = ds.raw.at("flop");
        std::map<int, Rat> n0counts;
        for (auto& [d, c] : flop.at("instanton").items())
            n0counts[std::stoi(d)] = parse_rat(c.get<std::string>());
        Rat c_prime = parse_rat(ds.raw.at("couplings").begin().value()[0].get<std::string>());
        Rat c_flop = parse_rat(ds.raw.at("couplings").at("flop")[0].get<std::string>());
        bool ok = false;
        std::string wit;
        try {
            ok = flop_invariance_check(c_prime, c_flop, n0counts, Rat(-1));
            wit = "C' = " + rat_str(c_prime) + ", C^f = " + rat_str(c_flop);
        } catch (const IdentityFails& e) {
            wit = e.what();
        }
        rep.add("flop-invariance", "C' + sum_d n0(d) d^3 q'^d/(1-q'^d) = C^f + (dt/dt')^3 "
                                   "sum_d n0(d) d^3 q^d/(1-q^d) at q = 1/q', exactly in Q(q')",
                ok, wit);
    }
    if (ds.raw.contains("prepotential")) {
        const Json& pp = ds.raw.at("prepotential");
        int pairs = pp.at("pairs").get<int>();
        RMat conn = dual_action(ds.mat(pp.at("connection").get<std::string>()));
        try {
            PeriodSymbolForm shift = prepotential_shift(conn, pairs - 1);
            rep.add("prepotential-pure-a", "the prepotential shift along the connection is a "
                                           "quadratic form in the A-periods only",
                    shift.pure_a(), shift.str());
            RMat q = parse_matrix_2x2(pp.at("claimed_q"), "claimed Q");
            // published display (1/2) sum Q_ij a_i a_j over i,j = 1,2
            bool agree = shift.a_coeff(1, 1) == q(0, 0) / Rat(2) &&
                         shift.a_coeff(1, 2) == (q(0, 1) + q(1, 0)) / Rat(2) &&
                         shift.a_coeff(2, 2) == q(1, 1) / Rat(2) && shift.a_coeff(0, 0) == 0 &&
                         shift.a_coeff(0, 1) == 0 && shift.a_coeff(0, 2) == 0;
            if (agree)
                rep.add("prepotential-q", "computed shift agrees with the published Q display",
                        true);
            else
                rep.flag("prepotential-q",
                         "computed shift " + shift.str() + " differs from the published "
                         "display (1/2)(Q11 a1^2 + (Q12+Q21) a1 a2 + Q22 a2^2) with "
                         "Q = [[-25,-2],[2,0]]",
                         "published display evaluates to (-25/2)*a1^2");
        } catch (const NotAQuadraticShiftInA& e) {
            rep.add("prepotential-pure-a", "prepotential shift free of B-period symbols", false,
                    e.what());
        }
    }
    if (!ds.raw.contains("series") && !ds.raw.contains("flop"))
        rep.add("series-none", "no series data declared for this case", true);
}

inline void mirror(const MonodromyDataset& ds, Report& rep, const RMat& w2) {
    ChamberFan afan = movable_chambers(ds, 3);
    QuotientFan bfan = quotient_fan(ds, 3, w2);
    RMat dict = RMat::identity(2);
    rep.add("mirror-depth3", "the depth-3 movable fan maps onto the depth-3 quotient fan "
                             "under the identity dictionary H_i -> Nbar_i, closures included",
            mirror_compare(afan, bfan, dict));
    if (ds.raw.at("aside").contains("gram")) {
        auto [s1, s2] = positive_cone_slopes(parse_matrix_2x2(ds.raw["aside"]["gram"], "gram"));
        QuadRay left = bfan.closure_left, right = bfan.closure_right;
        // slope convention of positive_cone_slopes: first/second coordinate
        Quad sl = left[0] / left[1], sr = right[0] / right[1];
        bool match = (sl == s1 && sr == s2) || (sl == s2 && sr == s1);
        rep.add("positive-cone", "the closure slopes solve (a,1) G (a,1)^t = 0 for the "
                                 "rank-2 Gram matrix",
                match, "slopes " + sl.str() + ", " + sr.str());
    }
}

inline void transport_suite(const MonodromyDataset& ds, Report& rep, const VerifyOptions& opt) {
    if (!ds.raw.contains("transport")) {
        rep.add("transport-none", "no differential operators are declared for this case; "
                                  "numeric transport is defined for the p3p3 family only",
                true);
        return;
    }
    std::map<std::string, std::string> d1s, d2s;
    for (auto& [k, v] : ds.raw["series"]["operators"]["D1"].items()) d1s[k] = v.get<std::string>();
    for (auto& [k, v] : ds.raw["series"]["operators"]["D2"].items()) d2s[k] = v.get<std::string>();
    PfaffianSystem sys = build_pfaffian({parse_theta_operator(d1s), parse_theta_operator(d2s)}, 6, 4);
    std::string basis_txt;
    for (auto& [a, b] : sys.basis)
        basis_txt += "tx^" + std::to_string(a) + "ty^" + std::to_string(b) + " ";
    rep.add("pfaffian-rank", "theta-ideal elimination yields a rank-6 first-order system",
            sys.rank() == 6, "basis " + basis_txt);
    rep.add("pfaffian-flat", "flatness theta_y(Ax) - theta_x(Ay) = [Ay, Ax] holds exactly over "
                             "Q(x,y)",
            sys.is_flat());
    std::map<std::string, CMat> loops;
    auto run_loop = [&](const std::string& name) {
        PathSpec path = dataset_loop(ds, name, opt.prec_bits);
        auto [m, inv] = loop_monodromy(sys, path, opt.prec_bits);
        loops[name] = m;
        return inv;
    };
    auto char_dev = [&](const CMat& m, const std::vector<long>& expect) {
        PrecisionContext pc(opt.prec_bits);
        auto cp = char_poly_numeric(m);
        BigF d(0);
        for (size_t i = 0; i < cp.size(); ++i)
            d = std::max(d, (cp[i] - BigC(Rat(expect[i]))).abs());
        return static_cast<double>(d);
    };
    LoopInvariants ix = run_loop("x0");
    double dx = char_dev(loops["x0"], {1, -6, 15, -20, 15, -6, 1});
    rep.add("loop-x0", "monodromy of the loop around x = 0 has char poly (t-1)^6 (tol 1e-8)",
            dx < 1e-8, "deviation " + sci(dx) + " at " +
                           std::to_string(opt.prec_bits) + " bits");
    LoopInvariants iy = run_loop("y0");
    double dy = char_dev(loops["y0"], {1, -6, 15, -20, 15, -6, 1});
    rep.add("loop-y0", "monodromy of the loop around y = 0 has char poly (t-1)^6 (tol 1e-8)",
            dy < 1e-8, "deviation " + sci(dy));
    LoopInvariants ie = run_loop("e1");
    double de = char_dev(loops["e1"], {1, 2, -1, -4, -1, 2, 1});
    rep.add("loop-e1", "monodromy of the loop around the fourfold tangency point has char "
                       "poly (t-1)^2 (t+1)^4 (tol 1e-8)",
            de < 1e-8, "deviation " + sci(de));
    {
        PrecisionContext pc(opt.prec_bits);
        double dm = static_cast<double>(abs(ix.det_modulus - 1) + abs(iy.det_modulus - 1) +
                                        abs(ie.det_modulus - 1));
        rep.add("loop-det", "every loop monodromy has |det| = 1 (tol 1e-8)", dm < 1e-8,
                "total deviation " + sci(dm));
        Rat tr_exact = (ds.mat("Tx") * ds.mat("Ty")).trace();
        BigC tr_num = (loops["x0"] * loops["y0"]).trace();
        double dt = static_cast<double>((tr_num - BigC(tr_exact)).abs());
        rep.add("word-trace", "tr(Mx My) matches the exact tr(Tx Ty) = " + rat_str(tr_exact) +
                                  " (tol 1e-6)",
                dt < 1e-6, "deviation " + sci(dt));
    }
    NumericRelationReport nr =
        numeric_relation_check(loops, "e1-commute", "e1 * y0", "y0 * e1", opt.prec_bits, 1e-8);
    rep.add("numeric-commute", "numeric monodromies satisfy TE1 Ty = Ty TE1 (tol 1e-8)",
            nr.verdict, "deviation " + sci(nr.deviation));
}

} // namespace suites

inline MonodromyDataset load_case(const std::string& case_name, const VerifyOptions& opt = {}) {
    if (case_name != "p4p4" && case_name != "p3p3" && case_name != "k3")
        throw UnknownCase("unknown case '" + case_name + "'");
    return load_dataset(opt.data_dir + "/" + case_name + ".json");
}

inline Report run_verification(const std::string& case_name, const std::string& suite,
                               const VerifyOptions& opt = {}) {
    MonodromyDataset ds = load_case(case_name, opt);
    Report rep;
    rep.case_name = case_name;
    rep.suite = suite;
    const std::vector<std::string> known{"all",    "symplectic", "lcsl",   "relations",
                                         "couplings", "gluing",  "rays",   "series",
                                         "mirror", "transport"};
    if (std::find(known.begin(), known.end(), suite) == known.end())
        throw UnknownSuite("unknown suite '" + suite + "'");
    auto want = [&](const std::string& s) { return suite == "all" || suite == s; };
    RMat w2;
    if (want("gluing") || want("rays") || want("mirror")) w2 = w2_basis(ds);
    if (want("symplectic")) suites::symplectic(ds, rep);
    if (want("lcsl")) suites::lcsl(ds, rep);
    if (want("relations")) suites::relations(ds, rep);
    if (want("couplings")) suites::couplings_suite(ds, rep);
    if (want("gluing")) suites::gluing(ds, rep, w2);
    if (want("rays")) suites::rays(ds, rep, w2);
    if (want("series")) suites::series_suite(ds, rep);
    if (want("mirror")) suites::mirror(ds, rep, w2);
    if (want("transport")) suites::transport_suite(ds, rep, opt);
    return rep;
}

} // namespace nilcone
