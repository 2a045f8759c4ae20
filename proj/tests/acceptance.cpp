// Acceptance harness: one line per criterion, exit 0 iff all pass.
// Tolerances are pinned in code next to each check.

#include <chrono>
#include <iostream>
#include <string>
#include <vector>

#include <nilcone/verify.hpp>

using namespace nilcone;

namespace {

int failures = 0;

void criterion(int n, const std::string& label, bool ok, const std::string& detail = "") {
    std::cout << "criterion " << n << " (" << label << "): " << (ok ? "PASS" : "FAIL");
    if (!detail.empty()) std::cout << " -- " << detail;
    std::cout << std::endl;
    if (!ok) ++failures;
}

bool suite_clean(const std::string& cs, const std::string& suite) {
    return !run_verification(cs, suite).any_fail();
}

bool single_entry(const RMat& m, int i, int j, const Rat& v) {
    if (m(i, j) != v) return false;
    for (int a = 0; a < m.r; ++a)
        for (int b = 0; b < m.c; ++b)
            if ((a != i || b != j) && m(a, b) != 0) return false;
    return true;
}

} // namespace

int main() {
    VerifyOptions opt;
    MonodromyDataset p4p4 = load_case("p4p4", opt);
    MonodromyDataset p3p3 = load_case("p3p3", opt);
    MonodromyDataset k3 = load_case("k3", opt);

    // 1. Symplectic suite over all three datasets. Exact.
    criterion(1, "symplectic",
              suite_clean("p4p4", "symplectic") && suite_clean("p3p3", "symplectic") &&
                  suite_clean("k3", "symplectic"));

    // 2. Unipotency and exceptional structure. Exact.
    {
        bool ok = true;
        for (const MonodromyDataset* ds : {&p4p4, &p3p3})
            for (const char* nm : {"Tx", "Ty"}) {
                RMat u = ds->mat(nm) - RMat::identity(6);
                ok = ok && !mpow(u, 3).is_zero() && mpow(u, 4).is_zero();
            }
        RMat te1_33 = p3p3.mat("TE1");
        ok = ok && quasi_unipotency_order(te1_33, 12) == 2 &&
             single_entry(mpow(te1_33, 2) - RMat::identity(6), 1, 4, Rat(96)) &&
             single_entry(p4p4.mat("TE1") - RMat::identity(6), 1, 4, Rat(50));
        criterion(2, "unipotency/logs", ok);
    }

    // 3. Coupling tensors in every frame. Exact.
    criterion(3, "couplings",
              suite_clean("p4p4", "couplings") && suite_clean("p3p3", "couplings") &&
                  suite_clean("k3", "couplings"));

    // 4. Monodromy relations, including TE1'' = p23 p45 TE1 p23 p45. Exact.
    {
        bool ok = true;
        for (const MonodromyDataset* ds : {&p4p4, &p3p3, &k3})
            for (const RelationSpec& rel : ds->relations) ok = ok && verify_relation(rel, *ds);
        criterion(4, "relations", ok);
    }

    // 5. Weight filtrations and LCSL verdicts. Exact.
    {
        bool ok = true;
        for (const MonodromyDataset* ds : {&p4p4, &p3p3}) {
            RMat n1 = unipotent_log(ds->mat(ds->points[0].generators[0]));
            RMat n2 = unipotent_log(ds->mat(ds->points[0].generators[1]));
            RMat e012(6, 3);
            for (int i = 0; i < 3; ++i) e012(i, i) = 1;
            for (auto [l1, l2] : {std::pair{1, 1}, {1, 2}, {2, 1}}) {
                Filtration f = weight_filtration(n1 * Rat(l1) + n2 * Rat(l2), 3);
                ok = ok && f.dims() == std::vector<int>{1, 3, 5, 6} &&
                     same_colspan(f.w(2), e012);
            }
            std::vector<RMat> gens{ds->mat(ds->points[0].generators[0]),
                                   ds->mat(ds->points[0].generators[1])};
            LCSLReport lr = lcsl_verify(gens, 3);
            ok = ok && lr.verdict && lr.m_det != 0;
        }
        criterion(5, "filtrations/LCSL", ok);
    }

    // 6. Gluing: printed Delta matrices, W2-vanishing, chain identities for
    //    n in [-5, 5], tau identities, pair-quotient matrix. Exact.
    criterion(6, "gluing",
              suite_clean("p4p4", "gluing") && suite_clean("p3p3", "gluing") &&
                  suite_clean("k3", "gluing"));

    // 7. Rays: irrational closure eigen-directions, A-side walls, mirror
    //    comparison at depth 3. Exact.
    {
        bool ok = suite_clean("p4p4", "rays") && suite_clean("p3p3", "rays") &&
                  suite_clean("k3", "rays");
        for (const MonodromyDataset* ds : {&p4p4, &p3p3})
            ok = ok && mirror_compare(movable_chambers(*ds, 3),
                                      quotient_fan(*ds, 3, w2_basis(*ds)), RMat::identity(2));
        criterion(7, "rays/mirror", ok);
    }

    // 8. Series: annihilation through degree 12, flop identities for both
    //    parameter sets, tangency multiplicities 5 and 4. Exact.
    {
        std::map<std::string, std::string> d1s, d2s;
        for (auto& [k, v] : p3p3.raw["series"]["operators"]["D1"].items())
            d1s[k] = v.get<std::string>();
        for (auto& [k, v] : p3p3.raw["series"]["operators"]["D2"].items())
            d2s[k] = v.get<std::string>();
        ThetaOperator d1 = parse_theta_operator(d1s), d2 = parse_theta_operator(d2s);
        bool ok = apply_theta(d1, w0_series(13)).zero_through(12) &&
                  apply_theta(d2, w0_series(14)).zero_through(12);
        ok = ok && flop_invariance_check(Rat(5), Rat(-45), {{1, Rat(50)}}, Rat(-1)) &&
             flop_invariance_check(Rat(2), Rat(-110), {{1, Rat(80)}, {2, Rat(4)}}, Rat(-1));
        ok = ok && suite_clean("p4p4", "series") && suite_clean("p3p3", "series");
        criterion(8, "series", ok);
    }

    // 9. Prepotential shift: pure-a quadratic form; Q-display disagreement is
    //    reported as a flag, not a failure. Exact symbolic.
    {
        Report rep = run_verification("p4p4", "series");
        bool pure_a = false, q_flagged = false;
        for (auto& r : rep.records) {
            if (r.id == "prepotential-pure-a") pure_a = r.status == CheckStatus::pass;
            if (r.id == "prepotential-q") q_flagged = r.status != CheckStatus::fail;
        }
        criterion(9, "prepotential", pure_a && q_flagged,
                  "computed Q-display deviation recorded as flagged");
    }

    // 10. Transport at 256 bits. Numeric tolerances as stated per check;
    //     budget <= 10 min.
    {
        auto t0 = std::chrono::steady_clock::now();
        const int prec = 256;
        std::map<std::string, std::string> d1s, d2s;
        for (auto& [k, v] : p3p3.raw["series"]["operators"]["D1"].items())
            d1s[k] = v.get<std::string>();
        for (auto& [k, v] : p3p3.raw["series"]["operators"]["D2"].items())
            d2s[k] = v.get<std::string>();
        PfaffianSystem sys =
            build_pfaffian({parse_theta_operator(d1s), parse_theta_operator(d2s)}, 6, 4);
        bool ok = sys.is_flat();

        // hypergeometric golden test: eigenvalues {1, -i} around x = 0
        ThetaOperator gold = parse_theta_operator(
            {{"2,0", "1 - x"}, {"1,0", "1/4 - x"}, {"0,0", "-1/4*x"}});
        PfaffianSystem gsys = build_pfaffian({gold}, 2);
        {
            PrecisionContext pc(prec);
            PathSpec loop;
            for (const BigC& p : circle_polygon(BigC(), big_from_rat(Rat(1, 2)), 24, false))
                loop.points.push_back({p, BigC(BigF(1))});
            auto [m, inv] = loop_monodromy(gsys, loop, prec);
            std::vector<BigC> expect{BigC(BigF(1)), BigC(BigF(-1), BigF(1)),
                                     BigC(BigF(0), BigF(-1))};
            for (int k = 0; k < 3; ++k)
                ok = ok && static_cast<double>((inv.char_poly[k] - expect[k]).abs()) < 1e-20;
            // contractible loop away from the discriminant
            PathSpec triv;
            for (const BigC& p :
                 circle_polygon(BigC(big_from_rat(Rat(1, 4))), big_from_rat(Rat(1, 16)), 24,
                                false))
                triv.points.push_back({p, BigC(BigF(1))});
            CMat t = transport(gsys, triv, prec);
            ok = ok && static_cast<double>(max_deviation(t, CMat::identity(2))) < 1e-20;
        }

        std::map<std::string, CMat> loops;
        for (const char* nm : {"x0", "y0", "e1"})
            loops[nm] = loop_monodromy(sys, dataset_loop(p3p3, nm, prec), prec).first;
        PrecisionContext pc(prec);
        auto char_dev = [&](const CMat& m, const std::vector<long>& expect) {
            auto cp = char_poly_numeric(m);
            BigF d(0);
            for (size_t i = 0; i < cp.size(); ++i)
                d = std::max(d, (cp[i] - BigC(Rat(expect[i]))).abs());
            return static_cast<double>(d);
        };
        ok = ok && char_dev(loops["x0"], {1, -6, 15, -20, 15, -6, 1}) < 1e-8;   // (t-1)^6
        ok = ok && char_dev(loops["e1"], {1, 2, -1, -4, -1, 2, 1}) < 1e-8;      // (t-1)^2 (t+1)^4
        BigC tr = (loops["x0"] * loops["y0"]).trace();
        ok = ok && static_cast<double>((tr - BigC((p3p3.mat("Tx") * p3p3.mat("Ty")).trace())).abs()) <
                       1e-6;
        NumericRelationReport nr =
            numeric_relation_check(loops, "e1-commute", "e1 * y0", "y0 * e1", prec, 1e-8);
        ok = ok && nr.verdict;
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        ok = ok && secs < 600;
        criterion(10, "transport", ok, "runtime " + std::to_string(static_cast<int>(secs)) + " s");
    }

    // 11. Negative controls: corrupted data fails the guarding suites. Exact.
    {
        MonodromyDataset bent = p4p4;
        RMat bad = bent.mat("Tyh");
        bad(1, 0) = 1;  // reintroduce the published misprint
        bent.matrices["Tyh"] = bad;
        bool symplectic_fails = !preserves_form(bent.mat("Tyh"), bent.form);

        RMat scaled = p3p3.mat("Txh");
        scaled(0, 0) = 2;
        bool unipotency_fails = !is_unipotent(scaled);

        MonodromyDataset rel = p3p3;
        rel.matrices["Txp"] = rel.mat("Txp") * Rat(-1);
        bool relation_fails = false;
        for (const RelationSpec& r : rel.relations)
            relation_fails = relation_fails || !verify_relation(r, rel);

        bool mirror_fails;
        {
            RMat swap(2, 2);
            swap(0, 1) = 1;
            swap(1, 0) = 1;
            mirror_fails = !mirror_compare(movable_chambers(p4p4, 3),
                                           quotient_fan(p4p4, 3, w2_basis(p4p4)), swap);
        }
        criterion(11, "negative controls",
                  symplectic_fails && unipotency_fails && relation_fails && mirror_fails);
    }

    std::cout << (failures == 0 ? "ALL CRITERIA PASS" : std::to_string(failures) + " CRITERIA FAILED")
              << std::endl;
    return failures == 0 ? 0 : 1;
}
