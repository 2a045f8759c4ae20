#include <catch2/catch_amalgamated.hpp>

#include <nilcone/pfaffian.hpp>
#include <nilcone/verify.hpp>

using namespace nilcone;

static MonodromyDataset load_named(const std::string& name) {
    return load_case(name, VerifyOptions{});
}

static std::pair<ThetaOperator, ThetaOperator> load_operators(const MonodromyDataset& ds) {
    std::map<std::string, std::string> d1s, d2s;
    for (auto& [k, v] : ds.raw.at("series").at("operators").at("D1").items())
        d1s[k] = v.get<std::string>();
    for (auto& [k, v] : ds.raw.at("series").at("operators").at("D2").items())
        d2s[k] = v.get<std::string>();
    return {parse_theta_operator(d1s), parse_theta_operator(d2s)};
}

TEST_CASE("power series with log grading", "[series]") {
    PSeries s(6);
    s.add({1, 0, 0, 0}, Rat(3));  // 3 x
    s.add({0, 0, 1, 0}, Rat(1));  // log x
    PSeries tx = s.theta_x();
    CHECK(tx.coeff(1, 0) == 3);      // theta_x (3x) = 3x
    CHECK(tx.coeff(0, 0, 0, 0) == 1);  // theta_x log x = 1
    PSeries p = s * s;
    CHECK(p.coeff(2, 0) == 9);
    CHECK(p.coeff(1, 0, 1, 0) == 6);   // cross term 2 * 3x * log x
    CHECK(p.coeff(0, 0, 2, 0) == 1);   // (log x)^2
}

TEST_CASE("w0 has the closed-form coefficients", "[series]") {
    PSeries w0 = w0_series(5);
    CHECK(w0.coeff(0, 0) == 1);
    // (2n+2m)! ((n+m)!)^2 / (n!^4 m!^4)
    CHECK(w0.coeff(1, 0) == 2);
    CHECK(w0.coeff(1, 1) == Rat(24) * 4);  // 4! * (2!)^2 / 1
    CHECK(w0.coeff(2, 0) == Rat(24) * 4 / 16);
    CHECK(w0.coeff(1, 0) == w0.coeff(0, 1));  // x<->y symmetry
}

TEST_CASE("printed operators annihilate w0", "[series]") {
    MonodromyDataset ds = load_named("p3p3");
    auto [d1, d2] = load_operators(ds);
    PSeries w0 = w0_series(12);
    CHECK(apply_theta(d1, w0).zero_through(11));
    CHECK(apply_theta(d2, w0).zero_through(10));
    // a perturbed operator no longer annihilates
    ThetaOperator bad = d1;
    bad.terms[{0, 0}] = bad.terms[{0, 0}] + Poly2(Rat(1));
    CHECK_FALSE(apply_theta(bad, w0).zero_through(11));
}

TEST_CASE("flop invariance identity and its failure mode", "[series]") {
    std::map<int, Rat> n50{{1, Rat(50)}};
    CHECK(flop_invariance_check(Rat(5), Rat(-45), n50, Rat(-1)));
    std::map<int, Rat> n80{{1, Rat(80)}, {2, Rat(4)}};
    CHECK(flop_invariance_check(Rat(2), Rat(-110), n80, Rat(-1)));
    CHECK_THROWS_AS(flop_invariance_check(Rat(5), Rat(-44), n50, Rat(-1)), IdentityFails);
    CHECK_THROWS_AS(flop_invariance_check(Rat(5), Rat(-45), n50, Rat(1)), IdentityFails);
}

TEST_CASE("prepotential shift is quadratic in the A-periods", "[series]") {
    MonodromyDataset ds = load_named("p4p4");
    PeriodSymbolForm shift = prepotential_shift(dual_action(ds.mat("phi21")), 2);
    CHECK(shift.pure_a());
    CHECK(shift.a_coeff(1, 1) == Rat(-33, 2));
    CHECK(shift.a_coeff(1, 2) == Rat(-2));
    CHECK(shift.a_coeff(0, 0) == 0);
    // a non-filtration-preserving map mixes in B-periods
    RMat bad = RMat::identity(6);
    bad(5, 0) = 1;
    CHECK_THROWS_AS(prepotential_shift(bad, 2), NotAQuadraticShiftInA);
}

TEST_CASE("pfaffian reduction of the printed system", "[series]") {
    MonodromyDataset ds = load_named("p3p3");
    auto [d1, d2] = load_operators(ds);
    PfaffianSystem sys = build_pfaffian({d1, d2}, 6, 4);
    CHECK(sys.rank() == 6);
    CHECK(sys.is_flat());
    // the common denominator is divisible by the principal discriminant
    Poly2 dis0;
    for (auto& [k, v] : ds.raw.at("series").at("dis0").items()) {
        size_t comma = k.find(',');
        dis0 = dis0 + Poly2::monomial(parse_rat(v.get<std::string>()),
                                      std::stoi(k.substr(0, comma)),
                                      std::stoi(k.substr(comma + 1)));
    }
    Poly2 cof;
    bool divisible = divides_exactly(dis0, sys.delta, &cof) ||
                     divides_exactly(dis0 * Rat(-1), sys.delta, &cof);
    CHECK(divisible);
    CHECK(cof.total_deg() == sys.delta.total_deg() - dis0.total_deg());
}

TEST_CASE("pfaffian reduction of the hypergeometric golden operator", "[series]") {
    // theta(theta + c - 1) - x(theta + a)(theta + b), a = b = 1/2, c = 5/4
    ThetaOperator op = parse_theta_operator({{"2,0", "1 - x"},
                                             {"1,0", "1/4 - x"},
                                             {"0,0", "-1/4*x"}});
    PfaffianSystem sys = build_pfaffian({op}, 2);
    CHECK(sys.rank() == 2);
    CHECK_FALSE(sys.uses_y);
    // delta = (1 - x)^2 up to sign and scale
    Poly2 expect = parse_poly2("(1 - x)^2");
    Poly2 q;
    bool prop = divides_exactly(expect, sys.delta, &q) && q.total_deg() == 0;
    CHECK(prop);
}

TEST_CASE("inconsistent ideals are rejected", "[series]") {
    ThetaOperator tx = parse_theta_operator({{"1,0", "1"}});
    ThetaOperator txm1 = parse_theta_operator({{"1,0", "1"}, {"0,0", "-1"}});
    CHECK_THROWS_AS(build_pfaffian({tx, txm1}, 1), WrongHolonomicRank);
}
