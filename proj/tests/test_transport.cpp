#include <catch2/catch_amalgamated.hpp>

#include <nilcone/verify.hpp>

using namespace nilcone;

namespace {

// Gauss hypergeometric theta(theta + c - 1) - x(theta + a)(theta + b) with
// a = b = 1/2, c = 5/4: monodromy around x = 0 has eigenvalues
// {1, exp(2 pi i (1 - c))} = {1, -i}.
PfaffianSystem golden_system() {
    ThetaOperator op = parse_theta_operator({{"2,0", "1 - x"},
                                             {"1,0", "1/4 - x"},
                                             {"0,0", "-1/4*x"}});
    return build_pfaffian({op}, 2);
}

PathSpec circle_x(const Rat& center, const Rat& radius, int prec) {
    PrecisionContext pc(prec);
    PathSpec path;
    for (const BigC& p : circle_polygon(BigC(big_from_rat(center)), big_from_rat(radius), 24,
                                        false))
        path.points.push_back({p, BigC(BigF(1))});
    return path;
}

double dev_from(const CMat& m, const CMat& ref, int prec) {
    PrecisionContext pc(prec);
    return static_cast<double>(max_deviation(m, ref));
}

} // namespace

TEST_CASE("hypergeometric golden monodromy around x = 0", "[transport]") {
    PfaffianSystem sys = golden_system();
    const int prec = 256;
    PathSpec loop = circle_x(Rat(0), Rat(1, 2), prec);
    REQUIRE(loop.closed());
    auto [m, inv] = loop_monodromy(sys, loop, prec);
    PrecisionContext pc(prec);
    // char poly (t - 1)(t + i) = t^2 + (i - 1) t - i
    std::vector<BigC> expect{BigC(BigF(1)), BigC(BigF(-1), BigF(1)), BigC(BigF(0), BigF(-1))};
    BigF dev(0);
    for (int k = 0; k < 3; ++k) dev = std::max(dev, (inv.char_poly[k] - expect[k]).abs());
    CHECK(static_cast<double>(dev) < 1e-20);
    CHECK(static_cast<double>(abs(inv.det_modulus - 1)) < 1e-20);
}

TEST_CASE("contractible loop away from the discriminant is trivial", "[transport]") {
    PfaffianSystem sys = golden_system();
    const int prec = 256;
    PathSpec loop = circle_x(Rat(1, 4), Rat(1, 16), prec);  // encircles no singularity
    CMat m = transport(sys, loop, prec);
    CHECK(dev_from(m, CMat::identity(2), prec) < 1e-20);
}

TEST_CASE("doubling precision tightens the contractible loop", "[transport]") {
    PfaffianSystem sys = golden_system();
    PathSpec lo = circle_x(Rat(1, 4), Rat(1, 16), 64);
    double d64 = dev_from(transport(sys, lo, 64), CMat::identity(2), 64);
    PathSpec hi = circle_x(Rat(1, 4), Rat(1, 16), 128);
    double d128 = dev_from(transport(sys, hi, 128), CMat::identity(2), 128);
    CHECK(d128 < d64 / 2);
}

TEST_CASE("base point independence of the monodromy trace", "[transport]") {
    PfaffianSystem sys = golden_system();
    const int prec = 128;
    auto trace_at = [&](const Rat& c, const Rat& r) {
        auto [m, inv] = loop_monodromy(sys, circle_x(c, r, prec), prec);
        PrecisionContext pc(prec);
        return m.trace();
    };
    BigC t1 = trace_at(Rat(0), Rat(1, 2));
    BigC t2 = trace_at(Rat(-1, 10), Rat(2, 5));  // same class around x = 0
    PrecisionContext pc(prec);
    CHECK(static_cast<double>((t1 - t2).abs()) < 1e-25);
}

TEST_CASE("paths through the singular locus are refused", "[transport]") {
    PfaffianSystem sys = golden_system();
    const int prec = 64;
    // circle through x = 1
    CHECK_THROWS_AS(transport(sys, circle_x(Rat(1, 2), Rat(1, 2), prec), prec),
                    SingularityTooClose);
    PrecisionContext pc(prec);
    PathSpec open_path;
    open_path.points.push_back({BigC(BigF(1) / 4), BigC(BigF(1))});
    CHECK_THROWS_AS(loop_monodromy(sys, open_path, prec), DimensionMismatch);
}

TEST_CASE("dataset loops are closed and unimodular", "[transport]") {
    MonodromyDataset ds = load_case("p3p3", VerifyOptions{});
    const int prec = 96;
    PathSpec x0 = dataset_loop(ds, "x0", prec);
    CHECK(x0.closed());
    CHECK_THROWS_AS(dataset_loop(ds, "nope", prec), UnknownCase);
    std::map<std::string, std::string> d1s, d2s;
    for (auto& [k, v] : ds.raw["series"]["operators"]["D1"].items()) d1s[k] = v.get<std::string>();
    for (auto& [k, v] : ds.raw["series"]["operators"]["D2"].items()) d2s[k] = v.get<std::string>();
    PfaffianSystem sys =
        build_pfaffian({parse_theta_operator(d1s), parse_theta_operator(d2s)}, 6, 4);
    auto [m, inv] = loop_monodromy(sys, x0, prec);
    PrecisionContext pc(prec);
    CHECK(static_cast<double>(abs(inv.det_modulus - 1)) < 1e-8);
    // (t - 1)^6 within tolerance
    std::vector<long> binom{1, -6, 15, -20, 15, -6, 1};
    for (int k = 0; k <= 6; ++k)
        CHECK(static_cast<double>((inv.char_poly[k] - BigC(Rat(binom[k]))).abs()) < 1e-8);
}

TEST_CASE("numeric word composition mirrors the exact DSL", "[transport]") {
    const int prec = 64;
    PrecisionContext pc(prec);
    CMat a = CMat::identity(2);
    a(0, 1) = BigC(BigF(1));
    std::map<std::string, CMat> names{{"a", a}};
    CMat m = compose_word_numeric("a^-1 * a", names);
    CHECK(static_cast<double>(max_deviation(m, CMat::identity(2))) < 1e-15);
    CHECK_THROWS_AS(compose_word_numeric("b", names), UnknownGenerator);
    CHECK_THROWS_AS(compose_word_numeric("dual(a)", names), NotComposable);
}
