#include <catch2/catch_amalgamated.hpp>

#include <nilcone/svg.hpp>
#include <nilcone/verify.hpp>

#include <cstdio>
#include <fstream>

using namespace nilcone;

static MonodromyDataset load_named(const std::string& name) {
    return load_case(name, VerifyOptions{});
}

TEST_CASE("rho* is hyperbolic and matches its pullback factorization", "[birational]") {
    for (const char* cs : {"p4p4", "k3"}) {
        MonodromyDataset ds = load_named(cs);
        RMat r = rho_star(ds);
        INFO(cs);
        CHECK(r.trace() * r.trace() > 4);  // infinite order on the quotient
        CHECK(r * inverse(r) == RMat::identity(2));
    }
}

TEST_CASE("movable fan contains the Kaehler walls and is ordered", "[birational]") {
    for (const char* cs : {"p4p4", "p3p3", "k3"}) {
        MonodromyDataset ds = load_named(cs);
        ChamberFan fan = movable_chambers(ds, 3);
        INFO(cs);
        CHECK(std::count(fan.walls.begin(), fan.walls.end(), std::pair<long, long>{1, 0}) == 1);
        CHECK(std::count(fan.walls.begin(), fan.walls.end(), std::pair<long, long>{0, 1}) == 1);
        for (size_t i = 0; i + 1 < fan.walls.size(); ++i)
            CHECK(ray_angle_less(fan.walls[i], fan.walls[i + 1]));
    }
}

TEST_CASE("mirror dictionary is the identity; swapping it breaks the match", "[birational]") {
    for (const char* cs : {"p4p4", "p3p3", "k3"}) {
        MonodromyDataset ds = load_named(cs);
        ChamberFan afan = movable_chambers(ds, 3);
        QuotientFan bfan = quotient_fan(ds, 3, w2_basis(ds));
        INFO(cs);
        CHECK(mirror_compare(afan, bfan, RMat::identity(2)));
        RMat swap(2, 2);
        swap(0, 1) = 1;
        swap(1, 0) = 1;
        CHECK_FALSE(mirror_compare(afan, bfan, swap));
    }
}

TEST_CASE("mirror comparison rejects mismatched depths", "[birational]") {
    MonodromyDataset ds = load_named("p3p3");
    CHECK_THROWS_AS(
        mirror_compare(movable_chambers(ds, 2), quotient_fan(ds, 3, w2_basis(ds)),
                       RMat::identity(2)),
        DepthMismatch);
}

TEST_CASE("coupling extraction and flop transform", "[birational]") {
    MonodromyDataset ds = load_named("p4p4");
    RMat n0 = rank_one_n0(6);
    std::vector<RMat> gens{unipotent_log(ds.mat("Tx")), unipotent_log(ds.mat("Ty"))};
    CouplingTensor t = extract_couplings(gens, n0);
    CHECK(t.diag_profile() == std::array<Rat, 4>{5, 10, 10, 5});
    // full symmetry of the tensor
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) {
                CHECK(t.at(i, j, k) == t.at(j, i, k));
                CHECK(t.at(i, j, k) == t.at(i, k, j));
            }
    RMat jac(2, 2);
    jac(0, 0) = -1;
    jac(1, 0) = 4;
    jac(1, 1) = 1;
    CHECK(coupling_transform(t, jac).diag_profile() == std::array<Rat, 4>{-45, 10, 10, 5});
    // transforming by the identity is a no-op
    CHECK(coupling_transform(t, RMat::identity(2)).diag_profile() == t.diag_profile());
}

TEST_CASE("quadratic couplings for the K3 case", "[birational]") {
    MonodromyDataset ds = load_named("k3");
    std::vector<RMat> gens{unipotent_log(ds.mat("Tx")), unipotent_log(ds.mat("Ty"))};
    RMat c = extract_couplings_quadratic(gens, rank_one_n0(4));
    RMat gram = parse_matrix_2x2(ds.raw["aside"]["gram"], "gram");
    CHECK(c == gram * Rat(-1));
}

TEST_CASE("positive cone slopes solve the Gram quadric", "[birational]") {
    RMat gram(2, 2);
    gram(0, 0) = 4; gram(0, 1) = 6; gram(1, 0) = 6; gram(1, 1) = 4;
    auto [s1, s2] = positive_cone_slopes(gram);
    for (const Quad& s : {s1, s2}) {
        Quad v = s * s * Rat(4) + s * Rat(12) + Quad(Rat(4));
        CHECK(v == Quad(Rat(0)));
    }
    CHECK(s1 != s2);
    RMat definite = RMat::identity(2);
    CHECK_THROWS_AS(positive_cone_slopes(definite), RationalSpectrum);
}

TEST_CASE("fan SVG emission", "[birational]") {
    MonodromyDataset ds = load_named("p4p4");
    std::string path = "test_fan_out.svg";
    emit_fan_svg(movable_chambers(ds, 3), path, "p4p4 movable fan, depth 3");
    std::ifstream is(path);
    REQUIRE(is.good());
    std::string content((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    CHECK(content.find("<svg") != std::string::npos);
    CHECK(content.find("version=\"1.1\"") != std::string::npos);
    CHECK(content.find("stroke-dasharray") != std::string::npos);  // dashed closure rays
    CHECK(content.find("√3") != std::string::npos);                // irrational slope label
    is.close();
    std::remove(path.c_str());
    ChamberFan empty;
    CHECK_THROWS_AS(emit_fan_svg(empty, path, "empty"), IoError);
}
