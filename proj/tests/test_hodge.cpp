#include <catch2/catch_amalgamated.hpp>

#include <nilcone/filtration.hpp>
#include <nilcone/verify.hpp>

using namespace nilcone;

static MonodromyDataset load_named(const std::string& name) {
    return load_case(name, VerifyOptions{});
}

TEST_CASE("weight filtration of a Jordan block", "[hodge]") {
    // single nilpotent Jordan block of size 4, center 3
    RMat n(4, 4);
    for (int i = 0; i + 1 < 4; ++i) n(i, i + 1) = 1;
    Filtration f = weight_filtration(n, 3);
    CHECK(f.dims() == std::vector<int>{1, 2, 3, 4});
    CHECK(check_filtration_preserved(nilpotent_exp(n), f));
    CHECK_THROWS_AS(weight_filtration(n, 2), WrongCenter);
    CHECK_THROWS_AS(weight_filtration(RMat::identity(3), 3), NotNilpotent);
}

TEST_CASE("interior filtration dims at the threefold LCSLs", "[hodge]") {
    for (const char* cs : {"p4p4", "p3p3"}) {
        MonodromyDataset ds = load_named(cs);
        RMat n1 = unipotent_log(ds.mat(ds.points[0].generators[0]));
        RMat n2 = unipotent_log(ds.mat(ds.points[0].generators[1]));
        for (auto [l1, l2] : {std::pair{1, 1}, {2, 1}, {1, 3}}) {
            Filtration f = weight_filtration(n1 * Rat(l1) + n2 * Rat(l2), 3);
            CHECK(f.dims() == std::vector<int>{1, 3, 5, 6});
        }
    }
}

TEST_CASE("lcsl verification at every bundled boundary point", "[hodge]") {
    for (const char* cs : {"p4p4", "p3p3", "k3"}) {
        MonodromyDataset ds = load_named(cs);
        for (const BoundaryPoint& pt : ds.points) {
            std::vector<RMat> gens;
            for (auto& g : pt.generators) gens.push_back(ds.mat(g));
            LCSLReport rep = lcsl_verify(gens, ds.weight_center);
            INFO(std::string(cs) + " point " + pt.name);
            CHECK(rep.verdict);
            CHECK(rep.m_det != 0);
        }
    }
}

TEST_CASE("lcsl verdict is false for a non-unipotent generator", "[hodge]") {
    MonodromyDataset ds = load_named("p3p3");
    std::vector<RMat> gens{ds.mat("Tx"), ds.mat("Ty") * Rat(2)};
    LCSLReport rep = lcsl_verify(gens, ds.weight_center);
    CHECK_FALSE(rep.verdict);
    CHECK_FALSE(rep.unipotent_flags[1]);
}

TEST_CASE("primitive column normalization", "[hodge]") {
    RMat v(3, 1);
    v(0, 0) = Rat(-2, 3);
    v(1, 0) = Rat(4, 3);
    RMat p = primitive_column(v);
    CHECK(p(0, 0) == 1);
    CHECK(p(1, 0) == -2);
    CHECK(p(2, 0) == 0);
}
