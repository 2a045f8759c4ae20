#include <catch2/catch_amalgamated.hpp>

#include <nilcone/verify.hpp>

using namespace nilcone;

static MonodromyDataset load_named(const std::string& name) {
    return load_case(name, VerifyOptions{});
}

TEST_CASE("declared relations hold on every dataset", "[cones]") {
    for (const char* cs : {"p4p4", "p3p3", "k3"}) {
        MonodromyDataset ds = load_named(cs);
        for (const RelationSpec& rel : ds.relations) {
            INFO(std::string(cs) + " relation " + rel.name);
            CHECK(verify_relation(rel, ds));
        }
    }
}

TEST_CASE("groupoid chains glue with correct adjacency", "[cones]") {
    for (const char* cs : {"p4p4", "k3"}) {
        MonodromyDataset ds = load_named(cs);
        RMat w2 = w2_basis(ds);
        ChainReport rep = cone_chain_groupoid(ds, -5, 5, w2);
        INFO(cs);
        CHECK(rep.gluing_ok);
        CHECK(rep.adjacency_ok);
        CHECK(rep.quotient_coords_ok);
        CHECK(rep.cones.size() == 33);  // three chambers per period, 11 periods
    }
}

TEST_CASE("p3p3 group chain identities", "[cones]") {
    MonodromyDataset ds = load_named("p3p3");
    RMat w2 = w2_basis(ds);
    GroupChainReport rep = cone_chain_group(ds, 5, w2);
    CHECK(rep.tau_fixes_ok);
    CHECK(rep.tau_quotient_ok);
    CHECK(rep.pair_quotient_ok);
    CHECK(rep.squares_trivial_ok);
    StabilizerReport sr = stabilizer_probe(ds, 4, w2);
    CHECK(sr.classification_ok);
    CHECK(sr.squares_trivial_ok);
    CHECK(sr.pair_power_ok);
    CHECK(sr.words_checked > 0);
}

TEST_CASE("quotient coordinates reject vectors outside the lattice", "[cones]") {
    MonodromyDataset ds = load_named("p3p3");
    RMat w2 = w2_basis(ds);
    RMat n1 = unipotent_log(ds.mat("Tx")), n2 = unipotent_log(ds.mat("Ty"));
    auto [a, b] = quotient_coords(n1 * Rat(2) + n2 * Rat(-3), n1, n2, w2);
    CHECK(a == 2);
    CHECK(b == -3);
    RMat off = n1;
    off(5, 0) += 1;  // perturb outside span(N1, N2) + I2
    CHECK_THROWS_AS(quotient_coords(off, n1, n2, w2), NotInQuotientLattice);
}

TEST_CASE("quotient fans close at irrational eigen-directions", "[cones]") {
    struct Expect {
        const char* cs;
        long disc;
    } cases[] = {{"p4p4", 3}, {"p3p3", 2}, {"k3", 5}};
    for (auto [cs, disc] : cases) {
        MonodromyDataset ds = load_named(cs);
        QuotientFan fan = quotient_fan(ds, 3, w2_basis(ds));
        INFO(cs);
        CHECK(fan.depth == 3);
        CHECK(fan.rays.size() >= 4);
        CHECK(fan.closure_left[1].d == disc);
        // rays are angularly ordered and strictly inside the closure bounds
        for (size_t i = 0; i + 1 < fan.rays.size(); ++i)
            CHECK(ray_angle_less(fan.rays[i], fan.rays[i + 1]));
    }
}

TEST_CASE("fan depth grows the ray count", "[cones]") {
    MonodromyDataset ds = load_named("p3p3");
    RMat w2 = w2_basis(ds);
    QuotientFan f2 = quotient_fan(ds, 2, w2);
    QuotientFan f4 = quotient_fan(ds, 4, w2);
    CHECK(f4.rays.size() > f2.rays.size());
    CHECK(f2.closure_left == f4.closure_left);  // closure independent of depth
    CHECK(f2.closure_right == f4.closure_right);
}
