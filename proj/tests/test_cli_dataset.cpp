#include <catch2/catch_amalgamated.hpp>

#include <nilcone/verify.hpp>

#include <cstdio>
#include <fstream>

using namespace nilcone;

namespace {

std::string data_path(const std::string& name) {
    return VerifyOptions{}.data_dir + "/" + name + ".json";
}

std::string slurp(const std::string& path) {
    std::ifstream is(path);
    REQUIRE(is.good());
    return std::string((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
}

// write a mutated copy of a bundled dataset and return its path
std::string write_mutated(const std::string& case_name, void (*mutate)(Json&)) {
    Json doc = Json::parse(slurp(data_path(case_name)));
    mutate(doc);
    std::string out = "test_mutated_" + case_name + ".json";
    std::ofstream os(out);
    os << doc.dump(2) << "\n";
    return out;
}

} // namespace

TEST_CASE("datasets load and reserialize byte-identically", "[cli]") {
    for (const char* cs : {"p4p4", "p3p3", "k3"}) {
        MonodromyDataset ds = load_dataset(data_path(cs));
        CHECK(serialize_dataset(ds) == slurp(data_path(cs)));
        CHECK(ds.name == cs);
        CHECK(ds.dimension == (std::string(cs) == "k3" ? 4 : 6));
    }
}

TEST_CASE("schema violations are rejected with typed errors", "[cli]") {
    std::string short_row = write_mutated("p4p4", [](Json& d) {
        d["matrices"]["Txh"]["rows"][2].erase(5);  // 5-entry row in a 6x6 matrix
    });
    CHECK_THROWS_AS(load_dataset(short_row), DimensionError);
    std::remove(short_row.c_str());

    std::string bad_rat = write_mutated("p4p4", [](Json& d) {
        d["matrices"]["Txh"]["rows"][0][0] = "1/0";
    });
    CHECK_THROWS_AS(load_dataset(bad_rat), ParseError);
    std::remove(bad_rat.c_str());

    std::string missing = write_mutated("p3p3", [](Json& d) { d.erase("relations"); });
    CHECK_THROWS_AS(load_dataset(missing), SchemaError);
    std::remove(missing.c_str());

    CHECK_THROWS_AS(load_dataset("no_such_file.json"), ParseError);
}

TEST_CASE("unknown cases and suites are refused", "[cli]") {
    CHECK_THROWS_AS(run_verification("p5p5", "all"), UnknownCase);
    CHECK_THROWS_AS(run_verification("p4p4", "bogus"), UnknownSuite);
}

TEST_CASE("report rendering and exit codes", "[cli]") {
    Report rep = run_verification("p4p4", "relations");
    CHECK(rep.count(CheckStatus::fail) == 0);
    CHECK(rep.count(CheckStatus::flagged) == 2);  // the two recorded misprints
    CHECK(rep.exit_code() == 3);                  // flagged-only

    Report clean = run_verification("p4p4", "symplectic");
    CHECK(clean.exit_code() == 0);

    // JSON and text renderings agree on the verdict counts
    auto doc = rep.to_json();
    CHECK(doc["summary"]["flagged"] == 2);
    CHECK(doc["checks"].size() == rep.records.size());
    std::string text = rep.to_text();
    CHECK(text.find("[flagged] tyh-misprint") != std::string::npos);
    for (auto& r : rep.records) CHECK(text.find(r.id) != std::string::npos);
}

TEST_CASE("verification is deterministic", "[cli]") {
    Report a = run_verification("p3p3", "gluing");
    Report b = run_verification("p3p3", "gluing");
    CHECK(a.to_json() == b.to_json());
}

TEST_CASE("corrupted matrices fail the suites that guard them", "[cli]") {
    std::string bent = write_mutated("p4p4", [](Json& d) {
        d["matrices"]["Tyh"]["rows"][1][0] = "1";  // reintroduce the published misprint
    });
    MonodromyDataset ds = load_dataset(bent);
    std::remove(bent.c_str());
    bool symplectic_breaks = !preserves_form(ds.mat("Tyh"), ds.form);
    CHECK(symplectic_breaks);
    bool some_relation_breaks = false;
    for (const RelationSpec& rel : ds.relations)
        some_relation_breaks = some_relation_breaks || !verify_relation(rel, ds);
    CHECK(some_relation_breaks);

    std::string scaled = write_mutated("p3p3", [](Json& d) {
        d["matrices"]["Txh"]["rows"][0][0] = "2";  // breaks unipotency
    });
    MonodromyDataset ds2 = load_dataset(scaled);
    std::remove(scaled.c_str());
    CHECK_FALSE(is_unipotent(ds2.mat("Txh")));
    std::vector<RMat> gens{ds2.mat("Tx"), ds2.mat("Ty")};
    CHECK_FALSE(lcsl_verify(gens, ds2.weight_center).verdict);
}
