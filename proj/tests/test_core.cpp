#include <catch2/catch_amalgamated.hpp>

#include <nilcone/poly.hpp>
#include <nilcone/quad.hpp>
#include <nilcone/unipotent.hpp>
#include <nilcone/word.hpp>

using namespace nilcone;

namespace {
RMat from_rows(const std::vector<std::vector<long>>& rows) {
    RMat m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (int i = 0; i < m.r; ++i)
        for (int j = 0; j < m.c; ++j) m(i, j) = Rat(rows[i][j]);
    return m;
}
} // namespace

TEST_CASE("rational parsing round trips", "[core]") {
    CHECK(parse_rat("-22/7") == Rat(-22, 7));
    CHECK(rat_str(parse_rat("6/4")) == "3/2");
    CHECK(parse_rat("0") == 0);
    CHECK_THROWS_AS(parse_rat("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rat("abc"), ParseError);
}

TEST_CASE("matrix inverse and powers", "[core]") {
    RMat a = from_rows({{1, 2}, {3, 7}});
    CHECK(a * inverse(a) == RMat::identity(2));
    CHECK(mpow(a, 0) == RMat::identity(2));
    CHECK(mpow(a, -2) == inverse(a * a));
    CHECK(a.trace() == 8);
    CHECK_THROWS_AS(inverse(from_rows({{1, 2}, {2, 4}})), Singular);
    CHECK(rank(from_rows({{1, 2}, {2, 4}})) == 1);
}

TEST_CASE("column span comparison", "[core]") {
    RMat e01(3, 2), e10(3, 2);
    e01(0, 0) = 1; e01(1, 1) = 1;
    e10(1, 0) = 1; e10(0, 1) = 2;  // same span, different basis
    CHECK(same_colspan(e01, e10));
    RMat e2(3, 1);
    e2(2, 0) = 1;
    CHECK_FALSE(same_colspan(e01, hstack(e01, e2)));
}

TEST_CASE("unipotent logarithm inverts nilpotent exponential", "[core]") {
    RMat n = from_rows({{0, 1, 3}, {0, 0, -2}, {0, 0, 0}});
    RMat t = nilpotent_exp(n);
    CHECK(is_unipotent(t));
    CHECK(unipotent_log(t) == n);
    CHECK_THROWS_AS(unipotent_log(from_rows({{2, 0}, {0, 1}})), NotUnipotent);
    CHECK_THROWS_AS(nilpotent_exp(from_rows({{1, 0}, {0, 1}})), NotNilpotent);
}

TEST_CASE("quasi-unipotency order", "[core]") {
    RMat m = from_rows({{-1, 1}, {0, -1}});  // m^2 unipotent, m not
    CHECK(quasi_unipotency_order(m, 6) == 2);
    CHECK(quasi_unipotency_order(RMat::identity(3), 6) == 1);
    CHECK_THROWS_AS(quasi_unipotency_order(from_rows({{2, 0}, {0, 1}}), 6), NotQuasiUnipotent);
}

TEST_CASE("symplectic form check", "[core]") {
    FormSpec form;
    form.j = from_rows({{0, 1}, {-1, 0}});
    form.column_action = true;
    CHECK(preserves_form(from_rows({{1, 1}, {0, 1}}), form));   // det 1, 2x2
    CHECK_FALSE(preserves_form(from_rows({{2, 0}, {0, 1}}), form));
}

TEST_CASE("quadratic field arithmetic", "[core]") {
    Quad r2(Rat(0), Rat(1), 2);  // sqrt(2)
    CHECK(r2 * r2 == Quad(Rat(2)));
    CHECK((Quad(Rat(1)) + r2) * (Quad(Rat(1)) - r2) == Quad(Rat(-1)));
    CHECK((Quad(Rat(1)) / (Quad(Rat(1)) + r2)) == Quad(Rat(-1), Rat(1), 2));
    Quad r3(Rat(0), Rat(1), 3);
    CHECK_THROWS_AS(r2 + r3, MixedRadicand);
    CHECK(Quad(Rat(3), Rat(-2), 2).sign() > 0);   // 3 - 2*sqrt(2) ~ +0.17
    CHECK(Quad(Rat(-3), Rat(2), 2).sign() < 0);   // 2*sqrt(2) - 3 ~ -0.17
    CHECK(Quad(Rat(-3), Rat(2), 2) < Quad(Rat(0)));
}

TEST_CASE("eigenray detection over a quadratic field", "[core]") {
    RMat m = from_rows({{35, 6}, {-6, -1}});
    QuadRay good{Quad(Rat(1)), Quad(Rat(-3), Rat(2), 2)};   // (1, -3 + 2 sqrt2)
    QuadRay bad{Quad(Rat(1)), Quad(Rat(3), Rat(-2), 2)};    // published sign slip
    CHECK(is_eigenray(m, good));
    CHECK_FALSE(is_eigenray(m, bad));
}

TEST_CASE("word composition DSL", "[core]") {
    std::map<std::string, RMat> names{{"a", from_rows({{1, 1}, {0, 1}})},
                                      {"b", from_rows({{1, 0}, {1, 1}})}};
    CHECK(compose_word("a * b", names) == names["a"] * names["b"]);
    CHECK(compose_word("a^-1 * a", names) == RMat::identity(2));
    CHECK(compose_word("a^3", names) == mpow(names["a"], 3));
    CHECK(compose_word("@identity", names) == RMat::identity(2));
    CHECK_THROWS_AS(compose_word("c", names), UnknownGenerator);
}

TEST_CASE("univariate polynomial division and multiplicity", "[core]") {
    // p = (x - 1/4)^4 * (x + 2)
    Poly1 p = Poly1::monomial(Rat(1), 0);
    Poly1 lin1 = Poly1::monomial(Rat(1), 1) + Poly1(Rat(-1, 4));
    Poly1 lin2 = Poly1::monomial(Rat(1), 1) + Poly1(Rat(2));
    for (int i = 0; i < 4; ++i) p = p * lin1;
    p = p * lin2;
    CHECK(root_multiplicity(p, Rat(1, 4)) == 4);
    CHECK(root_multiplicity(p, Rat(-2)) == 1);
    CHECK(root_multiplicity(p, Rat(3)) == 0);
    auto [q, r] = divmod(p, lin1);
    CHECK(r.is_zero());
    CHECK(q * lin1 == p);
}

TEST_CASE("bivariate polynomials and exact division", "[core]") {
    Poly2 p = parse_poly2("(1 - 4*x - 4*y)^2");
    Poly2 f = parse_poly2("1 - 4*x - 4*y");
    Poly2 q;
    CHECK(divides_exactly(f, p, &q));
    CHECK(q == f);
    CHECK_FALSE(divides_exactly(parse_poly2("x + y"), p, &q));
    CHECK(parse_poly2("-22*x - 18*y").theta_x() == parse_poly2("-22*x"));
    Poly1 px = parse_poly2("x^2 - y").substitute_y(Rat(4));
    CHECK(px == Poly1::monomial(Rat(1), 2) + Poly1(Rat(-4)));
    CHECK_THROWS_AS(parse_poly2("x +* y"), ParseError);
}
