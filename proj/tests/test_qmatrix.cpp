#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qtorus/qmatrix.hpp"
#include "test_util.hpp"

using namespace qtorus;

namespace {

const char* kQuaternionSpec = R"({
  "n": 4,
  "lambda": {"free_rank": 3, "torsion_orders": []},
  "entries": {
    "1,2": {"free": [-1, 0, 0]},
    "1,3": {"free": [0, -1, 0]},
    "1,4": {"free": [0, 0, -1]},
    "2,3": {"free": [0, 0, -1]},
    "2,4": {"free": [0, 1, 0]},
    "3,4": {"free": [-1, 0, 0]}
  }
})";

QMatrix all_identity(std::size_t n) {
    LambdaGroup g{1, {}};
    return QMatrix(n, g, std::vector<LambdaElement>(n * (n - 1) / 2, identity_element(g)));
}

LambdaElement free_elem(const LambdaGroup& g, const std::vector<long>& e) {
    LambdaElement x = identity_element(g);
    for (std::size_t i = 0; i < e.size(); ++i) x.free[i] = e[i];
    return x;
}

}  // namespace

TEST_CASE("pair indexing is lexicographic") {
    CHECK(pair_rank(4, 0, 1) == 0);
    CHECK(pair_rank(4, 0, 3) == 2);
    CHECK(pair_rank(4, 1, 2) == 3);
    CHECK(pair_rank(4, 2, 3) == 5);
    for (std::size_t n = 2; n <= 7; ++n)
        for (std::size_t r = 0; r < n * (n - 1) / 2; ++r) {
            auto [i, j] = pair_unrank(n, r);
            CHECK(i < j);
            CHECK(pair_rank(n, i, j) == r);
        }
}

TEST_CASE("parse_spec accepts the quantum plane") {
    QMatrix q = parse_spec(R"({"n": 2, "lambda": {"free_rank": 1, "torsion_orders": []},
                               "entries": {"1,2": {"free": [1]}}})");
    CHECK(q.n() == 2);
    CHECK(q.upper(0, 1).free == IntVec{1});
    CHECK(is_identity(q.entry(0, 0)));
    CHECK(q.entry(1, 0).free == IntVec{-1});
}

TEST_CASE("parse_spec diagnostics") {
    CHECK_THROWS_WITH_AS(
        parse_spec(R"({"n": 3, "lambda": {"free_rank": 1},
                       "entries": {"1,2": {"free": [1]}, "1,3": {"free": [1]}}})"),
        "missing entry (2,3)", spec_error);
    CHECK_THROWS_AS(parse_spec(R"({"n": 1, "lambda": {"free_rank": 1}, "entries": {}})"),
                    spec_error);
    CHECK_THROWS_AS(
        parse_spec(R"({"n": 2, "lambda": {"free_rank": 2},
                       "entries": {"1,2": {"free": [1]}}})"),
        spec_error);
    CHECK_THROWS_AS(
        parse_spec(R"({"n": 2, "lambda": {"free_rank": 0, "torsion_orders": [1]},
                       "entries": {"1,2": {"torsion": [0]}}})"),
        spec_error);
    CHECK_THROWS_AS(parse_spec("not json"), spec_error);
}

TEST_CASE("serialize round-trips") {
    std::mt19937 rng(55);
    for (int t = 0; t < 20; ++t) {
        QMatrix q = testutil::random_qmatrix(rng, 2 + t % 4, 2, t % 2 ? std::vector<long>{4} : std::vector<long>{});
        QMatrix back = parse_spec(serialize_spec(q));
        CHECK(back == q);
    }
    QMatrix quat = parse_spec(kQuaternionSpec);
    CHECK(parse_spec(serialize_spec(quat)) == quat);
}

TEST_CASE("torsion entries are stored reduced") {
    QMatrix q = parse_spec(R"({"n": 2, "lambda": {"free_rank": 0, "torsion_orders": [5]},
                               "entries": {"1,2": {"torsion": [7]}}})");
    CHECK(q.upper(0, 1).torsion == IntVec{2});
    QMatrix r = parse_spec(R"({"n": 2, "lambda": {"free_rank": 0, "torsion_orders": [5]},
                               "entries": {"1,2": {"torsion": [5]}}})");
    CHECK(is_identity(r.upper(0, 1)));
}

TEST_CASE("relations matrix rows follow the pair order") {
    QMatrix quat = parse_spec(kQuaternionSpec);
    RelationsMatrixM m = relations_matrix(quat);
    REQUIRE(m.free_block.rows() == 6);
    REQUIRE(m.free_block.cols() == 3);
    const long expect[6][3] = {{-1, 0, 0}, {0, -1, 0}, {0, 0, -1},
                               {0, 0, -1}, {0, 1, 0},  {-1, 0, 0}};
    for (std::size_t r = 0; r < 6; ++r)
        for (std::size_t c = 0; c < 3; ++c) CHECK(m.free_block.at(r, c) == expect[r][c]);

    CHECK(relations_matrix(all_identity(3)).free_block.is_zero());

    QMatrix q3 = parse_spec(R"({"n": 3, "lambda": {"free_rank": 2},
        "entries": {"1,2": {"free": [1,0]}, "1,3": {"free": [1,0]}, "2,3": {"free": [0,1]}}})");
    RelationsMatrixM m3 = relations_matrix(q3);
    const long expect3[3][2] = {{1, 0}, {1, 0}, {0, 1}};
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 2; ++c) CHECK(m3.free_block.at(r, c) == expect3[r][c]);
}

TEST_CASE("lambda invariants") {
    QMatrix quat = parse_spec(kQuaternionSpec);
    LambdaInvariants inv = lambda_invariants(quat);
    CHECK(inv.rank == 3);
    CHECK(inv.torsion_free);

    LambdaInvariants triv = lambda_invariants(all_identity(3));
    CHECK(triv.rank == 0);
    CHECK(triv.torsion_free);

    QMatrix t5 = parse_spec(R"({"n": 2, "lambda": {"free_rank": 0, "torsion_orders": [5]},
                                "entries": {"1,2": {"torsion": [1]}}})");
    LambdaInvariants inv5 = lambda_invariants(t5);
    CHECK(inv5.rank == 0);
    CHECK(!inv5.torsion_free);

    // zeta * p1 with zeta of order 2 generates an infinite cyclic group
    QMatrix mix = parse_spec(R"({"n": 2, "lambda": {"free_rank": 1, "torsion_orders": [2]},
                                 "entries": {"1,2": {"free": [1], "torsion": [1]}}})");
    LambdaInvariants invm = lambda_invariants(mix);
    CHECK(invm.rank == 1);
    CHECK(invm.torsion_free);

    std::mt19937 rng(321);
    for (int t = 0; t < 20; ++t) {
        QMatrix q = testutil::random_qmatrix(rng, 3 + t % 3, 2);
        LambdaInvariants i = lambda_invariants(q);
        CHECK(i.rank <= 2);
        CHECK(i.torsion_free);  // free declared group, no torsion anywhere
    }
}

TEST_CASE("derived entries are multiplicatively antisymmetric") {
    std::mt19937 rng(9090);
    for (int t = 0; t < 20; ++t) {
        QMatrix q = testutil::random_qmatrix(rng, 2 + t % 4, 2,
                                             t % 2 ? std::vector<long>{3} : std::vector<long>{});
        const std::size_t pairs = q.n() * (q.n() - 1) / 2;
        LambdaInvariants inv = lambda_invariants(q);
        CHECK(inv.rank <= std::min(pairs, q.group().free_rank + q.group().torsion_rank()));
        for (std::size_t i = 0; i < q.n(); ++i) {
            CHECK(is_identity(q.entry(i, i)));
            for (std::size_t j = 0; j < q.n(); ++j)
                CHECK(is_identity(mul(q.group(), q.entry(i, j), q.entry(j, i))));
        }
    }
}

TEST_CASE("torsion free reduction") {
    QMatrix quat = parse_spec(kQuaternionSpec);
    TorsionFreeReduction r = torsion_free_reduction(quat);
    CHECK(r.exponent == 1);
    CHECK(r.reduced == quat);

    QMatrix t5 = parse_spec(R"({"n": 2, "lambda": {"free_rank": 0, "torsion_orders": [5]},
                                "entries": {"1,2": {"torsion": [1]}}})");
    TorsionFreeReduction r5 = torsion_free_reduction(t5);
    CHECK(r5.exponent == 5);
    CHECK(is_identity(r5.reduced.upper(0, 1)));

    QMatrix mix = parse_spec(R"({"n": 2, "lambda": {"free_rank": 1, "torsion_orders": [2]},
                                 "entries": {"1,2": {"free": [1], "torsion": [1]}}})");
    TorsionFreeReduction rm = torsion_free_reduction(mix);
    CHECK(rm.exponent == 2);
    CHECK(rm.reduced.upper(0, 1).free == IntVec{4});
    CHECK(rm.reduced.upper(0, 1).torsion == IntVec{0});

    std::mt19937 rng(777);
    for (int t = 0; t < 15; ++t) {
        QMatrix q = testutil::random_qmatrix(rng, 3, 1, {2, 6});
        TorsionFreeReduction red = torsion_free_reduction(q);
        CHECK(lambda_invariants(red.reduced).torsion_free);
    }
}

TEST_CASE("has_equal_rows") {
    auto p = has_equal_rows(all_identity(3));
    REQUIRE(p.has_value());
    CHECK(*p == std::make_pair<std::size_t, std::size_t>(0, 1));

    QMatrix quat = parse_spec(kQuaternionSpec);
    CHECK(!has_equal_rows(quat).has_value());

    // q12 = q13 = 1, q23 = p: rows are (1,1,1), (1,1,p), (1,1/p,1)
    QMatrix rect = parse_spec(R"({"n": 3, "lambda": {"free_rank": 1},
        "entries": {"1,2": {"free": [0]}, "1,3": {"free": [0]}, "2,3": {"free": [1]}}})");
    CHECK(!has_equal_rows(rect).has_value());

    // planted equal rows 1 and 3: q13 = 1, q12 = q32  (so q23 = q12^-1... build directly)
    LambdaGroup g{1, {}};
    std::vector<LambdaElement> upper(3, identity_element(g));
    upper[pair_rank(3, 0, 1)] = free_elem(g, {2});   // q12 = p^2
    upper[pair_rank(3, 0, 2)] = identity_element(g); // q13 = 1
    upper[pair_rank(3, 1, 2)] = free_elem(g, {-2});  // q23 = p^-2 so q32 = p^2 = q12
    QMatrix planted(3, g, upper);
    auto hit = has_equal_rows(planted);
    REQUIRE(hit.has_value());
    CHECK(*hit == std::make_pair<std::size_t, std::size_t>(0, 2));
}
