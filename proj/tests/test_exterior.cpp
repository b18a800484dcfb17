#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qtorus/exterior.hpp"
#include "test_util.hpp"

using namespace qtorus;
using testutil::random_matrix;
using testutil::random_unimodular;

namespace {

QMatrix cyclic_symmetric3() {
    LambdaGroup g{1, {}};
    std::vector<LambdaElement> upper(3, identity_element(g));
    upper[pair_rank(3, 0, 1)].free = IntVec{1};
    upper[pair_rank(3, 0, 2)].free = IntVec{-1};
    upper[pair_rank(3, 1, 2)].free = IntVec{1};
    return QMatrix(3, g, upper);
}

QMatrix quaternion4() {
    return parse_spec(R"({
      "n": 4, "lambda": {"free_rank": 3},
      "entries": {"1,2": {"free": [-1,0,0]}, "1,3": {"free": [0,-1,0]},
                  "1,4": {"free": [0,0,-1]}, "2,3": {"free": [0,0,-1]},
                  "2,4": {"free": [0,1,0]},  "3,4": {"free": [-1,0,0]}}})");
}

// independent construction of wedge^2 P from the action on wedge basis vectors
IntMatrix wedge_of_permutation(const Permutation& sigma) {
    const std::size_t n = sigma.n();
    const PairIndexing pairs{n};
    IntMatrix w(pairs.count(), pairs.count());
    for (std::size_t c = 0; c < pairs.count(); ++c) {
        auto [k, l] = pairs.unrank(c);
        std::size_t a = sigma(k), b = sigma(l);
        if (a < b)
            w.at(pairs.rank(a, b), c) = 1;
        else
            w.at(pairs.rank(b, a), c) = -1;
    }
    return w;
}

std::vector<Permutation> all_permutations(std::size_t n) {
    std::vector<Permutation> out;
    Permutation s = Permutation::identity(n);
    do out.push_back(s);
    while (std::next_permutation(s.images.begin(), s.images.end()));
    return out;
}

std::size_t rank_of_span(const std::vector<IntVec>& vecs, std::size_t dim) {
    IntMatrix m(dim, vecs.size());
    for (std::size_t j = 0; j < vecs.size(); ++j)
        for (std::size_t i = 0; i < dim; ++i) m.at(i, j) = vecs[j][i];
    return integer_rank(m);
}

}  // namespace

TEST_CASE("exterior square of fixed matrices") {
    CHECK(exterior_square(IntMatrix::identity(3)) == IntMatrix::identity(3));

    IntMatrix d(3, 3);
    d.at(0, 0) = 2;
    d.at(1, 1) = 3;
    d.at(2, 2) = 5;
    IntMatrix wd = exterior_square(d);
    CHECK(wd.at(0, 0) == 6);
    CHECK(wd.at(1, 1) == 10);
    CHECK(wd.at(2, 2) == 15);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            if (i != j) CHECK(wd.at(i, j) == 0);
}

TEST_CASE("exterior square of permutation matrices matches the basis action") {
    for (std::size_t n = 2; n <= 5; ++n)
        for (const Permutation& s : all_permutations(n))
            CHECK(exterior_square(permutation_matrix(s)) == wedge_of_permutation(s));
}

TEST_CASE("exterior square is functorial and multiplies determinants") {
    std::mt19937 rng(4242);
    for (int t = 0; t < 100; ++t) {
        std::size_t n = 2 + t % 4;  // up to 5
        IntMatrix a = random_unimodular(rng, n), b = random_unimodular(rng, n);
        CHECK(exterior_square(a * b) == exterior_square(a) * exterior_square(b));
    }
    for (int t = 0; t < 30; ++t) {
        std::size_t n = 2 + t % 4;
        IntMatrix a = random_matrix(rng, n, n, -3, 3);
        Int lhs = exterior_square(a).determinant();
        Int rhs = 1, da = a.determinant();
        for (std::size_t k = 0; k + 1 < n; ++k) rhs *= da;
        CHECK(lhs == rhs);
    }
}

TEST_CASE("stab membership") {
    QMatrix quat = quaternion4();
    RelationsMatrixM m = relations_matrix(quat);
    CHECK(stab_membership(IntMatrix::identity(4), quat.group(), m));

    Permutation swap12{{1, 0, 2, 3}};
    CHECK(!stab_membership(permutation_matrix(swap12), quat.group(), m));

    // the zero relations matrix is fixed by every unimodular matrix
    LambdaGroup g{2, {}};
    QMatrix comm(3, g, std::vector<LambdaElement>(3, identity_element(g)));
    RelationsMatrixM zero = relations_matrix(comm);
    std::mt19937 rng(11);
    for (int t = 0; t < 10; ++t)
        CHECK(stab_membership(random_unimodular(rng, 3), g, zero));
}

TEST_CASE("permutation symmetries") {
    LambdaGroup g{1, {}};
    QMatrix triv(3, g, std::vector<LambdaElement>(3, identity_element(g)));
    CHECK(permutation_symmetries(triv).size() == 6);

    QMatrix quat = quaternion4();
    auto syms = permutation_symmetries(quat);
    REQUIRE(syms.size() == 1);
    CHECK(syms[0].is_identity());

    QMatrix cyc = cyclic_symmetric3();
    auto cs = permutation_symmetries(cyc);
    Permutation rot{{1, 2, 0}};  // 1 -> 2 -> 3 -> 1
    CHECK(std::find(cs.begin(), cs.end(), rot) != cs.end());

    CHECK_THROWS_AS(permutation_symmetries(triv, 2), cap_error);
}

TEST_CASE("stab membership matches admissibility for all permutations") {
    std::mt19937 rng(31337);
    for (int t = 0; t < 12; ++t) {
        std::size_t n = 3 + t % 3;  // 3..5
        QMatrix q = (t % 4 == 0) ? testutil::random_qmatrix(rng, n, 1, {3})
                                 : testutil::random_qmatrix(rng, n, 2);
        RelationsMatrixM m = relations_matrix(q);
        for (const Permutation& s : all_permutations(n))
            CHECK(is_admissible_permutation(q, s) ==
                  stab_membership(permutation_matrix(s), q.group(), m));
    }
}

TEST_CASE("orbit data") {
    OrbitData id3 = orbit_data(Permutation::identity(3), 3);
    CHECK(id3.orbit_count == 6);  // every signed bivector is its own orbit
    REQUIRE(id3.orbit_sums.size() == 3);
    CHECK(rank_of_span(id3.orbit_sums, 3) == 3);

    // transposition: the (1,2) orbit sum cancels, the other two coincide
    OrbitData sw = orbit_data(Permutation{{1, 0, 2}}, 3);
    bool has_zero = false;
    for (const IntVec& v : sw.orbit_sums) {
        bool zero = true;
        for (const Int& x : v)
            if (x != 0) zero = false;
        if (zero) has_zero = true;
    }
    CHECK(has_zero);
    CHECK(rank_of_span(sw.orbit_sums, 3) == 1);

    OrbitData rot = orbit_data(Permutation{{1, 2, 0}}, 3);
    CHECK(rank_of_span(rot.orbit_sums, 3) == 1);

    OrbitData five = orbit_data(Permutation{{1, 2, 3, 4, 0}}, 5);
    CHECK(five.orbit_count == 4);
}

TEST_CASE("fix rank") {
    CHECK(fix_rank(Permutation::identity(3), 3) == 3);
    CHECK(fix_rank(Permutation{{1, 0, 2}}, 3) == 1);
    CHECK(fix_rank(Permutation{{1, 2, 3, 4, 0}}, 5) == 2);
}

TEST_CASE("fixed-module bounds for small ranks") {
    for (std::size_t n = 3; n <= 5; ++n) {
        const std::size_t threshold = (n - 1) * (n - 2) / 2 + 1;
        for (const Permutation& s : all_permutations(n)) {
            if (s.is_identity()) continue;
            OrbitData od = orbit_data(s, n);
            std::size_t fr = fix_rank(s, n);
            CHECK(fr < threshold);
            CHECK(2 * fr <= od.orbit_count);
            CHECK(od.orbit_count <= n * n - 3 * n + 3);
            CHECK(rank_of_span(od.orbit_sums, n * (n - 1) / 2) == fr);
        }
    }
}
