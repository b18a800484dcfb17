#pragma once

// Exterior squares of integer matrices acting on wedge-basis bivectors,
// stabilizer membership for the relations matrix, admissible permutation
// enumeration, and rank data of the fixed submodule of wedge^2 P.

#include <cstddef>
#include <vector>

#include "qtorus/abelian.hpp"
#include "qtorus/qmatrix.hpp"

namespace qtorus {

// Ordered list of pairs (i, j), i < j, in pair_rank order.
struct PairIndexing {
    std::size_t n = 0;

    std::size_t count() const { return n * (n - 1) / 2; }
    std::size_t rank(std::size_t i, std::size_t j) const { return pair_rank(n, i, j); }
    std::pair<std::size_t, std::size_t> unrank(std::size_t r) const {
        return pair_unrank(n, r);
    }
};

// images[i] = sigma(i), 0-based internally; a bijection of {0..n-1}.
struct Permutation {
    std::vector<std::size_t> images;

    std::size_t n() const { return images.size(); }
    std::size_t operator()(std::size_t i) const { return images[i]; }
    bool is_identity() const;
    Permutation inverse() const;
    std::vector<std::vector<std::size_t>> cycles() const;  // nontrivial cycles only

    static Permutation identity(std::size_t n);
    bool operator==(const Permutation&) const = default;
};

IntMatrix permutation_matrix(const Permutation& sigma);

// N x N matrix of 2x2 minors, N = C(n,2): entry ((ij),(kl)) is the minor of
// rows i, j and columns k, l.
IntMatrix exterior_square(const IntMatrix& a);

// det A = +-1 and wedge^2 A fixes the relations matrix columnwise
// (torsion columns compared modulo their orders).
bool stab_membership(const IntMatrix& a, const LambdaGroup& group,
                     const RelationsMatrixM& m);

// whether the change of variables X_i -> X_sigma(i) preserves the relations:
// q_ij = q_sigma(i)sigma(j) for all i < j
bool is_admissible_permutation(const QMatrix& q, const Permutation& sigma);

// All admissible permutations (identity included), in lexicographic order of
// the image vector. Throws cap_error when n exceeds the enumeration cap.
std::vector<Permutation> permutation_symmetries(const QMatrix& q,
                                                std::size_t cap = 8);

struct OrbitData {
    std::vector<IntVec> orbit_sums;  // deduplicated sums over the wedge^2 P orbit
    std::size_t orbit_count = 0;     // orbits of <sigma> on the signed wedge basis
};

OrbitData orbit_data(const Permutation& sigma, std::size_t n);

// rank over Z of the submodule fixed by wedge^2 P_sigma
std::size_t fix_rank(const Permutation& sigma, std::size_t n);

}  // namespace qtorus
