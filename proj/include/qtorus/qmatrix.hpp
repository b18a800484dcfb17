#pragma once

// The multiplicatively antisymmetric matrix q over a finitely generated
// abelian group of multiparameters, declared by generators: free generators
// first, then torsion generators of the stated orders. Every scalar q_ij is
// an exponent word in those generators, so all identities among the
// multiparameters are decidable exactly.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qtorus/abelian.hpp"
#include "qtorus/errors.hpp"

namespace qtorus {

struct LambdaGroup {
    std::size_t free_rank = 0;
    IntVec torsion_orders;  // each >= 2

    std::size_t torsion_rank() const { return torsion_orders.size(); }
    bool operator==(const LambdaGroup&) const = default;
};

// One group element as an exponent vector; torsion entries are stored
// reduced into [0, d_m).
struct LambdaElement {
    IntVec free;
    IntVec torsion;

    bool operator==(const LambdaElement&) const = default;
};

bool lex_less(const LambdaElement& a, const LambdaElement& b);

struct LambdaElementLess {
    bool operator()(const LambdaElement& a, const LambdaElement& b) const {
        return lex_less(a, b);
    }
};

LambdaElement identity_element(const LambdaGroup& g);
LambdaElement reduced(const LambdaGroup& g, LambdaElement e);
LambdaElement mul(const LambdaGroup& g, const LambdaElement& a, const LambdaElement& b);
LambdaElement inverse(const LambdaGroup& g, const LambdaElement& a);
LambdaElement power(const LambdaGroup& g, const LambdaElement& a, const Int& e);
bool is_identity(const LambdaElement& e);

// Lexicographic rank of the pair (i, j), 0 <= i < j < n, in the fixed global
// order (0,1), (0,2), ..., (0,n-1), (1,2), ...
std::size_t pair_rank(std::size_t n, std::size_t i, std::size_t j);
std::pair<std::size_t, std::size_t> pair_unrank(std::size_t n, std::size_t r);

class QMatrix {
public:
    QMatrix(std::size_t n, LambdaGroup group, std::vector<LambdaElement> upper);

    std::size_t n() const { return n_; }
    const LambdaGroup& group() const { return group_; }

    // strict upper entry, i < j (0-based)
    const LambdaElement& upper(std::size_t i, std::size_t j) const;
    // derived entry for any i, j: q_ii = 1, q_ji = q_ij^-1
    LambdaElement entry(std::size_t i, std::size_t j) const;

    bool operator==(const QMatrix&) const = default;

private:
    std::size_t n_;
    LambdaGroup group_;
    std::vector<LambdaElement> upper_;  // pair_rank order
};

// Exponent matrix of the upper entries in the declared generator basis,
// rows in pair_rank order; torsion entries reduced mod the column's order.
struct RelationsMatrixM {
    IntMatrix free_block;     // C(n,2) x free_rank
    IntMatrix torsion_block;  // C(n,2) x torsion_rank
};

RelationsMatrixM relations_matrix(const QMatrix& q);

// JSON schema:
//   { "n": int, "lambda": { "free_rank": int, "torsion_orders": [int...] },
//     "entries": { "i,j": { "free": [int...], "torsion": [int...] }, ... } }
// with one entry per pair i < j (1-based); an omitted "torsion" means zero.
QMatrix parse_spec(const std::string& text);
std::string serialize_spec(const QMatrix& q);

struct LambdaInvariants {
    std::size_t rank = 0;    // torsion-free rank of the subgroup the entries generate
    bool torsion_free = true;
};

LambdaInvariants lambda_invariants(const QMatrix& q);

struct TorsionFreeReduction {
    QMatrix reduced;  // entries raised to the power p^2
    Int exponent;     // p
};

// Passes to the subalgebra on the p-th powers of the generators, where p is
// the exponent of the group generated by the entries' torsion components;
// the reduced entries are purely free exponent words.
TorsionFreeReduction torsion_free_reduction(const QMatrix& q);

// First pair i < j (pair_rank order) whose full derived rows coincide.
std::optional<std::pair<std::size_t, std::size_t>> has_equal_rows(const QMatrix& q);

}  // namespace qtorus
