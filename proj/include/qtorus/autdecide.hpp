#pragma once

// Rigidity decision procedures. Every non-rigid verdict carries a witness
// that the skew-polynomial oracle has verified; every rigid verdict logs the
// conditions it checked. Genericity of the declared free generators and a
// characteristic-zero coefficient field are assumptions recorded in each
// report, not theorems checked here.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "qtorus/bicharacter.hpp"
#include "qtorus/exterior.hpp"
#include "qtorus/qmatrix.hpp"
#include "qtorus/witness.hpp"

namespace qtorus {

// Some nonzero nu in N^n with nu_i = 0 and prod_k q_kj^(nu_k) = q_ij for all
// j != i; such a nu defines a square-zero derivation X_i -> X^nu whose
// exponential is a nontoric automorphism. Complete via the nonnegative
// solver.
std::optional<MonIdx> derivation_exponent_witness(const QMatrix& q, std::size_t i);

struct DerivationModuleStatus {
    bool zero = true;
    std::optional<std::pair<std::size_t, MonIdx>> witness;  // (i, nu)
};

// zero iff no index admits a derivation exponent witness
DerivationModuleStatus derivation_module_vanishes(const QMatrix& q);

// Decision through linearization, n >= 3, at most one identity entry
// among the q_ij (i < j): rigid iff the derivation module vanishes and no
// admissible variable permutation exists (with the one-identity-entry
// variant quantifying over split permutations). Two or more identity
// entries: hypotheses_violated, with translation witnesses surfaced for
// every all-identity row.
RigidityReport decide_linear_criterion(const QMatrix& q, std::size_t perm_cap = 8,
                                       bool run_oracle = true);

// Rank certificate, n >= 3: a torsion-free multiparameter group of rank at
// least C(n-1,2) + 1 forces rigidity. Never returns a negative verdict.
RigidityReport decide_rank_threshold(const QMatrix& q, std::size_t perm_cap = 8);

struct RankDeficientExample {
    QMatrix q;
    AutomorphismSpec witness;  // translation at the all-identity first row
};

// First row all identity, lower block filled with r distinct free
// generators: the group has rank exactly r < C(n-1,2) + 1 and the
// translation X_1 -> X_1 + b is a nontoric automorphism, so the rank
// threshold above is sharp.
RankDeficientExample build_rank_deficient_example(std::size_t n, std::size_t r);

// An independent commuting monomial pair extracted from a non-identity
// admissible permutation: (2 e_i, e_j) for a transposition, else
// (e_(c[r-2]) + e_(c[0]), e_(c[r-1])) for an r-cycle c. Checked against
// lambda_of before returning.
std::optional<std::pair<MonIdx, MonIdx>> commuting_witness_from_permutation(
    const QMatrix& q, const Permutation& sigma);

struct DimensionOneAnalysis {
    RigidityReport report;
    std::optional<std::pair<MonIdx, MonIdx>> commuting_pair;
    bool pencil_applicable = false;
    IntPolynomial pencil_det;
    CertificateVerdict certificate = CertificateVerdict::not_certified;
};

// Dimension-one route, n >= 2. Certified: torsion-free entries, n even and
// the pencil determinant passes the anisotropy certificate, so no two
// independent monomials commute and only scalar automorphisms remain.
// Otherwise a bounded search plus the permutation check give rigid as
// bounded evidence; a found commuting pair downgrades to inconclusive and a
// non-identity admissible permutation to non_rigid.
DimensionOneAnalysis decide_dimension_one(const QMatrix& q, long bound = 3,
                                          std::size_t perm_cap = 8,
                                          bool run_oracle = true);

}  // namespace qtorus
