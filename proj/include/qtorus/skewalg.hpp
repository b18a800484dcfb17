#pragma once

// Brute-force verification oracle: exact arithmetic in the skew polynomial
// ring on X_1..X_n with relations X_i X_j = q_ij X_j X_i, over the rational
// group algebra of the declared multiparameter group (extended by fresh free
// generators standing in for generic witness coefficients). Everything a
// witness must satisfy is a polynomial identity here, so no division is
// ever needed.

#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "qtorus/bicharacter.hpp"
#include "qtorus/qmatrix.hpp"
#include "qtorus/witness.hpp"

namespace qtorus {

using Rat = mpq_class;

// element of the rational group algebra: finite sum of rational multiples of
// group elements, no zero coefficients stored
class Scalar {
public:
    Scalar() = default;
    static Scalar unit(LambdaElement e, Rat c = 1);

    bool is_zero() const { return terms_.empty(); }
    const std::map<LambdaElement, Rat, LambdaElementLess>& terms() const {
        return terms_;
    }
    void add_term(const LambdaElement& e, const Rat& c);

    bool operator==(const Scalar&) const = default;

private:
    std::map<LambdaElement, Rat, LambdaElementLess> terms_;
};

Scalar s_add(const Scalar& a, const Scalar& b);
Scalar s_neg(const Scalar& a);
Scalar s_mul(const LambdaGroup& g, const Scalar& a, const Scalar& b);

// finite sum of monomials X^gamma with Scalar coefficients; gamma in Z^n,
// nonnegative in polynomial contexts
struct SkewPoly {
    std::map<MonIdx, Scalar> terms;

    bool is_zero() const { return terms.empty(); }
    bool operator==(const SkewPoly&) const = default;
};

class SkewAlgebra {
public:
    explicit SkewAlgebra(QMatrix q);

    const QMatrix& q() const { return q_; }
    const LambdaGroup& group() const { return q_.group(); }
    std::size_t n() const { return q_.n(); }

    // s(gamma, delta) with X^gamma X^delta = s(gamma, delta) X^(gamma+delta)
    LambdaElement straightening_scalar(const MonIdx& gamma, const MonIdx& delta) const;
    // [X^gamma, X^delta] = s(gamma, delta) s(delta, gamma)^-1; must agree
    // with lambda_of
    LambdaElement monomial_commutator(const MonIdx& gamma, const MonIdx& delta) const;

    SkewPoly zero() const { return {}; }
    SkewPoly one() const;
    SkewPoly monomial(MonIdx gamma, Scalar c) const;
    SkewPoly generator(std::size_t i) const;

    SkewPoly add(const SkewPoly& f, const SkewPoly& g) const;
    SkewPoly sub(const SkewPoly& f, const SkewPoly& g) const;
    SkewPoly scale(const Scalar& c, const SkewPoly& f) const;
    SkewPoly multiply(const SkewPoly& f, const SkewPoly& g) const;
    SkewPoly pow(const SkewPoly& f, const Int& e) const;

    // ring homomorphism X_j -> images[j] applied to f (exponents of f must
    // be nonnegative)
    SkewPoly substitute(const SkewPoly& f, const std::vector<SkewPoly>& images) const;

    // Leibniz extension of D(X_j) = delta_ij X^nu applied to f
    SkewPoly derivation_apply(std::size_t i, const MonIdx& nu, const SkewPoly& f) const;

    // images[i] images[j] = q_ij images[j] images[i] for all i < j
    bool verify_endomorphism(const std::vector<SkewPoly>& images) const;

    // D annihilates every defining relation and D^2 kills every generator
    bool verify_derivation(std::size_t i, const MonIdx& nu) const;

private:
    QMatrix q_;
};

// q with `tags` fresh free generators appended; existing entries embed with
// zero exponents on the tags
QMatrix extend_with_tags(const QMatrix& q, std::size_t tags);
LambdaElement tag_element(const LambdaGroup& extended, std::size_t base_free_rank,
                          std::size_t t);

struct PairVerification {
    bool ok = false;
    std::string failure;  // empty when ok
};

// Expands both specs over a shared tag environment, then checks that both
// are endomorphisms and that the compositions fix every generator.
PairVerification verify_automorphism_pair_detail(const QMatrix& q,
                                                 const AutomorphismSpec& forward,
                                                 const AutomorphismSpec& inverse);
bool verify_automorphism_pair(const QMatrix& q, const AutomorphismSpec& forward,
                              const AutomorphismSpec& inverse);

}  // namespace qtorus
