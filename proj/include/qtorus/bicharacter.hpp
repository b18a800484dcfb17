#pragma once

// The alternating commutator bicharacter on Z^n attached to q, its radical,
// bounded searches for independent commuting monomials, and the pencil of
// alternating forms with its positivity certificate.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qtorus/abelian.hpp"
#include "qtorus/qmatrix.hpp"

namespace qtorus {

// exponent vector of a monomial X^gamma, gamma in Z^n
using MonIdx = IntVec;

// lambda(gamma, delta) = prod_{i<j} q_ij^(gamma_i delta_j - gamma_j delta_i)
LambdaElement lambda_of(const QMatrix& q, const MonIdx& gamma, const MonIdx& delta);

// Z-basis of { gamma : lambda(gamma, e_j) = 1 for all j }; the support
// lattice of central monomials.
std::vector<MonIdx> radical_basis(const QMatrix& q);

// First (gamma, delta) in lexicographic order over the box [-bound, bound]^n
// with lambda(gamma, delta) = 1 and gamma, delta linearly independent.
// Absence is evidence, not proof, that no independent pair commutes.
std::optional<std::pair<MonIdx, MonIdx>> bounded_isotropic_pair_search(
    const QMatrix& q, long bound);

// One antisymmetric Gram matrix per free generator: (G_s)_ij for i < j is the
// exponent of generator s in q_ij, so the s-exponent of lambda(gamma, delta)
// equals gamma^T G_s delta.
struct AlternatingFormSet {
    std::vector<IntMatrix> forms;
};

// Requires entries with no torsion component.
AlternatingFormSet forms_of(const QMatrix& q);

// Multivariate polynomial over Z with a canonical (sorted) term order.
class IntPolynomial {
public:
    explicit IntPolynomial(std::size_t nvars = 0) : nvars_(nvars) {}
    static IntPolynomial variable(std::size_t nvars, std::size_t index);
    static IntPolynomial constant(std::size_t nvars, Int c);

    std::size_t nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<std::vector<unsigned>, Int>& terms() const { return terms_; }

    void add_term(const std::vector<unsigned>& exps, const Int& c);

    IntPolynomial operator+(const IntPolynomial& rhs) const;
    IntPolynomial operator-(const IntPolynomial& rhs) const;
    IntPolynomial operator*(const IntPolynomial& rhs) const;
    IntPolynomial pow(unsigned long e) const;
    bool operator==(const IntPolynomial&) const = default;

    Int evaluate(const IntVec& point) const;
    // gcd of all coefficients (nonnegative; 0 for the zero polynomial)
    Int content() const;
    // total degree when homogeneous
    std::optional<unsigned> homogeneous_degree() const;

    std::string to_string() const;  // e.g. "x1^4 + 2*x1^2*x2^2"

private:
    std::size_t nvars_;
    std::map<std::vector<unsigned>, Int> terms_;  // exponent -> coefficient, no zeros
};

// det(x_1 G_1 + ... + x_l G_l) expanded exactly; identically zero for odd n.
IntPolynomial pencil_determinant(const AlternatingFormSet& forms);

enum class CertificateVerdict { certified, not_certified };

// Certified when the determinant is c * (sum_s a_s x_s^2)^k with c > 0 and
// every a_s > 0, which leaves the pencil nonsingular away from the origin.
// "not_certified" is not a disproof.
CertificateVerdict pencil_anisotropy_certificate(const IntPolynomial& pdet);

// The rank-4 matrix whose three alternating forms are the images of the
// quaternion units i, j, k in the regular representation.
QMatrix quaternion_example();

}  // namespace qtorus
