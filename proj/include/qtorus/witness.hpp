#pragma once

// Machine-checkable automorphism witnesses and the report type every
// decision procedure returns.

#include <optional>
#include <string>
#include <vector>

#include "qtorus/bicharacter.hpp"
#include "qtorus/exterior.hpp"

namespace qtorus {

enum class AutKind { scalar, monomial, translation, exp_derivation };

// scalar:          X_i -> a_i X_i with fresh unit tags a_i
// monomial:        X_i -> k_i X_sigma(i)
// translation:     X_k -> X_k + b (or - b when negated), other generators fixed
// exp_derivation:  X_i -> X_i + X^nu (or - X^nu), nu_i = 0
struct AutomorphismSpec {
    AutKind kind = AutKind::scalar;
    Permutation sigma;        // monomial
    std::size_t index = 0;    // translation k / derivation i (0-based)
    MonIdx nu;                // exp_derivation
    bool negate = false;

    bool operator==(const AutomorphismSpec&) const = default;
};

AutomorphismSpec make_scalar_spec();
AutomorphismSpec make_monomial_spec(Permutation sigma);
AutomorphismSpec make_translation_spec(std::size_t k, bool negate = false);
AutomorphismSpec make_exp_derivation_spec(std::size_t i, MonIdx nu, bool negate = false);

// the two-sided inverse of the same witness, over the same unit tags
AutomorphismSpec canonical_inverse(const AutomorphismSpec& spec);

std::string aut_kind_name(AutKind kind);

enum class Verdict { rigid, non_rigid, hypotheses_violated, inconclusive };

std::string verdict_name(Verdict v);

struct WitnessRecord {
    AutomorphismSpec spec;
    std::optional<bool> verified;  // empty when the oracle was skipped
    std::string note;
};

struct RigidityReport {
    Verdict verdict = Verdict::inconclusive;
    std::string route;
    std::vector<WitnessRecord> witnesses;
    std::vector<std::string> assumptions;
    std::vector<std::string> log;
};

}  // namespace qtorus
