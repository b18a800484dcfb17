#pragma once

// Batch analysis pipeline: run every decision route on one matrix, verify
// every witness with the skew-polynomial oracle, and aggregate a single
// verdict with all routes logged. Also the named example gallery and the
// witness-file entry points used by the command line tool.

#include <optional>
#include <string>
#include <vector>

#include "qtorus/autdecide.hpp"
#include "qtorus/witness.hpp"

namespace qtorus {

struct AnalysisOptions {
    long bound = 3;           // isotropic search box
    std::size_t perm_cap = 8; // permutation enumeration cap
    bool run_oracle = true;   // verify witnesses with the skew-polynomial oracle
};

struct AnalysisReport {
    AnalysisReport(QMatrix in, AnalysisOptions opts)
        : input(std::move(in)), options(opts) {}

    QMatrix input;
    AnalysisOptions options;
    LambdaInvariants lambda;
    std::vector<std::pair<std::size_t, std::size_t>> identity_entries;  // 0-based
    Int torsion_reduction_exponent = 1;
    std::optional<LambdaInvariants> reduced_lambda;  // present when exponent > 1
    DerivationModuleStatus derivation_module;
    std::vector<Permutation> symmetries;
    std::vector<MonIdx> radical;
    std::optional<RigidityReport> linear_criterion;  // skipped when n < 3
    std::optional<RigidityReport> rank_threshold;    // skipped when n < 3
    DimensionOneAnalysis dimension_one;
    Verdict verdict = Verdict::inconclusive;
    std::string route;
};

// Runs invariants, the torsion reduction, the derivation-module test, the
// permutation enumeration, the radical, and all three decision routes.
// Aggregation: any witness (each oracle-verified unless disabled) means
// non_rigid; otherwise the strongest rigid route wins, in the order rank
// threshold, pencil certificate, linear criterion, bounded dimension-one
// evidence; otherwise hypotheses_violated or inconclusive.
AnalysisReport analyze(const QMatrix& q, const AnalysisOptions& opts = {});

std::string report_to_json(const AnalysisReport& rep, bool pretty = true);
std::string report_summary(const AnalysisReport& rep);  // human-readable

// rigidity sub-report serialization (stable field names: "verdict", "route",
// "witnesses", "assumptions", "log")
std::string rigidity_report_to_json(const RigidityReport& rep, bool pretty = true);

// named gallery: quaternion, theorem2-counterexample (uses n, r),
// ac-rectification, cyclic-symmetric
QMatrix example_spec(const std::string& name, std::size_t n = 0, std::size_t r = 0);
std::vector<std::string> example_names();

// witness file: {"forward": {...}, "inverse": {...}}; a missing "inverse"
// defaults to the canonical inverse of "forward"
std::pair<AutomorphismSpec, AutomorphismSpec> parse_witness_pair(const std::string& text);
std::string witness_pair_to_json(const AutomorphismSpec& forward,
                                 const AutomorphismSpec& inverse, bool pretty = true);

}  // namespace qtorus
