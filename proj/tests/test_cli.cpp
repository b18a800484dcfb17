#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>

#include <json.hpp>

#include "qtorus/analyze.hpp"
#include "qtorus/skewalg.hpp"

using namespace qtorus;
using nlohmann::json;

namespace {

int run(const std::string& args) {
    std::string cmd = std::string(QTORUS_BIN) + " " + args + " > cli_stdout.txt 2> cli_stderr.txt";
    int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void put(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

}  // namespace

TEST_CASE("example gallery") {
    CHECK(example_names().size() == 4);
    CHECK(example_spec("quaternion") == quaternion_example());
    QMatrix rect = example_spec("ac-rectification");
    CHECK(is_identity(rect.upper(0, 1)));
    CHECK(is_identity(rect.upper(0, 2)));
    CHECK(!is_identity(rect.upper(1, 2)));
    QMatrix t2 = example_spec("theorem2-counterexample", 4, 3);
    CHECK(lambda_invariants(t2).rank == 3);
    CHECK_THROWS_AS(example_spec("nope"), spec_error);

    // deterministic bytes and round-trips
    for (const std::string& name : example_names()) {
        QMatrix q = example_spec(name);
        CHECK(serialize_spec(q) == serialize_spec(example_spec(name)));
        CHECK(parse_spec(serialize_spec(q)) == q);
    }
}

TEST_CASE("analysis of the bundled examples") {
    AnalysisOptions opts;
    opts.bound = 4;

    AnalysisReport quat = analyze(example_spec("quaternion"), opts);
    CHECK(quat.verdict == Verdict::rigid);
    CHECK(quat.route == "dimension-one (pencil certificate)");
    CHECK(quat.lambda.rank == 3);
    CHECK(quat.lambda.torsion_free);
    CHECK(quat.radical.empty());
    CHECK(quat.derivation_module.zero);
    CHECK(!quat.dimension_one.commuting_pair.has_value());
    CHECK(quat.symmetries.size() == 1);

    AnalysisReport rect = analyze(example_spec("ac-rectification"));
    CHECK(rect.verdict == Verdict::non_rigid);
    CHECK(rect.derivation_module.zero);
    REQUIRE(rect.linear_criterion.has_value());
    CHECK(rect.linear_criterion->verdict == Verdict::hypotheses_violated);
    REQUIRE(!rect.linear_criterion->witnesses.empty());
    CHECK(rect.linear_criterion->witnesses[0].spec.kind == AutKind::translation);
    CHECK(rect.linear_criterion->witnesses[0].verified == true);

    AnalysisReport cyc = analyze(example_spec("cyclic-symmetric"));
    CHECK(cyc.verdict == Verdict::non_rigid);
    REQUIRE(cyc.linear_criterion.has_value());
    REQUIRE(!cyc.linear_criterion->witnesses.empty());
    CHECK(cyc.linear_criterion->witnesses[0].spec.sigma == Permutation{{1, 2, 0}});

    // commutative case: translations at every row, all permutations admissible
    LambdaGroup g{1, {}};
    QMatrix comm(3, g, std::vector<LambdaElement>(3, identity_element(g)));
    AnalysisReport c = analyze(comm);
    CHECK(c.verdict == Verdict::non_rigid);
    CHECK(c.symmetries.size() == 6);
    CHECK(c.dimension_one.commuting_pair.has_value());
    REQUIRE(c.linear_criterion.has_value());
    CHECK(c.linear_criterion->witnesses.size() == 3);
}

TEST_CASE("reports are byte-stable and schema-stable") {
    AnalysisReport a = analyze(example_spec("cyclic-symmetric"));
    AnalysisReport b = analyze(example_spec("cyclic-symmetric"));
    CHECK(report_to_json(a) == report_to_json(b));

    json doc = json::parse(report_to_json(a));
    for (const char* key :
         {"input", "options", "lambda", "identity_entries", "torsion_reduction",
          "derivation_module", "permutation_symmetries", "radical_basis",
          "linear_criterion", "rank_threshold", "dimension_one", "verdict", "route"})
        CHECK(doc.contains(key));
    for (const char* key : {"verdict", "route", "witnesses", "assumptions", "log"})
        CHECK(doc["linear_criterion"].contains(key));
    CHECK(doc["verdict"] == "non_rigid");
    CHECK(doc["lambda"]["rank"] == 1);
    CHECK(doc["dimension_one"]["pencil"].contains("certified"));

    json quat = json::parse(report_to_json(analyze(example_spec("quaternion"))));
    CHECK(quat["dimension_one"]["pencil"]["certified"] == true);
    CHECK(quat["dimension_one"]["pencil"]["determinant"]["string"] ==
          "x1^4 + 2*x1^2*x2^2 + 2*x1^2*x3^2 + x2^4 + 2*x2^2*x3^2 + x3^4");

    json sub = json::parse(rigidity_report_to_json(*a.linear_criterion));
    for (const char* key : {"verdict", "route", "witnesses", "assumptions", "log"})
        CHECK(sub.contains(key));
    CHECK(sub["verdict"] == "non_rigid");
}

TEST_CASE("witness pair files") {
    auto [fwd, inv] = parse_witness_pair(R"({"forward": {"kind": "translation", "k": 1}})");
    CHECK(fwd.kind == AutKind::translation);
    CHECK(fwd.index == 0);
    CHECK(inv.negate);
    CHECK(verify_automorphism_pair(example_spec("ac-rectification"), fwd, inv));

    auto [mf, mi] = parse_witness_pair(
        R"({"forward": {"kind": "monomial", "sigma": [2,3,1]},
            "inverse": {"kind": "monomial", "sigma": [3,1,2]}})");
    CHECK(verify_automorphism_pair(example_spec("cyclic-symmetric"), mf, mi));
    CHECK(!verify_automorphism_pair(example_spec("quaternion"),
                                    parse_witness_pair(
                                        R"({"forward": {"kind": "monomial", "sigma": [2,1,3,4]}})")
                                        .first,
                                    make_monomial_spec(Permutation{{1, 0, 2, 3}})));

    CHECK_THROWS_AS(parse_witness_pair("{}"), spec_error);
    CHECK_THROWS_AS(parse_witness_pair(R"({"forward": {"kind": "wat"}})"), spec_error);

    std::string round = witness_pair_to_json(fwd, inv);
    auto [f2, i2] = parse_witness_pair(round);
    CHECK(f2 == fwd);
    CHECK(i2 == inv);
}

TEST_CASE("command line tool") {
    CHECK(run("examples quaternion -o cli_quat.json") == 0);
    CHECK(parse_spec(slurp("cli_quat.json")) == quaternion_example());

    CHECK(run("analyze cli_quat.json --bound 2") == 0);
    std::string summary = slurp("cli_stdout.txt");
    CHECK(summary.find("verdict: rigid via dimension-one (pencil certificate)") !=
          std::string::npos);

    CHECK(run("analyze cli_quat.json --bound 2 --json") == 0);
    json doc = json::parse(slurp("cli_stdout.txt"));
    CHECK(doc["verdict"] == "rigid");

    // byte-stable across runs
    CHECK(run("analyze cli_quat.json --bound 2 --pretty") == 0);
    std::string first = slurp("cli_stdout.txt");
    CHECK(run("analyze cli_quat.json --bound 2 --pretty") == 0);
    CHECK(first == slurp("cli_stdout.txt"));

    put("cli_bad.json", "{\"n\": 2}");
    CHECK(run("analyze cli_bad.json") == 2);

    // n above the default permutation cap
    LambdaGroup g{1, {}};
    QMatrix big(9, g, std::vector<LambdaElement>(36, identity_element(g)));
    put("cli_big.json", serialize_spec(big));
    CHECK(run("analyze cli_big.json") == 3);

    put("cli_witness.json", R"({"forward": {"kind": "translation", "k": 1}})");
    CHECK(run("examples ac-rectification -o cli_rect.json") == 0);
    CHECK(run("verify cli_rect.json cli_witness.json") == 0);
    CHECK(slurp("cli_stdout.txt").find("pass") == 0);

    put("cli_witness_bad.json", R"({"forward": {"kind": "translation", "k": 3}})");
    CHECK(run("verify cli_rect.json cli_witness_bad.json") == 0);
    CHECK(slurp("cli_stdout.txt").find("fail") == 0);

    CHECK(run("examples nope") == 2);
    CHECK(run("examples theorem2-counterexample --n 3 --r 2") == 2);  // r above range
}

TEST_CASE("rank five pipeline stays fast") {
    // ten independent generators: rigid by the rank threshold; the bounded
    // search must prove absence through the partner-lattice rank, not by
    // enumerating the full box
    LambdaGroup g{10, {}};
    std::vector<LambdaElement> upper;
    for (std::size_t r = 0; r < 10; ++r) {
        LambdaElement e = identity_element(g);
        e.free[r] = 1;
        upper.push_back(std::move(e));
    }
    AnalysisReport rep = analyze(QMatrix(5, g, std::move(upper)));
    CHECK(rep.verdict == Verdict::rigid);
    CHECK(rep.route == "rank threshold");
    CHECK(!rep.dimension_one.commuting_pair.has_value());
    CHECK(rep.dimension_one.report.verdict == Verdict::rigid);
}

TEST_CASE("oracle can be skipped") {
    AnalysisOptions opts;
    opts.run_oracle = false;
    AnalysisReport rep = analyze(example_spec("cyclic-symmetric"), opts);
    CHECK(rep.verdict == Verdict::non_rigid);
    REQUIRE(rep.linear_criterion.has_value());
    REQUIRE(!rep.linear_criterion->witnesses.empty());
    CHECK(!rep.linear_criterion->witnesses[0].verified.has_value());

    CHECK(run("examples cyclic-symmetric -o cli_cyc.json") == 0);
    CHECK(run("analyze cli_cyc.json --skip-oracle --json") == 0);
    json doc = json::parse(slurp("cli_stdout.txt"));
    CHECK(doc["linear_criterion"]["witnesses"][0]["verified"].is_null());
}
