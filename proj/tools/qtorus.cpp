#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qtorus/analyze.hpp"
#include "qtorus/errors.hpp"
#include "qtorus/skewalg.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw qtorus::spec_error("cannot open \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw qtorus::spec_error("cannot write \"" + path + "\"");
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact rigidity analysis for multiparameter quantum affine spaces"};
    app.require_subcommand(1);

    std::string spec_path, witness_path, out_path, example_name;
    long bound = 3;
    std::size_t perm_cap = 8, opt_n = 0, opt_r = 0;
    bool skip_oracle = false, emit_json = false, emit_pretty = false;

    CLI::App* cmd_analyze = app.add_subcommand("analyze", "analyze a matrix specification");
    cmd_analyze->add_option("spec", spec_path, "specification file")->required();
    cmd_analyze->add_option("--bound", bound, "commuting-pair search box (default 3)");
    cmd_analyze->add_option("--perm-cap", perm_cap, "permutation enumeration cap (default 8)");
    cmd_analyze->add_flag("--skip-oracle", skip_oracle, "skip witness verification");
    cmd_analyze->add_flag("--json", emit_json, "emit the full report as compact JSON");
    cmd_analyze->add_flag("--pretty", emit_pretty, "emit the full report as indented JSON");

    CLI::App* cmd_examples = app.add_subcommand("examples", "write a named example spec");
    cmd_examples->add_option("name", example_name, "one of: quaternion, theorem2-counterexample, ac-rectification, cyclic-symmetric")
        ->required();
    cmd_examples->add_option("--n", opt_n, "rank for theorem2-counterexample");
    cmd_examples->add_option("--r", opt_r, "group rank for theorem2-counterexample");
    cmd_examples->add_option("-o,--output", out_path, "output path (default stdout)");

    CLI::App* cmd_verify = app.add_subcommand("verify", "verify an automorphism witness pair");
    cmd_verify->add_option("spec", spec_path, "specification file")->required();
    cmd_verify->add_option("witness", witness_path, "witness pair file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (cmd_analyze->parsed()) {
            qtorus::QMatrix q = qtorus::parse_spec(read_file(spec_path));
            qtorus::AnalysisOptions opts;
            opts.bound = bound;
            opts.perm_cap = perm_cap;
            opts.run_oracle = !skip_oracle;
            qtorus::AnalysisReport rep = qtorus::analyze(q, opts);
            if (emit_json || emit_pretty)
                std::cout << qtorus::report_to_json(rep, emit_pretty);
            else
                std::cout << qtorus::report_summary(rep);
            return 0;
        }
        if (cmd_examples->parsed()) {
            qtorus::QMatrix q = qtorus::example_spec(example_name, opt_n, opt_r);
            write_output(out_path, qtorus::serialize_spec(q));
            return 0;
        }
        if (cmd_verify->parsed()) {
            qtorus::QMatrix q = qtorus::parse_spec(read_file(spec_path));
            auto [fwd, inv] = qtorus::parse_witness_pair(read_file(witness_path));
            qtorus::PairVerification pv =
                qtorus::verify_automorphism_pair_detail(q, fwd, inv);
            std::cout << (pv.ok ? "pass" : "fail: " + pv.failure) << "\n";
            return 0;
        }
    } catch (const qtorus::cap_error& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return 3;
    } catch (const qtorus::spec_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
