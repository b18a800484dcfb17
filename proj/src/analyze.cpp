#include "qtorus/analyze.hpp"

#include <sstream>

#include <json.hpp>

#include "qtorus/errors.hpp"
#include "qtorus/skewalg.hpp"

namespace qtorus {

using nlohmann::json;

namespace {

json int_json(const Int& v) {
    if (v.fits_slong_p()) return json(static_cast<long long>(v.get_si()));
    return json(v.get_str());  // decimal string past 64 bits
}

json vec_json(const IntVec& v) {
    json out = json::array();
    for (const Int& x : v) out.push_back(int_json(x));
    return out;
}

json perm_json(const Permutation& sigma) {
    json out = json::array();
    for (std::size_t i = 0; i < sigma.n(); ++i) out.push_back(sigma(i) + 1);
    return out;
}

json spec_json(const AutomorphismSpec& spec) {
    json out;
    out["kind"] = aut_kind_name(spec.kind);
    switch (spec.kind) {
        case AutKind::scalar:
            break;
        case AutKind::monomial:
            out["sigma"] = perm_json(spec.sigma);
            break;
        case AutKind::translation:
            out["k"] = spec.index + 1;
            out["negate"] = spec.negate;
            break;
        case AutKind::exp_derivation:
            out["i"] = spec.index + 1;
            out["nu"] = vec_json(spec.nu);
            out["negate"] = spec.negate;
            break;
    }
    return out;
}

json witness_json(const WitnessRecord& rec) {
    json out = spec_json(rec.spec);
    if (rec.verified.has_value())
        out["verified"] = *rec.verified;
    else
        out["verified"] = nullptr;
    out["note"] = rec.note;
    return out;
}

json rigidity_json(const RigidityReport& rep) {
    json out;
    out["verdict"] = verdict_name(rep.verdict);
    out["route"] = rep.route;
    json w = json::array();
    for (const WitnessRecord& rec : rep.witnesses) w.push_back(witness_json(rec));
    out["witnesses"] = std::move(w);
    out["assumptions"] = rep.assumptions;
    out["log"] = rep.log;
    return out;
}

json invariants_json(const LambdaInvariants& inv) {
    return json{{"rank", inv.rank}, {"torsion_free", inv.torsion_free}};
}

json polynomial_json(const IntPolynomial& p) {
    json terms = json::array();
    // leading terms first
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        json exps = json::array();
        for (unsigned e : it->first) exps.push_back(e);
        terms.push_back(json::array({int_json(it->second), std::move(exps)}));
    }
    return json{{"string", p.to_string()}, {"terms", std::move(terms)}};
}

}  // namespace

AnalysisReport analyze(const QMatrix& q, const AnalysisOptions& opts) {
    AnalysisReport rep(q, opts);
    rep.lambda = lambda_invariants(q);
    for (std::size_t i = 0; i < q.n(); ++i)
        for (std::size_t j = i + 1; j < q.n(); ++j)
            if (is_identity(q.upper(i, j))) rep.identity_entries.emplace_back(i, j);

    TorsionFreeReduction red = torsion_free_reduction(q);
    rep.torsion_reduction_exponent = red.exponent;
    if (red.exponent > 1) rep.reduced_lambda = lambda_invariants(red.reduced);

    rep.derivation_module = derivation_module_vanishes(q);
    rep.symmetries = permutation_symmetries(q, opts.perm_cap);
    rep.radical = radical_basis(q);

    if (q.n() >= 3) {
        rep.linear_criterion = decide_linear_criterion(q, opts.perm_cap, opts.run_oracle);
        rep.rank_threshold = decide_rank_threshold(q, opts.perm_cap);
    }
    rep.dimension_one = decide_dimension_one(q, opts.bound, opts.perm_cap, opts.run_oracle);

    // aggregate: witnesses first, then the strongest rigid route
    const RigidityReport* with_witness = nullptr;
    for (const RigidityReport* sub :
         {rep.linear_criterion ? &*rep.linear_criterion : nullptr,
          &rep.dimension_one.report})
        if (sub && !sub->witnesses.empty() && !with_witness) with_witness = sub;

    bool any_rigid = (rep.linear_criterion && rep.linear_criterion->verdict == Verdict::rigid) ||
                     (rep.rank_threshold && rep.rank_threshold->verdict == Verdict::rigid) ||
                     rep.dimension_one.report.verdict == Verdict::rigid;
    if (with_witness && any_rigid)
        throw std::logic_error("internal: one route is rigid while another found a witness");

    if (with_witness) {
        rep.verdict = Verdict::non_rigid;
        rep.route = with_witness->route;
    } else if (rep.rank_threshold && rep.rank_threshold->verdict == Verdict::rigid) {
        rep.verdict = Verdict::rigid;
        rep.route = rep.rank_threshold->route;
    } else if (rep.dimension_one.report.verdict == Verdict::rigid &&
               rep.dimension_one.certificate == CertificateVerdict::certified) {
        rep.verdict = Verdict::rigid;
        rep.route = rep.dimension_one.report.route;
    } else if (rep.linear_criterion && rep.linear_criterion->verdict == Verdict::rigid) {
        rep.verdict = Verdict::rigid;
        rep.route = rep.linear_criterion->route;
    } else if (rep.dimension_one.report.verdict == Verdict::rigid) {
        rep.verdict = Verdict::rigid;
        rep.route = rep.dimension_one.report.route;
    } else if (rep.linear_criterion &&
               rep.linear_criterion->verdict == Verdict::hypotheses_violated) {
        rep.verdict = Verdict::hypotheses_violated;
        rep.route = rep.linear_criterion->route;
    } else {
        rep.verdict = Verdict::inconclusive;
        rep.route = "no route concluded";
    }
    return rep;
}

std::string rigidity_report_to_json(const RigidityReport& rep, bool pretty) {
    return rigidity_json(rep).dump(pretty ? 2 : -1) + "\n";
}

std::string report_to_json(const AnalysisReport& rep, bool pretty) {
    json out;
    out["input"] = json::parse(serialize_spec(rep.input));
    out["options"] = json{{"bound", rep.options.bound},
                          {"perm_cap", rep.options.perm_cap},
                          {"oracle", rep.options.run_oracle}};
    out["lambda"] = invariants_json(rep.lambda);
    json ones = json::array();
    for (auto [i, j] : rep.identity_entries) ones.push_back(json::array({i + 1, j + 1}));
    out["identity_entries"] = std::move(ones);
    json reduction{{"exponent", int_json(rep.torsion_reduction_exponent)}};
    if (rep.reduced_lambda) reduction["reduced_lambda"] = invariants_json(*rep.reduced_lambda);
    out["torsion_reduction"] = std::move(reduction);
    json dm{{"zero", rep.derivation_module.zero}};
    if (rep.derivation_module.witness)
        dm["witness"] = json{{"i", rep.derivation_module.witness->first + 1},
                             {"nu", vec_json(rep.derivation_module.witness->second)}};
    else
        dm["witness"] = nullptr;
    out["derivation_module"] = std::move(dm);
    json perms = json::array();
    for (const Permutation& s : rep.symmetries) perms.push_back(perm_json(s));
    out["permutation_symmetries"] = std::move(perms);
    json rad = json::array();
    for (const MonIdx& v : rep.radical) rad.push_back(vec_json(v));
    out["radical_basis"] = std::move(rad);
    out["linear_criterion"] =
        rep.linear_criterion ? rigidity_json(*rep.linear_criterion) : json(nullptr);
    out["rank_threshold"] =
        rep.rank_threshold ? rigidity_json(*rep.rank_threshold) : json(nullptr);
    json dim = rigidity_json(rep.dimension_one.report);
    dim["pencil"] = json{{"applicable", rep.dimension_one.pencil_applicable},
                         {"determinant", polynomial_json(rep.dimension_one.pencil_det)},
                         {"certified", rep.dimension_one.certificate ==
                                           CertificateVerdict::certified}};
    if (rep.dimension_one.commuting_pair)
        dim["commuting_pair"] =
            json{{"gamma", vec_json(rep.dimension_one.commuting_pair->first)},
                 {"delta", vec_json(rep.dimension_one.commuting_pair->second)}};
    else
        dim["commuting_pair"] = nullptr;
    out["dimension_one"] = std::move(dim);
    out["verdict"] = verdict_name(rep.verdict);
    out["route"] = rep.route;
    return out.dump(pretty ? 2 : -1) + "\n";
}

std::string report_summary(const AnalysisReport& rep) {
    std::ostringstream out;
    out << "rank " << rep.lambda.rank
        << (rep.lambda.torsion_free ? ", torsion-free" : ", torsion present")
        << "; identity entries: " << rep.identity_entries.size()
        << "; derivation module " << (rep.derivation_module.zero ? "zero" : "nonzero")
        << "; admissible permutations: " << rep.symmetries.size()
        << "; radical rank: " << rep.radical.size() << "\n";
    if (rep.linear_criterion)
        out << "linear criterion:  " << verdict_name(rep.linear_criterion->verdict) << "\n";
    if (rep.rank_threshold)
        out << "rank threshold:    " << verdict_name(rep.rank_threshold->verdict) << "\n";
    out << "dimension one:     " << verdict_name(rep.dimension_one.report.verdict) << "\n";
    out << "verdict: " << verdict_name(rep.verdict) << " via " << rep.route << "\n";
    std::size_t checked = 0, passed = 0;
    for (const RigidityReport* sub :
         {rep.linear_criterion ? &*rep.linear_criterion : nullptr,
          &rep.dimension_one.report})
        if (sub)
            for (const WitnessRecord& w : sub->witnesses) {
                ++checked;
                if (w.verified == true) ++passed;
            }
    if (checked)
        out << "witnesses: " << checked << " (" << passed << " oracle-verified)\n";
    return out.str();
}

QMatrix example_spec(const std::string& name, std::size_t n, std::size_t r) {
    if (name == "quaternion") return quaternion_example();
    if (name == "theorem2-counterexample") {
        if (n == 0) n = 3;
        if (r == 0) r = 1;
        return build_rank_deficient_example(n, r).q;
    }
    if (name == "ac-rectification") {
        LambdaGroup g{1, {}};
        std::vector<LambdaElement> upper(3, identity_element(g));
        upper[pair_rank(3, 1, 2)].free = IntVec{1};  // q23 = p, q12 = q13 = 1
        return QMatrix(3, g, upper);
    }
    if (name == "cyclic-symmetric") {
        LambdaGroup g{1, {}};
        std::vector<LambdaElement> upper(3, identity_element(g));
        upper[pair_rank(3, 0, 1)].free = IntVec{1};
        upper[pair_rank(3, 0, 2)].free = IntVec{-1};
        upper[pair_rank(3, 1, 2)].free = IntVec{1};
        return QMatrix(3, g, upper);
    }
    throw spec_error("unknown example \"" + name + "\"");
}

std::vector<std::string> example_names() {
    return {"quaternion", "theorem2-counterexample", "ac-rectification",
            "cyclic-symmetric"};
}

namespace {

AutomorphismSpec spec_from_json(const json& v) {
    if (!v.is_object() || !v.contains("kind") || !v["kind"].is_string())
        throw spec_error("witness: missing \"kind\"");
    const std::string kind = v["kind"].get<std::string>();
    if (kind == "scalar") return make_scalar_spec();
    if (kind == "monomial") {
        if (!v.contains("sigma") || !v["sigma"].is_array())
            throw spec_error("witness: monomial needs \"sigma\"");
        Permutation sigma;
        for (const json& x : v["sigma"]) {
            long long img = x.get<long long>();
            if (img < 1) throw spec_error("witness: sigma entries are 1-based");
            sigma.images.push_back(static_cast<std::size_t>(img - 1));
        }
        return make_monomial_spec(std::move(sigma));
    }
    bool negate = v.value("negate", false);
    if (kind == "translation") {
        if (!v.contains("k")) throw spec_error("witness: translation needs \"k\"");
        long long k = v["k"].get<long long>();
        if (k < 1) throw spec_error("witness: \"k\" is 1-based");
        return make_translation_spec(static_cast<std::size_t>(k - 1), negate);
    }
    if (kind == "exp_derivation") {
        if (!v.contains("i") || !v.contains("nu") || !v["nu"].is_array())
            throw spec_error("witness: exp_derivation needs \"i\" and \"nu\"");
        long long i = v["i"].get<long long>();
        if (i < 1) throw spec_error("witness: \"i\" is 1-based");
        MonIdx nu;
        for (const json& x : v["nu"]) nu.push_back(Int(static_cast<long>(x.get<long long>())));
        return make_exp_derivation_spec(static_cast<std::size_t>(i - 1), std::move(nu), negate);
    }
    throw spec_error("witness: unknown kind \"" + kind + "\"");
}

}  // namespace

std::pair<AutomorphismSpec, AutomorphismSpec> parse_witness_pair(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw spec_error(std::string("invalid witness JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("forward"))
        throw spec_error("witness: missing \"forward\"");
    AutomorphismSpec fwd = spec_from_json(doc["forward"]);
    AutomorphismSpec inv =
        doc.contains("inverse") ? spec_from_json(doc["inverse"]) : canonical_inverse(fwd);
    return {std::move(fwd), std::move(inv)};
}

std::string witness_pair_to_json(const AutomorphismSpec& forward,
                                 const AutomorphismSpec& inverse, bool pretty) {
    json out{{"forward", spec_json(forward)}, {"inverse", spec_json(inverse)}};
    return out.dump(pretty ? 2 : -1) + "\n";
}

}  // namespace qtorus
