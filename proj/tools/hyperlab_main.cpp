// hyperlab CLI: single operations plus the config-driven suite runner.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hyperlab/constants.hpp"
#include "hyperlab/distances.hpp"
#include "hyperlab/dual_certificates.hpp"
#include "hyperlab/harness.hpp"
#include "hyperlab/multiplier_norm.hpp"
#include "hyperlab/zero_rectangles.hpp"

namespace {

constexpr const char* kVersion = "hyperlab 1.0.0";

using nlohmann::ordered_json;

ordered_json certificate_json(const hyperlab::BoundCertificate& cert) {
    ordered_json j;
    j["value"] = cert.value;
    j["rule"] = cert.rule;
    if (!cert.inputs.empty()) j["inputs"] = cert.inputs;
    if (cert.fallback) j["fallback"] = true;
    if (!cert.children.empty()) {
        ordered_json children = ordered_json::array();
        for (const auto& ch : cert.children) children.push_back(certificate_json(ch));
        j["children"] = children;
    }
    return j;
}

int exit_code_for(const std::vector<hyperlab::ReportRecord>& records) {
    bool violation = false;
    bool nonconverged = false;
    for (const auto& r : records) {
        if (!r.pass) violation = true;
        if (r.status != "ok") nonconverged = true;
    }
    if (violation) return 1;
    if (nonconverged) return 3;
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pattern-subspace distance laboratory"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    // ---- run ----
    auto* run_cmd = app.add_subcommand("run", "Run configured verification suites");
    std::string run_config, run_out, run_format;
    run_cmd->add_option("--config", run_config, "Config file path")->required();
    run_cmd->add_option("--out", run_out, "Output path (default: config 'out' or stdout)");
    run_cmd->add_option("--format", run_format, "jsonl or csv (overrides config)");

    // ---- alpha ----
    auto* alpha_cmd = app.add_subcommand("alpha", "Arveson distance to a pattern subspace");
    std::string alpha_pattern, alpha_matrix;
    alpha_cmd->add_option("--pattern", alpha_pattern, "Pattern file")->required();
    alpha_cmd->add_option("--matrix", alpha_matrix, "Matrix file")->required();

    // ---- dist ----
    auto* dist_cmd = app.add_subcommand("dist", "Distance with primal/dual certification");
    std::string dist_pattern, dist_matrix;
    double dist_tol = 1e-6;
    dist_cmd->add_option("--pattern", dist_pattern, "Pattern file")->required();
    dist_cmd->add_option("--matrix", dist_matrix, "Matrix file")->required();
    dist_cmd->add_option("--tol", dist_tol, "Gap tolerance (scaled by max(1, ||T||))");

    // ---- estimate-k / estimate-lambda ----
    auto* ek_cmd = app.add_subcommand("estimate-k", "Empirical hyperreflexivity constant");
    auto* el_cmd = app.add_subcommand("estimate-lambda", "Empirical lambda constant");
    std::string est_pattern;
    int est_trials = 100;
    int est_steps = 8;
    std::uint64_t est_seed = 1;
    int est_ancilla = 1;
    for (auto* cmd : {ek_cmd, el_cmd}) {
        cmd->add_option("--pattern", est_pattern, "Pattern file")->required();
        cmd->add_option("--trials", est_trials, "Random restarts");
        cmd->add_option("--steps", est_steps, "Local-search sweeps per restart");
        cmd->add_option("--seed", est_seed, "Master seed");
    }
    ek_cmd->add_option("--ancilla", est_ancilla, "Tensor with a full ancilla pattern");

    // ---- bound ----
    auto* bound_cmd = app.add_subcommand("bound", "Certified bound from a named rule");
    std::string bound_rule;
    std::vector<std::string> bound_inputs;
    bound_cmd->add_option("--rule", bound_rule, "Rule name")->required();
    bound_cmd->add_option("--input", bound_inputs,
                          "name=value scalar or name=@pattern-file (repeatable)");

    // ---- tensor-bound ----
    auto* tb_cmd = app.add_subcommand("tensor-bound", "Subset-sum tensor bound");
    std::string tb_spec;
    tb_cmd->add_option("--spec", tb_spec,
                       "JSON file: {patterns:[paths], u_bounds:{mask:value}, lambda_c:[...]}")
        ->required();

    // ---- decompose ----
    auto* dec_cmd = app.add_subcommand("decompose", "Rank-one decomposition of an annihilator");
    std::string dec_pattern, dec_functional;
    dec_cmd->add_option("--pattern", dec_pattern, "Pattern file")->required();
    dec_cmd->add_option("--functional", dec_functional, "Matrix file of the functional")
        ->required();

    // ---- mult-norm ----
    auto* mn_cmd = app.add_subcommand("mult-norm", "Schur multiplier norm of a pattern");
    std::string mn_pattern;
    double mn_tol = 1e-4;
    mn_cmd->add_option("--pattern", mn_pattern, "Pattern file")->required();
    mn_cmd->add_option("--tol", mn_tol, "Bisection tolerance");

    // ---- lambda-cert ----
    auto* lc_cmd = app.add_subcommand("lambda-cert", "Certified lambda upper bound");
    std::string lc_pattern;
    lc_cmd->add_option("--pattern", lc_pattern, "Pattern file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*run_cmd) {
            hyperlab::ExperimentConfig cfg = hyperlab::load_config(run_config);
            if (!run_format.empty()) cfg.format = run_format;
            if (!run_out.empty()) cfg.out = run_out;
            const auto records = hyperlab::run_suite(cfg);
            const auto fmt = hyperlab::report_format_from_name(cfg.format);
            if (cfg.out.empty()) {
                hyperlab::emit_report(records, std::cout, fmt);
            } else {
                std::ofstream out(cfg.out, std::ios::binary);
                if (!out) throw hyperlab::Error("cannot write report: " + cfg.out);
                hyperlab::emit_report(records, out, fmt);
            }
            return exit_code_for(records);
        }
        if (*alpha_cmd) {
            const auto p = hyperlab::load_pattern(alpha_pattern);
            const auto t = hyperlab::load_matrix(alpha_matrix);
            ordered_json j;
            j["alpha"] = hyperlab::alpha(t, p);
            std::cout << j.dump() << '\n';
            return 0;
        }
        if (*dist_cmd) {
            const auto p = hyperlab::load_pattern(dist_pattern);
            const auto t = hyperlab::load_matrix(dist_matrix);
            hyperlab::DistOptions opts;
            opts.tol = dist_tol;
            const auto r = hyperlab::dist(t, p, opts);
            ordered_json j;
            j["primal"] = r.primal;
            j["dual"] = r.dual;
            j["gap"] = r.gap;
            j["alpha"] = r.alpha_lower;
            j["status"] = r.status;
            std::cout << j.dump() << '\n';
            return r.converged ? 0 : 3;
        }
        if (*ek_cmd || *el_cmd) {
            const auto p = hyperlab::load_pattern(est_pattern);
            hyperlab::SearchBudget budget;
            budget.trials = est_trials;
            budget.max_sweeps = est_steps;
            budget.master_seed = est_seed;
            const auto est = *ek_cmd ? (est_ancilla > 1
                                            ? hyperlab::estimate_complete(p, est_ancilla, budget)
                                            : hyperlab::estimate_k(p, budget))
                                     : hyperlab::estimate_lambda(p, budget);
            ordered_json j;
            j["value"] = est.value;
            j["trials"] = est.trials;
            j["seed"] = est.seed;
            j["excluded"] = est.excluded;
            if (est.flagged) j["flagged"] = true;
            std::cout << j.dump() << '\n';
            return 0;
        }
        if (*bound_cmd) {
            hyperlab::BoundInputs inputs;
            for (const auto& item : bound_inputs) {
                const auto eq = item.find('=');
                if (eq == std::string::npos)
                    throw hyperlab::ConfigError("--input must be name=value: " + item);
                const std::string key = item.substr(0, eq);
                const std::string value = item.substr(eq + 1);
                if (!value.empty() && value.front() == '@')
                    inputs.patterns.emplace(key, hyperlab::load_pattern(value.substr(1)));
                else
                    inputs.scalars[key] = std::stod(value);
            }
            const auto rule = hyperlab::bound_rule_from_name(bound_rule);
            const auto cert =
                hyperlab::theorem_bound(rule, inputs, hyperlab::multiplier_norm_oracle());
            std::cout << certificate_json(cert).dump() << '\n';
            return 0;
        }
        if (*tb_cmd) {
            std::ifstream in(tb_spec);
            if (!in) throw hyperlab::ConfigError("cannot open spec: " + tb_spec);
            const auto j = nlohmann::json::parse(in);
            hyperlab::TensorBoundInput input;
            for (const auto& path : j.at("patterns"))
                input.patterns.push_back(hyperlab::load_pattern(path.get<std::string>()));
            for (const auto& [key, value] : j.at("u_bounds").items())
                input.u_bounds[static_cast<std::uint32_t>(std::stoul(key))] =
                    value.get<double>();
            for (const auto& v : j.at("lambda_c")) input.lambda_c.push_back(v.get<double>());
            const auto cert =
                hyperlab::tensor_bound(input, hyperlab::multiplier_norm_oracle());
            std::cout << certificate_json(cert).dump() << '\n';
            return 0;
        }
        if (*dec_cmd) {
            const auto p = hyperlab::load_pattern(dec_pattern);
            const auto w = hyperlab::load_matrix(dec_functional);
            const auto d = hyperlab::rank_one_decompose(w, p);
            ordered_json j;
            j["total_cost"] = d.total_cost;
            j["ratio"] = d.ratio;
            ordered_json terms = ordered_json::array();
            for (const auto& term : d.terms) {
                ordered_json tj;
                tj["cost"] = term.cost;
                ordered_json av = ordered_json::array(), bv = ordered_json::array();
                for (Eigen::Index i = 0; i < term.a.size(); ++i)
                    av.push_back(hyperlab::format_complex(term.a(i)));
                for (Eigen::Index i = 0; i < term.b.size(); ++i)
                    bv.push_back(hyperlab::format_complex(term.b(i)));
                tj["a"] = av;
                tj["b"] = bv;
                terms.push_back(tj);
            }
            j["terms"] = terms;
            std::cout << j.dump() << '\n';
            return 0;
        }
        if (*mn_cmd) {
            const auto p = hyperlab::load_pattern(mn_pattern);
            hyperlab::MultiplierNormOptions opts;
            opts.tol = mn_tol;
            const auto r = hyperlab::multiplier_norm(p, opts);
            ordered_json j;
            j["value"] = r.value;
            j["tolerance"] = r.tolerance;
            j["lower"] = r.lower;
            j["upper"] = r.upper;
            j["converged"] = r.converged;
            std::cout << j.dump() << '\n';
            return r.converged ? 0 : 3;
        }
        if (*lc_cmd) {
            const auto p = hyperlab::load_pattern(lc_pattern);
            const auto cert =
                hyperlab::lambda_certificate(p, hyperlab::multiplier_norm_oracle());
            if (cert.fallback)
                std::cerr << "warning: certificate fell back to the singleton join; the bound "
                             "is exponential in the support size\n";
            std::cout << certificate_json(cert).dump() << '\n';
            return 0;
        }
    } catch (const hyperlab::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const hyperlab::ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 2;
}
