#include "hyperlab/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include <json.hpp>

#include "hyperlab/constants.hpp"
#include "hyperlab/distances.hpp"
#include "hyperlab/dual_certificates.hpp"
#include "hyperlab/multiplier_norm.hpp"
#include "hyperlab/zero_rectangles.hpp"

namespace hyperlab {

namespace {

const std::vector<std::string> kSuiteOrder = {
    "alpha-equality",   "nest-exact",         "contractive-lambda", "complement-lambda",
    "lattice-meet",     "lattice-join",       "sum-bound",          "intersection-bound",
    "ternary-corollaries", "tensor-bound",    "arveson-dual",
};

const std::map<std::string, double> kDefaultTolerances = {
    {"alpha_equality", 1e-12}, {"alpha_contraction", 1e-10}, {"dist_gap", 1e-6},
    {"nest_exact", 1e-6},      {"lambda_contractive", 1e-6}, {"lambda_complement", 1e-9},
    {"lattice", 1e-4},         {"sum_bound", 1e-4},          {"intersection_bound", 1e-4},
    {"tensor_bound", 1e-3},    {"reconstruction", 1e-9},     {"slack", 1e-6},
    {"identity_partition", 1e-12},
};

struct SuiteDefaults {
    int trials;
    int inner_trials;
    int inner_sweeps;
};

const std::map<std::string, SuiteDefaults> kSuiteDefaults = {
    {"alpha-equality", {50, -1, -1}},
    {"nest-exact", {60, -1, -1}},
    {"contractive-lambda", {20, 200, 2}},
    {"complement-lambda", {20, 120, 2}},
    {"lattice-meet", {10, 80, 2}},
    {"lattice-join", {10, 80, 2}},
    {"sum-bound", {6, 12, 0}},
    {"intersection-bound", {6, 12, 0}},
    {"ternary-corollaries", {4, 10, 0}},
    {"tensor-bound", {3, 8, 0}},
    {"arveson-dual", {30, -1, -1}},
};

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

bool known_global_key(const std::string& key) {
    static const std::vector<std::string> keys = {"m",      "n",   "trials", "master_seed",
                                                  "format", "out", "suites"};
    return std::find(keys.begin(), keys.end(), key) != keys.end();
}

bool known_suite_key(const std::string& key) {
    static const std::vector<std::string> keys = {"trials",       "m",           "n",
                                                  "inner_trials", "inner_sweeps", "ancilla"};
    return std::find(keys.begin(), keys.end(), key) != keys.end() ||
           key == "pattern" || key.rfind("pattern.", 0) == 0;
}

void validate_pattern_files(const std::string& spec) {
    // Recursively check file references inside the generator spec.
    std::size_t pos = 0;
    while ((pos = spec.find("file:", pos)) != std::string::npos) {
        pos += 5;
        std::size_t end = pos;
        int depth = 0;
        while (end < spec.size()) {
            const char c = spec[end];
            if (c == '(') ++depth;
            if (c == ')' && depth-- == 0) break;
            if (c == ',' && depth == 0) break;
            if (c == '@') break;
            ++end;
        }
        const std::string path = trim(spec.substr(pos, end - pos));
        if (!std::filesystem::exists(path))
            throw ConfigError("pattern file does not exist: " + path);
        pos = end;
    }
}

} // namespace

ExperimentConfig parse_config(std::istream& in) {
    ExperimentConfig cfg;
    cfg.tolerances = kDefaultTolerances;
    std::string line;
    std::string current_suite;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("line " + std::to_string(line_no) + ": unterminated section");
            std::istringstream hs(line.substr(1, line.size() - 2));
            std::string word, name;
            hs >> word >> name;
            if (word != "suite" || name.empty())
                throw ConfigError("line " + std::to_string(line_no) +
                                  ": sections must be '[suite NAME]'");
            if (std::find(kSuiteOrder.begin(), kSuiteOrder.end(), name) == kSuiteOrder.end())
                throw ConfigError("line " + std::to_string(line_no) + ": unknown suite '" +
                                  name + "'");
            current_suite = name;
            cfg.suite_configs.try_emplace(name);
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("line " + std::to_string(line_no) + ": empty key or value");

        try {
            if (current_suite.empty()) {
                if (key.rfind("tolerance.", 0) == 0) {
                    const std::string name = key.substr(10);
                    if (!kDefaultTolerances.contains(name))
                        throw ConfigError("unknown tolerance '" + name + "'");
                    cfg.tolerances[name] = std::stod(value);
                } else if (!known_global_key(key)) {
                    throw ConfigError("unknown key '" + key + "'");
                } else if (key == "m") {
                    cfg.m = std::stoi(value);
                } else if (key == "n") {
                    cfg.n = std::stoi(value);
                } else if (key == "trials") {
                    cfg.trials = std::stoi(value);
                } else if (key == "master_seed") {
                    cfg.master_seed = std::stoull(value);
                } else if (key == "format") {
                    if (value != "jsonl" && value != "csv")
                        throw ConfigError("format must be jsonl or csv");
                    cfg.format = value;
                } else if (key == "out") {
                    cfg.out = value;
                } else if (key == "suites") {
                    std::istringstream vs(value);
                    std::string item;
                    while (std::getline(vs, item, ',')) {
                        item = trim(item);
                        if (item.empty()) continue;
                        if (std::find(kSuiteOrder.begin(), kSuiteOrder.end(), item) ==
                            kSuiteOrder.end())
                            throw ConfigError("unknown suite '" + item + "'");
                        cfg.suites.push_back(item);
                    }
                }
            } else {
                SuiteConfig& sc = cfg.suite_configs[current_suite];
                if (!known_suite_key(key)) throw ConfigError("unknown suite key '" + key + "'");
                if (key == "trials") sc.trials = std::stoi(value);
                else if (key == "m") sc.m = std::stoi(value);
                else if (key == "n") sc.n = std::stoi(value);
                else if (key == "inner_trials") sc.inner_trials = std::stoi(value);
                else if (key == "inner_sweeps") sc.inner_sweeps = std::stoi(value);
                else if (key == "ancilla") sc.ancilla = std::stoi(value);
                else if (key == "pattern") {
                    validate_pattern_files(value);
                    sc.pattern_sources[""] = value;
                } else {
                    validate_pattern_files(value);
                    sc.pattern_sources[key.substr(8)] = value;
                }
            }
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
        }
        if (cfg.trials < 1) throw ConfigError("trials must be >= 1");
        if (cfg.m < 1 || cfg.n < 1 || cfg.m > kMaxPatternDim || cfg.n > kMaxPatternDim)
            throw ConfigError("dimensions out of range");
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    return parse_config(in);
}

ReportFormat report_format_from_name(const std::string& name) {
    if (name == "jsonl") return ReportFormat::Jsonl;
    if (name == "csv") return ReportFormat::Csv;
    throw ConfigError("unknown report format '" + name + "'");
}

std::vector<std::string> registered_suites() { return kSuiteOrder; }

// ------------------------------------------------------------ generators --

namespace {

struct SpecDims {
    std::string body;
    int m;
    int n;
};

SpecDims split_dims(const std::string& spec, int m, int n) {
    // Trailing "@MxN" overrides dimensions; must be outside parentheses.
    int depth = 0;
    for (std::size_t k = 0; k < spec.size(); ++k) {
        const char c = spec[k];
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == '@' && depth == 0) {
            const std::string dims = spec.substr(k + 1);
            const auto x = dims.find('x');
            if (x == std::string::npos)
                throw ConfigError("bad dimension suffix in pattern spec '" + spec + "'");
            return {trim(spec.substr(0, k)), std::stoi(dims.substr(0, x)),
                    std::stoi(dims.substr(x + 1))};
        }
    }
    return {trim(spec), m, n};
}

} // namespace

Pattern make_pattern(const std::string& raw, int m, int n, std::uint64_t seed) {
    const auto [spec, mm, nn] = split_dims(trim(raw), m, n);
    if (spec == "nest") {
        if (mm != nn) throw ConfigError("nest pattern requires square dimensions");
        return Pattern::upper_triangular(nn);
    }
    if (spec == "diagonal") {
        if (mm != nn) throw ConfigError("diagonal pattern requires square dimensions");
        return Pattern::diagonal(nn);
    }
    if (spec == "full") return Pattern::full(mm, nn);
    if (spec == "empty") return Pattern(mm, nn);
    if (spec == "contractive-random") return random_contractive_pattern(seed, mm, nn);
    if (spec.rfind("random:", 0) == 0) {
        const double density = std::stod(spec.substr(7));
        if (density < 0.0 || density > 1.0) throw ConfigError("density must be in [0,1]");
        return random_pattern(seed, mm, nn, density);
    }
    if (spec.rfind("file:", 0) == 0) return load_pattern(trim(spec.substr(5)));
    if (spec.rfind("complement(", 0) == 0 && spec.back() == ')') {
        return complement(make_pattern(spec.substr(11, spec.size() - 12), mm, nn, seed));
    }
    if (spec.rfind("kron(", 0) == 0 && spec.back() == ')') {
        const std::string inner = spec.substr(5, spec.size() - 6);
        int depth = 0;
        std::size_t comma = std::string::npos;
        for (std::size_t k = 0; k < inner.size(); ++k) {
            if (inner[k] == '(') ++depth;
            if (inner[k] == ')') --depth;
            if (inner[k] == ',' && depth == 0) {
                comma = k;
                break;
            }
        }
        if (comma == std::string::npos) throw ConfigError("kron spec needs two operands");
        const Pattern a = make_pattern(inner.substr(0, comma), mm, nn, splitmix64(seed));
        const Pattern b = make_pattern(inner.substr(comma + 1), mm, nn, splitmix64(seed ^ 0x5bd1e995));
        return kron(a, b);
    }
    throw ConfigError("unknown pattern spec '" + raw + "'");
}

double alpha_exhaustive(const CMatrix& t, const Pattern& a) {
    const int m = a.rows();
    const int n = a.cols();
    if (m > 12 || n > 12) throw Error("alpha_exhaustive: dimensions too large");
    double best = 0.0;
    const std::uint64_t row_top = std::uint64_t{1} << m;
    for (std::uint64_t q = 1; q < row_top; ++q) {
        std::uint64_t allowed = a.col_full_mask();
        for (int i = 0; i < m && allowed; ++i)
            if ((q >> i) & 1u) allowed &= ~a.row_mask(i);
        // Every P inside 'allowed' forms a zero pair with Q.
        for (std::uint64_t p = allowed;; p = (p - 1) & allowed) {
            if (p != 0) best = std::max(best, spectral_norm(submatrix(t, Rectangle{q, p})));
            if (p == 0) break;
        }
    }
    return best;
}

// ----------------------------------------------------------------- suites --

namespace {

struct SuiteContext {
    const ExperimentConfig& cfg;
    std::string suite;
    int trials;
    int m;
    int n;
    int inner_trials;
    int inner_sweeps;
    int ancilla;
    std::map<std::string, std::string> pattern_sources;
    std::vector<ReportRecord>* records;

    double tol(const std::string& name) const { return cfg.tolerances.at(name); }

    std::string pattern_source(const std::string& role, const std::string& fallback) const {
        if (const auto it = pattern_sources.find(role); it != pattern_sources.end())
            return it->second;
        if (const auto it = pattern_sources.find(""); it != pattern_sources.end() && role.empty())
            return it->second;
        return fallback;
    }

    std::uint64_t trial_seed(int trial) const {
        return derive_seed(cfg.master_seed, suite, static_cast<std::uint64_t>(trial));
    }

    void record(int trial, std::uint64_t seed, const std::string& quantity, double value,
                double bound, double tolerance, const std::string& status = "ok") const {
        ReportRecord r;
        r.suite = suite;
        r.trial = trial;
        r.seed = seed;
        r.quantity = quantity;
        r.value = value;
        r.bound = bound;
        r.pass = value <= bound + tolerance;
        r.status = status;
        records->push_back(std::move(r));
    }

    SearchBudget budget(std::uint64_t seed) const {
        SearchBudget b;
        b.trials = inner_trials;
        b.max_sweeps = inner_sweeps;
        b.master_seed = seed;
        return b;
    }
};

void suite_alpha_equality(const SuiteContext& ctx) {
    for (int trial = 0; trial < ctx.trials; ++trial) {
        const std::uint64_t seed = ctx.trial_seed(trial);
        const Pattern p = make_pattern(ctx.pattern_source("", "random:0.5"), ctx.m, ctx.n,
                                       splitmix64(seed));
        const CMatrix t = random_operator(seed, ctx.m, ctx.n, "gaussian");
        const double a_rect = alpha(t, p);
        const double a_brute = alpha_exhaustive(t, p);
        ctx.record(trial, seed, "alpha-vs-exhaustive", std::abs(a_rect - a_brute), 0.0,
                   ctx.tol("alpha_equality"));
        const double a_contr = alpha_via_contractions(t, p);
        ctx.record(trial, seed, "alpha-vs-contractions", std::abs(a_rect - a_contr), 0.0,
                   ctx.tol("alpha_contraction"));
    }
}

void suite_nest_exact(const SuiteContext& ctx) {
    const Pattern nest = make_pattern(ctx.pattern_source("", "nest"), ctx.m, ctx.n, 0);
    for (int trial = 0; trial < ctx.trials; ++trial) {
        const std::uint64_t seed = ctx.trial_seed(trial);
        const CMatrix t = random_operator(seed, nest.rows(), nest.cols(), "gaussian");
        DistOptions opts;
        opts.tol = ctx.tol("dist_gap");
        opts.want_dual = false;
        const DistanceResult r = dist(t, nest, opts);
        const double scale = spectral_norm(t);
        ctx.record(trial, seed, "distance-vs-alpha", std::abs(r.primal - r.alpha_lower), 0.0,
                   ctx.tol("nest_exact") * scale,
                   r.status == "converged" ? "ok" : r.status);
    }
}

void suite_contractive_lambda(const SuiteContext& ctx) {
    for (int trial = 0; trial < ctx.trials; ++trial) {
        const std::uint64_t seed = ctx.trial_seed(trial);
        const Pattern p = make_pattern(ctx.pattern_source("", "contractive-random"), ctx.m,
                                       ctx.n, splitmix64(seed));
        const ConstantEstimate est = estimate_lambda(p, ctx.budget(seed));
        ctx.record(trial, seed, "lambda-contractive", est.value, 2.0,
                   ctx.tol("lambda_contractive"));
    }
}

void suite_complement_lambda(const SuiteContext& ctx) {
    for (int trial = 0; trial < ctx.trials; ++trial) {
        const std::uint64_t seed = ctx.trial_seed(trial);
        const Pattern p = complement(make_pattern(ctx.pattern_source("", "contractive-random"),
                                                  ctx.m, ctx.n, splitmix64(seed)));
        const ConstantEstimate est = estimate_lambda(p, ctx.budget(seed));
        ctx.record(trial, seed, "lambda-complement", est.value, 1.0,
                   ctx.tol("lambda_complement"));
    }
}

void suite_lattice(const SuiteContext& ctx, bool is_meet) {
    for (int trial = 0; trial < ctx.trials; ++trial) {
        const std::uint64_t seed = ctx.trial_seed(trial);
        const Pattern p1 = make_pattern(ctx.pattern_source("phi1", "contractive-random"), ctx.m,
                                        ctx.n, splitmix64(seed));
        const Pattern p2 = make_pattern(ctx.pattern_source("phi2", "contractive-random"), ctx.m,
                                        ctx.n, splitmix64(seed ^ 0x9e3779b9));
        if (is_meet) {
            const double norm1 = multiplier_norm(p1).value;
            const ConstantEstimate est = estimate_lambda(meet(p1, p2), ctx.budget(seed));
            ctx.record(trial, seed, "lambda-meet", est.value, 2.0 + 2.0 * norm1,
                       ctx.tol("lattice"));
        } else {
            const ConstantEstimate est = estimate_lambda(join(p1, p2), ctx.budget(seed));
            ctx.record(trial, seed, "lambda-join", est.value, 4.0, ctx.tol("lattice"));
        }
    }
}

void suite_sum_bound(const SuiteContext& ctx) {
    const Pattern nest = make_pattern(ctx.pattern_source("u", "nest"), ctx.m, ctx.n, 0);
    for (int trial = 0; trial < ctx.trials; ++trial) {
        const std::uint64_t seed = ctx.trial_seed(trial);
        const Pattern phi = make_pattern(ctx.pattern_source("phi", "contractive-random"), ctx.m,
                                         ctx.n, splitmix64(seed));
        const ConstantEstimate est = estimate_k(join(nest, phi), ctx.budget(seed));
        // k(U) = 1 for the nest, lambda(Phi) <= 2 for contractive Phi.
        ctx.record(trial, seed, "k-sum", est.value, 2.0, ctx.tol("sum_bound"));
    }
}

void suite_intersection_bound(const SuiteContext& ctx) {
    const Pattern nest = make_pattern(ctx.pattern_source("u", "nest"), ctx.m, ctx.n, 0);
    for (int trial = 0; trial < ctx.trials; ++trial) {
        const std::uint64_t seed = ctx.trial_seed(trial);
        const Pattern phi = make_pattern(ctx.pattern_source("phi", "contractive-random"), ctx.m,
                                         ctx.n, splitmix64(seed));
        const ConstantEstimate est = estimate_k(meet(nest, phi), ctx.budget(seed));
        // lambda(Phi) + ||Phi|| k(U) <= 2 + 1.
        ctx.record(trial, seed, "k-intersection", est.value, 3.0, ctx.tol("intersection_bound"));
    }
}

void suite_ternary_corollaries(const SuiteContext& ctx) {
    const Pattern nest = make_pattern(ctx.pattern_source("u", "nest"), ctx.m, ctx.n, 0);
    for (int trial = 0; trial < ctx.trials; ++trial) {
        const std::uint64_t seed = ctx.trial_seed(trial);
        const Pattern phi = make_pattern(ctx.pattern_source("phi", "contractive-random"), ctx.m,
                                         ctx.n, splitmix64(seed));
        const ConstantEstimate sum_est = estimate_k(join(nest, phi), ctx.budget(seed));
        ctx.record(trial, seed, "k-sum-ternary", sum_est.value, 2.0, ctx.tol("sum_bound"));
        const ConstantEstimate meet_est = estimate_k(meet(nest, phi), ctx.budget(seed));
        ctx.record(trial, seed, "k-intersect-ternary", meet_est.value, 5.0,
                   ctx.tol("intersection_bound"));
        ctx.record(trial, seed, "k-nest-ternary", meet_est.value, 5.0,
                   ctx.tol("intersection_bound"));
    }
}

void suite_tensor_bound(const SuiteContext& ctx) {
    for (int trial = 0; trial < ctx.trials; ++trial) {
        const std::uint64_t seed = ctx.trial_seed(trial);
        const Pattern phi = make_pattern(ctx.pattern_source("phi", "contractive-random@3x3"), 3,
                                         3, splitmix64(seed));
        const Pattern nest = make_pattern(ctx.pattern_source("u", "nest@3x3"), 3, 3, 0);
        const double norm_perp = phi.is_full() ? 0.0 : multiplier_norm(complement(phi)).value;
        const ConstantEstimate est = estimate_k(kron(phi, nest), ctx.budget(seed));
        // lambda_c(Phi) ||Phi_perp|| + k_c(U) ||Phi|| with lambda_c <= 2,
        // k_c(nest) = 1, ||Phi|| = 1.
        ctx.record(trial, seed, "k-tensor", est.value, 2.0 * norm_perp + 1.0,
                   ctx.tol("tensor_bound"));

        // Identity partition: the subset patterns tile the full index set.
        std::vector<Pattern> family;
        for (int i = 0; i < 3; ++i)
            family.push_back(random_pattern(derive_seed(seed, "tensor-family",
                                                        static_cast<std::uint64_t>(i)),
                                            ctx.m, ctx.n, 0.5));
        const auto parts = tensor_partition(family);
        const CMatrix t = random_operator(seed, ctx.m, ctx.n, "gaussian");
        CMatrix sum = CMatrix::Zero(ctx.m, ctx.n);
        for (const auto& part : parts) sum += apply_pattern(part, t);
        ctx.record(trial, seed, "identity-partition", (sum - t).cwiseAbs().maxCoeff(), 0.0,
                   ctx.tol("identity_partition"));
    }
}

void suite_arveson_dual(const SuiteContext& ctx) {
    for (int trial = 0; trial < ctx.trials; ++trial) {
        const std::uint64_t seed = ctx.trial_seed(trial);
        const Pattern p = make_pattern(ctx.pattern_source("", "random:0.5"), ctx.m, ctx.n,
                                       splitmix64(seed));
        const CMatrix raw = random_operator(seed, ctx.m, ctx.n, "gaussian");
        const CMatrix w = apply_pattern(complement(p), raw);
        if (trace_norm(w) == 0.0) {
            ctx.record(trial, seed, "reconstruction", 0.0, 0.0, ctx.tol("reconstruction"));
            continue;
        }
        const RankOneDecomposition d = rank_one_decompose(w, p);
        CMatrix sum = CMatrix::Zero(ctx.m, ctx.n);
        for (const auto& term : d.terms) sum += term.a * term.b.transpose();
        ctx.record(trial, seed, "reconstruction", (sum - w).cwiseAbs().maxCoeff(), 0.0,
                   ctx.tol("reconstruction"));
        ctx.record(trial, seed, "cost-dominates-trace-norm", trace_norm(w) - d.total_cost, 0.0,
                   ctx.tol("reconstruction"));
        const CMatrix t = random_operator(splitmix64(seed), ctx.m, ctx.n, "gaussian");
        const CertificateReport report = certificate_check(w, p, d, t);
        ctx.record(trial, seed, "certificate-min-slack", -report.min_slack, 0.0,
                   ctx.tol("slack") * std::max(1.0, spectral_norm(t)));
    }
}

} // namespace

std::vector<ReportRecord> run_suite(const ExperimentConfig& raw_config) {
    ExperimentConfig config = raw_config;
    for (const auto& [key, value] : kDefaultTolerances) config.tolerances.try_emplace(key, value);
    std::vector<std::string> to_run = config.suites.empty() ? kSuiteOrder : config.suites;
    std::vector<ReportRecord> records;

    for (const std::string& name : to_run) {
        SuiteContext ctx{config,
                         name,
                         config.trials,
                         config.m,
                         config.n,
                         /*inner_trials=*/16,
                         /*inner_sweeps=*/0,
                         /*ancilla=*/2,
                         {},
                         &records};
        if (const auto it = kSuiteDefaults.find(name); it != kSuiteDefaults.end()) {
            ctx.trials = it->second.trials;
            if (it->second.inner_trials > 0) ctx.inner_trials = it->second.inner_trials;
            if (it->second.inner_sweeps >= 0) ctx.inner_sweeps = it->second.inner_sweeps;
        }
        if (const auto it = config.suite_configs.find(name); it != config.suite_configs.end()) {
            const SuiteConfig& sc = it->second;
            if (sc.trials > 0) ctx.trials = sc.trials;
            if (sc.m > 0) ctx.m = sc.m;
            if (sc.n > 0) ctx.n = sc.n;
            if (sc.inner_trials > 0) ctx.inner_trials = sc.inner_trials;
            if (sc.inner_sweeps >= 0) ctx.inner_sweeps = sc.inner_sweeps;
            if (sc.ancilla > 0) ctx.ancilla = sc.ancilla;
            ctx.pattern_sources = sc.pattern_sources;
        }

        if (name == "alpha-equality") suite_alpha_equality(ctx);
        else if (name == "nest-exact") suite_nest_exact(ctx);
        else if (name == "contractive-lambda") suite_contractive_lambda(ctx);
        else if (name == "complement-lambda") suite_complement_lambda(ctx);
        else if (name == "lattice-meet") suite_lattice(ctx, true);
        else if (name == "lattice-join") suite_lattice(ctx, false);
        else if (name == "sum-bound") suite_sum_bound(ctx);
        else if (name == "intersection-bound") suite_intersection_bound(ctx);
        else if (name == "ternary-corollaries") suite_ternary_corollaries(ctx);
        else if (name == "tensor-bound") suite_tensor_bound(ctx);
        else if (name == "arveson-dual") suite_arveson_dual(ctx);
        else throw ConfigError("unknown suite '" + name + "'");
    }

    std::stable_sort(records.begin(), records.end(),
                     [&to_run](const ReportRecord& a, const ReportRecord& b) {
                         const auto ia = std::find(to_run.begin(), to_run.end(), a.suite);
                         const auto ib = std::find(to_run.begin(), to_run.end(), b.suite);
                         if (ia != ib) return ia < ib;
                         return a.trial < b.trial;
                     });
    return records;
}

// ---------------------------------------------------------------- reports --

namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

void emit_report(const std::vector<ReportRecord>& records, std::ostream& out, ReportFormat fmt) {
    if (fmt == ReportFormat::Csv) {
        out << "suite,trial,seed,quantity,value,bound,pass,status,witness_ref\n";
        for (const auto& r : records) {
            out << r.suite << ',' << r.trial << ',' << r.seed << ',' << r.quantity << ','
                << format_double(r.value) << ',' << format_double(r.bound) << ','
                << (r.pass ? "true" : "false") << ',' << r.status << ',' << r.witness_ref
                << '\n';
        }
        return;
    }
    for (const auto& r : records) {
        nlohmann::ordered_json j;
        j["suite"] = r.suite;
        j["trial"] = r.trial;
        j["seed"] = r.seed;
        j["quantity"] = r.quantity;
        j["value"] = r.value;
        j["bound"] = r.bound;
        j["pass"] = r.pass;
        j["status"] = r.status;
        if (!r.witness_ref.empty()) j["witness_ref"] = r.witness_ref;
        out << j.dump() << '\n';
    }
}

std::vector<ReportRecord> parse_report(std::istream& in, ReportFormat fmt) {
    std::vector<ReportRecord> records;
    std::string line;
    if (fmt == ReportFormat::Csv) {
        if (!std::getline(in, line)) return records;
        while (std::getline(in, line)) {
            if (trim(line).empty()) continue;
            std::vector<std::string> fields;
            std::istringstream ls(line);
            std::string field;
            while (std::getline(ls, field, ',')) fields.push_back(field);
            while (fields.size() < 9) fields.emplace_back();
            ReportRecord r;
            r.suite = fields[0];
            r.trial = std::stoi(fields[1]);
            r.seed = std::stoull(fields[2]);
            r.quantity = fields[3];
            r.value = std::stod(fields[4]);
            r.bound = std::stod(fields[5]);
            r.pass = fields[6] == "true";
            r.status = fields[7];
            r.witness_ref = fields[8];
            records.push_back(std::move(r));
        }
        return records;
    }
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        const auto j = nlohmann::json::parse(line);
        ReportRecord r;
        r.suite = j.at("suite").get<std::string>();
        r.trial = j.at("trial").get<int>();
        r.seed = j.at("seed").get<std::uint64_t>();
        r.quantity = j.at("quantity").get<std::string>();
        r.value = j.at("value").get<double>();
        r.bound = j.at("bound").get<double>();
        r.pass = j.at("pass").get<bool>();
        r.status = j.value("status", "ok");
        r.witness_ref = j.value("witness_ref", "");
        records.push_back(std::move(r));
    }
    return records;
}

} // namespace hyperlab
