#include <doctest.h>

#include <sstream>

#include "hyperlab/harness.hpp"

using namespace hyperlab;

TEST_CASE("config parsing") {
    std::stringstream ss(R"(# sample
m = 4
n = 4
trials = 7
master_seed = 99
format = csv
tolerance.dist_gap = 1e-7

[suite nest-exact]
trials = 3
n = 5
m = 5
)");
    const auto cfg = parse_config(ss);
    CHECK(cfg.m == 4);
    CHECK(cfg.trials == 7);
    CHECK(cfg.master_seed == 99);
    CHECK(cfg.format == "csv");
    CHECK(cfg.tolerances.at("dist_gap") == 1e-7);
    CHECK(cfg.suite_configs.at("nest-exact").trials == 3);
}

TEST_CASE("config rejects unknown keys, suites, and tolerances") {
    std::stringstream bad1("mm = 4\n");
    CHECK_THROWS_AS(parse_config(bad1), ConfigError);
    std::stringstream bad2("[suite nope]\n");
    CHECK_THROWS_AS(parse_config(bad2), ConfigError);
    std::stringstream bad3("tolerance.typo_name = 1e-3\n");
    CHECK_THROWS_AS(parse_config(bad3), ConfigError);
    std::stringstream bad4("[suite nest-exact]\nfoo = 1\n");
    CHECK_THROWS_AS(parse_config(bad4), ConfigError);
    std::stringstream bad5("[suite nest-exact]\npattern = file:/nonexistent/path.pat\n");
    CHECK_THROWS_AS(parse_config(bad5), ConfigError);
}

TEST_CASE("pattern generator specs") {
    CHECK(make_pattern("nest", 4, 4, 1) == Pattern::upper_triangular(4));
    CHECK(make_pattern("diagonal", 3, 3, 1) == Pattern::diagonal(3));
    CHECK(make_pattern("full@2x3", 5, 5, 1) == Pattern::full(2, 3));
    CHECK(make_pattern("empty", 2, 2, 1).empty());
    CHECK(make_pattern("complement(diagonal)", 2, 2, 1) == complement(Pattern::diagonal(2)));
    const Pattern k = make_pattern("kron(diagonal@2x2,full@2x2)", 4, 4, 1);
    CHECK(k.rows() == 4);
    CHECK(k.support_size() == 8);
    CHECK(make_pattern("random:0.5", 4, 4, 7) == make_pattern("random:0.5", 4, 4, 7));
    CHECK(is_ternary(make_pattern("contractive-random", 5, 5, 3)));
    CHECK_THROWS_AS(make_pattern("wat", 2, 2, 1), ConfigError);
}

TEST_CASE("per-trial seeds are stable and distinct") {
    const auto s0 = derive_seed(1, "alpha-equality", 0);
    CHECK(s0 == derive_seed(1, "alpha-equality", 0));
    CHECK(s0 != derive_seed(1, "alpha-equality", 1));
    CHECK(s0 != derive_seed(2, "alpha-equality", 0));
    CHECK(s0 != derive_seed(1, "nest-exact", 0));
}

TEST_CASE("report emit/parse round trip") {
    std::vector<ReportRecord> records;
    ReportRecord r;
    r.suite = "alpha-equality";
    r.trial = 3;
    r.seed = 123456789ull;
    r.quantity = "alpha-vs-exhaustive";
    r.value = 1.25e-13;
    r.bound = 1e-12;
    r.pass = true;
    records.push_back(r);
    r.trial = 4;
    r.value = 0.5;
    r.pass = false;
    r.status = "gap-above-tolerance";
    records.push_back(r);

    for (ReportFormat fmt : {ReportFormat::Jsonl, ReportFormat::Csv}) {
        std::stringstream ss;
        emit_report(records, ss, fmt);
        const auto back = parse_report(ss, fmt);
        REQUIRE(back.size() == records.size());
        for (std::size_t k = 0; k < records.size(); ++k) {
            CHECK(back[k].suite == records[k].suite);
            CHECK(back[k].trial == records[k].trial);
            CHECK(back[k].seed == records[k].seed);
            CHECK(back[k].quantity == records[k].quantity);
            CHECK(back[k].value == records[k].value);
            CHECK(back[k].bound == records[k].bound);
            CHECK(back[k].pass == records[k].pass);
            CHECK(back[k].status == records[k].status);
        }
    }

    // Empty record list: header only for csv, nothing for jsonl.
    std::stringstream empty_csv;
    emit_report({}, empty_csv, ReportFormat::Csv);
    CHECK(empty_csv.str() == "suite,trial,seed,quantity,value,bound,pass,status,witness_ref\n");
    std::stringstream empty_jsonl;
    emit_report({}, empty_jsonl, ReportFormat::Jsonl);
    CHECK(empty_jsonl.str().empty());
}

TEST_CASE("alpha_exhaustive guards dimensions") {
    CHECK_THROWS_AS(alpha_exhaustive(CMatrix::Zero(13, 13), Pattern(13, 13)), Error);
}

TEST_CASE("small deterministic suite run") {
    ExperimentConfig cfg;
    cfg.m = 3;
    cfg.n = 3;
    cfg.master_seed = 7;
    cfg.suites = {"alpha-equality"};
    cfg.suite_configs["alpha-equality"].trials = 5;
    const auto records = run_suite(cfg);
    CHECK(records.size() == 10);  // two checks per trial
    for (const auto& r : records) CHECK(r.pass);

    std::stringstream a, b;
    emit_report(records, a, ReportFormat::Jsonl);
    emit_report(run_suite(cfg), b, ReportFormat::Jsonl);
    CHECK(a.str() == b.str());
}

TEST_CASE("suite order independence") {
    ExperimentConfig cfg;
    cfg.m = 3;
    cfg.n = 3;
    cfg.master_seed = 11;
    cfg.suite_configs["alpha-equality"].trials = 3;
    cfg.suite_configs["arveson-dual"].trials = 3;

    cfg.suites = {"alpha-equality", "arveson-dual"};
    const auto ab = run_suite(cfg);
    cfg.suites = {"arveson-dual", "alpha-equality"};
    const auto ba = run_suite(cfg);

    auto filter = [](const std::vector<ReportRecord>& rs, const std::string& suite) {
        std::vector<ReportRecord> out;
        for (const auto& r : rs)
            if (r.suite == suite) out.push_back(r);
        return out;
    };
    for (const std::string suite : {"alpha-equality", "arveson-dual"}) {
        const auto x = filter(ab, suite);
        const auto y = filter(ba, suite);
        REQUIRE(x.size() == y.size());
        for (std::size_t k = 0; k < x.size(); ++k) {
            CHECK(x[k].value == y[k].value);
            CHECK(x[k].seed == y[k].seed);
        }
    }
}
