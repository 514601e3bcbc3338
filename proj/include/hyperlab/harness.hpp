#ifndef HYPERLAB_HARNESS_HPP
#define HYPERLAB_HARNESS_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "hyperlab/matrix_num.hpp"
#include "hyperlab/pattern.hpp"
#include "hyperlab/random_gen.hpp"

namespace hyperlab {

/// Per-suite overrides; -1 / empty means "inherit".
struct SuiteConfig {
    int trials = -1;
    int m = -1;
    int n = -1;
    int inner_trials = -1;  // estimate budget inside one trial
    int inner_sweeps = -1;
    int ancilla = -1;
    std::map<std::string, std::string> pattern_sources;  // role -> generator spec
};

struct ExperimentConfig {
    int m = 4;
    int n = 4;
    int trials = 25;
    std::uint64_t master_seed = 1;
    std::string format = "jsonl";
    std::string out;
    std::vector<std::string> suites;  // empty = all registered suites
    std::map<std::string, double> tolerances;
    std::map<std::string, SuiteConfig> suite_configs;
};

/// Flat key/value config with per-suite sections "[suite NAME]"; unknown
/// keys are hard errors, and referenced pattern files must exist.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::string& path);

struct ReportRecord {
    std::string suite;
    int trial = 0;
    std::uint64_t seed = 0;
    std::string quantity;  // rule label of the checked inequality
    double value = 0.0;
    double bound = 0.0;
    bool pass = true;
    std::string status = "ok";
    std::string witness_ref;
};

enum class ReportFormat { Jsonl, Csv };
ReportFormat report_format_from_name(const std::string& name);

/// Names of every registered suite, in canonical execution order.
std::vector<std::string> registered_suites();

/// Executes the configured suites; records are ordered by (suite, trial).
std::vector<ReportRecord> run_suite(const ExperimentConfig& config);

/// Bit-stable serialization (stable double formatting, fixed field order).
void emit_report(const std::vector<ReportRecord>& records, std::ostream& out, ReportFormat fmt);
std::vector<ReportRecord> parse_report(std::istream& in, ReportFormat fmt);

/// Pattern generator specs: "nest", "diagonal", "full", "empty",
/// "random:<density>", "contractive-random", "complement(<spec>)",
/// "kron(<spec>,<spec>)", "file:<path>"; any spec may carry "@MxN".
Pattern make_pattern(const std::string& spec, int m, int n, std::uint64_t seed);

/// Exhaustive subset-pair oracle for the Arveson distance: max over all
/// pairs (Q, P) with Q x P disjoint from the support of ||T[Q,P]||.
/// Exponential; guarded to m, n <= 12.
double alpha_exhaustive(const CMatrix& t, const Pattern& a);

} // namespace hyperlab

#endif
