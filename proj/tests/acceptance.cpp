// Acceptance suite: every criterion prints one PASS/FAIL line and the exit
// status is the number of failed criteria.

#include <chrono>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "hyperlab/constants.hpp"
#include "hyperlab/distances.hpp"
#include "hyperlab/dual_certificates.hpp"
#include "hyperlab/harness.hpp"
#include "hyperlab/multiplier_norm.hpp"
#include "hyperlab/schur_bounded.hpp"
#include "hyperlab/zero_rectangles.hpp"

using namespace hyperlab;

namespace {

int failures = 0;

double now_seconds() {
    using clock = std::chrono::steady_clock;
    static const clock::time_point start = clock::now();
    return std::chrono::duration<double>(clock::now() - start).count();
}

void report(int id, const std::string& name, bool pass, const std::string& detail,
            double seconds) {
    std::printf("%s criterion %2d: %s (%s) [%.1fs]\n", pass ? "PASS" : "FAIL", id, name.c_str(),
                detail.c_str(), seconds);
    std::fflush(stdout);
    if (!pass) ++failures;
}

template <typename Fn>
void criterion(int id, const std::string& name, Fn&& fn) {
    const double t0 = now_seconds();
    bool pass = false;
    std::string detail;
    try {
        pass = fn(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    report(id, name, pass, detail, now_seconds() - t0);
}

struct Instance {
    Pattern pattern;
    CMatrix matrix;
};

Instance random_instance(std::uint64_t seed, int max_dim, double density = 0.5) {
    const int m = 2 + static_cast<int>(splitmix64(seed) % static_cast<std::uint64_t>(max_dim - 1));
    const int n = 2 + static_cast<int>(splitmix64(seed ^ 0xabcdef) %
                                       static_cast<std::uint64_t>(max_dim - 1));
    return {random_pattern(splitmix64(seed ^ 0x77), m, n, density),
            random_operator(seed, m, n, "gaussian")};
}

} // namespace

int main() {
    const std::uint64_t master = 20240614;

    // Criteria 1 and 2 share the same instances.
    std::vector<Instance> instances;
    for (int k = 0; k < 200; ++k)
        instances.push_back(random_instance(derive_seed(master, "alpha-instances",
                                                        static_cast<std::uint64_t>(k)),
                                            6));

    criterion(1, "alpha oracle equivalence", [&](std::string& detail) {
        double worst = 0.0;
        for (const auto& inst : instances) {
            const double rect = alpha(inst.matrix, inst.pattern);
            const double brute = alpha_exhaustive(inst.matrix, inst.pattern);
            worst = std::max(worst, std::abs(rect - brute));
        }
        detail = "max |rect - exhaustive| = " + std::to_string(worst);
        return worst <= 1e-12;
    });

    criterion(2, "contraction form of alpha", [&](std::string& detail) {
        double worst = 0.0;
        for (const auto& inst : instances) {
            const double rect = alpha(inst.matrix, inst.pattern);
            const double contr = alpha_via_contractions(inst.matrix, inst.pattern);
            worst = std::max(worst, std::abs(rect - contr));
        }
        detail = "max |rect - contractions| = " + std::to_string(worst);
        return worst <= 1e-10;
    });

    criterion(3, "distance duality", [&](std::string& detail) {
        double worst_gap_ratio = 0.0;
        int alpha_violations = 0;
        for (int k = 0; k < 100; ++k) {
            const Instance inst = random_instance(
                derive_seed(master, "duality", static_cast<std::uint64_t>(k)), 5);
            const auto r = dist(inst.matrix, inst.pattern);
            const double scale = std::max(1.0, spectral_norm(inst.matrix));
            worst_gap_ratio = std::max(worst_gap_ratio, r.gap / scale);
            if (r.alpha_lower > r.primal + 1e-9) ++alpha_violations;
        }
        detail = "max gap/scale = " + std::to_string(worst_gap_ratio) +
                 ", alpha violations = " + std::to_string(alpha_violations);
        return worst_gap_ratio <= 1e-6 && alpha_violations == 0;
    });

    criterion(4, "nest exactness", [&](std::string& detail) {
        const Pattern nest = Pattern::upper_triangular(4);
        double worst = 0.0;
        DistOptions opts;
        opts.want_dual = false;
        for (int k = 0; k < 500; ++k) {
            const CMatrix t = random_operator(
                derive_seed(master, "nest-exact", static_cast<std::uint64_t>(k)), 4, 4,
                "gaussian");
            const auto r = dist(t, nest, opts);
            worst = std::max(worst, std::abs(r.primal - r.alpha_lower) / spectral_norm(t));
        }
        detail = "max |d - alpha| / ||T|| = " + std::to_string(worst);
        return worst <= 1e-6;
    });

    criterion(5, "contractive lambda bound", [&](std::string& detail) {
        double worst = 0.0;
        for (int k = 0; k < 20; ++k) {
            const std::uint64_t seed = derive_seed(master, "c-lambda", static_cast<std::uint64_t>(k));
            const int n = 3 + static_cast<int>(seed % 4);
            const Pattern phi = random_contractive_pattern(splitmix64(seed), n, n);
            SearchBudget budget;
            budget.trials = 200;
            budget.max_sweeps = 2;
            budget.master_seed = seed;
            worst = std::max(worst, estimate_lambda(phi, budget).value);
        }
        detail = "max estimate = " + std::to_string(worst);
        return worst <= 2.0 + 1e-6;
    });

    criterion(6, "complement lambda rule", [&](std::string& detail) {
        double worst = 0.0;
        for (int k = 0; k < 20; ++k) {
            const std::uint64_t seed = derive_seed(master, "comp-lambda", static_cast<std::uint64_t>(k));
            const int n = 3 + static_cast<int>(seed % 4);
            const Pattern phi = random_contractive_pattern(splitmix64(seed), n, n);
            SearchBudget budget;
            budget.trials = 120;
            budget.max_sweeps = 2;
            budget.master_seed = seed;
            worst = std::max(worst, estimate_lambda(complement(phi), budget).value);
        }
        detail = "max estimate = " + std::to_string(worst);
        return worst <= 1.0 + 1e-9;
    });

    criterion(7, "lattice bounds", [&](std::string& detail) {
        double worst_meet_slack = -1e9;
        double worst_join = 0.0;
        for (int k = 0; k < 10; ++k) {
            const std::uint64_t seed = derive_seed(master, "lattice", static_cast<std::uint64_t>(k));
            const int n = 3 + static_cast<int>(seed % 3);
            const Pattern p1 = random_contractive_pattern(splitmix64(seed), n, n);
            const Pattern p2 = random_contractive_pattern(splitmix64(seed ^ 0x99), n, n);
            SearchBudget budget;
            budget.trials = 80;
            budget.max_sweeps = 2;
            budget.master_seed = seed;
            const double norm1 = multiplier_norm(p1).value;
            const double meet_est = estimate_lambda(meet(p1, p2), budget).value;
            const double join_est = estimate_lambda(join(p1, p2), budget).value;
            worst_meet_slack = std::max(worst_meet_slack, meet_est - (2.0 + 2.0 * norm1));
            worst_join = std::max(worst_join, join_est);
        }
        detail = "max meet excess = " + std::to_string(worst_meet_slack) +
                 ", max join = " + std::to_string(worst_join);
        return worst_meet_slack <= 1e-4 && worst_join <= 4.0 + 1e-4;
    });

    criterion(8, "sum and intersection bounds", [&](std::string& detail) {
        const Pattern nest = Pattern::upper_triangular(4);
        double worst_sum = 0.0;
        double worst_meet = 0.0;
        for (int k = 0; k < 5; ++k) {
            const std::uint64_t seed = derive_seed(master, "sum-bound", static_cast<std::uint64_t>(k));
            const Pattern phi = random_contractive_pattern(splitmix64(seed), 4, 4);
            SearchBudget budget;
            budget.trials = 24;
            budget.max_sweeps = 0;
            budget.master_seed = seed;
            worst_sum = std::max(worst_sum, estimate_k(join(nest, phi), budget).value);
            worst_meet = std::max(worst_meet, estimate_k(meet(nest, phi), budget).value);
        }
        // Sum rule k(U)lambda(Phi) = 2; ternary sum rule 2k(U) = 2;
        // intersection rule lambda + ||Phi|| k = 3; ternary forms 2+3k = 5.
        detail = "max k(join) = " + std::to_string(worst_sum) +
                 ", max k(meet) = " + std::to_string(worst_meet);
        return worst_sum <= 2.0 + 1e-4 && worst_meet <= 3.0 + 1e-4 && worst_sum <= 2.0 + 1e-4 &&
               worst_meet <= 5.0 + 1e-4;
    });

    criterion(9, "tensor bound", [&](std::string& detail) {
        // k_c(nest) = 1 surrogate check at ancilla 2.
        const Pattern nest3 = Pattern::upper_triangular(3);
        const Pattern nest_anc = kron(nest3, Pattern::full(2, 2));
        DistOptions opts;
        opts.want_dual = false;
        double worst_anc = 0.0;
        for (int k = 0; k < 30; ++k) {
            const CMatrix t = random_operator(
                derive_seed(master, "tensor-anc", static_cast<std::uint64_t>(k)), 6, 6,
                "gaussian");
            const auto r = dist(t, nest_anc, opts);
            worst_anc = std::max(worst_anc, std::abs(r.primal - r.alpha_lower) / spectral_norm(t));
        }
        if (worst_anc > 1e-6) {
            detail = "ancilla-2 nest check failed: " + std::to_string(worst_anc);
            return false;
        }

        double worst_excess = -1e9;
        for (int k = 0; k < 3; ++k) {
            const std::uint64_t seed = derive_seed(master, "tensor", static_cast<std::uint64_t>(k));
            const Pattern phi = random_contractive_pattern(splitmix64(seed), 3, 3);
            const double norm_perp =
                phi.is_full() ? 0.0 : multiplier_norm(complement(phi)).value;
            SearchBudget budget;
            budget.trials = 10;
            budget.max_sweeps = 0;
            budget.master_seed = seed;
            const double est = estimate_k(kron(phi, nest3), budget).value;
            worst_excess = std::max(worst_excess, est - (2.0 * norm_perp + 1.0));
        }

        double worst_partition = 0.0;
        for (int k = 0; k < 10; ++k) {
            const std::uint64_t seed = derive_seed(master, "partition", static_cast<std::uint64_t>(k));
            std::vector<Pattern> family;
            for (int i = 0; i < 3; ++i)
                family.push_back(random_pattern(splitmix64(seed ^ static_cast<std::uint64_t>(i)),
                                                4, 4, 0.5));
            const auto parts = tensor_partition(family);
            const CMatrix t = random_operator(seed, 4, 4, "gaussian");
            CMatrix sum = CMatrix::Zero(4, 4);
            for (const auto& part : parts) sum += apply_pattern(part, t);
            worst_partition = std::max(worst_partition, (sum - t).cwiseAbs().maxCoeff());
        }
        detail = "max bound excess = " + std::to_string(worst_excess) +
                 ", max partition defect = " + std::to_string(worst_partition);
        return worst_excess <= 1e-3 && worst_partition <= 1e-12;
    });

    criterion(10, "schur-bounded split minimality", [&](std::string& detail) {
        int mismatches = 0;
        for (std::uint32_t mask = 0; mask < 512; ++mask) {
            Pattern p(3, 3);
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    if ((mask >> (i * 3 + j)) & 1u) p.insert(i, j);
            const auto d = schur_bounded_split(p);
            // Exhaustive assignment search.
            const auto entries = p.entries();
            int best = std::max(p.rows(), p.cols());
            for (std::uint64_t am = 0; am < (std::uint64_t{1} << entries.size()); ++am) {
                int row_load[3] = {0, 0, 0};
                int col_load[3] = {0, 0, 0};
                for (std::size_t e = 0; e < entries.size(); ++e) {
                    if ((am >> e) & 1u)
                        ++row_load[entries[e].first];
                    else
                        ++col_load[entries[e].second];
                }
                int need = 0;
                for (int v : row_load) need = std::max(need, v);
                for (int v : col_load) need = std::max(need, v);
                best = std::min(best, need);
            }
            if (best != d.n_cap) ++mismatches;
        }
        detail = "mismatches = " + std::to_string(mismatches);
        return mismatches == 0;
    });

    criterion(11, "multiplier norm anchors", [&](std::string& detail) {
        double worst_contractive = 0.0;
        for (int k = 0; k < 6; ++k) {
            const Pattern p = random_contractive_pattern(
                derive_seed(master, "mn-contr", static_cast<std::uint64_t>(k)), 4, 4);
            worst_contractive =
                std::max(worst_contractive, std::abs(multiplier_norm(p).value - 1.0));
        }
        MultiplierNormOptions fine;
        fine.tol = 1e-6;
        const double full_err = std::abs(multiplier_norm(Pattern::full(4, 4), fine).value - 1.0);
        const auto tri = multiplier_norm(Pattern::upper_triangular(3), fine);
        detail = "contractive err = " + std::to_string(worst_contractive) +
                 ", full err = " + std::to_string(full_err) +
                 ", triangular(3) = " + std::to_string(tri.value);
        return worst_contractive <= 1e-4 && full_err <= 1e-6 && tri.value >= 1.0;
    });

    criterion(12, "rank-one certificate suite", [&](std::string& detail) {
        double worst_recon = 0.0;
        double worst_cost_defect = 0.0;
        double worst_slack = 0.0;
        for (int k = 0; k < 50; ++k) {
            const std::uint64_t seed = derive_seed(master, "arveson", static_cast<std::uint64_t>(k));
            const Instance inst = random_instance(seed, 5);
            const CMatrix w =
                apply_pattern(complement(inst.pattern),
                              random_operator(splitmix64(seed), inst.pattern.rows(),
                                              inst.pattern.cols(), "gaussian"));
            if (trace_norm(w) == 0.0) continue;
            const auto d = rank_one_decompose(w, inst.pattern);
            CMatrix sum = CMatrix::Zero(w.rows(), w.cols());
            for (const auto& term : d.terms) sum += term.a * term.b.transpose();
            worst_recon = std::max(worst_recon, (sum - w).cwiseAbs().maxCoeff());
            worst_cost_defect = std::max(worst_cost_defect, trace_norm(w) - d.total_cost);
            const auto rep = certificate_check(w, inst.pattern, d, inst.matrix);
            const double scale = std::max(1.0, spectral_norm(inst.matrix));
            worst_slack = std::max(worst_slack, -rep.min_slack / scale);
        }
        detail = "max reconstruction = " + std::to_string(worst_recon) +
                 ", max cost defect = " + std::to_string(worst_cost_defect) +
                 ", max negative slack = " + std::to_string(worst_slack);
        return worst_recon <= 1e-9 && worst_cost_defect <= 1e-9 && worst_slack <= 1e-6;
    });

    criterion(13, "full-suite runtime and determinism", [&](std::string& detail) {
        ExperimentConfig cfg;
        cfg.m = 6;
        cfg.n = 6;
        cfg.master_seed = 4242;
        // Keep the distance-based estimate suites at 4x4; everything else at
        // the desk-scale 6x6 (tensor suite works on 3x3 ⊗ 3x3 = 9x9).
        for (const char* name : {"sum-bound", "intersection-bound", "ternary-corollaries"}) {
            cfg.suite_configs[name].m = 4;
            cfg.suite_configs[name].n = 4;
        }
        cfg.suite_configs["nest-exact"].m = 4;
        cfg.suite_configs["nest-exact"].n = 4;

        const double t0 = now_seconds();
        const auto records1 = run_suite(cfg);
        const double elapsed = now_seconds() - t0;
        const auto records2 = run_suite(cfg);

        std::ostringstream s1, s2;
        emit_report(records1, s1, ReportFormat::Jsonl);
        emit_report(records2, s2, ReportFormat::Jsonl);
        const bool identical = s1.str() == s2.str();
        int failed_records = 0;
        for (const auto& r : records1)
            if (!r.pass) ++failed_records;
        detail = "run time = " + std::to_string(elapsed) + "s, identical = " +
                 (identical ? "yes" : "no") + ", failing records = " +
                 std::to_string(failed_records);
        return elapsed < 300.0 && identical && failed_records == 0;
    });

    std::printf("%d of 13 criteria passed\n", 13 - failures);
    return failures;
}
