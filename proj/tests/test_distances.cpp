#include <doctest.h>

#include "test_util.hpp"

#include "hyperlab/distances.hpp"
#include "hyperlab/random_gen.hpp"
#include "oracles.hpp"

using namespace hyperlab;

namespace {

CMatrix offdiag_t() {
    CMatrix t(2, 2);
    t << 0, 1, 0, 0;
    return t;
}

} // namespace

TEST_CASE("alpha basics") {
    const CMatrix t = offdiag_t();
    CHECK_NEAR(alpha(t, Pattern::diagonal(2)), 1.0, 1e-12);
    CHECK(alpha(t, Pattern::full(2, 2)) == 0.0);
    const CMatrix r = random_operator(3, 4, 4, "gaussian");
    CHECK_NEAR(alpha(r, Pattern(4, 4)), spectral_norm(r), 1e-12);
    CHECK_THROWS_AS(alpha(r, Pattern(3, 3)), DimensionMismatch);
}

TEST_CASE("alpha equals the exhaustive subset-pair maximum") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const int m = 2 + static_cast<int>(seed % 4);
        const int n = 2 + static_cast<int>((seed / 4) % 4);
        const Pattern p = random_pattern(splitmix64(seed ^ 0x11), m, n, 0.45);
        const CMatrix t = random_operator(seed, m, n, "gaussian");
        CHECK_NEAR(alpha(t, p), oracles::alpha_brute(t, p), 1e-10);
    }
}

TEST_CASE("alpha via contractions agrees with alpha") {
    const CMatrix t = offdiag_t();
    CHECK_NEAR(alpha_via_contractions(t, Pattern::diagonal(2)), 1.0, 1e-12);
    CHECK(alpha_via_contractions(t, Pattern::full(2, 2)) == 0.0);
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const int m = 2 + static_cast<int>(seed % 5);
        const int n = 2 + static_cast<int>((seed / 5) % 5);
        const Pattern p = random_pattern(splitmix64(seed ^ 0x22), m, n, 0.5);
        const CMatrix t2 = random_operator(seed ^ 0x33, m, n, "gaussian");
        CHECK_NEAR(alpha_via_contractions(t2, p), alpha(t2, p), 1e-10);
    }
}

TEST_CASE("canonical gap") {
    CMatrix t(2, 2);
    t << 1, 2, 3, 4;
    CHECK(canonical_gap(t, Pattern::full(2, 2)) == 0.0);
    CHECK_NEAR(canonical_gap(t, Pattern(2, 2)), spectral_norm(t), 1e-12);
    CHECK_NEAR(canonical_gap(t, Pattern::diagonal(2)), 3.0, 1e-12);
}

TEST_CASE("dist trivial cases") {
    const CMatrix t = offdiag_t();
    const auto diag = dist(t, Pattern::diagonal(2));
    CHECK(diag.converged);
    CHECK_NEAR(diag.primal, 1.0, 1e-6);
    CHECK_NEAR(diag.dual, 1.0, 1e-6);
    CHECK(diag.witness_completion.isZero(1e-9));

    CMatrix any(2, 2);
    any << 1, 2, 3, std::complex<double>(0, 4);
    const auto full = dist(any, Pattern::full(2, 2));
    CHECK(full.primal == 0.0);
    CHECK(full.dual == 0.0);
    CHECK((full.witness_completion - any).norm() == 0.0);

    const auto empty = dist(any, Pattern(2, 2));
    CHECK(empty.converged);
    CHECK_NEAR(empty.primal, spectral_norm(any), 1e-9);
    CHECK_NEAR(empty.dual, spectral_norm(any), 1e-9);

    const auto zero = dist(CMatrix::Zero(3, 3), Pattern::diagonal(3));
    CHECK(zero.converged);
    CHECK(zero.primal == 0.0);
}

TEST_CASE("dist primal-dual gap closes on random instances") {
    int converged = 0;
    const int total = 25;
    for (int k = 0; k < total; ++k) {
        const std::uint64_t seed = derive_seed(99, "dist-test", static_cast<std::uint64_t>(k));
        const int m = 2 + static_cast<int>(seed % 4);
        const int n = 2 + static_cast<int>((seed >> 8) % 4);
        const Pattern p = random_pattern(splitmix64(seed), m, n, 0.5);
        const CMatrix t = random_operator(seed, m, n, "gaussian");
        const auto r = dist(t, p);
        const double scale = std::max(1.0, spectral_norm(t));
        CHECK(r.alpha_lower <= r.primal + 1e-9);
        CHECK(r.dual <= r.primal + 1e-12);
        if (r.converged) {
            ++converged;
            CHECK(r.gap <= 1e-6 * scale);
        }
        // Witness invariants.
        CHECK((r.witness_completion - apply_pattern(p, r.witness_completion)).norm() == 0.0);
        CHECK_NEAR(spectral_norm(t - r.witness_completion), r.primal, 1e-9 * scale);
        CHECK((r.witness_functional - apply_pattern(complement(p), r.witness_functional))
                  .norm() == 0.0);
        CHECK(trace_norm(r.witness_functional) <= 1.0 + 1e-12);
    }
    CHECK(converged == total);
}

TEST_CASE("dist agrees with direct local-search minimization") {
    for (int k = 0; k < 8; ++k) {
        const std::uint64_t seed = derive_seed(7, "dist-ls", static_cast<std::uint64_t>(k));
        const Pattern p = random_pattern(splitmix64(seed), 3, 3, 0.5);
        const CMatrix t = random_operator(seed, 3, 3, "gaussian");
        const auto r = dist(t, p);
        const double direct = oracles::dist_local_search(t, p);
        // direct >= the true distance, and the dual lower-bounds it.
        CHECK(r.dual <= direct + 1e-8);
        CHECK(r.primal <= direct + 5e-4 * std::max(1.0, spectral_norm(t)));
    }
}

TEST_CASE("order reversal and canonical gap dominate") {
    for (int k = 0; k < 10; ++k) {
        const std::uint64_t seed = derive_seed(21, "dist-order", static_cast<std::uint64_t>(k));
        const Pattern a = random_pattern(splitmix64(seed), 4, 4, 0.4);
        const Pattern b = join(a, random_pattern(splitmix64(seed ^ 5), 4, 4, 0.3));
        const CMatrix t = random_operator(seed, 4, 4, "gaussian");
        CHECK(alpha(t, b) <= alpha(t, a) + 1e-12);
        const auto ra = dist(t, a);
        const auto rb = dist(t, b);
        const double tol = 2e-6 * std::max(1.0, spectral_norm(t));
        CHECK(rb.primal <= ra.primal + tol);
        CHECK(canonical_gap(t, a) >= ra.primal - tol);
    }
}

TEST_CASE("nest patterns: distance equals alpha") {
    const Pattern nest = Pattern::upper_triangular(4);
    for (int k = 0; k < 12; ++k) {
        const std::uint64_t seed = derive_seed(4, "nest", static_cast<std::uint64_t>(k));
        const CMatrix t = random_operator(seed, 4, 4, "gaussian");
        DistOptions opts;
        opts.want_dual = false;
        const auto r = dist(t, nest, opts);
        CHECK(std::abs(r.primal - r.alpha_lower) <= 1e-6 * spectral_norm(t));
    }
}
