#ifndef HYPERLAB_MULTIPLIER_NORM_HPP
#define HYPERLAB_MULTIPLIER_NORM_HPP

#include <optional>
#include <utility>

#include "hyperlab/matrix_num.hpp"
#include "hyperlab/pattern.hpp"

namespace hyperlab {

struct MultiplierNormOptions {
    double tol = 1e-4;             // half-width of the final bisection bracket
    int max_iters = 50'000;        // Dykstra cycles per feasibility probe
    double feas_residual = 1e-8;   // residual below which a probe is feasible
    double infeas_residual = 1e-6; // stagnating above this means infeasible
    int stagnation_window = 500;   // cycles without improvement for the call
    bool want_factors = false;     // extract a Haagerup-style factorization
};

struct MultiplierNormResult {
    double value = 0.0;      // midpoint of the final bracket
    double tolerance = 0.0;  // half-width of the final bracket
    double lower = 0.0;      // bracket ends; upper is a certified upper bound
    double upper = 0.0;
    bool converged = true;   // false when some probe was inconclusive
    /// Matrices (X, Y) with X^H Y = pattern matrix and squared column norms
    /// bounded by the feasible level; present when requested and a feasible
    /// probe ran.
    std::optional<std::pair<CMatrix, CMatrix>> factors;
};

/// Norm of the Schur multiplication by the 0/1 matrix of the pattern.
/// Levels t are probed by cyclic Dykstra projections onto (a) the PSD cone,
/// (b) the affine set pinning the off-diagonal block to the pattern matrix,
/// (c) the diagonal box <= t, and bisected over [lower, min(m, n)].
MultiplierNormResult multiplier_norm(const Pattern& a, const MultiplierNormOptions& opts = {});

} // namespace hyperlab

#endif
