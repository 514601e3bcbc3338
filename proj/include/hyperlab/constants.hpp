#ifndef HYPERLAB_CONSTANTS_HPP
#define HYPERLAB_CONSTANTS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hyperlab/certificates.hpp"
#include "hyperlab/distances.hpp"
#include "hyperlab/matrix_num.hpp"
#include "hyperlab/pattern.hpp"

namespace hyperlab {

/// Budget for the nonconvex ratio search: gaussian restarts followed by
/// cyclic coordinate perturbations with geometric step decay.
struct SearchBudget {
    int trials = 100;
    int max_sweeps = 40;
    double step_init = 0.25;
    double step_min = 1e-6;
    std::uint64_t master_seed = 1;
    /// dist tolerance while searching (k-searches only) and for the final
    /// reported ratio.
    double search_dist_tol = 1e-3;
    double final_dist_tol = 1e-6;
};

/// Best ratio found: a lower-bound style estimate, reproducible from
/// (witness, seed) and never reported without its exclusion count.
struct ConstantEstimate {
    double value = 0.0;
    CMatrix witness;
    int trials = 0;
    std::uint64_t seed = 0;
    int excluded = 0;
    bool flagged = false;  // no valid sample outside the full-pattern convention
};

/// max_T dist(T).primal / alpha(T): empirical hyperreflexivity constant.
ConstantEstimate estimate_k(const Pattern& a, const SearchBudget& budget);

/// max_T ||Phi_perp(T)|| / alpha(T): empirical lambda constant.
ConstantEstimate estimate_lambda(const Pattern& a, const SearchBudget& budget);

/// estimate_k of kron(a, full ancilla pattern); the finite surrogate for
/// complete constants. Dimension product must stay within the pattern cap.
ConstantEstimate estimate_complete(const Pattern& a, int ancilla_dim, const SearchBudget& budget);

enum class BoundRule {
    SumWithIdempotentRange,      // k(U + ran Phi) <= k(U) lambda(Phi)
    SumWithTernary,              // k(U + M) <= 2 k(U)
    IntersectWithIdempotentRange,// k(U ∩ ran Phi) <= lambda(Phi) + ||Phi|| k(U)
    IntersectWithApproxInjective,// lambda_H + k(U) + lambda_H k(U)
    IntersectWithTernary,        // 2 + 3 k(U)
    NestTernaryIntersect,        // 5
    LambdaViaK,                  // lambda(Phi) <= k(Phi) ||Phi_perp||
    KViaLambda,                  // k(Phi) <= lambda(Phi)
    MeetLambda,                  // lambda1 + lambda2 ||Phi1||
    JoinLambda,                  // lambda1 lambda2
    TensorProduct,               // lambda_c ||Phi_perp|| + k_c ||Phi||
};

const char* bound_rule_name(BoundRule r);
BoundRule bound_rule_from_name(const std::string& name);

struct BoundInputs {
    std::map<std::string, double> scalars;
    std::map<std::string, Pattern> patterns;  // norms computed on demand
};

/// Pure arithmetic on certified quantities; each rule documents the scalar
/// keys it reads. Pattern-valued inputs named "<key>" provide "norm_<key>"
/// through the oracle when the scalar is absent.
BoundCertificate theorem_bound(BoundRule rule, const BoundInputs& inputs,
                               const NormOracle& norm_bound);

struct TensorBoundInput {
    std::vector<Pattern> patterns;                 // the Phi_i
    std::map<std::uint32_t, double> u_bounds;      // subset mask -> k_c(U_E), non-empty E
    std::vector<double> lambda_c;                  // per index i
};

/// Sum over subsets E of k_c(U_E) * prod_{i in E^c} lambda_c(i) * ||Phi_E
/// Psi_{E^c}^perp||, with k_c(U_empty) = 1.
BoundCertificate tensor_bound(const TensorBoundInput& input, const NormOracle& norm_bound);

/// The patterns Phi_E ∧ Psi_{E^c}^perp for all subsets E, indexed by mask;
/// they partition the full index set.
std::vector<Pattern> tensor_partition(const std::vector<Pattern>& patterns);

/// Default certified norm oracle backed by the multiplier-norm solver: the
/// upper bracket end plus a small guard.
NormOracle multiplier_norm_oracle(double tol = 1e-4);

} // namespace hyperlab

#endif
