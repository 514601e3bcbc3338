#ifndef HYPERLAB_CERTIFICATES_HPP
#define HYPERLAB_CERTIFICATES_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hyperlab/pattern.hpp"

namespace hyperlab {

/// Derivation tree for a certified numeric upper bound. `value` is exactly
/// recomputable from the children's values, the recorded scalar inputs and
/// the rule name (see rederive).
struct BoundCertificate {
    double value = 0.0;
    std::string rule;
    std::map<std::string, double> inputs;
    std::vector<BoundCertificate> children;
    std::optional<Pattern> pattern;
    bool fallback = false;  // true when only the trivial singleton join applied
};

/// Recomputes the tree bottom-up and throws if any node disagrees with its
/// rule by more than 1e-12 relative; returns the recomputed root value.
double rederive(const BoundCertificate& cert);

/// Certified upper bound on the Schur multiplier norm of a pattern, used by
/// certificate rules that consume norms.
using NormOracle = std::function<double(const Pattern&)>;

/// Sound norm bound without numerics: min(#rows touched, #cols touched),
/// from the row/column slicing of the pattern into contractive pieces.
double structural_norm_bound(const Pattern& p);

struct LambdaCertOptions {
    bool use_meet_route = true;
    bool use_reduction = true;
    int max_depth = 5;
    std::size_t max_rectangles = 1'000'000;
};

/// Upper bound on the lambda constant of the pattern's Schur idempotent,
/// produced by decomposing the pattern into contractive generators and their
/// complements under meet/join. The bound is sound but need not be optimal.
BoundCertificate lambda_certificate(const Pattern& a, const NormOracle& norm_bound,
                                    const LambdaCertOptions& opts = {});

} // namespace hyperlab

#endif
