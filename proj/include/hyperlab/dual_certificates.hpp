#ifndef HYPERLAB_DUAL_CERTIFICATES_HPP
#define HYPERLAB_DUAL_CERTIFICATES_HPP

#include <vector>

#include "hyperlab/distances.hpp"
#include "hyperlab/matrix_num.hpp"
#include "hyperlab/pattern.hpp"

namespace hyperlab {

/// Rank-one functional a b^T whose support rectangle is disjoint from the
/// reference pattern; cost is its trace norm ||a|| ||b||.
struct RankOneTerm {
    CVector a;
    CVector b;
    double cost = 0.0;
};

struct RankOneDecomposition {
    std::vector<RankOneTerm> terms;
    double total_cost = 0.0;
    double ratio = 1.0;  // total_cost / trace_norm(W); 1 for W = 0
};

/// True iff W vanishes on the support of the pattern (within tol).
bool is_annihilator(const CMatrix& w, const Pattern& a, double tol = 1e-12);

/// Splits an annihilating functional into rank-one terms supported on zero
/// rectangles: entries are assigned to maximal zero rectangles greedily by
/// co-assigned mass (with local move refinement), then each rectangle's
/// submatrix is expanded by SVD.
RankOneDecomposition rank_one_decompose(const CMatrix& w, const Pattern& a);

struct SlackEntry {
    double value = 0.0;  // measured left-hand side
    double bound = 0.0;  // right-hand side
    double slack = 0.0;  // bound - value
};

struct CertificateReport {
    std::vector<SlackEntry> term_slacks;  // |<T, a b^T>| <= cost * alpha(T, A)
    SlackEntry pairing_slack;             // |<T, W>| <= ||W||_1 * dist(T, A).primal
    double min_slack = 0.0;
};

/// Evaluates every certificate inequality for the decomposition against a
/// test operator.
CertificateReport certificate_check(const CMatrix& w, const Pattern& a,
                                    const RankOneDecomposition& d, const CMatrix& t,
                                    const DistOptions& dist_opts = {});

} // namespace hyperlab

#endif
