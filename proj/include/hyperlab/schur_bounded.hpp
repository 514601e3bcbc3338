#ifndef HYPERLAB_SCHUR_BOUNDED_HPP
#define HYPERLAB_SCHUR_BOUNDED_HPP

#include "hyperlab/pattern.hpp"

namespace hyperlab {

/// Split of a pattern into R (at most n_cap entries per row) and C (at most
/// n_cap entries per column) with disjoint union equal to the support.
struct RCDecomposition {
    Pattern r;
    Pattern c;
    int n_cap = 0;
};

/// Minimal-N row/column split. Feasibility of a candidate N is decided by
/// maximum flow on the network source -> entry (cap 1) -> row/column sink
/// (cap 1) -> sink (cap N); N is found by binary search on [0, max(m,n)].
RCDecomposition schur_bounded_split(const Pattern& p);

} // namespace hyperlab

#endif
