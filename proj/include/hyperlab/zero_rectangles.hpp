#ifndef HYPERLAB_ZERO_RECTANGLES_HPP
#define HYPERLAB_ZERO_RECTANGLES_HPP

#include <cstddef>
#include <vector>

#include "hyperlab/pattern.hpp"

namespace hyperlab {

struct ZeroRectangleOptions {
    /// Hard cap on the number of enumerated rectangles; exceeded counts
    /// abort with EnumerationCapExceeded.
    std::size_t max_rectangles = 1'000'000;
};

/// All inclusion-maximal rectangles Q x P disjoint from the support of the
/// pattern, with Q and P non-empty. These are the closed bicliques of the
/// bipartite complement graph, enumerated close-by-one style so each
/// maximal rectangle is produced exactly once. Output is sorted by
/// (row_mask, col_mask).
std::vector<Rectangle> maximal_zero_rectangles(const Pattern& p,
                                               const ZeroRectangleOptions& opts = {});

/// All inclusion-maximal rectangles contained in the support (the maximal
/// bicliques of the pattern itself).
std::vector<Rectangle> maximal_support_rectangles(const Pattern& p,
                                                  const ZeroRectangleOptions& opts = {});

} // namespace hyperlab

#endif
