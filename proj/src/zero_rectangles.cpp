#include "hyperlab/zero_rectangles.hpp"

#include <algorithm>
#include <bit>

namespace hyperlab {

namespace {

// Close-by-one enumeration of the concepts of the row/column relation
// given by zero_rows: pairs (Q, P) with P = common columns of Q and
// Q = all rows containing P. Concepts with empty Q or empty P are skipped.
class ConceptEnumerator {
public:
    ConceptEnumerator(const std::vector<std::uint64_t>& zero_rows, std::uint64_t col_full,
                      std::size_t cap)
        : rows_(zero_rows), col_full_(col_full), cap_(cap) {}

    std::vector<Rectangle> run() {
        out_.clear();
        std::uint64_t q0 = 0;
        for (std::size_t i = 0; i < rows_.size(); ++i)
            if (rows_[i] == col_full_ && col_full_ != 0) q0 |= (std::uint64_t{1} << i);
        emit(q0, col_full_);
        recurse(q0, col_full_, 0);
        std::sort(out_.begin(), out_.end(), [](const Rectangle& a, const Rectangle& b) {
            return std::pair(a.row_mask, a.col_mask) < std::pair(b.row_mask, b.col_mask);
        });
        return std::move(out_);
    }

private:
    void emit(std::uint64_t q, std::uint64_t p) {
        if (q == 0 || p == 0) return;
        if (out_.size() >= cap_)
            throw EnumerationCapExceeded("rectangle enumeration cap (" + std::to_string(cap_) +
                                         ") exceeded");
        out_.push_back(Rectangle{q, p});
    }

    std::uint64_t row_closure(std::uint64_t p) const {
        std::uint64_t q = 0;
        for (std::size_t i = 0; i < rows_.size(); ++i)
            if ((rows_[i] & p) == p) q |= (std::uint64_t{1} << i);
        return q;
    }

    void recurse(std::uint64_t q, std::uint64_t p, int start) {
        const int m = static_cast<int>(rows_.size());
        for (int i = start; i < m; ++i) {
            if ((q >> i) & 1u) continue;
            const std::uint64_t p2 = p & rows_[static_cast<std::size_t>(i)];
            if (p2 == 0) continue;
            const std::uint64_t q2 = row_closure(p2);
            const std::uint64_t below = (std::uint64_t{1} << i) - 1;
            if ((q2 & below) != (q & below)) continue;  // canonical generation test
            emit(q2, p2);
            recurse(q2, p2, i + 1);
        }
    }

    const std::vector<std::uint64_t>& rows_;
    std::uint64_t col_full_;
    std::size_t cap_;
    std::vector<Rectangle> out_;
};

} // namespace

std::vector<Rectangle> maximal_zero_rectangles(const Pattern& p,
                                               const ZeroRectangleOptions& opts) {
    const std::uint64_t full = p.col_full_mask();
    std::vector<std::uint64_t> zero_rows(static_cast<std::size_t>(p.rows()));
    for (int i = 0; i < p.rows(); ++i)
        zero_rows[static_cast<std::size_t>(i)] = full & ~p.row_mask(i);
    return ConceptEnumerator(zero_rows, full, opts.max_rectangles).run();
}

std::vector<Rectangle> maximal_support_rectangles(const Pattern& p,
                                                  const ZeroRectangleOptions& opts) {
    const std::uint64_t full = p.col_full_mask();
    std::vector<std::uint64_t> rows(static_cast<std::size_t>(p.rows()));
    for (int i = 0; i < p.rows(); ++i) rows[static_cast<std::size_t>(i)] = p.row_mask(i);
    return ConceptEnumerator(rows, full, opts.max_rectangles).run();
}

} // namespace hyperlab
