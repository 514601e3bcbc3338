#ifndef HYPERLAB_PATTERN_HPP
#define HYPERLAB_PATTERN_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hyperlab/errors.hpp"

namespace hyperlab {

/// Largest supported row/column dimension. Column sets are kept as 64-bit
/// masks, and Kronecker products of desk-scale patterns stay well inside
/// this bound.
inline constexpr int kMaxPatternDim = 64;

/// A finite 0/1 pattern: the support of a Schur idempotent, equivalently a
/// masa-bimodule of matrices. Indices are 0-based internally; file formats
/// are 1-based.
class Pattern {
public:
    Pattern(int rows, int cols);

    static Pattern full(int rows, int cols);
    static Pattern diagonal(int n);
    /// Upper-triangular (i <= j) pattern; the nest-algebra pattern.
    static Pattern upper_triangular(int n);
    static Pattern from_entries(int rows, int cols,
                                std::span<const std::pair<int, int>> entries);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    bool contains(int i, int j) const;
    void insert(int i, int j);
    void erase(int i, int j);

    /// Column mask of row i (bit j set iff (i,j) in the support).
    std::uint64_t row_mask(int i) const { return row_masks_[static_cast<std::size_t>(i)]; }
    /// Mask with the low cols() bits set.
    std::uint64_t col_full_mask() const;

    std::size_t support_size() const;
    bool empty() const { return support_size() == 0; }
    bool is_full() const;

    /// Entries in row-major order, 0-based.
    std::vector<std::pair<int, int>> entries() const;

    bool operator==(const Pattern& other) const = default;

private:
    int rows_;
    int cols_;
    std::vector<std::uint64_t> row_masks_;
};

/// A product set Q x P of rows and columns, stored as bit masks.
struct Rectangle {
    std::uint64_t row_mask = 0;
    std::uint64_t col_mask = 0;

    bool operator==(const Rectangle&) const = default;

    int row_count() const;
    int col_count() const;
    std::vector<int> row_indices() const;
    std::vector<int> col_indices() const;
    bool contains(int i, int j) const;
};

/// Disjoint rectangles whose union is a pattern's support; exists exactly
/// for contractive (ternary) patterns.
struct BlockDecomposition {
    std::vector<Rectangle> blocks;
};

/// Witness that a pattern is not contractive: (i,j), (i2,j), (i2,j2) are in
/// the support but (i,j2) is not.
struct ZigzagWitness {
    int i = 0;
    int j = 0;
    int i2 = 0;
    int j2 = 0;
};

using BlockDecomposeResult = std::variant<BlockDecomposition, ZigzagWitness>;

enum class LatticeOp { Meet, Join };

Pattern meet(const Pattern& a, const Pattern& b);
Pattern join(const Pattern& a, const Pattern& b);
Pattern lattice_combine(LatticeOp op, const Pattern& a, const Pattern& b);
Pattern complement(const Pattern& a);

/// Decomposes the support into disjoint complete bicliques (one per
/// connected component of the bipartite support graph) or returns a zigzag
/// witness when some component is not complete.
BlockDecomposeResult block_decompose(const Pattern& a);

/// True iff the support is closed under (i,j),(i2,j),(i2,j2) -> (i,j2); in
/// finite dimensions this coincides with block_decompose succeeding.
bool is_ternary(const Pattern& a);

/// Kronecker product: ((i,j),(i2,j2)) -> (i*rows(b)+i2, j*cols(b)+j2).
Pattern kron(const Pattern& a, const Pattern& b);

/// For a family (phi_i) and an index subset E (bit mask), returns
/// (meet over E, join over the complement of E). The empty meet is the full
/// pattern and the empty join is the empty pattern.
std::pair<Pattern, Pattern> subset_lattice_maps(std::span<const Pattern> patterns,
                                                std::uint32_t subset_mask);

/// Text format: first line "m n"; either one "i j" entry per line (1-based)
/// or a line "dense" followed by m rows of n characters from {0,1}.
/// '#' starts a comment.
Pattern read_pattern(std::istream& in);
void write_pattern(std::ostream& out, const Pattern& p);
Pattern load_pattern(const std::string& path);
void save_pattern(const std::string& path, const Pattern& p);

} // namespace hyperlab

#endif
