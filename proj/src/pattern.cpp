#include "hyperlab/pattern.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace hyperlab {

namespace {

void check_dim(int rows, int cols) {
    if (rows < 1 || cols < 1 || rows > kMaxPatternDim || cols > kMaxPatternDim) {
        throw DimensionMismatch("pattern dimensions must be in [1, " +
                                std::to_string(kMaxPatternDim) + "], got " +
                                std::to_string(rows) + "x" + std::to_string(cols));
    }
}

void check_same_dims(const Pattern& a, const Pattern& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionMismatch(std::string(op) + ": dimension mismatch " +
                                std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                " vs " + std::to_string(b.rows()) + "x" +
                                std::to_string(b.cols()));
    }
}

} // namespace

Pattern::Pattern(int rows, int cols) : rows_(rows), cols_(cols) {
    check_dim(rows, cols);
    row_masks_.assign(static_cast<std::size_t>(rows), 0);
}

Pattern Pattern::full(int rows, int cols) {
    Pattern p(rows, cols);
    const std::uint64_t m = p.col_full_mask();
    for (auto& r : p.row_masks_) r = m;
    return p;
}

Pattern Pattern::diagonal(int n) {
    Pattern p(n, n);
    for (int i = 0; i < n; ++i) p.insert(i, i);
    return p;
}

Pattern Pattern::upper_triangular(int n) {
    Pattern p(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) p.insert(i, j);
    return p;
}

Pattern Pattern::from_entries(int rows, int cols,
                              std::span<const std::pair<int, int>> entries) {
    Pattern p(rows, cols);
    for (auto [i, j] : entries) p.insert(i, j);
    return p;
}

bool Pattern::contains(int i, int j) const {
    if (i < 0 || i >= rows_ || j < 0 || j >= cols_) return false;
    return (row_masks_[static_cast<std::size_t>(i)] >> j) & 1u;
}

void Pattern::insert(int i, int j) {
    if (i < 0 || i >= rows_ || j < 0 || j >= cols_) {
        throw DimensionMismatch("pattern entry (" + std::to_string(i) + "," +
                                std::to_string(j) + ") out of range for " +
                                std::to_string(rows_) + "x" + std::to_string(cols_));
    }
    row_masks_[static_cast<std::size_t>(i)] |= (std::uint64_t{1} << j);
}

void Pattern::erase(int i, int j) {
    if (i < 0 || i >= rows_ || j < 0 || j >= cols_) return;
    row_masks_[static_cast<std::size_t>(i)] &= ~(std::uint64_t{1} << j);
}

std::uint64_t Pattern::col_full_mask() const {
    return cols_ == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << cols_) - 1);
}

std::size_t Pattern::support_size() const {
    std::size_t n = 0;
    for (auto r : row_masks_) n += static_cast<std::size_t>(std::popcount(r));
    return n;
}

bool Pattern::is_full() const {
    const std::uint64_t m = col_full_mask();
    return std::all_of(row_masks_.begin(), row_masks_.end(),
                       [m](std::uint64_t r) { return r == m; });
}

std::vector<std::pair<int, int>> Pattern::entries() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(support_size());
    for (int i = 0; i < rows_; ++i) {
        std::uint64_t r = row_masks_[static_cast<std::size_t>(i)];
        while (r) {
            const int j = std::countr_zero(r);
            out.emplace_back(i, j);
            r &= r - 1;
        }
    }
    return out;
}

int Rectangle::row_count() const { return std::popcount(row_mask); }
int Rectangle::col_count() const { return std::popcount(col_mask); }

std::vector<int> Rectangle::row_indices() const {
    std::vector<int> out;
    std::uint64_t r = row_mask;
    while (r) {
        out.push_back(std::countr_zero(r));
        r &= r - 1;
    }
    return out;
}

std::vector<int> Rectangle::col_indices() const {
    std::vector<int> out;
    std::uint64_t c = col_mask;
    while (c) {
        out.push_back(std::countr_zero(c));
        c &= c - 1;
    }
    return out;
}

bool Rectangle::contains(int i, int j) const {
    return ((row_mask >> i) & 1u) && ((col_mask >> j) & 1u);
}

Pattern meet(const Pattern& a, const Pattern& b) {
    check_same_dims(a, b, "meet");
    Pattern out(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i) {
        const std::uint64_t m = a.row_mask(i) & b.row_mask(i);
        std::uint64_t r = m;
        while (r) {
            out.insert(i, std::countr_zero(r));
            r &= r - 1;
        }
    }
    return out;
}

Pattern join(const Pattern& a, const Pattern& b) {
    check_same_dims(a, b, "join");
    Pattern out(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i) {
        std::uint64_t r = a.row_mask(i) | b.row_mask(i);
        while (r) {
            out.insert(i, std::countr_zero(r));
            r &= r - 1;
        }
    }
    return out;
}

Pattern lattice_combine(LatticeOp op, const Pattern& a, const Pattern& b) {
    return op == LatticeOp::Meet ? meet(a, b) : join(a, b);
}

Pattern complement(const Pattern& a) {
    Pattern out(a.rows(), a.cols());
    const std::uint64_t full = a.col_full_mask();
    for (int i = 0; i < a.rows(); ++i) {
        std::uint64_t r = full & ~a.row_mask(i);
        while (r) {
            out.insert(i, std::countr_zero(r));
            r &= r - 1;
        }
    }
    return out;
}

BlockDecomposeResult block_decompose(const Pattern& a) {
    const int m = a.rows();
    const int n = a.cols();
    // Union-find over rows and columns of nonzero degree.
    std::vector<int> parent(static_cast<std::size_t>(m + n));
    for (int v = 0; v < m + n; ++v) parent[static_cast<std::size_t>(v)] = v;
    auto find = [&](int v) {
        while (parent[static_cast<std::size_t>(v)] != v) {
            parent[static_cast<std::size_t>(v)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
            v = parent[static_cast<std::size_t>(v)];
        }
        return v;
    };
    auto unite = [&](int u, int v) { parent[static_cast<std::size_t>(find(u))] = find(v); };

    for (int i = 0; i < m; ++i) {
        std::uint64_t r = a.row_mask(i);
        while (r) {
            const int j = std::countr_zero(r);
            unite(i, m + j);
            r &= r - 1;
        }
    }

    // Collect the row/col masks per component root.
    std::vector<Rectangle> rects(static_cast<std::size_t>(m + n));
    for (int i = 0; i < m; ++i) {
        if (a.row_mask(i) == 0) continue;
        rects[static_cast<std::size_t>(find(i))].row_mask |= (std::uint64_t{1} << i);
        rects[static_cast<std::size_t>(find(i))].col_mask |= a.row_mask(i);
    }

    BlockDecomposition dec;
    for (const auto& rect : rects) {
        if (rect.row_mask == 0) continue;
        // Complete biclique check: every member row must carry the full
        // column mask of the component.
        for (int i : rect.row_indices()) {
            if (a.row_mask(i) != rect.col_mask) {
                // Incomplete component: locate a zigzag (p2,q),(p,q),(p,q2)
                // in the support with (p2,q2) missing.
                for (auto [p, q] : a.entries()) {
                    std::uint64_t r2 = a.row_mask(p);
                    while (r2) {
                        const int q2 = std::countr_zero(r2);
                        r2 &= r2 - 1;
                        if (q2 == q) continue;
                        for (int p2 = 0; p2 < m; ++p2) {
                            if (a.contains(p2, q) && !a.contains(p2, q2))
                                return ZigzagWitness{p2, q, p, q2};
                        }
                    }
                }
                // Unreachable: an incomplete component always has a zigzag.
                throw Error("block_decompose: inconsistent component state");
            }
        }
        dec.blocks.push_back(rect);
    }
    std::sort(dec.blocks.begin(), dec.blocks.end(), [](const Rectangle& x, const Rectangle& y) {
        return std::pair(x.row_mask, x.col_mask) < std::pair(y.row_mask, y.col_mask);
    });
    return dec;
}

bool is_ternary(const Pattern& a) {
    // (i,j), (i2,j), (i2,j2) in support => (i,j2) in support.
    // Equivalent mask form: rows sharing a column must have equal masks
    // restricted to... directly: for every pair of rows with intersecting
    // masks, the masks must coincide on their union within the component;
    // the cheap check below is the literal closure condition.
    const int m = a.rows();
    for (int i = 0; i < m; ++i) {
        const std::uint64_t ri = a.row_mask(i);
        if (ri == 0) continue;
        for (int i2 = 0; i2 < m; ++i2) {
            const std::uint64_t r2 = a.row_mask(i2);
            if ((ri & r2) != 0 && (r2 & ~ri) != 0) return false;
        }
    }
    return true;
}

Pattern kron(const Pattern& a, const Pattern& b) {
    const long rows = static_cast<long>(a.rows()) * b.rows();
    const long cols = static_cast<long>(a.cols()) * b.cols();
    if (rows > kMaxPatternDim || cols > kMaxPatternDim) {
        throw DimensionMismatch("kron: result dimension " + std::to_string(rows) + "x" +
                                std::to_string(cols) + " exceeds cap " +
                                std::to_string(kMaxPatternDim));
    }
    Pattern out(static_cast<int>(rows), static_cast<int>(cols));
    for (auto [i, j] : a.entries())
        for (auto [i2, j2] : b.entries())
            out.insert(i * b.rows() + i2, j * b.cols() + j2);
    return out;
}

std::pair<Pattern, Pattern> subset_lattice_maps(std::span<const Pattern> patterns,
                                                std::uint32_t subset_mask) {
    if (patterns.empty()) throw Error("subset_lattice_maps: empty family");
    const int m = patterns[0].rows();
    const int n = patterns[0].cols();
    for (const auto& p : patterns) check_same_dims(patterns[0], p, "subset_lattice_maps");
    if (patterns.size() > 32) throw Error("subset_lattice_maps: family too large");
    const std::uint32_t all = patterns.size() == 32
                                  ? ~std::uint32_t{0}
                                  : ((std::uint32_t{1} << patterns.size()) - 1);
    if ((subset_mask & ~all) != 0) throw Error("subset_lattice_maps: subset out of range");

    Pattern phi = Pattern::full(m, n);
    for (std::size_t i = 0; i < patterns.size(); ++i)
        if ((subset_mask >> i) & 1u) phi = meet(phi, patterns[i]);

    Pattern psi(m, n);
    for (std::size_t i = 0; i < patterns.size(); ++i)
        if (!((subset_mask >> i) & 1u)) psi = join(psi, patterns[i]);

    return {phi, psi};
}

namespace {

std::string next_content_line(std::istream& in) {
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r\n");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t\r\n");
        return line.substr(first, last - first + 1);
    }
    return {};
}

} // namespace

Pattern read_pattern(std::istream& in) {
    const std::string header = next_content_line(in);
    if (header.empty()) throw ParseError("pattern: missing dimension line");
    std::istringstream hs(header);
    int m = 0, n = 0;
    if (!(hs >> m >> n)) throw ParseError("pattern: bad dimension line '" + header + "'");
    Pattern p(m, n);

    std::streampos mark = in.tellg();
    std::string line = next_content_line(in);
    if (line == "dense") {
        for (int i = 0; i < m; ++i) {
            line = next_content_line(in);
            if (static_cast<int>(line.size()) < n)
                throw ParseError("pattern: dense row " + std::to_string(i + 1) + " too short");
            for (int j = 0; j < n; ++j) {
                if (line[static_cast<std::size_t>(j)] == '1')
                    p.insert(i, j);
                else if (line[static_cast<std::size_t>(j)] != '0')
                    throw ParseError("pattern: dense rows must contain only 0/1");
            }
        }
        return p;
    }

    // Sparse entries, 1-based.
    while (!line.empty()) {
        std::istringstream ls(line);
        int i = 0, j = 0;
        if (!(ls >> i >> j)) throw ParseError("pattern: bad entry line '" + line + "'");
        if (i < 1 || i > m || j < 1 || j > n)
            throw ParseError("pattern: entry (" + std::to_string(i) + "," + std::to_string(j) +
                             ") outside 1.." + std::to_string(m) + " x 1.." + std::to_string(n));
        p.insert(i - 1, j - 1);
        mark = in.tellg();
        line = next_content_line(in);
    }
    (void)mark;
    return p;
}

void write_pattern(std::ostream& out, const Pattern& p) {
    out << p.rows() << ' ' << p.cols() << '\n';
    for (auto [i, j] : p.entries()) out << (i + 1) << ' ' << (j + 1) << '\n';
}

Pattern load_pattern(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open pattern file: " + path);
    return read_pattern(in);
}

void save_pattern(const std::string& path, const Pattern& p) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write pattern file: " + path);
    write_pattern(out, p);
}

} // namespace hyperlab
