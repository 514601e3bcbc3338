#include "hyperlab/certificates.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "hyperlab/zero_rectangles.hpp"

namespace hyperlab {

namespace {

double require_input(const BoundCertificate& c, const std::string& key) {
    const auto it = c.inputs.find(key);
    if (it == c.inputs.end())
        throw Error("certificate rule '" + c.rule + "': missing input '" + key + "'");
    return it->second;
}

} // namespace

double rederive(const BoundCertificate& cert) {
    std::vector<double> child_values;
    child_values.reserve(cert.children.size());
    for (const auto& ch : cert.children) child_values.push_back(rederive(ch));

    double v = 0.0;
    if (cert.rule == "identity-idempotent") {
        v = 0.0;
    } else if (cert.rule == "zero-idempotent") {
        v = 1.0;
    } else if (cert.rule == "contractive") {
        v = 2.0;
    } else if (cert.rule == "complement-of-contractive") {
        v = 1.0;
    } else if (cert.rule == "given") {
        v = require_input(cert, "value");
    } else if (cert.rule == "join") {
        v = 1.0;
        for (double c : child_values) v *= c;
    } else if (cert.rule == "meet") {
        if (child_values.size() != 2) throw Error("meet certificate needs two children");
        v = child_values[0] + child_values[1] * require_input(cert, "norm_first");
    } else if (cert.rule == "mask-reduction") {
        if (child_values.size() != 1) throw Error("mask-reduction needs one child");
        v = child_values[0];
    } else if (cert.rule == "sum-with-idempotent-range") {
        v = require_input(cert, "k_u") * require_input(cert, "lambda_phi");
    } else if (cert.rule == "sum-with-ternary") {
        v = 2.0 * require_input(cert, "k_u");
    } else if (cert.rule == "intersect-with-idempotent-range") {
        v = require_input(cert, "lambda_phi") +
            require_input(cert, "norm_phi") * require_input(cert, "k_u");
    } else if (cert.rule == "intersect-with-approx-injective") {
        const double lh = require_input(cert, "lambda_h");
        const double ku = require_input(cert, "k_u");
        v = lh + ku + lh * ku;
    } else if (cert.rule == "intersect-with-ternary") {
        v = 2.0 + 3.0 * require_input(cert, "k_u");
    } else if (cert.rule == "nest-ternary-intersect") {
        v = 5.0;
    } else if (cert.rule == "lambda-via-k") {
        v = require_input(cert, "k_phi") * require_input(cert, "norm_phi_perp");
    } else if (cert.rule == "k-via-lambda") {
        v = require_input(cert, "lambda_phi");
    } else if (cert.rule == "tensor-product") {
        v = require_input(cert, "lambda_c") * require_input(cert, "norm_phi_perp") +
            require_input(cert, "k_c") * require_input(cert, "norm_phi");
    } else if (cert.rule == "tensor-term") {
        v = require_input(cert, "k_c") * require_input(cert, "lambda_product") *
            require_input(cert, "norm");
    } else if (cert.rule == "tensor-sum") {
        v = 0.0;
        for (double c : child_values) v += c;
    } else {
        throw Error("unknown certificate rule '" + cert.rule + "'");
    }

    const double tol = 1e-12 * std::max(1.0, std::abs(v));
    if (std::abs(v - cert.value) > tol)
        throw Error("certificate value " + std::to_string(cert.value) + " disagrees with rule '" +
                    cert.rule + "' recomputation " + std::to_string(v));
    return v;
}

double structural_norm_bound(const Pattern& p) {
    int rows_touched = 0;
    std::uint64_t cols = 0;
    for (int i = 0; i < p.rows(); ++i) {
        if (p.row_mask(i)) ++rows_touched;
        cols |= p.row_mask(i);
    }
    return static_cast<double>(std::min<int>(rows_touched, std::popcount(cols)));
}

namespace {

bool is_contractive(const Pattern& p) { return is_ternary(p); }

Pattern rects_pattern(int rows, int cols, const std::vector<Rectangle>& rs) {
    Pattern p(rows, cols);
    for (const auto& r : rs)
        for (int i : r.row_indices())
            for (int j : r.col_indices()) p.insert(i, j);
    return p;
}

// Greedy set cover of the support by maximal bicliques; falls back to
// singleton entries if the biclique list cannot be enumerated under the cap.
std::vector<Rectangle> greedy_cover(const Pattern& a, std::size_t cap) {
    std::vector<Rectangle> rects;
    try {
        ZeroRectangleOptions opts;
        opts.max_rectangles = cap;
        rects = maximal_support_rectangles(a, opts);
    } catch (const EnumerationCapExceeded&) {
        rects.clear();
    }
    if (rects.empty()) {
        std::vector<Rectangle> singles;
        for (auto [i, j] : a.entries())
            singles.push_back(Rectangle{std::uint64_t{1} << i, std::uint64_t{1} << j});
        return singles;
    }

    std::vector<Rectangle> cover;
    Pattern uncovered = a;
    while (!uncovered.empty()) {
        std::size_t best_gain = 0;
        std::size_t best_k = 0;
        for (std::size_t k = 0; k < rects.size(); ++k) {
            std::size_t gain = 0;
            for (int i : rects[k].row_indices())
                gain += static_cast<std::size_t>(
                    std::popcount(uncovered.row_mask(i) & rects[k].col_mask));
            if (gain > best_gain) {
                best_gain = gain;
                best_k = k;
            }
        }
        if (best_gain == 0) throw Error("biclique cover failed to make progress");
        cover.push_back(rects[best_k]);
        for (int i : rects[best_k].row_indices())
            for (int j : rects[best_k].col_indices()) uncovered.erase(i, j);
    }
    return cover;
}

// Group cover rectangles into families with pairwise disjoint rows and
// columns; each family is then a single contractive pattern.
std::vector<std::vector<Rectangle>> disjoint_groups(const std::vector<Rectangle>& cover) {
    std::vector<std::vector<Rectangle>> groups;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> masks;  // (rows, cols) per group
    for (const auto& r : cover) {
        bool placed = false;
        for (std::size_t g = 0; g < groups.size(); ++g) {
            if ((masks[g].first & r.row_mask) == 0 && (masks[g].second & r.col_mask) == 0) {
                groups[g].push_back(r);
                masks[g].first |= r.row_mask;
                masks[g].second |= r.col_mask;
                placed = true;
                break;
            }
        }
        if (!placed) {
            groups.push_back({r});
            masks.emplace_back(r.row_mask, r.col_mask);
        }
    }
    return groups;
}

BoundCertificate contractive_leaf(Pattern p) {
    BoundCertificate c;
    c.value = 2.0;
    c.rule = "contractive";
    c.pattern = std::move(p);
    return c;
}

BoundCertificate complement_leaf(Pattern p) {
    BoundCertificate c;
    c.value = 1.0;
    c.rule = "complement-of-contractive";
    c.pattern = std::move(p);
    return c;
}

BoundCertificate search(const Pattern& a, const NormOracle& norm_bound,
                        const LambdaCertOptions& opts, int depth);

// Join of one contractive pattern per group.
BoundCertificate join_candidate(const Pattern& a,
                                const std::vector<std::vector<Rectangle>>& groups) {
    BoundCertificate cert;
    cert.rule = "join";
    cert.pattern = a;
    double v = 1.0;
    for (const auto& g : groups) {
        cert.children.push_back(contractive_leaf(rects_pattern(a.rows(), a.cols(), g)));
        v *= 2.0;
    }
    cert.value = v;
    return cert;
}

// Meet of complements of contractive patterns, folded left with the better
// operand order at each step.
BoundCertificate meet_candidate(const Pattern& a,
                                const std::vector<std::vector<Rectangle>>& groups,
                                const NormOracle& norm_bound) {
    BoundCertificate acc =
        complement_leaf(complement(rects_pattern(a.rows(), a.cols(), groups[0])));
    Pattern acc_pattern = *acc.pattern;
    for (std::size_t g = 1; g < groups.size(); ++g) {
        BoundCertificate next =
            complement_leaf(complement(rects_pattern(a.rows(), a.cols(), groups[g])));
        const double norm_acc = norm_bound(acc_pattern);
        const double norm_next = norm_bound(*next.pattern);
        const double v1 = acc.value + next.value * norm_acc;   // meet(acc, next)
        const double v2 = next.value + acc.value * norm_next;  // meet(next, acc)
        BoundCertificate node;
        node.rule = "meet";
        acc_pattern = meet(acc_pattern, *next.pattern);
        node.pattern = acc_pattern;
        if (v1 <= v2) {
            node.value = v1;
            node.inputs["norm_first"] = norm_acc;
            node.children = {std::move(acc), std::move(next)};
        } else {
            node.value = v2;
            node.inputs["norm_first"] = norm_next;
            node.children = {std::move(next), std::move(acc)};
        }
        acc = std::move(node);
    }
    return acc;
}

BoundCertificate search(const Pattern& a, const NormOracle& norm_bound,
                        const LambdaCertOptions& opts, int depth) {
    if (a.is_full()) {
        BoundCertificate c;
        c.value = 0.0;
        c.rule = "identity-idempotent";
        c.pattern = a;
        return c;
    }
    if (a.empty()) {
        BoundCertificate c;
        c.value = 1.0;
        c.rule = "zero-idempotent";
        c.pattern = a;
        return c;
    }
    const Pattern ac = complement(a);
    if (is_contractive(ac)) return complement_leaf(a);

    std::vector<BoundCertificate> candidates;
    if (is_contractive(a)) candidates.push_back(contractive_leaf(a));

    const auto cover = greedy_cover(a, opts.max_rectangles);
    const auto groups = disjoint_groups(cover);
    BoundCertificate join_cert = join_candidate(a, groups);
    const bool trivial_cover =
        groups.size() == a.support_size() ||
        (cover.size() == a.support_size() &&
         std::all_of(cover.begin(), cover.end(),
                     [](const Rectangle& r) { return r.row_count() * r.col_count() == 1; }));
    join_cert.fallback = candidates.empty() && trivial_cover;
    candidates.push_back(std::move(join_cert));

    if (opts.use_meet_route) {
        const auto cover_c = greedy_cover(ac, opts.max_rectangles);
        const auto groups_c = disjoint_groups(cover_c);
        if (groups_c.size() >= 2)
            candidates.push_back(meet_candidate(a, groups_c, norm_bound));
    }

    if (opts.use_reduction && depth < opts.max_depth) {
        // Close each connected component of the complement to a full
        // biclique: a contractive pattern containing the complement. The
        // lambda bound of a is then inherited from a minus the closure's
        // complement. (The complement is non-contractive here, otherwise the
        // early return above fired.)
        {
            // Build the closure from components of the complement graph:
            // breadth-first over rows, alternately expanding column and row
            // masks until stable, then fill the full rectangle.
            Pattern closure(a.rows(), a.cols());
            std::vector<bool> seen(static_cast<std::size_t>(a.rows()), false);
            for (int i0 = 0; i0 < a.rows(); ++i0) {
                if (seen[static_cast<std::size_t>(i0)] || ac.row_mask(i0) == 0) continue;
                std::uint64_t rows_acc = std::uint64_t{1} << i0;
                std::uint64_t cols_acc = ac.row_mask(i0);
                bool grew = true;
                while (grew) {
                    grew = false;
                    for (int i = 0; i < a.rows(); ++i) {
                        if ((rows_acc >> i) & 1u) continue;
                        if (ac.row_mask(i) & cols_acc) {
                            rows_acc |= std::uint64_t{1} << i;
                            cols_acc |= ac.row_mask(i);
                            grew = true;
                        }
                    }
                }
                for (int i = 0; i < a.rows(); ++i)
                    if ((rows_acc >> i) & 1u) {
                        seen[static_cast<std::size_t>(i)] = true;
                        for (int j = 0; j < a.cols(); ++j)
                            if ((cols_acc >> j) & 1u) closure.insert(i, j);
                    }
            }
            const Pattern reduced = meet(a, closure);
            if (reduced != a && !complement(closure).empty()) {
                BoundCertificate child = search(reduced, norm_bound, opts, depth + 1);
                BoundCertificate node;
                node.rule = "mask-reduction";
                node.value = child.value;
                node.pattern = a;
                node.children.push_back(std::move(child));
                candidates.push_back(std::move(node));
            }
        }
    }

    std::size_t best = 0;
    for (std::size_t k = 1; k < candidates.size(); ++k)
        if (candidates[k].value < candidates[best].value) best = k;
    return std::move(candidates[best]);
}

} // namespace

BoundCertificate lambda_certificate(const Pattern& a, const NormOracle& norm_bound,
                                    const LambdaCertOptions& opts) {
    NormOracle oracle = norm_bound;
    if (!oracle) oracle = [](const Pattern& p) { return structural_norm_bound(p); };
    return search(a, oracle, opts, 0);
}

} // namespace hyperlab
