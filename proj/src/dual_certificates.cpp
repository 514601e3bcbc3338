#include "hyperlab/dual_certificates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hyperlab/zero_rectangles.hpp"

namespace hyperlab {

bool is_annihilator(const CMatrix& w, const Pattern& a, double tol) {
    if (w.rows() != a.rows() || w.cols() != a.cols())
        throw DimensionMismatch("is_annihilator: shape mismatch");
    for (auto [i, j] : a.entries())
        if (std::abs(w(i, j)) > tol) return false;
    return true;
}

RankOneDecomposition rank_one_decompose(const CMatrix& w, const Pattern& a) {
    if (!is_annihilator(w, a))
        throw Error("rank_one_decompose: functional does not annihilate the pattern");

    RankOneDecomposition out;
    const double w_trace = trace_norm(w);
    if (w_trace == 0.0) return out;

    const auto rects = maximal_zero_rectangles(a);

    // Support entries of w and their candidate rectangles.
    struct EntryInfo {
        int i, j;
        double mass;
        std::vector<int> candidates;
        int assigned = -1;
    };
    std::vector<EntryInfo> entries;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            if (w(i, j) == std::complex<double>(0.0, 0.0)) continue;
            EntryInfo e{i, j, std::abs(w(i, j)), {}, -1};
            for (std::size_t k = 0; k < rects.size(); ++k)
                if (rects[k].contains(i, j)) e.candidates.push_back(static_cast<int>(k));
            if (e.candidates.empty())
                throw Error("rank_one_decompose: no zero rectangle covers entry (" +
                            std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
            entries.push_back(std::move(e));
        }

    // Static support mass per rectangle for the initial assignment.
    std::vector<double> support_mass(rects.size(), 0.0);
    for (const auto& e : entries)
        for (int k : e.candidates) support_mass[static_cast<std::size_t>(k)] += e.mass;
    for (auto& e : entries) {
        int best = e.candidates.front();
        for (int k : e.candidates)
            if (support_mass[static_cast<std::size_t>(k)] >
                support_mass[static_cast<std::size_t>(best)])
                best = k;  // ties keep the lexicographically first rectangle
        e.assigned = best;
    }

    // Local moves: concentrate entries where their co-assigned mass is
    // largest; deterministic sweeps to a fixed point.
    std::vector<double> assigned_mass(rects.size(), 0.0);
    for (const auto& e : entries) assigned_mass[static_cast<std::size_t>(e.assigned)] += e.mass;
    for (int pass = 0; pass < 20; ++pass) {
        bool moved = false;
        for (auto& e : entries) {
            const double here =
                assigned_mass[static_cast<std::size_t>(e.assigned)] - e.mass;
            int best = e.assigned;
            double best_mass = here;
            for (int k : e.candidates) {
                if (k == e.assigned) continue;
                const double there = assigned_mass[static_cast<std::size_t>(k)];
                if (there > best_mass + 1e-15) {
                    best_mass = there;
                    best = k;
                }
            }
            if (best != e.assigned) {
                assigned_mass[static_cast<std::size_t>(e.assigned)] -= e.mass;
                assigned_mass[static_cast<std::size_t>(best)] += e.mass;
                e.assigned = best;
                moved = true;
            }
        }
        if (!moved) break;
    }

    // Expand each used rectangle by SVD of the assigned submatrix.
    for (std::size_t k = 0; k < rects.size(); ++k) {
        std::vector<const EntryInfo*> own;
        for (const auto& e : entries)
            if (e.assigned == static_cast<int>(k)) own.push_back(&e);
        if (own.empty()) continue;
        const auto rows = rects[k].row_indices();
        const auto cols = rects[k].col_indices();
        CMatrix sub = CMatrix::Zero(static_cast<Eigen::Index>(rows.size()),
                                    static_cast<Eigen::Index>(cols.size()));
        for (const auto* e : own) {
            const auto ri = std::find(rows.begin(), rows.end(), e->i) - rows.begin();
            const auto ci = std::find(cols.begin(), cols.end(), e->j) - cols.begin();
            sub(static_cast<Eigen::Index>(ri), static_cast<Eigen::Index>(ci)) = w(e->i, e->j);
        }
        Eigen::JacobiSVD<CMatrix> svd(sub, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const Eigen::VectorXd sv = svd.singularValues();
        for (Eigen::Index r = 0; r < sv.size(); ++r) {
            if (sv(r) <= 1e-14 * sv(0)) break;
            RankOneTerm term;
            term.a = CVector::Zero(a.rows());
            term.b = CVector::Zero(a.cols());
            // sub = sum_r s_r u_r v_r^H; as a b^T with a = s u, b = conj(v).
            for (std::size_t q = 0; q < rows.size(); ++q)
                term.a(rows[q]) = sv(r) * svd.matrixU()(static_cast<Eigen::Index>(q), r);
            for (std::size_t q = 0; q < cols.size(); ++q)
                term.b(cols[q]) = std::conj(svd.matrixV()(static_cast<Eigen::Index>(q), r));
            term.cost = term.a.norm() * term.b.norm();
            out.total_cost += term.cost;
            out.terms.push_back(std::move(term));
        }
    }

    out.ratio = out.total_cost / w_trace;
    return out;
}

CertificateReport certificate_check(const CMatrix& w, const Pattern& a,
                                    const RankOneDecomposition& d, const CMatrix& t,
                                    const DistOptions& dist_opts) {
    if (!is_annihilator(w, a, 1e-9))
        throw Error("certificate_check: functional does not annihilate the pattern");
    // Verify the decomposition reconstructs w before trusting its terms.
    CMatrix sum = CMatrix::Zero(w.rows(), w.cols());
    for (const auto& term : d.terms) sum += term.a * term.b.transpose();
    if ((sum - w).cwiseAbs().maxCoeff() > 1e-8 * std::max(1.0, w.cwiseAbs().maxCoeff()))
        throw Error("certificate_check: decomposition does not reconstruct the functional");

    CertificateReport report;
    const double alpha_val = alpha(t, a);
    report.min_slack = std::numeric_limits<double>::infinity();
    for (const auto& term : d.terms) {
        SlackEntry s;
        s.value = std::abs((term.a.transpose() * t * term.b)(0));
        s.bound = term.cost * alpha_val;
        s.slack = s.bound - s.value;
        report.min_slack = std::min(report.min_slack, s.slack);
        report.term_slacks.push_back(s);
    }

    DistOptions opts = dist_opts;
    opts.want_dual = false;
    const DistanceResult dr = dist(t, a, opts);
    report.pairing_slack.value = std::abs(pairing(t, w));
    report.pairing_slack.bound = trace_norm(w) * dr.primal;
    report.pairing_slack.slack = report.pairing_slack.bound - report.pairing_slack.value;
    report.min_slack = std::min(report.min_slack, report.pairing_slack.slack);
    if (report.term_slacks.empty() && d.terms.empty())
        report.min_slack = std::min(report.min_slack, 0.0);
    return report;
}

} // namespace hyperlab
