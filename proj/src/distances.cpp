#include "hyperlab/distances.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hyperlab {

namespace {

// ---------------------------------------------------------------- alpha --

double rect_norm(const CMatrix& t, const Rectangle& r) { return spectral_norm(submatrix(t, r)); }

// ------------------------------------------------------- primal solver --

struct PrimalProbe {
    bool feasible = false;
    double witness_norm = 0.0;
    CMatrix witness;  // affine-exact: agrees with T off the pattern
};

// Off-pattern reset: M agrees with T outside the support of A.
void project_affine(CMatrix& m, const CMatrix& t, const Pattern& a) {
    for (int i = 0; i < a.rows(); ++i) {
        const std::uint64_t mask = a.row_mask(i);
        for (int j = 0; j < a.cols(); ++j)
            if (!((mask >> j) & 1u)) m(i, j) = t(i, j);
    }
}

CMatrix clip_spectral(const Eigen::JacobiSVD<CMatrix>& svd, double t) {
    Eigen::VectorXd sv = svd.singularValues();
    for (Eigen::Index k = 0; k < sv.size(); ++k) sv(k) = std::min(sv(k), t);
    return svd.matrixU() * sv.asDiagonal() * svd.matrixV().adjoint();
}

// Forward declaration; the ball projection lives with the dual helpers.
CMatrix trace_ball_project(const CMatrix& z);

// prox of gamma * operator norm via Moreau: X - gamma * P_B1(X / gamma).
CMatrix prox_spectral(const CMatrix& x, double gamma) {
    return x - gamma * trace_ball_project(x / gamma);
}

// Douglas-Rachford refinement of the minimal-norm completion. Every
// affine-step iterate is a feasible witness; the best one is returned.
void polish_witness(const CMatrix& t_mat, const Pattern& a, CMatrix& best_m, double& best_norm,
                    double scale, const DistOptions& opts) {
    if (opts.polish_iters <= 0) return;
    const double gamma = 0.25 * scale;
    CMatrix z = best_m;
    int stalled = 0;
    for (int iter = 0; iter < opts.polish_iters; ++iter) {
        const CMatrix x = prox_spectral(z, gamma);
        CMatrix y = 2.0 * x - z;
        project_affine(y, t_mat, a);
        z += y - x;
        const double ny = spectral_norm(y);
        if (ny < best_norm - 1e-14 * scale) {
            best_norm = ny;
            best_m = y;
            stalled = 0;
        } else if (++stalled >= 1500) {
            break;  // long plateau without any progress
        }
        // Fixed point of the splitting: x and the affine shadow agree.
        if ((x - y).norm() <= 1e-13 * scale) break;
    }
}

PrimalProbe primal_feasibility(const CMatrix& t_mat, const Pattern& a, const CMatrix& start,
                               double level, double scale, const DistOptions& opts) {
    PrimalProbe out;
    CMatrix m = start;
    project_affine(m, t_mat, a);
    Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const double disp_eps = 1e-13 * scale;
    const double feas = opts.feas_eps * scale;
    for (int iter = 0; iter < opts.feas_iter_cap; ++iter) {
        const double excess = svd.singularValues()(0) - level;
        if (excess <= feas) {
            out.feasible = true;
            out.witness_norm = svd.singularValues()(0);
            out.witness = m;
            return out;
        }
        CMatrix next = clip_spectral(svd, level);
        project_affine(next, t_mat, a);
        const double displacement = (next - m).norm();
        m = std::move(next);
        svd.compute(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
        if (displacement <= disp_eps) break;  // fixed point reached
    }
    out.feasible = svd.singularValues()(0) - level <= feas;
    out.witness_norm = svd.singularValues()(0);
    out.witness = m;
    return out;
}

// --------------------------------------------------------- dual solver --

// The dual search works in "adjoint" coordinates Z with objective
// Re tr(T Z^H); the reported functional is W = conj(Z), for which the
// objective equals Re <T, W> under the bilinear pairing.
struct DualState {
    double value = -std::numeric_limits<double>::infinity();
    CMatrix z;
};

double dual_objective(const CMatrix& t, const CMatrix& z) {
    return ((t * z.adjoint()).trace()).real();
}

// Frobenius projection onto the trace-norm unit ball: project the singular
// values onto the simplex-capped l1 ball.
CMatrix trace_ball_project(const CMatrix& z) {
    if (z.rows() == 0 || z.cols() == 0) return z;
    Eigen::JacobiSVD<CMatrix> svd(z, Eigen::ComputeThinU | Eigen::ComputeThinV);
    Eigen::VectorXd sv = svd.singularValues();
    if (sv.sum() <= 1.0) return z;
    // Euclidean projection of sv onto { s >= 0, sum s = 1 }.
    Eigen::VectorXd sorted = sv;
    std::sort(sorted.data(), sorted.data() + sorted.size(), std::greater<double>());
    double cumulative = 0.0;
    double theta = 0.0;
    for (Eigen::Index k = 0; k < sorted.size(); ++k) {
        cumulative += sorted(k);
        const double candidate = (cumulative - 1.0) / static_cast<double>(k + 1);
        if (sorted(k) - candidate > 0) theta = candidate;
    }
    for (Eigen::Index k = 0; k < sv.size(); ++k) sv(k) = std::max(sv(k) - theta, 0.0);
    return svd.matrixU() * sv.asDiagonal() * svd.matrixV().adjoint();
}

CMatrix mask_complement(const CMatrix& z, const Pattern& a) {
    CMatrix out = z;
    for (auto [i, j] : a.entries()) out(i, j) = 0.0;
    return out;
}

// Dykstra projection onto {supp(Z) in complement(A)} ∩ {trace norm <= 1}.
CMatrix project_dual_set(const CMatrix& z0, const Pattern& a, int cap) {
    CMatrix x = z0;
    CMatrix p = CMatrix::Zero(z0.rows(), z0.cols());
    CMatrix y;
    for (int iter = 0; iter < cap; ++iter) {
        y = mask_complement(x, a);
        x = trace_ball_project(y + p);
        p = y + p - x;
        if ((x - y).norm() <= 1e-14 * (1.0 + y.norm())) break;
    }
    // Leave with the support constraint exact, then renormalize into the ball.
    CMatrix out = mask_complement(x, a);
    const double tn = trace_norm(out);
    if (tn > 1.0) out /= tn * (1.0 + 1e-15);
    return out;
}

// Feasible candidate from a raw direction: mask, then scale into the ball.
void offer_direction(DualState& best, const CMatrix& t, const Pattern& a, const CMatrix& raw) {
    CMatrix z = mask_complement(raw, a);
    const double tn = trace_norm(z);
    if (tn <= 0.0) return;
    if (tn > 1.0) z /= tn * (1.0 + 1e-15);
    const double val = dual_objective(t, z);
    if (val > best.value) {
        best.value = val;
        best.z = z;
    }
}

// Eigenvalue simplex projection for the face problem.
Eigen::VectorXd simplex_project(Eigen::VectorXd v) {
    Eigen::VectorXd sorted = v;
    std::sort(sorted.data(), sorted.data() + sorted.size(), std::greater<double>());
    double cumulative = 0.0;
    double theta = 0.0;
    for (Eigen::Index k = 0; k < sorted.size(); ++k) {
        cumulative += sorted(k);
        const double candidate = (cumulative - 1.0) / static_cast<double>(k + 1);
        if (sorted(k) - candidate > 0) theta = candidate;
    }
    for (Eigen::Index k = 0; k < v.size(); ++k) v(k) = std::max(v(k) - theta, 0.0);
    return v;
}

CMatrix spectraplex_project(const CMatrix& c) {
    CMatrix h = 0.5 * (c + c.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
    const Eigen::VectorXd ev = simplex_project(es.eigenvalues());
    return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

// Orthonormal real basis of the Hermitian r x r matrices.
std::vector<CMatrix> hermitian_basis(int r) {
    std::vector<CMatrix> basis;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int a = 0; a < r; ++a) {
        for (int b = a; b < r; ++b) {
            CMatrix e = CMatrix::Zero(r, r);
            if (a == b) {
                e(a, a) = 1.0;
                basis.push_back(std::move(e));
            } else {
                e(a, b) = inv_sqrt2;
                e(b, a) = inv_sqrt2;
                basis.push_back(e);
                CMatrix f = CMatrix::Zero(r, r);
                f(a, b) = std::complex<double>(0.0, inv_sqrt2);
                f(b, a) = std::complex<double>(0.0, -inv_sqrt2);
                basis.push_back(std::move(f));
            }
        }
    }
    return basis;
}

// Dual functional aligned with the top singular face of the primal witness:
// an optimal dual lives in {U_r C V_r^H : C psd, tr C = 1} intersected with
// the annihilating subspace. The subspace condition is linear in C, so its
// null space is extracted by one small SVD and the intersection found by
// Dykstra with exact projections.
void offer_face_candidates(DualState& best, const CMatrix& t, const Pattern& a,
                           const CMatrix& witness) {
    Eigen::JacobiSVD<CMatrix> svd(witness, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) <= 0) return;
    const auto entries = a.entries();
    if (entries.empty()) return;
    const int k = static_cast<int>(sv.size());
    const int r_max = std::min(k, 6);
    // Only singular values tied with the top one span the face; one extra
    // candidate covers witness inaccuracy.
    int cluster = 1;
    while (cluster < r_max && sv(cluster) >= sv(0) * (1.0 - 1e-5)) ++cluster;
    const int r_limit = std::min(r_max, cluster + 1);
    for (int r = 1; r <= r_limit; ++r) {
        const CMatrix u = svd.matrixU().leftCols(r);
        const CMatrix v = svd.matrixV().leftCols(r);
        const auto basis = hermitian_basis(r);
        const int dim = static_cast<int>(basis.size());

        Eigen::MatrixXd constraint(2 * static_cast<int>(entries.size()), dim);
        for (int q = 0; q < dim; ++q) {
            const CMatrix img = u * basis[static_cast<std::size_t>(q)] * v.adjoint();
            for (std::size_t e = 0; e < entries.size(); ++e) {
                constraint(static_cast<Eigen::Index>(2 * e), q) =
                    img(entries[e].first, entries[e].second).real();
                constraint(static_cast<Eigen::Index>(2 * e + 1), q) =
                    img(entries[e].first, entries[e].second).imag();
            }
        }
        Eigen::JacobiSVD<Eigen::MatrixXd> csvd(constraint, Eigen::ComputeFullV);
        const auto& cs = csvd.singularValues();
        const double cutoff = (cs.size() ? cs(0) : 0.0) * 1e-6;
        int nullity = dim - static_cast<int>(cs.size());
        for (Eigen::Index q = cs.size(); q-- > 0;) {
            if (cs(q) <= cutoff)
                ++nullity;
            else
                break;
        }
        if (nullity <= 0) continue;
        const Eigen::MatrixXd null_basis = csvd.matrixV().rightCols(nullity);

        auto project_null = [&](const CMatrix& c) {
            Eigen::VectorXd coef(dim);
            for (int q = 0; q < dim; ++q)
                coef(q) =
                    (c.array() * basis[static_cast<std::size_t>(q)].array().conjugate()).sum().real();
            const Eigen::VectorXd projected = null_basis * (null_basis.transpose() * coef);
            CMatrix out = CMatrix::Zero(r, r);
            for (int q = 0; q < dim; ++q) out += projected(q) * basis[static_cast<std::size_t>(q)];
            return out;
        };

        CMatrix c = CMatrix::Identity(r, r) / static_cast<double>(r);
        CMatrix correction = CMatrix::Zero(r, r);
        for (int iter = 0; iter < 2000; ++iter) {
            const CMatrix y = project_null(c);
            const CMatrix next = spectraplex_project(y + correction);
            correction = y + correction - next;
            if ((next - c).norm() <= 1e-15 * (1.0 + c.norm()) && iter > 10) {
                c = next;
                break;
            }
            c = next;
        }
        offer_direction(best, t, a, u * project_null(c) * v.adjoint());
    }
}

} // namespace

double alpha(const CMatrix& t, const Pattern& a) {
    const auto rects = maximal_zero_rectangles(a);
    return alpha(t, a, rects, nullptr);
}

double alpha(const CMatrix& t, const Pattern& a, const std::vector<Rectangle>& rects,
             int* best_index) {
    if (a.rows() != t.rows() || a.cols() != t.cols())
        throw DimensionMismatch("alpha: pattern/matrix shape mismatch");
    double best = 0.0;
    int best_k = -1;
    for (std::size_t k = 0; k < rects.size(); ++k) {
        const double v = rect_norm(t, rects[k]);
        if (v > best) {
            best = v;
            best_k = static_cast<int>(k);
        }
    }
    if (best_index) *best_index = best_k;
    return best;
}

double alpha_via_contractions(const CMatrix& t, const Pattern& a) {
    if (a.rows() != t.rows() || a.cols() != t.cols())
        throw DimensionMismatch("alpha_via_contractions: shape mismatch");
    const auto rects = maximal_zero_rectangles(a);
    if (rects.empty()) return 0.0;

    double best = 0.0;
    auto evaluate_family = [&](const std::vector<int>& family) {
        Pattern theta(a.rows(), a.cols());
        for (int k : family)
            for (int i : rects[static_cast<std::size_t>(k)].row_indices())
                for (int j : rects[static_cast<std::size_t>(k)].col_indices()) theta.insert(i, j);
        best = std::max(best, spectral_norm(apply_pattern(theta, t)));
    };

    auto disjoint = [&](const Rectangle& x, const Rectangle& y) {
        return (x.row_mask & y.row_mask) == 0 && (x.col_mask & y.col_mask) == 0;
    };

    const int n = static_cast<int>(rects.size());
    // Singles first (these already attain alpha), then greedy packings and,
    // for small lists, every disjoint family.
    for (int k = 0; k < n; ++k) evaluate_family({k});
    for (int seed = 0; seed < n; ++seed) {
        std::vector<int> family{seed};
        for (int l = 0; l < n; ++l) {
            if (l == seed) continue;
            bool ok = true;
            for (int f : family)
                if (!disjoint(rects[static_cast<std::size_t>(f)], rects[static_cast<std::size_t>(l)])) {
                    ok = false;
                    break;
                }
            if (ok) family.push_back(l);
        }
        if (family.size() > 1) evaluate_family(family);
    }
    if (n <= 8) {
        std::vector<int> family;
        std::size_t visited = 0;
        const std::size_t visit_cap = 1u << 11;
        auto rec = [&](auto&& self, int from) -> void {
            if (++visited > visit_cap) return;
            if (family.size() > 1) evaluate_family(family);
            for (int l = from; l < n; ++l) {
                bool ok = true;
                for (int f : family)
                    if (!disjoint(rects[static_cast<std::size_t>(f)], rects[static_cast<std::size_t>(l)])) {
                        ok = false;
                        break;
                    }
                if (!ok) continue;
                family.push_back(l);
                self(self, l + 1);
                family.pop_back();
            }
        };
        rec(rec, 0);
    }
    return best;
}

double canonical_gap(const CMatrix& t, const Pattern& a) {
    return spectral_norm(apply_pattern(complement(a), t));
}

DistanceResult dist(const CMatrix& t, const Pattern& a, const DistOptions& opts) {
    if (a.rows() != t.rows() || a.cols() != t.cols())
        throw DimensionMismatch("dist: pattern/matrix shape mismatch");

    DistanceResult res;
    const double t_norm = spectral_norm(t);
    const double scale = std::max(1.0, t_norm);
    const double gap_target = opts.tol * scale;

    if (a.is_full()) {
        res.primal = res.dual = res.gap = 0.0;
        res.alpha_lower = 0.0;
        res.witness_completion = t;
        res.witness_functional = CMatrix::Zero(t.rows(), t.cols());
        res.status = "converged";
        res.converged = true;
        return res;
    }

    ZeroRectangleOptions zopts;
    zopts.max_rectangles = opts.max_rectangles;
    const auto rects = maximal_zero_rectangles(a, zopts);
    int best_rect = -1;
    const double alpha_val = alpha(t, a, rects, &best_rect);
    res.alpha_lower = alpha_val;

    // Initial witnesses: T itself and the canonical approximant residue.
    CMatrix best_m = t;
    double best_norm = t_norm;
    {
        CMatrix masked = apply_pattern(complement(a), t);
        const double v = spectral_norm(masked);
        if (v < best_norm) {
            best_norm = v;
            best_m = std::move(masked);
        }
    }

    // Splitting refinement first: it usually lands on the optimal witness,
    // leaving the bisection to certify the bracket.
    const double bracket_target = 0.25 * gap_target;
    if (best_norm - alpha_val > bracket_target)
        polish_witness(t, a, best_m, best_norm, scale, opts);

    double lo = alpha_val;
    double hi = best_norm;

    int probes = 0;
    while (hi - lo > bracket_target && probes < opts.max_probes) {
        const double level = 0.5 * (lo + hi);
        PrimalProbe probe = primal_feasibility(t, a, best_m, level, scale, opts);
        ++probes;
        if (probe.feasible) {
            hi = std::min(hi, probe.witness_norm);
            if (probe.witness_norm < best_norm) {
                best_norm = probe.witness_norm;
                best_m = std::move(probe.witness);
            }
        } else {
            lo = level;
        }
    }

    res.primal = best_norm;
    res.witness_completion = apply_pattern(a, t - best_m);

    // Dual certificate.
    DualState best;
    best.z = CMatrix::Zero(t.rows(), t.cols());
    best.value = 0.0;
    if (opts.want_dual) {
        if (best_rect >= 0) {
            const Rectangle& r = rects[static_cast<std::size_t>(best_rect)];
            const CMatrix sub = submatrix(t, r);
            Eigen::JacobiSVD<CMatrix> svd(sub, Eigen::ComputeThinU | Eigen::ComputeThinV);
            const auto rows = r.row_indices();
            const auto cols = r.col_indices();
            CMatrix z = CMatrix::Zero(t.rows(), t.cols());
            for (std::size_t i = 0; i < rows.size(); ++i)
                for (std::size_t j = 0; j < cols.size(); ++j)
                    z(rows[i], cols[j]) = svd.matrixU()(static_cast<Eigen::Index>(i), 0) *
                                          std::conj(svd.matrixV()(static_cast<Eigen::Index>(j), 0));
            offer_direction(best, t, a, z);
        }
        // Masked-gradient vertex (conditional-gradient linear subproblem).
        {
            const CMatrix g = mask_complement(t, a);
            if (g.norm() > 0) {
                Eigen::JacobiSVD<CMatrix> svd(g, Eigen::ComputeThinU | Eigen::ComputeThinV);
                offer_direction(best, t, a,
                                svd.matrixU().col(0) * svd.matrixV().col(0).adjoint());
            }
        }
        offer_face_candidates(best, t, a, best_m);

        // Projected ascent with growing step; each iterate stays feasible.
        CMatrix z = best.z;
        double eta = 1.0 / scale;
        for (int outer = 0; outer < opts.dual_outer; ++outer) {
            if (res.primal - best.value <= 0.9 * gap_target) break;
            z = project_dual_set(z + eta * t, a, opts.dual_dykstra_cap);
            const double val = dual_objective(t, z);
            if (val > best.value) {
                best.value = val;
                best.z = z;
            }
            eta = std::min(eta * 1.8, 1e5 / scale);
        }
        // One more face pass from the final witness sometimes tightens the
        // last digits after the ascent has located the right support.
        if (res.primal - best.value > 0.9 * gap_target) offer_face_candidates(best, t, a, best_m);
    }

    res.dual = std::max(best.value, 0.0);
    res.witness_functional = best.z.conjugate();
    res.gap = res.primal - res.dual;
    res.converged = opts.want_dual ? (res.gap <= gap_target)
                                   : (hi - lo <= std::max(bracket_target, 1e-15));
    res.status = res.converged ? "converged" : "gap-above-tolerance";
    return res;
}

} // namespace hyperlab
