#include "hyperlab/multiplier_norm.hpp"

#include <algorithm>
#include <cmath>

namespace hyperlab {

namespace {

enum class Probe { Feasible, Infeasible, Inconclusive };

struct ProbeState {
    CMatrix m;        // current Hermitian iterate, (rows+cols)^2
    CMatrix corr_psd; // Dykstra corrections
    CMatrix corr_box;
    CMatrix corr_blk;
};

// Projections for the three constraint sets. All keep the iterate Hermitian.
void project_block(CMatrix& m, const CMatrix& a01, int mr) {
    m.block(0, mr, mr, a01.cols()) = a01;
    m.block(mr, 0, a01.cols(), mr) = a01.adjoint();
}

void project_box(CMatrix& m, double t) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        const double d = m(i, i).real();
        m(i, i) = std::complex<double>(std::min(d, t), 0.0);
    }
}

void project_psd(CMatrix& m) {
    CMatrix h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
    Eigen::VectorXd ev = es.eigenvalues();
    for (Eigen::Index k = 0; k < ev.size(); ++k) ev(k) = std::max(ev(k), 0.0);
    m = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

double residual(const CMatrix& m, const CMatrix& a01, int mr, double t) {
    // m is PSD-exact after the last projection; measure the other two sets.
    double r_blk = (m.block(0, mr, mr, a01.cols()) - a01).cwiseAbs().maxCoeff();
    double r_box = 0.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        r_box = std::max(r_box, m(i, i).real() - t);
    return std::max(r_blk, std::max(r_box, 0.0));
}

Probe feasibility_probe(ProbeState& st, const CMatrix& a01, int mr, double t,
                        const MultiplierNormOptions& opts) {
    // Residuals between the feasible and infeasible thresholds are the
    // boundary gray zone: wait longer there and finally split at the
    // geometric mean of the two thresholds.
    const double boundary_cut = std::sqrt(opts.feas_residual * opts.infeas_residual);
    double best = std::numeric_limits<double>::infinity();
    double r = best;
    int since_improvement = 0;
    for (int iter = 0; iter < opts.max_iters; ++iter) {
        CMatrix x = st.m;

        CMatrix y = x + st.corr_blk;
        project_block(y, a01, mr);
        st.corr_blk = x + st.corr_blk - y;

        x = y + st.corr_box;
        project_box(x, t);
        st.corr_box = y + st.corr_box - x;

        y = x + st.corr_psd;
        project_psd(y);
        st.corr_psd = x + st.corr_psd - y;

        st.m = y;

        r = residual(st.m, a01, mr, t);
        if (r < opts.feas_residual) return Probe::Feasible;
        if (r < best * (1.0 - 1e-4)) {
            best = r;
            since_improvement = 0;
        } else if (++since_improvement >= opts.stagnation_window) {
            if (r > opts.infeas_residual) return Probe::Infeasible;
            if (since_improvement >= 10 * opts.stagnation_window)
                return r < boundary_cut ? Probe::Feasible : Probe::Infeasible;
        }
    }
    return r < boundary_cut ? Probe::Feasible : Probe::Inconclusive;
}

} // namespace

MultiplierNormResult multiplier_norm(const Pattern& a, const MultiplierNormOptions& opts) {
    MultiplierNormResult res;
    if (a.empty()) {
        res.value = res.lower = res.upper = 0.0;
        res.tolerance = 0.0;
        return res;
    }

    const int mr = a.rows();
    const int nc = a.cols();
    CMatrix a01 = CMatrix::Zero(mr, nc);
    for (auto [i, j] : a.entries()) a01(i, j) = 1.0;

    double lo = 1.0;  // any nonzero idempotent has norm at least 1
    double hi = static_cast<double>(std::min(mr, nc));
    if (hi <= lo) {
        res.value = res.lower = res.upper = lo;
        res.tolerance = 0.0;
        return res;
    }

    ProbeState st;
    const int dim = mr + nc;
    st.m = CMatrix::Zero(dim, dim);
    st.m.topLeftCorner(mr, mr) = CMatrix::Identity(mr, mr);
    st.m.bottomRightCorner(nc, nc) = CMatrix::Identity(nc, nc);
    project_block(st.m, a01, mr);
    st.corr_psd = CMatrix::Zero(dim, dim);
    st.corr_box = CMatrix::Zero(dim, dim);
    st.corr_blk = CMatrix::Zero(dim, dim);

    CMatrix feasible_m;
    bool have_feasible = false;

    while (hi - lo > 2.0 * opts.tol) {
        const double t = 0.5 * (lo + hi);
        ProbeState probe = st;  // warm start from the previous iterate
        probe.corr_psd.setZero();
        probe.corr_box.setZero();
        probe.corr_blk.setZero();
        const Probe verdict = feasibility_probe(probe, a01, mr, t, opts);
        switch (verdict) {
            case Probe::Feasible:
                hi = t;
                st = probe;
                feasible_m = probe.m;
                have_feasible = true;
                break;
            case Probe::Infeasible:
                lo = t;
                break;
            case Probe::Inconclusive:
                // Keep the bracket honest: stop with the bracket unchanged.
                res.converged = false;
                break;
        }
        if (!res.converged) break;
    }

    res.lower = lo;
    res.upper = hi;
    res.value = 0.5 * (lo + hi);
    res.tolerance = 0.5 * (hi - lo);

    if (opts.want_factors && have_feasible) {
        Eigen::SelfAdjointEigenSolver<CMatrix> es(feasible_m);
        Eigen::VectorXd ev = es.eigenvalues();
        for (Eigen::Index k = 0; k < ev.size(); ++k) ev(k) = std::sqrt(std::max(ev(k), 0.0));
        CMatrix g = ev.asDiagonal() * es.eigenvectors().adjoint();
        res.factors = std::pair<CMatrix, CMatrix>(g.leftCols(mr), g.rightCols(nc));
    }
    return res;
}

} // namespace hyperlab
