#ifndef HYPERLAB_DISTANCES_HPP
#define HYPERLAB_DISTANCES_HPP

#include <string>
#include <vector>

#include "hyperlab/matrix_num.hpp"
#include "hyperlab/pattern.hpp"
#include "hyperlab/zero_rectangles.hpp"

namespace hyperlab {

struct DistOptions {
    double tol = 1e-6;       // gap target, scaled by max(1, ||T||)
    bool want_dual = true;
    int feas_iter_cap = 8'000;
    double feas_eps = 1e-9;  // spectral excess admitted for a feasible probe (scaled)
    int max_probes = 60;
    int polish_iters = 4'000;  // splitting iterations refining the witness
    int dual_outer = 60;
    int dual_dykstra_cap = 2'000;
    std::size_t max_rectangles = 1'000'000;
};

struct DistanceResult {
    double primal = 0.0;  // norm of an explicit feasible completion
    double dual = 0.0;    // pairing value of an explicit dual functional
    double gap = 0.0;
    double alpha_lower = 0.0;
    CMatrix witness_completion;  // X supported inside the pattern
    CMatrix witness_functional;  // W supported in the complement, trace norm <= 1
    std::string status;          // "converged" or "gap-above-tolerance"
    bool converged = false;
};

/// Arveson distance: max over maximal zero rectangles of the spectral norm
/// of the corresponding submatrix; 0 when no zero rectangle exists.
double alpha(const CMatrix& t, const Pattern& a);
/// Overload reusing a precomputed rectangle list (as returned by
/// maximal_zero_rectangles); best_index receives the attaining rectangle.
double alpha(const CMatrix& t, const Pattern& a, const std::vector<Rectangle>& rects,
             int* best_index = nullptr);

/// The same supremum taken over contractive patterns disjoint from the
/// support: families of row/column-disjoint zero rectangles are enumerated
/// and the masked matrix norm is maximized. Equals alpha as a theorem; kept
/// separate so the equality is testable.
double alpha_via_contractions(const CMatrix& t, const Pattern& a);

/// ||T - Phi(T)||: the canonical-approximant gap, an upper bound on the
/// distance to the pattern subspace.
double canonical_gap(const CMatrix& t, const Pattern& a);

/// Distance from t to the matrices supported in the pattern, with an
/// explicit feasible completion (primal upper bound) and an explicit dual
/// functional (lower bound). Primal: bisection over levels with alternating
/// projections between the spectral ball and the completion affine set.
/// Dual: seeded by zero-rectangle functionals and singular-face extraction,
/// then projected ascent with Dykstra projections onto the constraint set.
DistanceResult dist(const CMatrix& t, const Pattern& a, const DistOptions& opts = {});

} // namespace hyperlab

#endif
