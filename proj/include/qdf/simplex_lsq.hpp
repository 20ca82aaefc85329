#pragma once

// Least squares over the probability simplex:
//
//     minimise ||A w - b||_2  subject to  w >= 0, sum(w) = 1.
//
// The equality is enforced by appending the row eq_weight * 1^T (right-hand
// side eq_weight) and solving a plain nonnegative least-squares problem with
// the Lawson-Hanson active-set method; the result is then renormalised to
// sum exactly to one.
//
// When [A; 1^T] has deficient column rank the minimiser is not unique. By
// default the solver then returns the minimum-Euclidean-norm weight vector
// on the optimal face, which makes the answer independent of column order
// and of the active-set path.

#include <vector>

#include "qdf/linalg.hpp"

namespace qdf::lsq {

struct Options {
    double eq_weight = 1e4;
    /// Relative singular-value cutoff for the rank of [A; 1^T].
    double rank_tol = 1e-10;
    /// Select the minimum-norm optimum when the problem is degenerate.
    bool canonical_min_norm = true;
    /// Lawson-Hanson outer iteration cap; 0 means 3 * columns + 10.
    int max_iterations = 0;
};

struct Result {
    RVec weights;
    /// ||A w - b|| at the returned (renormalised) weights.
    double residual = 0.0;
    /// sum(w) before renormalisation.
    double raw_sum = 0.0;
    /// Numerical rank of [A; 1^T].
    int rank = 0;
    bool degenerate = false;
    /// The minimum-norm selection ran and was kept.
    bool min_norm_applied = false;
    int iterations = 0;
};

/// Lawson-Hanson NNLS. `start`, when given, must be elementwise >= 0 and
/// seeds the passive set with its support.
RVec nnls(const RMat& a, const RVec& b, const RVec* start = nullptr, int max_iterations = 0,
          int* iterations = nullptr);

Result solve(const RMat& a, const RVec& b, const Options& opts = {}, const RVec* start = nullptr);

/// Numerical rank with relative cutoff `tol`.
int numerical_rank(const RMat& m, double tol = 1e-10);

/// Column k is identifiable when the null space of [A; 1^T] has no component
/// along e_k, i.e. w_k is the same for every exact representation.
std::vector<bool> identifiable_columns(const RMat& a, double tol = 1e-10);

/// Minimum-norm w >= 0 with C w = f, computed through the dual
/// w = max(0, C^T lambda) by semismooth Newton. C must have orthonormal rows.
/// Returns false when it fails to converge.
bool min_norm_nonnegative(const RMat& c, const RVec& f, const RVec& lambda0, RVec& w);

}  // namespace qdf::lsq
