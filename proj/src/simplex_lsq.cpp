#include "qdf/simplex_lsq.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qdf/errors.hpp"

namespace qdf::lsq {

namespace {

using Index = Eigen::Index;

RMat augmented(const RMat& a, double weight) {
    RMat out(a.rows() + 1, a.cols());
    out.topRows(a.rows()) = a;
    out.row(a.rows()).setConstant(weight);
    return out;
}

// Least squares restricted to the passive columns, zero elsewhere.
RVec passive_solve(const RMat& a, const RVec& b, const std::vector<bool>& passive) {
    std::vector<Index> cols;
    for (Index j = 0; j < a.cols(); ++j)
        if (passive[static_cast<std::size_t>(j)]) cols.push_back(j);
    RVec z = RVec::Zero(a.cols());
    if (cols.empty()) return z;
    RMat sub(a.rows(), static_cast<Index>(cols.size()));
    for (std::size_t k = 0; k < cols.size(); ++k) sub.col(static_cast<Index>(k)) = a.col(cols[k]);
    Eigen::CompleteOrthogonalDecomposition<RMat> cod(sub);
    const RVec zs = cod.solve(b);
    for (std::size_t k = 0; k < cols.size(); ++k) z[cols[k]] = zs[static_cast<Index>(k)];
    return z;
}

}  // namespace

RVec nnls(const RMat& a, const RVec& b, const RVec* start, int max_iterations, int* iterations) {
    const Index n = a.cols();
    if (a.rows() != b.size()) throw ValidationError("nnls: A and b have different row counts");
    const int cap = max_iterations > 0 ? max_iterations : static_cast<int>(3 * n + 10);
    const double eps = std::numeric_limits<double>::epsilon();
    const double tol = 10.0 * eps * a.cwiseAbs().colwise().sum().maxCoeff() *
                       static_cast<double>(std::max(a.rows(), n));

    RVec x = RVec::Zero(n);
    std::vector<bool> passive(static_cast<std::size_t>(n), false);
    if (start != nullptr) {
        if (start->size() != n || (start->array() < 0.0).any())
            throw ValidationError("nnls: start must be a nonnegative vector of matching size");
        x = *start;
        for (Index j = 0; j < n; ++j) passive[static_cast<std::size_t>(j)] = x[j] > 0.0;
    }

    // Moves x towards the passive least-squares solution, dropping columns
    // that would turn negative, until the passive solution is feasible.
    auto settle = [&]() {
        for (Index guard = 0; guard <= n; ++guard) {
            RVec z = passive_solve(a, b, passive);
            bool feasible = true;
            for (Index j = 0; j < n; ++j)
                if (passive[static_cast<std::size_t>(j)] && z[j] <= 0.0) feasible = false;
            if (feasible) {
                x = z;
                return;
            }
            double alpha = 1.0;
            for (Index j = 0; j < n; ++j)
                if (passive[static_cast<std::size_t>(j)] && z[j] <= 0.0)
                    alpha = std::min(alpha, x[j] / (x[j] - z[j]));
            x += alpha * (z - x);
            for (Index j = 0; j < n; ++j)
                if (passive[static_cast<std::size_t>(j)] && x[j] <= eps * 10.0) {
                    passive[static_cast<std::size_t>(j)] = false;
                    x[j] = 0.0;
                }
        }
    };

    if (start != nullptr) settle();

    std::vector<bool> excluded(static_cast<std::size_t>(n), false);
    int it = 0;
    for (; it < cap; ++it) {
        const RVec w = a.transpose() * (b - a * x);
        Index best = -1;
        double best_val = tol;
        for (Index j = 0; j < n; ++j) {
            const auto u = static_cast<std::size_t>(j);
            if (!passive[u] && !excluded[u] && w[j] > best_val) {
                best_val = w[j];
                best = j;
            }
        }
        if (best < 0) break;
        passive[static_cast<std::size_t>(best)] = true;
        // A column that cannot enter with a positive weight (numerically
        // dependent on the passive set) is skipped until the set changes.
        const RVec z = passive_solve(a, b, passive);
        if (z[best] <= 0.0) {
            passive[static_cast<std::size_t>(best)] = false;
            excluded[static_cast<std::size_t>(best)] = true;
            continue;
        }
        settle();
        std::fill(excluded.begin(), excluded.end(), false);
    }
    if (iterations != nullptr) *iterations = it;
    return x;
}

int numerical_rank(const RMat& m, double tol) {
    if (m.size() == 0) return 0;
    Eigen::BDCSVD<RMat> svd(m);
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s[0] == 0.0) return 0;
    int r = 0;
    for (Index i = 0; i < s.size(); ++i)
        if (s[i] > tol * s[0]) ++r;
    return r;
}

std::vector<bool> identifiable_columns(const RMat& a, double tol) {
    const RMat c = augmented(a, 1.0);
    Eigen::BDCSVD<RMat> svd(c, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    int r = 0;
    for (Index i = 0; i < s.size(); ++i)
        if (s[0] > 0.0 && s[i] > tol * s[0]) ++r;
    const RMat null = svd.matrixV().rightCols(c.cols() - r);
    std::vector<bool> out(static_cast<std::size_t>(a.cols()));
    for (Index k = 0; k < a.cols(); ++k)
        out[static_cast<std::size_t>(k)] = null.cols() == 0 || null.row(k).norm() <= 1e-8;
    return out;
}

bool min_norm_nonnegative(const RMat& c, const RVec& f, const RVec& lambda0, RVec& w) {
    RVec lambda = lambda0;
    auto primal = [&](const RVec& l) { return RVec((c.transpose() * l).cwiseMax(0.0)); };
    auto dual = [&](const RVec& l) {
        const RVec p = primal(l);
        return l.dot(f) - 0.5 * p.squaredNorm();
    };
    const double gtol = 1e-14 * std::max(1.0, f.norm());
    for (int it = 0; it < 200; ++it) {
        const RVec p = primal(lambda);
        const RVec grad = f - c * p;
        if (grad.norm() <= gtol) {
            w = p;
            return true;
        }
        const RVec u = c.transpose() * lambda;
        RMat h = RMat::Zero(c.rows(), c.rows());
        for (Index j = 0; j < c.cols(); ++j)
            if (u[j] > 0.0) h.noalias() += c.col(j) * c.col(j).transpose();
        h.diagonal().array() += 1e-12;
        const RVec step = h.ldlt().solve(grad);
        const double g0 = dual(lambda);
        double t = 1.0;
        bool moved = false;
        for (int ls = 0; ls < 60; ++ls, t *= 0.5) {
            const RVec cand = lambda + t * step;
            if (dual(cand) >= g0 + 1e-4 * t * grad.dot(step) || ls == 59) {
                moved = (cand - lambda).norm() > 0.0;
                lambda = cand;
                break;
            }
        }
        if (!moved) break;
    }
    const RVec p = primal(lambda);
    if ((f - c * p).norm() <= 1e-11 * std::max(1.0, f.norm())) {
        w = p;
        return true;
    }
    return false;
}

Result solve(const RMat& a, const RVec& b, const Options& opts, const RVec* start) {
    if (a.cols() == 0) throw ValidationError("simplex least squares needs at least one column");
    if (a.rows() != b.size()) throw ValidationError("A and b have different row counts");

    const RMat aug = augmented(a, opts.eq_weight);
    RVec baug(b.size() + 1);
    baug.head(b.size()) = b;
    baug[b.size()] = opts.eq_weight;

    Result res;
    RVec w = nnls(aug, baug, start, opts.max_iterations, &res.iterations);
    res.raw_sum = w.sum();
    if (!(res.raw_sum > 0.0)) throw Error("simplex least squares produced a zero weight vector");
    w /= res.raw_sum;

    const RMat c = augmented(a, 1.0);
    Eigen::BDCSVD<RMat> svd(c, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& s = svd.singularValues();
    int rank = 0;
    for (Index i = 0; i < s.size(); ++i)
        if (s[0] > 0.0 && s[i] > opts.rank_tol * s[0]) ++rank;
    res.rank = rank;
    res.degenerate = rank < a.cols();
    res.residual = (a * w - b).norm();

    if (res.degenerate && opts.canonical_min_norm) {
        // Optimal face: {w >= 0 : C w = C w*}; C reduced to orthonormal rows.
        const RMat rows = svd.matrixV().leftCols(rank).transpose();
        const RVec f = rows * w;
        RVec sel;
        if (min_norm_nonnegative(rows, f, f, sel)) {
            const double sum = sel.sum();
            if (sum > 0.0) {
                sel /= sum;
                const double r = (a * sel - b).norm();
                if (r <= res.residual + 1e-12 * std::max(1.0, b.norm())) {
                    w = sel;
                    res.residual = r;
                    res.min_norm_applied = true;
                }
            }
        }
    }
    res.weights = w;
    return res;
}

}  // namespace qdf::lsq
