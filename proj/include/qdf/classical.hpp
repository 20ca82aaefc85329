#pragma once

// The classical side: finitely supported distributions (the distribution
// monad on finite sets), Kleisli composition, product measures and the
// Hewitt-Savage reconstruction of exchangeable measures on X^n.
//
// Tuples in X^n are enumerated lexicographically, slot 0 most significant.
//
// FinDist JSON:          {"space": ["H", "T"], "probs": [...]}
// ClassicalExchSeq JSON: {"space": [...], "levels": [[probs on X^1], ...],
//                         "tol": t}

#include <string>
#include <vector>

#include "qdf/definetti.hpp"

namespace qdf::classical {

using Space = std::vector<std::string>;

class FinDist {
public:
    /// probs >= 0 summing to 1 within `tol`.
    FinDist(Space space, std::vector<double> probs, double tol = 1e-9);

    const Space& space() const { return space_; }
    const std::vector<double>& probs() const { return probs_; }
    std::size_t size() const { return probs_.size(); }

private:
    Space space_;
    std::vector<double> probs_;
};

FinDist dirac(const Space& space, std::size_t x);
FinDist dirac(const Space& space, const std::string& label);

/// f[i] is the index in `target` of the image of space element i.
FinDist pushforward(const std::vector<std::size_t>& f, const FinDist& mu, const Space& target);

/// Finitely supported distribution over arbitrary values; the outer layer
/// of the monad (no merging of equal support points).
template <class T>
struct Dist {
    std::vector<T> support;
    std::vector<double> weights;
};

template <class T>
Dist<T> unit(T x) {
    return Dist<T>{{std::move(x)}, {1.0}};
}

template <class T, class F>
auto fmap(F&& f, const Dist<T>& d) {
    Dist<decltype(f(d.support.front()))> out;
    for (const auto& x : d.support) out.support.push_back(f(x));
    out.weights = d.weights;
    return out;
}

template <class T>
Dist<T> join(const Dist<Dist<T>>& dd) {
    Dist<T> out;
    for (std::size_t i = 0; i < dd.support.size(); ++i)
        for (std::size_t j = 0; j < dd.support[i].support.size(); ++j) {
            out.support.push_back(dd.support[i].support[j]);
            out.weights.push_back(dd.weights[i] * dd.support[i].weights[j]);
        }
    return out;
}

/// Averages the inner distributions by the outer weights. All inner
/// distributions must share one space.
FinDist flatten(const Dist<FinDist>& phi);

class Kernel {
public:
    /// rows(i, j) = probability of target j given source i.
    Kernel(Space source, Space target, RMat rows, double tol = 1e-9);

    const Space& source() const { return source_; }
    const Space& target() const { return target_; }
    const RMat& rows() const { return rows_; }
    FinDist row(std::size_t i) const;

private:
    Space source_;
    Space target_;
    RMat rows_;
};

Kernel identity_kernel(const Space& space);
/// X -> Y then Y -> Z.
Kernel kleisli_compose(const Kernel& f, const Kernel& g);
/// Kleisli extension: the distribution of g(x) for x ~ mu.
FinDist bind(const FinDist& mu, const Kernel& g);

/// Labels of X^n; single-character labels are concatenated, longer ones
/// joined with ','.
Space tuple_space(const Space& space, int n);
FinDist product_measure(const FinDist& mu, int n);

/// Pushforward of a measure on X^m along the coordinate selection
/// (x_0..x_{m-1}) |-> (x_{tau[0]}, ..., x_{tau[n-1]}).
FinDist select_coordinates(const FinDist& mu_m, const Space& space, int m, const Injection& tau);

class ClassicalExchSeq {
public:
    /// levels[k] is a probability vector on X^{k+1}.
    ClassicalExchSeq(Space space, std::vector<std::vector<double>> levels, double tol = 1e-9);

    const Space& space() const { return space_; }
    int depth() const { return static_cast<int>(levels_.size()); }
    const std::vector<std::vector<double>>& levels() const { return levels_; }
    double tolerance() const { return tol_; }
    FinDist level(int n) const;

    ClassicalExchSeq truncated(int depth) const;

private:
    Space space_;
    std::vector<std::vector<double>> levels_;
    double tol_;
};

/// Violations are L1 distances (the trace norm on the diagonal encoding).
ExchangeabilityReport check_exchangeable(const ClassicalExchSeq& seq);

/// (sum_k w_k p_k^{(x)n})_{n <= depth}
ClassicalExchSeq synthesize(const std::vector<FinDist>& grid, const std::vector<double>& weights,
                            int depth, double tol = 1e-9);

struct HsResult {
    std::vector<double> weights;
    double residual = 0.0;
    int rank = 0;
    bool degenerate = false;
};

/// Simplex least squares of mu_n against product_measure(p_k, n), n <= depth.
/// Throws NotExchangeable when the sequence fails its invariants.
HsResult hs_reconstruct(const ClassicalExchSeq& seq, const std::vector<FinDist>& grid,
                        const lsq::Options& opts = {});

/// Degeneracy of the grid's moment vectors at `depth`.
int grid_moment_rank(const std::vector<FinDist>& grid, int depth);

/// The same data as states on the commutative algebra C(X) and its powers.
ExchSeq commutative_encoding(const ClassicalExchSeq& seq);
AtomSet commutative_atoms(const std::vector<FinDist>& grid);

/// Coin with P(H) = bias on {"H", "T"}.
FinDist coin(double bias);

}  // namespace qdf::classical
