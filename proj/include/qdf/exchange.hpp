#pragma once

// Tensor powers of a base algebra and the embeddings between them.
//
// The base is either a single block B(C^d) or commutative C({0..k-1}); its
// level-n tensor power is B(C^{d^n}) or C({0..k-1}^n) respectively, and both
// are handled through the dense matrix on (C^p)^{(x)n}, p = rep_dim(base).
// Tensor slot 0 is the most significant digit of a basis index.
//
// Permutations and injections are 0-based: sigma[i] / tau[i] is the slot
// that factor i is sent to.
//
// ExchSeq JSON: {"base_dim": d, "depth": N, "states": [matrix per level],
//                "tol": t}; a commutative base uses "base": [1, 1, ...]
// instead of "base_dim" and diagonal matrices.

#include <optional>
#include <vector>

#include "qdf/cstar.hpp"

namespace qdf {

using Permutation = std::vector<int>;
using Injection = std::vector<int>;

class TensorPower {
public:
    /// Throws ValidationError unless `base` is single-block or commutative,
    /// or when level < 0.
    TensorPower(Algebra base, int level);

    const Algebra& base() const { return base_; }
    int level() const { return level_; }
    /// Local dimension p of one tensor factor.
    std::size_t local_dim() const { return base_.rep_dim(); }
    /// p^n
    std::size_t dim() const;
    Algebra algebra() const;

private:
    Algebra base_;
    int level_;
};

/// Level n such that `alg` is the level-n tensor power of `base`.
int level_of(const Algebra& base, const Algebra& alg);

/// a (x) 1^{(x)(m-n)}.
Element iota_embed(const Element& a, const Algebra& base, int m);

/// Partial trace over the last m - n tensor factors.
StateVec restrict_state(const StateVec& rho, const Algebra& base, int n);

/// Conjugation by the permutation unitary: factor i moves to slot sigma[i].
Element eta_sigma(const Element& a, const Algebra& base, const Permutation& sigma);
StateVec eta_sigma(const StateVec& s, const Algebra& base, const Permutation& sigma);

/// Places factor i at slot tau[i] of level m and the unit elsewhere.
Element eta_tau(const Element& a, const Algebra& base, const Injection& tau, int m);

/// Density of the state a |-> rho_m(eta_tau(a, tau, m)) at level tau.size().
StateVec pullback_state(const StateVec& rho_m, const Algebra& base, const Injection& tau);

/// s^{(x)n}; level 0 is the scalar state on C.
StateVec tensor_power(const StateVec& s, const Algebra& base, int n);

void validate_permutation(const Permutation& sigma, int n);
void validate_injection(const Injection& tau, int m);
Permutation inverse(const Permutation& sigma);
/// (sigma o pi)(i) = sigma[pi[i]]
Permutation compose(const Permutation& sigma, const Permutation& pi);
/// (upsilon o tau)(i) = upsilon[tau[i]]
Injection compose_injections(const Injection& upsilon, const Injection& tau);

/// All permutations of {0..n-1}, lexicographic.
std::vector<Permutation> all_permutations(int n);
/// The n-1 adjacent transpositions.
std::vector<Permutation> adjacent_transpositions(int n);
/// All injections {0..n-1} -> {0..m-1}, lexicographic.
std::vector<Injection> all_injections(int n, int m);

class ExchSeq {
public:
    /// states[k] lives on level k+1. Throws ValidationError on shape errors.
    ExchSeq(Algebra base, std::vector<StateVec> states, double tol = 1e-9);

    const Algebra& base() const { return base_; }
    int depth() const { return static_cast<int>(states_.size()); }
    const std::vector<StateVec>& states() const { return states_; }
    /// 1-based level.
    const StateVec& level(int n) const { return states_.at(static_cast<std::size_t>(n - 1)); }
    double tolerance() const { return tol_; }

    /// First `depth` levels.
    ExchSeq truncated(int depth) const;
    ExchSeq with_tolerance(double tol) const;

private:
    Algebra base_;
    std::vector<StateVec> states_;
    double tol_;
};

struct LevelReport {
    int level = 0;
    /// max over checked permutations of ||rho_n - eta_sigma(rho_n)||_1
    double symmetry_violation = 0.0;
    Permutation worst_permutation;
    /// max over m > n of ||rho_n - restrict(rho_m, n)||_1
    double consistency_violation = 0.0;
    /// the m attaining it, 0 when n is the top level
    int worst_consistency_level = 0;
    /// every permutation checked, rather than the adjacent transpositions
    bool exhaustive = true;

    friend bool operator==(const LevelReport&, const LevelReport&) = default;
};

struct ExchangeabilityReport {
    std::vector<LevelReport> levels;
    double tolerance = 0.0;
    bool verdict = false;

    /// First level whose symmetry or consistency violation exceeds the
    /// tolerance.
    std::optional<LevelReport> first_violation() const;

    friend bool operator==(const ExchangeabilityReport&, const ExchangeabilityReport&) = default;
};

/// Permutations are enumerated exhaustively while n <= 6 and p^n <= 256,
/// otherwise only adjacent transpositions are checked.
ExchangeabilityReport check_exchangeable(const ExchSeq& seq);

/// (s^{(x)n})_{n <= depth}. Throws ValidationError when depth < 1.
ExchSeq iid_extend(const StateVec& s, int depth, double tol = 1e-9);

}  // namespace qdf
