#pragma once

// Seeded sampling used for atom generation and randomized checks. Built on
// std::mt19937_64 with explicit uniform/normal transforms so that a seed
// yields the same numbers with every standard library.

#include <cstdint>
#include <random>
#include <vector>

#include "qdf/cstar.hpp"

namespace qdf {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Standard normal (Box-Muller).
    double normal();
    /// (N(0,1) + i N(0,1)) / sqrt(2)
    cplx complex_normal();
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)); }

    /// Uniform point of the probability simplex (flat Dirichlet).
    std::vector<double> simplex(std::size_t n);

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// Unitarily invariant random pure state on B(C^d).
StateVec haar_pure_state(int d, Rng& rng);
/// Hilbert-Schmidt random mixed state G G^dagger / Tr on B(C^d).
StateVec hs_mixed_state(int d, Rng& rng);
/// Random complex matrix with standard complex-normal entries.
Mat random_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng);
/// Random Hermitian matrix (G + G^dagger) / 2.
Mat random_hermitian(Eigen::Index n, Rng& rng);

}  // namespace qdf
