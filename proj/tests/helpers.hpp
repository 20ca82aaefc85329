#pragma once

#include <vector>

#include "qdf/definetti.hpp"
#include "qdf/random.hpp"

namespace testing {

// Random POVM with `count` elements on C^d.
inline std::vector<qdf::Mat> random_povm(int d, std::size_t count, qdf::Rng& rng) {
    std::vector<qdf::Mat> g;
    qdf::Mat s = qdf::Mat::Zero(d, d);
    for (std::size_t k = 0; k < count; ++k) {
        const qdf::Mat a = qdf::random_matrix(d, d, rng);
        g.push_back(a * a.adjoint());
        s += g.back();
    }
    Eigen::SelfAdjointEigenSolver<qdf::Mat> es(s);
    const qdf::Mat inv_sqrt = es.eigenvectors() * es.eigenvalues().cwiseInverse().cwiseSqrt().asDiagonal() *
                              es.eigenvectors().adjoint();
    for (auto& x : g) x = inv_sqrt * x * inv_sqrt;
    return g;
}

// Random qubit atoms whose moment vectors are independent at `depth`.
inline qdf::AtomSet random_independent_atoms(std::size_t count, int depth, qdf::Rng& rng) {
    for (;;) {
        std::vector<qdf::StateVec> atoms;
        for (std::size_t k = 0; k < count; ++k)
            atoms.push_back(k % 2 == 0 ? qdf::haar_pure_state(2, rng) : qdf::hs_mixed_state(2, rng));
        qdf::AtomSet set = qdf::explicit_atoms(std::move(atoms));
        if (qdf::moment_independent(set, depth)) return set;
    }
}

inline qdf::Mixture random_mixture(const qdf::AtomSet& atoms, qdf::Rng& rng) {
    return qdf::Mixture(atoms, rng.simplex(atoms.size()));
}

}  // namespace testing
