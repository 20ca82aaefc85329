#pragma once

// Worked-example beliefs about a qubit, encoded directly as mixtures of iid
// sequences (no gate-level simulation), plus the classical coin example.

#include "qdf/classical.hpp"
#include "qdf/definetti.hpp"

namespace qdf::fixtures {

/// Z-basis measurement copied to every output: 1/2 |0..0><0..0| + 1/2 |1..1><1..1|.
Mixture circuit1();
/// Certainly the maximally mixed state: point mass on I/2.
Mixture circuit2();
/// Uniform over (|0> + e^{i phi}|1>)/sqrt(2), phi = 2 pi j / phases.
Mixture equator(int phases = 64);
/// Uniform Bloch ball sampled on a grid x grid x grid midpoint grid of
/// (r, z, theta), Bloch radius r^{1/3}.
Mixture unknown_qubit(int grid = 8);

/// (I/2, |psi-><psi-|): exchangeable at depth 2, not a mixture of iid states.
ExchSeq singlet_sequence(double tol = 1e-9);

/// Cone with apex B(C^2): measure the input in the Z basis and copy the
/// outcome into |0..0> or |1..1>.
Cone circuit_cone(int depth, double tol = 1e-9);

/// Measure-and-prepare cone: Phi_n(kappa) = sum_k Tr(E_k kappa) sigma_k^{(x)n}
/// for a POVM {E_k} on the apex (one element per atom).
Cone measure_prepare_cone(const Algebra& apex, const std::vector<Mat>& povm, const AtomSet& atoms, int depth,
                          double tol = 1e-9);

/// Bag of coins with biases {0, 1/2, 1}, each drawn with probability 1/3.
struct CoinFixture {
    std::vector<classical::FinDist> grid;
    std::vector<double> weights;
    classical::ClassicalExchSeq sequence;
};
CoinFixture coin(int depth = 5);

}  // namespace qdf::fixtures
