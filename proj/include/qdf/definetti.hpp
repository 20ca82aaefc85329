#pragma once

// Representing measures of exchangeable sequences, and factorisation of
// parameterised exchangeable sequences (cones) through the space of
// measures.
//
// The state space of the base algebra is discretised to an AtomSet; a
// Mixture is a probability vector over the atoms and stands for the
// sequence rho_n = sum_k w_k sigma_k^{(x)n}.
//
// Mixture JSON:       {"atoms": [matrix...], "weights": [...]}
//                     (commutative bases add "base": [1, 1, ...])
// Cone JSON:          {"apex": [d...], "base_dim": d, "depth": N, "tol": t,
//                      "channels": [ChoiMap...]}
// MediatingMap JSON:  {"apex": [d...], "atoms": [matrix...],
//                      "probe_basis": "...", "probes": [matrix...],
//                      "weights": [[w per atom] per probe]}

#include <cstdint>
#include <string>
#include <vector>

#include "qdf/cpmaps.hpp"
#include "qdf/errors.hpp"
#include "qdf/exchange.hpp"
#include "qdf/simplex_lsq.hpp"

namespace qdf {

class AtomSet {
public:
    /// Throws ValidationError on an empty list, atoms off the base algebra,
    /// or two atoms within trace distance 1e-6.
    AtomSet(Algebra base, std::vector<StateVec> atoms, std::string method = "explicit",
            std::uint64_t seed = 0);

    const Algebra& base() const { return base_; }
    const std::vector<StateVec>& atoms() const { return atoms_; }
    std::size_t size() const { return atoms_.size(); }
    const std::string& method() const { return method_; }
    std::uint64_t seed() const { return seed_; }

    /// Same atoms in the order given by `order` (order[i] = old index).
    AtomSet permuted(const std::vector<std::size_t>& order) const;

private:
    Algebra base_;
    std::vector<StateVec> atoms_;
    std::string method_;
    std::uint64_t seed_;
};

/// Base algebra taken from the first atom.
AtomSet explicit_atoms(std::vector<StateVec> atoms);

/// Deterministic atoms on B(C^d): round(0.7 count) Haar-random pure states
/// and the rest Hilbert-Schmidt random mixed states. For d = 2 each draw is
/// followed by its Bloch antipode I - sigma, so the set is point-symmetric
/// about I/2.
AtomSet default_atoms(int d, int count, std::uint64_t seed);

class Mixture {
public:
    /// weights >= 0 and |sum - 1| <= tol.
    Mixture(AtomSet atoms, std::vector<double> weights, double tol = 1e-9);

    const AtomSet& atoms() const { return atoms_; }
    const std::vector<double>& weights() const { return weights_; }

    /// sum_k w_k sigma_k
    StateVec barycenter() const;

private:
    AtomSet atoms_;
    std::vector<double> weights_;
};

/// (sum_k w_k sigma_k^{(x)n})_{n <= depth}.
ExchSeq synthesize(const Mixture& mix, int depth, double tol = 1e-10);

/// Columns: real coordinates of sigma_k^{(x)n}, n = 1..depth, stacked.
RMat moment_matrix(const AtomSet& atoms, int depth);
/// The same coordinates of (rho_1, ..., rho_depth).
RVec moment_vector(const ExchSeq& seq, int depth);

/// Numerical rank of the moment matrix with the normalisation row.
int moment_rank(const AtomSet& atoms, int depth, double tol = 1e-10);
bool moment_independent(const AtomSet& atoms, int depth, double tol = 1e-10);

struct ReconstructOptions {
    lsq::Options solver;
    /// Run check_exchangeable first and reject failing sequences.
    bool require_exchangeable = true;
};

struct Reconstruction {
    Mixture mixture;
    double residual = 0.0;
    /// sqrt(sum_n ||rho_n - fit_n||_F^2) split per level (before the sqrt).
    std::vector<double> level_residuals;
    int rank = 0;
    bool degenerate = false;
    double raw_weight_sum = 1.0;
};

/// Raised by reconstruct when the input fails the exchangeability check.
class NotExchangeable : public Error {
public:
    explicit NotExchangeable(ExchangeabilityReport report);
    const ExchangeabilityReport& report() const { return report_; }

private:
    ExchangeabilityReport report_;
};

/// Simplex-constrained least squares of the sequence against the atoms'
/// tensor powers, Frobenius norm summed over levels.
Reconstruction reconstruct(const ExchSeq& seq, const AtomSet& atoms,
                           const ReconstructOptions& opts = {});

// ---------------------------------------------------------------------------

class Cone {
public:
    /// channels[k] is a Schrodinger map apex -> level k+1 of the base.
    Cone(Algebra apex, Algebra base, std::vector<ChoiMap> channels, double tol = 1e-9);

    const Algebra& apex() const { return apex_; }
    const Algebra& base() const { return base_; }
    int depth() const { return static_cast<int>(channels_.size()); }
    const std::vector<ChoiMap>& channels() const { return channels_; }
    double tolerance() const { return tol_; }

    /// (Phi_n(kappa))_n as an exchangeable sequence candidate.
    ExchSeq sequence_at(const StateVec& kappa) const;

private:
    Algebra apex_;
    Algebra base_;
    std::vector<ChoiMap> channels_;
    double tol_;
};

struct ConeLawReport {
    double max_violation = 0.0;
    int worst_n = 0;
    int worst_m = 0;
    Injection worst_tau;
    std::size_t injections_checked = 0;
    bool verdict = true;
};

/// For every injection tau: n -> m <= depth and every probe state kappa,
/// ||Phi_n(kappa) - pullback(Phi_m(kappa), tau)||_1 <= cone tolerance.
ConeLawReport check_cone(const Cone& cone);

class ConeLawViolation : public Error {
public:
    explicit ConeLawViolation(ConeLawReport report);
    const ConeLawReport& report() const { return report_; }

private:
    ConeLawReport report_;
};

class NotRepresentable : public Error {
public:
    NotRepresentable(std::size_t probe, double residual);
    std::size_t probe() const { return probe_; }
    double residual() const { return residual_; }

private:
    std::size_t probe_;
    double residual_;
};

/// Spanning set of apex states: per block, E_jj and I/D + H/(sqrt(2) D) for
/// H = (E_jk + E_kj)/sqrt(2) and i(E_jk - E_kj)/sqrt(2), j < k.
std::vector<StateVec> probe_states(const Algebra& apex);
inline constexpr const char* kProbeBasisName = "hermitian-matrix-units-mixed-with-identity";

class MediatingMap {
public:
    /// weights(i, k): weight of atom k for probe i.
    MediatingMap(Algebra apex, AtomSet atoms, std::vector<StateVec> probes, RMat weights);

    const Algebra& apex() const { return apex_; }
    const AtomSet& atoms() const { return atoms_; }
    const std::vector<StateVec>& probes() const { return probes_; }
    const RMat& weights() const { return weights_; }

    /// Linear extension to an arbitrary apex state.
    RVec weights_for(const StateVec& kappa) const;
    /// As a validated Mixture.
    Mixture operator()(const StateVec& kappa) const;

private:
    Algebra apex_;
    AtomSet atoms_;
    std::vector<StateVec> probes_;
    RMat weights_;
    RMat probe_inverse_;
};

struct MediatingOptions {
    ReconstructOptions reconstruct;
    /// Largest accepted reconstruction residual for any probe.
    double max_residual = 1e-6;
};

/// Throws ConeLawViolation or NotRepresentable.
MediatingMap mediating_map(const Cone& cone, const AtomSet& atoms, const MediatingOptions& opts = {});

/// max over probes and levels of ||Phi_n(kappa) - sum_k nu_k sigma_k^{(x)n}||_1.
double factorization_error(const Cone& cone, const MediatingMap& med);

struct UniquenessReport {
    int trials = 0;
    /// Max pairwise max-norm distance of restarted solutions on identifiable atoms.
    double max_pairwise_distance = 0.0;
    bool degenerate = false;
    int rank = 0;
    std::size_t atom_count = 0;
    std::vector<std::size_t> identifiable;

    friend bool operator==(const UniquenessReport&, const UniquenessReport&) = default;
};

/// Re-solves every probe's reconstruction from `trials` random simplex
/// starting points (no canonical selection) and compares the answers.
UniquenessReport uniqueness_check(const Cone& cone, const AtomSet& atoms, int trials,
                                  std::uint64_t seed);
/// Same, for a single sequence.
UniquenessReport uniqueness_check(const ExchSeq& seq, const AtomSet& atoms, int trials,
                                  std::uint64_t seed);

/// Phi_n(kappa) = Tr(kappa) rho_n: the cone that ignores its input.
Cone constant_cone(const Algebra& apex, const ExchSeq& seq);

}  // namespace qdf
