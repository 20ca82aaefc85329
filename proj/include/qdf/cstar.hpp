#pragma once

// Finite-dimensional C*-algebras: direct sums of full complex matrix blocks.
//
// An algebra with blocks (d_1, ..., d_k) is B(C^d_1) (+) ... (+) B(C^d_k).
// Elements carry one d_i x d_i matrix per block; states carry one density
// block per block and act by a |-> sum_i Tr(dens_i mats_i).
//
// JSON forms (see json_io.hpp):
//   complex  [re, im]
//   matrix   [[c, c, ...], ...]     (rows)
//   Element  {"blocks": [d...], "mats": [matrix...]}
//   StateVec {"blocks": [d...], "dens": [matrix...]}

#include <compare>
#include <cstddef>
#include <vector>

#include "qdf/errors.hpp"
#include "qdf/linalg.hpp"

namespace qdf {

/// Default tolerances for positivity and normalisation checks.
struct Tolerances {
    double psd = 1e-9;
    double trace = 1e-9;
};

class Algebra {
public:
    /// Throws ValidationError on an empty list or a block size < 1.
    explicit Algebra(std::vector<int> blocks);

    const std::vector<int>& blocks() const { return blocks_; }
    std::size_t block_count() const { return blocks_.size(); }

    /// Sum of d_i^2.
    std::size_t dimension() const;
    /// Sum of d_i: size of the block-diagonal representation space.
    std::size_t rep_dim() const;
    /// Offset of block `b` inside the representation space.
    std::size_t offset(std::size_t b) const;

    bool is_commutative() const;
    bool is_single_block() const { return blocks_.size() == 1; }

    friend bool operator==(const Algebra&, const Algebra&) = default;

private:
    std::vector<int> blocks_;
};

Algebra make_algebra(std::vector<int> blocks);

class Element {
public:
    /// Throws ValidationError when the block shapes do not match.
    Element(Algebra algebra, std::vector<Mat> mats);

    static Element unit(const Algebra& algebra);
    static Element zero(const Algebra& algebra);
    /// Splits a block-diagonal matrix over the representation space.
    static Element from_dense(const Algebra& algebra, const Mat& dense);

    const Algebra& algebra() const { return algebra_; }
    const std::vector<Mat>& mats() const { return mats_; }
    const Mat& block(std::size_t b) const { return mats_.at(b); }

    /// Block-diagonal matrix over the representation space.
    Mat to_dense() const;

    /// Largest per-block operator norm.
    double norm() const;

private:
    Algebra algebra_;
    std::vector<Mat> mats_;
};

class StateVec {
public:
    /// Validates Hermiticity, positivity and unit trace against `tol`.
    /// Blocks are stored symmetrised.
    StateVec(Algebra algebra, std::vector<Mat> dens, const Tolerances& tol = {});

    static StateVec from_dense(const Algebra& algebra, const Mat& dense,
                               const Tolerances& tol = {});
    /// Probability vector on a commutative algebra.
    static StateVec from_probabilities(const std::vector<double>& probs,
                                       const Tolerances& tol = {});
    /// |psi><psi| on B(C^d), psi normalised internally.
    static StateVec pure(const Eigen::VectorXcd& psi);
    /// Unit / rep_dim, spread over all blocks.
    static StateVec maximally_mixed(const Algebra& algebra);

    const Algebra& algebra() const { return algebra_; }
    const std::vector<Mat>& dens() const { return dens_; }
    const Mat& block(std::size_t b) const { return dens_.at(b); }
    Mat to_dense() const;

    /// Probability vector for commutative algebras. Throws otherwise.
    std::vector<double> probabilities() const;

private:
    Algebra algebra_;
    std::vector<Mat> dens_;
};

/// Every block Hermitian (after symmetrisation) with min eigenvalue >= -tol.
bool is_positive_element(const Element& a, double tol = 1e-9);

/// Largest |M - M^dagger| entry over all blocks.
double hermitian_deviation(const Element& a);

/// sum_i Tr(dens_i mats_i). Throws MismatchError across algebras.
cplx eval_state(const StateVec& s, const Element& a);

/// Sum of per-block trace norms of the difference.
double trace_distance(const StateVec& a, const StateVec& b);

}  // namespace qdf
