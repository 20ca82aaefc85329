#pragma once

// Linear maps between finite C*-algebras stored as Choi matrices.
//
// A ChoiMap with source A (rep dim p) and target B (rep dim q) stores the
// (p*q) x (p*q) matrix J = sum_{r,c} E_rc (x) L(E_rc), i.e.
//   J[r*q + a, c*q + b] = L(E_rc)[a, b].
// Only entries with (r, c) inside one source block and (a, b) inside one
// target block are kept; the map acts block-diagonal to block-diagonal.
//
// The direction flag says what the map acts on: Heisenberg maps send
// Elements of the source to Elements of the target (unital when they are
// channels), Schrodinger maps send StateVecs of the source to StateVecs of
// the target. dualize() swaps the flag and exchanges source and target.
//
// JSON form: {"source": [d...], "target": [d...], "direction": "H"|"S",
//             "choi": matrix}

#include <functional>
#include <vector>

#include "qdf/cstar.hpp"

namespace qdf {

enum class Direction { Heisenberg, Schrodinger };

using BlockAction = std::function<std::vector<Mat>(const std::vector<Mat>&)>;

class ChoiMap {
public:
    /// Throws ValidationError if `choi` is not (p*q) square. Entries outside
    /// the block structure are dropped.
    ChoiMap(Algebra source, Algebra target, Direction direction, Mat choi);

    /// Tabulates a linear block action on the source's matrix units.
    static ChoiMap from_action(const Algebra& source, const Algebra& target,
                               Direction direction, const BlockAction& action);

    const Algebra& source() const { return source_; }
    const Algebra& target() const { return target_; }
    Direction direction() const { return direction_; }
    const Mat& choi() const { return choi_; }

    /// Raw linear action on per-block matrices, ignoring the direction flag.
    std::vector<Mat> act(const std::vector<Mat>& blocks) const;

private:
    Algebra source_;
    Algebra target_;
    Direction direction_;
    Mat choi_;
};

/// Heisenberg maps only.
Element apply(const ChoiMap& map, const Element& x);
/// Schrodinger maps only; the image is validated as a state.
StateVec apply(const ChoiMap& map, const StateVec& s, const Tolerances& tol = {});

/// Choi matrix positive semidefinite within `tol`.
bool is_completely_positive(const ChoiMap& map, double tol = 1e-9);
/// Heisenberg maps only: apply(unit) == unit within `tol`, entrywise.
bool is_unital(const ChoiMap& map, double tol = 1e-9);
/// Schrodinger maps only: trace of every image equals the input trace.
bool is_trace_preserving(const ChoiMap& map, double tol = 1e-9);

/// f after g: requires g.target == f.source and equal directions.
ChoiMap compose(const ChoiMap& f, const ChoiMap& g);
/// f (x) g on the tensor algebras (blocks in lexicographic pair order).
ChoiMap tensor(const ChoiMap& f, const ChoiMap& g);
/// Hilbert-Schmidt adjoint with respect to Tr(x y).
ChoiMap dualize(const ChoiMap& map);

/// Entrywise max-norm distance between Choi matrices of compatible maps.
double choi_distance(const ChoiMap& a, const ChoiMap& b);

/// Blocks d_i * e_j in lexicographic (i, j) order.
Algebra tensor_algebra(const Algebra& a, const Algebra& b);

namespace channels {

ChoiMap identity(const Algebra& alg, Direction dir = Direction::Schrodinger);
/// rho |-> Tr(rho) I/d. Its dual a |-> Tr(a) I/d has the same Choi matrix.
ChoiMap depolarizing(int d, Direction dir = Direction::Schrodinger);
/// rho |-> diag(rho). With `classical_output` the target is C({0..d-1}).
ChoiMap measure_standard_basis(int d, bool classical_output = false);
/// x |-> x^T, positive but not completely positive for d >= 2.
ChoiMap transpose(int d, Direction dir = Direction::Schrodinger);

}  // namespace channels

}  // namespace qdf
