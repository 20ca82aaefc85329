#include "qdf/cstar.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "qdf/errors.hpp"

namespace qdf {

namespace {

void check_shapes(const Algebra& alg, const std::vector<Mat>& mats, const char* what) {
    if (mats.size() != alg.block_count())
        throw ValidationError(std::string(what) + ": expected " +
                              std::to_string(alg.block_count()) + " blocks, got " +
                              std::to_string(mats.size()));
    for (std::size_t b = 0; b < mats.size(); ++b) {
        const auto d = alg.blocks()[b];
        if (mats[b].rows() != d || mats[b].cols() != d)
            throw ValidationError(std::string(what) + ": block " + std::to_string(b) +
                                  " must be " + std::to_string(d) + "x" + std::to_string(d));
    }
}

std::vector<Mat> split_dense(const Algebra& alg, const Mat& dense) {
    const auto n = static_cast<Eigen::Index>(alg.rep_dim());
    if (dense.rows() != n || dense.cols() != n)
        throw ValidationError("dense matrix does not match the representation space");
    std::vector<Mat> mats;
    mats.reserve(alg.block_count());
    for (std::size_t b = 0; b < alg.block_count(); ++b) {
        const auto off = static_cast<Eigen::Index>(alg.offset(b));
        const auto d = alg.blocks()[b];
        mats.emplace_back(dense.block(off, off, d, d));
    }
    return mats;
}

Mat join_dense(const Algebra& alg, const std::vector<Mat>& mats) {
    const auto n = static_cast<Eigen::Index>(alg.rep_dim());
    Mat out = Mat::Zero(n, n);
    for (std::size_t b = 0; b < mats.size(); ++b) {
        const auto off = static_cast<Eigen::Index>(alg.offset(b));
        out.block(off, off, mats[b].rows(), mats[b].cols()) = mats[b];
    }
    return out;
}

}  // namespace

Algebra::Algebra(std::vector<int> blocks) : blocks_(std::move(blocks)) {
    if (blocks_.empty()) throw ValidationError("algebra needs at least one block");
    for (int d : blocks_)
        if (d < 1) throw ValidationError("block sizes must be positive, got " + std::to_string(d));
}

std::size_t Algebra::dimension() const {
    std::size_t s = 0;
    for (int d : blocks_) s += static_cast<std::size_t>(d) * static_cast<std::size_t>(d);
    return s;
}

std::size_t Algebra::rep_dim() const {
    return std::accumulate(blocks_.begin(), blocks_.end(), std::size_t{0});
}

std::size_t Algebra::offset(std::size_t b) const {
    return std::accumulate(blocks_.begin(), blocks_.begin() + static_cast<std::ptrdiff_t>(b),
                           std::size_t{0});
}

bool Algebra::is_commutative() const {
    return std::all_of(blocks_.begin(), blocks_.end(), [](int d) { return d == 1; });
}

Algebra make_algebra(std::vector<int> blocks) { return Algebra(std::move(blocks)); }

// ---------------------------------------------------------------------------

Element::Element(Algebra algebra, std::vector<Mat> mats)
    : algebra_(std::move(algebra)), mats_(std::move(mats)) {
    check_shapes(algebra_, mats_, "element");
}

Element Element::unit(const Algebra& algebra) {
    std::vector<Mat> mats;
    for (int d : algebra.blocks()) mats.push_back(Mat::Identity(d, d));
    return Element(algebra, std::move(mats));
}

Element Element::zero(const Algebra& algebra) {
    std::vector<Mat> mats;
    for (int d : algebra.blocks()) mats.push_back(Mat::Zero(d, d));
    return Element(algebra, std::move(mats));
}

Element Element::from_dense(const Algebra& algebra, const Mat& dense) {
    return Element(algebra, split_dense(algebra, dense));
}

Mat Element::to_dense() const { return join_dense(algebra_, mats_); }

double Element::norm() const {
    double n = 0.0;
    for (const auto& m : mats_) {
        Eigen::JacobiSVD<Mat> svd(m);
        n = std::max(n, svd.singularValues()(0));
    }
    return n;
}

// ---------------------------------------------------------------------------

StateVec::StateVec(Algebra algebra, std::vector<Mat> dens, const Tolerances& tol)
    : algebra_(std::move(algebra)), dens_(std::move(dens)) {
    check_shapes(algebra_, dens_, "state");
    cplx tr = 0.0;
    for (std::size_t b = 0; b < dens_.size(); ++b) {
        const double scale = std::max(1.0, linalg::max_abs(dens_[b]));
        if (linalg::hermitian_deviation(dens_[b]) > tol.psd * scale)
            throw ValidationError("state block " + std::to_string(b) + " is not Hermitian");
        dens_[b] = linalg::hermitian_part(dens_[b]);
        if (linalg::min_eigenvalue(dens_[b]) < -tol.psd)
            throw ValidationError("state block " + std::to_string(b) +
                                  " is not positive semidefinite");
        tr += dens_[b].trace();
    }
    if (std::abs(tr - 1.0) > tol.trace)
        throw ValidationError("state trace is " + std::to_string(tr.real()) + ", expected 1");
}

StateVec StateVec::from_dense(const Algebra& algebra, const Mat& dense, const Tolerances& tol) {
    return StateVec(algebra, split_dense(algebra, dense), tol);
}

StateVec StateVec::from_probabilities(const std::vector<double>& probs, const Tolerances& tol) {
    std::vector<Mat> dens;
    for (double p : probs) dens.push_back(Mat::Constant(1, 1, p));
    return StateVec(Algebra(std::vector<int>(probs.size(), 1)), std::move(dens), tol);
}

StateVec StateVec::pure(const Eigen::VectorXcd& psi) {
    const double n = psi.norm();
    if (n == 0.0) throw ValidationError("zero vector is not a pure state");
    const Eigen::VectorXcd v = psi / n;
    return StateVec(Algebra({static_cast<int>(v.size())}), {v * v.adjoint()});
}

StateVec StateVec::maximally_mixed(const Algebra& algebra) {
    const double w = 1.0 / static_cast<double>(algebra.rep_dim());
    std::vector<Mat> dens;
    for (int d : algebra.blocks()) dens.push_back(Mat::Identity(d, d) * w);
    return StateVec(algebra, std::move(dens));
}

Mat StateVec::to_dense() const { return join_dense(algebra_, dens_); }

std::vector<double> StateVec::probabilities() const {
    if (!algebra_.is_commutative())
        throw MismatchError("probabilities() needs a commutative algebra");
    std::vector<double> p;
    for (const auto& m : dens_) p.push_back(m(0, 0).real());
    return p;
}

// ---------------------------------------------------------------------------

bool is_positive_element(const Element& a, double tol) {
    for (const auto& m : a.mats()) {
        const double scale = std::max(1.0, linalg::max_abs(m));
        if (linalg::hermitian_deviation(m) > tol * scale) return false;
        if (linalg::min_eigenvalue(m) < -tol) return false;
    }
    return true;
}

double hermitian_deviation(const Element& a) {
    double dev = 0.0;
    for (const auto& m : a.mats()) dev = std::max(dev, linalg::hermitian_deviation(m));
    return dev;
}

cplx eval_state(const StateVec& s, const Element& a) {
    if (s.algebra() != a.algebra()) throw MismatchError("state and element live on different algebras");
    cplx v = 0.0;
    for (std::size_t b = 0; b < s.dens().size(); ++b)
        v += (s.dens()[b].transpose().cwiseProduct(a.mats()[b])).sum();
    return v;
}

double trace_distance(const StateVec& a, const StateVec& b) {
    if (a.algebra() != b.algebra()) throw MismatchError("states live on different algebras");
    double d = 0.0;
    for (std::size_t i = 0; i < a.dens().size(); ++i)
        d += linalg::trace_norm(a.dens()[i] - b.dens()[i]);
    return d;
}

}  // namespace qdf
