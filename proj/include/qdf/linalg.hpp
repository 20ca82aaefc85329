#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace qdf {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

namespace linalg {

/// (M + M^dagger) / 2
Mat hermitian_part(const Mat& m);

/// Max-entry deviation from Hermiticity, max |M - M^dagger|.
double hermitian_deviation(const Mat& m);

/// Smallest eigenvalue of the Hermitian part of `m`.
double min_eigenvalue(const Mat& m);

/// Sum of singular values. Hermitian inputs go through the eigensolver.
double trace_norm(const Mat& m);

double max_abs(const Mat& m);

Mat kron(const Mat& a, const Mat& b);

/// Integer power d^n with overflow guard.
std::size_t ipow(std::size_t d, int n);

/// Real coordinates of a Hermitian matrix whose Euclidean norm equals the
/// Frobenius norm: diagonal entries, then sqrt(2) Re / sqrt(2) Im of the
/// strict upper triangle, row-major. Appended to `out` starting at `pos`.
void append_hermitian_coords(const Mat& m, RVec& out, Eigen::Index& pos);

inline Eigen::Index hermitian_coord_count(Eigen::Index dim) { return dim * dim; }

}  // namespace linalg
}  // namespace qdf
