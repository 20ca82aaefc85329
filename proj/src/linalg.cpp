#include "qdf/linalg.hpp"

#include <cmath>
#include <limits>

#include "qdf/errors.hpp"

namespace qdf::linalg {

Mat hermitian_part(const Mat& m) { return (m + m.adjoint()) * 0.5; }

double hermitian_deviation(const Mat& m) {
    if (m.size() == 0) return 0.0;
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double min_eigenvalue(const Mat& m) {
    if (m.size() == 0) return 0.0;
    if (m.rows() == 1) return m(0, 0).real();
    Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(m), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

double trace_norm(const Mat& m) {
    if (m.size() == 0) return 0.0;
    if (m.rows() == 1 && m.cols() == 1) return std::abs(m(0, 0));
    const double scale = m.cwiseAbs().maxCoeff();
    if (scale == 0.0) return 0.0;
    if (m.rows() == m.cols() && hermitian_deviation(m) <= 1e-14 * scale) {
        if (m.rows() > 1 && m.isDiagonal(0.0)) return m.diagonal().cwiseAbs().sum();
        Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(m), Eigen::EigenvaluesOnly);
        return es.eigenvalues().cwiseAbs().sum();
    }
    Eigen::BDCSVD<Mat> svd(m);
    return svd.singularValues().sum();
}

double max_abs(const Mat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

std::size_t ipow(std::size_t d, int n) {
    if (n < 0) throw ValidationError("negative exponent");
    std::size_t r = 1;
    for (int i = 0; i < n; ++i) {
        if (d != 0 && r > std::numeric_limits<std::size_t>::max() / d)
            throw ValidationError("dimension overflow");
        r *= d;
    }
    return r;
}

void append_hermitian_coords(const Mat& m, RVec& out, Eigen::Index& pos) {
    const Eigen::Index n = m.rows();
    for (Eigen::Index i = 0; i < n; ++i) out[pos++] = m(i, i).real();
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j) {
            out[pos++] = M_SQRT2 * m(i, j).real();
            out[pos++] = M_SQRT2 * m(i, j).imag();
        }
}

}  // namespace qdf::linalg
