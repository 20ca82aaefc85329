#include "qdf/random.hpp"

#include <cmath>

namespace qdf {

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u = 0.0;
    while (u == 0.0) u = uniform();
    const double v = uniform();
    const double r = std::sqrt(-2.0 * std::log(u));
    spare_ = r * std::sin(2.0 * M_PI * v);
    has_spare_ = true;
    return r * std::cos(2.0 * M_PI * v);
}

cplx Rng::complex_normal() {
    const double re = normal();
    const double im = normal();
    return cplx(re, im) * M_SQRT1_2;
}

std::vector<double> Rng::simplex(std::size_t n) {
    std::vector<double> w(n);
    double sum = 0.0;
    for (auto& x : w) {
        double u = 0.0;
        while (u == 0.0) u = uniform();
        x = -std::log(u);
        sum += x;
    }
    for (auto& x : w) x /= sum;
    return w;
}

Mat random_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
    Mat m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = rng.complex_normal();
    return m;
}

Mat random_hermitian(Eigen::Index n, Rng& rng) {
    const Mat g = random_matrix(n, n, rng);
    return (g + g.adjoint()) * 0.5;
}

StateVec haar_pure_state(int d, Rng& rng) {
    Eigen::VectorXcd psi(d);
    for (int i = 0; i < d; ++i) psi[i] = rng.complex_normal();
    return StateVec::pure(psi);
}

StateVec hs_mixed_state(int d, Rng& rng) {
    const Mat g = random_matrix(d, d, rng);
    Mat rho = g * g.adjoint();
    rho /= rho.trace().real();
    return StateVec(Algebra({d}), {rho});
}

}  // namespace qdf
