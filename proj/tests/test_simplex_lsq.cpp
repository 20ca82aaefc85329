#include <doctest.h>

#include "qdf/random.hpp"
#include "qdf/simplex_lsq.hpp"

using namespace qdf;

TEST_CASE("nnls matches a known active set") {
    RMat a(3, 2);
    a << 1, 0, 0, 1, 0, 0;
    RVec b(3);
    b << -1, 2, 5;
    const RVec x = lsq::nnls(a, b);
    CHECK(x[0] == doctest::Approx(0.0));
    CHECK(x[1] == doctest::Approx(2.0));
}

TEST_CASE("nnls satisfies the optimality conditions on random problems") {
    Rng rng(41);
    for (int trial = 0; trial < 20; ++trial) {
        RMat a(12, 8);
        RVec b(12);
        for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = rng.normal();
        for (Eigen::Index i = 0; i < b.size(); ++i) b[i] = rng.normal();
        const RVec x = lsq::nnls(a, b);
        const RVec g = a.transpose() * (b - a * x);
        for (Eigen::Index j = 0; j < x.size(); ++j) {
            CHECK(x[j] >= 0.0);
            CHECK(g[j] <= 1e-9);
            if (x[j] > 0.0) CHECK(std::abs(g[j]) <= 1e-9);
        }
    }
}

TEST_CASE("simplex solve recovers exact convex combinations") {
    Rng rng(42);
    RMat a(10, 4);
    for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = rng.normal();
    RVec w(4);
    w << 0.1, 0.0, 0.6, 0.3;
    const auto res = lsq::solve(a, a * w);
    CHECK((res.weights - w).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(res.residual < 1e-10);
    CHECK_FALSE(res.degenerate);
    CHECK(res.weights.sum() == doctest::Approx(1.0));
}

TEST_CASE("duplicate columns are degenerate and split evenly") {
    RMat a(2, 3);
    a << 1, 1, 0, 0, 0, 1;
    RVec b(2);
    b << 0.5, 0.5;
    const auto res = lsq::solve(a, b);
    CHECK(res.degenerate);
    CHECK(res.min_norm_applied);
    CHECK(res.weights[0] == doctest::Approx(0.25));
    CHECK(res.weights[1] == doctest::Approx(0.25));
    CHECK(res.weights[2] == doctest::Approx(0.5));
    const auto ident = lsq::identifiable_columns(a);
    CHECK_FALSE(ident[0]);
    CHECK_FALSE(ident[1]);
    CHECK(ident[2]);
}

TEST_CASE("warm starts converge to the same optimum") {
    Rng rng(43);
    RMat a(8, 5);
    for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = rng.normal();
    RVec b(8);
    for (Eigen::Index i = 0; i < b.size(); ++i) b[i] = rng.normal();
    lsq::Options opts;
    const auto cold = lsq::solve(a, b, opts);
    for (int t = 0; t < 5; ++t) {
        const auto s = rng.simplex(5);
        const RVec start = Eigen::Map<const RVec>(s.data(), 5);
        const auto warm = lsq::solve(a, b, opts, &start);
        CHECK((warm.weights - cold.weights).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("rejects malformed input") {
    CHECK_THROWS(lsq::solve(RMat(2, 0), RVec(2)));
    CHECK_THROWS(lsq::solve(RMat::Ones(2, 2), RVec(3)));
}
