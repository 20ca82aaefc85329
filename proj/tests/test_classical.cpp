#include <doctest.h>

#include "oracles.hpp"
#include "qdf/classical.hpp"
#include "qdf/fixtures.hpp"
#include "qdf/random.hpp"

using namespace qdf;
using namespace qdf::classical;

namespace {

const Space kCoin{"H", "T"};

FinDist random_dist(const Space& s, Rng& rng) { return FinDist(s, rng.simplex(s.size())); }

Kernel random_kernel(const Space& src, const Space& dst, Rng& rng) {
    RMat rows(static_cast<Eigen::Index>(src.size()), static_cast<Eigen::Index>(dst.size()));
    for (Eigen::Index i = 0; i < rows.rows(); ++i) {
        const auto p = rng.simplex(dst.size());
        for (Eigen::Index j = 0; j < rows.cols(); ++j) rows(i, j) = p[static_cast<std::size_t>(j)];
    }
    return Kernel(src, dst, rows);
}

Space labels(const std::string& prefix, int n) {
    Space s;
    for (int i = 0; i < n; ++i) s.push_back(prefix + std::to_string(i));
    return s;
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace

TEST_CASE("dirac, pushforward and flatten") {
    CHECK(dirac(kCoin, "H").probs() == std::vector<double>{1.0, 0.0});
    const FinDist f = flatten(Dist<FinDist>{{dirac(kCoin, 0), dirac(kCoin, 1)}, {0.5, 0.5}});
    CHECK(f.probs() == std::vector<double>{0.5, 0.5});
    Rng rng(61);
    const Space x = labels("x", 4);
    const FinDist mu = random_dist(x, rng);
    const FinDist c = pushforward({1, 1, 1, 1}, mu, kCoin);
    CHECK(max_diff(c.probs(), {0.0, 1.0}) < 1e-15);
    CHECK_THROWS_AS(FinDist(kCoin, {0.5, 0.6}), ValidationError);
    CHECK_THROWS_AS(dirac(kCoin, "Q"), ValidationError);
}

TEST_CASE("monad laws on random instances") {
    Rng rng(62);
    const Space x = labels("x", 3);
    for (int trial = 0; trial < 50; ++trial) {
        const FinDist mu = random_dist(x, rng);
        // flatten . unit = id
        CHECK(max_diff(flatten(unit(mu)).probs(), mu.probs()) <= 1e-12);
        // flatten . fmap(unit) = id
        const Dist<FinDist> points{{dirac(x, 0), dirac(x, 1), dirac(x, 2)}, mu.probs()};
        CHECK(max_diff(flatten(points).probs(), mu.probs()) <= 1e-12);
        // flatten . flatten = flatten . fmap(flatten)
        Dist<Dist<FinDist>> nested;
        for (int i = 0; i < 3; ++i) {
            Dist<FinDist> inner;
            for (int j = 0; j < 2; ++j) inner.support.push_back(random_dist(x, rng));
            inner.weights = rng.simplex(2);
            nested.support.push_back(inner);
        }
        nested.weights = rng.simplex(3);
        const FinDist lhs = flatten(join(nested));
        const FinDist rhs = flatten(fmap([](const Dist<FinDist>& d) { return flatten(d); }, nested));
        CHECK(max_diff(lhs.probs(), rhs.probs()) <= 1e-12);
    }
}

TEST_CASE("kleisli composition") {
    Rng rng(63);
    const Space x = labels("x", 3), y = labels("y", 4), z = labels("z", 2), w = labels("w", 5);
    for (int trial = 0; trial < 20; ++trial) {
        const Kernel f = random_kernel(x, y, rng), g = random_kernel(y, z, rng), h = random_kernel(z, w, rng);
        const Kernel a = kleisli_compose(kleisli_compose(f, g), h), b = kleisli_compose(f, kleisli_compose(g, h));
        CHECK((a.rows() - b.rows()).cwiseAbs().maxCoeff() <= 1e-12);
        CHECK((kleisli_compose(identity_kernel(x), f).rows() - f.rows()).cwiseAbs().maxCoeff() == 0.0);
        CHECK((kleisli_compose(f, identity_kernel(y)).rows() - f.rows()).cwiseAbs().maxCoeff() == 0.0);
    }
    const Kernel f = random_kernel(labels("a", 3), labels("b", 4), rng);
    const Kernel g = random_kernel(labels("b", 4), labels("c", 2), rng);
    std::vector<std::vector<double>> fr(3, std::vector<double>(4)), gr(4, std::vector<double>(2));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 4; ++j) fr[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = f.rows()(i, j);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 2; ++j) gr[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = g.rows()(i, j);
    const auto expect = oracle::kleisli_double_sum(fr, gr);
    const Kernel fg = kleisli_compose(f, g);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 2; ++j) CHECK(fg.rows()(i, j) == doctest::Approx(expect[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]).epsilon(1e-14));
    const Kernel fair(kCoin, kCoin, RMat::Constant(2, 2, 0.5));
    CHECK((kleisli_compose(fair, fair).rows() - fair.rows()).cwiseAbs().maxCoeff() == 0.0);
    CHECK_THROWS_AS(kleisli_compose(g, f), MismatchError);
}

TEST_CASE("product measures") {
    CHECK(product_measure(coin(0.5), 2).probs() == std::vector<double>{0.25, 0.25, 0.25, 0.25});
    const auto p = product_measure(coin(0.25), 2).probs();
    CHECK(max_diff(p, {0.0625, 0.1875, 0.1875, 0.5625}) < 1e-15);
    const FinDist d = product_measure(dirac(kCoin, "T"), 3);
    CHECK(d.probs()[7] == 1.0);
    CHECK(tuple_space(kCoin, 2) == Space{"HH", "HT", "TH", "TT"});
}

TEST_CASE("coordinate selection commutes with product measures") {
    Rng rng(64);
    const Space x = labels("x", 3);
    const FinDist mu = random_dist(x, rng);
    for (const auto& tau : std::vector<Injection>{{2, 0}, {1}, {0, 1, 2}, {2, 1, 0}}) {
        const FinDist sel = select_coordinates(product_measure(mu, 3), x, 3, tau);
        CHECK(max_diff(sel.probs(), product_measure(mu, static_cast<int>(tau.size())).probs()) <= 1e-12);
    }
}

TEST_CASE("coin mixture recovery") {
    const auto fx = fixtures::coin(5);
    CHECK(check_exchangeable(fx.sequence).verdict);
    const auto r = hs_reconstruct(fx.sequence, fx.grid);
    CHECK(max_diff(r.weights, fx.weights) <= 1e-8);
    CHECK_FALSE(r.degenerate);
}

TEST_CASE("iid sequence reconstructs to a point mass") {
    const ClassicalExchSeq seq = synthesize({coin(0.3)}, {1.0}, 4);
    const auto r = hs_reconstruct(seq, {coin(0.1), coin(0.3), coin(0.8)});
    CHECK(max_diff(r.weights, {0.0, 1.0, 0.0}) <= 1e-8);
}

TEST_CASE("bias grids follow the Vandermonde rank") {
    const std::vector<double> biases{0.1, 0.3, 0.5, 0.7, 0.9};
    std::vector<FinDist> grid;
    for (double b : biases) grid.push_back(coin(b));
    for (int depth : {1, 2, 3, 4, 6, 9}) CHECK(grid_moment_rank(grid, depth) == oracle::vandermonde_rank(biases, depth));
    const std::vector<double> w{0.1, 0.2, 0.3, 0.25, 0.15};
    const auto deep = hs_reconstruct(synthesize(grid, w, 9), grid);
    CHECK_FALSE(deep.degenerate);
    CHECK(max_diff(deep.weights, w) <= 1e-6);
    const auto shallow = hs_reconstruct(synthesize(grid, w, 3), grid);
    CHECK(shallow.degenerate);
}

TEST_CASE("commutative encoding agrees with the quantum reconstruction") {
    Rng rng(65);
    const Space x = labels("x", 3);
    std::vector<FinDist> grid;
    for (int k = 0; k < 4; ++k) grid.push_back(random_dist(x, rng));
    const std::vector<double> w{0.4, 0.1, 0.3, 0.2};
    const ClassicalExchSeq seq = synthesize(grid, w, 3);
    const auto hs = hs_reconstruct(seq, grid);
    const auto q = reconstruct(commutative_encoding(seq), commutative_atoms(grid));
    CHECK(max_diff(hs.weights, q.mixture.weights()) <= 1e-8);
}

TEST_CASE("classical exchangeability violations") {
    // level 2 puts all mass on HT: consistent with level 1, not symmetric
    const ClassicalExchSeq bad(kCoin, {{1.0, 0.0}, {0.0, 1.0, 0.0, 0.0}});
    const auto rep = check_exchangeable(bad);
    CHECK_FALSE(rep.verdict);
    CHECK(rep.first_violation()->level == 2);
    CHECK_THROWS_AS(hs_reconstruct(bad, {coin(0.5)}), NotExchangeable);
}
