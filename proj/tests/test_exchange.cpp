#include <doctest.h>

#include "oracles.hpp"
#include "qdf/exchange.hpp"
#include "qdf/random.hpp"

using namespace qdf;

namespace {

const Algebra kQubit({2});

Eigen::VectorXcd ket(std::initializer_list<cplx> v) {
    Eigen::VectorXcd k(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (auto x : v) k[i++] = x;
    return k;
}

StateVec random_state(int level, Rng& rng) {
    return hs_mixed_state(static_cast<int>(oracle::power(2, level)), rng);
}

Injection random_injection(int n, int m, Rng& rng) {
    std::vector<int> slots(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) slots[static_cast<std::size_t>(i)] = i;
    std::shuffle(slots.begin(), slots.end(), rng.engine());
    return Injection(slots.begin(), slots.begin() + n);
}

}  // namespace

TEST_CASE("permutation helpers") {
    CHECK(all_permutations(4).size() == 24);
    CHECK(adjacent_transpositions(4).size() == 3);
    CHECK(all_injections(2, 4).size() == 12);
    const Permutation s{2, 0, 1};
    CHECK(compose(s, inverse(s)) == Permutation{0, 1, 2});
    CHECK_THROWS_AS(validate_permutation({0, 0, 1}, 3), ValidationError);
    CHECK_THROWS_AS(validate_injection({0, 3}, 3), ValidationError);
}

TEST_CASE("restrict_state agrees with the partial trace oracle") {
    Rng rng(21);
    for (int m = 1; m <= 4; ++m) {
        const StateVec rho = random_state(m, rng);
        for (int n = 0; n <= m; ++n) {
            const StateVec r = restrict_state(rho, kQubit, n);
            CHECK((r.to_dense() - oracle::partial_trace_tail(rho.to_dense(), 2, m, n)).norm() < 1e-12);
        }
    }
}

TEST_CASE("eta_sigma on states agrees with the permutation operator") {
    Rng rng(22);
    const StateVec rho = random_state(3, rng);
    for (const auto& sigma : all_permutations(3)) {
        const Mat u = oracle::permutation_unitary(2, sigma);
        const Mat expect = u * rho.to_dense() * u.adjoint();
        CHECK((eta_sigma(rho, kQubit, sigma).to_dense() - expect).norm() < 1e-12);
    }
}

TEST_CASE("eta_tau places elements on the selected slots") {
    Rng rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        const int m = 1 + static_cast<int>(rng.index(4));
        const int n = static_cast<int>(rng.index(static_cast<std::size_t>(m) + 1));
        const Injection tau = random_injection(n, m, rng);
        const Element a = Element::from_dense(TensorPower(kQubit, n).algebra(),
                                              random_matrix(1 << n, 1 << n, rng));
        const Mat got = eta_tau(a, kQubit, tau, m).to_dense();
        CHECK((got - oracle::place(a.to_dense(), 2, tau, m)).norm() < 1e-12);
    }
}

TEST_CASE("eta_tau is functorial") {
    Rng rng(24);
    for (int trial = 0; trial < 30; ++trial) {
        const int k = 1 + static_cast<int>(rng.index(4));
        const int m = static_cast<int>(rng.index(static_cast<std::size_t>(k) + 1));
        const int n = static_cast<int>(rng.index(static_cast<std::size_t>(m) + 1));
        const Injection tau = random_injection(n, m, rng), ups = random_injection(m, k, rng);
        const Element a = Element::from_dense(TensorPower(kQubit, n).algebra(),
                                              random_matrix(1 << n, 1 << n, rng));
        const Mat direct = eta_tau(a, kQubit, compose_injections(ups, tau), k).to_dense();
        const Mat stepwise = eta_tau(eta_tau(a, kQubit, tau, m), kQubit, ups, k).to_dense();
        CHECK((direct - stepwise).norm() < 1e-12);
    }
}

TEST_CASE("eta_tau reduces to iota and eta_sigma") {
    Rng rng(25);
    const Element a = Element::from_dense(TensorPower(kQubit, 2).algebra(), random_matrix(4, 4, rng));
    CHECK((eta_tau(a, kQubit, {0, 1}, 4).to_dense() - iota_embed(a, kQubit, 4).to_dense()).norm() == 0.0);
    const Element b = Element::from_dense(TensorPower(kQubit, 3).algebra(), random_matrix(8, 8, rng));
    for (const auto& s : all_permutations(3))
        CHECK((eta_tau(b, kQubit, s, 3).to_dense() - eta_sigma(b, kQubit, s).to_dense()).norm() == 0.0);
}

TEST_CASE("restriction is dual to embedding") {
    Rng rng(26);
    for (int m = 1; m <= 4; ++m) {
        const StateVec rho = random_state(m, rng);
        for (int n = 0; n <= m; ++n) {
            const Element a = Element::from_dense(TensorPower(kQubit, n).algebra(),
                                                  random_matrix(1 << n, 1 << n, rng));
            const cplx lhs = eval_state(restrict_state(rho, kQubit, n), a);
            const cplx rhs = eval_state(rho, iota_embed(a, kQubit, m));
            CHECK(std::abs(lhs - rhs) < 1e-12);
        }
    }
}

TEST_CASE("pullback along tau is dual to eta_tau") {
    Rng rng(27);
    const StateVec rho = random_state(3, rng);
    const Injection tau{2, 0};
    const Element a = Element::from_dense(TensorPower(kQubit, 2).algebra(), random_matrix(4, 4, rng));
    CHECK(std::abs(eval_state(pullback_state(rho, kQubit, tau), a) -
                   eval_state(rho, eta_tau(a, kQubit, tau, 3))) < 1e-12);
}

TEST_CASE("iid sequences are exchangeable") {
    Rng rng(28);
    const StateVec s = hs_mixed_state(2, rng);
    const auto rep = check_exchangeable(iid_extend(s, 4));
    CHECK(rep.verdict);
    for (const auto& l : rep.levels) {
        CHECK(l.symmetry_violation <= 1e-12);
        CHECK(l.consistency_violation <= 1e-12);
    }
    const ExchSeq half = iid_extend(StateVec::maximally_mixed(kQubit), 2);
    CHECK((half.level(2).to_dense() - Mat::Identity(4, 4) / 4.0).norm() < 1e-15);
    CHECK_THROWS_AS(iid_extend(s, 0), ValidationError);
}

TEST_CASE("iid tensor power evaluates as a product") {
    Rng rng(29);
    const StateVec s = hs_mixed_state(2, rng);
    const Mat a = random_matrix(2, 2, rng), b = random_matrix(2, 2, rng);
    const StateVec s2 = tensor_power(s, kQubit, 2);
    const cplx lhs = eval_state(s2, Element::from_dense(s2.algebra(), oracle::kron(a, b)));
    const cplx rhs = eval_state(s, Element(kQubit, {a})) * eval_state(s, Element(kQubit, {b}));
    CHECK(std::abs(lhs - rhs) < 1e-12);
}

TEST_CASE("singlet sequence is exchangeable") {
    const cplx r = M_SQRT1_2;
    const ExchSeq seq(kQubit, {StateVec::maximally_mixed(kQubit), StateVec::pure(ket({0.0, r, -r, 0.0}))});
    CHECK(check_exchangeable(seq).verdict);
}

TEST_CASE("non-symmetric product fails at level 2") {
    const ExchSeq seq(kQubit, {StateVec::pure(ket({1.0, 0.0})), StateVec::pure(ket({0.0, 1.0, 0.0, 0.0}))});
    const auto rep = check_exchangeable(seq);
    CHECK_FALSE(rep.verdict);
    REQUIRE(rep.first_violation().has_value());
    CHECK(rep.first_violation()->level == 2);
    CHECK(rep.first_violation()->worst_permutation == Permutation{1, 0});
}

TEST_CASE("adjacent transpositions detect every asymmetry up to level 4") {
    Rng rng(30);
    for (int n = 2; n <= 4; ++n)
        for (int trial = 0; trial < 5; ++trial) {
            // even trials: full symmetrization; odd: a two-term average
            const StateVec rho = random_state(n, rng);
            Mat avg = Mat::Zero(rho.to_dense().rows(), rho.to_dense().cols());
            const auto perms = all_permutations(n);
            const bool full = trial % 2 == 0;
            const std::size_t count = full ? perms.size() : 2;
            for (std::size_t i = 0; i < count; ++i) avg += eta_sigma(rho, kQubit, perms[i]).to_dense();
            const StateVec s = StateVec::from_dense(rho.algebra(), avg / static_cast<double>(count));
            double gen = 0.0, all = 0.0;
            for (const auto& p : adjacent_transpositions(n)) gen = std::max(gen, trace_distance(s, eta_sigma(s, kQubit, p)));
            for (const auto& p : perms) all = std::max(all, trace_distance(s, eta_sigma(s, kQubit, p)));
            CHECK((gen <= 1e-12) == (all <= 1e-12));
        }
}

TEST_CASE("top level determines the rest") {
    Rng rng(31);
    const StateVec top = random_state(4, rng);
    std::vector<StateVec> levels;
    for (int n = 1; n <= 4; ++n) levels.push_back(restrict_state(top, kQubit, n));
    const ExchSeq fam(kQubit, levels);
    for (int n = 1; n <= 4; ++n)
        CHECK(trace_distance(fam.level(n), restrict_state(fam.level(4), kQubit, n)) <= 1e-12);
}

TEST_CASE("exchangeability report equality") {
    const auto a = check_exchangeable(iid_extend(StateVec::maximally_mixed(kQubit), 3));
    const auto b = check_exchangeable(iid_extend(StateVec::maximally_mixed(kQubit), 3));
    CHECK(a == b);
}

TEST_CASE("commutative base algebras") {
    const StateVec p = StateVec::from_probabilities({0.25, 0.75});
    const ExchSeq seq = iid_extend(p, 3);
    CHECK(seq.level(3).algebra().blocks().size() == 8);
    CHECK(check_exchangeable(seq).verdict);
    const auto probs = seq.level(2).probabilities();
    CHECK(probs[1] == doctest::Approx(0.1875));
}
