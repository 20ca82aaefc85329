// One line per acceptance criterion; exit status is the number of failures.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "helpers.hpp"
#include "oracles.hpp"
#include "qdf/fixtures.hpp"

using namespace qdf;
using Clock = std::chrono::steady_clock;

namespace {

const Algebra kQubit({2});

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}
std::string fmt(const char* f, double a, double b) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}
std::string fmt(const char* f, double a, double b, double c) {
    char buf[200];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

Injection random_injection(int n, int m, Rng& rng) {
    std::vector<int> slots(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) slots[static_cast<std::size_t>(i)] = i;
    std::shuffle(slots.begin(), slots.end(), rng.engine());
    return Injection(slots.begin(), slots.begin() + n);
}

Outcome circuit1_belief() {
    const auto t0 = Clock::now();
    const Mixture mix = fixtures::circuit1();
    const auto r = reconstruct(synthesize(mix, 3), mix.atoms());
    const double secs = seconds_since(t0);
    const double werr = max_diff(r.mixture.weights(), {0.5, 0.5});
    return {werr <= 1e-8 && r.residual <= 1e-10 && secs < 1.0,
            fmt("weight error %.2e, residual %.2e, %.3f s", werr, r.residual, secs)};
}

Outcome circuit2_belief() {
    const ExchSeq seq = iid_extend(StateVec::maximally_mixed(kQubit), 3);
    const auto single = reconstruct(seq, fixtures::circuit2().atoms());
    const auto many = reconstruct(seq, default_atoms(2, 200, 0));
    const double bary = trace_distance(many.mixture.barycenter(), StateVec::maximally_mixed(kQubit));
    const double w = single.mixture.weights()[0];
    return {std::abs(w - 1.0) <= 1e-12 && single.residual <= 1e-10 && bary <= 1e-6,
            fmt("singleton weight %.12f residual %.2e, 200-atom barycenter distance %.2e", w, single.residual, bary)};
}

Outcome roundtrip() {
    Rng rng(1001);
    double worst = 0.0, aff = 0.0;
    bool independent = true;
    for (int trial = 0; trial < 50; ++trial) {
        const AtomSet atoms = testing::random_independent_atoms(2 + rng.index(7), 4, rng);
        independent = independent && moment_independent(atoms, 4);
        const Mixture m = testing::random_mixture(atoms, rng);
        worst = std::max(worst, max_diff(reconstruct(synthesize(m, 4), atoms).mixture.weights(), m.weights()));
        const Mixture m2 = testing::random_mixture(atoms, rng);
        const ExchSeq a = synthesize(m, 4), b = synthesize(m2, 4);
        for (double lam : {0.0, 0.25, 0.5, 1.0}) {
            std::vector<double> w(atoms.size());
            for (std::size_t k = 0; k < w.size(); ++k) w[k] = lam * m.weights()[k] + (1 - lam) * m2.weights()[k];
            const ExchSeq c = synthesize(Mixture(atoms, w), 4);
            for (int n = 1; n <= 4; ++n)
                aff = std::max(aff, (c.level(n).to_dense() - lam * a.level(n).to_dense() -
                                     (1 - lam) * b.level(n).to_dense()).cwiseAbs().maxCoeff());
        }
    }
    return {independent && worst <= 1e-6 && aff <= 1e-12,
            fmt("50 mixtures: max weight error %.2e, affinity error %.2e", worst, aff)};
}

Outcome universal_property() {
    double ferr = 0.0, uniq = 0.0;
    {
        const Cone cone = fixtures::circuit_cone(4);
        const AtomSet atoms = fixtures::circuit1().atoms();
        ferr = factorization_error(cone, mediating_map(cone, atoms));
        uniq = uniqueness_check(cone, atoms, 10, 0).max_pairwise_distance;
    }
    Rng rng(1004);
    bool independent = true;
    for (int trial = 0; trial < 20; ++trial) {
        const AtomSet atoms = testing::random_independent_atoms(2 + rng.index(3), 4, rng);
        independent = independent && moment_independent(atoms, 4);
        const int d = 1 + static_cast<int>(rng.index(2));
        const Cone cone =
            fixtures::measure_prepare_cone(Algebra({d}), testing::random_povm(d, atoms.size(), rng), atoms, 4);
        ferr = std::max(ferr, factorization_error(cone, mediating_map(cone, atoms)));
        const auto u = uniqueness_check(cone, atoms, 10, static_cast<std::uint64_t>(trial));
        uniq = std::max(uniq, u.max_pairwise_distance);
        independent = independent && !u.degenerate;
    }
    return {independent && ferr <= 1e-7 && uniq <= 1e-8,
            fmt("circuit cone + 20 random cones: factorization error %.2e, restart spread %.2e", ferr, uniq)};
}

Outcome non_representability() {
    const ExchSeq singlet = fixtures::singlet_sequence();
    const double rmin = oracle::bloch_grid_rmin(singlet.level(1).to_dense(), singlet.level(2).to_dense());
    if (!check_exchangeable(singlet).verdict) return {false, "singlet sequence failed the exchangeability check"};
    std::vector<AtomSet> sets{fixtures::circuit1().atoms(), fixtures::circuit2().atoms(), fixtures::equator().atoms(),
                              fixtures::unknown_qubit().atoms()};
    for (int count : {1, 10, 50, 200, 500})
        for (std::uint64_t seed : {0u, 1u, 2u}) sets.push_back(default_atoms(2, count, seed));
    double lowest = 1e300;
    for (const auto& a : sets) lowest = std::min(lowest, reconstruct(singlet, a).residual);
    return {rmin > 0.0 && lowest >= 0.9 * rmin,
            fmt("oracle r_min %.6f, lowest residual %.6f over %.0f atom sets", rmin, lowest,
                static_cast<double>(sets.size()))};
}

Outcome functoriality() {
    Rng rng(1006);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const int k = 1 + static_cast<int>(rng.index(4));
        const int m = static_cast<int>(rng.index(static_cast<std::size_t>(k) + 1));
        const int n = static_cast<int>(rng.index(static_cast<std::size_t>(m) + 1));
        const Injection tau = random_injection(n, m, rng), ups = random_injection(m, k, rng);
        const Element a =
            Element::from_dense(TensorPower(kQubit, n).algebra(), random_matrix(1 << n, 1 << n, rng));
        const Mat direct = eta_tau(a, kQubit, compose_injections(ups, tau), k).to_dense();
        const Mat stepwise = eta_tau(eta_tau(a, kQubit, tau, m), kQubit, ups, k).to_dense();
        worst = std::max(worst, (direct - stepwise).cwiseAbs().maxCoeff());
    }
    double reduce = 0.0;
    for (int n = 0; n <= 3; ++n) {
        const Element a =
            Element::from_dense(TensorPower(kQubit, n).algebra(), random_matrix(1 << n, 1 << n, rng));
        Injection incl(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) incl[static_cast<std::size_t>(i)] = i;
        for (int m = n; m <= 4; ++m)
            reduce = std::max(reduce, (eta_tau(a, kQubit, incl, m).to_dense() - iota_embed(a, kQubit, m).to_dense())
                                          .cwiseAbs()
                                          .maxCoeff());
        for (const auto& s : all_permutations(n))
            reduce = std::max(reduce, (eta_tau(a, kQubit, s, n).to_dense() - eta_sigma(a, kQubit, s).to_dense())
                                          .cwiseAbs()
                                          .maxCoeff());
    }
    return {worst <= 1e-12 && reduce == 0.0,
            fmt("100 triples: composition error %.2e; inclusion/bijection mismatch %.1e", worst, reduce)};
}

Outcome kolmogorov() {
    Rng rng(1007);
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        const StateVec top = hs_mixed_state(16, rng);
        Mat sym = Mat::Zero(16, 16);
        const auto perms = all_permutations(4);
        for (const auto& p : perms) sym += eta_sigma(top, kQubit, p).to_dense();
        const StateVec s4 = StateVec::from_dense(top.algebra(), sym / static_cast<double>(perms.size()));
        std::vector<StateVec> direct, chained{s4};
        for (int n = 1; n <= 4; ++n) direct.push_back(restrict_state(s4, kQubit, n));
        for (int n = 3; n >= 1; --n) chained.insert(chained.begin(), restrict_state(chained.front(), kQubit, n));
        const ExchSeq a(kQubit, direct), b(kQubit, chained);
        const auto rep = check_exchangeable(a.with_tolerance(1e-12));
        if (!rep.verdict) return {false, "symmetrized family failed its own consistency check"};
        for (int n = 1; n <= 4; ++n) {
            worst = std::max(worst, trace_distance(a.level(n), restrict_state(a.level(4), kQubit, n)));
            worst = std::max(worst, trace_distance(a.level(n), b.level(n)));
        }
    }
    return {worst <= 1e-12, fmt("10 depth-4 families: max lower-level disagreement %.2e", worst)};
}

Outcome classical_side() {
    using namespace classical;
    Rng rng(1008);
    const Space x{"a", "b", "c"};
    auto rd = [&](const Space& s) { return FinDist(s, rng.simplex(s.size())); };
    double law = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const FinDist mu = rd(x);
        law = std::max(law, max_diff(flatten(unit(mu)).probs(), mu.probs()));
        law = std::max(law, max_diff(flatten(Dist<FinDist>{{dirac(x, 0), dirac(x, 1), dirac(x, 2)}, mu.probs()}).probs(),
                                     mu.probs()));
        Dist<Dist<FinDist>> nested;
        for (int i = 0; i < 3; ++i) {
            Dist<FinDist> inner{{rd(x), rd(x)}, rng.simplex(2)};
            nested.support.push_back(inner);
        }
        nested.weights = rng.simplex(3);
        law = std::max(law, max_diff(flatten(join(nested)).probs(),
                                     flatten(fmap([](const Dist<FinDist>& d) { return flatten(d); }, nested)).probs()));
        auto kernel = [&](const Space& s, const Space& t) {
            RMat rows(static_cast<Eigen::Index>(s.size()), static_cast<Eigen::Index>(t.size()));
            for (Eigen::Index i = 0; i < rows.rows(); ++i) {
                const auto p = rng.simplex(t.size());
                for (Eigen::Index j = 0; j < rows.cols(); ++j) rows(i, j) = p[static_cast<std::size_t>(j)];
            }
            return Kernel(s, t, rows);
        };
        const Space y{"p", "q"}, z{"u", "v", "w", "t"};
        const Kernel f = kernel(x, y), g = kernel(y, z), h = kernel(z, x);
        law = std::max(law, (kleisli_compose(kleisli_compose(f, g), h).rows() -
                             kleisli_compose(f, kleisli_compose(g, h)).rows()).cwiseAbs().maxCoeff());
    }
    const auto fx = fixtures::coin(5);
    const double coin_err = max_diff(hs_reconstruct(fx.sequence, fx.grid).weights, fx.weights);
    double agree = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<FinDist> grid{rd(x), rd(x), rd(x), rd(x)};
        const ClassicalExchSeq seq = synthesize(grid, rng.simplex(4), 3);
        agree = std::max(agree, max_diff(hs_reconstruct(seq, grid).weights,
                                         reconstruct(commutative_encoding(seq), commutative_atoms(grid)).mixture.weights()));
    }
    agree = std::max(agree, max_diff(hs_reconstruct(fx.sequence, fx.grid).weights,
                                     reconstruct(commutative_encoding(fx.sequence), commutative_atoms(fx.grid))
                                         .mixture.weights()));
    return {law <= 1e-12 && coin_err <= 1e-8 && agree <= 1e-8,
            fmt("monad laws %.2e, coin weight error %.2e, commutative agreement %.2e", law, coin_err, agree)};
}

Outcome monotonicity_and_predicates(Clock::time_point suite_start) {
    struct Case {
        ExchSeq seq;
        AtomSet atoms;
    };
    std::vector<Case> cases{
        {fixtures::singlet_sequence(), default_atoms(2, 200, 0)},
        {synthesize(fixtures::equator(), 5), default_atoms(2, 30, 1)},
        {synthesize(fixtures::unknown_qubit(), 5), default_atoms(2, 40, 2)},
        {synthesize(fixtures::circuit1(), 5), default_atoms(2, 25, 3)},
        {synthesize(fixtures::circuit1(), 5), fixtures::circuit2().atoms()},
    };
    double drop = 0.0;
    for (const auto& c : cases) {
        double prev = 0.0;
        for (int n = 1; n <= c.seq.depth(); ++n) {
            const double r = reconstruct(c.seq.truncated(n), c.atoms).residual;
            drop = std::max(drop, prev - r);
            prev = r;
        }
    }
    bool predicates = true;
    for (int d : {2, 3}) {
        predicates = predicates && !is_completely_positive(channels::transpose(d));
        predicates = predicates && is_completely_positive(channels::identity(Algebra({d})));
        predicates = predicates && is_completely_positive(channels::depolarizing(d));
        predicates = predicates && is_unital(channels::identity(Algebra({d}), Direction::Heisenberg));
        predicates = predicates && is_unital(channels::depolarizing(d, Direction::Heisenberg));
        predicates = predicates && is_trace_preserving(channels::depolarizing(d));
    }
    const double secs = seconds_since(suite_start);
    return {drop <= 1e-12 && predicates && secs < 300.0,
            fmt("largest residual drop with depth %.2e, elapsed %.1f s", drop, secs) +
                (predicates ? ", predicates correct" : ", predicate mismatch")};
}

}  // namespace

int main() {
    const auto start = Clock::now();
    struct Criterion {
        int id;
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "circuit-1 belief recovered", circuit1_belief},
        {2, "circuit-2 belief recovered", circuit2_belief},
        {3, "synthesize/reconstruct round trip and affinity", roundtrip},
        {4, "cones factor uniquely through the atoms", universal_property},
        {5, "singlet sequence is not representable", non_representability},
        {6, "eta_tau functoriality", functoriality},
        {7, "finite Kolmogorov consistency", kolmogorov},
        {8, "classical monad laws and coin recovery", classical_side},
        {9, "residual monotonicity, channel predicates, runtime", [&] { return monotonicity_and_predicates(start); }},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += o.pass ? 0 : 1;
        std::printf("criterion %d %s: %s (%s)\n", c.id, o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed in %.1f s\n", static_cast<int>(criteria.size()) - failures, criteria.size(),
                seconds_since(start));
    return failures;
}
