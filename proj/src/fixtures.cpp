#include "qdf/fixtures.hpp"

#include <cmath>

namespace qdf::fixtures {

namespace {

StateVec basis_state(int d, int k) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(d);
    v[k] = 1.0;
    return StateVec::pure(v);
}

Mixture uniform(std::vector<StateVec> atoms, const std::string& method) {
    const auto n = atoms.size();
    Algebra base = atoms.front().algebra();
    return Mixture(AtomSet(std::move(base), std::move(atoms), method, 0),
                   std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

}  // namespace

Mixture circuit1() { return uniform({basis_state(2, 0), basis_state(2, 1)}, "circuit1"); }

Mixture circuit2() {
    return Mixture(AtomSet(Algebra({2}), {StateVec::maximally_mixed(Algebra({2}))}, "circuit2", 0), {1.0});
}

Mixture equator(int phases) {
    std::vector<StateVec> atoms;
    for (int j = 0; j < phases; ++j) {
        const double phi = 2.0 * M_PI * j / phases;
        Eigen::VectorXcd v(2);
        v << 1.0, std::polar(1.0, phi);
        atoms.push_back(StateVec::pure(v));
    }
    return uniform(std::move(atoms), "equator");
}

Mixture unknown_qubit(int grid) {
    std::vector<StateVec> atoms;
    for (int a = 0; a < grid; ++a)
        for (int b = 0; b < grid; ++b)
            for (int c = 0; c < grid; ++c) {
                const double r = (a + 0.5) / grid;
                const double z = -1.0 + 2.0 * (b + 0.5) / grid;
                const double theta = 2.0 * M_PI * (c + 0.5) / grid;
                const double len = std::cbrt(r);
                const double s = std::sqrt(1.0 - z * z);
                Mat rho(2, 2);
                rho << 1.0 + len * z, len * s * std::polar(1.0, -theta),
                       len * s * std::polar(1.0, theta), 1.0 - len * z;
                atoms.emplace_back(Algebra({2}), std::vector<Mat>{rho / 2.0});
            }
    return uniform(std::move(atoms), "unknown-qubit");
}

ExchSeq singlet_sequence(double tol) {
    Eigen::VectorXcd psi(4);
    psi << 0.0, M_SQRT1_2, -M_SQRT1_2, 0.0;
    const Algebra base({2});
    return ExchSeq(base, {StateVec::maximally_mixed(base), StateVec::pure(psi)}, tol);
}

Cone circuit_cone(int depth, double tol) {
    const Algebra apex({2});
    std::vector<ChoiMap> channels;
    for (int n = 1; n <= depth; ++n) {
        const auto dim = static_cast<Eigen::Index>(1) << n;
        channels.push_back(ChoiMap::from_action(apex, Algebra({static_cast<int>(dim)}), Direction::Schrodinger,
                                                [dim](const std::vector<Mat>& x) {
                                                    Mat out = Mat::Zero(dim, dim);
                                                    out(0, 0) = x[0](0, 0);
                                                    out(dim - 1, dim - 1) = x[0](1, 1);
                                                    return std::vector<Mat>{out};
                                                }));
    }
    return Cone(apex, Algebra({2}), std::move(channels), tol);
}

Cone measure_prepare_cone(const Algebra& apex, const std::vector<Mat>& povm, const AtomSet& atoms, int depth,
                          double tol) {
    if (povm.size() != atoms.size()) throw ValidationError("need one POVM element per atom");
    if (!apex.is_single_block()) throw ValidationError("measure-and-prepare cones need a single-block apex");
    std::vector<ChoiMap> channels;
    for (int n = 1; n <= depth; ++n) {
        std::vector<Mat> powers;
        for (const auto& a : atoms.atoms()) powers.push_back(tensor_power(a, atoms.base(), n).to_dense());
        const TensorPower tp(atoms.base(), n);
        channels.push_back(ChoiMap::from_action(apex, tp.algebra(), Direction::Schrodinger,
                                                [&](const std::vector<Mat>& x) {
                                                    Mat out = Mat::Zero(powers.front().rows(), powers.front().cols());
                                                    for (std::size_t k = 0; k < povm.size(); ++k)
                                                        out += (povm[k] * x[0]).trace() * powers[k];
                                                    if (atoms.base().is_single_block()) return std::vector<Mat>{out};
                                                    std::vector<Mat> diag;
                                                    for (Eigen::Index i = 0; i < out.rows(); ++i)
                                                        diag.push_back(Mat::Constant(1, 1, out(i, i)));
                                                    return diag;
                                                }));
    }
    return Cone(apex, atoms.base(), std::move(channels), tol);
}

CoinFixture coin(int depth) {
    std::vector<classical::FinDist> grid{classical::coin(0.0), classical::coin(0.5), classical::coin(1.0)};
    std::vector<double> w(3, 1.0 / 3.0);
    auto seq = classical::synthesize(grid, w, depth);
    return CoinFixture{std::move(grid), std::move(w), std::move(seq)};
}

}  // namespace qdf::fixtures
