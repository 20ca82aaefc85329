#include "qdf/definetti.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qdf/random.hpp"

namespace qdf {

namespace {

using Index = Eigen::Index;

RVec hermitian_coords(const std::vector<Mat>& blocks) {
    Index n = 0;
    for (const auto& b : blocks) n += b.rows() * b.rows();
    RVec out(n);
    Index pos = 0;
    for (const auto& b : blocks) linalg::append_hermitian_coords(b, out, pos);
    return out;
}

Index level_rows(const Algebra& base, int n) {
    return static_cast<Index>(TensorPower(base, n).algebra().dimension());
}

// Dense tensor powers sigma^{(x)n}, n = 1..depth.
std::vector<Mat> dense_powers(const StateVec& s, int depth) {
    std::vector<Mat> out;
    Mat acc = Mat::Identity(1, 1);
    const Mat one = s.to_dense();
    for (int n = 1; n <= depth; ++n) {
        acc = linalg::kron(acc, one);
        out.push_back(acc);
    }
    return out;
}

Tolerances loose(double tol) { return Tolerances{std::max(1e-9, tol), std::max(1e-9, tol)}; }

}  // namespace

// ---------------------------------------------------------------------------

AtomSet::AtomSet(Algebra base, std::vector<StateVec> atoms, std::string method, std::uint64_t seed)
    : base_(std::move(base)), atoms_(std::move(atoms)), method_(std::move(method)), seed_(seed) {
    TensorPower(base_, 1);  // validates the base kind
    if (atoms_.empty()) throw ValidationError("atom set is empty");
    for (std::size_t k = 0; k < atoms_.size(); ++k)
        if (atoms_[k].algebra() != base_)
            throw ValidationError("atom " + std::to_string(k) + " is not a state on the base algebra");
    for (std::size_t i = 0; i < atoms_.size(); ++i)
        for (std::size_t j = i + 1; j < atoms_.size(); ++j)
            if (trace_distance(atoms_[i], atoms_[j]) <= 1e-6)
                throw ValidationError("atoms " + std::to_string(i) + " and " + std::to_string(j) +
                                      " coincide");
}

AtomSet AtomSet::permuted(const std::vector<std::size_t>& order) const {
    if (order.size() != atoms_.size()) throw ValidationError("order has the wrong length");
    std::vector<StateVec> out;
    for (auto i : order) out.push_back(atoms_.at(i));
    return AtomSet(base_, std::move(out), method_, seed_);
}

AtomSet explicit_atoms(std::vector<StateVec> atoms) {
    if (atoms.empty()) throw ValidationError("atom set is empty");
    Algebra base = atoms.front().algebra();
    return AtomSet(std::move(base), std::move(atoms), "explicit", 0);
}

AtomSet default_atoms(int d, int count, std::uint64_t seed) {
    if (count < 1) throw ValidationError("atom count must be >= 1");
    if (d < 2) throw ValidationError("atom dimension must be >= 2");
    Rng rng(seed);
    const int pure = static_cast<int>(std::lround(0.7 * count));
    const int mixed = count - pure;
    const bool antithetic = d == 2;
    const Mat id = Mat::Identity(d, d);
    std::vector<StateVec> atoms;
    auto draw = [&](int how_many, bool is_pure) {
        for (int k = 0; k < how_many;) {
            StateVec s = is_pure ? haar_pure_state(d, rng) : hs_mixed_state(d, rng);
            if (antithetic && k + 1 < how_many) {
                StateVec anti(Algebra({d}), {id - s.block(0)});
                atoms.push_back(std::move(s));
                atoms.push_back(std::move(anti));
                k += 2;
            } else {
                atoms.push_back(std::move(s));
                ++k;
            }
        }
    };
    draw(pure, true);
    draw(mixed, false);
    std::string method = "haar-pure+hs-mixed(70/30)";
    if (antithetic) method += ",antipodal-pairs";
    return AtomSet(Algebra({d}), std::move(atoms), method, seed);
}

// ---------------------------------------------------------------------------

Mixture::Mixture(AtomSet atoms, std::vector<double> weights, double tol)
    : atoms_(std::move(atoms)), weights_(std::move(weights)) {
    if (weights_.size() != atoms_.size())
        throw ValidationError("mixture has " + std::to_string(weights_.size()) + " weights for " +
                              std::to_string(atoms_.size()) + " atoms");
    double sum = 0.0;
    for (double w : weights_) {
        if (!(w >= 0.0)) throw ValidationError("mixture weights must be nonnegative");
        sum += w;
    }
    if (std::abs(sum - 1.0) > tol)
        throw ValidationError("mixture weights sum to " + std::to_string(sum));
}

StateVec Mixture::barycenter() const {
    Mat acc = Mat::Zero(static_cast<Index>(atoms_.base().rep_dim()),
                        static_cast<Index>(atoms_.base().rep_dim()));
    for (std::size_t k = 0; k < weights_.size(); ++k) acc += weights_[k] * atoms_.atoms()[k].to_dense();
    return StateVec::from_dense(atoms_.base(), acc);
}

ExchSeq synthesize(const Mixture& mix, int depth, double tol) {
    if (depth < 1) throw ValidationError("synthesize needs depth >= 1");
    const Algebra& base = mix.atoms().base();
    std::vector<Mat> acc;
    for (std::size_t k = 0; k < mix.weights().size(); ++k) {
        const double w = mix.weights()[k];
        const auto powers = dense_powers(mix.atoms().atoms()[k], depth);
        if (acc.empty())
            for (const auto& p : powers) acc.push_back(Mat::Zero(p.rows(), p.cols()));
        if (w == 0.0) continue;
        for (int n = 0; n < depth; ++n) acc[static_cast<std::size_t>(n)] += w * powers[static_cast<std::size_t>(n)];
    }
    std::vector<StateVec> states;
    for (int n = 1; n <= depth; ++n)
        states.push_back(StateVec::from_dense(TensorPower(base, n).algebra(), acc[static_cast<std::size_t>(n - 1)]));
    return ExchSeq(base, std::move(states), tol);
}

RMat moment_matrix(const AtomSet& atoms, int depth) {
    if (depth < 1) throw ValidationError("depth must be >= 1");
    Index rows = 0;
    for (int n = 1; n <= depth; ++n) rows += level_rows(atoms.base(), n);
    RMat a(rows, static_cast<Index>(atoms.size()));
    for (std::size_t k = 0; k < atoms.size(); ++k) {
        const auto powers = dense_powers(atoms.atoms()[k], depth);
        Index pos = 0;
        RVec col(rows);
        for (int n = 1; n <= depth; ++n) {
            const auto alg = TensorPower(atoms.base(), n).algebra();
            const auto blocks = Element::from_dense(alg, powers[static_cast<std::size_t>(n - 1)]).mats();
            for (const auto& b : blocks) linalg::append_hermitian_coords(b, col, pos);
        }
        a.col(static_cast<Index>(k)) = col;
    }
    return a;
}

RVec moment_vector(const ExchSeq& seq, int depth) {
    if (depth < 1 || depth > seq.depth()) throw ValidationError("depth out of range");
    std::vector<RVec> parts;
    Index rows = 0;
    for (int n = 1; n <= depth; ++n) {
        parts.push_back(hermitian_coords(seq.level(n).dens()));
        rows += parts.back().size();
    }
    RVec out(rows);
    Index pos = 0;
    for (const auto& p : parts) {
        out.segment(pos, p.size()) = p;
        pos += p.size();
    }
    return out;
}

int moment_rank(const AtomSet& atoms, int depth, double tol) {
    const RMat a = moment_matrix(atoms, depth);
    RMat c(a.rows() + 1, a.cols());
    c.topRows(a.rows()) = a;
    c.row(a.rows()).setOnes();
    return lsq::numerical_rank(c, tol);
}

bool moment_independent(const AtomSet& atoms, int depth, double tol) {
    return moment_rank(atoms, depth, tol) == static_cast<int>(atoms.size());
}

NotExchangeable::NotExchangeable(ExchangeabilityReport report)
    : Error("sequence is not exchangeable within tolerance"), report_(std::move(report)) {}

Reconstruction reconstruct(const ExchSeq& seq, const AtomSet& atoms, const ReconstructOptions& opts) {
    if (atoms.base() != seq.base()) throw MismatchError("atoms and sequence use different base algebras");
    if (opts.require_exchangeable) {
        auto report = check_exchangeable(seq);
        if (!report.verdict) throw NotExchangeable(std::move(report));
    }
    const int depth = seq.depth();
    const RMat a = moment_matrix(atoms, depth);
    const RVec b = moment_vector(seq, depth);
    const auto res = lsq::solve(a, b, opts.solver);

    std::vector<double> w(res.weights.data(), res.weights.data() + res.weights.size());
    for (auto& x : w) x = std::max(0.0, x);
    const RVec err = a * res.weights - b;
    std::vector<double> per_level;
    Index pos = 0;
    for (int n = 1; n <= depth; ++n) {
        const Index len = level_rows(seq.base(), n);
        per_level.push_back(err.segment(pos, len).norm());
        pos += len;
    }
    return Reconstruction{Mixture(atoms, std::move(w)), res.residual, std::move(per_level), res.rank,
                          res.degenerate, res.raw_sum};
}

// ---------------------------------------------------------------------------

Cone::Cone(Algebra apex, Algebra base, std::vector<ChoiMap> channels, double tol)
    : apex_(std::move(apex)), base_(std::move(base)), channels_(std::move(channels)), tol_(tol) {
    if (!(tol_ > 0.0)) throw ValidationError("cone tolerance must be positive");
    if (channels_.empty()) throw ValidationError("cone needs at least one level");
    const double ctol = std::max(1e-9, tol_);
    for (std::size_t k = 0; k < channels_.size(); ++k) {
        const auto& ch = channels_[k];
        const std::string lvl = "cone channel " + std::to_string(k + 1);
        if (ch.direction() != Direction::Schrodinger) throw ValidationError(lvl + " must be a Schrodinger map");
        if (ch.source() != apex_) throw ValidationError(lvl + " does not start at the apex");
        if (ch.target() != TensorPower(base_, static_cast<int>(k) + 1).algebra())
            throw ValidationError(lvl + " does not land on the matching tensor power");
        if (!is_completely_positive(ch, ctol)) throw ValidationError(lvl + " is not completely positive");
        if (!is_trace_preserving(ch, ctol)) throw ValidationError(lvl + " is not trace preserving");
    }
}

ExchSeq Cone::sequence_at(const StateVec& kappa) const {
    std::vector<StateVec> states;
    for (const auto& ch : channels_) states.push_back(apply(ch, kappa, loose(tol_)));
    return ExchSeq(base_, std::move(states), tol_);
}

std::vector<StateVec> probe_states(const Algebra& apex) {
    const auto dim = static_cast<Index>(apex.rep_dim());
    const Mat mixed = Mat::Identity(dim, dim) / static_cast<double>(dim);
    const double c = 1.0 / (2.0 * static_cast<double>(dim));
    std::vector<StateVec> out;
    for (std::size_t b = 0; b < apex.block_count(); ++b) {
        const auto off = static_cast<Index>(apex.offset(b));
        const int d = apex.blocks()[b];
        for (int j = 0; j < d; ++j) {
            Mat m = Mat::Zero(dim, dim);
            m(off + j, off + j) = 1.0;
            out.push_back(StateVec::from_dense(apex, m));
        }
        for (int j = 0; j < d; ++j)
            for (int k = j + 1; k < d; ++k) {
                Mat re = mixed;
                re(off + j, off + k) += c;
                re(off + k, off + j) += c;
                out.push_back(StateVec::from_dense(apex, re));
                Mat im = mixed;
                im(off + j, off + k) += cplx(0.0, c);
                im(off + k, off + j) -= cplx(0.0, c);
                out.push_back(StateVec::from_dense(apex, im));
            }
    }
    return out;
}

ConeLawReport check_cone(const Cone& cone) {
    ConeLawReport rep;
    const int depth = cone.depth();
    const auto probes = probe_states(cone.apex());
    const Tolerances tol = loose(cone.tolerance());
    for (const auto& kappa : probes) {
        std::vector<StateVec> out;
        for (const auto& ch : cone.channels()) out.push_back(apply(ch, kappa, tol));
        for (int m = 1; m <= depth; ++m)
            for (int n = 1; n <= m; ++n) {
                std::vector<Injection> taus;
                if (depth <= 6) {
                    taus = all_injections(n, m);
                } else if (n == m) {
                    taus = adjacent_transpositions(m);
                } else {
                    Injection inc(static_cast<std::size_t>(n));
                    for (int i = 0; i < n; ++i) inc[static_cast<std::size_t>(i)] = i;
                    taus.push_back(inc);
                }
                for (const auto& tau : taus) {
                    const auto pulled = pullback_state(out[static_cast<std::size_t>(m - 1)], cone.base(), tau);
                    const double v = linalg::trace_norm(pulled.to_dense() -
                                                        out[static_cast<std::size_t>(n - 1)].to_dense());
                    ++rep.injections_checked;
                    if (v > rep.max_violation || rep.worst_tau.empty()) {
                        rep.max_violation = std::max(rep.max_violation, v);
                        rep.worst_n = n;
                        rep.worst_m = m;
                        rep.worst_tau = tau;
                    }
                }
            }
    }
    rep.verdict = rep.max_violation <= cone.tolerance();
    return rep;
}

ConeLawViolation::ConeLawViolation(ConeLawReport report)
    : Error("cone law violated for an injection " + std::to_string(report.worst_n) + " -> " +
            std::to_string(report.worst_m)),
      report_(std::move(report)) {}

NotRepresentable::NotRepresentable(std::size_t probe, double residual)
    : Error("probe " + std::to_string(probe) + " is not representable over the atoms (residual " +
            std::to_string(residual) + ")"),
      probe_(probe), residual_(residual) {}

MediatingMap::MediatingMap(Algebra apex, AtomSet atoms, std::vector<StateVec> probes, RMat weights)
    : apex_(std::move(apex)), atoms_(std::move(atoms)), probes_(std::move(probes)),
      weights_(std::move(weights)) {
    const auto n = static_cast<Index>(apex_.dimension());
    if (static_cast<Index>(probes_.size()) != n)
        throw ValidationError("mediating map needs one probe per real dimension of the apex");
    if (weights_.rows() != n || weights_.cols() != static_cast<Index>(atoms_.size()))
        throw ValidationError("mediating map weight matrix has the wrong shape");
    RMat p(n, n);
    for (Index i = 0; i < n; ++i) {
        if (probes_[static_cast<std::size_t>(i)].algebra() != apex_)
            throw ValidationError("probe is not a state on the apex");
        p.col(i) = hermitian_coords(probes_[static_cast<std::size_t>(i)].dens());
    }
    Eigen::FullPivLU<RMat> lu(p);
    if (!lu.isInvertible()) throw ValidationError("probe states do not span the apex");
    probe_inverse_ = lu.inverse();
}

RVec MediatingMap::weights_for(const StateVec& kappa) const {
    if (kappa.algebra() != apex_) throw MismatchError("state is not on the apex algebra");
    const RVec coeffs = probe_inverse_ * hermitian_coords(kappa.dens());
    return weights_.transpose() * coeffs;
}

Mixture MediatingMap::operator()(const StateVec& kappa) const {
    const RVec w = weights_for(kappa);
    std::vector<double> out(w.data(), w.data() + w.size());
    for (auto& x : out)
        if (x < 0.0 && x > -1e-10) x = 0.0;
    return Mixture(atoms_, std::move(out), 1e-8);
}

MediatingMap mediating_map(const Cone& cone, const AtomSet& atoms, const MediatingOptions& opts) {
    if (atoms.base() != cone.base()) throw MismatchError("atoms and cone use different base algebras");
    auto law = check_cone(cone);
    if (!law.verdict) throw ConeLawViolation(std::move(law));
    auto probes = probe_states(cone.apex());
    RMat weights(static_cast<Index>(probes.size()), static_cast<Index>(atoms.size()));
    for (std::size_t i = 0; i < probes.size(); ++i) {
        const auto rec = reconstruct(cone.sequence_at(probes[i]), atoms, opts.reconstruct);
        if (rec.residual > opts.max_residual) throw NotRepresentable(i, rec.residual);
        for (std::size_t k = 0; k < atoms.size(); ++k)
            weights(static_cast<Index>(i), static_cast<Index>(k)) = rec.mixture.weights()[k];
    }
    return MediatingMap(cone.apex(), atoms, std::move(probes), std::move(weights));
}

double factorization_error(const Cone& cone, const MediatingMap& med) {
    if (med.apex() != cone.apex() || med.atoms().base() != cone.base())
        throw MismatchError("mediating map does not match the cone");
    const int depth = cone.depth();
    std::vector<std::vector<Mat>> powers;
    for (const auto& s : med.atoms().atoms()) powers.push_back(dense_powers(s, depth));
    double worst = 0.0;
    const Tolerances tol = loose(cone.tolerance());
    for (std::size_t i = 0; i < med.probes().size(); ++i) {
        const auto& kappa = med.probes()[i];
        const RVec w = med.weights().row(static_cast<Index>(i)).transpose();
        for (int n = 1; n <= depth; ++n) {
            Mat fit = Mat::Zero(powers[0][static_cast<std::size_t>(n - 1)].rows(),
                                powers[0][static_cast<std::size_t>(n - 1)].cols());
            for (std::size_t k = 0; k < powers.size(); ++k)
                fit += w[static_cast<Index>(k)] * powers[k][static_cast<std::size_t>(n - 1)];
            const Mat target = apply(cone.channels()[static_cast<std::size_t>(n - 1)], kappa, tol).to_dense();
            worst = std::max(worst, linalg::trace_norm(target - fit));
        }
    }
    return worst;
}

namespace {

void uniqueness_for(const RMat& a, const RVec& b, const std::vector<bool>& ident, int trials, Rng& rng,
                    double& worst) {
    lsq::Options opts;
    opts.canonical_min_norm = false;
    std::vector<RVec> sols;
    for (int t = 0; t < trials; ++t) {
        const auto start = rng.simplex(static_cast<std::size_t>(a.cols()));
        const RVec s = Eigen::Map<const RVec>(start.data(), static_cast<Index>(start.size()));
        sols.push_back(lsq::solve(a, b, opts, &s).weights);
    }
    for (std::size_t i = 0; i < sols.size(); ++i)
        for (std::size_t j = i + 1; j < sols.size(); ++j)
            for (Index k = 0; k < a.cols(); ++k)
                if (ident[static_cast<std::size_t>(k)])
                    worst = std::max(worst, std::abs(sols[i][k] - sols[j][k]));
}

UniquenessReport uniqueness_skeleton(const RMat& a, int trials) {
    UniquenessReport rep;
    rep.trials = trials;
    rep.atom_count = static_cast<std::size_t>(a.cols());
    RMat c(a.rows() + 1, a.cols());
    c.topRows(a.rows()) = a;
    c.row(a.rows()).setOnes();
    rep.rank = lsq::numerical_rank(c);
    rep.degenerate = rep.rank < a.cols();
    const auto ident = lsq::identifiable_columns(a);
    for (std::size_t k = 0; k < ident.size(); ++k)
        if (ident[k]) rep.identifiable.push_back(k);
    return rep;
}

}  // namespace

UniquenessReport uniqueness_check(const ExchSeq& seq, const AtomSet& atoms, int trials, std::uint64_t seed) {
    if (trials < 1) throw ValidationError("uniqueness_check needs at least one trial");
    if (atoms.base() != seq.base()) throw MismatchError("atoms and sequence use different base algebras");
    const RMat a = moment_matrix(atoms, seq.depth());
    auto rep = uniqueness_skeleton(a, trials);
    const auto ident = lsq::identifiable_columns(a);
    Rng rng(seed);
    uniqueness_for(a, moment_vector(seq, seq.depth()), ident, trials, rng, rep.max_pairwise_distance);
    return rep;
}

UniquenessReport uniqueness_check(const Cone& cone, const AtomSet& atoms, int trials, std::uint64_t seed) {
    if (trials < 1) throw ValidationError("uniqueness_check needs at least one trial");
    if (atoms.base() != cone.base()) throw MismatchError("atoms and cone use different base algebras");
    const RMat a = moment_matrix(atoms, cone.depth());
    auto rep = uniqueness_skeleton(a, trials);
    const auto ident = lsq::identifiable_columns(a);
    Rng rng(seed);
    for (const auto& kappa : probe_states(cone.apex()))
        uniqueness_for(a, moment_vector(cone.sequence_at(kappa), cone.depth()), ident, trials, rng,
                       rep.max_pairwise_distance);
    return rep;
}

Cone constant_cone(const Algebra& apex, const ExchSeq& seq) {
    std::vector<ChoiMap> channels;
    for (int n = 1; n <= seq.depth(); ++n) {
        const auto alg = seq.level(n).algebra();
        const auto rho = seq.level(n).dens();
        channels.push_back(ChoiMap::from_action(apex, alg, Direction::Schrodinger,
                                                [rho](const std::vector<Mat>& x) {
                                                    cplx tr = 0.0;
                                                    for (const auto& b : x) tr += b.trace();
                                                    std::vector<Mat> out;
                                                    for (const auto& r : rho) out.push_back(tr * r);
                                                    return out;
                                                }));
    }
    return Cone(apex, seq.base(), std::move(channels), seq.tolerance());
}

}  // namespace qdf
