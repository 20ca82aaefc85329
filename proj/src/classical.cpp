#include "qdf/classical.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qdf/errors.hpp"

namespace qdf::classical {

namespace {

using Index = Eigen::Index;

void check_probs(const std::vector<double>& probs, double tol, const char* what) {
    double sum = 0.0;
    for (double p : probs) {
        if (!(p >= -tol)) throw ValidationError(std::string(what) + ": negative probability");
        sum += p;
    }
    if (std::abs(sum - 1.0) > tol)
        throw ValidationError(std::string(what) + ": probabilities sum to " + std::to_string(sum));
}

std::vector<std::size_t> digits(std::size_t idx, std::size_t k, int n) {
    std::vector<std::size_t> d(static_cast<std::size_t>(n));
    for (int i = n; i-- > 0;) {
        d[static_cast<std::size_t>(i)] = idx % k;
        idx /= k;
    }
    return d;
}

std::size_t index_of(const std::vector<std::size_t>& d, std::size_t k) {
    std::size_t idx = 0;
    for (auto x : d) idx = idx * k + x;
    return idx;
}

std::vector<double> product_probs(const std::vector<double>& p, int n) {
    std::vector<double> acc{1.0};
    for (int i = 0; i < n; ++i) {
        std::vector<double> next;
        next.reserve(acc.size() * p.size());
        for (double a : acc)
            for (double b : p) next.push_back(a * b);
        acc = std::move(next);
    }
    return acc;
}

std::vector<double> select(const std::vector<double>& mu, std::size_t k, int m, const Injection& tau) {
    const int n = static_cast<int>(tau.size());
    std::vector<double> out(linalg::ipow(k, n), 0.0);
    std::vector<std::size_t> sel(tau.size());
    for (std::size_t idx = 0; idx < mu.size(); ++idx) {
        const auto d = digits(idx, k, m);
        for (std::size_t t = 0; t < tau.size(); ++t) sel[t] = d[static_cast<std::size_t>(tau[t])];
        out[index_of(sel, k)] += mu[idx];
    }
    return out;
}

RMat grid_matrix(const std::vector<FinDist>& grid, int depth) {
    if (grid.empty()) throw ValidationError("grid is empty");
    const std::size_t k = grid.front().size();
    Index rows = 0;
    for (int n = 1; n <= depth; ++n) rows += static_cast<Index>(linalg::ipow(k, n));
    RMat a(rows, static_cast<Index>(grid.size()));
    for (std::size_t j = 0; j < grid.size(); ++j) {
        if (grid[j].space() != grid.front().space()) throw MismatchError("grid distributions use different spaces");
        Index pos = 0;
        for (int n = 1; n <= depth; ++n)
            for (double v : product_probs(grid[j].probs(), n)) a(pos++, static_cast<Index>(j)) = v;
    }
    return a;
}

}  // namespace

FinDist::FinDist(Space space, std::vector<double> probs, double tol)
    : space_(std::move(space)), probs_(std::move(probs)) {
    if (space_.empty()) throw ValidationError("distribution needs a nonempty space");
    if (space_.size() != probs_.size())
        throw ValidationError("space and probability vector have different lengths");
    check_probs(probs_, tol, "distribution");
    for (auto& p : probs_) p = std::max(0.0, p);
}

FinDist dirac(const Space& space, std::size_t x) {
    if (x >= space.size()) throw ValidationError("dirac: point outside the space");
    std::vector<double> p(space.size(), 0.0);
    p[x] = 1.0;
    return FinDist(space, std::move(p));
}

FinDist dirac(const Space& space, const std::string& label) {
    const auto it = std::find(space.begin(), space.end(), label);
    if (it == space.end()) throw ValidationError("dirac: unknown label " + label);
    return dirac(space, static_cast<std::size_t>(it - space.begin()));
}

FinDist pushforward(const std::vector<std::size_t>& f, const FinDist& mu, const Space& target) {
    if (f.size() != mu.size()) throw ValidationError("pushforward: map and distribution sizes differ");
    std::vector<double> out(target.size(), 0.0);
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] >= target.size()) throw ValidationError("pushforward: image outside the target");
        out[f[i]] += mu.probs()[i];
    }
    return FinDist(target, std::move(out));
}

FinDist flatten(const Dist<FinDist>& phi) {
    if (phi.support.empty() || phi.support.size() != phi.weights.size())
        throw ValidationError("flatten: malformed outer distribution");
    const Space& space = phi.support.front().space();
    std::vector<double> out(space.size(), 0.0);
    for (std::size_t i = 0; i < phi.support.size(); ++i) {
        if (phi.support[i].space() != space) throw MismatchError("flatten: inner spaces differ");
        for (std::size_t j = 0; j < out.size(); ++j) out[j] += phi.weights[i] * phi.support[i].probs()[j];
    }
    return FinDist(space, std::move(out));
}

Kernel::Kernel(Space source, Space target, RMat rows, double tol)
    : source_(std::move(source)), target_(std::move(target)), rows_(std::move(rows)) {
    if (rows_.rows() != static_cast<Index>(source_.size()) || rows_.cols() != static_cast<Index>(target_.size()))
        throw ValidationError("kernel matrix has the wrong shape");
    for (Index i = 0; i < rows_.rows(); ++i) {
        std::vector<double> r(static_cast<std::size_t>(rows_.cols()));
        for (Index j = 0; j < rows_.cols(); ++j) r[static_cast<std::size_t>(j)] = rows_(i, j);
        check_probs(r, tol, "kernel row");
    }
}

FinDist Kernel::row(std::size_t i) const {
    std::vector<double> r(static_cast<std::size_t>(rows_.cols()));
    for (Index j = 0; j < rows_.cols(); ++j) r[static_cast<std::size_t>(j)] = rows_(static_cast<Index>(i), j);
    return FinDist(target_, std::move(r));
}

Kernel identity_kernel(const Space& space) {
    return Kernel(space, space, RMat::Identity(static_cast<Index>(space.size()), static_cast<Index>(space.size())));
}

Kernel kleisli_compose(const Kernel& f, const Kernel& g) {
    if (f.target() != g.source()) throw MismatchError("kleisli_compose: f.target != g.source");
    return Kernel(f.source(), g.target(), f.rows() * g.rows());
}

FinDist bind(const FinDist& mu, const Kernel& g) {
    if (mu.space() != g.source()) throw MismatchError("bind: distribution is not on the kernel's source");
    std::vector<double> out(g.target().size(), 0.0);
    for (std::size_t i = 0; i < mu.size(); ++i)
        for (std::size_t j = 0; j < out.size(); ++j)
            out[j] += mu.probs()[i] * g.rows()(static_cast<Index>(i), static_cast<Index>(j));
    return FinDist(g.target(), std::move(out));
}

Space tuple_space(const Space& space, int n) {
    const bool single = std::all_of(space.begin(), space.end(), [](const auto& s) { return s.size() == 1; });
    Space out;
    const std::size_t total = linalg::ipow(space.size(), n);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::string label;
        const auto d = digits(idx, space.size(), n);
        for (std::size_t i = 0; i < d.size(); ++i) {
            if (!single && i > 0) label += ',';
            label += space[d[i]];
        }
        out.push_back(std::move(label));
    }
    return out;
}

FinDist product_measure(const FinDist& mu, int n) {
    if (n < 1) throw ValidationError("product_measure needs n >= 1");
    return FinDist(tuple_space(mu.space(), n), product_probs(mu.probs(), n));
}

FinDist select_coordinates(const FinDist& mu_m, const Space& space, int m, const Injection& tau) {
    validate_injection(tau, m);
    if (mu_m.size() != linalg::ipow(space.size(), m)) throw MismatchError("measure is not on X^m");
    return FinDist(tuple_space(space, static_cast<int>(tau.size())),
                   select(mu_m.probs(), space.size(), m, tau));
}

// ---------------------------------------------------------------------------

ClassicalExchSeq::ClassicalExchSeq(Space space, std::vector<std::vector<double>> levels, double tol)
    : space_(std::move(space)), levels_(std::move(levels)), tol_(tol) {
    if (space_.empty()) throw ValidationError("sequence needs a nonempty space");
    if (levels_.empty()) throw ValidationError("sequence needs at least one level");
    if (!(tol_ > 0.0)) throw ValidationError("tolerance must be positive");
    for (std::size_t k = 0; k < levels_.size(); ++k) {
        if (levels_[k].size() != linalg::ipow(space_.size(), static_cast<int>(k) + 1))
            throw ValidationError("level " + std::to_string(k + 1) + " has the wrong length");
        check_probs(levels_[k], 1e-9, "sequence level");
    }
}

FinDist ClassicalExchSeq::level(int n) const {
    return FinDist(tuple_space(space_, n), levels_.at(static_cast<std::size_t>(n - 1)));
}

ClassicalExchSeq ClassicalExchSeq::truncated(int depth) const {
    if (depth < 1 || depth > this->depth()) throw ValidationError("truncation depth out of range");
    return ClassicalExchSeq(space_, {levels_.begin(), levels_.begin() + depth}, tol_);
}

ExchangeabilityReport check_exchangeable(const ClassicalExchSeq& seq) {
    ExchangeabilityReport rep;
    rep.tolerance = seq.tolerance();
    const std::size_t k = seq.space().size();
    for (int n = 1; n <= seq.depth(); ++n) {
        LevelReport lr;
        lr.level = n;
        const auto& mu = seq.levels()[static_cast<std::size_t>(n - 1)];
        lr.exhaustive = n <= 6;
        const auto perms = lr.exhaustive ? all_permutations(n) : adjacent_transpositions(n);
        lr.worst_permutation = perms.front();
        for (const auto& sigma : perms) {
            // (eta_sigma)_* mu: coordinate i moves to slot sigma[i].
            std::vector<double> moved(mu.size(), 0.0);
            std::vector<std::size_t> out(static_cast<std::size_t>(n));
            for (std::size_t idx = 0; idx < mu.size(); ++idx) {
                const auto d = digits(idx, k, n);
                for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(sigma[static_cast<std::size_t>(i)])] = d[static_cast<std::size_t>(i)];
                moved[index_of(out, k)] += mu[idx];
            }
            double v = 0.0;
            for (std::size_t i = 0; i < mu.size(); ++i) v += std::abs(mu[i] - moved[i]);
            if (v > lr.symmetry_violation) {
                lr.symmetry_violation = v;
                lr.worst_permutation = sigma;
            }
        }
        Injection inc(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) inc[static_cast<std::size_t>(i)] = i;
        for (int m = n + 1; m <= seq.depth(); ++m) {
            const auto marg = select(seq.levels()[static_cast<std::size_t>(m - 1)], k, m, inc);
            double v = 0.0;
            for (std::size_t i = 0; i < mu.size(); ++i) v += std::abs(mu[i] - marg[i]);
            if (lr.worst_consistency_level == 0 || v > lr.consistency_violation) {
                lr.consistency_violation = v;
                lr.worst_consistency_level = m;
            }
        }
        rep.levels.push_back(std::move(lr));
    }
    rep.verdict = !rep.first_violation().has_value();
    return rep;
}

ClassicalExchSeq synthesize(const std::vector<FinDist>& grid, const std::vector<double>& weights, int depth,
                            double tol) {
    if (grid.empty() || grid.size() != weights.size())
        throw ValidationError("synthesize: grid and weights must be nonempty and of equal length");
    check_probs(weights, 1e-9, "mixture weights");
    const RMat a = grid_matrix(grid, depth);
    const RVec w = Eigen::Map<const RVec>(weights.data(), static_cast<Index>(weights.size()));
    const RVec v = a * w;
    std::vector<std::vector<double>> levels;
    Index pos = 0;
    for (int n = 1; n <= depth; ++n) {
        const auto len = static_cast<Index>(linalg::ipow(grid.front().size(), n));
        levels.emplace_back(v.data() + pos, v.data() + pos + len);
        pos += len;
    }
    return ClassicalExchSeq(grid.front().space(), std::move(levels), tol);
}

HsResult hs_reconstruct(const ClassicalExchSeq& seq, const std::vector<FinDist>& grid, const lsq::Options& opts) {
    if (grid.empty()) throw ValidationError("grid is empty");
    if (grid.front().space() != seq.space()) throw MismatchError("grid and sequence use different spaces");
    auto report = check_exchangeable(seq);
    if (!report.verdict) throw NotExchangeable(std::move(report));
    const RMat a = grid_matrix(grid, seq.depth());
    RVec b(a.rows());
    Index pos = 0;
    for (const auto& lvl : seq.levels())
        for (double v : lvl) b[pos++] = v;
    const auto res = lsq::solve(a, b, opts);
    HsResult out;
    out.weights.assign(res.weights.data(), res.weights.data() + res.weights.size());
    for (auto& w : out.weights) w = std::max(0.0, w);
    out.residual = res.residual;
    out.rank = res.rank;
    out.degenerate = res.degenerate;
    return out;
}

int grid_moment_rank(const std::vector<FinDist>& grid, int depth) {
    const RMat a = grid_matrix(grid, depth);
    RMat c(a.rows() + 1, a.cols());
    c.topRows(a.rows()) = a;
    c.row(a.rows()).setOnes();
    return lsq::numerical_rank(c);
}

ExchSeq commutative_encoding(const ClassicalExchSeq& seq) {
    const Algebra base(std::vector<int>(seq.space().size(), 1));
    std::vector<StateVec> states;
    for (const auto& lvl : seq.levels()) states.push_back(StateVec::from_probabilities(lvl));
    return ExchSeq(base, std::move(states), seq.tolerance());
}

AtomSet commutative_atoms(const std::vector<FinDist>& grid) {
    if (grid.empty()) throw ValidationError("grid is empty");
    std::vector<StateVec> atoms;
    for (const auto& p : grid) atoms.push_back(StateVec::from_probabilities(p.probs()));
    Algebra base = atoms.front().algebra();
    return AtomSet(std::move(base), std::move(atoms), "classical-grid", 0);
}

FinDist coin(double bias) { return FinDist({"H", "T"}, {bias, 1.0 - bias}); }

}  // namespace qdf::classical
