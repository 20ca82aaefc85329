#include "qdf/exchange.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "qdf/errors.hpp"

namespace qdf {

namespace {

using Index = Eigen::Index;

// Base-p digits of `idx`, most significant first.
void digits_of(std::size_t idx, std::size_t p, std::vector<std::size_t>& out) {
    for (std::size_t i = out.size(); i-- > 0;) {
        out[i] = idx % p;
        idx /= p;
    }
}

std::size_t index_of(const std::vector<std::size_t>& digits, std::size_t p) {
    std::size_t idx = 0;
    for (auto d : digits) idx = idx * p + d;
    return idx;
}

void require_base(const Algebra& base) {
    if (!base.is_single_block() && !base.is_commutative())
        throw ValidationError("tensor powers need a single-block or commutative base algebra");
}

// src[J] = index of the multi-index I with I_i = J_{sigma(i)}.
std::vector<std::size_t> permutation_sources(const Permutation& sigma, std::size_t p) {
    const auto n = static_cast<int>(sigma.size());
    const std::size_t dim = linalg::ipow(p, n);
    std::vector<std::size_t> src(dim);
    std::vector<std::size_t> j(sigma.size()), i(sigma.size());
    for (std::size_t idx = 0; idx < dim; ++idx) {
        digits_of(idx, p, j);
        for (int k = 0; k < n; ++k) i[static_cast<std::size_t>(k)] = j[static_cast<std::size_t>(sigma[static_cast<std::size_t>(k)])];
        src[idx] = index_of(i, p);
    }
    return src;
}

Mat permute_dense(const Mat& a, const Permutation& sigma, std::size_t p) {
    const auto src = permutation_sources(sigma, p);
    const auto dim = static_cast<Index>(src.size());
    Mat out(dim, dim);
    for (Index c = 0; c < dim; ++c)
        for (Index r = 0; r < dim; ++r)
            out(r, c) = a(static_cast<Index>(src[static_cast<std::size_t>(r)]),
                          static_cast<Index>(src[static_cast<std::size_t>(c)]));
    return out;
}

double state_distance(const Mat& a, const Mat& b) { return linalg::trace_norm(a - b); }

}  // namespace

TensorPower::TensorPower(Algebra base, int level) : base_(std::move(base)), level_(level) {
    require_base(base_);
    if (level_ < 0) throw ValidationError("tensor power level must be >= 0");
}

std::size_t TensorPower::dim() const { return linalg::ipow(local_dim(), level_); }

Algebra TensorPower::algebra() const {
    const std::size_t n = dim();
    if (base_.is_single_block()) return Algebra({static_cast<int>(n)});
    return Algebra(std::vector<int>(n, 1));
}

int level_of(const Algebra& base, const Algebra& alg) {
    require_base(base);
    const std::size_t p = base.rep_dim();
    const std::size_t n = alg.rep_dim();
    if (p < 2) throw ValidationError("base algebra must have representation dimension >= 2");
    int level = 0;
    std::size_t dim = 1;
    while (dim < n) {
        dim *= p;
        ++level;
    }
    if (dim != n || TensorPower(base, level).algebra() != alg)
        throw MismatchError("algebra is not a tensor power of the base");
    return level;
}

void validate_permutation(const Permutation& sigma, int n) {
    if (static_cast<int>(sigma.size()) != n)
        throw ValidationError("permutation must have " + std::to_string(n) + " entries");
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int v : sigma) {
        if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)])
            throw ValidationError("invalid permutation");
        seen[static_cast<std::size_t>(v)] = true;
    }
}

void validate_injection(const Injection& tau, int m) {
    if (static_cast<int>(tau.size()) > m) throw ValidationError("injection domain larger than codomain");
    std::vector<bool> seen(static_cast<std::size_t>(std::max(m, 0)), false);
    for (int v : tau) {
        if (v < 0 || v >= m) throw ValidationError("injection value out of range");
        if (seen[static_cast<std::size_t>(v)]) throw ValidationError("map is not injective");
        seen[static_cast<std::size_t>(v)] = true;
    }
}

Permutation inverse(const Permutation& sigma) {
    Permutation inv(sigma.size());
    for (std::size_t i = 0; i < sigma.size(); ++i) inv[static_cast<std::size_t>(sigma[i])] = static_cast<int>(i);
    return inv;
}

Permutation compose(const Permutation& sigma, const Permutation& pi) {
    Permutation out(pi.size());
    for (std::size_t i = 0; i < pi.size(); ++i) out[i] = sigma.at(static_cast<std::size_t>(pi[i]));
    return out;
}

Injection compose_injections(const Injection& upsilon, const Injection& tau) {
    return compose(upsilon, tau);
}

std::vector<Permutation> all_permutations(int n) {
    Permutation p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    std::vector<Permutation> out;
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

std::vector<Permutation> adjacent_transpositions(int n) {
    std::vector<Permutation> out;
    for (int k = 0; k + 1 < n; ++k) {
        Permutation p(static_cast<std::size_t>(n));
        std::iota(p.begin(), p.end(), 0);
        std::swap(p[static_cast<std::size_t>(k)], p[static_cast<std::size_t>(k + 1)]);
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<Injection> all_injections(int n, int m) {
    std::vector<Injection> out;
    if (n > m) return out;
    Injection cur;
    std::vector<bool> used(static_cast<std::size_t>(m), false);
    auto rec = [&](auto&& self) -> void {
        if (static_cast<int>(cur.size()) == n) {
            out.push_back(cur);
            return;
        }
        for (int v = 0; v < m; ++v) {
            if (used[static_cast<std::size_t>(v)]) continue;
            used[static_cast<std::size_t>(v)] = true;
            cur.push_back(v);
            self(self);
            cur.pop_back();
            used[static_cast<std::size_t>(v)] = false;
        }
    };
    rec(rec);
    return out;
}

Element iota_embed(const Element& a, const Algebra& base, int m) {
    const int n = level_of(base, a.algebra());
    if (n > m) throw ValidationError("iota_embed needs n <= m");
    const auto rest = static_cast<Index>(linalg::ipow(base.rep_dim(), m - n));
    const Mat dense = linalg::kron(a.to_dense(), Mat::Identity(rest, rest));
    return Element::from_dense(TensorPower(base, m).algebra(), dense);
}

StateVec restrict_state(const StateVec& rho, const Algebra& base, int n) {
    const int m = level_of(base, rho.algebra());
    if (n > m) throw ValidationError("restrict_state needs n <= m");
    if (n < 0) throw ValidationError("restrict_state needs n >= 0");
    const auto keep = static_cast<Index>(linalg::ipow(base.rep_dim(), n));
    const auto rest = static_cast<Index>(linalg::ipow(base.rep_dim(), m - n));
    const Mat dense = rho.to_dense();
    Mat out = Mat::Zero(keep, keep);
    for (Index i = 0; i < keep; ++i)
        for (Index j = 0; j < keep; ++j)
            out(i, j) = dense.block(i * rest, j * rest, rest, rest).trace();
    return StateVec::from_dense(TensorPower(base, n).algebra(), out);
}

Element eta_sigma(const Element& a, const Algebra& base, const Permutation& sigma) {
    const int n = level_of(base, a.algebra());
    validate_permutation(sigma, n);
    return Element::from_dense(a.algebra(), permute_dense(a.to_dense(), sigma, base.rep_dim()));
}

StateVec eta_sigma(const StateVec& s, const Algebra& base, const Permutation& sigma) {
    const int n = level_of(base, s.algebra());
    validate_permutation(sigma, n);
    return StateVec::from_dense(s.algebra(), permute_dense(s.to_dense(), sigma, base.rep_dim()));
}

Element eta_tau(const Element& a, const Algebra& base, const Injection& tau, int m) {
    const int n = level_of(base, a.algebra());
    if (static_cast<int>(tau.size()) != n)
        throw ValidationError("injection length must equal the element's level");
    validate_injection(tau, m);
    const std::size_t p = base.rep_dim();
    const std::size_t dim_m = linalg::ipow(p, m);
    const std::size_t dim_n = linalg::ipow(p, n);
    const Mat src = a.to_dense();
    Mat out = Mat::Zero(static_cast<Index>(dim_m), static_cast<Index>(dim_m));
    std::vector<std::size_t> jd(static_cast<std::size_t>(m)), kd(static_cast<std::size_t>(m));
    std::vector<std::size_t> id(static_cast<std::size_t>(n)), ipd(static_cast<std::size_t>(n));
    for (std::size_t j = 0; j < dim_m; ++j) {
        digits_of(j, p, jd);
        for (int t = 0; t < n; ++t) id[static_cast<std::size_t>(t)] = jd[static_cast<std::size_t>(tau[static_cast<std::size_t>(t)])];
        const std::size_t row = index_of(id, p);
        // K agrees with J off the image of tau; its image digits range freely.
        for (std::size_t ip = 0; ip < dim_n; ++ip) {
            digits_of(ip, p, ipd);
            kd = jd;
            for (int t = 0; t < n; ++t) kd[static_cast<std::size_t>(tau[static_cast<std::size_t>(t)])] = ipd[static_cast<std::size_t>(t)];
            out(static_cast<Index>(j), static_cast<Index>(index_of(kd, p))) =
                src(static_cast<Index>(row), static_cast<Index>(ip));
        }
    }
    return Element::from_dense(TensorPower(base, m).algebra(), out);
}

StateVec pullback_state(const StateVec& rho_m, const Algebra& base, const Injection& tau) {
    const int m = level_of(base, rho_m.algebra());
    validate_injection(tau, m);
    const int n = static_cast<int>(tau.size());
    const std::size_t p = base.rep_dim();
    const std::size_t dim_m = linalg::ipow(p, m);
    const std::size_t dim_n = linalg::ipow(p, n);
    const Mat src = rho_m.to_dense();
    Mat out = Mat::Zero(static_cast<Index>(dim_n), static_cast<Index>(dim_n));
    std::vector<std::size_t> jd(static_cast<std::size_t>(m)), kd(static_cast<std::size_t>(m));
    std::vector<std::size_t> id(static_cast<std::size_t>(n)), ipd(static_cast<std::size_t>(n));
    for (std::size_t j = 0; j < dim_m; ++j) {
        digits_of(j, p, jd);
        for (int t = 0; t < n; ++t) id[static_cast<std::size_t>(t)] = jd[static_cast<std::size_t>(tau[static_cast<std::size_t>(t)])];
        const auto row = static_cast<Index>(index_of(id, p));
        for (std::size_t ip = 0; ip < dim_n; ++ip) {
            digits_of(ip, p, ipd);
            kd = jd;
            for (int t = 0; t < n; ++t) kd[static_cast<std::size_t>(tau[static_cast<std::size_t>(t)])] = ipd[static_cast<std::size_t>(t)];
            out(row, static_cast<Index>(ip)) +=
                src(static_cast<Index>(j), static_cast<Index>(index_of(kd, p)));
        }
    }
    return StateVec::from_dense(TensorPower(base, n).algebra(), out);
}

StateVec tensor_power(const StateVec& s, const Algebra& base, int n) {
    if (s.algebra() != base) throw MismatchError("tensor_power needs a level-1 state");
    if (n < 0) throw ValidationError("tensor power level must be >= 0");
    Mat acc = Mat::Identity(1, 1);
    const Mat one = s.to_dense();
    for (int i = 0; i < n; ++i) acc = linalg::kron(acc, one);
    return StateVec::from_dense(TensorPower(base, n).algebra(), acc);
}

// ---------------------------------------------------------------------------

ExchSeq::ExchSeq(Algebra base, std::vector<StateVec> states, double tol)
    : base_(std::move(base)), states_(std::move(states)), tol_(tol) {
    require_base(base_);
    if (base_.rep_dim() < 2) throw ValidationError("base algebra must have representation dimension >= 2");
    if (states_.empty()) throw ValidationError("sequence needs at least one level");
    if (!(tol_ > 0.0)) throw ValidationError("tolerance must be positive");
    for (std::size_t k = 0; k < states_.size(); ++k)
        if (states_[k].algebra() != TensorPower(base_, static_cast<int>(k) + 1).algebra())
            throw ValidationError("state at level " + std::to_string(k + 1) +
                                  " is not on the matching tensor power");
}

ExchSeq ExchSeq::truncated(int depth) const {
    if (depth < 1 || depth > this->depth())
        throw ValidationError("cannot truncate a depth-" + std::to_string(this->depth()) +
                              " sequence to depth " + std::to_string(depth));
    return ExchSeq(base_, {states_.begin(), states_.begin() + depth}, tol_);
}

ExchSeq ExchSeq::with_tolerance(double tol) const { return ExchSeq(base_, states_, tol); }

std::optional<LevelReport> ExchangeabilityReport::first_violation() const {
    for (const auto& l : levels)
        if (l.symmetry_violation > tolerance || l.consistency_violation > tolerance) return l;
    return std::nullopt;
}

ExchangeabilityReport check_exchangeable(const ExchSeq& seq) {
    ExchangeabilityReport report;
    report.tolerance = seq.tolerance();
    const std::size_t p = seq.base().rep_dim();
    std::vector<Mat> dense;
    for (const auto& s : seq.states()) dense.push_back(s.to_dense());

    for (int n = 1; n <= seq.depth(); ++n) {
        LevelReport lr;
        lr.level = n;
        const Mat& rho = dense[static_cast<std::size_t>(n - 1)];
        lr.exhaustive = n <= 6 && linalg::ipow(p, n) <= 256;
        const auto perms = lr.exhaustive ? all_permutations(n) : adjacent_transpositions(n);
        lr.worst_permutation = perms.front();
        for (const auto& sigma : perms) {
            const double v = state_distance(rho, permute_dense(rho, sigma, p));
            if (v > lr.symmetry_violation) {
                lr.symmetry_violation = v;
                lr.worst_permutation = sigma;
            }
        }
        for (int m = n + 1; m <= seq.depth(); ++m) {
            const auto r = restrict_state(seq.level(m), seq.base(), n);
            const double v = state_distance(rho, r.to_dense());
            if (lr.worst_consistency_level == 0 || v > lr.consistency_violation) {
                lr.consistency_violation = v;
                lr.worst_consistency_level = m;
            }
        }
        report.levels.push_back(std::move(lr));
    }
    report.verdict = !report.first_violation().has_value();
    return report;
}

ExchSeq iid_extend(const StateVec& s, int depth, double tol) {
    if (depth < 1) throw ValidationError("iid_extend needs depth >= 1");
    std::vector<StateVec> states;
    for (int n = 1; n <= depth; ++n) states.push_back(tensor_power(s, s.algebra(), n));
    return ExchSeq(s.algebra(), std::move(states), tol);
}

}  // namespace qdf
