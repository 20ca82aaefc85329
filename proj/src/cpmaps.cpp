#include "qdf/cpmaps.hpp"

#include <string>

#include "qdf/errors.hpp"

namespace qdf {

namespace {

// Block index of each representation-space coordinate.
std::vector<std::size_t> block_of(const Algebra& alg) {
    std::vector<std::size_t> out;
    for (std::size_t b = 0; b < alg.block_count(); ++b)
        out.insert(out.end(), static_cast<std::size_t>(alg.blocks()[b]), b);
    return out;
}

void require_same(const Algebra& a, const Algebra& b, const char* what) {
    if (a != b) throw MismatchError(what);
}

}  // namespace

ChoiMap::ChoiMap(Algebra source, Algebra target, Direction direction, Mat choi)
    : source_(std::move(source)), target_(std::move(target)), direction_(direction),
      choi_(std::move(choi)) {
    const auto p = static_cast<Eigen::Index>(source_.rep_dim());
    const auto q = static_cast<Eigen::Index>(target_.rep_dim());
    if (choi_.rows() != p * q || choi_.cols() != p * q)
        throw ValidationError("Choi matrix must be " + std::to_string(p * q) + "x" +
                              std::to_string(p * q));
    const auto sb = block_of(source_);
    const auto tb = block_of(target_);
    for (Eigen::Index i = 0; i < p * q; ++i)
        for (Eigen::Index j = 0; j < p * q; ++j) {
            const bool keep = sb[static_cast<std::size_t>(i / q)] == sb[static_cast<std::size_t>(j / q)] &&
                              tb[static_cast<std::size_t>(i % q)] == tb[static_cast<std::size_t>(j % q)];
            if (!keep) choi_(i, j) = 0.0;
        }
}

ChoiMap ChoiMap::from_action(const Algebra& source, const Algebra& target, Direction direction,
                             const BlockAction& action) {
    const auto q = static_cast<Eigen::Index>(target.rep_dim());
    const auto p = static_cast<Eigen::Index>(source.rep_dim());
    Mat choi = Mat::Zero(p * q, p * q);
    std::vector<Mat> input = Element::zero(source).mats();
    for (std::size_t s = 0; s < source.block_count(); ++s) {
        const auto d = source.blocks()[s];
        const auto off = static_cast<Eigen::Index>(source.offset(s));
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) {
                input[s](r, c) = 1.0;
                const auto out = action(input);
                input[s](r, c) = 0.0;
                if (out.size() != target.block_count())
                    throw ValidationError("action returned the wrong number of blocks");
                for (std::size_t k = 0; k < out.size(); ++k) {
                    const auto e = target.blocks()[k];
                    if (out[k].rows() != e || out[k].cols() != e)
                        throw ValidationError("action returned a block of the wrong size");
                    const auto toff = static_cast<Eigen::Index>(target.offset(k));
                    choi.block((off + r) * q + toff, (off + c) * q + toff, e, e) = out[k];
                }
            }
    }
    return ChoiMap(source, target, direction, std::move(choi));
}

std::vector<Mat> ChoiMap::act(const std::vector<Mat>& blocks) const {
    if (blocks.size() != source_.block_count())
        throw MismatchError("input has the wrong number of blocks");
    const auto q = static_cast<Eigen::Index>(target_.rep_dim());
    std::vector<Mat> out = Element::zero(target_).mats();
    for (std::size_t s = 0; s < source_.block_count(); ++s) {
        const auto d = source_.blocks()[s];
        const auto off = static_cast<Eigen::Index>(source_.offset(s));
        if (blocks[s].rows() != d || blocks[s].cols() != d)
            throw MismatchError("input block has the wrong size");
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) {
                const cplx x = blocks[s](r, c);
                if (x == cplx(0.0)) continue;
                for (std::size_t k = 0; k < out.size(); ++k) {
                    const auto e = target_.blocks()[k];
                    const auto toff = static_cast<Eigen::Index>(target_.offset(k));
                    out[k] += x * choi_.block((off + r) * q + toff, (off + c) * q + toff, e, e);
                }
            }
    }
    return out;
}

Element apply(const ChoiMap& map, const Element& x) {
    if (map.direction() != Direction::Heisenberg)
        throw MismatchError("Schrodinger maps act on states, not elements");
    require_same(map.source(), x.algebra(), "element is not on the map's source algebra");
    return Element(map.target(), map.act(x.mats()));
}

StateVec apply(const ChoiMap& map, const StateVec& s, const Tolerances& tol) {
    if (map.direction() != Direction::Schrodinger)
        throw MismatchError("Heisenberg maps act on elements, not states");
    require_same(map.source(), s.algebra(), "state is not on the map's source algebra");
    return StateVec(map.target(), map.act(s.dens()), tol);
}

bool is_completely_positive(const ChoiMap& map, double tol) {
    const double scale = std::max(1.0, linalg::max_abs(map.choi()));
    if (linalg::hermitian_deviation(map.choi()) > tol * scale) return false;
    return linalg::min_eigenvalue(map.choi()) >= -tol;
}

bool is_unital(const ChoiMap& map, double tol) {
    if (map.direction() != Direction::Heisenberg)
        throw MismatchError("unitality is a Heisenberg-picture property");
    const auto img = map.act(Element::unit(map.source()).mats());
    const auto unit = Element::unit(map.target()).mats();
    for (std::size_t k = 0; k < img.size(); ++k)
        if (linalg::max_abs(img[k] - unit[k]) > tol) return false;
    return true;
}

bool is_trace_preserving(const ChoiMap& map, double tol) {
    if (map.direction() != Direction::Schrodinger)
        throw MismatchError("trace preservation is a Schrodinger-picture property");
    // Trace preservation is unitality of the dual.
    auto dual = dualize(map);
    return is_unital(dual, tol);
}

ChoiMap compose(const ChoiMap& f, const ChoiMap& g) {
    if (f.direction() != g.direction()) throw MismatchError("cannot compose maps of different directions");
    require_same(g.target(), f.source(), "compose(f, g) needs g.target == f.source");
    return ChoiMap::from_action(g.source(), f.target(), f.direction(),
                                [&](const std::vector<Mat>& x) { return f.act(g.act(x)); });
}

Algebra tensor_algebra(const Algebra& a, const Algebra& b) {
    std::vector<int> blocks;
    for (int d : a.blocks())
        for (int e : b.blocks()) blocks.push_back(d * e);
    return Algebra(std::move(blocks));
}

ChoiMap tensor(const ChoiMap& f, const ChoiMap& g) {
    if (f.direction() != g.direction()) throw MismatchError("cannot tensor maps of different directions");
    const Algebra src = tensor_algebra(f.source(), g.source());
    const Algebra tgt = tensor_algebra(f.target(), g.target());
    const auto& fs = f.source().blocks();
    const auto& gs = g.source().blocks();
    const auto& ft = f.target().blocks();
    const auto& gt = g.target().blocks();
    auto action = [&](const std::vector<Mat>& x) {
        std::vector<Mat> out = Element::zero(tgt).mats();
        std::vector<Mat> fin = Element::zero(f.source()).mats();
        std::vector<Mat> gin = Element::zero(g.source()).mats();
        for (std::size_t i = 0; i < fs.size(); ++i)
            for (std::size_t j = 0; j < gs.size(); ++j) {
                const Mat& blk = x[i * gs.size() + j];
                const int e = gs[j];
                for (Eigen::Index r = 0; r < blk.rows(); ++r)
                    for (Eigen::Index c = 0; c < blk.cols(); ++c) {
                        const cplx v = blk(r, c);
                        if (v == cplx(0.0)) continue;
                        fin[i](r / e, c / e) = 1.0;
                        gin[j](r % e, c % e) = 1.0;
                        const auto fo = f.act(fin);
                        const auto go = g.act(gin);
                        fin[i](r / e, c / e) = 0.0;
                        gin[j](r % e, c % e) = 0.0;
                        for (std::size_t k = 0; k < ft.size(); ++k)
                            for (std::size_t l = 0; l < gt.size(); ++l)
                                out[k * gt.size() + l] += v * linalg::kron(fo[k], go[l]);
                    }
            }
        return out;
    };
    return ChoiMap::from_action(src, tgt, f.direction(), action);
}

ChoiMap dualize(const ChoiMap& map) {
    const auto p = static_cast<Eigen::Index>(map.source().rep_dim());
    const auto q = static_cast<Eigen::Index>(map.target().rep_dim());
    const Mat& j = map.choi();
    Mat out(p * q, p * q);
    // out[(k p + i), (l p + m)] = j[(m q + l), (i q + k)]
    for (Eigen::Index k = 0; k < q; ++k)
        for (Eigen::Index i = 0; i < p; ++i)
            for (Eigen::Index l = 0; l < q; ++l)
                for (Eigen::Index m = 0; m < p; ++m) out(k * p + i, l * p + m) = j(m * q + l, i * q + k);
    const Direction dir = map.direction() == Direction::Heisenberg ? Direction::Schrodinger
                                                                   : Direction::Heisenberg;
    return ChoiMap(map.target(), map.source(), dir, std::move(out));
}

double choi_distance(const ChoiMap& a, const ChoiMap& b) {
    if (a.source() != b.source() || a.target() != b.target())
        throw MismatchError("maps have different source/target algebras");
    return linalg::max_abs(a.choi() - b.choi());
}

namespace channels {

ChoiMap identity(const Algebra& alg, Direction dir) {
    return ChoiMap::from_action(alg, alg, dir, [](const std::vector<Mat>& x) { return x; });
}

ChoiMap depolarizing(int d, Direction dir) {
    const Algebra a({d});
    return ChoiMap::from_action(a, a, dir, [d](const std::vector<Mat>& x) {
        return std::vector<Mat>{x[0].trace() * Mat::Identity(d, d) / static_cast<double>(d)};
    });
}

ChoiMap measure_standard_basis(int d, bool classical_output) {
    const Algebra src({d});
    const Algebra tgt = classical_output ? Algebra(std::vector<int>(static_cast<std::size_t>(d), 1))
                                         : Algebra({d});
    return ChoiMap::from_action(src, tgt, Direction::Schrodinger, [=](const std::vector<Mat>& x) {
        if (!classical_output) return std::vector<Mat>{Mat(x[0].diagonal().asDiagonal())};
        std::vector<Mat> out;
        for (int i = 0; i < d; ++i) out.push_back(Mat::Constant(1, 1, x[0](i, i)));
        return out;
    });
}

ChoiMap transpose(int d, Direction dir) {
    const Algebra a({d});
    return ChoiMap::from_action(a, a, dir, [](const std::vector<Mat>& x) {
        return std::vector<Mat>{x[0].transpose()};
    });
}

}  // namespace channels

}  // namespace qdf
