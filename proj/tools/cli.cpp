#include "cli.hpp"

#include <algorithm>
#include <iomanip>
#include <stdexcept>
#include <vector>

#include "qdf/fixtures.hpp"
#include "qdf/json_io.hpp"

namespace qdf::cli {

namespace {

using io::json;

std::string fmt_perm(const std::vector<int>& p) {
    std::string s = "[";
    for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
    return s + "]";
}

void emit(const RunConfig& cfg, std::ostream& out, const json& j) {
    if (!cfg.output.empty()) io::write_file(cfg.output, j);
    if (cfg.format == Format::Json) out << j.dump(2) << '\n';
}

void print_report(std::ostream& out, const ExchangeabilityReport& r) {
    out << std::setprecision(3) << std::scientific;
    for (const auto& l : r.levels) {
        out << "level " << l.level << ": symmetry " << l.symmetry_violation;
        if (l.symmetry_violation > 0.0) out << " (worst permutation " << fmt_perm(l.worst_permutation) << ")";
        out << (l.exhaustive ? "" : " [adjacent transpositions only]");
        out << ", consistency " << l.consistency_violation;
        if (l.worst_consistency_level > 0) out << " (vs level " << l.worst_consistency_level << ")";
        out << '\n';
    }
    if (const auto bad = r.first_violation()) {
        if (bad->symmetry_violation > r.tolerance)
            out << "symmetry violated at level " << bad->level << " by permutation "
                << fmt_perm(bad->worst_permutation) << '\n';
        else
            out << "consistency violated at level " << bad->level << " against level "
                << bad->worst_consistency_level << '\n';
    }
    out << "verdict: " << (r.verdict ? "exchangeable" : "NOT exchangeable") << " (tol " << r.tolerance << ")\n";
    out << std::defaultfloat;
}

bool is_classical(const json& j) { return j.is_object() && j.contains("space"); }

// Input loading: every failure here maps to exit code 2.
struct Loaded {
    std::optional<ExchSeq> quantum;
    std::optional<classical::ClassicalExchSeq> classical;
};

Loaded load_sequence(const RunConfig& cfg) {
    const json j = io::read_file(cfg.input);
    Loaded l;
    if (is_classical(j)) {
        auto s = io::classical_seq_from_json(j);
        if (cfg.tol) s = classical::ClassicalExchSeq(s.space(), s.levels(), *cfg.tol);
        if (cfg.depth) s = s.truncated(*cfg.depth);
        l.classical = std::move(s);
    } else {
        auto s = io::exch_seq_from_json(j);
        if (cfg.tol) s = s.with_tolerance(*cfg.tol);
        if (cfg.depth) s = s.truncated(*cfg.depth);
        l.quantum = std::move(s);
    }
    return l;
}

AtomSet load_atoms(const RunConfig& cfg, const Algebra& base) {
    if (!cfg.atoms.empty()) {
        AtomSet a = io::atoms_from_json(io::read_file(cfg.atoms));
        if (a.base() != base) throw io::SchemaError("atoms do not live on the sequence's base algebra");
        return a;
    }
    if (!base.is_single_block()) throw io::SchemaError("commutative bases need an explicit --atoms file");
    return default_atoms(base.blocks().front(), cfg.atom_count, cfg.seed);
}

std::vector<classical::FinDist> load_grid(const RunConfig& cfg, const classical::Space& space) {
    if (!cfg.atoms.empty()) {
        auto g = io::grid_from_json(io::read_file(cfg.atoms));
        if (g.front().space() != space) throw io::SchemaError("grid space differs from the sequence space");
        return g;
    }
    if (space.size() != 2) throw io::SchemaError("default bias grids exist only for two-point spaces");
    if (cfg.atom_count < 2) throw io::SchemaError("a bias grid needs --atom-count >= 2");
    std::vector<classical::FinDist> g;
    for (int k = 0; k < cfg.atom_count; ++k) {
        const double p = static_cast<double>(k) / (cfg.atom_count - 1);
        g.emplace_back(space, std::vector<double>{p, 1.0 - p});
    }
    return g;
}

void print_weights(std::ostream& out, const std::vector<double>& w, std::size_t limit = 12) {
    std::vector<std::size_t> idx(w.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) { return w[a] > w[b]; });
    std::size_t shown = 0;
    for (auto i : idx) {
        if (w[i] <= 0.0 || shown == limit) break;
        out << "  atom " << i << ": " << std::setprecision(10) << w[i] << '\n';
        ++shown;
    }
    const auto nonzero = static_cast<std::size_t>(std::count_if(w.begin(), w.end(), [](double x) { return x > 0.0; }));
    if (nonzero > shown) out << "  ... " << nonzero - shown << " more atoms with positive weight\n";
    out << std::defaultfloat;
}

template <class F>
int guarded(std::ostream& err, F&& body) {
    try {
        return body();
    } catch (const io::SchemaError& e) {
        err << "error: " << e.what() << '\n';
        return kParseFailure;
    } catch (const io::json::exception& e) {
        err << "error: malformed input: " << e.what() << '\n';
        return kParseFailure;
    } catch (const ValidationError& e) {
        err << "error: invalid input: " << e.what() << '\n';
        return kParseFailure;
    } catch (const MismatchError& e) {
        err << "error: incompatible inputs: " << e.what() << '\n';
        return kParseFailure;
    }
}

}  // namespace

void validate(const RunConfig& cfg) {
    static const std::vector<std::string> commands{"check", "reconstruct", "factor", "demo"};
    if (std::find(commands.begin(), commands.end(), cfg.command) == commands.end())
        throw std::invalid_argument("unknown command: " + cfg.command);
    if (cfg.tol && !(*cfg.tol > 0.0)) throw std::invalid_argument("--tol must be positive");
    if (!(cfg.max_residual > 0.0)) throw std::invalid_argument("--max-residual must be positive");
    if (cfg.atom_count < 1) throw std::invalid_argument("--atom-count must be >= 1");
    if (cfg.trials < 1) throw std::invalid_argument("--trials must be >= 1");
    if (cfg.depth && *cfg.depth < 1) throw std::invalid_argument("--depth must be >= 1");
    if (cfg.command != "demo" && cfg.input.empty()) throw std::invalid_argument("--input is required");
}

int cmd_check(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const Loaded l = load_sequence(cfg);
        const auto report = l.quantum ? check_exchangeable(*l.quantum) : classical::check_exchangeable(*l.classical);
        if (cfg.format == Format::Text) print_report(out, report);
        emit(cfg, out, io::to_json(report));
        return report.verdict ? kOk : kInvariantFailure;
    });
}

int cmd_reconstruct(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&]() -> int {
        const Loaded l = load_sequence(cfg);
        json result;
        double residual = 0.0;
        try {
            if (l.quantum) {
                const AtomSet atoms = load_atoms(cfg, l.quantum->base());
                const auto rec = reconstruct(*l.quantum, atoms);
                result = io::to_json(rec.mixture);
                result["residual"] = rec.residual;
                result["level_residuals"] = rec.level_residuals;
                result["rank"] = rec.rank;
                result["degenerate"] = rec.degenerate;
                result["raw_weight_sum"] = rec.raw_weight_sum;
                result["atom_method"] = atoms.method();
                result["atom_seed"] = atoms.seed();
                residual = rec.residual;
                if (cfg.format == Format::Text) {
                    out << "atoms: " << atoms.size() << " (" << atoms.method() << ")\n";
                    print_weights(out, rec.mixture.weights());
                }
            } else {
                const auto grid = load_grid(cfg, l.classical->space());
                const auto rec = classical::hs_reconstruct(*l.classical, grid);
                json atoms = json::array();
                for (const auto& g : grid) atoms.push_back(g.probs());
                result = {{"space", l.classical->space()}, {"atoms", atoms}, {"weights", rec.weights},
                          {"residual", rec.residual}, {"rank", rec.rank}, {"degenerate", rec.degenerate}};
                residual = rec.residual;
                if (cfg.format == Format::Text) {
                    out << "grid: " << grid.size() << " distributions\n";
                    print_weights(out, rec.weights);
                }
            }
        } catch (const NotExchangeable& e) {
            if (cfg.format == Format::Text) print_report(out, e.report());
            emit(cfg, out, {{"error", "not exchangeable"}, {"report", io::to_json(e.report())}});
            return kInvariantFailure;
        }
        if (cfg.format == Format::Text)
            out << "residual: " << std::setprecision(6) << std::scientific << residual << std::defaultfloat
                << "  rank: " << result["rank"] << (result["degenerate"].get<bool>() ? " (moment-degenerate)" : "")
                << '\n';
        emit(cfg, out, result);
        if (residual > cfg.max_residual) {
            err << "not representable at this depth/atom set: residual " << residual << " > " << cfg.max_residual
                << '\n';
            return kNotRepresentable;
        }
        return kOk;
    });
}

int cmd_factor(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&]() -> int {
        const Cone cone = io::cone_from_json(io::read_file(cfg.input));
        const AtomSet atoms = load_atoms(cfg, cone.base());
        MediatingOptions opts;
        opts.max_residual = cfg.max_residual;
        try {
            const MediatingMap med = mediating_map(cone, atoms, opts);
            const double ferr = factorization_error(cone, med);
            const auto uniq = uniqueness_check(cone, atoms, cfg.trials, cfg.seed);
            json result{{"mediating_map", io::to_json(med)},
                        {"factorization_error", ferr},
                        {"uniqueness", io::to_json(uniq)}};
            if (cfg.format == Format::Text) {
                out << "mediating map over " << atoms.size() << " atoms, " << med.probes().size() << " probes\n";
                for (std::size_t i = 0; i < med.probes().size(); ++i) {
                    out << "probe " << i << ":\n";
                    const RVec w = med.weights().row(static_cast<Eigen::Index>(i)).transpose();
                    print_weights(out, std::vector<double>(w.data(), w.data() + w.size()), 4);
                }
                out << std::scientific << std::setprecision(3) << "factorization error: " << ferr << '\n'
                    << "uniqueness: max pairwise distance " << uniq.max_pairwise_distance << " over " << uniq.trials
                    << " restarts, rank " << uniq.rank << "/" << uniq.atom_count
                    << (uniq.degenerate ? " (moment-degenerate)" : "") << std::defaultfloat << '\n';
            }
            emit(cfg, out, result);
            return kOk;
        } catch (const ConeLawViolation& e) {
            const auto& r = e.report();
            err << "cone law violated: injection tau = " << fmt_perm(r.worst_tau) << " from level " << r.worst_n
                << " into level " << r.worst_m << ", violation " << r.max_violation << '\n';
            emit(cfg, out, {{"error", "cone law violated"}, {"report", io::to_json(r)}});
            return kInvariantFailure;
        } catch (const NotExchangeable& e) {
            err << "cone output at a probe is not exchangeable\n";
            return kInvariantFailure;
        } catch (const NotRepresentable& e) {
            err << e.what() << '\n';
            return kNotRepresentable;
        }
    });
}

int cmd_demo(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const std::string& name = cfg.demo;
    json result{{"demo", name}};
    if (name == "coin") {
        const int depth = cfg.depth.value_or(5);
        const auto fx = fixtures::coin(depth);
        const auto report = classical::check_exchangeable(fx.sequence);
        const auto rec = classical::hs_reconstruct(fx.sequence, fx.grid);
        double werr = 0.0;
        for (std::size_t k = 0; k < rec.weights.size(); ++k) werr = std::max(werr, std::abs(rec.weights[k] - fx.weights[k]));
        result.update({{"depth", depth}, {"check", io::to_json(report)}, {"weights", rec.weights},
                       {"expected", fx.weights}, {"max_weight_error", werr}, {"residual", rec.residual},
                       {"degenerate", rec.degenerate}});
        if (cfg.format == Format::Text) {
            out << "coin: biases {0, 0.5, 1} drawn uniformly, depth " << depth << '\n';
            print_report(out, report);
            print_weights(out, rec.weights);
            out << "max weight error " << werr << ", residual " << rec.residual << '\n';
        }
        emit(cfg, out, result);
        return report.verdict && werr <= 1e-6 ? kOk : kInvariantFailure;
    }

    Mixture mix = [&] {
        if (name == "circuit1") return fixtures::circuit1();
        if (name == "circuit2") return fixtures::circuit2();
        if (name == "equator") return fixtures::equator();
        if (name == "unknown-qubit") return fixtures::unknown_qubit();
        throw std::invalid_argument("unknown demo: " + name +
                                    " (expected circuit1, circuit2, equator, unknown-qubit or coin)");
    }();
    const int depth = cfg.depth.value_or(4);
    const ExchSeq seq = synthesize(mix, depth);
    const auto report = check_exchangeable(seq);
    const auto rec = reconstruct(seq, mix.atoms());
    double werr = 0.0;
    for (std::size_t k = 0; k < mix.weights().size(); ++k)
        werr = std::max(werr, std::abs(rec.mixture.weights()[k] - mix.weights()[k]));
    result.update({{"depth", depth}, {"atoms", mix.atoms().size()}, {"check", io::to_json(report)},
                   {"weights", rec.mixture.weights()}, {"expected", mix.weights()}, {"max_weight_error", werr},
                   {"residual", rec.residual}, {"rank", rec.rank}, {"degenerate", rec.degenerate}});
    if (cfg.format == Format::Text) {
        out << name << ": " << mix.atoms().size() << " atoms, depth " << depth << '\n';
        print_report(out, report);
        out << "reconstructed weights:\n";
        print_weights(out, rec.mixture.weights(), 8);
        out << "max weight error " << werr << ", residual " << rec.residual << ", moment rank " << rec.rank
            << (rec.degenerate ? " (degenerate: minimum-norm weights selected)" : "") << '\n';
    }
    emit(cfg, out, result);
    (void)err;
    return report.verdict && werr <= 1e-6 ? kOk : kInvariantFailure;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        validate(cfg);
        if (cfg.command == "check") return cmd_check(cfg, out, err);
        if (cfg.command == "reconstruct") return cmd_reconstruct(cfg, out, err);
        if (cfg.command == "factor") return cmd_factor(cfg, out, err);
        return cmd_demo(cfg, out, err);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kParseFailure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kInvariantFailure;
    }
}

}  // namespace qdf::cli
