#include "qdf/json_io.hpp"

#include <fstream>
#include <sstream>

namespace qdf::io {

namespace {

const json& field(const json& j, const char* key) {
    if (!j.is_object()) throw SchemaError("expected a JSON object");
    const auto it = j.find(key);
    if (it == j.end()) throw SchemaError(std::string("missing field \"") + key + "\"");
    return *it;
}

template <class T>
T get_as(const json& j, const char* what) {
    try {
        return j.get<T>();
    } catch (const json::exception& e) {
        throw SchemaError(std::string("bad value for ") + what + ": " + e.what());
    }
}

cplx complex_from_json(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    throw SchemaError("complex numbers must be [re, im] or a number");
}

std::vector<int> blocks_from_json(const json& j) {
    auto b = get_as<std::vector<int>>(j, "blocks");
    return b;
}

json real_matrix(const RMat& m) {
    json out = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
        out.push_back(std::move(row));
    }
    return out;
}

std::vector<Mat> block_list(const json& j, const char* what) {
    if (!j.is_array()) throw SchemaError(std::string(what) + " must be an array of matrices");
    std::vector<Mat> out;
    for (const auto& m : j) out.push_back(matrix_from_json(m));
    return out;
}

json block_json(const std::vector<Mat>& mats) {
    json out = json::array();
    for (const auto& m : mats) out.push_back(to_json(m));
    return out;
}

Algebra base_from_json(const json& j) {
    if (j.contains("base")) return Algebra(blocks_from_json(j.at("base")));
    return Algebra({get_as<int>(field(j, "base_dim"), "base_dim")});
}

void put_base(json& j, const Algebra& base) {
    if (base.is_single_block())
        j["base_dim"] = base.blocks().front();
    else
        j["base"] = base.blocks();
}

}  // namespace

json to_json(const Mat& m) {
    json out = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back({m(i, k).real(), m(i, k).imag()});
        out.push_back(std::move(row));
    }
    return out;
}

Mat matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw SchemaError("matrix must be a nonempty array of rows");
    const auto rows = static_cast<Eigen::Index>(j.size());
    if (!j[0].is_array()) throw SchemaError("matrix rows must be arrays");
    const auto cols = static_cast<Eigen::Index>(j[0].size());
    Mat m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const auto& row = j[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
            throw SchemaError("matrix rows must have equal length");
        for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = complex_from_json(row[static_cast<std::size_t>(k)]);
    }
    return m;
}

json to_json(const Element& e) { return {{"blocks", e.algebra().blocks()}, {"mats", block_json(e.mats())}}; }

Element element_from_json(const json& j) {
    return Element(Algebra(blocks_from_json(field(j, "blocks"))), block_list(field(j, "mats"), "mats"));
}

json to_json(const StateVec& s) { return {{"blocks", s.algebra().blocks()}, {"dens", block_json(s.dens())}}; }

StateVec state_from_json(const json& j) {
    return StateVec(Algebra(blocks_from_json(field(j, "blocks"))), block_list(field(j, "dens"), "dens"));
}

json to_json(const ChoiMap& m) {
    return {{"source", m.source().blocks()},
            {"target", m.target().blocks()},
            {"direction", m.direction() == Direction::Heisenberg ? "H" : "S"},
            {"choi", to_json(m.choi())}};
}

ChoiMap choi_map_from_json(const json& j) {
    const auto dir = get_as<std::string>(field(j, "direction"), "direction");
    if (dir != "H" && dir != "S") throw SchemaError("direction must be \"H\" or \"S\"");
    return ChoiMap(Algebra(blocks_from_json(field(j, "source"))), Algebra(blocks_from_json(field(j, "target"))),
                   dir == "H" ? Direction::Heisenberg : Direction::Schrodinger,
                   matrix_from_json(field(j, "choi")));
}

json to_json(const ExchSeq& s) {
    json out;
    put_base(out, s.base());
    out["depth"] = s.depth();
    json states = json::array();
    for (const auto& st : s.states()) states.push_back(to_json(st.to_dense()));
    out["states"] = std::move(states);
    out["tol"] = s.tolerance();
    return out;
}

ExchSeq exch_seq_from_json(const json& j) {
    const Algebra base = base_from_json(j);
    const auto& states_j = field(j, "states");
    if (!states_j.is_array() || states_j.empty()) throw SchemaError("states must be a nonempty array");
    const double tol = j.contains("tol") ? get_as<double>(j.at("tol"), "tol") : 1e-9;
    std::vector<StateVec> states;
    int n = 1;
    for (const auto& m : states_j) {
        const Tolerances t{std::max(1e-9, tol), std::max(1e-9, tol)};
        states.push_back(StateVec::from_dense(TensorPower(base, n).algebra(), matrix_from_json(m), t));
        ++n;
    }
    if (j.contains("depth") && get_as<int>(j.at("depth"), "depth") != static_cast<int>(states.size()))
        throw SchemaError("depth does not match the number of states");
    return ExchSeq(base, std::move(states), tol);
}

json to_json(const ExchangeabilityReport& r) {
    json levels = json::array();
    for (const auto& l : r.levels)
        levels.push_back({{"level", l.level},
                          {"symmetry_violation", l.symmetry_violation},
                          {"worst_permutation", l.worst_permutation},
                          {"consistency_violation", l.consistency_violation},
                          {"worst_consistency_level", l.worst_consistency_level},
                          {"exhaustive", l.exhaustive}});
    return {{"verdict", r.verdict}, {"tol", r.tolerance}, {"levels", std::move(levels)}};
}

ExchangeabilityReport exchangeability_report_from_json(const json& j) {
    ExchangeabilityReport r;
    r.verdict = get_as<bool>(field(j, "verdict"), "verdict");
    r.tolerance = get_as<double>(field(j, "tol"), "tol");
    for (const auto& l : field(j, "levels")) {
        LevelReport lr;
        lr.level = get_as<int>(field(l, "level"), "level");
        lr.symmetry_violation = get_as<double>(field(l, "symmetry_violation"), "symmetry_violation");
        lr.worst_permutation = get_as<Permutation>(field(l, "worst_permutation"), "worst_permutation");
        lr.consistency_violation = get_as<double>(field(l, "consistency_violation"), "consistency_violation");
        lr.worst_consistency_level = get_as<int>(field(l, "worst_consistency_level"), "worst_consistency_level");
        lr.exhaustive = get_as<bool>(field(l, "exhaustive"), "exhaustive");
        r.levels.push_back(std::move(lr));
    }
    return r;
}

json to_json(const Mixture& m) {
    json atoms = json::array();
    for (const auto& a : m.atoms().atoms()) atoms.push_back(to_json(a.to_dense()));
    json out{{"atoms", std::move(atoms)}, {"weights", m.weights()}};
    if (!m.atoms().base().is_single_block()) out["base"] = m.atoms().base().blocks();
    return out;
}

AtomSet atoms_from_json(const json& j) {
    const auto& atoms_j = field(j, "atoms");
    if (!atoms_j.is_array() || atoms_j.empty()) throw SchemaError("atoms must be a nonempty array");
    std::vector<StateVec> atoms;
    std::optional<Algebra> base;
    if (j.contains("base")) base = Algebra(blocks_from_json(j.at("base")));
    for (const auto& m : atoms_j) {
        const Mat dense = matrix_from_json(m);
        const Algebra alg = base ? *base : Algebra({static_cast<int>(dense.rows())});
        atoms.push_back(StateVec::from_dense(alg, dense));
    }
    Algebra atom_base = atoms.front().algebra();
    return AtomSet(std::move(atom_base), std::move(atoms), "explicit", 0);
}

Mixture mixture_from_json(const json& j) {
    return Mixture(atoms_from_json(j), get_as<std::vector<double>>(field(j, "weights"), "weights"));
}

json to_json(const Cone& c) {
    json channels = json::array();
    for (const auto& ch : c.channels()) channels.push_back(to_json(ch));
    json out{{"apex", c.apex().blocks()}, {"depth", c.depth()}, {"tol", c.tolerance()}, {"channels", channels}};
    put_base(out, c.base());
    return out;
}

Cone cone_from_json(const json& j) {
    std::vector<ChoiMap> channels;
    const auto& ch = field(j, "channels");
    if (!ch.is_array()) throw SchemaError("channels must be an array");
    for (const auto& c : ch) channels.push_back(choi_map_from_json(c));
    if (j.contains("depth") && get_as<int>(j.at("depth"), "depth") != static_cast<int>(channels.size()))
        throw SchemaError("depth does not match the number of channels");
    const double tol = j.contains("tol") ? get_as<double>(j.at("tol"), "tol") : 1e-9;
    return Cone(Algebra(blocks_from_json(field(j, "apex"))), base_from_json(j), std::move(channels), tol);
}

json to_json(const ConeLawReport& r) {
    return {{"verdict", r.verdict},
            {"max_violation", r.max_violation},
            {"worst_n", r.worst_n},
            {"worst_m", r.worst_m},
            {"worst_tau", r.worst_tau},
            {"injections_checked", r.injections_checked}};
}

json to_json(const MediatingMap& m) {
    json atoms = json::array();
    for (const auto& a : m.atoms().atoms()) atoms.push_back(to_json(a.to_dense()));
    json probes = json::array();
    for (const auto& p : m.probes()) probes.push_back(to_json(p.to_dense()));
    json out{{"apex", m.apex().blocks()},
             {"atoms", std::move(atoms)},
             {"probe_basis", kProbeBasisName},
             {"probes", std::move(probes)},
             {"weights", real_matrix(m.weights())}};
    if (!m.atoms().base().is_single_block()) out["base"] = m.atoms().base().blocks();
    return out;
}

MediatingMap mediating_map_from_json(const json& j) {
    const Algebra apex(blocks_from_json(field(j, "apex")));
    AtomSet atoms = atoms_from_json(j);
    std::vector<StateVec> probes;
    for (const auto& p : field(j, "probes")) probes.push_back(StateVec::from_dense(apex, matrix_from_json(p)));
    const auto w = get_as<std::vector<std::vector<double>>>(field(j, "weights"), "weights");
    RMat weights(static_cast<Eigen::Index>(w.size()), static_cast<Eigen::Index>(atoms.size()));
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i].size() != atoms.size()) throw SchemaError("weight rows must have one entry per atom");
        for (std::size_t k = 0; k < w[i].size(); ++k)
            weights(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = w[i][k];
    }
    return MediatingMap(apex, std::move(atoms), std::move(probes), std::move(weights));
}

json to_json(const UniquenessReport& r) {
    return {{"trials", r.trials},
            {"max_pairwise_distance", r.max_pairwise_distance},
            {"degenerate", r.degenerate},
            {"rank", r.rank},
            {"atom_count", r.atom_count},
            {"identifiable", r.identifiable}};
}

UniquenessReport uniqueness_report_from_json(const json& j) {
    UniquenessReport r;
    r.trials = get_as<int>(field(j, "trials"), "trials");
    r.max_pairwise_distance = get_as<double>(field(j, "max_pairwise_distance"), "max_pairwise_distance");
    r.degenerate = get_as<bool>(field(j, "degenerate"), "degenerate");
    r.rank = get_as<int>(field(j, "rank"), "rank");
    r.atom_count = get_as<std::size_t>(field(j, "atom_count"), "atom_count");
    r.identifiable = get_as<std::vector<std::size_t>>(field(j, "identifiable"), "identifiable");
    return r;
}

json to_json(const classical::FinDist& d) { return {{"space", d.space()}, {"probs", d.probs()}}; }

classical::FinDist fin_dist_from_json(const json& j) {
    return classical::FinDist(get_as<classical::Space>(field(j, "space"), "space"),
                              get_as<std::vector<double>>(field(j, "probs"), "probs"));
}

json to_json(const classical::ClassicalExchSeq& s) {
    return {{"space", s.space()}, {"levels", s.levels()}, {"tol", s.tolerance()}};
}

classical::ClassicalExchSeq classical_seq_from_json(const json& j) {
    const double tol = j.contains("tol") ? get_as<double>(j.at("tol"), "tol") : 1e-9;
    return classical::ClassicalExchSeq(get_as<classical::Space>(field(j, "space"), "space"),
                                       get_as<std::vector<std::vector<double>>>(field(j, "levels"), "levels"), tol);
}

std::vector<classical::FinDist> grid_from_json(const json& j) {
    const auto space = get_as<classical::Space>(field(j, "space"), "space");
    std::vector<classical::FinDist> grid;
    for (const auto& p : field(j, "atoms"))
        grid.emplace_back(space, get_as<std::vector<double>>(p, "atom probabilities"));
    if (grid.empty()) throw SchemaError("atoms must be a nonempty array");
    return grid;
}

json read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return json::parse(buf.str());
    } catch (const json::parse_error& e) {
        throw SchemaError(path + ": parse error at byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

void write_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << j.dump(2) << '\n';
}

}  // namespace qdf::io
