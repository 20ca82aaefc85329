#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qdf/fixtures.hpp"
#include "qdf/json_io.hpp"

namespace py = pybind11;
using namespace qdf;

namespace {

std::vector<double> as_vector(const RVec& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exchangeable sequences of finite-dimensional quantum states";

    auto error = py::register_exception<Error>(m, "Error");
    py::register_exception<ValidationError>(m, "ValidationError", error.ptr());
    py::register_exception<MismatchError>(m, "MismatchError", error.ptr());
    py::register_exception<NotExchangeable>(m, "NotExchangeable", error.ptr());
    py::register_exception<ConeLawViolation>(m, "ConeLawViolation", error.ptr());
    py::register_exception<NotRepresentable>(m, "NotRepresentable", error.ptr());
    py::register_exception<io::SchemaError>(m, "SchemaError", error.ptr());

    py::class_<Tolerances>(m, "Tolerances")
        .def(py::init<>())
        .def_readwrite("psd", &Tolerances::psd)
        .def_readwrite("trace", &Tolerances::trace);

    py::class_<Algebra>(m, "Algebra")
        .def(py::init<std::vector<int>>(), py::arg("blocks"))
        .def_property_readonly("blocks", &Algebra::blocks)
        .def_property_readonly("dimension", &Algebra::dimension)
        .def_property_readonly("rep_dim", &Algebra::rep_dim)
        .def("is_commutative", &Algebra::is_commutative)
        .def(py::self == py::self)
        .def("__repr__", [](const Algebra& a) {
            std::string s = "Algebra([";
            for (std::size_t i = 0; i < a.blocks().size(); ++i) s += (i ? ", " : "") + std::to_string(a.blocks()[i]);
            return s + "])";
        });

    py::class_<Element>(m, "Element")
        .def(py::init<Algebra, std::vector<Mat>>(), py::arg("algebra"), py::arg("blocks"))
        .def_static("unit", &Element::unit)
        .def_static("from_dense", &Element::from_dense)
        .def_property_readonly("algebra", &Element::algebra)
        .def_property_readonly("blocks", &Element::mats)
        .def("to_dense", &Element::to_dense);

    py::class_<StateVec>(m, "StateVec")
        .def(py::init([](Algebra a, std::vector<Mat> d) { return StateVec(std::move(a), std::move(d)); }),
             py::arg("algebra"), py::arg("blocks"))
        .def_static("from_dense", [](const Algebra& a, const Mat& d) { return StateVec::from_dense(a, d); })
        .def_static("from_probabilities", [](const std::vector<double>& p) { return StateVec::from_probabilities(p); })
        .def_static("pure", &StateVec::pure)
        .def_static("maximally_mixed", &StateVec::maximally_mixed)
        .def_property_readonly("algebra", &StateVec::algebra)
        .def_property_readonly("blocks", &StateVec::dens)
        .def("to_dense", &StateVec::to_dense)
        .def("probabilities", &StateVec::probabilities);

    m.def("eval_state", &eval_state);
    m.def("trace_distance", &trace_distance);

    py::enum_<Direction>(m, "Direction")
        .value("HEISENBERG", Direction::Heisenberg)
        .value("SCHRODINGER", Direction::Schrodinger);

    py::class_<ChoiMap>(m, "ChoiMap")
        .def(py::init<Algebra, Algebra, Direction, Mat>())
        .def_property_readonly("source", &ChoiMap::source)
        .def_property_readonly("target", &ChoiMap::target)
        .def_property_readonly("direction", &ChoiMap::direction)
        .def_property_readonly("choi", &ChoiMap::choi);
    m.def("apply", py::overload_cast<const ChoiMap&, const StateVec&, const Tolerances&>(&apply), py::arg("map"),
          py::arg("state"), py::arg("tol") = Tolerances{});
    m.def("apply", py::overload_cast<const ChoiMap&, const Element&>(&apply), py::arg("map"), py::arg("element"));
    m.def("is_completely_positive", &is_completely_positive, py::arg("map"), py::arg("tol") = 1e-9);
    m.def("is_unital", &is_unital, py::arg("map"), py::arg("tol") = 1e-9);
    m.def("is_trace_preserving", &is_trace_preserving, py::arg("map"), py::arg("tol") = 1e-9);
    m.def("compose", py::overload_cast<const ChoiMap&, const ChoiMap&>(&compose));
    m.def("tensor", &tensor);
    m.def("dualize", &dualize);

    auto ch = m.def_submodule("channels");
    ch.def("identity", &channels::identity, py::arg("algebra"), py::arg("direction") = Direction::Schrodinger);
    ch.def("depolarizing", &channels::depolarizing, py::arg("d"), py::arg("direction") = Direction::Schrodinger);
    ch.def("measure_standard_basis", &channels::measure_standard_basis, py::arg("d"),
           py::arg("classical_output") = false);
    ch.def("transpose", &channels::transpose, py::arg("d"), py::arg("direction") = Direction::Schrodinger);

    // tensor powers
    m.def("restrict_state", &restrict_state, py::arg("rho"), py::arg("base"), py::arg("n"));
    m.def("iota_embed", &iota_embed, py::arg("a"), py::arg("base"), py::arg("m"));
    m.def("eta_tau", &eta_tau, py::arg("a"), py::arg("base"), py::arg("tau"), py::arg("m"));
    m.def("eta_sigma", py::overload_cast<const StateVec&, const Algebra&, const Permutation&>(&eta_sigma));
    m.def("eta_sigma", py::overload_cast<const Element&, const Algebra&, const Permutation&>(&eta_sigma));
    m.def("pullback_state", &pullback_state, py::arg("rho"), py::arg("base"), py::arg("tau"));
    m.def("tensor_power", &tensor_power, py::arg("state"), py::arg("base"), py::arg("n"));

    py::class_<ExchSeq>(m, "ExchSeq")
        .def(py::init<Algebra, std::vector<StateVec>, double>(), py::arg("base"), py::arg("states"),
             py::arg("tol") = 1e-9)
        .def_property_readonly("base", &ExchSeq::base)
        .def_property_readonly("depth", &ExchSeq::depth)
        .def_property_readonly("states", &ExchSeq::states)
        .def_property_readonly("tolerance", &ExchSeq::tolerance)
        .def("level", &ExchSeq::level)
        .def("truncated", &ExchSeq::truncated);

    py::class_<LevelReport>(m, "LevelReport")
        .def_readonly("level", &LevelReport::level)
        .def_readonly("symmetry_violation", &LevelReport::symmetry_violation)
        .def_readonly("worst_permutation", &LevelReport::worst_permutation)
        .def_readonly("consistency_violation", &LevelReport::consistency_violation)
        .def_readonly("worst_consistency_level", &LevelReport::worst_consistency_level)
        .def_readonly("exhaustive", &LevelReport::exhaustive);
    py::class_<ExchangeabilityReport>(m, "ExchangeabilityReport")
        .def_readonly("levels", &ExchangeabilityReport::levels)
        .def_readonly("tolerance", &ExchangeabilityReport::tolerance)
        .def_readonly("verdict", &ExchangeabilityReport::verdict)
        .def("first_violation", &ExchangeabilityReport::first_violation)
        .def(py::self == py::self)
        .def("to_json", [](const ExchangeabilityReport& r) { return io::to_json(r).dump(); })
        .def_static("from_json",
                    [](const std::string& s) { return io::exchangeability_report_from_json(io::json::parse(s)); });

    m.def("check_exchangeable", py::overload_cast<const ExchSeq&>(&check_exchangeable));
    m.def("iid_extend", &iid_extend, py::arg("state"), py::arg("depth"), py::arg("tol") = 1e-9);

    // reconstruction
    py::class_<AtomSet>(m, "AtomSet")
        .def_property_readonly("base", &AtomSet::base)
        .def_property_readonly("atoms", &AtomSet::atoms)
        .def_property_readonly("method", &AtomSet::method)
        .def_property_readonly("seed", &AtomSet::seed)
        .def("__len__", &AtomSet::size);
    m.def("explicit_atoms", &explicit_atoms);
    m.def("default_atoms", &default_atoms, py::arg("d"), py::arg("count"), py::arg("seed") = 0);

    py::class_<Mixture>(m, "Mixture")
        .def(py::init<AtomSet, std::vector<double>, double>(), py::arg("atoms"), py::arg("weights"),
             py::arg("tol") = 1e-9)
        .def_property_readonly("atoms", &Mixture::atoms)
        .def_property_readonly("weights", &Mixture::weights)
        .def("barycenter", &Mixture::barycenter)
        .def("to_json", [](const Mixture& x) { return io::to_json(x).dump(); });

    m.def("synthesize", py::overload_cast<const Mixture&, int, double>(&synthesize), py::arg("mixture"),
          py::arg("depth"), py::arg("tol") = 1e-10);
    m.def("moment_rank", &moment_rank, py::arg("atoms"), py::arg("depth"), py::arg("tol") = 1e-10);
    m.def("moment_independent", &moment_independent, py::arg("atoms"), py::arg("depth"), py::arg("tol") = 1e-10);

    py::class_<Reconstruction>(m, "Reconstruction")
        .def_readonly("mixture", &Reconstruction::mixture)
        .def_readonly("residual", &Reconstruction::residual)
        .def_readonly("level_residuals", &Reconstruction::level_residuals)
        .def_readonly("rank", &Reconstruction::rank)
        .def_readonly("degenerate", &Reconstruction::degenerate)
        .def_readonly("raw_weight_sum", &Reconstruction::raw_weight_sum);
    m.def(
        "reconstruct", [](const ExchSeq& s, const AtomSet& a) { return reconstruct(s, a); }, py::arg("seq"),
        py::arg("atoms"));

    // cones
    py::class_<Cone>(m, "Cone")
        .def(py::init<Algebra, Algebra, std::vector<ChoiMap>, double>(), py::arg("apex"), py::arg("base"),
             py::arg("channels"), py::arg("tol") = 1e-9)
        .def_property_readonly("apex", &Cone::apex)
        .def_property_readonly("base", &Cone::base)
        .def_property_readonly("depth", &Cone::depth)
        .def_property_readonly("channels", &Cone::channels)
        .def("sequence_at", &Cone::sequence_at);
    py::class_<ConeLawReport>(m, "ConeLawReport")
        .def_readonly("max_violation", &ConeLawReport::max_violation)
        .def_readonly("worst_n", &ConeLawReport::worst_n)
        .def_readonly("worst_m", &ConeLawReport::worst_m)
        .def_readonly("worst_tau", &ConeLawReport::worst_tau)
        .def_readonly("injections_checked", &ConeLawReport::injections_checked)
        .def_readonly("verdict", &ConeLawReport::verdict);
    m.def("check_cone", &check_cone);
    m.def("constant_cone", &constant_cone);

    py::class_<MediatingMap>(m, "MediatingMap")
        .def_property_readonly("probes", &MediatingMap::probes)
        .def_property_readonly("weights", &MediatingMap::weights)
        .def_property_readonly("atoms", &MediatingMap::atoms)
        .def("weights_for", [](const MediatingMap& mm, const StateVec& k) { return as_vector(mm.weights_for(k)); })
        .def("__call__", &MediatingMap::operator());
    m.def(
        "mediating_map",
        [](const Cone& c, const AtomSet& a, double max_residual) {
            MediatingOptions o;
            o.max_residual = max_residual;
            return mediating_map(c, a, o);
        },
        py::arg("cone"), py::arg("atoms"), py::arg("max_residual") = 1e-6);
    m.def("factorization_error", &factorization_error);

    py::class_<UniquenessReport>(m, "UniquenessReport")
        .def_readonly("trials", &UniquenessReport::trials)
        .def_readonly("max_pairwise_distance", &UniquenessReport::max_pairwise_distance)
        .def_readonly("degenerate", &UniquenessReport::degenerate)
        .def_readonly("rank", &UniquenessReport::rank)
        .def_readonly("atom_count", &UniquenessReport::atom_count)
        .def_readonly("identifiable", &UniquenessReport::identifiable);
    m.def("uniqueness_check", py::overload_cast<const Cone&, const AtomSet&, int, std::uint64_t>(&uniqueness_check),
          py::arg("cone"), py::arg("atoms"), py::arg("trials") = 10, py::arg("seed") = 0);
    m.def("uniqueness_check",
          py::overload_cast<const ExchSeq&, const AtomSet&, int, std::uint64_t>(&uniqueness_check), py::arg("seq"),
          py::arg("atoms"), py::arg("trials") = 10, py::arg("seed") = 0);

    // classical side
    auto cl = m.def_submodule("classical");
    py::class_<classical::FinDist>(cl, "FinDist")
        .def(py::init<classical::Space, std::vector<double>, double>(), py::arg("space"), py::arg("probs"),
             py::arg("tol") = 1e-9)
        .def_property_readonly("space", &classical::FinDist::space)
        .def_property_readonly("probs", &classical::FinDist::probs);
    py::class_<classical::Kernel>(cl, "Kernel")
        .def(py::init<classical::Space, classical::Space, RMat, double>(), py::arg("source"), py::arg("target"),
             py::arg("rows"), py::arg("tol") = 1e-9)
        .def_property_readonly("rows", &classical::Kernel::rows);
    cl.def("dirac", py::overload_cast<const classical::Space&, const std::string&>(&classical::dirac));
    cl.def("pushforward", &classical::pushforward);
    cl.def("coin", &classical::coin);
    cl.def("product_measure", &classical::product_measure);
    cl.def("kleisli_compose", &classical::kleisli_compose);
    cl.def("bind", &classical::bind);
    cl.def("flatten", [](const std::vector<classical::FinDist>& support, const std::vector<double>& weights) {
        return classical::flatten(classical::Dist<classical::FinDist>{support, weights});
    });
    py::class_<classical::ClassicalExchSeq>(cl, "ClassicalExchSeq")
        .def(py::init<classical::Space, std::vector<std::vector<double>>, double>(), py::arg("space"),
             py::arg("levels"), py::arg("tol") = 1e-9)
        .def_property_readonly("levels", &classical::ClassicalExchSeq::levels)
        .def_property_readonly("depth", &classical::ClassicalExchSeq::depth);
    cl.def("check_exchangeable", py::overload_cast<const classical::ClassicalExchSeq&>(&classical::check_exchangeable));
    cl.def("synthesize", &classical::synthesize, py::arg("grid"), py::arg("weights"), py::arg("depth"),
           py::arg("tol") = 1e-9);
    py::class_<classical::HsResult>(cl, "HsResult")
        .def_readonly("weights", &classical::HsResult::weights)
        .def_readonly("residual", &classical::HsResult::residual)
        .def_readonly("rank", &classical::HsResult::rank)
        .def_readonly("degenerate", &classical::HsResult::degenerate);
    cl.def("hs_reconstruct", [](const classical::ClassicalExchSeq& s, const std::vector<classical::FinDist>& g) {
        return classical::hs_reconstruct(s, g);
    });
    cl.def("commutative_encoding", &classical::commutative_encoding);
    cl.def("commutative_atoms", &classical::commutative_atoms);

    auto fx = m.def_submodule("fixtures");
    fx.def("circuit1", &fixtures::circuit1);
    fx.def("circuit2", &fixtures::circuit2);
    fx.def("equator", &fixtures::equator, py::arg("phases") = 64);
    fx.def("unknown_qubit", &fixtures::unknown_qubit, py::arg("grid") = 8);
    fx.def("singlet_sequence", &fixtures::singlet_sequence, py::arg("tol") = 1e-9);
    fx.def("circuit_cone", &fixtures::circuit_cone, py::arg("depth"), py::arg("tol") = 1e-9);

    // JSON files in the CLI formats
    m.def("load_sequence", [](const std::string& path) { return io::exch_seq_from_json(io::read_file(path)); });
    m.def("load_cone", [](const std::string& path) { return io::cone_from_json(io::read_file(path)); });
    m.def("save", [](const ExchSeq& s, const std::string& path) { io::write_file(path, io::to_json(s)); });
    m.def("save", [](const Cone& c, const std::string& path) { io::write_file(path, io::to_json(c)); });
    m.def("save", [](const Mixture& x, const std::string& path) { io::write_file(path, io::to_json(x)); });
}
