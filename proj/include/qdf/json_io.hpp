#pragma once

// JSON encodings shared by the library, the CLI and the Python bindings.
// Complex numbers are [re, im] pairs (plain numbers are accepted as real on
// input); matrices are arrays of rows. Doubles are written in the shortest
// form that reads back to the identical value.

#include <string>

#include <json.hpp>

#include "qdf/classical.hpp"
#include "qdf/definetti.hpp"

namespace qdf::io {

using json = nlohmann::json;

/// Schema violations in otherwise well-formed JSON.
class SchemaError : public Error {
public:
    using Error::Error;
};

json to_json(const Mat& m);
Mat matrix_from_json(const json& j);

json to_json(const Element& e);
Element element_from_json(const json& j);
json to_json(const StateVec& s);
StateVec state_from_json(const json& j);

json to_json(const ChoiMap& m);
ChoiMap choi_map_from_json(const json& j);

json to_json(const ExchSeq& s);
ExchSeq exch_seq_from_json(const json& j);

json to_json(const ExchangeabilityReport& r);
ExchangeabilityReport exchangeability_report_from_json(const json& j);

json to_json(const Mixture& m);
Mixture mixture_from_json(const json& j);
/// {"atoms": [...]} with optional "base"; "weights" ignored.
AtomSet atoms_from_json(const json& j);

json to_json(const Cone& c);
Cone cone_from_json(const json& j);
json to_json(const ConeLawReport& r);

json to_json(const MediatingMap& m);
MediatingMap mediating_map_from_json(const json& j);

json to_json(const UniquenessReport& r);
UniquenessReport uniqueness_report_from_json(const json& j);

json to_json(const classical::FinDist& d);
classical::FinDist fin_dist_from_json(const json& j);
json to_json(const classical::ClassicalExchSeq& s);
classical::ClassicalExchSeq classical_seq_from_json(const json& j);
/// {"space": [...], "atoms": [[probs]...]}
std::vector<classical::FinDist> grid_from_json(const json& j);

/// Reads and parses a file. Throws SchemaError with the location on
/// syntax errors or unreadable files.
json read_file(const std::string& path);
void write_file(const std::string& path, const json& j);

}  // namespace qdf::io
