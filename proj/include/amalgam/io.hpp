#pragma once

#include <string>

#include "amalgam/balg.hpp"
#include "amalgam/diagram.hpp"
#include "amalgam/order.hpp"
#include "amalgam/stone.hpp"
#include "json.hpp"

namespace amalgam::io {

using json = nlohmann::ordered_json;

json poset_to_json(const order::FinitePoset& p);
order::FinitePoset poset_from_json(const json& j);

json algebra_to_json(const balg::FiniteBA& a);
balg::FiniteBA algebra_from_json(const json& j);

json element_to_json(const balg::BAElement& e);  // sorted atom id list

json atom_map_to_json(const balg::AtomMap& m);
balg::AtomMap atom_map_from_json(const json& j);

// {"index": <poset>, "algebras": {id: {"atoms": [...]}},
//  "maps": {"lower<upper": {upper_atom: lower_atom}}}
json system_to_json(const diagram::BASystem& s);
diagram::BASystem system_from_json(const json& j);

// Mirrors the system format with "spaces"/"points" in place of
// "algebras"/"atoms"; loaders accept either spelling of the container key.
json discrete_to_json(const stone::DiscreteSystem& s);
stone::DiscreteSystem discrete_from_json(const json& j);

bool looks_discrete(const json& j);

// Fixed report schema shared by all commands. The timing key is always null
// in the file; wall-clock timing goes to stderr so outputs stay byte-stable.
json make_report(const std::string& command, json inputs, json verdicts, json witnesses);

std::string dump(const json& j);  // two-space indent plus trailing newline

}  // namespace amalgam::io
