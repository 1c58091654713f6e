#include "amalgam/io.hpp"

#include <algorithm>

namespace amalgam::io {

namespace {

void need(bool cond, const std::string& what) {
  if (!cond) throw ContractError("input file: " + what);
}

std::vector<std::string> string_list(const json& j, const std::string& what) {
  need(j.is_array(), what + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& e : j) {
    need(e.is_string(), what + " must contain only strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

}  // namespace

json poset_to_json(const order::FinitePoset& p) {
  json j;
  j["elements"] = p.elements();
  json rel = json::array();
  for (const auto& [a, b] : p.relation_pairs()) rel.push_back(json::array({a, b}));
  j["leq"] = rel;
  return j;
}

order::FinitePoset poset_from_json(const json& j) {
  need(j.is_object() && j.contains("elements") && j.contains("leq"),
       "poset needs 'elements' and 'leq'");
  auto elements = string_list(j["elements"], "'elements'");
  std::vector<std::pair<std::string, std::string>> pairs;
  need(j["leq"].is_array(), "'leq' must be an array of pairs");
  for (const auto& e : j["leq"]) {
    need(e.is_array() && e.size() == 2 && e[0].is_string() && e[1].is_string(),
         "'leq' entries must be [a, b] string pairs");
    pairs.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
  }
  return order::FinitePoset(std::move(elements), std::move(pairs));
}

json algebra_to_json(const balg::FiniteBA& a) {
  json j;
  j["atoms"] = a.atoms();
  return j;
}

balg::FiniteBA algebra_from_json(const json& j) {
  need(j.is_object() && j.contains("atoms"), "algebra needs 'atoms'");
  return balg::FiniteBA(string_list(j["atoms"], "'atoms'"));
}

json element_to_json(const balg::BAElement& e) {
  json ids = json::array();
  for (std::size_t i = 0; i < e.parent.atom_count(); ++i)
    if (e.atoms >> i & 1) ids.push_back(e.parent.atom(i));
  return ids;
}

json atom_map_to_json(const balg::AtomMap& m) {
  json j;
  j["source"] = algebra_to_json(m.source());
  j["target"] = algebra_to_json(m.target());
  json table;
  for (std::size_t s = 0; s < m.source().atom_count(); ++s)
    table[m.source().atom(s)] = m.target().atom(m.at(s));
  j["map"] = table;
  return j;
}

balg::AtomMap atom_map_from_json(const json& j) {
  need(j.is_object() && j.contains("source") && j.contains("target") && j.contains("map"),
       "atom map needs 'source', 'target' and 'map'");
  auto source = algebra_from_json(j["source"]);
  auto target = algebra_from_json(j["target"]);
  need(j["map"].is_object(), "'map' must be an object");
  std::map<std::string, std::string> table;
  for (auto it = j["map"].begin(); it != j["map"].end(); ++it) {
    need(it.value().is_string(), "'map' values must be atom ids");
    table[it.key()] = it.value().get<std::string>();
  }
  return balg::AtomMap(std::move(source), std::move(target), table);
}

namespace {

json maps_to_json(const order::AlmostLattice& L,
                  const std::function<const std::vector<std::uint32_t>&(std::size_t, std::size_t)>& table,
                  const std::function<const std::vector<std::string>&(std::size_t)>& names) {
  json maps;
  for (std::size_t i = 0; i < L.size(); ++i)
    for (std::size_t j2 = 0; j2 < L.size(); ++j2) {
      if (i == j2 || !L.leq(i, j2)) continue;
      json m;
      const auto& tab = table(j2, i);
      for (std::size_t s = 0; s < tab.size(); ++s) m[names(j2)[s]] = names(i)[tab[s]];
      maps[L.id(i) + "<" + L.id(j2)] = std::move(m);
    }
  return maps;
}

struct ParsedMaps {
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::uint32_t>> tables;
};

ParsedMaps maps_from_json(const json& j, const order::AlmostLattice& L,
                          const std::function<std::size_t(std::size_t, const std::string&)>& atom_at) {
  need(j.is_object(), "'maps' must be an object");
  ParsedMaps out;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = it.key();
    const auto pos = key.find('<');
    need(pos != std::string::npos && key.find('<', pos + 1) == std::string::npos,
         "map key must be 'lower<upper': '" + key + "'");
    const std::size_t lower = L.index_of(key.substr(0, pos));
    const std::size_t upper = L.index_of(key.substr(pos + 1));
    need(it.value().is_object(), "map '" + key + "' must be an object");
    std::vector<std::pair<std::string, std::string>> entries;
    for (auto m = it.value().begin(); m != it.value().end(); ++m) {
      need(m.value().is_string(), "map '" + key + "' values must be atom ids");
      entries.emplace_back(m.key(), m.value().get<std::string>());
    }
    std::vector<std::uint32_t> table(entries.size());
    std::vector<std::uint8_t> seen(entries.size(), 0);
    for (const auto& [src, dst] : entries) {
      const std::size_t s = atom_at(upper, src);
      need(s < table.size() && !seen[s], "map '" + key + "' mentions '" + src + "' twice");
      seen[s] = 1;
      table[s] = static_cast<std::uint32_t>(atom_at(lower, dst));
    }
    out.tables[{upper, lower}] = std::move(table);
  }
  return out;
}

}  // namespace

json system_to_json(const diagram::BASystem& s) {
  json j;
  j["index"] = poset_to_json(s.index().base());
  json algebras;
  for (std::size_t i = 0; i < s.count(); ++i)
    algebras[s.index().id(i)] = algebra_to_json(s.algebra(i));
  j["algebras"] = std::move(algebras);
  j["maps"] = maps_to_json(
      s.index(), [&](std::size_t up, std::size_t lo) -> const std::vector<std::uint32_t>& {
        return s.atom_map(up, lo);
      },
      [&](std::size_t i) -> const std::vector<std::string>& { return s.algebra(i).atoms(); });
  return j;
}

diagram::BASystem system_from_json(const json& j) {
  need(j.is_object() && j.contains("index") && j.contains("algebras") && j.contains("maps"),
       "system needs 'index', 'algebras' and 'maps'");
  auto poset = poset_from_json(j["index"]);
  auto check = order::check_almost_lattice(poset);
  if (!check.ok)
    throw ContractError("input file: index violates almost-lattice axiom '" +
                        std::string(order::axiom_name(check.violations.front().axiom)) + "'");
  order::AlmostLattice L = std::move(*check.lattice);

  need(j["algebras"].is_object(), "'algebras' must be an object");
  std::vector<balg::FiniteBA> algebras;
  for (std::size_t i = 0; i < L.size(); ++i) {
    need(j["algebras"].contains(L.id(i)), "missing algebra for index element '" + L.id(i) + "'");
    algebras.push_back(algebra_from_json(j["algebras"][L.id(i)]));
  }
  auto parsed = maps_from_json(j["maps"], L, [&](std::size_t i, const std::string& atom) {
    return algebras[i].atom_index(atom);
  });
  return diagram::BASystem(std::move(L), std::move(algebras), std::move(parsed.tables));
}

json discrete_to_json(const stone::DiscreteSystem& s) {
  json j;
  j["index"] = poset_to_json(s.index().base());
  json spaces;
  for (std::size_t i = 0; i < s.count(); ++i) {
    json sp;
    sp["points"] = s.space(i).points;
    spaces[s.index().id(i)] = std::move(sp);
  }
  j["spaces"] = std::move(spaces);
  j["maps"] = maps_to_json(
      s.index(), [&](std::size_t up, std::size_t lo) -> const std::vector<std::uint32_t>& {
        return s.proj(up, lo);
      },
      [&](std::size_t i) -> const std::vector<std::string>& { return s.space(i).points; });
  return j;
}

stone::DiscreteSystem discrete_from_json(const json& j) {
  need(j.is_object() && j.contains("index") && j.contains("maps"),
       "discrete system needs 'index' and 'maps'");
  const char* container = j.contains("spaces") ? "spaces" : "algebras";
  need(j.contains(container), "discrete system needs 'spaces'");
  auto poset = poset_from_json(j["index"]);
  auto check = order::check_almost_lattice(poset);
  if (!check.ok)
    throw ContractError("input file: index violates almost-lattice axiom '" +
                        std::string(order::axiom_name(check.violations.front().axiom)) + "'");
  order::AlmostLattice L = std::move(*check.lattice);

  need(j[container].is_object(), "'spaces' must be an object");
  std::vector<stone::DiscreteSpace> spaces;
  for (std::size_t i = 0; i < L.size(); ++i) {
    need(j[container].contains(L.id(i)), "missing space for index element '" + L.id(i) + "'");
    const auto& sp = j[container][L.id(i)];
    need(sp.is_object() && sp.contains("points"), "space needs 'points'");
    spaces.push_back({string_list(sp["points"], "'points'")});
  }
  // Sort ids before resolving map entries.
  std::vector<stone::DiscreteSpace> sorted = spaces;
  for (auto& sp : sorted) std::sort(sp.points.begin(), sp.points.end());
  auto point_at = [&](std::size_t i, const std::string& id) {
    const auto& pts = sorted[i].points;
    auto it = std::lower_bound(pts.begin(), pts.end(), id);
    need(it != pts.end() && *it == id, "unknown point '" + id + "'");
    return static_cast<std::size_t>(it - pts.begin());
  };
  auto parsed = maps_from_json(j["maps"], L, point_at);
  return stone::DiscreteSystem(std::move(L), std::move(spaces), std::move(parsed.tables));
}

bool looks_discrete(const json& j) {
  if (!j.is_object()) return false;
  if (j.contains("spaces")) return true;
  if (j.contains("algebras") && j["algebras"].is_object())
    for (auto it = j["algebras"].begin(); it != j["algebras"].end(); ++it)
      return it.value().is_object() && it.value().contains("points");
  return false;
}

json make_report(const std::string& command, json inputs, json verdicts, json witnesses) {
  json j;
  j["command"] = command;
  j["inputs"] = std::move(inputs);
  j["verdicts"] = std::move(verdicts);
  j["witnesses"] = std::move(witnesses);
  j["timing"] = nullptr;
  return j;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace amalgam::io
