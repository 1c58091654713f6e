#include "amalgam/amal.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace amalgam::amal {

SysElement canonical_element(const diagram::BASystem& s, std::size_t index_pos, Mask atoms) {
  if (atoms == 0) throw ContractError("canonical_element: zero is not a condition component");
  const auto& L = s.index();
  std::size_t home = index_pos;
  for (std::size_t k = 0; k < L.size(); ++k) {
    if (!L.leq(k, index_pos)) continue;
    const Mask down = s.image(index_pos, k, atoms);
    if (s.preimage(k, index_pos, down) == atoms) home = L.meet(home, k);
  }
  const Mask down = s.image(index_pos, home, atoms);
  if (s.preimage(home, index_pos, down) != atoms)
    throw DefectError("canonical_element: containment indices are not meet-closed at " +
                      L.id(index_pos));
  return {static_cast<std::uint32_t>(home), down};
}

std::size_t ConditionSet::index_of(const Condition& c) const {
  auto it = std::lower_bound(conditions_.begin(), conditions_.end(), c);
  if (it == conditions_.end() || *it != c)
    throw ContractError("condition set: condition not present");
  return static_cast<std::size_t>(it - conditions_.begin());
}

namespace {

// h from x's home down to the meet with y's home, embedded into y's home and
// compared there: the projection of x lies below y.
bool le_part(const diagram::BASystem& s, const SysElement& x, const SysElement& y) {
  const std::size_t m = s.index().meet(x.home, y.home);
  const Mask img = s.image(x.home, m, x.atoms);
  return mask_subset(s.preimage(m, y.home, img), y.atoms);
}

bool four_cases(const diagram::BASystem& s, const Condition& lo, const Condition& hi) {
  const bool aa = le_part(s, lo.a, hi.a);
  const bool bb = le_part(s, lo.b, hi.b);
  if (aa && bb) return true;
  const bool ba = le_part(s, lo.b, hi.a);
  const bool ab = le_part(s, lo.a, hi.b);
  return (ba && ab) || (aa && ab) || (ba && bb);
}

}  // namespace

bool ConditionSet::leq(std::size_t lhs, std::size_t rhs) const {
  return four_cases(system_, conditions_[lhs], conditions_[rhs]);
}

bool ConditionSet::leq(const Condition& lhs, const Condition& rhs) const {
  return four_cases(system_, lhs, rhs);
}

bool ConditionSet::leq_existential(const Condition& lo, const Condition& hi) const {
  const auto& L = system_.index();
  const std::size_t n = L.size();
  auto up_set = [&](std::uint32_t h) {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < n; ++k)
      if (L.leq(h, k)) out.push_back(k);
    return out;
  };
  auto lift = [&](const SysElement& e, std::size_t at) {
    return system_.preimage(e.home, at, e.atoms);
  };
  auto le_w = [&](Mask x, std::size_t xi, const SysElement& y) {
    const std::size_t m = L.meet(xi, y.home);
    return mask_subset(system_.preimage(m, y.home, system_.image(xi, m, x)), y.atoms);
  };
  auto witness_ok = [&](const Condition& c, std::size_t i, std::size_t j) {
    const std::size_t m = L.meet(i, j);
    return system_.image(i, m, lift(c.a, i)) == system_.image(j, m, lift(c.b, j));
  };

  for (std::size_t ip : up_set(lo.a.home))
    for (std::size_t jp : up_set(lo.b.home)) {
      if (!witness_ok(lo, ip, jp)) continue;
      const Mask pp = lift(lo.a, ip), qp = lift(lo.b, jp);
      for (std::size_t i : up_set(hi.a.home))
        for (std::size_t j : up_set(hi.b.home)) {
          if (!witness_ok(hi, i, j)) continue;
          const SysElement p{static_cast<std::uint32_t>(i), lift(hi.a, i)};
          const SysElement q{static_cast<std::uint32_t>(j), lift(hi.b, j)};
          const bool aa = le_w(pp, ip, p), bb = le_w(qp, jp, q);
          const bool ba = le_w(qp, jp, p), ab = le_w(pp, ip, q);
          if ((aa && bb) || (ba && ab) || (aa && ab) || (ba && bb)) return true;
        }
    }
  return false;
}

std::string ConditionSet::describe(const Condition& c) const {
  auto side = [&](const SysElement& e) {
    std::string out = system_.index().id(e.home) + ":{";
    const auto& ba = system_.algebra(e.home);
    bool first = true;
    for (std::size_t i = 0; i < ba.atom_count(); ++i)
      if (e.atoms >> i & 1) {
        if (!first) out += ",";
        out += ba.atom(i);
        first = false;
      }
    return out + "}";
  };
  return "(" + side(c.a) + " ; " + side(c.b) + ")";
}

ConditionSet build_condition_set(const diagram::BASystem& system, std::uint64_t max_conditions) {
  auto valid = diagram::validate_system(system);
  if (!valid.ok)
    throw ContractError("build_condition_set: system is invalid (" + valid.violations.front().kind +
                        ")");
  const auto& L = system.index();
  const std::size_t n = L.size();

  std::vector<std::vector<Mask>> canon(n);
  for (std::size_t i = 0; i < n; ++i)
    for (Mask p = 1; p <= system.algebra(i).full(); ++p)
      if (canonical_element(system, i, p).home == i) canon[i].push_back(p);

  std::vector<Condition> conditions;
  auto guard = [&] {
    if (conditions.size() > max_conditions)
      throw BudgetError("build_condition_set: more than " + std::to_string(max_conditions) +
                        " conditions");
  };
  for (std::size_t i = 0; i < n; ++i)
    for (Mask p : canon[i]) {
      const SysElement e{static_cast<std::uint32_t>(i), p};
      conditions.push_back({e, e});
      guard();
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::size_t m = L.meet(i, j);
      std::map<Mask, std::vector<Mask>> bucket;
      for (Mask q : canon[j]) bucket[system.image(j, m, q)].push_back(q);
      for (Mask p : canon[i]) {
        auto it = bucket.find(system.image(i, m, p));
        if (it == bucket.end()) continue;
        for (Mask q : it->second) {
          conditions.push_back({{static_cast<std::uint32_t>(i), p},
                                {static_cast<std::uint32_t>(j), q}});
          guard();
        }
      }
    }
  std::sort(conditions.begin(), conditions.end());
  return ConditionSet(system, std::move(conditions));
}

namespace {

std::string limit_atom_id(std::size_t cls, std::size_t count) {
  std::size_t width = 1;
  for (std::size_t c = count; c > 10; c = (c + 9) / 10) ++width;
  std::string digits = std::to_string(cls);
  return "t" + std::string(width > digits.size() ? width - digits.size() : 0, '0') + digits;
}

}  // namespace

LimitAlgebra amalgamated_limit(const diagram::BASystem& system, std::uint64_t max_conditions,
                               std::size_t max_limit_atoms) {
  ConditionSet conds = build_condition_set(system, max_conditions);
  const std::size_t n = system.index().size();

  auto skel = balg::minimal_classes(
      conds.size(), [&](std::size_t a, std::size_t b) { return conds.leq(a, b); }, max_limit_atoms);
  const std::size_t atom_count = skel.minimal_reps.size();

  std::vector<std::string> atom_ids;
  for (std::size_t c = 0; c < atom_count; ++c) atom_ids.push_back(limit_atom_id(c, atom_count));
  balg::FiniteBA algebra(atom_ids);
  for (std::size_t c = 0; c < atom_count; ++c)
    if (algebra.atom_index(atom_ids[c]) != c)
      throw DefectError("amalgamated_limit: atom naming lost class order");

  LimitAlgebra out{std::move(algebra), std::move(conds), std::move(skel.below), {}, {}};
  for (std::uint32_t rep : skel.minimal_reps) out.atom_rep.push_back(rep);

  out.limit_map.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.limit_map[i].resize(atom_count);
    for (std::size_t c = 0; c < atom_count; ++c) {
      const Condition& rep = out.conditions.at(out.atom_rep[c]);
      std::optional<std::uint32_t> found;
      for (std::size_t a = 0; a < system.algebra(i).atom_count(); ++a) {
        const SysElement atom = canonical_element(system, i, Mask{1} << a);
        if (!out.conditions.leq(rep, Condition{atom, atom})) continue;
        if (found)
          throw DefectError("amalgamated_limit: limit atom below two distinct atoms of " +
                            system.index().id(i));
        found = static_cast<std::uint32_t>(a);
      }
      if (!found)
        throw DefectError("amalgamated_limit: limit atom below no atom of " + system.index().id(i) +
                          " (rep " + out.conditions.describe(rep) + ")");
      out.limit_map[i][c] = *found;
    }
  }
  return out;
}

namespace {

// Extended system: the original index with a fresh top whose algebra is the
// limit; the maps at the top are the limit atom maps.
diagram::BASystem extended_system(const diagram::BASystem& system, const LimitAlgebra& limit) {
  auto added = order::add_top(system.index().base());
  auto check = order::check_almost_lattice(added.extended);
  if (!check.ok)
    throw DefectError("extended index failed the almost-lattice axioms");
  const order::AlmostLattice ext = std::move(*check.lattice);

  const std::size_t n = system.index().size();
  const std::size_t en = ext.size();
  const std::size_t top = ext.index_of(added.top_id);
  // Positions shift because element lists are sorted; map old ids to new slots.
  std::vector<std::size_t> new_pos(n);
  for (std::size_t i = 0; i < n; ++i) new_pos[i] = ext.index_of(system.index().id(i));

  std::vector<balg::FiniteBA> algebras;
  algebras.reserve(en);
  for (std::size_t e = 0; e < en; ++e) {
    if (e == top) {
      algebras.push_back(limit.algebra);
      continue;
    }
    algebras.push_back(system.algebra(system.index().index_of(ext.id(e))));
  }

  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::uint32_t>> maps;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      if (i != j && system.index().leq(i, j)) maps[{new_pos[j], new_pos[i]}] = system.atom_map(j, i);
  for (std::size_t i = 0; i < n; ++i) maps[{top, new_pos[i]}] = limit.limit_map[i];
  return diagram::BASystem(ext, std::move(algebras), std::move(maps));
}

}  // namespace

EmbeddabilityReport verify_embeddability(const diagram::BASystem& system, const LimitAlgebra& limit) {
  EmbeddabilityReport rep;
  const auto& L = system.index();
  const std::size_t n = L.size();
  const std::size_t atoms = limit.algebra.atom_count();

  for (std::size_t i = 0; i < n; ++i) {
    bool good = true;
    Mask hit = 0;
    for (std::size_t c = 0; c < atoms; ++c) hit |= Mask{1} << limit.limit_map[i][c];
    if (hit != system.algebra(i).full()) {
      good = false;
      rep.failures.push_back("limit map onto " + L.id(i) + " is not surjective");
    }
    for (Mask p = 1; good && p <= system.algebra(i).full(); ++p) {
      const SysElement e = canonical_element(system, i, p);
      const std::size_t d = limit.conditions.index_of(Condition{e, e});
      const Mask image_in_limit = limit.dense_map[d];
      Mask preim = 0;
      for (std::size_t c = 0; c < atoms; ++c)
        if (p >> limit.limit_map[i][c] & 1) preim |= Mask{1} << c;
      if (image_in_limit != preim) {
        good = false;
        rep.failures.push_back("embedding of " + L.id(i) + " is not the atom-map preimage");
        break;
      }
      Mask recovered = 0;
      for (std::size_t c = 0; c < atoms; ++c)
        if (image_in_limit >> c & 1) recovered |= Mask{1} << limit.limit_map[i][c];
      if (recovered != p || (p != 0 && image_in_limit == 0)) {
        good = false;
        rep.failures.push_back("projection does not recover elements of " + L.id(i));
        break;
      }
    }
    rep.per_index.emplace_back(L.id(i), good);
  }

  rep.meet_identity = true;
  for (std::size_t d = 0; d < limit.conditions.size() && rep.meet_identity; ++d) {
    const Condition& c = limit.conditions.at(d);
    const std::size_t da = limit.conditions.index_of(Condition{c.a, c.a});
    const std::size_t db = limit.conditions.index_of(Condition{c.b, c.b});
    if (limit.dense_map[d] != (limit.dense_map[da] & limit.dense_map[db])) {
      rep.meet_identity = false;
      rep.failures.push_back("meet identity fails at " + limit.conditions.describe(c));
    }
  }

  rep.density = true;
  for (std::size_t c = 0; c < atoms; ++c)
    if (!(limit.dense_map[limit.atom_rep[c]] >> c & 1)) {
      rep.density = false;
      rep.failures.push_back("atom " + limit.algebra.atom(c) + " not below its own class image");
    }

  rep.extended_report = diagram::validate_system(extended_system(system, limit));
  rep.extended_ok = rep.extended_report.ok;
  if (!rep.extended_ok)
    rep.failures.push_back("extended system violation: " + rep.extended_report.violations.front().kind);

  rep.ok = rep.meet_identity && rep.density && rep.extended_ok;
  for (const auto& [id, good] : rep.per_index) rep.ok = rep.ok && good;
  return rep;
}

DegenerateReport degenerate_identities(const diagram::BASystem& system, const LimitAlgebra& limit) {
  DegenerateReport rep;
  const auto& L = system.index();
  const std::size_t n = L.size();
  const auto maxes = L.maximal_elements();

  if (auto max = L.maximum()) {
    rep.max_index = L.id(*max);
    rep.lattice = true;
    const std::size_t m = *max;
    bool iso = limit.algebra.atom_count() == system.algebra(m).atom_count();
    Mask hit = 0;
    for (std::uint32_t a : limit.limit_map[m]) hit |= Mask{1} << a;
    iso = iso && hit == system.algebra(m).full();
    for (std::size_t i = 0; i < n && iso; ++i) {
      const auto& mi = system.atom_map(m, i);
      for (std::size_t c = 0; c < limit.algebra.atom_count(); ++c)
        if (limit.limit_map[i][c] != mi[limit.limit_map[m][c]]) {
          iso = false;
          break;
        }
    }
    rep.iso_to_max = iso;

    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    auto direct = diagram::direct_limit(system, all);
    rep.direct_limit_agrees = iso && direct.max_index == m && direct.algebra == system.algebra(m);
  }

  if (n == 3 && maxes.size() == 2) {
    const std::size_t bot = L.meet(maxes[0], maxes[1]);
    if (system.algebra(bot).atom_count() == 1) {
      rep.product_shape = true;
      const std::size_t left = maxes[0], right = maxes[1];
      const std::size_t want =
          system.algebra(left).atom_count() * system.algebra(right).atom_count();
      bool iso = limit.algebra.atom_count() == want;
      std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
      for (std::size_t c = 0; iso && c < limit.algebra.atom_count(); ++c)
        if (!seen.insert({limit.limit_map[left][c], limit.limit_map[right][c]}).second) iso = false;
      rep.iso_to_free_product = iso && seen.size() == want;
    }
  }
  return rep;
}

}  // namespace amalgam::amal
