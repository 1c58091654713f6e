#include "amalgam/order.hpp"

#include <algorithm>
#include <set>

namespace amalgam::order {

namespace {

std::vector<ElementId> sorted_unique_ids(std::vector<ElementId> ids) {
  if (ids.empty()) throw ContractError("poset: element list must be non-empty");
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
    throw ContractError("poset: duplicate element id");
  return ids;
}

struct LawScan {
  std::vector<PosetViolation> violations;
};

LawScan scan_poset_laws(const std::vector<ElementId>& ids, const std::vector<std::uint8_t>& rel) {
  const std::size_t n = ids.size();
  auto leq = [&](std::size_t a, std::size_t b) { return rel[a * n + b] != 0; };
  LawScan scan;
  for (std::size_t i = 0; i < n; ++i)
    if (!leq(i, i)) {
      scan.violations.push_back({"reflexivity", {ids[i]}});
      break;
    }
  [&] {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j && leq(i, j) && leq(j, i)) {
          scan.violations.push_back({"antisymmetry", {ids[i], ids[j]}});
          return;
        }
  }();
  [&] {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (!leq(i, j)) continue;
        for (std::size_t k = 0; k < n; ++k)
          if (leq(j, k) && !leq(i, k)) {
            scan.violations.push_back({"transitivity", {ids[i], ids[j], ids[k]}});
            return;
          }
      }
  }();
  return scan;
}

std::vector<std::uint8_t> relation_matrix(const std::vector<ElementId>& ids,
                                          const std::vector<std::pair<ElementId, ElementId>>& pairs) {
  const std::size_t n = ids.size();
  auto idx = [&](const ElementId& e) {
    auto it = std::lower_bound(ids.begin(), ids.end(), e);
    if (it == ids.end() || *it != e) throw ContractError("poset: unknown element id '" + e + "'");
    return static_cast<std::size_t>(it - ids.begin());
  };
  std::vector<std::uint8_t> rel(n * n, 0);
  for (const auto& [a, b] : pairs) rel[idx(a) * n + idx(b)] = 1;
  return rel;
}

}  // namespace

FinitePoset::FinitePoset(std::vector<ElementId> ids, std::vector<std::pair<ElementId, ElementId>> leq_pairs) {
  ids_ = sorted_unique_ids(std::move(ids));
  rel_ = relation_matrix(ids_, leq_pairs);
  auto scan = scan_poset_laws(ids_, rel_);
  if (!scan.violations.empty()) {
    std::string msg = "poset: " + scan.violations.front().law + " violated at (";
    for (std::size_t i = 0; i < scan.violations.front().witness.size(); ++i)
      msg += (i ? "," : "") + scan.violations.front().witness[i];
    throw ContractError(msg + ")");
  }
}

std::size_t FinitePoset::index_of(const ElementId& id) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id) throw ContractError("poset: unknown element id '" + id + "'");
  return static_cast<std::size_t>(it - ids_.begin());
}

std::vector<std::pair<ElementId, ElementId>> FinitePoset::relation_pairs() const {
  std::vector<std::pair<ElementId, ElementId>> out;
  const std::size_t n = ids_.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (rel_[a * n + b]) out.emplace_back(ids_[a], ids_[b]);
  return out;
}

PosetReport validate_poset(std::vector<ElementId> elements,
                           std::vector<std::pair<ElementId, ElementId>> leq_pairs) {
  auto ids = sorted_unique_ids(std::move(elements));
  auto rel = relation_matrix(ids, leq_pairs);
  PosetReport report;
  report.violations = scan_poset_laws(ids, rel).violations;
  if (report.violations.empty()) report.poset = FinitePoset(ids, leq_pairs);
  return report;
}

const char* axiom_name(LatticeAxiom a) {
  switch (a) {
    case LatticeAxiom::MeetExists: return "meet-exists";
    case LatticeAxiom::JoinExists: return "join-exists";
    case LatticeAxiom::TwoOfThreeBounded: return "two-of-three-bounded";
    case LatticeAxiom::Distributive: return "distributive";
    case LatticeAxiom::JoinStable: return "join-stable";
    case LatticeAxiom::MeetCover: return "meet-cover";
  }
  return "?";
}

namespace {

struct Tables {
  bool meets_ok = true, joins_ok = true;
  std::vector<std::int32_t> meet, join;
  AxiomViolation meet_violation, join_violation;
};

Tables build_tables(const FinitePoset& p) {
  const std::size_t n = p.size();
  Tables t;
  t.meet.assign(n * n, -1);
  t.join.assign(n * n, -1);
  bool meet_witnessed = false, join_witnessed = false;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      std::vector<std::size_t> lower, upper;
      for (std::size_t k = 0; k < n; ++k) {
        if (p.leq(k, a) && p.leq(k, b)) lower.push_back(k);
        if (p.leq(a, k) && p.leq(b, k)) upper.push_back(k);
      }
      for (std::size_t m : lower) {
        bool greatest = true;
        for (std::size_t l : lower)
          if (!p.leq(l, m)) { greatest = false; break; }
        if (greatest) { t.meet[a * n + b] = static_cast<std::int32_t>(m); break; }
      }
      if (t.meet[a * n + b] < 0 && !meet_witnessed) {
        meet_witnessed = true;
        t.meets_ok = false;
        t.meet_violation = {LatticeAxiom::MeetExists, {p.id(std::min(a, b)), p.id(std::max(a, b))},
                            "pair has no greatest lower bound"};
      }
      if (!upper.empty()) {
        for (std::size_t m : upper) {
          bool least = true;
          for (std::size_t u : upper)
            if (!p.leq(m, u)) { least = false; break; }
          if (least) { t.join[a * n + b] = static_cast<std::int32_t>(m); break; }
        }
        if (t.join[a * n + b] < 0 && !join_witnessed) {
          join_witnessed = true;
          t.joins_ok = false;
          t.join_violation = {LatticeAxiom::JoinExists, {p.id(std::min(a, b)), p.id(std::max(a, b))},
                              "bounded pair has no least upper bound"};
        }
      }
    }
  return t;
}

}  // namespace

AlmostLatticeCheck check_almost_lattice(const FinitePoset& poset) {
  const std::size_t n = poset.size();
  AlmostLatticeCheck res;
  res.axiom.fill(true);

  Tables t = build_tables(poset);
  res.axiom[0] = t.meets_ok;
  res.axiom[1] = t.joins_ok;
  if (!t.meets_ok) res.violations.push_back(t.meet_violation);
  if (!t.joins_ok) res.violations.push_back(t.join_violation);
  res.tables_built = t.meets_ok && t.joins_ok;

  auto has_ub = [&](std::size_t a, std::size_t b) {
    for (std::size_t k = 0; k < n; ++k)
      if (poset.leq(a, k) && poset.leq(b, k)) return true;
    return false;
  };

  // Among any three elements, two have an upper bound.
  for (std::size_t a = 0; a < n && res.axiom[2]; ++a)
    for (std::size_t b = a + 1; b < n && res.axiom[2]; ++b)
      for (std::size_t c = b + 1; c < n; ++c)
        if (!has_ub(a, b) && !has_ub(a, c) && !has_ub(b, c)) {
          res.axiom[2] = false;
          res.violations.push_back({LatticeAxiom::TwoOfThreeBounded,
                                    {poset.id(a), poset.id(b), poset.id(c)},
                                    "no two of the three have an upper bound"});
          break;
        }

  if (res.tables_built) {
    auto meet = [&](std::size_t a, std::size_t b) { return static_cast<std::size_t>(t.meet[a * n + b]); };
    auto join_def = [&](std::size_t a, std::size_t b) { return t.join[a * n + b] >= 0; };
    auto join = [&](std::size_t a, std::size_t b) { return static_cast<std::size_t>(t.join[a * n + b]); };

    // Distributive laws, checked wherever both sides exist.
    for (std::size_t a = 0; a < n && res.axiom[3]; ++a)
      for (std::size_t b = 0; b < n && res.axiom[3]; ++b)
        for (std::size_t c = 0; c < n; ++c) {
          if (join_def(b, c) && join_def(meet(a, b), meet(a, c)) &&
              meet(a, join(b, c)) != join(meet(a, b), meet(a, c))) {
            res.axiom[3] = false;
            res.violations.push_back({LatticeAxiom::Distributive,
                                      {poset.id(a), poset.id(b), poset.id(c)},
                                      "meet does not distribute over join"});
            break;
          }
          if (join_def(a, meet(b, c)) && join_def(a, b) && join_def(a, c) &&
              join(a, meet(b, c)) != meet(join(a, b), join(a, c))) {
            res.axiom[3] = false;
            res.violations.push_back({LatticeAxiom::Distributive,
                                      {poset.id(a), poset.id(b), poset.id(c)},
                                      "join does not distribute over meet"});
            break;
          }
        }

    // If i,j are unbounded then for any k either neither (i,k) nor (i, j∧k)
    // is bounded, or both joins exist and agree.
    for (std::size_t i = 0; i < n && res.axiom[4]; ++i)
      for (std::size_t j = 0; j < n && res.axiom[4]; ++j) {
        if (i == j || has_ub(i, j)) continue;
        for (std::size_t k = 0; k < n; ++k) {
          const bool a_def = join_def(i, k);
          const bool b_def = join_def(i, meet(j, k));
          if (!a_def && !b_def) continue;
          if (!(a_def && b_def && join(i, k) == join(i, meet(j, k)))) {
            res.axiom[4] = false;
            res.violations.push_back({LatticeAxiom::JoinStable,
                                      {poset.id(i), poset.id(j), poset.id(k)},
                                      "join with k and with j∧k disagree"});
            break;
          }
        }
      }

    // If j,j' are unbounded then (i∧j)∨(i∧j') = i for every i.
    for (std::size_t j = 0; j < n && res.axiom[5]; ++j)
      for (std::size_t jp = j + 1; jp < n && res.axiom[5]; ++jp) {
        if (has_ub(j, jp)) continue;
        for (std::size_t i = 0; i < n; ++i) {
          const std::size_t a = meet(i, j), b = meet(i, jp);
          if (!join_def(a, b) || join(a, b) != i) {
            res.axiom[5] = false;
            res.violations.push_back({LatticeAxiom::MeetCover,
                                      {poset.id(j), poset.id(jp), poset.id(i)},
                                      "(i∧j)∨(i∧j') differs from i"});
            break;
          }
        }
      }
  }

  res.ok = res.tables_built && res.axiom[2] && res.axiom[3] && res.axiom[4] && res.axiom[5];
  if (res.ok) {
    AlmostLattice lat;
    lat.base_ = poset;
    lat.meet_ = std::move(t.meet);
    lat.join_ = std::move(t.join);
    res.lattice = std::move(lat);
  }
  return res;
}

AlmostLattice::AlmostLattice(FinitePoset base) {
  auto check = check_almost_lattice(base);
  if (!check.ok) {
    std::string msg = "almost-lattice axioms violated:";
    for (const auto& v : check.violations) {
      msg += std::string(" ") + axiom_name(v.axiom) + "(";
      for (std::size_t i = 0; i < v.witness.size(); ++i) msg += (i ? "," : "") + v.witness[i];
      msg += ")";
    }
    throw ContractError(msg);
  }
  *this = std::move(*check.lattice);
}

std::size_t AlmostLattice::join(std::size_t a, std::size_t b) const {
  const std::int32_t j = join_[a * size() + b];
  if (j < 0)
    throw ContractError("join undefined for (" + id(a) + "," + id(b) + ")");
  return static_cast<std::size_t>(j);
}

std::vector<std::size_t> AlmostLattice::maximal_elements() const {
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < size(); ++a) {
    bool maximal = true;
    for (std::size_t b = 0; b < size(); ++b)
      if (a != b && leq(a, b)) { maximal = false; break; }
    if (maximal) out.push_back(a);
  }
  return out;
}

std::optional<std::size_t> AlmostLattice::maximum() const {
  auto maxes = maximal_elements();
  if (maxes.size() != 1) return std::nullopt;
  return maxes.front();
}

bool ClosedSet::contains(std::size_t e) const {
  return std::binary_search(members_.begin(), members_.end(), e);
}

bool is_closed(const AlmostLattice& lattice, const std::vector<std::size_t>& sorted_members) {
  auto in = [&](std::size_t e) {
    return std::binary_search(sorted_members.begin(), sorted_members.end(), e);
  };
  for (std::size_t a : sorted_members)
    for (std::size_t b : sorted_members) {
      if (!in(lattice.meet(a, b))) return false;
      if (lattice.has_join(a, b) && !in(lattice.join(a, b))) return false;
    }
  return true;
}

ClosedSet closure(const AlmostLattice& lattice, const std::vector<std::size_t>& seed) {
  std::set<std::size_t> members(seed.begin(), seed.end());
  for (std::size_t e : seed)
    if (e >= lattice.size()) throw ContractError("closure: element index out of range");
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::size_t> snapshot(members.begin(), members.end());
    for (std::size_t a : snapshot)
      for (std::size_t b : snapshot) {
        if (members.insert(lattice.meet(a, b)).second) grew = true;
        if (lattice.has_join(a, b) && members.insert(lattice.join(a, b)).second) grew = true;
      }
  }
  ClosedSet out;
  out.members_.assign(members.begin(), members.end());
  return out;
}

ClosedSet as_closed_set(const AlmostLattice& lattice, std::vector<std::size_t> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  for (std::size_t e : members)
    if (e >= lattice.size()) throw ContractError("closed set: element index out of range");
  if (!is_closed(lattice, members)) throw ContractError("closed set: not closed under meet/join");
  ClosedSet out;
  out.members_ = std::move(members);
  return out;
}

std::vector<std::size_t> top_elements(const AlmostLattice& lattice, const ClosedSet& set) {
  if (set.empty()) throw ContractError("top_elements: empty closed set");
  if (!is_closed(lattice, set.members())) throw ContractError("top_elements: input not closed");
  std::vector<std::size_t> tops;
  for (std::size_t a : set.members()) {
    bool maximal = true;
    for (std::size_t b : set.members())
      if (a != b && lattice.leq(a, b)) { maximal = false; break; }
    if (maximal) tops.push_back(a);
  }
  if (tops.size() > 2)
    throw DefectError("closed set with more than two maximal elements: " + lattice.id(tops[0]) +
                      "," + lattice.id(tops[1]) + "," + lattice.id(tops[2]));
  if (tops.size() == 2 && lattice.has_join(tops[0], tops[1]))
    throw DefectError("closed set with two maximal elements whose join exists: " +
                      lattice.id(tops[0]) + "," + lattice.id(tops[1]));
  return tops;
}

AddTopResult add_top(const FinitePoset& base) {
  auto check = check_almost_lattice(base);
  for (int a = 0; a < 4; ++a)
    if (!check.axiom[static_cast<std::size_t>(a)])
      throw ContractError(std::string("add_top: input violates axiom ") +
                          axiom_name(static_cast<LatticeAxiom>(a)));

  ElementId top = "top";
  {
    const auto& ids = base.elements();
    while (std::binary_search(ids.begin(), ids.end(), top)) top += "'";
  }

  std::vector<ElementId> ids = base.elements();
  ids.push_back(top);
  auto pairs = base.relation_pairs();
  for (const auto& e : base.elements()) pairs.emplace_back(e, top);
  pairs.emplace_back(top, top);

  AddTopResult res;
  res.extended = FinitePoset(ids, pairs);
  res.top_id = top;

  const std::size_t n = base.size();
  {
    std::size_t max_count = 0;
    for (std::size_t a = 0; a < n; ++a) {
      bool greatest = true;
      for (std::size_t b = 0; b < n; ++b)
        if (!base.leq(b, a)) { greatest = false; break; }
      if (greatest) ++max_count;
    }
    res.had_maximum = max_count == 1;
  }

  // The extension is a lattice; test both distributive laws directly.
  auto ext_check = check_almost_lattice(res.extended);
  if (!ext_check.tables_built)
    throw DefectError("add_top: extension failed to be a lattice");
  res.distributive_lattice = ext_check.axiom[3];

  const bool base_axioms = check.axiom[4] && check.axiom[5];
  if (res.distributive_lattice != base_axioms)
    throw DefectError("add_top: extension distributivity disagrees with join-stable/meet-cover axioms");
  return res;
}

AlmostLattice grid_index_set(std::size_t beta, std::size_t delta) {
  if (beta < 1 || delta < 1)
    throw ContractError("grid_index_set: both bounds must be at least 1");
  std::vector<ElementId> ids;
  std::vector<std::pair<std::size_t, std::size_t>> coords;
  for (std::size_t a = 0; a <= beta; ++a)
    for (std::size_t g = 0; g <= delta; ++g) {
      if (a == beta && g == delta) continue;
      ids.push_back(std::to_string(a) + "," + std::to_string(g));
      coords.emplace_back(a, g);
    }
  std::vector<std::pair<ElementId, ElementId>> pairs;
  for (std::size_t x = 0; x < ids.size(); ++x)
    for (std::size_t y = 0; y < ids.size(); ++y)
      if (coords[x].first <= coords[y].first && coords[x].second <= coords[y].second)
        pairs.emplace_back(ids[x], ids[y]);
  FinitePoset poset(ids, pairs);
  auto check = check_almost_lattice(poset);
  if (!check.ok) throw DefectError("grid_index_set: grid failed almost-lattice axioms");
  return std::move(*check.lattice);
}

}  // namespace amalgam::order
