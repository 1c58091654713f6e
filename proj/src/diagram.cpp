#include "amalgam/diagram.hpp"

#include <algorithm>
#include <set>

namespace amalgam::diagram {

namespace {

std::string mask_to_ids(const balg::FiniteBA& ba, Mask m) {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < ba.atom_count(); ++i)
    if (m >> i & 1) {
      if (!first) out += ",";
      out += ba.atom(i);
      first = false;
    }
  return out + "}";
}

}  // namespace

EmbeddingSquare product_square(const balg::FiniteBA& left, const balg::FiniteBA& right) {
  balg::FiniteBA bottom(std::vector<std::string>{"."});
  auto fp = balg::free_product(left, right);
  auto constant = [&](const balg::FiniteBA& src) {
    return balg::AtomMap(src, bottom, std::vector<std::uint32_t>(src.atom_count(), 0));
  };
  return {bottom, left, right, fp.product, constant(left), constant(right),
          std::move(fp.to_left), std::move(fp.to_right)};
}

CorrectnessReport check_correct(const EmbeddingSquare& sq) {
  if (sq.top_to_left.source() != sq.top || sq.top_to_right.source() != sq.top ||
      sq.top_to_left.target() != sq.left || sq.top_to_right.target() != sq.right ||
      sq.left_to_bottom.source() != sq.left || sq.right_to_bottom.source() != sq.right ||
      sq.left_to_bottom.target() != sq.bottom || sq.right_to_bottom.target() != sq.bottom)
    throw ContractError("check_correct: square maps do not match the four algebras");
  for (std::size_t t = 0; t < sq.top.atom_count(); ++t)
    if (sq.left_to_bottom.at(sq.top_to_left.at(t)) != sq.right_to_bottom.at(sq.top_to_right.at(t)))
      throw ContractError("check_correct: square does not commute at top atom '" + sq.top.atom(t) + "'");

  CorrectnessReport rep;
  const std::size_t l = sq.left.atom_count(), r = sq.right.atom_count();
  const bool exhaustive = l + r <= 16 && sq.top.atom_count() <= 16 && sq.bottom.atom_count() <= 16;
  rep.exhaustive = exhaustive;
  rep.conditions = {true, true, true};

  auto through_left = [&](Mask a0) { return sq.top_to_right.image(sq.top_to_left.preimage(a0)); };
  auto through_bottom_l = [&](Mask a0) { return sq.right_to_bottom.preimage(sq.left_to_bottom.image(a0)); };
  auto through_right = [&](Mask a1) { return sq.top_to_left.image(sq.top_to_right.preimage(a1)); };
  auto through_bottom_r = [&](Mask a1) { return sq.left_to_bottom.preimage(sq.right_to_bottom.image(a1)); };

  auto note = [&](int cond, const std::string& text) {
    if (rep.witness.empty()) rep.witness = {std::string("condition-") + std::to_string(cond), text};
  };

  auto run_left = [&](Mask a0) {
    if (through_left(a0) != through_bottom_l(a0)) {
      rep.conditions[0] = false;
      note(0, "left element " + mask_to_ids(sq.left, a0));
    }
  };
  auto run_right = [&](Mask a1) {
    if (through_right(a1) != through_bottom_r(a1)) {
      rep.conditions[1] = false;
      note(1, "right element " + mask_to_ids(sq.right, a1));
    }
  };
  auto run_compat = [&](Mask a0, Mask a1) {
    if (a0 == 0 || a1 == 0) return;
    if (sq.left_to_bottom.image(a0) != sq.right_to_bottom.image(a1)) return;
    if ((sq.top_to_left.preimage(a0) & sq.top_to_right.preimage(a1)) == 0) {
      rep.conditions[2] = false;
      note(2, "incompatible pair " + mask_to_ids(sq.left, a0) + " " + mask_to_ids(sq.right, a1));
    }
  };

  if (exhaustive) {
    for (Mask a0 = 0; a0 <= sq.left.full(); ++a0) run_left(a0);
    for (Mask a1 = 0; a1 <= sq.right.full(); ++a1) run_right(a1);
    // Bucket right elements by their bottom projection.
    std::map<Mask, std::vector<Mask>> bucket;
    for (Mask a1 = 1; a1 <= sq.right.full(); ++a1) bucket[sq.right_to_bottom.image(a1)].push_back(a1);
    for (Mask a0 = 1; a0 <= sq.left.full(); ++a0) {
      auto it = bucket.find(sq.left_to_bottom.image(a0));
      if (it == bucket.end()) continue;
      for (Mask a1 : it->second) run_compat(a0, a1);
    }
  } else {
    // Atom-level checks decide each condition; a seeded element sample guards
    // the reduction from elements to atoms.
    for (std::size_t a = 0; a < l; ++a) run_left(Mask{1} << a);
    for (std::size_t a = 0; a < r; ++a) run_right(Mask{1} << a);
    for (std::size_t a = 0; a < l; ++a)
      for (std::size_t b = 0; b < r; ++b) run_compat(Mask{1} << a, Mask{1} << b);
    Rng rng(0x9e3779b97f4a7c15ULL);
    for (int k = 0; k < 512; ++k) {
      run_left(rng.next() & sq.left.full());
      run_right(rng.next() & sq.right.full());
      run_compat(rng.next() & sq.left.full(), rng.next() & sq.right.full());
    }
  }

  rep.conditions_agree = rep.conditions[0] == rep.conditions[1] && rep.conditions[1] == rep.conditions[2];
  rep.verdict = rep.conditions[0] && rep.conditions[1] && rep.conditions[2];
  if (!rep.conditions_agree)
    throw DefectError("check_correct: the three formulations disagree (" + rep.witness[0] + " " +
                      (rep.witness.size() > 1 ? rep.witness[1] : "") + ")");
  return rep;
}

BASystem::BASystem(order::AlmostLattice index, std::vector<balg::FiniteBA> algebras,
                   std::map<std::pair<std::size_t, std::size_t>, std::vector<std::uint32_t>> strict_maps)
    : index_(std::move(index)), algebras_(std::move(algebras)) {
  const std::size_t n = index_.size();
  if (algebras_.size() != n)
    throw ContractError("system: need exactly one algebra per index element");
  maps_.resize(n * n);
  fibers_.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& id_map = maps_[i * n + i];
    id_map.resize(algebras_[i].atom_count());
    for (std::size_t a = 0; a < id_map.size(); ++a) id_map[a] = static_cast<std::uint32_t>(a);
  }
  for (auto& [key, table] : strict_maps) {
    const auto [upper, lower] = key;
    if (upper >= n || lower >= n) throw ContractError("system: map index out of range");
    if (upper == lower || !index_.leq(lower, upper))
      throw ContractError("system: map given for pair (" + index_.id(upper) + "," +
                          index_.id(lower) + ") that is not strictly comparable");
    if (table.size() != algebras_[upper].atom_count())
      throw ContractError("system: map for (" + index_.id(upper) + "," + index_.id(lower) +
                          ") has wrong atom count");
    for (std::uint32_t v : table)
      if (v >= algebras_[lower].atom_count())
        throw ContractError("system: map for (" + index_.id(upper) + "," + index_.id(lower) +
                            ") targets an unknown atom");
    maps_[upper * n + lower] = std::move(table);
  }
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      if (i == j || !index_.leq(i, j)) continue;
      if (maps_[j * n + i].empty() && algebras_[j].atom_count() > 0 &&
          maps_[j * n + i].size() != algebras_[j].atom_count())
        throw ContractError("system: missing map for comparable pair (" + index_.id(j) + "," +
                            index_.id(i) + ")");
    }
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      if (!index_.leq(i, j)) continue;
      auto& fib = fibers_[j * n + i];
      fib.assign(algebras_[i].atom_count(), 0);
      const auto& tab = maps_[j * n + i];
      for (std::size_t s = 0; s < tab.size(); ++s) fib[tab[s]] |= Mask{1} << s;
    }
}

const std::vector<std::uint32_t>& BASystem::atom_map(std::size_t j, std::size_t i) const {
  if (!index_.leq(i, j)) throw ContractError("system: atom_map requires i <= j");
  return maps_[j * index_.size() + i];
}

Mask BASystem::image(std::size_t j, std::size_t i, Mask element_at_j) const {
  const auto& tab = atom_map(j, i);
  Mask out = 0;
  while (element_at_j) {
    const int bit = std::countr_zero(element_at_j);
    element_at_j &= element_at_j - 1;
    out |= Mask{1} << tab[static_cast<std::size_t>(bit)];
  }
  return out;
}

Mask BASystem::preimage(std::size_t i, std::size_t j, Mask element_at_i) const {
  if (!index_.leq(i, j)) throw ContractError("system: preimage requires i <= j");
  const auto& fib = fibers_[j * index_.size() + i];
  Mask out = 0;
  while (element_at_i) {
    const int bit = std::countr_zero(element_at_i);
    element_at_i &= element_at_i - 1;
    out |= fib[static_cast<std::size_t>(bit)];
  }
  return out;
}

SystemReport validate_system(const BASystem& s) {
  SystemReport rep;
  const auto& L = s.index();
  const std::size_t n = L.size();

  [&] {  // surjectivity, first failing pair
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) {
        if (i == j || !L.leq(i, j)) continue;
        Mask hit = 0;
        for (std::uint32_t v : s.atom_map(j, i)) hit |= Mask{1} << v;
        if (hit != s.algebra(i).full()) {
          rep.violations.push_back({"surjectivity", {L.id(j), L.id(i)}});
          return;
        }
      }
  }();

  [&] {  // identity maps
    for (std::size_t i = 0; i < n; ++i) {
      const auto& tab = s.atom_map(i, i);
      for (std::size_t a = 0; a < tab.size(); ++a)
        if (tab[a] != a) {
          rep.violations.push_back({"identity", {L.id(i)}});
          return;
        }
    }
  }();

  [&] {  // commutativity over comparable triples
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) {
        if (!L.leq(j, k)) continue;
        for (std::size_t i = 0; i < n; ++i) {
          if (!L.leq(i, j)) continue;
          const auto& kj = s.atom_map(k, j);
          const auto& ji = s.atom_map(j, i);
          const auto& ki = s.atom_map(k, i);
          for (std::size_t a = 0; a < kj.size(); ++a)
            if (ji[kj[a]] != ki[a]) {
              rep.violations.push_back(
                  {"commutativity", {L.id(i), L.id(j), L.id(k), s.algebra(k).atom(a)}});
              return;
            }
        }
      }
  }();

  [&] {  // correctness on every pair with a defined join
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        if (!L.has_join(i, j)) continue;
        const std::size_t m = L.meet(i, j), t = L.join(i, j);
        std::vector<std::uint8_t> lifted(s.algebra(i).atom_count() * s.algebra(j).atom_count(), 0);
        const auto& ti = s.atom_map(t, i);
        const auto& tj = s.atom_map(t, j);
        for (std::size_t a = 0; a < s.algebra(t).atom_count(); ++a)
          lifted[ti[a] * s.algebra(j).atom_count() + tj[a]] = 1;
        const auto& im = s.atom_map(i, m);
        const auto& jm = s.atom_map(j, m);
        for (std::size_t a = 0; a < s.algebra(i).atom_count(); ++a)
          for (std::size_t b = 0; b < s.algebra(j).atom_count(); ++b)
            if (im[a] == jm[b] && !lifted[a * s.algebra(j).atom_count() + b]) {
              rep.violations.push_back(
                  {"correctness", {L.id(i), L.id(j), s.algebra(i).atom(a), s.algebra(j).atom(b)}});
              return;
            }
      }
  }();

  rep.ok = rep.violations.empty();
  return rep;
}

namespace {

std::string tuple_atom_id(const std::vector<std::string>& coords, const std::vector<std::uint32_t>& tuple) {
  if (coords.empty()) return "()";
  std::string out;
  for (std::size_t c = 0; c < coords.size(); ++c) {
    if (c) out += ",";
    out += coords[c] + "=" + std::to_string(tuple[c]);
  }
  return out;
}

}  // namespace

BASystem generate_coordinate_system(const order::AlmostLattice& index,
                                    const CoordinateAssignment& assignment) {
  const std::size_t n = index.size();
  if (assignment.coords.size() != n)
    throw ContractError("coordinate system: need one coordinate set per index element");

  std::vector<std::vector<std::string>> coords = assignment.coords;
  for (auto& c : coords) {
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    for (const auto& id : c)
      if (!assignment.fiber_size.count(id))
        throw ContractError("coordinate system: coordinate '" + id + "' has no fiber size");
  }
  for (const auto& [id, f] : assignment.fiber_size)
    if (f < 1) throw ContractError("coordinate system: fiber of '" + id + "' must have size >= 1");

  auto isect = [](const std::vector<std::string>& a, const std::vector<std::string>& b) {
    std::vector<std::string> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
  };
  auto unite = [](const std::vector<std::string>& a, const std::vector<std::string>& b) {
    std::vector<std::string> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (coords[index.meet(i, j)] != isect(coords[i], coords[j]))
        throw ContractError("coordinate system: coords at meet of (" + index.id(i) + "," +
                            index.id(j) + ") are not the intersection");
      if (index.has_join(i, j) && coords[index.join(i, j)] != unite(coords[i], coords[j]))
        throw ContractError("coordinate system: coords at join of (" + index.id(i) + "," +
                            index.id(j) + ") are not the union");
    }

  // Atoms at i: all assignments of fiber values to coords(i), odometer order.
  std::vector<std::vector<std::vector<std::uint32_t>>> tuples(n);
  std::vector<std::vector<std::string>> atom_ids(n);
  std::vector<balg::FiniteBA> algebras;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t count = 1;
    for (const auto& c : coords[i]) {
      count *= assignment.fiber_size.at(c);
      if (count > 64) throw BudgetError("coordinate system: algebra at '" + index.id(i) +
                                        "' would exceed 64 atoms");
    }
    std::vector<std::uint32_t> tuple(coords[i].size(), 0);
    for (std::uint64_t k = 0; k < count; ++k) {
      tuples[i].push_back(tuple);
      atom_ids[i].push_back(tuple_atom_id(coords[i], tuple));
      for (std::size_t c = coords[i].size(); c-- > 0;) {
        if (++tuple[c] < assignment.fiber_size.at(coords[i][c])) break;
        tuple[c] = 0;
      }
    }
    algebras.emplace_back(atom_ids[i]);
  }

  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::uint32_t>> maps;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      if (i == j || !index.leq(i, j)) continue;
      std::vector<std::uint32_t> table(algebras[j].atom_count());
      for (std::size_t s = 0; s < table.size(); ++s) {
        // Position s in the sorted algebra corresponds to the tuple whose id
        // sorts there; recover it through the id list.
        const std::string& id = algebras[j].atom(s);
        const std::size_t raw =
            static_cast<std::size_t>(std::find(atom_ids[j].begin(), atom_ids[j].end(), id) -
                                     atom_ids[j].begin());
        const auto& tuple = tuples[j][raw];
        std::vector<std::uint32_t> restricted(coords[i].size());
        for (std::size_t c = 0; c < coords[i].size(); ++c) {
          const auto pos = static_cast<std::size_t>(
              std::lower_bound(coords[j].begin(), coords[j].end(), coords[i][c]) - coords[j].begin());
          restricted[c] = tuple[pos];
        }
        table[s] =
            static_cast<std::uint32_t>(algebras[i].atom_index(tuple_atom_id(coords[i], restricted)));
      }
      maps[{j, i}] = std::move(table);
    }

  BASystem system(index, std::move(algebras), std::move(maps));
  auto rep = validate_system(system);
  if (!rep.ok)
    throw DefectError("coordinate system failed validation: " + rep.violations.front().kind);
  return system;
}

namespace {

order::FinitePoset chain_poset(std::size_t n) {
  std::vector<order::ElementId> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back("c" + std::to_string(i));
  std::vector<std::pair<order::ElementId, order::ElementId>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) pairs.emplace_back(ids[i], ids[j]);
  return order::FinitePoset(ids, pairs);
}

order::FinitePoset full_product_poset(std::size_t p, std::size_t q) {
  std::vector<order::ElementId> ids;
  std::vector<std::pair<std::size_t, std::size_t>> xy;
  for (std::size_t a = 0; a <= p; ++a)
    for (std::size_t g = 0; g <= q; ++g) {
      ids.push_back(std::to_string(a) + "," + std::to_string(g));
      xy.emplace_back(a, g);
    }
  std::vector<std::pair<order::ElementId, order::ElementId>> pairs;
  for (std::size_t x = 0; x < ids.size(); ++x)
    for (std::size_t y = 0; y < ids.size(); ++y)
      if (xy[x].first <= xy[y].first && xy[x].second <= xy[y].second)
        pairs.emplace_back(ids[x], ids[y]);
  return order::FinitePoset(ids, pairs);
}

order::FinitePoset add_bottom_chain(const order::FinitePoset& base, std::size_t k) {
  std::vector<order::ElementId> ids = base.elements();
  std::vector<order::ElementId> lows;
  for (std::size_t i = 0; i < k; ++i) lows.push_back("_b" + std::to_string(i));
  ids.insert(ids.end(), lows.begin(), lows.end());
  auto pairs = base.relation_pairs();
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) pairs.emplace_back(lows[i], lows[j]);
    for (const auto& e : base.elements()) pairs.emplace_back(lows[i], e);
  }
  return order::FinitePoset(ids, pairs);
}

struct Shape {
  std::string label;
  order::AlmostLattice lattice;
};

std::vector<Shape> shape_pool() {
  std::vector<Shape> pool;
  auto push = [&](const std::string& label, const order::FinitePoset& poset) {
    auto check = order::check_almost_lattice(poset);
    if (!check.ok) throw DefectError("shape pool: '" + label + "' is not an almost-lattice");
    pool.push_back({label, std::move(*check.lattice)});
  };
  for (std::size_t n = 1; n <= 6; ++n) push("chain" + std::to_string(n), chain_poset(n));
  pool.push_back({"grid1x1", order::grid_index_set(1, 1)});
  pool.push_back({"grid1x2", order::grid_index_set(1, 2)});
  pool.push_back({"grid2x1", order::grid_index_set(2, 1)});
  push("prod2x2", full_product_poset(1, 1));
  push("prod2x3", full_product_poset(1, 2));
  push("prod3x2", full_product_poset(2, 1));
  push("grid1x1+b1", add_bottom_chain(order::grid_index_set(1, 1).base(), 1));
  push("grid1x1+b2", add_bottom_chain(order::grid_index_set(1, 1).base(), 2));
  push("grid1x1+b3", add_bottom_chain(order::grid_index_set(1, 1).base(), 3));
  push("grid1x2+b1", add_bottom_chain(order::grid_index_set(1, 2).base(), 1));
  push("grid2x1+b1", add_bottom_chain(order::grid_index_set(2, 1).base(), 1));
  push("prod2x2+b1", add_bottom_chain(full_product_poset(1, 1), 1));
  push("prod2x2+b2", add_bottom_chain(full_product_poset(1, 1), 2));
  return pool;
}

std::vector<std::size_t> join_irreducibles_of(const order::AlmostLattice& L) {
  std::vector<std::size_t> out;
  const std::size_t n = L.size();
  for (std::size_t i = 0; i < n; ++i) {
    bool reducible = false;
    for (std::size_t a = 0; a < n && !reducible; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        if (a == i || b == i) continue;
        if (L.leq(a, i) && L.leq(b, i) && L.has_join(a, b) && L.join(a, b) == i) {
          reducible = true;
          break;
        }
      }
    if (!reducible) out.push_back(i);
  }
  return out;
}

}  // namespace

std::uint64_t estimate_condition_count(const BASystem& s) {
  const auto& L = s.index();
  const std::size_t n = L.size();
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < n; ++i) total += (Mask{1} << s.algebra(i).atom_count()) - 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::size_t m = L.meet(i, j);
      const std::size_t slots = std::size_t{1} << s.algebra(m).atom_count();
      std::vector<std::uint64_t> ci(slots, 0), cj(slots, 0);
      for (Mask p = 1; p <= s.algebra(i).full(); ++p) ++ci[s.image(i, m, p)];
      for (Mask q = 1; q <= s.algebra(j).full(); ++q) ++cj[s.image(j, m, q)];
      for (std::size_t r = 0; r < slots; ++r) total += ci[r] * cj[r];
    }
  return total;
}

GeneratedSystem random_coordinate_system(std::uint64_t seed, const GeneratorBudgets& budgets) {
  Rng rng(seed);
  auto pool = shape_pool();
  std::vector<const Shape*> eligible;
  for (const auto& sh : pool)
    if (sh.lattice.size() <= budgets.max_index_size) eligible.push_back(&sh);
  if (eligible.empty()) throw ContractError("generator: no index shape fits max_index_size");
  const Shape& shape = *eligible[rng.below(eligible.size())];
  const auto& L = shape.lattice;
  const std::size_t n = L.size();
  const auto irreducibles = join_irreducibles_of(L);

  for (int attempt = 0; attempt < 64; ++attempt) {
    const std::uint32_t base_cap = attempt < 16 ? 2 : (attempt < 40 ? 1 : 0);
    const std::uint32_t fiber_cap = std::max<std::uint32_t>(
        1, attempt < 28 ? budgets.max_fiber : budgets.max_fiber > 1 ? 2 : 1);

    CoordinateAssignment assignment;
    assignment.coords.resize(n);
    std::size_t next_coord = 0;
    for (std::size_t e : irreducibles) {
      const std::uint32_t bases =
          base_cap == 0 ? 0
                        : static_cast<std::uint32_t>(rng.chance(3, 10) ? 0 : rng.chance(4, 5) ? 1 : 2);
      for (std::uint32_t b = 0; b < std::min(bases, base_cap); ++b) {
        const std::string cid = "x" + std::to_string(next_coord++);
        std::uint32_t f = 2;
        if (fiber_cap >= 3)
          f = rng.chance(1, 4) ? 1 : rng.chance(2, 3) ? 2 : 3;
        else
          f = static_cast<std::uint32_t>(rng.range(1, fiber_cap));
        assignment.fiber_size[cid] = f;
        for (std::size_t i = 0; i < n; ++i)
          if (L.leq(e, i)) assignment.coords[i].push_back(cid);
      }
    }

    // Budget screening before materializing.
    bool fits = true;
    std::uint64_t product = 1, total_elems = 0, threads = 1;
    for (const auto& [cid, f] : assignment.fiber_size) threads *= f;
    if (threads > budgets.max_limit_atoms) fits = false;
    for (std::size_t i = 0; i < n && fits; ++i) {
      std::uint64_t atoms = 1;
      for (const auto& c : assignment.coords[i]) atoms *= assignment.fiber_size.at(c);
      if (atoms > budgets.max_atoms_per_algebra) fits = false;
      product *= atoms;
      if (product > budgets.product_budget) fits = false;
      total_elems += std::uint64_t{1} << atoms;
      if (total_elems > budgets.max_total_elements) fits = false;
    }
    if (!fits) continue;

    BASystem system = generate_coordinate_system(L, assignment);
    if (estimate_condition_count(system) > budgets.max_condition_count) continue;
    return {std::move(system), std::move(assignment), shape.label};
  }
  // Trivial assignment always fits.
  CoordinateAssignment assignment;
  assignment.coords.resize(n);
  return {generate_coordinate_system(L, assignment), std::move(assignment), shape.label};
}

DirectLimitResult direct_limit(const BASystem& s, const std::vector<std::size_t>& subset) {
  std::vector<std::size_t> K = subset;
  std::sort(K.begin(), K.end());
  K.erase(std::unique(K.begin(), K.end()), K.end());
  if (K.empty()) throw ContractError("direct_limit: empty subset");
  for (std::size_t e : K)
    if (e >= s.index().size()) throw ContractError("direct_limit: index out of range");
  const auto& L = s.index();
  for (std::size_t a : K)
    for (std::size_t b : K) {
      bool bounded = false;
      for (std::size_t c : K)
        if (L.leq(a, c) && L.leq(b, c)) { bounded = true; break; }
      if (!bounded)
        throw ContractError("direct_limit: subset not directed at (" + L.id(a) + "," + L.id(b) + ")");
    }
  std::size_t top = K.front();
  for (std::size_t x : K) {
    if (L.leq(top, x)) { top = x; continue; }
    if (!L.leq(x, top))
      for (std::size_t c : K)
        if (L.leq(top, c) && L.leq(x, c)) { top = c; break; }
  }
  for (std::size_t x : K)
    if (!L.leq(x, top)) throw DefectError("direct_limit: directed subset has no maximum");
  return {top, s.algebra(top)};
}

}  // namespace amalgam::diagram
