#pragma once

// Shared fixtures and independent brute-force oracles for the test suites.

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "amalgam/amal.hpp"
#include "amalgam/balg.hpp"
#include "amalgam/common.hpp"
#include "amalgam/diagram.hpp"
#include "amalgam/order.hpp"
#include "amalgam/stone.hpp"

namespace testsupport {

using amalgam::Mask;
using amalgam::Rng;

// --- index fixtures -------------------------------------------------------

inline amalgam::order::FinitePoset fork_poset() {
  return amalgam::order::FinitePoset(
      {"bot", "left", "right"},
      {{"bot", "bot"}, {"left", "left"}, {"right", "right"}, {"bot", "left"}, {"bot", "right"}});
}

inline amalgam::order::AlmostLattice fork_lattice() {
  auto check = amalgam::order::check_almost_lattice(fork_poset());
  return std::move(*check.lattice);
}

inline amalgam::order::FinitePoset chain_poset(std::size_t n) {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back("c" + std::to_string(i));
  std::vector<std::pair<std::string, std::string>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) pairs.emplace_back(ids[i], ids[j]);
  return amalgam::order::FinitePoset(ids, pairs);
}

// --- system fixtures ------------------------------------------------------

// Three-element index, trivial bottom, independent factors of the given sizes.
inline amalgam::diagram::BASystem example1_system(std::size_t left_atoms, std::size_t right_atoms) {
  auto L = fork_lattice();
  const std::size_t bot = L.index_of("bot"), left = L.index_of("left"), right = L.index_of("right");
  std::vector<std::string> latoms, ratoms;
  for (std::size_t i = 0; i < left_atoms; ++i) latoms.push_back("l" + std::to_string(i));
  for (std::size_t i = 0; i < right_atoms; ++i) ratoms.push_back("r" + std::to_string(i));
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::uint32_t>> maps;
  std::vector<amalgam::balg::FiniteBA> slots(
      3, amalgam::balg::FiniteBA(std::vector<std::string>{"o"}));
  slots[left] = amalgam::balg::FiniteBA(latoms);
  slots[right] = amalgam::balg::FiniteBA(ratoms);
  maps[{left, bot}] = std::vector<std::uint32_t>(left_atoms, 0);
  maps[{right, bot}] = std::vector<std::uint32_t>(right_atoms, 0);
  return amalgam::diagram::BASystem(L, slots, maps);
}

// Chain of algebras c0 <= c1 with fibers of the given sizes over each atom.
inline amalgam::diagram::BASystem chain2_system(std::size_t base_atoms, std::size_t fiber) {
  auto check = amalgam::order::check_almost_lattice(chain_poset(2));
  auto L = std::move(*check.lattice);
  std::vector<std::string> base, top;
  for (std::size_t i = 0; i < base_atoms; ++i) base.push_back("a" + std::to_string(i));
  std::vector<std::uint32_t> table;
  for (std::size_t i = 0; i < base_atoms; ++i)
    for (std::size_t f = 0; f < fiber; ++f) {
      top.push_back("a" + std::to_string(i) + "_" + std::to_string(f));
      table.push_back(static_cast<std::uint32_t>(i));
    }
  // FiniteBA sorts ids; rebuild the table against sorted order.
  amalgam::balg::FiniteBA top_ba(top);
  std::vector<std::uint32_t> sorted_table(top.size());
  for (std::size_t raw = 0; raw < top.size(); ++raw)
    sorted_table[top_ba.atom_index(top[raw])] = table[raw];
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::uint32_t>> maps;
  maps[{L.index_of("c1"), L.index_of("c0")}] = sorted_table;
  std::vector<amalgam::balg::FiniteBA> algebras{amalgam::balg::FiniteBA(base), top_ba};
  return amalgam::diagram::BASystem(L, algebras, maps);
}

// Coordinate system over the (2,2) grid: one binary coordinate per
// join-irreducible axis step.
inline amalgam::diagram::BASystem grid_binary_system() {
  auto L = amalgam::order::grid_index_set(2, 2);
  amalgam::diagram::CoordinateAssignment assignment;
  assignment.coords.resize(L.size());
  for (std::size_t a = 1; a <= 2; ++a) assignment.fiber_size["a" + std::to_string(a)] = 2;
  for (std::size_t g = 1; g <= 2; ++g) assignment.fiber_size["g" + std::to_string(g)] = 2;
  for (std::size_t i = 0; i < L.size(); ++i) {
    const std::string& id = L.id(i);
    const auto comma = id.find(',');
    const std::size_t alpha = std::stoul(id.substr(0, comma));
    const std::size_t gamma = std::stoul(id.substr(comma + 1));
    for (std::size_t a = 1; a <= alpha; ++a)
      assignment.coords[i].push_back("a" + std::to_string(a));
    for (std::size_t g = 1; g <= gamma; ++g)
      assignment.coords[i].push_back("g" + std::to_string(g));
  }
  return amalgam::diagram::generate_coordinate_system(L, assignment);
}

// --- random structures ----------------------------------------------------

// Random commuting square with surjective maps, sizes within the given caps.
inline amalgam::diagram::EmbeddingSquare random_square(Rng& rng, std::size_t max_side,
                                                       std::size_t max_bottom = 3) {
  const std::size_t b = 1 + rng.below(max_bottom);
  const std::size_t l = b + rng.below(max_side - b + 1);
  const std::size_t r = b + rng.below(max_side - b + 1);
  auto names = [](const std::string& prefix, std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
    return out;
  };
  amalgam::balg::FiniteBA bottom(names("b", b)), left(names("l", l)), right(names("r", r));

  auto surjection = [&](std::size_t src, std::size_t dst) {
    std::vector<std::uint32_t> table(src);
    std::vector<std::size_t> perm(src);
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t i = src; i-- > 1;) std::swap(perm[i], perm[rng.below(i + 1)]);
    for (std::size_t i = 0; i < src; ++i)
      table[perm[i]] = static_cast<std::uint32_t>(i < dst ? i : rng.below(dst));
    return table;
  };
  auto lb = surjection(l, b);
  auto rb = surjection(r, b);

  // Top atoms: cover every compatible (left, right) pair at least once, then
  // sprinkle extras.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> tops;
  for (std::uint32_t a = 0; a < l; ++a)
    for (std::uint32_t c = 0; c < r; ++c)
      if (lb[a] == rb[c] && rng.chance(3, 4)) tops.emplace_back(a, c);
  for (std::uint32_t a = 0; a < l; ++a) {
    bool seen = false;
    for (auto& t : tops) seen = seen || t.first == a;
    if (!seen)
      for (std::uint32_t c = 0; c < r; ++c)
        if (lb[a] == rb[c]) { tops.emplace_back(a, c); break; }
  }
  for (std::uint32_t c = 0; c < r; ++c) {
    bool seen = false;
    for (auto& t : tops) seen = seen || t.second == c;
    if (!seen)
      for (std::uint32_t a = 0; a < l; ++a)
        if (lb[a] == rb[c]) { tops.emplace_back(a, c); break; }
  }
  std::sort(tops.begin(), tops.end());
  tops.erase(std::unique(tops.begin(), tops.end()), tops.end());
  amalgam::balg::FiniteBA top(names("t", tops.size()));
  std::vector<std::uint32_t> tl(tops.size()), tr(tops.size());
  for (std::size_t i = 0; i < tops.size(); ++i) {
    tl[i] = tops[i].first;
    tr[i] = tops[i].second;
  }
  using amalgam::balg::AtomMap;
  return {bottom, left, right, top, AtomMap(left, bottom, lb), AtomMap(right, bottom, rb),
          AtomMap(top, left, tl), AtomMap(top, right, tr)};
}

// Random reflexive-transitive relation on up to max_n elements.
inline amalgam::balg::FinitePreorder random_preorder(Rng& rng, std::size_t max_n) {
  const std::size_t n = 1 + rng.below(max_n);
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back("p" + std::to_string(i));
  std::vector<std::uint8_t> rel(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) rel[i * n + i] = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && rng.chance(1, 3)) rel[i * n + j] = 1;
  for (std::size_t k = 0; k < n; ++k)  // transitive closure
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (rel[i * n + k] && rel[k * n + j]) rel[i * n + j] = 1;
  std::vector<std::pair<std::string, std::string>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (rel[i * n + j]) pairs.emplace_back(ids[i], ids[j]);
  return amalgam::balg::FinitePreorder(ids, pairs);
}

// --- literal regular-open oracle -------------------------------------------

// Every down-closed U with U = int(cl(U)) under the cone topology, as masks.
inline std::vector<Mask> regular_open_downsets(const amalgam::balg::FinitePreorder& p) {
  const std::size_t n = p.size();
  std::vector<Mask> out;
  for (Mask u = 0; u < (Mask{1} << n); ++u) {
    bool down = true;
    for (std::size_t a = 0; a < n && down; ++a)
      if (u >> a & 1)
        for (std::size_t q = 0; q < n; ++q)
          if (p.leq(q, a) && !(u >> q & 1)) { down = false; break; }
    if (!down) continue;
    bool regular = true;
    for (std::size_t a = 0; a < n && regular; ++a) {
      bool dense = true;  // every q <= a meets u from below
      for (std::size_t q = 0; q < n && dense; ++q) {
        if (!p.leq(q, a)) continue;
        bool hit = false;
        for (std::size_t r = 0; r < n; ++r)
          if (p.leq(r, q) && (u >> r & 1)) { hit = true; break; }
        dense = hit;
      }
      if (dense != static_cast<bool>(u >> a & 1)) regular = false;
    }
    if (regular) out.push_back(u);
  }
  return out;
}

// int(cl(down-cone of a)) as a mask, the canonical dense image of a.
inline Mask regularized_cone(const amalgam::balg::FinitePreorder& p, std::size_t a) {
  const std::size_t n = p.size();
  Mask out = 0;
  for (std::size_t x = 0; x < n; ++x) {
    bool dense = true;
    for (std::size_t q = 0; q < n && dense; ++q) {
      if (!p.leq(q, x)) continue;
      bool hit = false;
      for (std::size_t r = 0; r < n; ++r)
        if (p.leq(r, q) && p.leq(r, a)) { hit = true; break; }
      dense = hit;
    }
    if (dense) out |= Mask{1} << x;
  }
  return out;
}

// --- labeled poset enumeration ----------------------------------------------

// All partial orders on {0..n-1} up to isomorphism, returned as relation
// matrices. Enumerates relations compatible with a fixed linear extension and
// dedupes by the minimum adjacency bitmask over all permutations.
inline std::vector<std::vector<std::uint8_t>> posets_up_to_iso(std::size_t n) {
  std::vector<std::vector<std::uint8_t>> result;
  std::set<std::vector<std::uint8_t>> seen;
  const std::size_t edges = n * (n - 1) / 2;
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) slots.emplace_back(i, j);

  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);

  for (Mask bits = 0; bits < (Mask{1} << edges); ++bits) {
    std::vector<std::uint8_t> rel(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) rel[i * n + i] = 1;
    for (std::size_t s = 0; s < edges; ++s)
      if (bits >> s & 1) rel[slots[s].first * n + slots[s].second] = 1;
    bool transitive = true;
    for (std::size_t i = 0; i < n && transitive; ++i)
      for (std::size_t j = 0; j < n && transitive; ++j) {
        if (!rel[i * n + j]) continue;
        for (std::size_t k = 0; k < n; ++k)
          if (rel[j * n + k] && !rel[i * n + k]) { transitive = false; break; }
      }
    if (!transitive) continue;

    // canonical form: minimum over relabelings
    std::vector<std::uint8_t> best = rel;
    std::sort(perm.begin(), perm.end());
    do {
      std::vector<std::uint8_t> relabeled(n * n, 0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (rel[i * n + j]) relabeled[perm[i] * n + perm[j]] = 1;
      if (relabeled < best) best = relabeled;
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (seen.insert(best).second) result.push_back(best);
  }
  return result;
}

inline amalgam::order::FinitePoset poset_from_matrix(const std::vector<std::uint8_t>& rel,
                                                     std::size_t n) {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back(std::string(1, static_cast<char>('a' + i)));
  std::vector<std::pair<std::string, std::string>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (rel[i * n + j]) pairs.emplace_back(ids[i], ids[j]);
  return amalgam::order::FinitePoset(ids, pairs);
}

}  // namespace testsupport
