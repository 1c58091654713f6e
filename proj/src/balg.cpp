#include "amalgam/balg.hpp"

#include <algorithm>
#include <set>

namespace amalgam::balg {

FiniteBA::FiniteBA(std::vector<std::string> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw ContractError("algebra: atom set must be non-empty");
  if (atoms_.size() > 64)
    throw BudgetError("algebra: more than 64 atoms (" + std::to_string(atoms_.size()) + ")");
  std::sort(atoms_.begin(), atoms_.end());
  if (std::adjacent_find(atoms_.begin(), atoms_.end()) != atoms_.end())
    throw ContractError("algebra: duplicate atom id");
}

std::size_t FiniteBA::atom_index(const std::string& id) const {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), id);
  if (it == atoms_.end() || *it != id) throw ContractError("algebra: unknown atom id '" + id + "'");
  return static_cast<std::size_t>(it - atoms_.begin());
}

BAElement element(const FiniteBA& algebra, const std::vector<std::string>& atom_ids) {
  Mask m = 0;
  for (const auto& id : atom_ids) m |= Mask{1} << algebra.atom_index(id);
  return {algebra, m};
}

AtomMap::AtomMap(FiniteBA source, FiniteBA target, std::vector<std::uint32_t> map)
    : source_(std::move(source)), target_(std::move(target)), map_(std::move(map)) {
  if (map_.size() != source_.atom_count())
    throw ContractError("atom map: table size does not match source atom count");
  Mask hit = 0;
  for (std::uint32_t t : map_) {
    if (t >= target_.atom_count()) throw ContractError("atom map: image atom out of range");
    hit |= Mask{1} << t;
  }
  if (hit != target_.full())
    throw ContractError("atom map: not surjective onto target atoms");
}

AtomMap::AtomMap(FiniteBA source, FiniteBA target, const std::map<std::string, std::string>& by_id)
    : AtomMap(source, target, [&] {
        std::vector<std::uint32_t> table(source.atom_count());
        if (by_id.size() != source.atom_count())
          throw ContractError("atom map: table must mention every source atom exactly once");
        for (const auto& [s, t] : by_id)
          table[source.atom_index(s)] = static_cast<std::uint32_t>(target.atom_index(t));
        return table;
      }()) {}

AtomMap AtomMap::identity(const FiniteBA& algebra) {
  std::vector<std::uint32_t> table(algebra.atom_count());
  for (std::size_t i = 0; i < table.size(); ++i) table[i] = static_cast<std::uint32_t>(i);
  return AtomMap(algebra, algebra, std::move(table));
}

Mask AtomMap::image(Mask source_element) const {
  Mask out = 0;
  while (source_element) {
    const int bit = std::countr_zero(source_element);
    source_element &= source_element - 1;
    out |= Mask{1} << map_[static_cast<std::size_t>(bit)];
  }
  return out;
}

Mask AtomMap::preimage(Mask target_element) const {
  Mask out = 0;
  for (std::size_t s = 0; s < map_.size(); ++s)
    if (target_element >> map_[s] & 1) out |= Mask{1} << s;
  return out;
}

BAElement embed(const AtomMap& e, const BAElement& a) {
  if (a.parent != e.target()) throw ContractError("embed: element does not belong to the target algebra");
  return {e.source(), e.preimage(a.atoms)};
}

BAElement project(const AtomMap& e, const BAElement& b) {
  if (b.parent != e.source()) throw ContractError("project: element does not belong to the source algebra");
  return {e.target(), e.image(b.atoms)};
}

AtomMap compose(const AtomMap& outer, const AtomMap& inner) {
  if (inner.target() != outer.source())
    throw ContractError("compose: inner target and outer source algebras differ");
  std::vector<std::uint32_t> table(inner.source().atom_count());
  for (std::size_t s = 0; s < table.size(); ++s) table[s] = outer.at(inner.at(s));
  return AtomMap(inner.source(), outer.target(), std::move(table));
}

FreeProduct free_product(const FiniteBA& left, const FiniteBA& right) {
  if (left.atom_count() * right.atom_count() > 64)
    throw BudgetError("free_product: product would exceed 64 atoms");
  std::vector<std::string> atoms;
  for (const auto& a : left.atoms())
    for (const auto& b : right.atoms()) atoms.push_back(a + "|" + b);
  FiniteBA product(atoms);
  std::vector<std::uint32_t> lmap(product.atom_count()), rmap(product.atom_count());
  for (std::size_t l = 0; l < left.atom_count(); ++l)
    for (std::size_t r = 0; r < right.atom_count(); ++r) {
      const std::size_t p = product.atom_index(left.atom(l) + "|" + right.atom(r));
      lmap[p] = static_cast<std::uint32_t>(l);
      rmap[p] = static_cast<std::uint32_t>(r);
    }
  return {product, AtomMap(product, left, std::move(lmap)), AtomMap(product, right, std::move(rmap))};
}

FinitePreorder::FinitePreorder(std::vector<std::string> elements,
                               std::vector<std::pair<std::string, std::string>> leq_pairs) {
  if (elements.empty()) throw ContractError("preorder: element list must be non-empty");
  ids_ = std::move(elements);
  std::sort(ids_.begin(), ids_.end());
  if (std::adjacent_find(ids_.begin(), ids_.end()) != ids_.end())
    throw ContractError("preorder: duplicate element id");
  const std::size_t n = ids_.size();
  rel_.assign(n * n, 0);
  for (const auto& [a, b] : leq_pairs) rel_[index_of(a) * n + index_of(b)] = 1;
  for (std::size_t i = 0; i < n; ++i)
    if (!rel_[i * n + i]) throw ContractError("preorder: not reflexive at '" + ids_[i] + "'");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!rel_[i * n + j]) continue;
      for (std::size_t k = 0; k < n; ++k)
        if (rel_[j * n + k] && !rel_[i * n + k])
          throw ContractError("preorder: not transitive at ('" + ids_[i] + "','" + ids_[j] +
                              "','" + ids_[k] + "')");
    }
}

std::size_t FinitePreorder::index_of(const std::string& id) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id) throw ContractError("preorder: unknown element id '" + id + "'");
  return static_cast<std::size_t>(it - ids_.begin());
}

PreorderSkeleton minimal_classes(std::size_t count,
                                 const std::function<bool(std::size_t, std::size_t)>& leq,
                                 std::size_t max_classes) {
  if (count == 0) throw ContractError("minimal_classes: empty preorder");
  std::vector<std::uint32_t> reps;

  for (std::size_t round = 0; round <= count + 1; ++round) {
    bool changed = false;
    for (std::size_t x = 0; x < count; ++x) {
      bool covered = false;
      for (std::uint32_t m : reps)
        if (leq(m, x)) { covered = true; break; }
      if (!covered) {
        reps.push_back(static_cast<std::uint32_t>(x));
        changed = true;
      }
    }
    // Drop reps strictly above another rep and duplicates within a class.
    std::vector<std::uint32_t> kept;
    for (std::uint32_t m : reps) {
      bool drop = false;
      for (std::uint32_t o : reps) {
        if (o == m) continue;
        if (leq(o, m) && !leq(m, o)) { drop = true; break; }
        if (leq(o, m) && leq(m, o) && o < m) { drop = true; break; }
      }
      if (!drop) kept.push_back(m);
    }
    if (kept.size() != reps.size()) changed = true;
    reps = std::move(kept);
    if (!changed) break;
  }
  std::sort(reps.begin(), reps.end());

  // Definitive verification of the scan.
  for (std::uint32_t m : reps)
    for (std::size_t x = 0; x < count; ++x)
      if (leq(x, m) && !leq(m, x))
        throw DefectError("minimal_classes: non-minimal representative survived the scan");
  for (std::size_t x = 0; x < count; ++x) {
    bool covered = false;
    for (std::uint32_t m : reps)
      if (leq(m, x)) { covered = true; break; }
    if (!covered) throw DefectError("minimal_classes: element not covered by any minimal class");
  }
  if (reps.size() > max_classes)
    throw BudgetError("minimal_classes: " + std::to_string(reps.size()) +
                      " classes exceed the cap of " + std::to_string(max_classes));

  PreorderSkeleton out;
  out.minimal_reps = reps;
  out.class_members.resize(reps.size());
  out.below.assign(count, 0);
  for (std::size_t c = 0; c < reps.size(); ++c)
    for (std::size_t x = 0; x < count; ++x) {
      if (leq(x, reps[c]) && leq(reps[c], x))
        out.class_members[c].push_back(static_cast<std::uint32_t>(x));
      if (leq(reps[c], x)) out.below[x] |= Mask{1} << c;
    }
  return out;
}

SeparativeQuotient separative_quotient(const FinitePreorder& p) {
  const std::size_t n = p.size();
  auto skel = minimal_classes(n, [&](std::size_t a, std::size_t b) { return p.leq(a, b); });

  // Group elements by the set of minimal classes beneath them.
  std::map<Mask, std::vector<std::size_t>> groups;
  for (std::size_t x = 0; x < n; ++x) groups[skel.below[x]].push_back(x);

  std::vector<std::string> class_ids;
  std::vector<Mask> class_mask;
  std::vector<std::uint32_t> class_of(n);
  for (const auto& [mask, members] : groups) {
    std::string least = p.id(members.front());
    for (std::size_t m : members) least = std::min(least, p.id(m));
    for (std::size_t m : members) class_of[m] = static_cast<std::uint32_t>(class_ids.size());
    class_ids.push_back(least);
    class_mask.push_back(mask);
  }

  std::vector<std::pair<std::string, std::string>> pairs;
  for (std::size_t a = 0; a < class_ids.size(); ++a)
    for (std::size_t b = 0; b < class_ids.size(); ++b)
      if (mask_subset(class_mask[a], class_mask[b])) pairs.emplace_back(class_ids[a], class_ids[b]);

  FinitePreorder quotient(class_ids, pairs);
  // Re-key class_of to the quotient's sorted element order.
  std::vector<std::uint32_t> remapped(n);
  for (std::size_t x = 0; x < n; ++x)
    remapped[x] = static_cast<std::uint32_t>(quotient.index_of(class_ids[class_of[x]]));
  return {std::move(quotient), std::move(remapped)};
}

Completion regular_open_completion(const FinitePreorder& p) {
  const std::size_t n = p.size();
  auto skel = minimal_classes(n, [&](std::size_t a, std::size_t b) { return p.leq(a, b); });

  std::vector<std::string> atom_ids;
  for (const auto& members : skel.class_members) {
    std::string least = p.id(members.front());
    for (std::uint32_t m : members) least = std::min(least, p.id(m));
    atom_ids.push_back(least);
  }
  FiniteBA algebra(atom_ids);

  // FiniteBA sorts atom ids; remap class bits accordingly.
  std::vector<std::size_t> bit_of_class(atom_ids.size());
  for (std::size_t c = 0; c < atom_ids.size(); ++c) bit_of_class[c] = algebra.atom_index(atom_ids[c]);

  Completion out{algebra, std::vector<Mask>(n, 0), {}};
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t c = 0; c < skel.class_members.size(); ++c)
      if (skel.below[x] >> c & 1) out.dense_map[x] |= Mask{1} << bit_of_class[c];

  out.minimal_class_members.resize(atom_ids.size());
  for (std::size_t c = 0; c < skel.class_members.size(); ++c)
    for (std::uint32_t m : skel.class_members[c])
      out.minimal_class_members[bit_of_class[c]].push_back(p.id(m));
  return out;
}

}  // namespace amalgam::balg
