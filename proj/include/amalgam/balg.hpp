#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "amalgam/common.hpp"

namespace amalgam::balg {

// Finite Boolean algebra given by its atom universe. Elements are the subsets
// of atoms, encoded as Masks; zero is the empty mask, one is full(). Atom ids
// are stored sorted, so mask bit order is id-lexicographic.
class FiniteBA {
 public:
  explicit FiniteBA(std::vector<std::string> atoms);

  std::size_t atom_count() const { return atoms_.size(); }
  const std::vector<std::string>& atoms() const { return atoms_; }
  const std::string& atom(std::size_t i) const { return atoms_[i]; }
  std::size_t atom_index(const std::string& id) const;
  Mask full() const { return mask_full(atoms_.size()); }

  bool operator==(const FiniteBA&) const = default;

 private:
  std::vector<std::string> atoms_;
};

struct BAElement {
  FiniteBA parent;
  Mask atoms = 0;

  bool operator==(const BAElement&) const = default;
};

BAElement element(const FiniteBA& algebra, const std::vector<std::string>& atom_ids);

// Complete embedding of finite Boolean algebras, represented dually as a
// surjection from the atoms of the larger algebra (source) onto the atoms of
// the smaller one (target). The Boolean embedding is preimage(); the
// projection mapping is image().
class AtomMap {
 public:
  AtomMap(FiniteBA source, FiniteBA target, std::vector<std::uint32_t> map);
  AtomMap(FiniteBA source, FiniteBA target, const std::map<std::string, std::string>& by_id);

  static AtomMap identity(const FiniteBA& algebra);

  const FiniteBA& source() const { return source_; }
  const FiniteBA& target() const { return target_; }
  std::uint32_t at(std::size_t source_atom) const { return map_[source_atom]; }
  const std::vector<std::uint32_t>& table() const { return map_; }

  Mask image(Mask source_element) const;
  Mask preimage(Mask target_element) const;

  bool operator==(const AtomMap&) const = default;

 private:
  FiniteBA source_, target_;
  std::vector<std::uint32_t> map_;
};

// Boolean embedding of a target element into the source algebra.
BAElement embed(const AtomMap& e, const BAElement& a);

// Projection of a source element: the infimum of its upper bounds in the
// target, computed as the atom-image. Sends nonzero to nonzero.
BAElement project(const AtomMap& e, const BAElement& b);

// Pointwise composition: inner maps A_k onto A_j, outer maps A_j onto A_i.
AtomMap compose(const AtomMap& outer, const AtomMap& inner);

struct FreeProduct {
  FiniteBA product;   // atoms are pairs, ids "left|right"
  AtomMap to_left;
  AtomMap to_right;
};

FreeProduct free_product(const FiniteBA& left, const FiniteBA& right);

// Reflexive transitive relation; antisymmetry is not required.
class FinitePreorder {
 public:
  FinitePreorder(std::vector<std::string> elements,
                 std::vector<std::pair<std::string, std::string>> leq_pairs);

  std::size_t size() const { return ids_.size(); }
  const std::vector<std::string>& elements() const { return ids_; }
  const std::string& id(std::size_t i) const { return ids_[i]; }
  std::size_t index_of(const std::string& id) const;
  bool leq(std::size_t a, std::size_t b) const { return rel_[a * ids_.size() + b] != 0; }

 private:
  std::vector<std::string> ids_;
  std::vector<std::uint8_t> rel_;
};

// Minimal-element skeleton of an implicitly given preorder: one representative
// per equivalence class of minimal elements, the class members, and for every
// element the mask of minimal classes beneath it. The mask determines the
// separative class of the element and its image in the completion.
struct PreorderSkeleton {
  std::vector<std::uint32_t> minimal_reps;                 // ascending element index
  std::vector<std::vector<std::uint32_t>> class_members;   // aligned with minimal_reps
  std::vector<Mask> below;                                 // per element
};

PreorderSkeleton minimal_classes(std::size_t count,
                                 const std::function<bool(std::size_t, std::size_t)>& leq,
                                 std::size_t max_classes = 64);

struct SeparativeQuotient {
  FinitePreorder quotient;               // separative poset
  std::vector<std::uint32_t> class_of;   // element -> quotient element index
};

// Identifies elements whose cones are mutually dense; in a finite preorder
// this is equality of the sets of minimal classes below them.
SeparativeQuotient separative_quotient(const FinitePreorder& p);

struct Completion {
  FiniteBA algebra;                // atoms = classes of minimal elements
  std::vector<Mask> dense_map;     // element -> mask over atoms of `algebra`
  std::vector<std::vector<std::string>> minimal_class_members;  // per atom, element ids
};

// Completion of a finite preorder: regular open sets under the cone topology.
// A set is regular open exactly when it is determined by the minimal classes
// it contains, so atoms correspond to minimal classes; the brute-force
// enumeration oracle for this shortcut lives in the test suite.
Completion regular_open_completion(const FinitePreorder& p);

}  // namespace amalgam::balg
