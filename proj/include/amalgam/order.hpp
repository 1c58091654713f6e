#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "amalgam/common.hpp"

namespace amalgam::order {

using ElementId = std::string;

// Finite partial order. Elements are stored sorted by id, so ascending index
// iteration yields lexicographically least witnesses.
class FinitePoset {
 public:
  FinitePoset() = default;  // empty placeholder; every operation requires a validated poset

  // Validates reflexivity, antisymmetry and transitivity; throws ContractError
  // with the first violated law. Use validate_poset for a non-throwing report.
  FinitePoset(std::vector<ElementId> ids, std::vector<std::pair<ElementId, ElementId>> leq_pairs);

  std::size_t size() const { return ids_.size(); }
  const std::vector<ElementId>& elements() const { return ids_; }
  const ElementId& id(std::size_t i) const { return ids_[i]; }
  std::size_t index_of(const ElementId& id) const;
  bool leq(std::size_t a, std::size_t b) const { return rel_[a * ids_.size() + b] != 0; }

  std::vector<std::pair<ElementId, ElementId>> relation_pairs() const;

 private:
  std::vector<ElementId> ids_;
  std::vector<std::uint8_t> rel_;  // row-major adjacency, rel_[a*n+b] == a<=b
};

struct PosetViolation {
  std::string law;  // "reflexivity" | "antisymmetry" | "transitivity"
  std::vector<ElementId> witness;
};

struct PosetReport {
  std::optional<FinitePoset> poset;  // present iff valid
  std::vector<PosetViolation> violations;
  bool ok() const { return poset.has_value(); }
};

// Checks the three partial-order laws and reports the lexicographically least
// witness for each violated one. Unknown ids or duplicates are contract errors.
PosetReport validate_poset(std::vector<ElementId> elements,
                           std::vector<std::pair<ElementId, ElementId>> leq_pairs);

enum class LatticeAxiom : int {
  MeetExists = 0,       // every pair has a greatest lower bound
  JoinExists = 1,       // bounded pairs have a least upper bound
  TwoOfThreeBounded = 2,  // among any three elements, two have an upper bound
  Distributive = 3,     // distributive laws where both sides exist
  JoinStable = 4,       // joins with j and with j∧j' agree when i,j are unbounded
  MeetCover = 5,        // (i∧j)∨(i∧j') = i when j,j' are unbounded
};

const char* axiom_name(LatticeAxiom a);

struct AxiomViolation {
  LatticeAxiom axiom;
  std::vector<ElementId> witness;
  std::string detail;
};

struct AlmostLatticeCheck;

// Evaluates all six almost-lattice axioms on a valid poset. Axioms 3-5 need
// the meet/join tables and are skipped (reported unevaluated) if 0 or 1 fails.
AlmostLatticeCheck check_almost_lattice(const FinitePoset& poset);

// Poset with total meet table and partial join table, all six axioms verified.
class AlmostLattice {
 public:
  explicit AlmostLattice(FinitePoset base);  // throws ContractError on any axiom violation

  const FinitePoset& base() const { return base_; }
  std::size_t size() const { return base_.size(); }
  const std::vector<ElementId>& elements() const { return base_.elements(); }
  const ElementId& id(std::size_t i) const { return base_.id(i); }
  std::size_t index_of(const ElementId& e) const { return base_.index_of(e); }
  bool leq(std::size_t a, std::size_t b) const { return base_.leq(a, b); }

  std::size_t meet(std::size_t a, std::size_t b) const { return static_cast<std::size_t>(meet_[a * size() + b]); }
  bool has_join(std::size_t a, std::size_t b) const { return join_[a * size() + b] >= 0; }
  std::size_t join(std::size_t a, std::size_t b) const;  // throws if undefined

  std::vector<std::size_t> maximal_elements() const;
  // The greatest element, if one exists. For finite almost-lattices this is
  // equivalent to having a single maximal element.
  std::optional<std::size_t> maximum() const;
  bool is_lattice() const { return maximum().has_value(); }

 private:
  friend AlmostLatticeCheck check_almost_lattice(const FinitePoset&);
  AlmostLattice() = default;
  FinitePoset base_;
  std::vector<std::int32_t> meet_, join_;  // join entry -1 when undefined
};

struct AlmostLatticeCheck {
  bool ok = false;
  std::array<bool, 6> axiom{};   // indexed by LatticeAxiom
  bool tables_built = false;     // meet/join tables exist (axioms 0 and 1 hold)
  std::vector<AxiomViolation> violations;  // lex-least witness per failed axiom
  std::optional<AlmostLattice> lattice;    // present iff ok
};

// Subset closed under meet and under join whenever the join exists. Has one
// maximal element, or two whose join is undefined.
class ClosedSet {
 public:
  const std::vector<std::size_t>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(std::size_t e) const;

 private:
  friend ClosedSet closure(const AlmostLattice&, const std::vector<std::size_t>&);
  friend ClosedSet as_closed_set(const AlmostLattice&, std::vector<std::size_t>);
  std::vector<std::size_t> members_;  // sorted
};

bool is_closed(const AlmostLattice& lattice, const std::vector<std::size_t>& sorted_members);

// Least closed superset of the seed; extensive, monotone, idempotent.
ClosedSet closure(const AlmostLattice& lattice, const std::vector<std::size_t>& seed);

// Wraps an already-closed member list; throws ContractError otherwise.
ClosedSet as_closed_set(const AlmostLattice& lattice, std::vector<std::size_t> members);

// The unique maximal element of a non-empty closed set, or its two join-less
// tops. A third maximal element would contradict the two-of-three axiom and
// raises DefectError.
std::vector<std::size_t> top_elements(const AlmostLattice& lattice, const ClosedSet& set);

struct AddTopResult {
  FinitePoset extended;
  ElementId top_id;
  bool had_maximum = false;        // degenerate case: the input already had a greatest element
  bool distributive_lattice = false;  // both distributive laws hold in the extension
};

// Adjoins a fresh greatest element to a poset satisfying axioms 0-3.
// The returned lattice verdict is checked directly in the extension and is
// asserted to coincide with axioms 4 and 5 of the input.
AddTopResult add_top(const FinitePoset& base);

// Pairs (alpha, gamma) with alpha <= beta, gamma <= delta, minus the corner
// (beta, delta), ordered componentwise. Always a distributive almost-lattice.
AlmostLattice grid_index_set(std::size_t beta, std::size_t delta);

}  // namespace amalgam::order
