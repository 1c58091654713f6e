#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "amalgam/balg.hpp"
#include "amalgam/common.hpp"
#include "amalgam/diagram.hpp"

namespace amalgam::amal {

// Element of the union of a system's algebras in canonical form: home is the
// meet of all indices whose algebra contains the element (well-defined in
// valid systems), atoms is its atom set in the algebra at home.
struct SysElement {
  std::uint32_t home = 0;
  Mask atoms = 0;
  auto operator<=>(const SysElement&) const = default;
};

// Unordered pair of nonzero elements whose projections to the meet of their
// home indices coincide; stored with a <= b.
struct Condition {
  SysElement a, b;
  auto operator<=>(const Condition&) const = default;
  bool diagonal() const { return a == b; }
};

SysElement canonical_element(const diagram::BASystem& system, std::size_t index_pos, Mask atoms);

// All conditions of a validated system with the four-case order.
class ConditionSet {
 public:
  const diagram::BASystem& system() const { return system_; }
  std::size_t size() const { return conditions_.size(); }
  const Condition& at(std::size_t d) const { return conditions_[d]; }
  std::size_t index_of(const Condition& c) const;

  // Order under the canonical witnesses (the elements' home indices).
  bool leq(std::size_t lhs, std::size_t rhs) const;
  bool leq(const Condition& lhs, const Condition& rhs) const;

  // Order with existential quantification over all valid witness pairs for
  // both conditions. Retained as an oracle; asserted equal to leq in tests.
  bool leq_existential(const Condition& lhs, const Condition& rhs) const;

  std::string describe(const Condition& c) const;

 private:
  friend ConditionSet build_condition_set(const diagram::BASystem&, std::uint64_t);
  diagram::BASystem system_;
  std::vector<Condition> conditions_;  // sorted
  ConditionSet(diagram::BASystem s, std::vector<Condition> c)
      : system_(std::move(s)), conditions_(std::move(c)) {}
};

// Enumerates every condition: diagonal pairs of all canonical nonzero
// elements plus all cross pairs with matching projections to the meet.
ConditionSet build_condition_set(const diagram::BASystem& system,
                                 std::uint64_t max_conditions = 200'000);

struct LimitAlgebra {
  balg::FiniteBA algebra;                        // atoms = minimal condition classes
  ConditionSet conditions;
  std::vector<Mask> dense_map;                   // per condition: atoms below its image
  std::vector<std::size_t> atom_rep;             // per atom: condition index of the class rep
  std::vector<std::vector<std::uint32_t>> limit_map;  // per index: limit atoms -> algebra atoms
};

// Completion of the condition set: atoms are the separative classes of minimal
// conditions, each algebra embeds via p -> (p,p), and the dual atom maps are
// recovered from the order. Budgets exceeded raise BudgetError.
LimitAlgebra amalgamated_limit(const diagram::BASystem& system,
                               std::uint64_t max_conditions = 200'000,
                               std::size_t max_limit_atoms = 64);

struct EmbeddabilityReport {
  bool ok = false;
  std::vector<std::pair<std::string, bool>> per_index;  // id -> complete embedding verified
  bool meet_identity = false;     // image(p,q) = image(p,p) ∧ image(q,q)
  bool density = false;           // every limit atom lies below some condition image
  bool extended_ok = false;       // extended system passes validation
  diagram::SystemReport extended_report;
  std::vector<std::string> failures;
};

// Checks that every algebra embeds completely into the limit and that the
// extended system (index plus a new top carrying the limit) passes every
// correctness square.
EmbeddabilityReport verify_embeddability(const diagram::BASystem& system, const LimitAlgebra& limit);

struct DegenerateReport {
  std::optional<std::string> max_index;  // id of the maximum when the index has one
  bool lattice = false;                  // equivalent to max_index for finite indices
  bool iso_to_max = false;               // limit canonically isomorphic to the top algebra
  bool direct_limit_agrees = false;      // the direct-limit route returns the same algebra
  bool product_shape = false;            // three-element index with one-atom bottom
  bool iso_to_free_product = false;      // limit canonically isomorphic to the free product
};

DegenerateReport degenerate_identities(const diagram::BASystem& system, const LimitAlgebra& limit);

}  // namespace amalgam::amal
