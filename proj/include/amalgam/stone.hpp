#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "amalgam/amal.hpp"
#include "amalgam/common.hpp"
#include "amalgam/diagram.hpp"
#include "amalgam/order.hpp"

namespace amalgam::stone {

// Finite discrete space; for duals of finite Boolean algebras the points stand
// for the principal ultrafilters, one per atom.
struct DiscreteSpace {
  std::vector<std::string> points;  // sorted unique, non-empty
};

// Spaces indexed by an almost-lattice with one point surjection per comparable
// pair. Construction checks shapes only; validate_discrete performs the
// mathematical checks.
class DiscreteSystem {
 public:
  DiscreteSystem(order::AlmostLattice index, std::vector<DiscreteSpace> spaces,
                 std::map<std::pair<std::size_t, std::size_t>, std::vector<std::uint32_t>> strict_maps);

  const order::AlmostLattice& index() const { return index_; }
  std::size_t count() const { return spaces_.size(); }
  const DiscreteSpace& space(std::size_t i) const { return spaces_[i]; }
  // Point surjection from the space at j onto the space at i, for i <= j.
  const std::vector<std::uint32_t>& proj(std::size_t j, std::size_t i) const;
  std::uint32_t project_point(std::size_t j, std::size_t i, std::uint32_t point) const;

 private:
  order::AlmostLattice index_;
  std::vector<DiscreteSpace> spaces_;
  std::vector<std::vector<std::uint32_t>> proj_;
};

// Points are the atoms and the projections are the very atom surjections of
// the system. The result is re-validated, including topological correctness.
DiscreteSystem dualize(const diagram::BASystem& system);

struct TopoCorrectness {
  bool ok = false;
  std::vector<std::string> witness;  // (point at i, point at j) with no common lift
};

// For every pair of points agreeing at the meet there is a common lift at the
// join; exhaustive.
TopoCorrectness check_topological_correctness(const DiscreteSystem& ds, std::size_t i, std::size_t j);

// Identity, commutativity, surjectivity and topological correctness of every
// pair with a defined join.
diagram::SystemReport validate_discrete(const DiscreteSystem& ds);

// Coherent assignment on a closed subset of the index; -1 marks indices
// outside the domain.
struct PartialThread {
  std::vector<std::int64_t> values;
  std::vector<std::size_t> domain() const;
};

PartialThread empty_thread(const DiscreteSystem& ds);
PartialThread singleton_thread(const DiscreteSystem& ds, std::size_t i, std::uint32_t point);
bool coherent_on_domain(const DiscreteSystem& ds, const PartialThread& y);

// One-pass extension of a coherent partial thread on a closed domain to the
// closure of the domain plus one more index. Case split on the domain's tops;
// surjectivity supplies the single-pin choices and correctness supplies the
// double-pin lifts, lexicographically least in every choice. Output coherence
// is asserted; a failure raises DefectError and is reported, never retried.
PartialThread extend_partial_thread(const DiscreteSystem& ds, const PartialThread& y, std::size_t j);

using Thread = std::vector<std::uint32_t>;

struct ThreadSpaceReport {
  std::vector<Thread> threads;      // sorted lexicographically
  std::uint64_t product_bound = 0;  // product of the space sizes
  bool oracle_agrees = false;       // constructive enumeration equals the filtration oracle
  bool projections_surjective = false;
  bool extended_commutes = false;
  bool extended_correct = false;
  std::size_t singleton_extensions_checked = 0;
  bool ok() const {
    return oracle_agrees && projections_surjective && extended_commutes && extended_correct;
  }
  std::vector<std::string> failures;
};

// Computes the space of coherent threads twice: by filtering the full product
// (oracle) and by iterated extension over a chain of closed sets, then checks
// the limit-projection conclusions. Throws BudgetError when the product of the
// space sizes exceeds the budget.
ThreadSpaceReport thread_space(const DiscreteSystem& ds, std::uint64_t product_budget = 1'000'000);

struct BoxImageReport {
  std::vector<std::size_t> domain;                  // members of F
  std::vector<std::vector<std::uint32_t>> recipe;   // V_i per member
  std::vector<std::vector<std::uint32_t>> brute;    // brute-force p(A) per member
  std::vector<Thread> box_set;                      // A, the threads inside the box
  bool recipe_matches_brute = false;
  bool box_identity = false;  // A equals the threads passing the V_i
  bool ok() const { return recipe_matches_brute && box_identity; }
};

// Image recipe for a box over a closed set: restrict the top space(s) by the
// pulled-back boxes, reconcile the two tops through their meet, and push the
// result down; checked against brute-force images over the enumerated threads.
BoxImageReport box_image(const DiscreteSystem& ds, const std::vector<Thread>& threads,
                         const order::ClosedSet& domain,
                         const std::vector<std::vector<std::uint32_t>>& boxes);

struct BridgeReport {
  bool coherent = false;
  bool injective = false;
  bool onto = false;
  bool ok() const { return coherent && injective && onto; }
  std::vector<std::string> failures;
};

// Maps each atom of the limit algebra to the thread of atoms above it and
// checks the map is a bijection onto the thread space.
BridgeReport duality_bridge(const diagram::BASystem& system, const amal::LimitAlgebra& limit,
                            const DiscreteSystem& ds, const std::vector<Thread>& threads);

}  // namespace amalgam::stone
