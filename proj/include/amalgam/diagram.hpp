#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "amalgam/balg.hpp"
#include "amalgam/common.hpp"
#include "amalgam/order.hpp"

namespace amalgam::diagram {

// Commuting square of complete embeddings: bottom sits inside left and right,
// which both sit inside top.
struct EmbeddingSquare {
  balg::FiniteBA bottom, left, right, top;
  balg::AtomMap left_to_bottom, right_to_bottom, top_to_left, top_to_right;
};

EmbeddingSquare product_square(const balg::FiniteBA& left, const balg::FiniteBA& right);

struct CorrectnessReport {
  bool verdict = false;
  // The three formulations, evaluated independently:
  // [0] projecting a left element into the right factors through the bottom,
  // [1] the same for right elements,
  // [2] elements with equal bottom projections are compatible in the top.
  std::array<bool, 3> conditions{};
  bool conditions_agree = false;
  bool exhaustive = false;            // element-level loops ran over all elements
  std::vector<std::string> witness;   // first failing instance, if any
};

// Evaluates all three conditions and their mutual agreement. Small squares are
// checked element-by-element; beyond 2^12 elements the loops run on atoms plus
// a seeded element sample. Throws ContractError if the square does not commute.
CorrectnessReport check_correct(const EmbeddingSquare& sq);

// System of finite Boolean algebras indexed by a distributive almost-lattice,
// with one atom surjection per comparable pair. Construction only checks
// shapes; validate_system performs the mathematical checks so that defective
// systems can be represented and reported.
class BASystem {
 public:
  BASystem(order::AlmostLattice index, std::vector<balg::FiniteBA> algebras,
           std::map<std::pair<std::size_t, std::size_t>, std::vector<std::uint32_t>> strict_maps);

  const order::AlmostLattice& index() const { return index_; }
  std::size_t count() const { return algebras_.size(); }
  const balg::FiniteBA& algebra(std::size_t i) const { return algebras_[i]; }

  // Atom surjection from the algebra at j onto the algebra at i, for i <= j.
  const std::vector<std::uint32_t>& atom_map(std::size_t j, std::size_t i) const;
  Mask image(std::size_t j, std::size_t i, Mask element_at_j) const;
  Mask preimage(std::size_t i, std::size_t j, Mask element_at_i) const;

 private:
  order::AlmostLattice index_;
  std::vector<balg::FiniteBA> algebras_;
  std::vector<std::vector<std::uint32_t>> maps_;   // [j*n+i], comparable pairs incl. identity
  std::vector<std::vector<Mask>> fibers_;          // [j*n+i][atom_of_i] -> mask over atoms of j
};

struct SystemViolation {
  std::string kind;  // "surjectivity" | "commutativity" | "identity" | "correctness"
  std::vector<std::string> detail;
};

struct SystemReport {
  bool ok = false;
  std::vector<SystemViolation> violations;
};

// Identity, commutativity, surjectivity of every map, and correctness of the
// square over every pair with a defined join.
SystemReport validate_system(const BASystem& system);

// One coordinate set per index element plus a value-set size per coordinate.
// Meets must intersect coordinate sets and defined joins must unite them.
struct CoordinateAssignment {
  std::vector<std::vector<std::string>> coords;   // aligned with index elements
  std::map<std::string, std::uint32_t> fiber_size;
};

// Product-style system: atoms at i are the functions from coords(i) into the
// fibers and the maps are coordinate restrictions. Always valid; this is
// re-verified after construction.
BASystem generate_coordinate_system(const order::AlmostLattice& index,
                                    const CoordinateAssignment& assignment);

struct GeneratorBudgets {
  std::size_t max_index_size = 6;
  std::uint32_t max_fiber = 3;
  std::uint64_t product_budget = 1'000'000;   // bound on the product of atom counts
  std::size_t max_atoms_per_algebra = 10;
  std::uint64_t max_total_elements = 4096;    // bound on the sum of 2^atoms
  std::uint64_t max_condition_count = 20'000;
  std::size_t max_limit_atoms = 64;
};

struct GeneratedSystem {
  BASystem system;
  CoordinateAssignment assignment;
  std::string shape;   // index-shape label, recorded in reports
};

// Seed-deterministic random system drawn from a fixed pool of index shapes
// with coordinates attached to join-irreducible elements.
GeneratedSystem random_coordinate_system(std::uint64_t seed, const GeneratorBudgets& budgets = {});

// Upper bound used by the generator: the number of matching element pairs
// summed over index pairs, before canonical deduplication.
std::uint64_t estimate_condition_count(const BASystem& system);

struct DirectLimitResult {
  std::size_t max_index;
  balg::FiniteBA algebra;   // the system's own maps serve as the limit embeddings
};

// Limit over a directed subset of the index: the algebra at its maximum.
DirectLimitResult direct_limit(const BASystem& system, const std::vector<std::size_t>& subset);

}  // namespace amalgam::diagram
