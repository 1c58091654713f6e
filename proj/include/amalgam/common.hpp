#pragma once

#include <bit>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace amalgam {

// Broken input contract: mismatched parents, malformed structures, unknown ids.
class ContractError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A hard size budget was exceeded. CLI maps this to exit code 3.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A machine-checked theorem failed on validated input. Never expected; carries
// a serialized witness and fails the run.
class DefectError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Element set of a finite Boolean algebra with at most 64 atoms.
using Mask = std::uint64_t;

inline Mask mask_full(std::size_t atom_count) {
  return atom_count >= 64 ? ~Mask{0} : ((Mask{1} << atom_count) - 1);
}

inline bool mask_subset(Mask a, Mask b) { return (a & ~b) == 0; }

inline int mask_size(Mask m) { return std::popcount(m); }

// Deterministic seeded source. mt19937_64 output is fully specified by the
// standard; bounded draws use rejection sampling, not std distributions,
// which are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  // Uniform in [0, n).
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw ContractError("Rng::below: n must be positive");
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t v = eng_();
    while (v >= limit) v = eng_();
    return v % n;
  }

  // Uniform in [lo, hi], inclusive.
  std::uint64_t range(std::uint64_t lo, std::uint64_t hi) {
    if (lo > hi) throw ContractError("Rng::range: lo > hi");
    return lo + below(hi - lo + 1);
  }

  // True with probability num/den.
  bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace amalgam
