#pragma once

// Seeded generators for objects and relations used by the property suites.

#include <cstdint>
#include <random>
#include <vector>

#include "manyone/finrel.hpp"

namespace manyone {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  std::size_t below(std::size_t n);  // uniform in [0, n)
  bool coin(double p = 0.5);
  std::mt19937_64& engine() { return rng_; }

  /// Atom with 1..max_size labels; `allow_empty` permits zero labels.
  Obj atom(const std::string& name, std::size_t max_size, bool allow_empty = false);
  /// Object over `atoms` with at most `depth` constructors and carrier <= max_carrier.
  Obj object(const std::vector<Obj>& atoms, int depth, std::size_t max_carrier = 16);
  /// Arbitrary relation; each pair present with probability `density`.
  SearchProblem relation(const Obj& src, const Obj& dst, double density = 0.4);
  /// Partial function; each point defined with probability `defined`.
  SearchProblem function(const Obj& src, const Obj& dst, double defined = 0.8);
  /// Total relation with 1..max_width solutions per instance.
  SearchProblem total_relation(const Obj& src, const Obj& dst, std::size_t max_width = 2);
  /// Partial identity on `a`.
  SearchProblem domain(const Obj& a, double defined = 0.6);

 private:
  std::mt19937_64 rng_;
};

}  // namespace manyone
