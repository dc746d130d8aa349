#pragma once

// The subcategory of admissible witnesses: single-valued maps generated from
// the structural morphisms, constants and named generators, closed under
// composition, products, coproducts and domains.
//
// Hom-sets are computed on demand. A source object is split into a sum of
// monomials; maps out of a sum are exactly copairings of maps out of the
// summands, and maps out of a monomial are found by a fixpoint over the
// functions it defines into a finite set of types.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "manyone/dnf.hpp"
#include "manyone/term.hpp"

namespace manyone {

/// A query needs an object outside the configured universe.
class OutsideUniverse : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

struct Universe {
  std::vector<Obj> bases;
  int depth = 0;

  bool contains(const Obj& o) const;
  /// All objects in canonical order: by depth, then by enumeration order.
  /// Throws BudgetExceeded when there are more than `limit`.
  std::vector<Obj> objects(std::size_t limit = 100000) const;
};

Universe build_universe(std::vector<Obj> bases, int depth);

struct HomEntry {
  SearchProblem map;
  Term term;
};

struct LeafEntry {
  std::vector<std::int32_t> fn;  // monomial point -> target index, -1 undefined
  Term term;
};

/// All admissible maps from one monomial into a target, sorted by `fn`.
struct LeafHoms {
  Obj monomial;
  Obj target;
  std::vector<LeafEntry> entries;

  const LeafEntry* find(const std::vector<std::int32_t>& fn) const;
};

struct SubcatOptions {
  std::size_t max_entries = 250000;
  std::size_t max_steps = 200000000;
};

class SubcatTable {
 public:
  SubcatTable(Universe universe, TermEnv env, SubcatOptions options = {});

  const Universe& universe() const { return universe_; }
  const TermEnv& env() const { return env_; }
  /// Throws OutsideUniverse unless `o` lies in the universe.
  void require(const Obj& o) const;

  const Dnf& dnf(const Obj& a) const;
  const LeafHoms& leaf_homs(const Obj& monomial, const Obj& target) const;

  /// Number of maps a -> b (saturating).
  std::size_t hom_count(const Obj& a, const Obj& b) const;
  /// Canonical order: odometer over the normal-form leaves, last leaf fastest.
  std::vector<HomEntry> hom_set(const Obj& a, const Obj& b, std::size_t limit = 100000) const;
  std::optional<Term> contains(const SearchProblem& m) const;
  /// A stored map c with p ⪯ c, if any.
  std::optional<Term> choice_function(const SearchProblem& p) const;

 private:
  Universe universe_;
  TermEnv env_;
  SubcatOptions options_;
  mutable std::map<std::string, std::shared_ptr<const Dnf>> dnf_cache_;
  mutable std::map<std::string, std::shared_ptr<const LeafHoms>> leaf_cache_;
};

/// Validates the generators and returns the lazily saturated table.
SubcatTable saturate(const TermEnv& env, const Universe& universe, SubcatOptions options = {});

/// Eager fixpoint of the closure rules restricted to the universe. Only
/// feasible for very small universes; used as a reference.
struct ExactTable {
  std::vector<Obj> objects;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::vector<std::int32_t>>> homs;

  const std::vector<std::vector<std::int32_t>>& cell(const Obj& a, const Obj& b) const;
};

ExactTable saturate_exact(const TermEnv& env, const Universe& universe,
                          std::size_t max_entries = 200000);

}  // namespace manyone
