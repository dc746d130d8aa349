#pragma once

// Normal forms of objects as sums of monomials (products of atoms), with the
// witnessing isomorphism, and a compiler from structural functions to terms.

#include <cstdint>
#include <vector>

#include "manyone/term.hpp"

namespace manyone {

struct DnfNode {
  bool leaf = true;
  std::size_t leaf_index = 0;  // leaves only
  std::size_t left = 0;        // sums only: node indices
  std::size_t right = 0;
  Obj object;                  // object spanned by this node in the normal form
};

struct DnfLeaf {
  Obj monomial;
  std::size_t offset = 0;  // first index of this leaf in the normal form's carrier
};

struct Dnf {
  Obj source;
  Obj normal;
  Term to_normal;                 // source -> normal isomorphism
  bool trivial = true;            // to_normal is an identity
  std::vector<DnfNode> nodes;     // nodes.back() is the root
  std::vector<DnfLeaf> leaves;    // in carrier order of the normal form
  /// For every source element: its leaf and its index in that leaf's monomial.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> locate;
  /// Inverse of `locate`: per leaf, the source element of each monomial point.
  std::vector<std::vector<std::uint32_t>> origin;
};

Dnf make_dnf(const Obj& a);

/// Copairing of one term per leaf (monomial -> target) precomposed with the
/// normalizing isomorphism: a term source -> target.
Term copair_leaves(const Dnf& d, const std::vector<Term>& leaf_terms, const Obj& target);

/// A term for a total function on `a` built from projections, pairings,
/// injections and constants only. Throws Error when the function is not of
/// that form. Values are target indices; -1 is allowed only on whole leaves
/// with a target that admits a nowhere-defined map.
Term compile_structural(const Obj& a, const Obj& b, const std::vector<std::int32_t>& fn);

/// Nowhere-defined term a -> b when b reaches an empty object, else nullptr.
Term nowhere_term(const Obj& a, const Obj& b);

/// Projection paths from a monomial to each of its subobjects, in pre-order.
struct Slot {
  Obj object;
  Term term;
  std::vector<std::uint32_t> values;  // slot index per monomial point
};
std::vector<Slot> monomial_slots(const Obj& m);

}  // namespace manyone
