#pragma once

// Degree structure of a finite family of problems: the reducibility matrix,
// its mutual-reducibility classes, the Hasse diagram of the quotient order,
// and checks of the lattice operations within the family.

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "manyone/reduce.hpp"

namespace manyone {

enum class OrderMode { m, sm, wtt };

struct OrderSpec {
  OrderMode mode = OrderMode::m;
  int trunc = 3;  // star truncation for wtt

  std::string label() const;
};

OrderSpec parse_order_spec(const std::string& mode, int trunc);

struct Cell {
  bool yes = false;
  bool decided = true;  // false when the query left the universe
  std::string note;
  std::optional<ReductionCert> cert;
};

struct PreorderMatrix {
  std::vector<std::string> names;
  OrderSpec spec;
  int universe_depth = 0;
  std::vector<std::vector<Cell>> cells;

  bool complete() const;
  std::string to_tsv() const;
};

/// Out-of-universe cells are flagged as undecided, never reported as false.
PreorderMatrix preorder_matrix(const std::vector<NamedProblem>& family, const SubcatTable& table,
                               const OrderSpec& spec);
OracleVerdict decide_in(const NamedProblem& f, const NamedProblem& g, const SubcatTable& table,
                        const OrderSpec& spec);

/// Throws Error unless the matrix is complete, reflexive and transitive.
void require_preorder(const PreorderMatrix& m);
/// Mutual-reducibility blocks ordered by their first member.
std::vector<std::vector<std::size_t>> degree_classes(const PreorderMatrix& m);
/// Cover relation of the quotient order as (lower, upper) class indices.
std::vector<std::pair<std::size_t, std::size_t>> hasse(const std::vector<std::vector<std::size_t>>& classes,
                                                       const PreorderMatrix& m);

struct DegreeReport {
  PreorderMatrix matrix;
  std::vector<std::vector<std::size_t>> classes;
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  std::string to_dot() const;
  std::string summary() const;
};

DegreeReport degree_report(const std::vector<NamedProblem>& family, const SubcatTable& table,
                           const OrderSpec& spec);

struct LatticeFinding {
  std::string check;     // e.g. "sup upper bound"
  std::string subject;   // the pair or triple examined
  std::string evidence;  // "oracle" (within the family) or "certificate" (global)
  bool passed = false;
  bool decided = true;  // false when a query left the universe or the budget
  std::string detail;
};

struct LatticeReport {
  std::vector<LatticeFinding> findings;
  std::size_t pairs = 0;
  std::size_t triples = 0;
  std::size_t bounds = 0;

  bool passed() const;
  bool complete() const;
  std::string format(bool verbose) const;
};

using BinaryOp = std::function<NamedProblem(const NamedProblem&, const NamedProblem&)>;

/// The family extended by all pairwise ⊔ and ⊕.
std::vector<NamedProblem> extend_family(const std::vector<NamedProblem>& family);

/// Checks sup and inf for every pair of `family` against the bounds in
/// `bounds`, and both distributivity certificates for every triple of
/// `family`. `sup` is the candidate join; pass a faulty one as a control.
LatticeReport verify_lattice(const std::vector<NamedProblem>& family,
                             const std::vector<NamedProblem>& bounds, const SubcatTable& table,
                             const BinaryOp& sup = sup_of);

}  // namespace manyone
