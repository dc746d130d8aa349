#pragma once

// Finite relations between finitely generated objects: the ambient category
// of search problems, with the cartesian product, tagged coproducts, domains
// and the entailment order.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace manyone {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Composition or hom-set shape mismatch, ill-typed terms and certificates.
class TypeError : public Error {
 public:
  using Error::Error;
};

class NotADomainError : public Error {
 public:
  using Error::Error;
};

class NoConstantError : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Objects

enum class ObjKind { atom, prod, coprod };

struct ObjNode;
using Obj = std::shared_ptr<const ObjNode>;

struct ObjNode {
  ObjKind kind = ObjKind::atom;
  std::string name;  // atoms only
  std::shared_ptr<const std::vector<std::string>> labels;  // atoms only
  Obj left;
  Obj right;
  std::size_t size = 0;  // carrier cardinality
  int depth = 0;         // nesting of Prod/Coprod constructors
  std::string text;      // canonical printed form, also the equality key
};

Obj make_atom(std::string name, std::vector<std::string> labels);
Obj prod(Obj left, Obj right);
Obj coprod(Obj left, Obj right);

/// Structural equality. Atom names are unique within an environment.
inline bool same(const Obj& a, const Obj& b) { return a == b || a->text == b->text; }
inline const std::string& to_string(const Obj& o) { return o->text; }

/// Named atoms in declaration order.
class AtomEnv {
 public:
  Obj declare(const std::string& name, std::vector<std::string> labels);
  Obj find(const std::string& name) const;  // nullptr when unknown
  const std::vector<Obj>& atoms() const { return order_; }

 private:
  std::map<std::string, Obj> by_name_;
  std::vector<Obj> order_;
};

// ---------------------------------------------------------------------------
// Elements
//
// Carriers are numbered canonically: atoms in label order, products
// row-major (index = left * |right| + right), coproducts with the left
// summand first. An element of an object is identified with its index.

struct Element {
  enum class Kind { atom, pair, tag };
  Kind kind = Kind::atom;
  std::string label;
  int side = 0;  // 1 or 2 for tags
  std::vector<Element> parts;

  static Element atom(std::string label);
  static Element pair(Element a, Element b);
  static Element tag(int side, Element e);

  friend bool operator==(const Element&, const Element&) = default;
};

std::string format_element(const Element& e);
/// Parses LABEL | '<' elem ',' elem '>' | '1:' elem | '2:' elem.
Element parse_element(const std::string& text);
/// Parses an element starting at `pos`; advances `pos` past it.
Element parse_element_at(const std::string& text, std::size_t& pos);

Element element_at(const Obj& obj, std::size_t index);
std::optional<std::size_t> index_of(const Obj& obj, const Element& e);
std::size_t require_index(const Obj& obj, const Element& e);

// ---------------------------------------------------------------------------
// Search problems

using Index = std::uint32_t;

class SearchProblem {
 public:
  SearchProblem() = default;
  SearchProblem(Obj src, Obj dst);
  SearchProblem(Obj src, Obj dst, std::vector<std::pair<std::size_t, std::size_t>> pairs);
  SearchProblem(Obj src, Obj dst, std::vector<std::vector<Index>> rows);

  /// Graph of a partial function; negative entries are undefined.
  static SearchProblem from_function(Obj src, Obj dst, std::span<const std::int32_t> fn);

  const Obj& src() const { return src_; }
  const Obj& dst() const { return dst_; }
  std::span<const Index> image(std::size_t x) const { return rows_[x]; }
  const std::vector<std::vector<Index>>& rows() const { return rows_; }

  bool contains(std::size_t x, std::size_t y) const;
  bool defined_at(std::size_t x) const { return !rows_[x].empty(); }
  bool empty() const;
  bool single_valued() const;
  bool total() const;
  std::size_t edge_count() const;
  std::vector<std::pair<std::size_t, std::size_t>> pairs() const;
  /// Function view; -1 where undefined. Requires single-valuedness.
  std::vector<std::int32_t> as_function() const;

  friend bool operator==(const SearchProblem& a, const SearchProblem& b);

 private:
  Obj src_;
  Obj dst_;
  std::vector<std::vector<Index>> rows_;
};

std::string format_problem(const SearchProblem& p);

// Composition and the functorial operations.
SearchProblem compose(const SearchProblem& f, const SearchProblem& g);  // f ∘ g
SearchProblem product_m(const SearchProblem& f, const SearchProblem& g);
SearchProblem coproduct_m(const SearchProblem& f, const SearchProblem& g);

// Structural morphisms. All are total and single-valued.
SearchProblem identity(const Obj& a);
SearchProblem diag(const Obj& a);
SearchProblem proj1(const Obj& a, const Obj& b);
SearchProblem proj2(const Obj& a, const Obj& b);
SearchProblem inj1(const Obj& a, const Obj& b);
SearchProblem inj2(const Obj& a, const Obj& b);
SearchProblem codiag(const Obj& a);
/// (A*B)*C -> A*(B*C), or the reverse when `inverse`.
SearchProblem assoc(const Obj& a, const Obj& b, const Obj& c, bool inverse = false);
/// A*B -> B*A.
SearchProblem comm(const Obj& a, const Obj& b);
/// A*(B+C) -> (A*B)+(A*C), or the reverse when `inverse`.
SearchProblem distrib(const Obj& a, const Obj& b, const Obj& c, bool inverse = false);
/// Constant map; throws NoConstantError if `value` is not in carrier(b).
SearchProblem constant(const Obj& a, const Obj& b, std::size_t value);
/// Connectedness morphism c_{A,B}: the nowhere-defined relation into an
/// empty B, identity when A == B. Otherwise throws NoConstantError.
SearchProblem connect(const Obj& a, const Obj& b);

enum class StructKind { diag, proj1, proj2, inj1, inj2, codiag, assoc, comm, distrib, constant };

/// Dispatcher over the named structural morphisms. `objs` holds the object
/// arguments in the order of the per-kind functions above; `value` is the
/// target element for constants.
SearchProblem structural(StructKind kind, std::span<const Obj> objs,
                         const std::optional<Element>& value = std::nullopt,
                         bool inverse = false);

// Domains and order.
SearchProblem dom_m(const SearchProblem& f);
/// dom computed as π1 ∘ (id × f) ∘ Δ.
SearchProblem dom_via_composite(const SearchProblem& f);
bool is_domain(const SearchProblem& d);

struct HomOrderWitness {
  enum class Kind { entails, dom_subset };
  Kind kind = Kind::entails;
  SearchProblem lhs;
  SearchProblem rhs;
  /// Counterexample: an instance (first) and optionally an offending solution.
  std::optional<std::pair<std::size_t, std::optional<std::size_t>>> violation;

  bool holds() const { return !violation.has_value(); }
  std::string describe() const;
};

HomOrderWitness dom_subset(const SearchProblem& d1, const SearchProblem& d2);
/// f ⪯ g: dom(f) ⊆ dom(g) and g(x) ⊆ f(x) for every x in dom(f).
HomOrderWitness entails(const SearchProblem& f, const SearchProblem& g);
bool entails_fast(const SearchProblem& f, const SearchProblem& g);
SearchProblem hom_inf(const SearchProblem& f, const SearchProblem& g);

/// f ⊕ g on pairs: ⟨x,y⟩ ↦ 1:f(x) ∪ 2:g(y) on dom(f) × dom(g).
SearchProblem oplus(const SearchProblem& f, const SearchProblem& g);
/// f ⊕ g as inf{ι1∘π1, ι2∘π2} ∘ (f × g).
SearchProblem oplus_composite(const SearchProblem& f, const SearchProblem& g);

SearchProblem power(const SearchProblem& f, int n);
/// Left-nested coproduct of power(f, 1..n).
SearchProblem star_trunc(const SearchProblem& f, int n);
Obj power_obj(const Obj& a, int n);
Obj star_obj(const Obj& a, int n);

SearchProblem empty_problem(const Obj& src, const Obj& dst);

enum class DomainClass { initial, empty, final, none };
std::string to_string(DomainClass c);
DomainClass classify_domain(const SearchProblem& d, std::span<const Obj> context);

}  // namespace manyone
