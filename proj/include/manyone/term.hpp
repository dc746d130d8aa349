#pragma once

// Witness terms: syntax, parsing, typing, evaluation and canonicalization.

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "manyone/finrel.hpp"

namespace manyone {

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t pos)
      : Error(what + " at position " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

enum class TermKind {
  gen,
  prob,  // a named problem, admitted in witnesses only under dom()
  id,
  comp,
  prod,
  coprod,
  diag,
  proj1,
  proj2,
  inj1,
  inj2,
  codiag,
  dom,
  constant,
  assoc,
  comm,
  distrib,
};

struct TermNode;
using Term = std::shared_ptr<const TermNode>;

struct TermNode {
  TermKind kind = TermKind::id;
  std::string name;                                // gen, prob
  std::shared_ptr<const SearchProblem> problem;    // prob
  std::vector<Obj> objs;                           // structural arguments
  std::optional<Element> value;                    // constant target; absent = connect
  bool inverse = false;                            // assoc, distrib
  Term left;                                       // comp: outer; dom: argument
  Term right;                                      // comp: inner
};

Term t_gen(std::string name);
Term t_prob(std::string name, SearchProblem p);
Term t_id(Obj a);
/// outer ∘ inner, printed "(outer . inner)".
Term t_comp(Term outer, Term inner);
/// Right-nested composite t0 ∘ t1 ∘ ... ∘ tn.
Term t_chain(std::initializer_list<Term> terms);
Term t_prod(Term a, Term b);
Term t_coprod(Term a, Term b);
Term t_diag(Obj a);
Term t_proj1(Obj a, Obj b);
Term t_proj2(Obj a, Obj b);
Term t_inj1(Obj a, Obj b);
Term t_inj2(Obj a, Obj b);
Term t_codiag(Obj a);
Term t_dom(Term t);
Term t_const(Obj a, Obj b, std::optional<Element> value);
Term t_assoc(Obj a, Obj b, Obj c, bool inverse = false);
Term t_comm(Obj a, Obj b);
Term t_distr(Obj a, Obj b, Obj c, bool inverse = false);

/// Named atoms, generator morphisms and problems a term may refer to.
struct TermEnv {
  AtomEnv atoms;
  std::map<std::string, SearchProblem> generators;
  std::map<std::string, SearchProblem> problems;

  const SearchProblem& generator(const std::string& name) const;
};

std::string print_term(const Term& t);
bool same_term(const Term& a, const Term& b);

Obj parse_object(const std::string& text, const AtomEnv& atoms);
Term parse_term(const std::string& text, const TermEnv& env);

struct TermType {
  Obj src;
  Obj dst;
};

TermType type_of(const Term& t, const TermEnv& env);
SearchProblem eval_term(const Term& t, const TermEnv& env);

/// Identity elimination and right re-association of composites.
Term canonicalize(const Term& t);

/// True when problems occur only under dom(), so the term denotes a witness.
bool is_subcat_term(const Term& t);
std::set<std::string> generators_used(const Term& t);
std::size_t term_size(const Term& t);

}  // namespace manyone
