#pragma once

// Parameterized problems: objects decorated with a parameter per element,
// morphisms certified by a monotone parameter bound, and reduction checking
// that demands such bounds on the pre-processor. Only parameter bounds are
// checked; running times are not modeled.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "manyone/reduce.hpp"

namespace manyone {

/// A needed parameter value lies above every key of a bound table.
class IncompleteBound : public Error {
 public:
  using Error::Error;
};

/// A witness has no parameter-bound certification.
class MissingBound : public Error {
 public:
  using Error::Error;
};

struct Parameterization {
  Obj obj;
  std::vector<int> kappa;  // per carrier element, each >= 1

  int at(std::size_t x) const { return kappa.at(x); }
  int max() const;
  friend bool operator==(const Parameterization& a, const Parameterization& b);
};

Parameterization make_parameterization(Obj obj, std::vector<int> kappa);
/// The parameterization constantly 1.
Parameterization kappa_bottom(const Obj& obj);
/// On pairs: the larger parameter.
Parameterization kappa_product(const Parameterization& k1, const Parameterization& k2);
/// On tagged elements: the parameter of the summand.
Parameterization kappa_coproduct(const Parameterization& k1, const Parameterization& k2);

/// Monotone bound table. Values between keys use the next larger key; values
/// above the largest key are an IncompleteBound.
struct BoundTable {
  std::map<int, int> entries;

  int at(int k) const;
  int max_key() const;
  std::string format() const;
  friend bool operator==(const BoundTable& a, const BoundTable& b) = default;
};

BoundTable make_bound(std::map<int, int> entries);
BoundTable identity_bound(const Parameterization& k);

struct ParamMorphism {
  SearchProblem underlying;  // single-valued
  Parameterization src;
  Parameterization dst;
  BoundTable bound;
};

struct ParamCheck {
  bool holds = true;
  std::optional<std::size_t> counterexample;  // a source element
  std::string detail;
};

/// dst(f(w)) <= bound(src(w)) for every w in the domain. Throws
/// IncompleteBound when the table does not reach a needed value.
ParamCheck check_param_morphism(const ParamMorphism& m);

/// The least bound table certifying `underlying`, keyed by the source values.
ParamMorphism least_bound_morphism(const SearchProblem& underlying, const Parameterization& src,
                                   const Parameterization& dst);

/// outer ∘ inner.
ParamMorphism compose_param(const ParamMorphism& outer, const ParamMorphism& inner);
ParamMorphism product_param(const ParamMorphism& a, const ParamMorphism& b);
ParamMorphism coproduct_param(const ParamMorphism& a, const ParamMorphism& b);

struct ParamProblem {
  NamedProblem problem;
  Parameterization kappa;  // on the instances
};

/// Entailment of the underlying relations; the parameterizations must agree.
HomOrderWitness param_entails(const ParamProblem& p, const ParamProblem& q);

/// Parameter data a reduction check may draw on.
struct ParamContext {
  std::map<std::string, ParamMorphism> generators;
  std::map<std::string, Parameterization> problems;
};

struct ParamReduceResult {
  bool certificate_valid = false;  // the plain certificate check
  bool bounds_valid = false;
  std::optional<ParamMorphism> pre_processor;
  std::string detail;

  bool accepted() const { return certificate_valid && bounds_valid; }
};

/// Outputs carry the constant parameterization, so only the pre-processor
/// needs a bound. It must be a composite of bounded generators and domain
/// restrictions, or have a one-point image (certified by a constant bound);
/// anything else is reported as uncertified.
ParamReduceResult param_reduce_check(const ReductionCert& c, const TermEnv& env, const ParamContext& ctx);

}  // namespace manyone
