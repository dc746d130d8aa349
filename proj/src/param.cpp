#include "manyone/param.hpp"

#include <algorithm>
#include <sstream>

namespace manyone {

int Parameterization::max() const {
  return kappa.empty() ? 1 : *std::max_element(kappa.begin(), kappa.end());
}

bool operator==(const Parameterization& a, const Parameterization& b) {
  return same(a.obj, b.obj) && a.kappa == b.kappa;
}

Parameterization make_parameterization(Obj obj, std::vector<int> kappa) {
  if (kappa.size() != obj->size)
    throw Error("parameterization of " + obj->text + " needs " + std::to_string(obj->size) + " values");
  for (int k : kappa)
    if (k < 1) throw Error("parameter values must be at least 1");
  return Parameterization{std::move(obj), std::move(kappa)};
}

Parameterization kappa_bottom(const Obj& obj) { return Parameterization{obj, std::vector<int>(obj->size, 1)}; }

Parameterization kappa_product(const Parameterization& k1, const Parameterization& k2) {
  std::vector<int> out;
  out.reserve(k1.kappa.size() * k2.kappa.size());
  for (int a : k1.kappa)
    for (int b : k2.kappa) out.push_back(std::max(a, b));
  return Parameterization{prod(k1.obj, k2.obj), std::move(out)};
}

Parameterization kappa_coproduct(const Parameterization& k1, const Parameterization& k2) {
  std::vector<int> out = k1.kappa;
  out.insert(out.end(), k2.kappa.begin(), k2.kappa.end());
  return Parameterization{coprod(k1.obj, k2.obj), std::move(out)};
}

// ---------------------------------------------------------------------------
// Bound tables

int BoundTable::at(int k) const {
  auto it = entries.lower_bound(k);
  if (it == entries.end())
    throw IncompleteBound("bound table " + format() + " has no entry at or above " + std::to_string(k));
  return it->second;
}

int BoundTable::max_key() const { return entries.empty() ? 0 : entries.rbegin()->first; }

std::string BoundTable::format() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [k, v] : entries) {
    os << (first ? "" : ", ") << k << ": " << v;
    first = false;
  }
  os << '}';
  return os.str();
}

BoundTable make_bound(std::map<int, int> entries) {
  int prev = 0;
  for (const auto& [k, v] : entries) {
    if (k < 1 || v < 1) throw Error("bound table entries must be at least 1");
    if (v < prev) throw Error("bound table is not monotone");
    prev = v;
  }
  return BoundTable{std::move(entries)};
}

BoundTable identity_bound(const Parameterization& k) {
  std::map<int, int> e;
  for (int v : k.kappa) e[v] = v;
  if (e.empty()) e[1] = 1;
  return BoundTable{std::move(e)};
}

ParamCheck check_param_morphism(const ParamMorphism& m) {
  const SearchProblem& f = m.underlying;
  if (!same(f.src(), m.src.obj) || !same(f.dst(), m.dst.obj))
    throw TypeError("parameterizations do not match the morphism's type");
  if (!f.single_valued()) throw Error("parameterized morphisms must be single-valued");
  ParamCheck out;
  for (std::size_t w = 0; w < f.src()->size; ++w) {
    if (!f.defined_at(w)) continue;
    std::size_t y = f.image(w)[0];
    int limit = m.bound.at(m.src.at(w));
    if (m.dst.at(y) > limit) {
      out.holds = false;
      out.counterexample = w;
      std::ostringstream os;
      os << "at " << format_element(element_at(f.src(), w)) << ": parameter " << m.dst.at(y) << " of "
         << format_element(element_at(f.dst(), y)) << " exceeds bound " << limit << " for parameter "
         << m.src.at(w);
      out.detail = os.str();
      return out;
    }
  }
  return out;
}

ParamMorphism least_bound_morphism(const SearchProblem& underlying, const Parameterization& src,
                                   const Parameterization& dst) {
  std::map<int, int> e;
  for (int k : src.kappa) e[k] = 1;
  for (std::size_t w = 0; w < underlying.src()->size; ++w)
    for (Index y : underlying.image(w)) e[src.at(w)] = std::max(e[src.at(w)], dst.at(y));
  int running = 1;
  for (auto& [k, v] : e) running = v = std::max(running, v);
  if (e.empty()) e[1] = 1;
  return ParamMorphism{underlying, src, dst, BoundTable{std::move(e)}};
}

namespace {

// Pointwise maximum, each table clamped to its own largest key. Sound when
// each table covers every parameter value of its own source.
BoundTable max_bound(const BoundTable& a, const BoundTable& b) {
  std::map<int, int> e;
  for (const auto* t : {&a, &b})
    for (const auto& [k, v] : t->entries) e[k] = 0;
  for (auto& [k, v] : e) v = std::max(a.at(std::min(k, a.max_key())), b.at(std::min(k, b.max_key())));
  return BoundTable{std::move(e)};
}

}  // namespace

ParamMorphism compose_param(const ParamMorphism& outer, const ParamMorphism& inner) {
  if (!(inner.dst == outer.src)) throw Error("parameterizations of the composed morphisms do not match");
  if (outer.src.max() > outer.bound.max_key())
    throw IncompleteBound("bound table " + outer.bound.format() + " does not cover its source parameters");
  std::map<int, int> e;
  for (const auto& [k, v] : inner.bound.entries) e[k] = outer.bound.at(std::min(v, outer.bound.max_key()));
  return ParamMorphism{compose(outer.underlying, inner.underlying), inner.src, outer.dst, BoundTable{std::move(e)}};
}

ParamMorphism product_param(const ParamMorphism& a, const ParamMorphism& b) {
  return ParamMorphism{product_m(a.underlying, b.underlying), kappa_product(a.src, b.src),
                       kappa_product(a.dst, b.dst), max_bound(a.bound, b.bound)};
}

ParamMorphism coproduct_param(const ParamMorphism& a, const ParamMorphism& b) {
  return ParamMorphism{coproduct_m(a.underlying, b.underlying), kappa_coproduct(a.src, b.src),
                       kappa_coproduct(a.dst, b.dst), max_bound(a.bound, b.bound)};
}

HomOrderWitness param_entails(const ParamProblem& p, const ParamProblem& q) {
  if (!(p.kappa == q.kappa)) throw Error("parameterized problems have different instance parameterizations");
  return entails(p.problem.problem, q.problem.problem);
}

// ---------------------------------------------------------------------------
// Reduction checking

namespace {

void flatten(const Term& t, std::vector<Term>& out) {
  if (t->kind == TermKind::comp) {
    flatten(t->left, out);
    flatten(t->right, out);
  } else {
    out.push_back(t);
  }
}

const Parameterization& problem_kappa(const ParamContext& ctx, const NamedProblem& p) {
  auto it = ctx.problems.find(p.name);
  if (it == ctx.problems.end()) throw MissingBound("problem '" + p.name + "' has no parameterization");
  if (!same(it->second.obj, p.problem.src()))
    throw Error("parameterization of '" + p.name + "' is not on its instances");
  return it->second;
}

// Bound table of a composite of bounded generators and domain restrictions.
BoundTable certified_bound(const Term& k, const Parameterization& src, const ParamContext& ctx) {
  std::vector<Term> factors;
  flatten(canonicalize(k), factors);
  std::optional<ParamMorphism> acc;
  for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
    const Term& t = *it;
    if (t->kind == TermKind::id || t->kind == TermKind::dom) continue;
    if (t->kind != TermKind::gen)
      throw MissingBound("pre-processor factor " + print_term(t) + " has no parameter bound");
    auto g = ctx.generators.find(t->name);
    if (g == ctx.generators.end())
      throw MissingBound("generator '" + t->name + "' has no parameter bound");
    acc = acc ? compose_param(g->second, *acc) : g->second;
  }
  if (!acc) return identity_bound(src);
  if (!(acc->src == src))
    throw Error("pre-processor parameterization does not match the source problem");
  return acc->bound;
}

// The single value of a map whose image is one point.
std::optional<Index> single_point_image(const SearchProblem& k) {
  std::optional<Index> v;
  for (const auto& row : k.rows())
    for (Index y : row) {
      if (v && *v != y) return std::nullopt;
      v = y;
    }
  return v;
}

BoundTable constant_bound(const Parameterization& src, int value) {
  std::map<int, int> e;
  for (int k : src.kappa) e[k] = value;
  return BoundTable{std::move(e)};
}

}  // namespace

ParamReduceResult param_reduce_check(const ReductionCert& c, const TermEnv& env, const ParamContext& ctx) {
  ParamReduceResult out;
  CertCheck plain = check_cert(c, env);
  out.certificate_valid = plain.valid;
  if (!plain.valid) {
    out.detail = "certificate does not validate: " + plain.witness.describe();
    return out;
  }
  const Parameterization& kf = problem_kappa(ctx, c.f);
  const Parameterization& kg = problem_kappa(ctx, c.g);
  try {
    SearchProblem k = eval_term(c.K, env);
    auto point = single_point_image(k);
    BoundTable bound = point ? constant_bound(kf, kg.at(*point)) : certified_bound(c.K, kf, ctx);
    ParamMorphism pre{std::move(k), kf, kg, std::move(bound)};
    ParamCheck r = check_param_morphism(pre);
    out.bounds_valid = r.holds;
    out.detail = r.holds ? "pre-processor bound " + pre.bound.format() + " holds" : r.detail;
    out.pre_processor = std::move(pre);
  } catch (const MissingBound& e) {
    out.detail = e.what();
  } catch (const IncompleteBound& e) {
    out.detail = e.what();
  }
  return out;
}

}  // namespace manyone
