#include "manyone/term.hpp"

namespace manyone {

namespace {

std::shared_ptr<TermNode> node(TermKind kind) {
  auto n = std::make_shared<TermNode>();
  n->kind = kind;
  return n;
}

Term with_objs(TermKind kind, std::vector<Obj> objs, bool inverse = false) {
  auto n = node(kind);
  n->objs = std::move(objs);
  n->inverse = inverse;
  return n;
}

Term binary(TermKind kind, Term a, Term b) {
  auto n = node(kind);
  n->left = std::move(a);
  n->right = std::move(b);
  return n;
}

}  // namespace

Term t_gen(std::string name) {
  auto n = node(TermKind::gen);
  n->name = std::move(name);
  return n;
}

Term t_prob(std::string name, SearchProblem p) {
  auto n = node(TermKind::prob);
  n->name = std::move(name);
  n->problem = std::make_shared<const SearchProblem>(std::move(p));
  return n;
}

Term t_id(Obj a) { return with_objs(TermKind::id, {std::move(a)}); }
Term t_comp(Term outer, Term inner) { return binary(TermKind::comp, std::move(outer), std::move(inner)); }

Term t_chain(std::initializer_list<Term> terms) {
  if (terms.size() == 0) throw Error("empty composite");
  auto it = terms.end();
  Term acc = *--it;
  while (it != terms.begin()) acc = t_comp(*--it, acc);
  return acc;
}

Term t_prod(Term a, Term b) { return binary(TermKind::prod, std::move(a), std::move(b)); }
Term t_coprod(Term a, Term b) { return binary(TermKind::coprod, std::move(a), std::move(b)); }
Term t_diag(Obj a) { return with_objs(TermKind::diag, {std::move(a)}); }
Term t_proj1(Obj a, Obj b) { return with_objs(TermKind::proj1, {std::move(a), std::move(b)}); }
Term t_proj2(Obj a, Obj b) { return with_objs(TermKind::proj2, {std::move(a), std::move(b)}); }
Term t_inj1(Obj a, Obj b) { return with_objs(TermKind::inj1, {std::move(a), std::move(b)}); }
Term t_inj2(Obj a, Obj b) { return with_objs(TermKind::inj2, {std::move(a), std::move(b)}); }
Term t_codiag(Obj a) { return with_objs(TermKind::codiag, {std::move(a)}); }

Term t_dom(Term t) {
  auto n = node(TermKind::dom);
  n->left = std::move(t);
  return n;
}

Term t_const(Obj a, Obj b, std::optional<Element> value) {
  auto n = node(TermKind::constant);
  n->objs = {std::move(a), std::move(b)};
  n->value = std::move(value);
  return n;
}

Term t_assoc(Obj a, Obj b, Obj c, bool inverse) {
  return with_objs(TermKind::assoc, {std::move(a), std::move(b), std::move(c)}, inverse);
}
Term t_comm(Obj a, Obj b) { return with_objs(TermKind::comm, {std::move(a), std::move(b)}); }
Term t_distr(Obj a, Obj b, Obj c, bool inverse) {
  return with_objs(TermKind::distrib, {std::move(a), std::move(b), std::move(c)}, inverse);
}

const SearchProblem& TermEnv::generator(const std::string& name) const {
  auto it = generators.find(name);
  if (it == generators.end()) throw Error("unbound generator '" + name + "'");
  return it->second;
}

namespace {

std::string obj_list(const std::vector<Obj>& objs) {
  std::string out;
  for (std::size_t i = 0; i < objs.size(); ++i) out += (i ? "," : "") + objs[i]->text;
  return out;
}

void print_into(const Term& t, std::string& out) {
  switch (t->kind) {
    case TermKind::gen: out += "gen:" + t->name; return;
    case TermKind::prob: out += "prob:" + t->name; return;
    case TermKind::id: out += "id[" + t->objs[0]->text + "]"; return;
    case TermKind::diag: out += "delta[" + t->objs[0]->text + "]"; return;
    case TermKind::proj1: out += "pi1[" + obj_list(t->objs) + "]"; return;
    case TermKind::proj2: out += "pi2[" + obj_list(t->objs) + "]"; return;
    case TermKind::inj1: out += "in1[" + obj_list(t->objs) + "]"; return;
    case TermKind::inj2: out += "in2[" + obj_list(t->objs) + "]"; return;
    case TermKind::codiag: out += "nabla[" + t->objs[0]->text + "]"; return;
    case TermKind::comm: out += "comm[" + obj_list(t->objs) + "]"; return;
    case TermKind::assoc:
      out += "assoc[" + obj_list(t->objs) + (t->inverse ? ";inv]" : "]");
      return;
    case TermKind::distrib:
      out += "distr[" + obj_list(t->objs) + (t->inverse ? ";inv]" : "]");
      return;
    case TermKind::constant:
      out += "const[" + t->objs[0]->text + " -> " + t->objs[1]->text;
      if (t->value) out += " : " + format_element(*t->value);
      out += "]";
      return;
    case TermKind::dom:
      out += "dom(";
      print_into(t->left, out);
      out += ")";
      return;
    case TermKind::comp:
    case TermKind::prod:
    case TermKind::coprod: {
      const char* op = t->kind == TermKind::comp ? " . " : t->kind == TermKind::prod ? " * " : " + ";
      out += "(";
      print_into(t->left, out);
      out += op;
      print_into(t->right, out);
      out += ")";
      return;
    }
  }
}

}  // namespace

std::string print_term(const Term& t) {
  std::string out;
  print_into(t, out);
  return out;
}

bool same_term(const Term& a, const Term& b) { return a == b || print_term(a) == print_term(b); }

namespace {

[[noreturn]] void ill_typed(const Term& t, const std::string& why) {
  std::string text = print_term(t);
  if (text.size() > 160) text = text.substr(0, 157) + "...";
  throw TypeError("ill-typed term " + text + ": " + why);
}

}  // namespace

TermType type_of(const Term& t, const TermEnv& env) {
  const auto& o = t->objs;
  switch (t->kind) {
    case TermKind::gen: {
      auto it = env.generators.find(t->name);
      if (it == env.generators.end()) ill_typed(t, "unknown generator");
      return {it->second.src(), it->second.dst()};
    }
    case TermKind::prob: return {t->problem->src(), t->problem->dst()};
    case TermKind::id: return {o[0], o[0]};
    case TermKind::diag: return {o[0], prod(o[0], o[0])};
    case TermKind::proj1: return {prod(o[0], o[1]), o[0]};
    case TermKind::proj2: return {prod(o[0], o[1]), o[1]};
    case TermKind::inj1: return {o[0], coprod(o[0], o[1])};
    case TermKind::inj2: return {o[1], coprod(o[0], o[1])};
    case TermKind::codiag: return {coprod(o[0], o[0]), o[0]};
    case TermKind::comm: return {prod(o[0], o[1]), prod(o[1], o[0])};
    case TermKind::assoc: {
      Obj l = prod(prod(o[0], o[1]), o[2]), r = prod(o[0], prod(o[1], o[2]));
      return t->inverse ? TermType{r, l} : TermType{l, r};
    }
    case TermKind::distrib: {
      Obj l = prod(o[0], coprod(o[1], o[2]));
      Obj r = coprod(prod(o[0], o[1]), prod(o[0], o[2]));
      return t->inverse ? TermType{r, l} : TermType{l, r};
    }
    case TermKind::constant:
      if (t->value) {
        if (!index_of(o[1], *t->value))
          ill_typed(t, "element " + format_element(*t->value) + " is not in " + o[1]->text);
      } else if (o[1]->size != 0 && !same(o[0], o[1])) {
        ill_typed(t, "a constant without element needs an empty target");
      }
      return {o[0], o[1]};
    case TermKind::dom: {
      TermType inner = type_of(t->left, env);
      return {inner.src, inner.src};
    }
    case TermKind::comp: {
      TermType outer = type_of(t->left, env);
      TermType inner = type_of(t->right, env);
      if (!same(inner.dst, outer.src))
        ill_typed(t, "composition mismatch " + inner.dst->text + " vs " + outer.src->text);
      return {inner.src, outer.dst};
    }
    case TermKind::prod: {
      TermType a = type_of(t->left, env), b = type_of(t->right, env);
      return {prod(a.src, b.src), prod(a.dst, b.dst)};
    }
    case TermKind::coprod: {
      TermType a = type_of(t->left, env), b = type_of(t->right, env);
      return {coprod(a.src, b.src), coprod(a.dst, b.dst)};
    }
  }
  ill_typed(t, "unknown constructor");
}

SearchProblem eval_term(const Term& t, const TermEnv& env) {
  const auto& o = t->objs;
  switch (t->kind) {
    case TermKind::gen: return env.generator(t->name);
    case TermKind::prob: return *t->problem;
    case TermKind::id: return identity(o[0]);
    case TermKind::diag: return diag(o[0]);
    case TermKind::proj1: return proj1(o[0], o[1]);
    case TermKind::proj2: return proj2(o[0], o[1]);
    case TermKind::inj1: return inj1(o[0], o[1]);
    case TermKind::inj2: return inj2(o[0], o[1]);
    case TermKind::codiag: return codiag(o[0]);
    case TermKind::comm: return comm(o[0], o[1]);
    case TermKind::assoc: return assoc(o[0], o[1], o[2], t->inverse);
    case TermKind::distrib: return distrib(o[0], o[1], o[2], t->inverse);
    case TermKind::constant:
      if (!t->value) return connect(o[0], o[1]);
      return constant(o[0], o[1], require_index(o[1], *t->value));
    case TermKind::dom: return dom_m(eval_term(t->left, env));
    case TermKind::comp: {
      SearchProblem inner = eval_term(t->right, env);
      SearchProblem outer = eval_term(t->left, env);
      return compose(outer, inner);
    }
    case TermKind::prod: return product_m(eval_term(t->left, env), eval_term(t->right, env));
    case TermKind::coprod: return coproduct_m(eval_term(t->left, env), eval_term(t->right, env));
  }
  throw TypeError("unknown constructor");
}

namespace {

Term rebuild(const Term& t, Term left, Term right) {
  if (left == t->left && right == t->right) return t;
  auto n = std::make_shared<TermNode>(*t);
  n->left = std::move(left);
  n->right = std::move(right);
  return n;
}

Term canon(const Term& t) {
  switch (t->kind) {
    case TermKind::dom: return rebuild(t, canon(t->left), nullptr);
    case TermKind::prod:
    case TermKind::coprod: return rebuild(t, canon(t->left), canon(t->right));
    case TermKind::comp: {
      Term outer = canon(t->left);
      Term inner = canon(t->right);
      if (outer->kind == TermKind::id) return inner;
      if (inner->kind == TermKind::id) return outer;
      if (outer->kind == TermKind::comp)
        return canon(t_comp(outer->left, t_comp(outer->right, inner)));
      return rebuild(t, std::move(outer), std::move(inner));
    }
    default: return t;
  }
}

}  // namespace

Term canonicalize(const Term& t) { return canon(t); }

bool is_subcat_term(const Term& t) {
  switch (t->kind) {
    case TermKind::prob: return false;
    case TermKind::dom: return true;  // domains of arbitrary problems are admitted
    case TermKind::comp:
    case TermKind::prod:
    case TermKind::coprod: return is_subcat_term(t->left) && is_subcat_term(t->right);
    default: return true;
  }
}

namespace {

void collect_gens(const Term& t, std::set<std::string>& out) {
  if (!t) return;
  if (t->kind == TermKind::gen) out.insert(t->name);
  collect_gens(t->left, out);
  collect_gens(t->right, out);
}

}  // namespace

std::set<std::string> generators_used(const Term& t) {
  std::set<std::string> out;
  collect_gens(t, out);
  return out;
}

std::size_t term_size(const Term& t) {
  if (!t) return 0;
  return 1 + term_size(t->left) + term_size(t->right);
}

}  // namespace manyone
