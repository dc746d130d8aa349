#include "manyone/dnf.hpp"

#include <algorithm>

namespace manyone {

namespace {

struct Shape;
using ShapePtr = std::shared_ptr<const Shape>;

struct Shape {
  Obj object;  // normal-form object spanned
  ShapePtr left, right;  // null for leaves
};

ShapePtr leaf(Obj m) { return std::make_shared<const Shape>(Shape{std::move(m), nullptr, nullptr}); }

ShapePtr sum(ShapePtr l, ShapePtr r) {
  Obj o = coprod(l->object, r->object);
  return std::make_shared<const Shape>(Shape{std::move(o), std::move(l), std::move(r)});
}

// Null terms stand for identities.
Term then(Term first, Term second) {
  if (!first) return second;
  if (!second) return first;
  return t_comp(std::move(second), std::move(first));
}

Term or_id(const Term& t, const Obj& o) { return t ? t : t_id(o); }

struct Built {
  ShapePtr shape;
  Term iso;
};

// (D1 + D2) * E -> (D1 * E) + (D2 * E)
Term right_distr(const Obj& d1, const Obj& d2, const Obj& e) {
  return t_chain({t_coprod(t_comm(e, d1), t_comm(e, d2)), t_distr(e, d1, d2),
                  t_comm(coprod(d1, d2), e)});
}

Built distribute(const ShapePtr& l, const ShapePtr& r) {
  if (!l->left && !r->left) return {leaf(prod(l->object, r->object)), nullptr};
  if (l->left) {
    Term spread = right_distr(l->left->object, l->right->object, r->object);
    Built a = distribute(l->left, r);
    Built b = distribute(l->right, r);
    Term inner = (a.iso || b.iso) ? t_coprod(or_id(a.iso, prod(l->left->object, r->object)),
                                             or_id(b.iso, prod(l->right->object, r->object)))
                                  : nullptr;
    return {sum(a.shape, b.shape), then(spread, inner)};
  }
  Term spread = t_distr(l->object, r->left->object, r->right->object);
  Built a = distribute(l, r->left);
  Built b = distribute(l, r->right);
  Term inner = (a.iso || b.iso) ? t_coprod(or_id(a.iso, prod(l->object, r->left->object)),
                                           or_id(b.iso, prod(l->object, r->right->object)))
                                : nullptr;
  return {sum(a.shape, b.shape), then(spread, inner)};
}

Built build(const Obj& a) {
  switch (a->kind) {
    case ObjKind::atom: return {leaf(a), nullptr};
    case ObjKind::coprod: {
      Built l = build(a->left), r = build(a->right);
      Term iso = (l.iso || r.iso) ? t_coprod(or_id(l.iso, a->left), or_id(r.iso, a->right)) : nullptr;
      return {sum(l.shape, r.shape), iso};
    }
    case ObjKind::prod: {
      Built l = build(a->left), r = build(a->right);
      Term pre = (l.iso || r.iso) ? t_prod(or_id(l.iso, a->left), or_id(r.iso, a->right)) : nullptr;
      Built d = distribute(l.shape, r.shape);
      return {d.shape, then(pre, d.iso)};
    }
  }
  throw Error("unknown object kind");
}

std::size_t flatten(const ShapePtr& s, Dnf& out, std::size_t& offset) {
  DnfNode n;
  n.object = s->object;
  if (!s->left) {
    n.leaf = true;
    n.leaf_index = out.leaves.size();
    out.leaves.push_back(DnfLeaf{s->object, offset});
    offset += s->object->size;
  } else {
    n.leaf = false;
    n.left = flatten(s->left, out, offset);
    n.right = flatten(s->right, out, offset);
  }
  out.nodes.push_back(n);
  return out.nodes.size() - 1;
}

}  // namespace

Dnf make_dnf(const Obj& a) {
  Built b = build(a);
  Dnf d;
  d.source = a;
  d.normal = b.shape->object;
  d.trivial = !b.iso;
  d.to_normal = b.iso ? b.iso : t_id(a);
  std::size_t offset = 0;
  flatten(b.shape, d, offset);

  std::vector<std::int32_t> image(a->size);
  if (b.iso) {
    image = eval_term(b.iso, TermEnv{}).as_function();
  } else {
    for (std::size_t x = 0; x < a->size; ++x) image[x] = static_cast<std::int32_t>(x);
  }
  d.locate.resize(a->size);
  d.origin.resize(d.leaves.size());
  for (std::size_t i = 0; i < d.leaves.size(); ++i) d.origin[i].resize(d.leaves[i].monomial->size);
  for (std::size_t x = 0; x < a->size; ++x) {
    auto y = static_cast<std::size_t>(image[x]);
    auto it = std::upper_bound(d.leaves.begin(), d.leaves.end(), y,
                               [](std::size_t v, const DnfLeaf& l) { return v < l.offset; });
    std::size_t leaf_index = static_cast<std::size_t>(it - d.leaves.begin()) - 1;
    // Skip empty leaves sharing the same offset.
    while (y - d.leaves[leaf_index].offset >= d.leaves[leaf_index].monomial->size) --leaf_index;
    auto point = static_cast<std::uint32_t>(y - d.leaves[leaf_index].offset);
    d.locate[x] = {static_cast<std::uint32_t>(leaf_index), point};
    d.origin[leaf_index][point] = static_cast<std::uint32_t>(x);
  }
  return d;
}

namespace {

Term copair_node(const Dnf& d, std::size_t node, const std::vector<Term>& leaf_terms,
                 const Obj& target) {
  const DnfNode& n = d.nodes[node];
  if (n.leaf) return leaf_terms[n.leaf_index];
  return t_comp(t_codiag(target), t_coprod(copair_node(d, n.left, leaf_terms, target),
                                           copair_node(d, n.right, leaf_terms, target)));
}

}  // namespace

Term copair_leaves(const Dnf& d, const std::vector<Term>& leaf_terms, const Obj& target) {
  if (leaf_terms.size() != d.leaves.size()) throw Error("one term per normal-form leaf expected");
  Term body = copair_node(d, d.nodes.size() - 1, leaf_terms, target);
  return d.trivial ? body : t_comp(body, d.to_normal);
}

std::vector<Slot> monomial_slots(const Obj& m) {
  std::vector<Slot> out;
  std::vector<std::uint32_t> ident(m->size);
  for (std::size_t i = 0; i < m->size; ++i) ident[i] = static_cast<std::uint32_t>(i);
  out.push_back(Slot{m, t_id(m), ident});
  for (std::size_t k = 0; k < out.size(); ++k) {
    Slot s = out[k];
    if (s.object->kind != ObjKind::prod) continue;
    const Obj& l = s.object->left;
    const Obj& r = s.object->right;
    auto via = [&](Term proj) { return s.term->kind == TermKind::id ? proj : t_comp(proj, s.term); };
    std::vector<std::uint32_t> lv(m->size), rv(m->size);
    for (std::size_t i = 0; i < m->size; ++i) {
      lv[i] = static_cast<std::uint32_t>(s.values[i] / r->size);
      rv[i] = static_cast<std::uint32_t>(s.values[i] % r->size);
    }
    out.push_back(Slot{l, via(t_proj1(l, r)), std::move(lv)});
    out.push_back(Slot{r, via(t_proj2(l, r)), std::move(rv)});
  }
  return out;
}

Term nowhere_term(const Obj& a, const Obj& b) {
  if (b->size == 0) return t_const(a, b, std::nullopt);
  if (a->size == 0) return t_const(a, b, element_at(b, 0));
  switch (b->kind) {
    case ObjKind::atom: return nullptr;
    case ObjKind::coprod:
      if (Term l = nowhere_term(a, b->left)) return t_comp(t_inj1(b->left, b->right), l);
      if (Term r = nowhere_term(a, b->right)) return t_comp(t_inj2(b->left, b->right), r);
      return nullptr;
    case ObjKind::prod: {
      Term l = nowhere_term(a, b->left);
      Term r = nowhere_term(a, b->right);
      if (!l && !r) return nullptr;
      if (!l) l = t_const(a, b->left, element_at(b->left, 0));
      if (!r) r = t_const(a, b->right, element_at(b->right, 0));
      return t_comp(t_prod(l, r), t_diag(a));
    }
  }
  return nullptr;
}

namespace {

Term compile_monomial(const Obj& m, const Obj& t, const std::vector<std::int32_t>& vals,
                      const std::vector<Slot>& slots) {
  bool any_undef = std::any_of(vals.begin(), vals.end(), [](std::int32_t v) { return v < 0; });
  if (vals.empty() || any_undef) {
    if (!vals.empty() && !std::all_of(vals.begin(), vals.end(), [](std::int32_t v) { return v < 0; }))
      throw Error("function is partial within a monomial of " + m->text);
    if (Term n = nowhere_term(m, t)) return n;
    throw Error("no nowhere-defined structural map " + m->text + " -> " + t->text);
  }
  if (std::all_of(vals.begin(), vals.end(), [&](std::int32_t v) { return v == vals[0]; }))
    return t_const(m, t, element_at(t, static_cast<std::size_t>(vals[0])));
  for (const auto& s : slots) {
    if (!same(s.object, t)) continue;
    bool match = true;
    for (std::size_t i = 0; i < vals.size() && match; ++i)
      match = static_cast<std::int32_t>(s.values[i]) == vals[i];
    if (match) return s.term;
  }
  if (t->kind == ObjKind::prod) {
    auto rs = static_cast<std::int32_t>(t->right->size);
    std::vector<std::int32_t> lv(vals.size()), rv(vals.size());
    for (std::size_t i = 0; i < vals.size(); ++i) {
      lv[i] = vals[i] / rs;
      rv[i] = vals[i] % rs;
    }
    return t_comp(t_prod(compile_monomial(m, t->left, lv, slots),
                         compile_monomial(m, t->right, rv, slots)),
                  t_diag(m));
  }
  if (t->kind == ObjKind::coprod) {
    auto ls = static_cast<std::int32_t>(t->left->size);
    bool all_left = std::all_of(vals.begin(), vals.end(), [&](std::int32_t v) { return v < ls; });
    bool all_right = std::all_of(vals.begin(), vals.end(), [&](std::int32_t v) { return v >= ls; });
    if (all_left) return t_comp(t_inj1(t->left, t->right), compile_monomial(m, t->left, vals, slots));
    if (all_right) {
      std::vector<std::int32_t> rv(vals.size());
      for (std::size_t i = 0; i < vals.size(); ++i) rv[i] = vals[i] - ls;
      return t_comp(t_inj2(t->left, t->right), compile_monomial(m, t->right, rv, slots));
    }
  }
  throw Error("function on " + m->text + " -> " + t->text + " is not structural");
}

}  // namespace

Term compile_structural(const Obj& a, const Obj& b, const std::vector<std::int32_t>& fn) {
  if (fn.size() != a->size) throw Error("function table does not match source carrier");
  Dnf d = make_dnf(a);
  std::vector<Term> parts;
  for (std::size_t i = 0; i < d.leaves.size(); ++i) {
    const Obj& m = d.leaves[i].monomial;
    std::vector<std::int32_t> vals(m->size);
    for (std::size_t p = 0; p < m->size; ++p) vals[p] = fn[d.origin[i][p]];
    parts.push_back(compile_monomial(m, b, vals, monomial_slots(m)));
  }
  return copair_leaves(d, parts, b);
}

}  // namespace manyone
