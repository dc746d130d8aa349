#include "manyone/reduce.hpp"

namespace manyone {

namespace {

void require_valid(const ReductionCert& c, const TermEnv& env, const std::string& role) {
  CertCheck r;
  try {
    r = check_cert(c, env);
  } catch (const TypeError& e) {
    throw InvalidCertificate(role + ": " + e.what());
  }
  if (!r.valid) throw InvalidCertificate(role + " does not validate: " + r.witness.describe());
}

ReductionCert as_m(const ReductionCert& c, const TermEnv& env) {
  return c.kind == ReductionKind::m ? c : sm_to_m(c, env);
}

ReductionCert make(ReductionKind kind, NamedProblem f, NamedProblem g, Term h, Term k) {
  ReductionCert c;
  c.kind = kind;
  c.f = std::move(f);
  c.g = std::move(g);
  c.H = std::move(h);
  c.K = std::move(k);
  return c;
}

// A map a -> b: a constant when b is inhabited, otherwise nowhere defined.
Term any_map(const Obj& a, const Obj& b) {
  if (b->size > 0) return t_const(a, b, element_at(b, 0));
  return t_const(a, b, std::nullopt);
}

// (A1 + A2) * D -> (A1 * D) + (A2 * D)
Term right_distr(const Obj& a1, const Obj& a2, const Obj& d) {
  return t_chain({t_coprod(t_comm(d, a1), t_comm(d, a2)), t_distr(d, a1, a2), t_comm(coprod(a1, a2), d)});
}

Term dom_of(const NamedProblem& p) { return t_dom(t_prob(p.name, p.problem)); }

// Source objects of a left-nested family sum.
std::vector<Obj> prefix_sums(const std::vector<NamedProblem>& family, bool src) {
  std::vector<Obj> out;
  for (const auto& p : family) {
    const Obj& o = src ? p.problem.src() : p.problem.dst();
    out.push_back(out.empty() ? o : coprod(out.back(), o));
  }
  return out;
}

}  // namespace

ReductionCert refl_cert(const NamedProblem& f) {
  return make(ReductionKind::sm, f, f, t_id(f.problem.dst()), t_id(f.problem.src()));
}

ReductionCert sm_to_m(const ReductionCert& c, const TermEnv& env) {
  if (c.kind != ReductionKind::sm) throw InvalidCertificate("expected a strong certificate");
  require_valid(c, env, "strong certificate");
  Term h = t_comp(c.H, t_proj2(c.f.problem.src(), c.g.problem.dst()));
  return make(ReductionKind::m, c.f, c.g, h, c.K);
}

ReductionCert trans_cert(const ReductionCert& c1, const ReductionCert& c2, const TermEnv& env) {
  require_valid(c1, env, "first certificate");
  require_valid(c2, env, "second certificate");
  if (c1.g.problem != c2.f.problem) throw InvalidCertificate("certificates do not chain");
  if (c1.kind == ReductionKind::sm && c2.kind == ReductionKind::sm)
    return make(ReductionKind::sm, c1.f, c2.g, t_comp(c1.H, c2.H), t_comp(c2.K, c1.K));
  ReductionCert a = as_m(c1, env), b = as_m(c2, env);
  const Obj& af = a.f.problem.src();
  const Obj& ag = a.g.problem.src();
  const Obj& dh = b.g.problem.dst();
  // x, z -> F(x, H(G x, z))
  Term m = t_chain({a.H, t_prod(t_id(af), b.H), t_assoc(af, ag, dh),
                    t_prod(t_comp(t_prod(t_id(af), a.K), t_diag(af)), t_id(dh))});
  return make(ReductionKind::m, a.f, b.g, m, t_comp(b.K, a.K));
}

ReductionCert sup_inj_cert(const std::vector<NamedProblem>& family, std::size_t index) {
  if (index >= family.size()) throw Error("family index out of range");
  std::vector<Obj> srcs = prefix_sums(family, true);
  std::vector<Obj> dsts = prefix_sums(family, false);
  const NamedProblem& fi = family[index];

  Term k;
  for (std::size_t j = family.size(); j-- > 1;) {
    if (j < index) break;
    Term step = j == index ? t_inj2(srcs[j - 1], family[j].problem.src())
                           : t_inj1(srcs[j - 1], family[j].problem.src());
    k = k ? t_comp(k, step) : step;
  }
  if (!k) k = t_id(fi.problem.src());

  const Obj& target = fi.problem.dst();
  auto part = [&](std::size_t j) {
    return j == index ? t_id(target) : any_map(family[j].problem.dst(), target);
  };
  Term h = part(0);
  for (std::size_t j = 1; j < family.size(); ++j)
    h = t_comp(t_codiag(target), t_coprod(h, part(j)));
  return make(ReductionKind::sm, fi, sup_family(family), h, k);
}

namespace {

// f1 ⊔ f2 ≤m g from f1 ≤m g and f2 ≤m g.
ReductionCert sup_univ2(const ReductionCert& c1, const ReductionCert& c2, const TermEnv& env) {
  ReductionCert a = as_m(c1, env), b = as_m(c2, env);
  if (a.g.problem != b.g.problem) throw InvalidCertificate("certificates have different targets");
  const Obj& a1 = a.f.problem.src();
  const Obj& a2 = b.f.problem.src();
  const Obj& c = a.g.problem.src();
  const Obj& d = a.g.problem.dst();
  Obj asum = coprod(a1, a2);

  // f1 ⊔ f2 ≤m g ⊔ g
  Term rd = right_distr(a1, a2, d);
  Term h4 = t_chain({t_coprod(a.H, b.H), t_codiag(coprod(prod(a1, d), prod(a2, d))), t_coprod(rd, rd),
                     t_distr(asum, d, d)});
  NamedProblem gg = sup_of(a.g, a.g);
  ReductionCert part4 = make(ReductionKind::m, sup_of(a.f, b.f), gg, h4, t_coprod(a.K, b.K));

  // g ⊔ g ≤m g
  Term h3 = t_chain({t_proj2(c, coprod(d, d)), t_distr(c, d, d, true), right_distr(c, c, d)});
  ReductionCert part3 = make(ReductionKind::m, gg, a.g, h3, t_codiag(c));
  return trans_cert(part4, part3, env);
}

}  // namespace

ReductionCert sup_univ_cert(const std::vector<ReductionCert>& certs, const TermEnv& env) {
  if (certs.empty()) throw Error("empty family");
  for (const auto& c : certs) require_valid(c, env, "family certificate");
  ReductionCert acc = as_m(certs[0], env);
  for (std::size_t i = 1; i < certs.size(); ++i) acc = sup_univ2(acc, certs[i], env);
  return acc;
}

ReductionCert inf_proj_cert(const NamedProblem& f, const NamedProblem& g, int side) {
  const Obj& af = f.problem.src();
  const Obj& ag = g.problem.src();
  const Obj& bf = f.problem.dst();
  const Obj& bg = g.problem.dst();
  NamedProblem both = inf_of(f, g);
  if (side == 1)
    return make(ReductionKind::sm, both, f, t_inj1(bf, bg),
                t_comp(t_proj1(af, ag), t_prod(t_id(af), dom_of(g))));
  if (side == 2)
    return make(ReductionKind::sm, both, g, t_inj2(bf, bg),
                t_comp(t_proj2(af, ag), t_prod(dom_of(f), t_id(ag))));
  throw Error("side must be 1 or 2");
}

ReductionCert inf_univ_cert(const ReductionCert& c1, const ReductionCert& c2, const TermEnv& env) {
  require_valid(c1, env, "first certificate");
  require_valid(c2, env, "second certificate");
  ReductionCert a = as_m(c1, env), b = as_m(c2, env);
  if (a.f.problem != b.f.problem) throw InvalidCertificate("certificates have different sources");
  const NamedProblem& h = a.f;
  const Obj& ah = h.problem.src();
  const Obj& bh = h.problem.dst();
  Term restrict = dom_of(h);
  Term k = t_comp(t_prod(t_comp(a.K, restrict), t_comp(b.K, restrict)), t_diag(ah));
  Term hh = t_chain({t_codiag(bh), t_coprod(a.H, b.H), t_distr(ah, a.g.problem.dst(), b.g.problem.dst())});
  return make(ReductionKind::m, h, inf_of(a.g, b.g), hh, k);
}

std::pair<ReductionCert, ReductionCert> distrib_cert(const NamedProblem& f, const NamedProblem& g1,
                                                     const NamedProblem& g2, const TermEnv& env) {
  const Obj& af = f.problem.src();
  const Obj& bf = f.problem.dst();
  const Obj& b1 = g1.problem.dst();
  const Obj& b2 = g2.problem.dst();

  // f ⊕ (g1 ⊔ g2) ≤sm (f ⊕ g1) ⊔ (f ⊕ g2)
  Obj target = coprod(bf, coprod(b1, b2));
  Term back = t_comp(t_codiag(target), t_coprod(t_coprod(t_id(bf), t_inj1(b1, b2)),
                                                t_coprod(t_id(bf), t_inj2(b1, b2))));
  ReductionCert forward = make(ReductionKind::sm, inf_of(f, sup_of(g1, g2)),
                               sup_of(inf_of(f, g1), inf_of(f, g2)), back,
                               t_distr(af, g1.problem.src(), g2.problem.src()));

  // (f ⊕ g1) ⊔ (f ⊕ g2) ≤m f ⊕ (g1 ⊔ g2)
  std::vector<NamedProblem> gs{g1, g2};
  std::vector<ReductionCert> parts;
  for (std::size_t i = 0; i < 2; ++i) {
    ReductionCert to_f = sm_to_m(inf_proj_cert(f, gs[i], 1), env);
    ReductionCert to_g = sm_to_m(inf_proj_cert(f, gs[i], 2), env);
    ReductionCert to_sum = trans_cert(to_g, sm_to_m(sup_inj_cert(gs, i), env), env);
    parts.push_back(inf_univ_cert(to_f, to_sum, env));
  }
  return {forward, sup_univ_cert(parts, env)};
}

ReductionCert prod_cert(const ReductionCert& c1, const ReductionCert& c2, const TermEnv& env) {
  require_valid(c1, env, "first certificate");
  require_valid(c2, env, "second certificate");
  NamedProblem f = prod_of(c1.f, c2.f);
  NamedProblem g = prod_of(c1.g, c2.g);
  Term k = t_prod(c1.K, c2.K);
  if (c1.kind == ReductionKind::sm && c2.kind == ReductionKind::sm)
    return make(ReductionKind::sm, f, g, t_prod(c1.H, c2.H), k);
  ReductionCert a = as_m(c1, env), b = as_m(c2, env);
  const Obj& a1 = a.f.problem.src();
  const Obj& a2 = b.f.problem.src();
  const Obj& d1 = a.g.problem.dst();
  const Obj& d2 = b.g.problem.dst();
  // (A1 × A2) × (D1 × D2) -> (A1 × D1) × (A2 × D2)
  Term interchange = t_chain({t_assoc(a1, d1, prod(a2, d2), true), t_prod(t_id(a1), t_assoc(d1, a2, d2)),
                              t_prod(t_id(a1), t_prod(t_comm(a2, d1), t_id(d2))),
                              t_prod(t_id(a1), t_assoc(a2, d1, d2, true)), t_assoc(a1, a2, prod(d1, d2))});
  return make(ReductionKind::m, f, g, t_comp(t_prod(a.H, b.H), interchange), k);
}

ReductionCert bottom_cert(const NamedProblem& f, const NamedProblem& g) {
  if (!f.problem.empty()) throw InvalidCertificate("problem '" + f.name + "' is not empty");
  return make(ReductionKind::sm, f, g, any_map(g.problem.dst(), f.problem.dst()),
              any_map(f.problem.src(), g.problem.src()));
}

// ---------------------------------------------------------------------------
// Semiring laws

std::vector<LawCerts> semiring_law_certs(const NamedProblem& a, const NamedProblem& b,
                                         const NamedProblem& c, const NamedProblem& empty,
                                         const NamedProblem& unit, const TermEnv& env) {
  if (!empty.problem.empty()) throw Error("'" + empty.name + "' is not empty");
  if (unit.problem.src()->size != 1 || unit.problem != identity(unit.problem.src()))
    throw Error("'" + unit.name + "' is not the identity on a single point");
  auto m = [&](const ReductionCert& x) { return as_m(x, env); };
  const Obj& aa = a.problem.src();
  const Obj& ab = b.problem.src();
  const Obj& ac = c.problem.src();
  const Obj& ba = a.problem.dst();
  const Obj& bb = b.problem.dst();
  const Obj& bc = c.problem.dst();
  const Obj& pt = unit.problem.src();
  Element star = element_at(pt, 0);

  // Coproduct isomorphisms compiled from their index maps.
  auto sum_assoc = [](const Obj& l, const Obj& mid, const Obj& r, bool inverse) {
    Obj from = inverse ? coprod(l, coprod(mid, r)) : coprod(coprod(l, mid), r);
    Obj to = inverse ? coprod(coprod(l, mid), r) : coprod(l, coprod(mid, r));
    std::vector<std::int32_t> fn(from->size);
    for (std::size_t i = 0; i < fn.size(); ++i) fn[i] = static_cast<std::int32_t>(i);
    return compile_structural(from, to, fn);
  };
  auto sum_swap = [](const Obj& l, const Obj& r) {
    Obj from = coprod(l, r);
    std::vector<std::int32_t> fn(from->size);
    for (std::size_t i = 0; i < fn.size(); ++i)
      fn[i] = static_cast<std::int32_t>(i < l->size ? i + r->size : i - l->size);
    return compile_structural(from, coprod(r, l), fn);
  };

  std::vector<LawCerts> out;
  // a ⊔ a ≡ a
  {
    ReductionCert r = m(refl_cert(a));
    out.push_back({"sup idempotent", sup_univ_cert({r, r}, env), m(sup_inj_cert({a, a}, 0))});
  }
  // (a ⊔ b) ⊔ c ≡ a ⊔ (b ⊔ c)
  {
    NamedProblem lhs = sup_of(sup_of(a, b), c), rhs = sup_of(a, sup_of(b, c));
    out.push_back({"sup associative",
                   m(make(ReductionKind::sm, lhs, rhs, sum_assoc(ba, bb, bc, true), sum_assoc(aa, ab, ac, false))),
                   m(make(ReductionKind::sm, rhs, lhs, sum_assoc(ba, bb, bc, false), sum_assoc(aa, ab, ac, true)))});
  }
  // a ⊔ b ≡ b ⊔ a
  {
    NamedProblem lhs = sup_of(a, b), rhs = sup_of(b, a);
    out.push_back({"sup commutative", m(make(ReductionKind::sm, lhs, rhs, sum_swap(bb, ba), sum_swap(aa, ab))),
                   m(make(ReductionKind::sm, rhs, lhs, sum_swap(ba, bb), sum_swap(ab, aa)))});
  }
  // a ⊔ 0 ≡ a
  {
    ReductionCert r = m(refl_cert(a));
    ReductionCert z = m(bottom_cert(empty, a));
    out.push_back({"sup unit", sup_univ_cert({r, z}, env), m(sup_inj_cert({a, empty}, 0))});
  }
  // (a × b) × c ≡ a × (b × c)
  {
    NamedProblem lhs = prod_of(prod_of(a, b), c), rhs = prod_of(a, prod_of(b, c));
    out.push_back({"product associative",
                   m(make(ReductionKind::sm, lhs, rhs, t_assoc(ba, bb, bc, true), t_assoc(aa, ab, ac))),
                   m(make(ReductionKind::sm, rhs, lhs, t_assoc(ba, bb, bc), t_assoc(aa, ab, ac, true)))});
  }
  // a × b ≡ b × a
  {
    NamedProblem lhs = prod_of(a, b), rhs = prod_of(b, a);
    out.push_back({"product commutative", m(make(ReductionKind::sm, lhs, rhs, t_comm(bb, ba), t_comm(aa, ab))),
                   m(make(ReductionKind::sm, rhs, lhs, t_comm(ba, bb), t_comm(ab, aa)))});
  }
  // a × 1 ≡ a
  {
    NamedProblem lhs = prod_of(a, unit);
    Term to_pair_a = t_comp(t_prod(t_id(aa), t_const(aa, pt, star)), t_diag(aa));
    Term to_pair_b = t_comp(t_prod(t_id(ba), t_const(ba, pt, star)), t_diag(ba));
    out.push_back({"product unit", m(make(ReductionKind::sm, lhs, a, to_pair_b, t_proj1(aa, pt))),
                   m(make(ReductionKind::sm, a, lhs, t_proj1(ba, pt), to_pair_a))});
  }
  // a × 0 ≡ 0
  {
    NamedProblem lhs = prod_of(a, empty);
    out.push_back({"product zero", m(bottom_cert(lhs, empty)), m(bottom_cert(empty, lhs))});
  }
  // a × (b ⊔ c) ≡ (a × b) ⊔ (a × c)
  {
    NamedProblem lhs = prod_of(a, sup_of(b, c)), rhs = sup_of(prod_of(a, b), prod_of(a, c));
    out.push_back({"distributive",
                   m(make(ReductionKind::sm, lhs, rhs, t_distr(ba, bb, bc, true), t_distr(aa, ab, ac))),
                   m(make(ReductionKind::sm, rhs, lhs, t_distr(ba, bb, bc), t_distr(aa, ab, ac, true)))});
  }
  return out;
}

}  // namespace manyone
