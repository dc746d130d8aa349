#include "doctest.h"
#include "fixture.hpp"
#include "manyone/random.hpp"

using namespace manyone;
using fixture::Pairs;

namespace {

struct Env : fixture::E0 {
  Env() {
    env.generators["gh"] = SearchProblem(Y, Z, Pairs{{0, 0}, {1, 1}});
    env.generators["ga"] = SearchProblem(X, X, Pairs{{0, 0}});
  }
  Term parse(const std::string& s) const { return parse_term(s, env); }
};

// A random well-typed term a -> b built from identities, constants,
// projections, pairings and composites.
Term random_term(Sampler& s, const Obj& a, const Obj& b, const std::vector<Obj>& objs, int depth) {
  if (depth == 0) return same(a, b) ? t_id(a) : t_const(a, b, element_at(b, s.below(b->size)));
  switch (s.below(4)) {
    case 0: {
      Obj mid = objs[s.below(objs.size())];
      return t_comp(random_term(s, mid, b, objs, depth - 1), random_term(s, a, mid, objs, depth - 1));
    }
    case 1:
      if (b->kind == ObjKind::prod)
        return t_comp(t_prod(random_term(s, a, b->left, objs, depth - 1), random_term(s, a, b->right, objs, depth - 1)),
                      t_diag(a));
      break;
    case 2:
      if (a->kind == ObjKind::prod)
        return t_comp(random_term(s, a->right, b, objs, depth - 1), t_proj2(a->left, a->right));
      break;
    default:
      return t_comp(t_id(b), t_comp(random_term(s, a, b, objs, depth - 1), t_id(a)));
  }
  return random_term(s, a, b, objs, 0);
}

}  // namespace

TEST_CASE("parsing") {
  Env e;
  Term t = e.parse("pi2[X,Y]");
  CHECK(t->kind == TermKind::proj2);
  CHECK(print_term(t) == "pi2[X,Y]");
  Term p = e.parse("((gen:gh . pi2[X,Y]) * id[Z])");
  REQUIRE(p->kind == TermKind::prod);
  CHECK(p->left->kind == TermKind::comp);
  CHECK(p->left->left->kind == TermKind::gen);
  CHECK(p->left->right->kind == TermKind::proj2);
  CHECK(p->right->kind == TermKind::id);
  CHECK(same_term(e.parse(" ( gen:gh .pi2[ X , Y ] ) "), e.parse("(gen:gh . pi2[X,Y])")));
  CHECK_THROWS_AS(e.parse("delta[X . Y]"), ParseError);
  CHECK_THROWS_AS(e.parse("gen:nope"), Error);
  CHECK_THROWS_AS(e.parse("id[Q]"), Error);
  CHECK_THROWS_AS(e.parse("(id[X] . "), ParseError);
}

TEST_CASE("printing round-trips") {
  Env e;
  for (const char* s : {"delta[(X * Y)]", "const[X -> (Y + Z) : 2:p]", "assoc[X,Y,Z;inv]", "distr[X,Y,Z]",
                        "comm[X,PT]", "nabla[(X + Y)]", "dom(gen:ga)", "((in1[X,Y] . pi1[X,Z]) + in2[X,Y])",
                        "const[X -> (X * Y) : <a,1>]"}) {
    Term t = e.parse(s);
    CHECK(print_term(t) == s);
    CHECK(same_term(e.parse(print_term(t)), t));
  }
}

TEST_CASE("typing") {
  Env e;
  TermType d = type_of(t_diag(e.X), e.env);
  CHECK(same(d.src, e.X));
  CHECK(same(d.dst, prod(e.X, e.X)));
  TermType c = type_of(t_comp(t_proj1(e.X, e.X), t_diag(e.X)), e.env);
  CHECK(same(c.src, e.X));
  CHECK(same(c.dst, e.X));
  CHECK_THROWS_AS(type_of(t_comp(t_diag(e.X), t_proj1(e.Y, e.Z)), e.env), TypeError);
  CHECK_THROWS_AS(type_of(t_comp(t_gen("gh"), t_gen("ga")), e.env), TypeError);
}

TEST_CASE("evaluation") {
  Env e;
  CHECK(eval_term(t_comp(t_proj1(e.X, e.X), t_diag(e.X)), e.env) == identity(e.X));
  CHECK(eval_term(t_dom(t_gen("ga")), e.env) == SearchProblem(e.X, e.X, Pairs{{0, 0}}));
  CHECK(eval_term(t_const(e.X, e.Y, Element::atom("0")), e.env) == SearchProblem(e.X, e.Y, Pairs{{0, 0}, {1, 0}}));
  CHECK(eval_term(e.parse("(gen:gh . pi2[X,Y])"), e.env) == compose(e.env.generators.at("gh"), proj2(e.X, e.Y)));
  CHECK_THROWS_AS(eval_term(t_gen("missing"), e.env), Error);
}

TEST_CASE("structural terms agree with the direct morphisms") {
  Env e;
  Obj X = e.X, Y = e.Y, Z = e.Z;
  CHECK(eval_term(t_diag(X), e.env) == diag(X));
  CHECK(eval_term(t_proj1(X, Y), e.env) == proj1(X, Y));
  CHECK(eval_term(t_proj2(X, Y), e.env) == proj2(X, Y));
  CHECK(eval_term(t_inj1(X, Y), e.env) == inj1(X, Y));
  CHECK(eval_term(t_inj2(X, Y), e.env) == inj2(X, Y));
  CHECK(eval_term(t_codiag(Y), e.env) == codiag(Y));
  CHECK(eval_term(t_assoc(X, Y, Z), e.env) == assoc(X, Y, Z));
  CHECK(eval_term(t_assoc(X, Y, Z, true), e.env) == assoc(X, Y, Z, true));
  CHECK(eval_term(t_comm(X, Y), e.env) == comm(X, Y));
  CHECK(eval_term(t_distr(X, Y, Z), e.env) == distrib(X, Y, Z));
  CHECK(eval_term(t_distr(X, Y, Z, true), e.env) == distrib(X, Y, Z, true));
  CHECK(eval_term(t_prod(t_gen("gh"), t_id(X)), e.env) == product_m(e.env.generators.at("gh"), identity(X)));
  CHECK(eval_term(t_coprod(t_gen("gh"), t_id(X)), e.env) == coproduct_m(e.env.generators.at("gh"), identity(X)));
}

TEST_CASE("canonicalization") {
  Env e;
  Term t = e.parse("gen:gh");
  CHECK(same_term(canonicalize(t_comp(t_id(e.Z), t)), t));
  CHECK(same_term(canonicalize(t_comp(t, t_id(e.Y))), t));
  Term a = t_proj2(e.X, e.Y), b = t_proj1(prod(e.X, e.Y), e.X), c = t_diag(prod(e.X, e.Y));
  Term left = t_comp(t_comp(t_gen("gh"), a), t_comp(b, c));
  Term right = t_comp(t_gen("gh"), t_comp(a, t_comp(b, c)));
  CHECK(same_term(canonicalize(left), right));

  Sampler s(17);
  std::vector<Obj> objs{e.X, e.Y, e.PT, prod(e.X, e.Y), coprod(e.Y, e.PT)};
  for (int i = 0; i < 500; ++i) {
    Obj a = objs[s.below(objs.size())], b = objs[s.below(objs.size())];
    Term r = random_term(s, a, b, objs, 3);
    Term once = canonicalize(r);
    CHECK(same_term(canonicalize(once), once));
    CHECK(eval_term(once, e.env) == eval_term(r, e.env));
  }
}

TEST_CASE("term bookkeeping") {
  Env e;
  Term t = e.parse("((gen:gh . pi2[X,Y]) * dom(gen:ga))");
  CHECK(generators_used(t) == std::set<std::string>{"ga", "gh"});
  CHECK(term_size(t) == 6);
  CHECK(is_subcat_term(t));
  CHECK_FALSE(is_subcat_term(t_prob("f", e.f.problem)));
  CHECK(is_subcat_term(t_dom(t_prob("f", e.f.problem))));
}
