#include "doctest.h"
#include "fixture.hpp"
#include "manyone/random.hpp"

using namespace manyone;
using fixture::Pairs;

namespace {

bool valid(const ReductionCert& c, const TermEnv& env) { return check_cert(c, env).valid; }

ReductionCert oracle(const NamedProblem& f, const NamedProblem& g, const SubcatTable& t,
                     ReductionKind kind = ReductionKind::m) {
  OracleVerdict v = decide(f, g, t, kind);
  REQUIRE(v.yes);
  return *v.cert;
}

}  // namespace

TEST_CASE("certificate checking") {
  fixture::E0 e;
  CHECK(valid(refl_cert(e.f), e.env));
  ReductionCert c{ReductionKind::m, e.f, e.gprime, t_proj2(e.X, e.Y), t_id(e.X)};
  CHECK(valid(c, e.env));
  CHECK(reduction_composite(c, e.env) == e.gprime.problem);
  ReductionCert back{ReductionKind::m, e.gprime, e.f, t_proj2(e.X, e.Y), t_id(e.X)};
  CertCheck r = check_cert(back, e.env);
  CHECK_FALSE(r.valid);
  CHECK(r.witness.violation->first == 0);
  ReductionCert swapped{ReductionKind::m, e.f, e.gprime, t_id(e.X), t_proj2(e.X, e.Y)};
  CHECK_THROWS_AS(check_cert(swapped, e.env), TypeError);
  ReductionCert strong{ReductionKind::sm, e.f, e.gprime, t_id(e.Y), t_id(e.X)};
  CHECK(valid(strong, e.env));
}

TEST_CASE("oracle verdicts") {
  fixture::E0 e;
  SubcatTable t = e.table();
  for (const auto& g : {e.f, e.g, e.gprime, e.idpt, e.h}) {
    OracleVerdict v = decide(e.empty, g, t, ReductionKind::sm);
    CHECK(v.yes);
    CHECK(valid(*v.cert, e.env));
  }
  OracleVerdict no = decide(e.gprime, e.idpt, t, ReductionKind::m);
  CHECK_FALSE(no.yes);
  CHECK(no.universe_depth == 2);
  OracleVerdict yes = decide(e.f, e.idpt, t, ReductionKind::m);
  REQUIRE(yes.yes);
  CHECK(valid(*yes.cert, e.env));
  CHECK(reduction_composite(*yes.cert, e.env) == constant(e.X, e.Y, 1));
  SubcatTable shallow = saturate(e.env, build_universe({e.X, e.Y, e.Z, e.PT}, 0));
  CHECK_THROWS_AS(decide(e.f, e.gprime, shallow, ReductionKind::m), OutsideUniverse);
  CHECK_THROWS_AS(decide(e.f, e.gprime, saturate(e.env, build_universe({e.X}, 2)), ReductionKind::m),
                  OutsideUniverse);
}

TEST_CASE("reflexivity and strong to plain") {
  fixture::E0 e;
  for (const auto& p : {e.empty, e.f, e.g, e.gprime, e.idpt, e.h}) {
    CHECK(valid(refl_cert(p), e.env));
    ReductionCert m = sm_to_m(refl_cert(p), e.env);
    CHECK(m.kind == ReductionKind::m);
    CHECK(valid(m, e.env));
  }
  ReductionCert bad{ReductionKind::sm, e.gprime, e.f, t_id(e.Y), t_id(e.X)};
  REQUIRE_FALSE(valid(bad, e.env));
  CHECK_THROWS_AS(sm_to_m(bad, e.env), InvalidCertificate);
  CHECK_THROWS_AS(sm_to_m(sm_to_m(refl_cert(e.f), e.env), e.env), Error);
}

TEST_CASE("transitivity") {
  fixture::E0 e;
  SubcatTable t = e.table();
  ReductionCert rr = trans_cert(sm_to_m(refl_cert(e.f), e.env), sm_to_m(refl_cert(e.f), e.env), e.env);
  CHECK(valid(rr, e.env));
  CHECK(reduction_composite(rr, e.env) == reduction_composite(sm_to_m(refl_cert(e.f), e.env), e.env));
  ReductionCert fg = oracle(e.f, e.gprime, t), gg = sm_to_m(refl_cert(e.gprime), e.env);
  CHECK(valid(trans_cert(fg, gg, e.env), e.env));
  ReductionCert gf = oracle(e.g, e.f, t);
  CHECK(valid(trans_cert(gf, fg, e.env), e.env));
  CHECK_THROWS_AS(trans_cert(fg, gf, e.env), Error);
  ReductionCert bad{ReductionKind::m, e.gprime, e.f, t_proj2(e.X, e.Y), t_id(e.X)};
  CHECK_THROWS_AS(trans_cert(bad, fg, e.env), InvalidCertificate);
}

TEST_CASE("suprema") {
  fixture::E0 e;
  SubcatTable t = e.table(3);
  CHECK(sup_of(e.f, e.g).name == "(f ⊔ g)");
  CHECK(sup_of(e.f, e.g).problem == coproduct_m(e.f.problem, e.g.problem));
  CHECK(valid(sup_inj_cert({e.f, e.g}, 0), e.env));
  CHECK(valid(sup_inj_cert({e.f, e.g}, 1), e.env));
  CHECK(valid(sup_inj_cert({e.f, e.h, e.idpt}, 1), e.env));
  ReductionCert gg = sm_to_m(refl_cert(e.g), e.env);
  ReductionCert twice = sup_univ_cert({gg, gg}, e.env);
  CHECK(twice.f.name == "(g ⊔ g)");
  CHECK(valid(twice, e.env));
  ReductionCert joined = sup_univ_cert({oracle(e.f, e.gprime, t), oracle(e.g, e.gprime, t)}, e.env);
  CHECK(valid(joined, e.env));
  CHECK(decide(sup_of(e.f, e.g), e.gprime, t, ReductionKind::m).yes);
}

TEST_CASE("infima") {
  fixture::E0 e;
  SubcatTable t = e.table(3);
  CHECK(inf_of(e.f, e.g).problem == oplus(e.f.problem, e.g.problem));
  ReductionCert left = inf_proj_cert(e.f, e.g, 1), right = inf_proj_cert(e.f, e.g, 2);
  CHECK(left.kind == ReductionKind::sm);
  CHECK(valid(left, e.env));
  CHECK(valid(right, e.env));
  CHECK(valid(inf_proj_cert(e.h, e.idpt, 2), e.env));
  CHECK_THROWS_AS(inf_proj_cert(e.f, e.g, 3), Error);
  ReductionCert c = inf_univ_cert(oracle(e.g, e.f, t), oracle(e.g, e.h, t), e.env);
  CHECK(c.g.name == "(f ⊕ h)");
  CHECK(valid(c, e.env));
  CHECK_THROWS_AS(inf_univ_cert(oracle(e.g, e.f, t), oracle(e.f, e.gprime, t), e.env), Error);
}

TEST_CASE("distributivity") {
  fixture::E0 e;
  auto [forward, backward] = distrib_cert(e.f, e.g, e.gprime, e.env);
  CHECK(forward.kind == ReductionKind::sm);
  CHECK(valid(forward, e.env));
  CHECK(valid(backward, e.env));
  auto [same_fwd, same_bwd] = distrib_cert(e.f, e.g, e.g, e.env);
  CHECK(valid(same_fwd, e.env));
  CHECK(valid(same_bwd, e.env));
  CHECK(same_fwd.g.problem == sup_of(inf_of(e.f, e.g), inf_of(e.f, e.g)).problem);

  Sampler s(23);
  TermEnv env;
  Obj A = env.atoms.declare("A", {"a0", "a1"}), B = env.atoms.declare("B", {"b0", "b1"});
  SubcatTable t = saturate(env, build_universe({A, B}, 3));
  for (int i = 0; i < 5; ++i) {
    NamedProblem f{"p", s.relation(A, B)}, g1{"q", s.relation(A, B)}, g2{"r", s.relation(B, A)};
    auto [fw, bw] = distrib_cert(f, g1, g2, env);
    CHECK(decide(fw.f, fw.g, t, ReductionKind::sm).yes);
    CHECK(decide(bw.f, bw.g, t, ReductionKind::m).yes);
  }
}

TEST_CASE("products") {
  fixture::E0 e;
  SubcatTable t = e.table(3);
  ReductionCert rf = sm_to_m(refl_cert(e.f), e.env), rg = sm_to_m(refl_cert(e.g), e.env);
  CHECK(valid(prod_cert(rf, rg, e.env), e.env));
  ReductionCert c = prod_cert(oracle(e.f, e.gprime, t), oracle(e.g, e.gprime, t), e.env);
  CHECK(c.f.name == "(f × g)");
  CHECK(c.g.name == "(gprime × gprime)");
  CHECK(valid(c, e.env));
  CHECK(decide(prod_of(e.f, e.g), prod_of(e.gprime, e.gprime), t, ReductionKind::m).yes);
}

TEST_CASE("truncated star as a closure operator") {
  fixture::E0 e;
  SubcatTable t = e.table();
  ReductionCert intro = star_intro_cert(e.f, 3, e.env);
  CHECK(intro.g.name == "f*3");
  CHECK(intro.g.problem == star_trunc(e.f.problem, 3));
  CHECK(valid(intro, e.env));
  ReductionCert mono = star_mono_cert(oracle(e.f, e.gprime, t), 2, e.env);
  CHECK(mono.f.problem == star_trunc(e.f.problem, 2));
  CHECK(mono.g.problem == star_trunc(e.gprime.problem, 2));
  CHECK(valid(mono, e.env));
  ReductionCert collapse = star_collapse_cert(e.f, 2, 2);
  CHECK(collapse.g.problem == star_trunc(e.f.problem, 4));
  CHECK(collapse.f.problem == star_trunc(star_trunc(e.f.problem, 2), 2));
  CHECK(valid(collapse, e.env));
  CHECK_THROWS_AS(star_intro_cert(e.f, 0, e.env), Error);
}

TEST_CASE("weak truth-table reducibility") {
  fixture::E0 e;
  SubcatTable t = e.table(4);
  for (int n : {1, 2, 3}) CHECK(wtt_leq(e.f, e.f, t, n).yes);
  OracleVerdict ff = wtt_leq(prod_of(e.f, e.f), e.f, t, 2);
  REQUIRE(ff.yes);
  CHECK(valid(*ff.cert, e.env));
  CHECK_FALSE(decide(prod_of(e.gprime, e.gprime), e.gprime, t, ReductionKind::m).yes);
  CHECK(wtt_leq(prod_of(e.gprime, e.gprime), e.gprime, t, 2).yes);
  CHECK_THROWS_AS(wtt_leq(e.f, e.gprime, e.table(2), 3), OutsideUniverse);
}

TEST_CASE("the empty problem is below everything") {
  fixture::E0 e;
  for (const auto& g : {e.f, e.g, e.gprime, e.idpt, e.h}) CHECK(valid(bottom_cert(e.empty, g), e.env));
  CHECK_THROWS_AS(bottom_cert(e.f, e.g), Error);
}

TEST_CASE("semiring laws") {
  fixture::E0 e;
  std::vector<LawCerts> laws = semiring_law_certs(e.f, e.g, e.h, e.empty, e.idpt, e.env);
  CHECK(laws.size() == 9);
  for (const auto& l : laws) {
    CHECK_MESSAGE(valid(l.forward, e.env), l.law);
    CHECK_MESSAGE(valid(l.backward, e.env), l.law);
    CHECK(l.forward.f.name == l.backward.g.name);
    CHECK(l.forward.g.name == l.backward.f.name);
  }
}

TEST_CASE("choice-function dichotomy") {
  TermEnv env;
  Obj X = env.atoms.declare("X", {"a"}), Y = env.atoms.declare("Y", {"0", "1"});
  SearchProblem f(X, Y, Pairs{{0, 0}}), g(X, Y, Pairs{{0, 1}});
  Obj tagged = coprod(Y, Y);
  std::size_t pick_g1 = require_index(tagged, parse_element("2:1"));
  SearchProblem choice(prod(X, X), tagged, Pairs{{0, pick_g1}});
  PsiPhi r = psi_phi(choice, f, g);
  CHECK(r.phi_chooses);
  CHECK_FALSE(r.psi_chooses);
  CHECK(r.phi == g);
  CHECK(r.psi.empty());
  SearchProblem wrong(prod(X, X), tagged, Pairs{{0, require_index(tagged, parse_element("2:0"))}});
  CHECK_THROWS_AS(psi_phi(wrong, f, g), PreconditionError);

  fixture::E0 e;
  SearchProblem both = oplus(e.f.problem, e.gprime.problem);
  int count = 0;
  for_each_choice_function(both, [&](const SearchProblem& c) {
    ++count;
    CHECK(is_choice_function(c, both));
    CHECK(psi_phi(c, e.f.problem, e.gprime.problem).dichotomy());
  });
  CHECK(count == 3 * 3 * 2 * 2);
}

TEST_CASE("reducing to the one-point problem means having a choice function") {
  fixture::E0 e;
  SubcatTable t = e.table();
  for (const auto& p : {e.f, e.g, e.gprime, e.empty})
    CHECK(decide(p, e.idpt, t, ReductionKind::m).yes == t.choice_function(p.problem).has_value());
}
