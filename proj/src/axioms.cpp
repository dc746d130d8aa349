#include "manyone/axioms.hpp"

#include <functional>
#include <map>
#include <sstream>

#include "manyone/finrel.hpp"
#include "manyone/random.hpp"

namespace manyone {

std::size_t AxiomReport::violations() const {
  std::size_t n = 0;
  for (const auto& law : laws) n += law.checked - law.passed;
  return n;
}

std::string AxiomReport::format() const {
  std::ostringstream out;
  out << "p-category axiom suite: seed " << seed << ", " << cases << " cases, max atom size "
      << max_atom_size << "\n";
  for (const auto& law : laws) {
    out << (law.passed == law.checked ? "PASS " : "FAIL ") << law.name << " " << law.passed << "/"
        << law.checked << "\n";
    if (law.counterexample) out << "  counterexample: " << *law.counterexample << "\n";
  }
  out << "violations: " << violations() << "\n";
  return out.str();
}

namespace {

class Recorder {
 public:
  explicit Recorder(AxiomReport& report) : report_(report) {}

  void equal(const std::string& law, const SearchProblem& lhs, const SearchProblem& rhs) {
    bool ok = lhs == rhs;
    record(law, ok, [&] { return format_problem(lhs) + " != " + format_problem(rhs); });
  }

  void holds(const std::string& law, const HomOrderWitness& w) {
    record(law, w.holds(), [&] {
      return format_problem(w.lhs) + " vs " + format_problem(w.rhs) + ": " + w.describe();
    });
  }

  void record(const std::string& law, bool ok, const std::function<std::string()>& why) {
    auto it = index_.find(law);
    if (it == index_.end()) {
      it = index_.emplace(law, report_.laws.size()).first;
      report_.laws.push_back(LawResult{law, 0, 0, std::nullopt});
    }
    LawResult& r = report_.laws[it->second];
    ++r.checked;
    if (ok)
      ++r.passed;
    else if (!r.counterexample)
      r.counterexample = why();
  }

 private:
  AxiomReport& report_;
  std::map<std::string, std::size_t> index_;
};

// (A1 + A2) * D -> (A1 * D) + (A2 * D)
SearchProblem right_distrib(const Obj& a1, const Obj& a2, const Obj& d) {
  SearchProblem swap_in = comm(coprod(a1, a2), d);
  SearchProblem spread = distrib(d, a1, a2);
  SearchProblem swap_out = coproduct_m(comm(d, a1), comm(d, a2));
  return compose(swap_out, compose(spread, swap_in));
}

// f ⪯ g with f a weakening of g: smaller domain, more solutions.
SearchProblem weaken(Sampler& s, const SearchProblem& g) {
  std::vector<std::vector<Index>> rows(g.src()->size);
  for (std::size_t x = 0; x < rows.size(); ++x) {
    if (!g.defined_at(x) || s.coin(0.2)) continue;
    rows[x].assign(g.image(x).begin(), g.image(x).end());
    for (std::size_t y = 0; y < g.dst()->size; ++y)
      if (s.coin(0.3)) rows[x].push_back(static_cast<Index>(y));
  }
  return SearchProblem(g.src(), g.dst(), std::move(rows));
}

void run_case(Sampler& s, Recorder& rec, std::size_t max_atom_size) {
  std::vector<Obj> atoms;
  for (const char* name : {"X", "Y", "Z", "W"})
    atoms.push_back(s.atom(name, max_atom_size, s.coin(0.1)));
  std::size_t cap = max_atom_size * max_atom_size;
  Obj X = s.object(atoms, 1, cap);
  Obj Y = s.object(atoms, 1, cap);
  Obj Z = s.object(atoms, 1, cap);
  Obj W = s.object(atoms, 1, cap);

  // The six defining equations.
  rec.equal("pi1 . delta = id", compose(proj1(X, X), diag(X)), identity(X));
  rec.equal("pi2 . delta = id", compose(proj2(X, X), diag(X)), identity(X));
  rec.equal("(pi1 * pi2) . delta = id",
            compose(product_m(proj1(X, Y), proj2(X, Y)), diag(prod(X, Y))), identity(prod(X, Y)));
  rec.equal("pi1 . (id * pi1) = pi1", compose(proj1(X, Y), product_m(identity(X), proj1(Y, Z))),
            proj1(X, prod(Y, Z)));
  rec.equal("pi1 . (id * pi2) = pi1", compose(proj1(X, Z), product_m(identity(X), proj2(Y, Z))),
            proj1(X, prod(Y, Z)));
  rec.equal("pi2 . (pi1 * id) = pi2", compose(proj2(X, Z), product_m(proj1(X, Y), identity(Z))),
            proj2(prod(X, Y), Z));
  rec.equal("pi2 . (pi2 * id) = pi2", compose(proj2(Y, Z), product_m(proj2(X, Y), identity(Z))),
            proj2(prod(X, Y), Z));

  SearchProblem f = s.relation(X, Y);
  SearchProblem g = s.relation(X, Z);
  SearchProblem k = s.relation(Z, W);
  SearchProblem fn = s.function(X, Y);

  // Naturality. The diagonal is natural only along single-valued maps.
  rec.equal("delta natural (single-valued)", compose(diag(Y), fn),
            compose(product_m(fn, fn), diag(X)));
  rec.equal("pi1 natural", compose(f, proj1(X, Z)),
            compose(proj1(Y, Z), product_m(f, identity(Z))));
  rec.equal("pi2 natural", compose(f, proj2(Z, X)),
            compose(proj2(Z, Y), product_m(identity(Z), f)));
  rec.equal("assoc natural", compose(assoc(Y, W, W), product_m(product_m(f, k), k)),
            compose(product_m(f, product_m(k, k)), assoc(X, Z, Z)));
  rec.equal("comm natural", compose(comm(Y, W), product_m(f, k)),
            compose(product_m(k, f), comm(X, Z)));

  // Projections against the diagonal.
  rec.equal("pi2 . (f * g) . delta = g . dom f",
            compose(proj2(Y, Z), compose(product_m(f, g), diag(X))), compose(g, dom_m(f)));
  rec.equal("pi1 . (f * g) . delta = f . dom g",
            compose(proj1(Y, Z), compose(product_m(f, g), diag(X))), compose(f, dom_m(g)));
  rec.equal("pi1 . (f * k) = f . pi1 . (id * dom k)", compose(proj1(Y, W), product_m(f, k)),
            compose(f, compose(proj1(X, Z), product_m(identity(X), dom_m(k)))));

  // Coproduct facts.
  rec.equal("dom(nabla) = id", dom_m(codiag(X)), identity(coprod(X, X)));
  rec.equal("dom(in1) = id", dom_m(inj1(X, Y)), identity(X));
  rec.equal("dom(in2) = id", dom_m(inj2(X, Y)), identity(Y));
  rec.equal("nabla . in1 = id", compose(codiag(X), inj1(X, X)), identity(X));
  {
    SearchProblem f1 = s.relation(X, Y), f2 = s.relation(W, Z);
    SearchProblem g1 = s.relation(X, Y), g2 = s.relation(W, Y);
    const Obj& Y1 = Y;
    const Obj& Y2 = Z;
    const Obj& C = Y;
    Obj spread = coprod(prod(Y1, C), prod(Y2, C));
    SearchProblem r = right_distrib(Y1, Y2, C);
    SearchProblem a = compose(coproduct_m(r, r), distrib(coprod(Y1, Y2), C, C));
    SearchProblem lhs = compose(
        codiag(spread),
        compose(a, compose(product_m(coproduct_m(f1, f2), coproduct_m(g1, g2)),
                           diag(coprod(X, W)))));
    SearchProblem rhs = coproduct_m(compose(product_m(f1, g1), diag(X)),
                                    compose(product_m(f2, g2), diag(W)));
    rec.equal("coproduct/diagonal identity", lhs, rhs);
  }

  // Category and functor laws.
  SearchProblem h = s.relation(Y, Z);
  rec.equal("composition associative", compose(k, compose(h, f)), compose(compose(k, h), f));
  rec.equal("identity laws", compose(identity(Y), compose(f, identity(X))), f);
  {
    SearchProblem f2 = s.relation(Z, W), g2 = s.relation(W, X);
    rec.equal("product functorial", product_m(compose(h, f), compose(g2, f2)),
              compose(product_m(h, g2), product_m(f, f2)));
    rec.equal("coproduct functorial", coproduct_m(compose(h, f), compose(g2, f2)),
              compose(coproduct_m(h, g2), coproduct_m(f, f2)));
  }

  // Derived operations.
  rec.equal("dom direct = composite", dom_m(f), dom_via_composite(f));
  rec.equal("oplus direct = composite", oplus(f, k), oplus_composite(f, k));

  // Order: compatibility, domains, infima, splitting.
  SearchProblem upper = s.relation(Y, Z, 0.35);
  SearchProblem lower = weaken(s, upper);
  rec.holds("weakening entails", entails(lower, upper));
  SearchProblem right_fn = s.function(X, Y);
  rec.holds("compatible: right composition by a function",
            entails(compose(lower, right_fn), compose(upper, right_fn)));
  SearchProblem left_total = s.total_relation(Z, W);
  rec.holds("compatible: left composition by a total relation",
            entails(compose(left_total, lower), compose(left_total, upper)));
  rec.holds("compatible: product", entails(product_m(lower, k), product_m(upper, k)));
  rec.holds("compatible: product (left factor)", entails(product_m(k, lower), product_m(k, upper)));
  rec.holds("compatible: coproduct", entails(coproduct_m(lower, k), coproduct_m(upper, k)));
  rec.holds("entails implies dom entails", entails(dom_m(lower), dom_m(upper)));

  SearchProblem p = s.relation(Y, Z), q = s.relation(Y, Z);
  SearchProblem inf = hom_inf(p, q);
  rec.holds("inf below left", entails(inf, p));
  rec.holds("inf below right", entails(inf, q));
  SearchProblem below = hom_inf(weaken(s, p), weaken(s, q));
  rec.holds("inf greatest", entails(below, inf));

  {
    SearchProblem dh = s.domain(X, 0.8);
    std::vector<std::vector<Index>> mid(X->size), low(X->size);
    for (std::size_t x = 0; x < X->size; ++x) {
      if (!dh.defined_at(x) || !s.coin(0.7)) continue;
      mid[x].push_back(static_cast<Index>(x));
      if (s.coin(0.6)) low[x].push_back(static_cast<Index>(x));
    }
    SearchProblem dg(X, X, std::move(mid)), df(X, X, std::move(low));
    bool premise = dom_subset(df, dg).holds() && dom_subset(dg, dh).holds() && entails(dh, df).holds();
    rec.record("splitting", !premise || entails(dh, dg).holds(),
               [&] { return format_problem(dh) + " against " + format_problem(dg); });
  }
}

}  // namespace

AxiomReport verify_pcategory_axioms(std::uint64_t seed, std::size_t cases,
                                    std::size_t max_atom_size) {
  if (cases == 0) throw Error("axiom suite needs at least one case");
  if (max_atom_size == 0) throw Error("max atom size must be positive");
  AxiomReport report;
  report.seed = seed;
  report.cases = cases;
  report.max_atom_size = max_atom_size;
  Sampler sampler(seed);
  Recorder rec(report);
  for (std::size_t i = 0; i < cases; ++i) run_case(sampler, rec, max_atom_size);
  return report;
}

}  // namespace manyone
