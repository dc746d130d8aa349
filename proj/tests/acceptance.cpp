// Acceptance run: one PASS/FAIL line per criterion. Exit status 1 if any fails.

#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>

#include "fixture.hpp"
#include "manyone/axioms.hpp"
#include "manyone/cli.hpp"
#include "manyone/degrees.hpp"
#include "manyone/param.hpp"
#include "manyone/random.hpp"
#include "manyone/workspace.hpp"

using namespace manyone;
using fixture::Pairs;

namespace {

const std::string fixtures = FIXTURE_DIR;
const std::string golden = GOLDEN_DIR;

struct Outcome {
  bool passed = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && passed) {
      passed = false;
      detail = what;
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool valid(const ReductionCert& c, const TermEnv& env) { return check_cert(c, env).valid; }

std::string str(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x;
  return os.str();
}

// Random problems over the running example's atoms, registered in `env`.
std::vector<NamedProblem> random_problems(Sampler& s, fixture::E0& e, std::size_t n, const std::string& prefix) {
  std::vector<std::pair<Obj, Obj>> types{{e.X, e.Y}, {e.Y, e.X}, {e.X, e.X}, {e.PT, e.Y}, {e.Y, e.PT}};
  std::vector<NamedProblem> out;
  for (std::size_t i = 0; i < n; ++i) {
    auto [a, b] = types[s.below(types.size())];
    out.push_back(e.add(prefix + std::to_string(i), s.relation(a, b, 0.45)));
  }
  return out;
}

Outcome axioms() {
  auto t0 = std::chrono::steady_clock::now();
  AxiomReport r = verify_pcategory_axioms(7, 200, 3);
  double secs = seconds_since(t0);
  Outcome o;
  o.require(r.violations() == 0, std::to_string(r.violations()) + " violations");
  o.require(secs < 30, "took " + str(secs) + " s");
  if (o.passed) o.detail = std::to_string(r.laws.size()) + " laws, 200 cases, " + str(secs) + " s";
  return o;
}

Outcome preorder_and_bottom() {
  fixture::E0 e;
  PreorderMatrix m = preorder_matrix(e.family(), e.table(), OrderSpec{});
  Outcome o;
  o.require(m.complete(), "matrix has undecided cells");
  o.require(m.to_tsv() == read_file(golden + "/fixture_order_m.tsv"), "matrix differs from the golden file");
  try {
    require_preorder(m);
  } catch (const Error& err) {
    o.require(false, err.what());
  }
  for (std::size_t j = 0; j < m.names.size(); ++j) o.require(m.cells[0][j].yes, "empty row is not all-true");
  for (const auto& row : m.cells)
    for (const auto& c : row)
      if (c.yes) o.require(valid(*c.cert, e.env), "a matrix certificate does not validate");
  if (o.passed) o.detail = "5x5 matrix matches golden, reflexive, transitive, empty row all-true";
  return o;
}

Outcome lattice() {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  fixture::E0 e;
  std::vector<NamedProblem> ext = extend_family(e.family());
  LatticeReport r = verify_lattice(ext, ext, e.table(3));
  o.require(r.complete(), "fixture lattice checks left the universe");
  o.require(r.passed(), "fixture lattice checks failed");
  std::size_t checks = r.findings.size();

  Sampler s(101);
  TermEnv env;
  Obj A = env.atoms.declare("A", {"a0", "a1"}), B = env.atoms.declare("B", {"b0", "b1"});
  SubcatTable t = saturate(env, build_universe({A, B}, 3));
  const int families = 50;
  for (int i = 0; i < families; ++i) {
    std::vector<NamedProblem> fam;
    std::size_t size = 2 + s.below(2);
    for (std::size_t k = 0; k < size; ++k) {
      Obj src = s.coin() ? A : B, dst = s.coin() ? A : B;
      fam.push_back({"r" + std::to_string(i) + "_" + std::to_string(k), s.relation(src, dst, 0.45)});
    }
    LatticeReport rr = verify_lattice(fam, extend_family(fam), t);
    o.require(rr.complete(), "random family " + std::to_string(i) + " left the universe");
    o.require(rr.passed(), "random family " + std::to_string(i) + " failed");
    checks += rr.findings.size();
  }
  double secs = seconds_since(t0);
  o.require(secs < 120, "took " + str(secs) + " s");
  if (o.passed)
    o.detail = std::to_string(ext.size()) + "-member closure plus " + std::to_string(families) +
               " random families, " + std::to_string(checks) + " checks, " + str(secs) + " s";
  return o;
}

Outcome combinator_corpus() {
  fixture::E0 e;
  Sampler s(4242);
  std::vector<NamedProblem> ps = random_problems(s, e, 100, "q");
  SubcatTable t = e.table(3);
  Outcome o;
  std::size_t emitted = 0, failures = 0;
  auto expect = [&](const ReductionCert& c) {
    ++emitted;
    if (!valid(c, e.env)) ++failures;
  };
  std::size_t n = ps.size();
  std::vector<std::vector<std::optional<ReductionCert>>> m(n, std::vector<std::optional<ReductionCert>>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      OracleVerdict v = decide(ps[i], ps[j], t, ReductionKind::m);
      if (v.yes) {
        expect(*v.cert);
        m[i][j] = v.cert;
      }
    }
  for (const auto& p : ps) {
    expect(refl_cert(p));
    expect(sm_to_m(refl_cert(p), e.env));
    expect(star_intro_cert(p, 2, e.env));
  }
  std::size_t sm_pairs = 0;
  for (std::size_t i = 0; i < n && sm_pairs < 200; ++i)
    for (std::size_t j = 0; j < n && sm_pairs < 200; ++j) {
      OracleVerdict v = decide(ps[i], ps[j], t, ReductionKind::sm);
      if (v.yes && i != j) {
        ++sm_pairs;
        expect(sm_to_m(*v.cert, e.env));
      }
    }
  std::size_t chains = 0, sups = 0, infs = 0, prods = 0, stars = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!m[i][j] || i == j) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (!m[j][k] || j == k) continue;
        if (chains < 100) {
          expect(trans_cert(*m[i][j], *m[j][k], e.env));
          ++chains;
        }
        if (sups < 100 && m[i][k] && i != k) {
          expect(sup_univ_cert({*m[i][k], *m[j][k]}, e.env));
          ++sups;
        }
        if (infs < 100 && m[i][k]) {
          expect(inf_univ_cert(*m[i][j], *m[i][k], e.env));
          ++infs;
        }
        if (prods < 100) {
          expect(prod_cert(*m[i][j], *m[j][k], e.env));
          ++prods;
        }
      }
      if (stars < 30 && ps[i].problem.src()->size <= 2 && ps[j].problem.src()->size <= 2) {
        expect(star_mono_cert(*m[i][j], 2, e.env));
        ++stars;
      }
    }
  for (std::size_t i = 0; i + 1 < n && i < 60; i += 2) {
    expect(sup_inj_cert({ps[i], ps[i + 1]}, 0));
    expect(sup_inj_cert({ps[i], ps[i + 1]}, 1));
    expect(inf_proj_cert(ps[i], ps[i + 1], 1));
    expect(inf_proj_cert(ps[i], ps[i + 1], 2));
  }
  o.require(failures == 0, std::to_string(failures) + " of " + std::to_string(emitted) + " certificates invalid");
  o.require(chains == 100, "only " + std::to_string(chains) + " chains found");
  if (o.passed)
    o.detail = std::to_string(emitted) + " certificates, 0 invalid (" + std::to_string(chains) + " chains, " +
               std::to_string(sups) + " joins, " + std::to_string(infs) + " meets, " + std::to_string(prods) +
               " products, " + std::to_string(stars) + " star lifts)";
  return o;
}

Outcome semiring_laws() {
  fixture::E0 e;
  std::vector<LawCerts> laws = semiring_law_certs(e.f, e.g, e.h, e.empty, e.idpt, e.env);
  Outcome o;
  for (const auto& l : laws) {
    o.require(valid(l.forward, e.env), l.law + " forward fails");
    o.require(valid(l.backward, e.env), l.law + " backward fails");
  }
  if (o.passed) o.detail = std::to_string(laws.size()) + " law instances, both directions valid";
  return o;
}

Outcome closure_operator() {
  fixture::E0 e;
  Outcome o;
  for (const auto& p : e.family()) o.require(valid(star_intro_cert(p, 3, e.env), e.env), "star_intro on " + p.name);
  SubcatTable t2 = e.table();
  PreorderMatrix m2 = preorder_matrix(e.family(), t2, OrderSpec{});
  std::size_t lifted = 0;
  for (const auto& row : m2.cells)
    for (const auto& c : row)
      if (c.yes) {
        o.require(valid(star_mono_cert(*c.cert, 3, e.env), e.env), "star_mono on " + c.cert->f.name);
        ++lifted;
      }
  o.require(valid(star_collapse_cert(e.f, 2, 2), e.env), "star_collapse(f,2,2)");
  SubcatTable t4 = e.table(4);
  PreorderMatrix m = preorder_matrix(e.family(), t4, OrderSpec{});
  PreorderMatrix w = preorder_matrix(e.family(), t4, OrderSpec{OrderMode::wtt, 3});
  o.require(m.complete() && w.complete(), "depth-4 matrices have undecided cells");
  std::size_t extra = 0;
  for (std::size_t i = 0; i < m.cells.size(); ++i)
    for (std::size_t j = 0; j < m.cells.size(); ++j) {
      if (m.cells[i][j].yes) o.require(w.cells[i][j].yes, "wtt misses " + m.names[i] + " <= " + m.names[j]);
      if (w.cells[i][j].yes && !m.cells[i][j].yes) ++extra;
      if (w.cells[i][j].yes) o.require(valid(*w.cells[i][j].cert, e.env), "invalid wtt certificate");
    }
  if (o.passed)
    o.detail = "intro on 5, mono on " + std::to_string(lifted) + " reductions, collapse valid, wtt(3) adds " +
               std::to_string(extra) + " pairs to m";
  return o;
}

Outcome dichotomy() {
  Outcome o;
  std::size_t cases = 0;
  auto all_choices = [&](const SearchProblem& f, const SearchProblem& g) {
    SearchProblem both = oplus(f, g);
    for_each_choice_function(both, [&](const SearchProblem& c) {
      ++cases;
      o.require(psi_phi(c, f, g).dichotomy(), "dichotomy fails for " + format_problem(c));
    });
  };
  fixture::E0 e;
  all_choices(e.f.problem, e.gprime.problem);
  std::size_t fixture_cases = cases;
  Sampler s(20);
  for (int i = 0; i < 20; ++i) {
    Obj a = s.atom("A", 3), b = s.atom("B", 3), c = s.atom("C", 3), d = s.atom("D", 3);
    all_choices(s.total_relation(a, b), s.total_relation(c, d));
  }
  if (o.passed)
    o.detail = std::to_string(fixture_cases) + " choice functions on the fixture, " +
               std::to_string(cases - fixture_cases) + " on 20 random pairs, 0 counterexamples";
  return o;
}

Outcome least_nonzero() {
  fixture::E0 e;
  Sampler s(30);
  std::vector<NamedProblem> ps = random_problems(s, e, 30, "c");
  SubcatTable t = e.table();
  Outcome o;
  std::size_t yes = 0;
  for (const auto& p : ps) {
    bool reduces = decide(p, e.idpt, t, ReductionKind::m).yes;
    bool chooses = t.choice_function(p.problem).has_value();
    o.require(reduces == chooses, p.name + ": oracle " + std::to_string(reduces) + ", choice " + std::to_string(chooses));
    if (reduces) ++yes;
  }
  o.require(yes > 0 && yes < ps.size(), "the sample does not exercise both directions");
  if (o.passed) o.detail = "30 problems agree (" + std::to_string(yes) + " reduce, " + std::to_string(30 - yes) + " do not)";
  return o;
}

Outcome parameterized() {
  Outcome o;
  fixture::E0 e;
  Parameterization kx = make_parameterization(e.X, {2, 1}), ky = make_parameterization(e.Y, {5, 3});
  Parameterization kz = make_parameterization(e.Z, {4, 7});
  Parameterization p = kappa_product(kx, ky);
  o.require(p.at(require_index(p.obj, parse_element("<a,0>"))) == 5, "product is not the max");
  Parameterization s = kappa_coproduct(kx, ky);
  o.require(s.at(require_index(s.obj, parse_element("2:0"))) == 5, "coproduct is not the case split");
  o.require(kappa_product(kappa_bottom(e.X), kappa_bottom(e.X)) == kappa_bottom(prod(e.X, e.X)) &&
                kappa_coproduct(kappa_bottom(e.X), kappa_bottom(e.X)) == kappa_bottom(coprod(e.X, e.X)),
            "bottom parameterization is not idempotent");
  Parameterization l = kappa_product(kappa_product(kx, ky), kz), r = kappa_product(kx, kappa_product(ky, kz));
  SearchProblem iso = assoc(e.X, e.Y, e.Z);
  for (std::size_t x = 0; x < l.obj->size; ++x) o.require(l.at(x) == r.at(iso.image(x)[0]), "product not associative");

  for (const char* file : {"kappa_doubling.json", "kappa_doubling_tight.json"}) {
    Workspace ws = load_workspace(fixtures + "/" + file);
    OracleVerdict v = decide(ws.problem("p"), ws.problem("q"), ws.table(), ReductionKind::m);
    o.require(v.yes && valid(*v.cert, ws.env), std::string(file) + ": no plain reduction");
    if (!v.yes) continue;
    bool tight = std::string(file).find("tight") != std::string::npos;
    ParamReduceResult res = param_reduce_check(*v.cert, ws.env, ws.param);
    o.require(res.accepted() != tight, std::string(file) + (tight ? " accepted" : " rejected"));
  }

  Sampler smp(31);
  for (int i = 0; i < 30; ++i) {
    Obj a = smp.atom("A", 3), b = smp.atom("B", 3), c = smp.atom("C", 3);
    auto kappa = [&](const Obj& obj) {
      std::vector<int> k(obj->size);
      for (auto& v : k) v = 1 + static_cast<int>(smp.below(6));
      return make_parameterization(obj, k);
    };
    Parameterization ka = kappa(a), kb = kappa(b), kc = kappa(c);
    ParamMorphism f = least_bound_morphism(smp.function(a, b), ka, kb);
    ParamMorphism g = least_bound_morphism(smp.function(b, c), kb, kc);
    for (int k : kb.kappa) g.bound.entries.emplace(k, g.bound.at(std::min(k, g.bound.max_key())));
    o.require(check_param_morphism(f).holds && check_param_morphism(g).holds, "seeded morphism violates its bound");
    o.require(check_param_morphism(compose_param(g, f)).holds, "composite bound fails");
    o.require(check_param_morphism(product_param(f, g)).holds, "product bound fails");
    o.require(check_param_morphism(coproduct_param(f, g)).holds, "coproduct bound fails");
  }
  if (o.passed) o.detail = "parameter laws hold, doubling fixture strict, 30 seeded bound compositions hold";
  return o;
}

Outcome determinism() {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "manyone_acceptance";
  fs::create_directories(dir);
  std::string e0 = fixtures + "/e0.json", loose = fixtures + "/kappa_doubling.json";
  std::string cert = (dir / "cert.json").string();
  std::vector<std::vector<std::string>> commands{
      {"axioms", "--cases", "200", "--seed", "7", "--max-atom-size", "3"},
      {"reduce", e0, "f", "gprime", "--mode", "m", "--emit-cert", cert},
      {"check-cert", e0, cert},
      {"reduce", e0, "gprime", "idpt", "--mode", "m"},
      {"reduce", e0, "f", "gprime", "--mode", "wtt", "--depth", "4"},
      {"order", e0},
      {"order", e0, "--mode", "sm"},
      {"hasse", e0, "--dot", (dir / "degrees.dot").string()},
      {"lattice", e0, "--depth", "3"},
      {"param-check", loose},
      {"param-check", loose, "p", "q"},
  };
  Outcome o;
  for (const auto& c : commands) {
    std::string outs[2], dots[2];
    int codes[2];
    for (int k = 0; k < 2; ++k) {
      std::ostringstream out, err;
      codes[k] = run(c, out, err);
      outs[k] = out.str() + err.str();
      if (c[0] == "hasse") dots[k] = read_file(c.back());
      if (c[0] == "reduce" && c.size() > 6) dots[k] = read_file(cert);
    }
    std::string label = c[0] + (c.size() > 1 && c[0] != "axioms" ? " " + c[1].substr(c[1].rfind('/') + 1) : "");
    o.require(codes[0] == codes[1] && outs[0] == outs[1] && dots[0] == dots[1], label + " differs between runs");
    o.require(!outs[0].empty(), label + " printed nothing");
  }
  if (o.passed) o.detail = std::to_string(commands.size()) + " commands byte-identical across two runs";
  return o;
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"axiom suite", axioms},
      {"preorder and bottom", preorder_and_bottom},
      {"distributive lattice", lattice},
      {"combinator soundness", combinator_corpus},
      {"semiring laws", semiring_laws},
      {"closure operator", closure_operator},
      {"choice dichotomy", dichotomy},
      {"least nonzero degree", least_nonzero},
      {"parameterized instance", parameterized},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.passed = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.passed) ++failed;
    std::cout << (o.passed ? "PASS " : "FAIL ") << i + 1 << ". " << criteria[i].first << ": " << o.detail << " ["
              << str(seconds_since(t0)) << " s]" << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
