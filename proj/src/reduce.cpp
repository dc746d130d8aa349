#include "manyone/reduce.hpp"

#include <algorithm>
#include <map>

namespace manyone {

std::string to_string(ReductionKind k) { return k == ReductionKind::sm ? "sm" : "m"; }

ReductionKind parse_reduction_kind(const std::string& s) {
  if (s == "sm") return ReductionKind::sm;
  if (s == "m") return ReductionKind::m;
  throw Error("unknown reduction kind '" + s + "' (expected m or sm)");
}

namespace {

void expect_type(const Term& t, const Obj& src, const Obj& dst, const TermEnv& env,
                 const std::string& role) {
  TermType ty = type_of(t, env);
  if (!same(ty.src, src) || !same(ty.dst, dst))
    throw TypeError("ill-typed certificate: " + role + " has type " + ty.src->text + " -> " +
                    ty.dst->text + ", expected " + src->text + " -> " + dst->text);
  if (!is_subcat_term(t))
    throw TypeError("ill-typed certificate: " + role + " uses a problem outside dom()");
}

}  // namespace

SearchProblem reduction_composite(const ReductionCert& c, const TermEnv& env) {
  const SearchProblem& f = c.f.problem;
  const SearchProblem& g = c.g.problem;
  expect_type(c.K, f.src(), g.src(), env, "K");
  if (c.kind == ReductionKind::sm) {
    expect_type(c.H, g.dst(), f.dst(), env, "H");
    return compose(eval_term(c.H, env), compose(g, eval_term(c.K, env)));
  }
  expect_type(c.H, prod(f.src(), g.dst()), f.dst(), env, "H");
  SearchProblem inner = compose(g, eval_term(c.K, env));
  return compose(eval_term(c.H, env),
                 compose(product_m(identity(f.src()), inner), diag(f.src())));
}

CertCheck check_cert(const ReductionCert& c, const TermEnv& env) {
  CertCheck out;
  out.witness = entails(c.f.problem, reduction_composite(c, env));
  out.valid = out.witness.holds();
  return out;
}

// ---------------------------------------------------------------------------
// Oracle

namespace {

constexpr std::size_t kMaxSearchSteps = 20000000;
constexpr std::size_t kMaxKTuples = 1000000;

struct Position {
  std::size_t slot;
  std::uint32_t point;
};

// Every requirement needs at least one of its positions defined.
struct Requirement {
  std::vector<Position> positions;
  std::size_t last_slot = 0;
};

// Lexicographically first choice of one candidate per slot meeting every
// requirement. Candidates are indices into `entries[slot]`.
class CoverSearch {
 public:
  CoverSearch(const std::vector<const LeafHoms*>& entries,
              const std::vector<std::vector<std::size_t>>& candidates,
              std::vector<Requirement> reqs, std::size_t& steps)
      : entries_(entries), candidates_(candidates), steps_(steps) {
    by_slot_.resize(entries.size());
    for (auto& r : reqs) {
      if (r.positions.empty()) {
        impossible_ = true;
        continue;
      }
      r.last_slot = 0;
      for (const auto& p : r.positions) r.last_slot = std::max(r.last_slot, p.slot);
      reqs_.push_back(std::move(r));
    }
    for (std::size_t i = 0; i < reqs_.size(); ++i) by_slot_[reqs_[i].last_slot].push_back(i);
  }

  std::optional<std::vector<std::size_t>> run() {
    if (impossible_) return std::nullopt;
    chosen_.assign(entries_.size(), 0);
    if (!descend(0)) return std::nullopt;
    return chosen_;
  }

 private:
  const std::vector<const LeafHoms*>& entries_;
  const std::vector<std::vector<std::size_t>>& candidates_;
  std::vector<Requirement> reqs_;
  std::vector<std::vector<std::size_t>> by_slot_;
  std::vector<std::size_t> chosen_;
  std::size_t& steps_;
  bool impossible_ = false;

  bool defined(const Position& p) const {
    return entries_[p.slot]->entries[chosen_[p.slot]].fn[p.point] >= 0;
  }

  bool descend(std::size_t slot) {
    if (slot == entries_.size()) return true;
    for (std::size_t c : candidates_[slot]) {
      if (++steps_ > kMaxSearchSteps) throw BudgetExceeded("reduction search exceeded its step budget");
      chosen_[slot] = c;
      bool ok = true;
      for (std::size_t r : by_slot_[slot]) {
        const auto& ps = reqs_[r].positions;
        if (std::none_of(ps.begin(), ps.end(), [&](const Position& p) { return defined(p); })) {
          ok = false;
          break;
        }
      }
      if (ok && descend(slot + 1)) return true;
    }
    return false;
  }
};

bool value_allowed(const SearchProblem& f, std::size_t x, std::int32_t v) {
  return v < 0 || f.contains(x, static_cast<std::size_t>(v));
}

class Oracle {
 public:
  Oracle(const NamedProblem& f, const NamedProblem& g, const SubcatTable& table)
      : f_(f), g_(g), table_(table), a_(f.problem.src()), b_(f.problem.dst()),
        c_(g.problem.src()), d_(g.problem.dst()) {}

  OracleVerdict run(ReductionKind kind) {
    for (const Obj& o : {a_, b_, c_, d_}) table_.require(o);
    if (kind == ReductionKind::m) table_.require(prod(a_, d_));
    OracleVerdict v;
    v.universe_depth = table_.universe().depth;
    std::optional<ReductionCert> cert = kind == ReductionKind::m ? plain(v) : strong(v);
    v.yes = cert.has_value();
    v.cert = std::move(cert);
    return v;
  }

 private:
  const NamedProblem& f_;
  const NamedProblem& g_;
  const SubcatTable& table_;
  Obj a_, b_, c_, d_;
  std::size_t steps_ = 0;

  const SearchProblem& f() const { return f_.problem; }
  const SearchProblem& g() const { return g_.problem; }

  // Necessary condition on a pre-processor leaf: defined with a nonempty
  // g-image on every point of dom f.
  bool k_leaf_ok(const Dnf& da, std::size_t leaf, const LeafEntry& k) const {
    for (std::size_t p = 0; p < k.fn.size(); ++p) {
      std::size_t x = da.origin[leaf][p];
      if (!f().defined_at(x)) continue;
      if (k.fn[p] < 0 || !g().defined_at(static_cast<std::size_t>(k.fn[p]))) return false;
    }
    return true;
  }

  std::optional<ReductionCert> plain(OracleVerdict& v) {
    const Dnf& da = table_.dnf(a_);
    const Dnf& dad = table_.dnf(prod(a_, d_));
    const std::size_t nd = d_->size;

    // Post-processor leaves grouped by the source leaf of their first component.
    std::vector<std::vector<std::size_t>> groups(da.leaves.size());
    std::vector<const LeafHoms*> h_homs(dad.leaves.size());
    for (std::size_t l = 0; l < dad.leaves.size(); ++l) {
      h_homs[l] = &table_.leaf_homs(dad.leaves[l].monomial, b_);
      if (dad.leaves[l].monomial->size == 0) continue;
      std::size_t x = dad.origin[l][0] / nd;
      groups[da.locate[x].first].push_back(l);
    }

    std::vector<Term> k_terms(da.leaves.size());
    std::vector<Term> h_terms(dad.leaves.size());
    for (std::size_t l = 0; l < dad.leaves.size(); ++l)
      if (dad.leaves[l].monomial->size == 0) h_terms[l] = h_homs[l]->entries.at(0).term;

    for (std::size_t i = 0; i < da.leaves.size(); ++i) {
      const LeafHoms& ks = table_.leaf_homs(da.leaves[i].monomial, c_);
      bool found = false;
      for (const LeafEntry& k : ks.entries) {
        ++v.k_candidates;
        if (!k_leaf_ok(da, i, k)) continue;
        auto image = [&](std::size_t x) { return k.fn[da.locate[x].second]; };

        const auto& slots = groups[i];
        std::vector<const LeafHoms*> entries;
        std::vector<std::vector<std::size_t>> cands(slots.size());
        std::map<std::size_t, std::size_t> local;
        for (std::size_t s = 0; s < slots.size(); ++s) {
          local[slots[s]] = s;
          entries.push_back(h_homs[slots[s]]);
        }
        for (std::size_t s = 0; s < slots.size(); ++s) {
          std::size_t l = slots[s];
          const LeafHoms& hs = *h_homs[l];
          for (std::size_t e = 0; e < hs.entries.size(); ++e) {
            ++v.h_candidates;
            const auto& fn = hs.entries[e].fn;
            bool ok = true;
            for (std::size_t q = 0; q < fn.size() && ok; ++q) {
              std::size_t z = dad.origin[l][q];
              std::size_t x = z / nd, y = z % nd;
              if (!f().defined_at(x)) continue;
              if (!g().contains(static_cast<std::size_t>(image(x)), y)) continue;
              ok = value_allowed(f(), x, fn[q]);
            }
            if (ok) cands[s].push_back(e);
          }
        }
        std::vector<Requirement> reqs;
        for (std::size_t p = 0; p < da.leaves[i].monomial->size; ++p) {
          std::size_t x = da.origin[i][p];
          if (!f().defined_at(x)) continue;
          Requirement r;
          for (Index y : g().image(static_cast<std::size_t>(image(x)))) {
            auto [leaf, point] = dad.locate[x * nd + y];
            r.positions.push_back(Position{local.at(leaf), point});
          }
          reqs.push_back(std::move(r));
        }
        auto choice = CoverSearch(entries, cands, std::move(reqs), steps_).run();
        if (!choice) continue;
        k_terms[i] = k.term;
        for (std::size_t s = 0; s < slots.size(); ++s)
          h_terms[slots[s]] = h_homs[slots[s]]->entries[(*choice)[s]].term;
        found = true;
        break;
      }
      if (!found) return std::nullopt;
    }
    ReductionCert cert;
    cert.kind = ReductionKind::m;
    cert.f = f_;
    cert.g = g_;
    cert.K = copair_leaves(da, k_terms, c_);
    cert.H = copair_leaves(dad, h_terms, b_);
    return cert;
  }

  std::optional<ReductionCert> strong(OracleVerdict& v) {
    const Dnf& da = table_.dnf(a_);
    const Dnf& dd = table_.dnf(d_);

    std::vector<const LeafHoms*> k_homs(da.leaves.size());
    std::vector<std::vector<std::size_t>> k_cands(da.leaves.size());
    for (std::size_t i = 0; i < da.leaves.size(); ++i) {
      k_homs[i] = &table_.leaf_homs(da.leaves[i].monomial, c_);
      for (std::size_t e = 0; e < k_homs[i]->entries.size(); ++e) {
        ++v.k_candidates;
        if (k_leaf_ok(da, i, k_homs[i]->entries[e])) k_cands[i].push_back(e);
      }
      if (k_cands[i].empty()) return std::nullopt;
    }
    std::vector<const LeafHoms*> h_homs(dd.leaves.size());
    for (std::size_t l = 0; l < dd.leaves.size(); ++l) h_homs[l] = &table_.leaf_homs(dd.leaves[l].monomial, b_);

    std::vector<std::size_t> odo(da.leaves.size(), 0);
    std::size_t tuples = 0;
    while (true) {
      if (++tuples > kMaxKTuples) throw BudgetExceeded("reduction search exceeded its pre-processor budget");
      std::vector<std::int32_t> kfn(a_->size, -1);
      for (std::size_t x = 0; x < a_->size; ++x) {
        auto [leaf, point] = da.locate[x];
        kfn[x] = k_homs[leaf]->entries[k_cands[leaf][odo[leaf]]].fn[point];
      }
      // Solutions of y must lie in f(x) for every x in dom f reaching y.
      std::vector<std::vector<std::size_t>> reached(d_->size);
      for (std::size_t x = 0; x < a_->size; ++x)
        if (f().defined_at(x))
          for (Index y : g().image(static_cast<std::size_t>(kfn[x]))) reached[y].push_back(x);

      std::vector<std::vector<std::size_t>> cands(dd.leaves.size());
      for (std::size_t l = 0; l < dd.leaves.size(); ++l) {
        const LeafHoms& hs = *h_homs[l];
        for (std::size_t e = 0; e < hs.entries.size(); ++e) {
          ++v.h_candidates;
          const auto& fn = hs.entries[e].fn;
          bool ok = true;
          for (std::size_t q = 0; q < fn.size() && ok; ++q)
            for (std::size_t x : reached[dd.origin[l][q]])
              if (!value_allowed(f(), x, fn[q])) {
                ok = false;
                break;
              }
          if (ok) cands[l].push_back(e);
        }
      }
      std::vector<Requirement> reqs;
      for (std::size_t x = 0; x < a_->size; ++x) {
        if (!f().defined_at(x)) continue;
        Requirement r;
        for (Index y : g().image(static_cast<std::size_t>(kfn[x]))) {
          auto [leaf, point] = dd.locate[y];
          r.positions.push_back(Position{leaf, point});
        }
        reqs.push_back(std::move(r));
      }
      auto choice = CoverSearch(h_homs, cands, std::move(reqs), steps_).run();
      if (choice) {
        std::vector<Term> k_terms, h_terms;
        for (std::size_t i = 0; i < da.leaves.size(); ++i)
          k_terms.push_back(k_homs[i]->entries[k_cands[i][odo[i]]].term);
        for (std::size_t l = 0; l < dd.leaves.size(); ++l) h_terms.push_back(h_homs[l]->entries[(*choice)[l]].term);
        ReductionCert cert;
        cert.kind = ReductionKind::sm;
        cert.f = f_;
        cert.g = g_;
        cert.K = copair_leaves(da, k_terms, c_);
        cert.H = copair_leaves(dd, h_terms, b_);
        return cert;
      }
      // Advance the odometer, last leaf fastest.
      std::size_t i = odo.size();
      while (i > 0) {
        --i;
        if (++odo[i] < k_cands[i].size()) break;
        odo[i] = 0;
        if (i == 0) return std::nullopt;
      }
      if (odo.empty()) return std::nullopt;
    }
  }
};

}  // namespace

OracleVerdict decide(const NamedProblem& f, const NamedProblem& g, const SubcatTable& table,
                     ReductionKind kind) {
  return Oracle(f, g, table).run(kind);
}

OracleVerdict wtt_leq(const NamedProblem& f, const NamedProblem& g, const SubcatTable& table, int n) {
  return decide(f, star_of(g, n), table, ReductionKind::m);
}

// ---------------------------------------------------------------------------
// Derived problems

NamedProblem sup_of(const NamedProblem& a, const NamedProblem& b) {
  return {"(" + a.name + " ⊔ " + b.name + ")", coproduct_m(a.problem, b.problem)};
}

NamedProblem inf_of(const NamedProblem& a, const NamedProblem& b) {
  return {"(" + a.name + " ⊕ " + b.name + ")", oplus(a.problem, b.problem)};
}

NamedProblem prod_of(const NamedProblem& a, const NamedProblem& b) {
  return {"(" + a.name + " × " + b.name + ")", product_m(a.problem, b.problem)};
}

NamedProblem sup_family(const std::vector<NamedProblem>& family) {
  if (family.empty()) throw Error("empty family");
  NamedProblem out = family[0];
  for (std::size_t i = 1; i < family.size(); ++i) out = sup_of(out, family[i]);
  return out;
}

NamedProblem star_of(const NamedProblem& a, int n) {
  return {a.name + "*" + std::to_string(n), star_trunc(a.problem, n)};
}

}  // namespace manyone
