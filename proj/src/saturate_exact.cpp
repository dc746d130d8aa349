#include <set>

#include "manyone/subcat.hpp"

namespace manyone {

namespace {

using Fn = std::vector<std::int32_t>;

class Exact {
 public:
  Exact(const TermEnv& env, const Universe& u, std::size_t max_entries)
      : max_entries_(max_entries) {
    objects_ = u.objects();
    for (std::size_t i = 0; i < objects_.size(); ++i) ids_.emplace(objects_[i]->text, i);
    cells_.resize(objects_.size() * objects_.size());
    seed(env);
    while (close()) {
    }
  }

  ExactTable table() const {
    ExactTable t;
    t.objects = objects_;
    for (std::size_t a = 0; a < objects_.size(); ++a)
      for (std::size_t b = 0; b < objects_.size(); ++b) {
        const auto& c = cells_[a * objects_.size() + b];
        t.homs[{a, b}] = std::vector<Fn>(c.begin(), c.end());
      }
    return t;
  }

 private:
  std::vector<Obj> objects_;
  std::map<std::string, std::size_t> ids_;
  std::vector<std::set<Fn>> cells_;
  std::size_t total_ = 0;
  std::size_t max_entries_;

  std::optional<std::size_t> id(const Obj& o) const {
    auto it = ids_.find(o->text);
    if (it == ids_.end()) return std::nullopt;
    return it->second;
  }

  std::set<Fn>& cell(std::size_t a, std::size_t b) { return cells_[a * objects_.size() + b]; }

  bool add(std::size_t a, std::size_t b, Fn fn) {
    if (!cell(a, b).insert(std::move(fn)).second) return false;
    if (++total_ > max_entries_) throw BudgetExceeded("exact saturation exceeded its entry budget");
    return true;
  }

  void add_problem(const SearchProblem& p) {
    auto a = id(p.src()), b = id(p.dst());
    if (a && b) add(*a, *b, p.as_function());
  }

  void seed(const TermEnv& env) {
    for (const auto& a : objects_) {
      add_problem(identity(a));
      if (id(prod(a, a))) add_problem(diag(a));
      if (id(coprod(a, a))) add_problem(codiag(a));
      for (const auto& b : objects_) {
        if (id(prod(a, b))) {
          add_problem(proj1(a, b));
          add_problem(proj2(a, b));
          add_problem(comm(a, b));
        }
        if (id(coprod(a, b))) {
          add_problem(inj1(a, b));
          add_problem(inj2(a, b));
        }
        if (b->size == 0)
          add_problem(empty_problem(a, b));
        else
          for (std::size_t e = 0; e < b->size; ++e) add_problem(constant(a, b, e));
        for (const auto& c : objects_) {
          if (id(prod(prod(a, b), c)) && id(prod(a, prod(b, c)))) {
            add_problem(assoc(a, b, c));
            add_problem(assoc(a, b, c, true));
          }
          if (id(prod(a, coprod(b, c))) && id(coprod(prod(a, b), prod(a, c)))) {
            add_problem(distrib(a, b, c));
            add_problem(distrib(a, b, c, true));
          }
        }
      }
    }
    for (const auto& [name, g] : env.generators) add_problem(g);
  }

  bool close() {
    bool changed = false;
    std::size_t n = objects_.size();
    for (std::size_t a = 0; a < n; ++a) {
      // Domains.
      for (std::size_t b = 0; b < n; ++b) {
        std::vector<Fn> fs(cell(a, b).begin(), cell(a, b).end());
        for (const auto& f : fs) {
          Fn d(f.size());
          for (std::size_t x = 0; x < f.size(); ++x) d[x] = f[x] < 0 ? -1 : static_cast<std::int32_t>(x);
          changed |= add(a, a, std::move(d));
        }
      }
      // Composition.
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c) {
          std::vector<Fn> fs(cell(a, b).begin(), cell(a, b).end());
          std::vector<Fn> gs(cell(b, c).begin(), cell(b, c).end());
          for (const auto& f : fs)
            for (const auto& g : gs) {
              Fn h(f.size());
              for (std::size_t x = 0; x < f.size(); ++x) h[x] = f[x] < 0 ? -1 : g[f[x]];
              changed |= add(a, c, std::move(h));
            }
        }
    }
    // Products and coproducts of morphisms.
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          for (std::size_t d = 0; d < n; ++d) {
            auto pa = id(prod(objects_[a], objects_[c])), pb = id(prod(objects_[b], objects_[d]));
            auto sa = id(coprod(objects_[a], objects_[c])), sb = id(coprod(objects_[b], objects_[d]));
            if (!(pa && pb) && !(sa && sb)) continue;
            std::vector<Fn> fs(cell(a, b).begin(), cell(a, b).end());
            std::vector<Fn> gs(cell(c, d).begin(), cell(c, d).end());
            auto nc = static_cast<std::int32_t>(objects_[c]->size);
            auto nd = static_cast<std::int32_t>(objects_[d]->size);
            auto nb = static_cast<std::int32_t>(objects_[b]->size);
            for (const auto& f : fs)
              for (const auto& g : gs) {
                if (pa && pb) {
                  Fn h(f.size() * g.size());
                  for (std::size_t x = 0; x < f.size(); ++x)
                    for (std::size_t y = 0; y < g.size(); ++y)
                      h[x * static_cast<std::size_t>(nc) + y] =
                          (f[x] < 0 || g[y] < 0) ? -1 : f[x] * nd + g[y];
                  changed |= add(*pa, *pb, std::move(h));
                }
                if (sa && sb) {
                  Fn h(f);
                  for (std::int32_t v : g) h.push_back(v < 0 ? -1 : v + nb);
                  changed |= add(*sa, *sb, std::move(h));
                }
              }
          }
    return changed;
  }
};

}  // namespace

const std::vector<std::vector<std::int32_t>>& ExactTable::cell(const Obj& a, const Obj& b) const {
  std::size_t ia = objects.size(), ib = objects.size();
  for (std::size_t i = 0; i < objects.size(); ++i) {
    if (same(objects[i], a)) ia = i;
    if (same(objects[i], b)) ib = i;
  }
  if (ia == objects.size() || ib == objects.size()) throw OutsideUniverse("object outside the exact table");
  return homs.at({ia, ib});
}

ExactTable saturate_exact(const TermEnv& env, const Universe& universe, std::size_t max_entries) {
  for (const auto& [name, g] : env.generators)
    if (!g.single_valued()) throw Error("generator '" + name + "' is not single-valued");
  return Exact(env, universe, max_entries).table();
}

}  // namespace manyone
