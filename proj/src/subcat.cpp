#include "manyone/subcat.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <set>
#include <unordered_map>

namespace manyone {

namespace {

bool atoms_within(const Obj& o, const std::vector<Obj>& bases) {
  if (o->kind == ObjKind::atom)
    return std::any_of(bases.begin(), bases.end(), [&](const Obj& b) { return same(b, o); });
  return atoms_within(o->left, bases) && atoms_within(o->right, bases);
}

}  // namespace

bool Universe::contains(const Obj& o) const { return o->depth <= depth && atoms_within(o, bases); }

std::vector<Obj> Universe::objects(std::size_t limit) const {
  std::vector<Obj> all = bases;
  std::size_t below = 0;  // objects before this index have depth < current - 1
  for (int d = 1; d <= depth; ++d) {
    std::size_t prev_end = all.size();
    for (std::size_t i = 0; i < prev_end; ++i)
      for (std::size_t j = 0; j < prev_end; ++j) {
        if (i < below && j < below) continue;
        if (all.size() + 2 > limit + prev_end) throw BudgetExceeded("universe too large to enumerate");
        all.push_back(prod(all[i], all[j]));
        all.push_back(coprod(all[i], all[j]));
      }
    below = prev_end;
    if (all.size() > limit) throw BudgetExceeded("universe too large to enumerate");
  }
  return all;
}

Universe build_universe(std::vector<Obj> bases, int depth) {
  if (depth < 0) throw Error("universe depth must be non-negative");
  return Universe{std::move(bases), depth};
}

const LeafEntry* LeafHoms::find(const std::vector<std::int32_t>& fn) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), fn,
                             [](const LeafEntry& e, const std::vector<std::int32_t>& v) { return e.fn < v; });
  if (it == entries.end() || it->fn != fn) return nullptr;
  return &*it;
}

namespace {

struct FnHash {
  std::size_t operator()(const std::vector<std::int32_t>& v) const {
    std::size_t h = 1469598103934665603ULL;
    for (std::int32_t x : v) h = (h ^ static_cast<std::size_t>(x + 1)) * 1099511628211ULL;
    return h;
  }
};

template <class T>
struct Pool {
  std::vector<T> items;
  std::unordered_map<std::vector<std::int32_t>, std::size_t, FnHash> index;
};

struct Entry {
  std::vector<std::int32_t> fn;
  Term term;
};

struct TypeInfo {
  Obj obj;
  int left = -1, right = -1;  // component type indices for products and sums
};

struct Pattern {
  std::vector<std::int32_t> tags;  // 0 undefined, 1 left, 2 right
  Term scrutinee;
  int type = -1;
};

struct Mask {
  std::vector<std::int32_t> defined;  // 0/1
  Term witness;
};

// Fixpoint over the maps from one monomial into a fixed set of types.
class Closure {
 public:
  Closure(const Obj& context, const Obj& target, const TermEnv& env, const std::vector<Obj>& atoms,
          const SubcatOptions& options)
      : m_(context), n_(context->size), options_(options) {
    add_type_tree(target);
    add_type_tree(context);
    for (const auto& a : atoms) add_type_tree(a);
    for (const auto& [name, g] : env.generators) {
      int s = add_type_tree(g.src());
      int d = add_type_tree(g.dst());
      gens_.push_back(Gen{name, s, d, g.as_function()});
    }
    target_ = type_index(target);
    entries_.resize(types_.size());
    run();
  }

  std::vector<LeafEntry> result() const {
    std::vector<LeafEntry> out;
    for (const auto& e : entries_[target_].items) out.push_back(LeafEntry{e.fn, e.term});
    std::sort(out.begin(), out.end(), [](const LeafEntry& a, const LeafEntry& b) { return a.fn < b.fn; });
    return out;
  }

 private:
  struct Gen {
    std::string name;
    int src, dst;
    std::vector<std::int32_t> fn;
  };
  struct Staged {
    int type;
    std::vector<std::int32_t> fn;
    std::function<Term()> term;
  };

  Obj m_;
  std::size_t n_;
  SubcatOptions options_;
  std::vector<TypeInfo> types_;
  std::map<std::string, int> type_ids_;
  std::vector<Gen> gens_;
  int target_ = 0;
  std::vector<Pool<Entry>> entries_;
  Pool<Mask> masks_;
  Pool<Pattern> patterns_;
  std::size_t total_ = 0;
  std::size_t steps_ = 0;

  // Per-round bookkeeping: [old, fresh) are the entries added last round.
  std::vector<std::size_t> old_, fresh_;
  std::size_t masks_old_ = 0, masks_fresh_ = 0;
  std::size_t patterns_old_ = 0, patterns_fresh_ = 0;
  std::vector<Staged> staged_;
  std::vector<std::unordered_map<std::vector<std::int32_t>, bool, FnHash>> staged_keys_;

  int type_index(const Obj& o) const { return type_ids_.at(o->text); }

  int add_type_tree(const Obj& o) {
    auto it = type_ids_.find(o->text);
    if (it != type_ids_.end()) return it->second;
    TypeInfo info{o};
    if (o->kind != ObjKind::atom) {
      info.left = add_type_tree(o->left);
      info.right = add_type_tree(o->right);
    }
    types_.push_back(info);
    int id = static_cast<int>(types_.size()) - 1;
    type_ids_.emplace(o->text, id);
    return id;
  }

  void tick(std::size_t amount = 1) {
    steps_ += amount;
    if (steps_ > options_.max_steps)
      throw BudgetExceeded("hom-set closure for " + m_->text + " exceeded its step budget");
  }

  void stage(int type, std::vector<std::int32_t> fn, std::function<Term()> term) {
    tick(n_ + 1);
    if (entries_[type].index.contains(fn)) return;
    auto& keys = staged_keys_[type];
    if (keys.contains(fn)) return;
    keys.emplace(fn, true);
    staged_.push_back(Staged{type, std::move(fn), std::move(term)});
  }

  const Obj& obj(int t) const { return types_[t].obj; }

  void commit() {
    for (std::size_t t = 0; t < types_.size(); ++t) {
      old_[t] = fresh_[t];
      fresh_[t] = entries_[t].items.size();
    }
    masks_old_ = masks_fresh_;
    masks_fresh_ = masks_.items.size();
    patterns_old_ = patterns_fresh_;
    patterns_fresh_ = patterns_.items.size();
  }

  bool flush() {
    if (staged_.empty()) return false;
    for (auto& s : staged_) {
      auto& pool = entries_[s.type];
      Term term = s.term();
      pool.index.emplace(s.fn, pool.items.size());
      pool.items.push_back(Entry{s.fn, term});
      if (++total_ > options_.max_entries)
        throw BudgetExceeded("hom-set closure for " + m_->text + " exceeded its entry budget");
      register_derived(s.type, s.fn, term);
    }
    staged_.clear();
    for (auto& k : staged_keys_) k.clear();
    return true;
  }

  void register_derived(int type, const std::vector<std::int32_t>& fn, const Term& term) {
    std::vector<std::int32_t> mask(n_);
    bool total = true;
    for (std::size_t x = 0; x < n_; ++x) {
      mask[x] = fn[x] >= 0 ? 1 : 0;
      total = total && fn[x] >= 0;
    }
    if (!total && !masks_.index.contains(mask)) {
      masks_.index.emplace(mask, masks_.items.size());
      masks_.items.push_back(Mask{mask, term});
    }
    const TypeInfo& info = types_[type];
    if (info.obj->kind != ObjKind::coprod) return;
    auto split = static_cast<std::int32_t>(obj(info.left)->size);
    std::vector<std::int32_t> tags(n_);
    bool has1 = false, has2 = false;
    for (std::size_t x = 0; x < n_; ++x) {
      tags[x] = fn[x] < 0 ? 0 : fn[x] < split ? 1 : 2;
      has1 = has1 || tags[x] == 1;
      has2 = has2 || tags[x] == 2;
    }
    if (!has1 || !has2 || patterns_.index.contains(tags)) return;
    patterns_.index.emplace(tags, patterns_.items.size());
    patterns_.items.push_back(Pattern{tags, term, type});
  }

  void seed() {
    std::vector<std::int32_t> ident(n_);
    for (std::size_t x = 0; x < n_; ++x) ident[x] = static_cast<std::int32_t>(x);
    stage(type_index(m_), ident, [this] { return t_id(m_); });
    for (std::size_t t = 0; t < types_.size(); ++t) {
      const Obj& o = types_[t].obj;
      if (o->size == 0) {
        stage(static_cast<int>(t), std::vector<std::int32_t>(n_, -1),
              [this, o] { return t_const(m_, o, std::nullopt); });
        continue;
      }
      for (std::size_t e = 0; e < o->size; ++e)
        stage(static_cast<int>(t), std::vector<std::int32_t>(n_, static_cast<std::int32_t>(e)),
              [this, o, e] { return t_const(m_, o, element_at(o, e)); });
    }
  }

  void round() {
    for (int t = 0; t < static_cast<int>(types_.size()); ++t) {
      const TypeInfo& info = types_[t];
      const auto& items = entries_[t].items;
      // Unary rules on last round's entries.
      for (std::size_t i = old_[t]; i < fresh_[t]; ++i) {
        const Entry& e = items[i];
        if (info.obj->kind == ObjKind::prod) unary_product(t, e);
        if (info.obj->kind == ObjKind::coprod) unary_sum(t, e);
        for (const auto& g : gens_)
          if (g.src == t) apply_gen(g, e);
      }
      inject_fresh(t);
      if (info.obj->kind == ObjKind::prod) pairs(t);
      restrictions(t);
      cases(t);
    }
  }

  void unary_product(int t, const Entry& e) {
    const TypeInfo& info = types_[t];
    const Obj& l = obj(info.left);
    const Obj& r = obj(info.right);
    auto rs = static_cast<std::int32_t>(r->size);
    std::vector<std::int32_t> a(n_), b(n_);
    for (std::size_t x = 0; x < n_; ++x) {
      a[x] = e.fn[x] < 0 ? -1 : e.fn[x] / rs;
      b[x] = e.fn[x] < 0 ? -1 : e.fn[x] % rs;
    }
    Term src = e.term;
    stage(info.left, std::move(a), [=] { return t_comp(t_proj1(l, r), src); });
    stage(info.right, std::move(b), [=] { return t_comp(t_proj2(l, r), src); });
  }

  void unary_sum(int t, const Entry& e) {
    const TypeInfo& info = types_[t];
    const Obj& l = obj(info.left);
    const Obj& r = obj(info.right);
    auto ls = static_cast<std::int32_t>(l->size);
    Term src = e.term;
    if (l->size > 0) {
      std::vector<std::int32_t> a(n_);
      for (std::size_t x = 0; x < n_; ++x) a[x] = e.fn[x] < 0 ? -1 : e.fn[x] < ls ? e.fn[x] : 0;
      Obj lo = l, ro = r;
      stage(info.left, std::move(a), [=] {
        return t_comp(t_codiag(lo), t_comp(t_coprod(t_id(lo), t_const(ro, lo, element_at(lo, 0))), src));
      });
    }
    if (r->size > 0) {
      std::vector<std::int32_t> b(n_);
      for (std::size_t x = 0; x < n_; ++x) b[x] = e.fn[x] < 0 ? -1 : e.fn[x] < ls ? 0 : e.fn[x] - ls;
      Obj lo = l, ro = r;
      stage(info.right, std::move(b), [=] {
        return t_comp(t_codiag(ro), t_comp(t_coprod(t_const(lo, ro, element_at(ro, 0)), t_id(ro)), src));
      });
    }
  }

  void apply_gen(const Gen& g, const Entry& e) {
    std::vector<std::int32_t> out(n_);
    for (std::size_t x = 0; x < n_; ++x) out[x] = e.fn[x] < 0 ? -1 : g.fn[static_cast<std::size_t>(e.fn[x])];
    Term src = e.term;
    std::string name = g.name;
    stage(g.dst, std::move(out), [=] { return t_comp(t_gen(name), src); });
  }

  // Injections into every sum type having t as a summand.
  void inject_fresh(int t) {
    for (int s = 0; s < static_cast<int>(types_.size()); ++s) {
      const TypeInfo& info = types_[s];
      if (info.obj->kind != ObjKind::coprod) continue;
      if (info.left != t && info.right != t) continue;
      const Obj& l = obj(info.left);
      const Obj& r = obj(info.right);
      auto ls = static_cast<std::int32_t>(l->size);
      for (std::size_t i = old_[t]; i < fresh_[t]; ++i) {
        const Entry& e = entries_[t].items[i];
        Term src = e.term;
        if (info.left == t)
          stage(s, e.fn, [=] { return t_comp(t_inj1(l, r), src); });
        if (info.right == t) {
          std::vector<std::int32_t> out(n_);
          for (std::size_t x = 0; x < n_; ++x) out[x] = e.fn[x] < 0 ? -1 : e.fn[x] + ls;
          stage(s, std::move(out), [=] { return t_comp(t_inj2(l, r), src); });
        }
      }
    }
  }

  void pairs(int t) {
    const TypeInfo& info = types_[t];
    int lt = info.left, rt = info.right;
    auto rs = static_cast<std::int32_t>(obj(rt)->size);
    const auto& ls = entries_[lt].items;
    const auto& rsx = entries_[rt].items;
    for (std::size_t i = 0; i < fresh_[lt]; ++i)
      for (std::size_t j = 0; j < fresh_[rt]; ++j) {
        if (i < old_[lt] && j < old_[rt]) continue;
        std::vector<std::int32_t> out(n_);
        for (std::size_t x = 0; x < n_; ++x)
          out[x] = (ls[i].fn[x] < 0 || rsx[j].fn[x] < 0) ? -1 : ls[i].fn[x] * rs + rsx[j].fn[x];
        Term a = ls[i].term, b = rsx[j].term;
        Obj m = m_;
        stage(t, std::move(out), [=] { return t_comp(t_prod(a, b), t_diag(m)); });
      }
  }

  void restrictions(int t) {
    const auto& items = entries_[t].items;
    for (std::size_t i = 0; i < fresh_[t]; ++i)
      for (std::size_t k = 0; k < masks_fresh_; ++k) {
        if (i < old_[t] && k < masks_old_) continue;
        const Mask& mk = masks_.items[k];
        std::vector<std::int32_t> out(n_);
        for (std::size_t x = 0; x < n_; ++x) out[x] = mk.defined[x] ? items[i].fn[x] : -1;
        Term w = items[i].term, u = mk.witness;
        stage(t, std::move(out), [=] { return t_comp(w, t_dom(u)); });
      }
  }

  void cases(int t) {
    const auto& items = entries_[t].items;
    const Obj& target = obj(t);
    for (std::size_t p = 0; p < patterns_fresh_; ++p) {
      const Pattern& pat = patterns_.items[p];
      bool pat_old = p < patterns_old_;
      for (std::size_t i = 0; i < fresh_[t]; ++i)
        for (std::size_t j = 0; j < fresh_[t]; ++j) {
          if (i == j) continue;
          if (pat_old && i < old_[t] && j < old_[t]) continue;
          std::vector<std::int32_t> out(n_);
          for (std::size_t x = 0; x < n_; ++x)
            out[x] = pat.tags[x] == 0 ? -1 : pat.tags[x] == 1 ? items[i].fn[x] : items[j].fn[x];
          Term w1 = items[i].term, w2 = items[j].term, s = pat.scrutinee;
          const TypeInfo& st = types_[pat.type];
          Obj l = obj(st.left), r = obj(st.right), m = m_;
          stage(t, std::move(out), [=] {
            Term branches = t_coprod(t_comp(w1, t_proj1(m, l)), t_comp(w2, t_proj1(m, r)));
            Term split = t_chain({t_distr(m, l, r), t_prod(t_id(m), s), t_diag(m)});
            return t_comp(t_codiag(target), t_comp(branches, split));
          });
        }
    }
  }

  void run() {
    old_.assign(types_.size(), 0);
    fresh_.assign(types_.size(), 0);
    staged_keys_.resize(types_.size());
    seed();
    flush();
    commit();
    for (;;) {
      round();
      if (!flush()) break;
      commit();
    }
  }
};

}  // namespace

SubcatTable::SubcatTable(Universe universe, TermEnv env, SubcatOptions options)
    : universe_(std::move(universe)), env_(std::move(env)), options_(options) {}

void SubcatTable::require(const Obj& o) const {
  if (!universe_.contains(o))
    throw OutsideUniverse("object " + o->text + " lies outside the universe of depth " +
                          std::to_string(universe_.depth) + "; undecidable here");
}

const Dnf& SubcatTable::dnf(const Obj& a) const {
  auto it = dnf_cache_.find(a->text);
  if (it == dnf_cache_.end())
    it = dnf_cache_.emplace(a->text, std::make_shared<const Dnf>(make_dnf(a))).first;
  return *it->second;
}

const LeafHoms& SubcatTable::leaf_homs(const Obj& monomial, const Obj& target) const {
  std::string key = monomial->text + " -> " + target->text;
  auto it = leaf_cache_.find(key);
  if (it != leaf_cache_.end()) return *it->second;
  Closure closure(monomial, target, env_, universe_.bases, options_);
  auto homs = std::make_shared<LeafHoms>();
  homs->monomial = monomial;
  homs->target = target;
  homs->entries = closure.result();
  return *leaf_cache_.emplace(key, homs).first->second;
}

std::size_t SubcatTable::hom_count(const Obj& a, const Obj& b) const {
  require(a);
  require(b);
  const Dnf& d = dnf(a);
  std::size_t total = 1;
  for (const auto& leaf : d.leaves) {
    std::size_t n = leaf_homs(leaf.monomial, b).entries.size();
    if (n == 0) return 0;
    if (total > std::numeric_limits<std::size_t>::max() / n) return std::numeric_limits<std::size_t>::max();
    total *= n;
  }
  return total;
}

std::vector<HomEntry> SubcatTable::hom_set(const Obj& a, const Obj& b, std::size_t limit) const {
  std::size_t count = hom_count(a, b);
  if (count > limit) throw BudgetExceeded("hom-set " + a->text + " -> " + b->text + " has " +
                                          std::to_string(count) + " maps, above the listing limit");
  std::vector<HomEntry> out;
  if (count == 0) return out;
  const Dnf& d = dnf(a);
  std::vector<const LeafHoms*> tables;
  for (const auto& leaf : d.leaves) tables.push_back(&leaf_homs(leaf.monomial, b));
  std::vector<std::size_t> pick(tables.size(), 0);
  for (;;) {
    std::vector<std::vector<Index>> rows(a->size);
    std::vector<Term> parts;
    for (std::size_t i = 0; i < tables.size(); ++i) {
      const LeafEntry& e = tables[i]->entries[pick[i]];
      parts.push_back(e.term);
      for (std::size_t p = 0; p < e.fn.size(); ++p)
        if (e.fn[p] >= 0) rows[d.origin[i][p]].push_back(static_cast<Index>(e.fn[p]));
    }
    out.push_back(HomEntry{SearchProblem(a, b, std::move(rows)), copair_leaves(d, parts, b)});
    std::size_t k = tables.size();
    while (k > 0) {
      --k;
      if (++pick[k] < tables[k]->entries.size()) break;
      pick[k] = 0;
      if (k == 0) return out;
    }
    if (tables.empty()) return out;
  }
}

std::optional<Term> SubcatTable::contains(const SearchProblem& m) const {
  require(m.src());
  require(m.dst());
  if (!m.single_valued()) return std::nullopt;
  std::vector<std::int32_t> fn = m.as_function();
  const Dnf& d = dnf(m.src());
  std::vector<Term> parts;
  for (std::size_t i = 0; i < d.leaves.size(); ++i) {
    std::vector<std::int32_t> vals(d.origin[i].size());
    for (std::size_t p = 0; p < vals.size(); ++p) vals[p] = fn[d.origin[i][p]];
    const LeafEntry* e = leaf_homs(d.leaves[i].monomial, m.dst()).find(vals);
    if (!e) return std::nullopt;
    parts.push_back(e->term);
  }
  return copair_leaves(d, parts, m.dst());
}

std::optional<Term> SubcatTable::choice_function(const SearchProblem& p) const {
  require(p.src());
  require(p.dst());
  const Dnf& d = dnf(p.src());
  std::vector<Term> parts;
  for (std::size_t i = 0; i < d.leaves.size(); ++i) {
    const LeafHoms& homs = leaf_homs(d.leaves[i].monomial, p.dst());
    const LeafEntry* found = nullptr;
    for (const auto& e : homs.entries) {
      bool ok = true;
      for (std::size_t q = 0; q < e.fn.size() && ok; ++q) {
        std::size_t x = d.origin[i][q];
        if (!p.defined_at(x)) continue;
        ok = e.fn[q] >= 0 && p.contains(x, static_cast<std::size_t>(e.fn[q]));
      }
      if (ok) {
        found = &e;
        break;
      }
    }
    if (!found) return std::nullopt;
    parts.push_back(found->term);
  }
  return copair_leaves(d, parts, p.dst());
}

SubcatTable saturate(const TermEnv& env, const Universe& universe, SubcatOptions options) {
  for (const auto& [name, g] : env.generators) {
    if (!g.single_valued())
      throw Error("generator '" + name + "' is not single-valued; witnesses must be functions");
    if (!universe.contains(g.src()) || !universe.contains(g.dst()))
      throw OutsideUniverse("generator '" + name + "' has objects outside the universe");
  }
  return SubcatTable(universe, env, options);
}

}  // namespace manyone
