#include "manyone/finrel.hpp"

#include <algorithm>
#include <sstream>

namespace manyone {

namespace {

void normalize(std::vector<std::vector<Index>>& rows) {
  for (auto& row : rows) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
}

void require_same(const Obj& a, const Obj& b, const char* what) {
  if (!same(a, b))
    throw TypeError(std::string(what) + ": " + a->text + " does not match " + b->text);
}

void require_hom(const SearchProblem& f, const SearchProblem& g, const char* what) {
  if (!same(f.src(), g.src()) || !same(f.dst(), g.dst()))
    throw TypeError(std::string(what) + ": hom-set mismatch " + f.src()->text + " -> " +
                    f.dst()->text + " vs " + g.src()->text + " -> " + g.dst()->text);
}

template <class F>
SearchProblem tabulate(Obj src, Obj dst, F&& fn) {
  std::vector<std::vector<Index>> rows(src->size);
  for (std::size_t x = 0; x < src->size; ++x) rows[x].push_back(static_cast<Index>(fn(x)));
  return SearchProblem(std::move(src), std::move(dst), std::move(rows));
}

}  // namespace

SearchProblem::SearchProblem(Obj src, Obj dst)
    : src_(std::move(src)), dst_(std::move(dst)), rows_(src_->size) {}

SearchProblem::SearchProblem(Obj src, Obj dst,
                             std::vector<std::pair<std::size_t, std::size_t>> pairs)
    : SearchProblem(std::move(src), std::move(dst)) {
  for (auto [x, y] : pairs) {
    if (x >= src_->size || y >= dst_->size) throw TypeError("pair outside carrier");
    rows_[x].push_back(static_cast<Index>(y));
  }
  normalize(rows_);
}

SearchProblem::SearchProblem(Obj src, Obj dst, std::vector<std::vector<Index>> rows)
    : src_(std::move(src)), dst_(std::move(dst)), rows_(std::move(rows)) {
  if (rows_.size() != src_->size) throw TypeError("row count does not match source carrier");
  for (const auto& row : rows_)
    for (Index y : row)
      if (y >= dst_->size) throw TypeError("pair outside carrier");
  normalize(rows_);
}

SearchProblem SearchProblem::from_function(Obj src, Obj dst, std::span<const std::int32_t> fn) {
  std::vector<std::vector<Index>> rows(src->size);
  for (std::size_t x = 0; x < fn.size(); ++x)
    if (fn[x] >= 0) rows[x].push_back(static_cast<Index>(fn[x]));
  return SearchProblem(std::move(src), std::move(dst), std::move(rows));
}

bool SearchProblem::contains(std::size_t x, std::size_t y) const {
  const auto& row = rows_[x];
  return std::binary_search(row.begin(), row.end(), static_cast<Index>(y));
}

bool SearchProblem::empty() const {
  return std::all_of(rows_.begin(), rows_.end(), [](const auto& r) { return r.empty(); });
}

bool SearchProblem::single_valued() const {
  return std::all_of(rows_.begin(), rows_.end(), [](const auto& r) { return r.size() <= 1; });
}

bool SearchProblem::total() const {
  return std::all_of(rows_.begin(), rows_.end(), [](const auto& r) { return !r.empty(); });
}

std::size_t SearchProblem::edge_count() const {
  std::size_t n = 0;
  for (const auto& r : rows_) n += r.size();
  return n;
}

std::vector<std::pair<std::size_t, std::size_t>> SearchProblem::pairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t x = 0; x < rows_.size(); ++x)
    for (Index y : rows_[x]) out.emplace_back(x, y);
  return out;
}

std::vector<std::int32_t> SearchProblem::as_function() const {
  if (!single_valued()) throw TypeError("relation is not single-valued");
  std::vector<std::int32_t> fn(rows_.size(), -1);
  for (std::size_t x = 0; x < rows_.size(); ++x)
    if (!rows_[x].empty()) fn[x] = static_cast<std::int32_t>(rows_[x][0]);
  return fn;
}

bool operator==(const SearchProblem& a, const SearchProblem& b) {
  return same(a.src_, b.src_) && same(a.dst_, b.dst_) && a.rows_ == b.rows_;
}

std::string format_problem(const SearchProblem& p) {
  std::ostringstream out;
  out << p.src()->text << " -> " << p.dst()->text << " {";
  bool first = true;
  for (auto [x, y] : p.pairs()) {
    out << (first ? "" : ", ") << "(" << format_element(element_at(p.src(), x)) << ","
        << format_element(element_at(p.dst(), y)) << ")";
    first = false;
  }
  out << "}";
  return out.str();
}

SearchProblem compose(const SearchProblem& f, const SearchProblem& g) {
  require_same(g.dst(), f.src(), "compose");
  std::vector<std::vector<Index>> rows(g.src()->size);
  std::vector<char> seen(f.dst()->size, 0);
  for (std::size_t x = 0; x < rows.size(); ++x) {
    auto& row = rows[x];
    for (Index y : g.image(x))
      for (Index z : f.image(y))
        if (!seen[z]) {
          seen[z] = 1;
          row.push_back(z);
        }
    for (Index z : row) seen[z] = 0;
  }
  return SearchProblem(g.src(), f.dst(), std::move(rows));
}

SearchProblem product_m(const SearchProblem& f, const SearchProblem& g) {
  Obj src = prod(f.src(), g.src());
  Obj dst = prod(f.dst(), g.dst());
  std::size_t gs = g.src()->size, gd = g.dst()->size;
  std::vector<std::vector<Index>> rows(src->size);
  for (std::size_t x1 = 0; x1 < f.src()->size; ++x1)
    for (std::size_t x2 = 0; x2 < gs; ++x2) {
      auto& row = rows[x1 * gs + x2];
      for (Index y1 : f.image(x1))
        for (Index y2 : g.image(x2)) row.push_back(static_cast<Index>(y1 * gd + y2));
    }
  return SearchProblem(std::move(src), std::move(dst), std::move(rows));
}

SearchProblem coproduct_m(const SearchProblem& f, const SearchProblem& g) {
  Obj src = coprod(f.src(), g.src());
  Obj dst = coprod(f.dst(), g.dst());
  std::vector<std::vector<Index>> rows(src->size);
  std::size_t fs = f.src()->size, fd = f.dst()->size;
  for (std::size_t x = 0; x < fs; ++x)
    rows[x].assign(f.image(x).begin(), f.image(x).end());
  for (std::size_t x = 0; x < g.src()->size; ++x)
    for (Index y : g.image(x)) rows[fs + x].push_back(static_cast<Index>(fd + y));
  return SearchProblem(std::move(src), std::move(dst), std::move(rows));
}

SearchProblem identity(const Obj& a) {
  return tabulate(a, a, [](std::size_t x) { return x; });
}

SearchProblem diag(const Obj& a) {
  std::size_t n = a->size;
  return tabulate(a, prod(a, a), [n](std::size_t x) { return x * n + x; });
}

SearchProblem proj1(const Obj& a, const Obj& b) {
  std::size_t n = b->size;
  return tabulate(prod(a, b), a, [n](std::size_t x) { return x / n; });
}

SearchProblem proj2(const Obj& a, const Obj& b) {
  std::size_t n = b->size;
  return tabulate(prod(a, b), b, [n](std::size_t x) { return x % n; });
}

SearchProblem inj1(const Obj& a, const Obj& b) {
  return tabulate(a, coprod(a, b), [](std::size_t x) { return x; });
}

SearchProblem inj2(const Obj& a, const Obj& b) {
  std::size_t n = a->size;
  return tabulate(b, coprod(a, b), [n](std::size_t x) { return n + x; });
}

SearchProblem codiag(const Obj& a) {
  std::size_t n = a->size;
  return tabulate(coprod(a, a), a, [n](std::size_t x) { return x < n ? x : x - n; });
}

SearchProblem assoc(const Obj& a, const Obj& b, const Obj& c, bool inverse) {
  // Row-major numbering makes both bracketings agree on indices.
  Obj left = prod(prod(a, b), c);
  Obj right = prod(a, prod(b, c));
  auto idx = [](std::size_t x) { return x; };
  return inverse ? tabulate(right, left, idx) : tabulate(left, right, idx);
}

SearchProblem comm(const Obj& a, const Obj& b) {
  std::size_t na = a->size, nb = b->size;
  return tabulate(prod(a, b), prod(b, a),
                  [na, nb](std::size_t x) { return (x % nb) * na + x / nb; });
}

SearchProblem distrib(const Obj& a, const Obj& b, const Obj& c, bool inverse) {
  Obj factored = prod(a, coprod(b, c));
  Obj spread = coprod(prod(a, b), prod(a, c));
  std::size_t na = a->size, nb = b->size, nc = c->size;
  if (!inverse) {
    return tabulate(factored, spread, [=](std::size_t x) {
      std::size_t i = x / (nb + nc), t = x % (nb + nc);
      return t < nb ? i * nb + t : na * nb + i * nc + (t - nb);
    });
  }
  return tabulate(spread, factored, [=](std::size_t x) {
    if (x < na * nb) return (x / nb) * (nb + nc) + x % nb;
    std::size_t y = x - na * nb;
    return (y / nc) * (nb + nc) + nb + y % nc;
  });
}

SearchProblem constant(const Obj& a, const Obj& b, std::size_t value) {
  if (value >= b->size)
    throw NoConstantError("no constant into " + b->text + " (empty carrier or invalid element)");
  return tabulate(a, b, [value](std::size_t) { return value; });
}

SearchProblem connect(const Obj& a, const Obj& b) {
  if (same(a, b)) return identity(a);
  if (b->size == 0) return SearchProblem(a, b);
  throw NoConstantError("connectedness morphism into nonempty " + b->text +
                        " needs an explicit constant");
}

SearchProblem structural(StructKind kind, std::span<const Obj> objs,
                         const std::optional<Element>& value, bool inverse) {
  auto need = [&](std::size_t n) {
    if (objs.size() != n) throw TypeError("structural morphism expects " + std::to_string(n) +
                                          " object arguments");
  };
  switch (kind) {
    case StructKind::diag:
      need(1);
      return diag(objs[0]);
    case StructKind::proj1:
      need(2);
      return proj1(objs[0], objs[1]);
    case StructKind::proj2:
      need(2);
      return proj2(objs[0], objs[1]);
    case StructKind::inj1:
      need(2);
      return inj1(objs[0], objs[1]);
    case StructKind::inj2:
      need(2);
      return inj2(objs[0], objs[1]);
    case StructKind::codiag:
      need(1);
      return codiag(objs[0]);
    case StructKind::assoc:
      need(3);
      return assoc(objs[0], objs[1], objs[2], inverse);
    case StructKind::comm:
      need(2);
      return comm(objs[0], objs[1]);
    case StructKind::distrib:
      need(3);
      return distrib(objs[0], objs[1], objs[2], inverse);
    case StructKind::constant: {
      need(2);
      if (!value) {
        if (objs[1]->size == 0)
          throw NoConstantError("no constant into empty " + objs[1]->text);
        throw TypeError("constant requires a target element");
      }
      return constant(objs[0], objs[1], require_index(objs[1], *value));
    }
  }
  throw TypeError("unknown structural kind");
}

SearchProblem dom_m(const SearchProblem& f) {
  std::vector<std::vector<Index>> rows(f.src()->size);
  for (std::size_t x = 0; x < rows.size(); ++x)
    if (f.defined_at(x)) rows[x].push_back(static_cast<Index>(x));
  return SearchProblem(f.src(), f.src(), std::move(rows));
}

SearchProblem dom_via_composite(const SearchProblem& f) {
  const Obj& a = f.src();
  return compose(proj1(a, f.dst()), compose(product_m(identity(a), f), diag(a)));
}

bool is_domain(const SearchProblem& d) {
  if (!same(d.src(), d.dst())) return false;
  for (std::size_t x = 0; x < d.rows().size(); ++x) {
    auto img = d.image(x);
    if (img.size() > 1 || (img.size() == 1 && img[0] != x)) return false;
  }
  return true;
}

std::string HomOrderWitness::describe() const {
  if (holds()) return "holds";
  std::string out = "fails at instance " + format_element(element_at(lhs.src(), violation->first));
  if (violation->second)
    out += " with solution " + format_element(element_at(rhs.dst(), *violation->second));
  return out;
}

HomOrderWitness dom_subset(const SearchProblem& d1, const SearchProblem& d2) {
  if (!is_domain(d1) || !is_domain(d2)) throw NotADomainError("dom_subset expects partial identities");
  require_hom(d1, d2, "dom_subset");
  HomOrderWitness w{HomOrderWitness::Kind::dom_subset, d1, d2, std::nullopt};
  // d1 ⊆ d2 iff d1 ∘ d2 = d1; the first disagreement is the counterexample.
  SearchProblem both = compose(d1, d2);
  for (std::size_t x = 0; x < d1.rows().size(); ++x)
    if (d1.rows()[x] != both.rows()[x]) {
      w.violation = std::make_pair(x, std::nullopt);
      break;
    }
  return w;
}

HomOrderWitness entails(const SearchProblem& f, const SearchProblem& g) {
  require_hom(f, g, "entails");
  HomOrderWitness w{HomOrderWitness::Kind::entails, f, g, std::nullopt};
  for (std::size_t x = 0; x < f.rows().size(); ++x) {
    if (!f.defined_at(x)) continue;
    if (!g.defined_at(x)) {
      w.violation = std::make_pair(x, std::nullopt);
      return w;
    }
    for (Index y : g.image(x))
      if (!f.contains(x, y)) {
        w.violation = std::make_pair(x, std::optional<std::size_t>(y));
        return w;
      }
  }
  return w;
}

bool entails_fast(const SearchProblem& f, const SearchProblem& g) {
  for (std::size_t x = 0; x < f.rows().size(); ++x) {
    if (!f.defined_at(x)) continue;
    if (!g.defined_at(x)) return false;
    for (Index y : g.image(x))
      if (!f.contains(x, y)) return false;
  }
  return true;
}

SearchProblem hom_inf(const SearchProblem& f, const SearchProblem& g) {
  require_hom(f, g, "hom_inf");
  std::vector<std::vector<Index>> rows(f.src()->size);
  for (std::size_t x = 0; x < rows.size(); ++x) {
    if (!f.defined_at(x) || !g.defined_at(x)) continue;
    rows[x].assign(f.image(x).begin(), f.image(x).end());
    rows[x].insert(rows[x].end(), g.image(x).begin(), g.image(x).end());
  }
  return SearchProblem(f.src(), f.dst(), std::move(rows));
}

SearchProblem oplus(const SearchProblem& f, const SearchProblem& g) {
  Obj src = prod(f.src(), g.src());
  Obj dst = coprod(f.dst(), g.dst());
  std::size_t gs = g.src()->size, fd = f.dst()->size;
  std::vector<std::vector<Index>> rows(src->size);
  for (std::size_t x = 0; x < f.src()->size; ++x)
    for (std::size_t y = 0; y < gs; ++y) {
      if (!f.defined_at(x) || !g.defined_at(y)) continue;
      auto& row = rows[x * gs + y];
      for (Index v : f.image(x)) row.push_back(v);
      for (Index w : g.image(y)) row.push_back(static_cast<Index>(fd + w));
    }
  return SearchProblem(std::move(src), std::move(dst), std::move(rows));
}

SearchProblem oplus_composite(const SearchProblem& f, const SearchProblem& g) {
  const Obj& b1 = f.dst();
  const Obj& b2 = g.dst();
  SearchProblem left = compose(inj1(b1, b2), proj1(b1, b2));
  SearchProblem right = compose(inj2(b1, b2), proj2(b1, b2));
  return compose(hom_inf(left, right), product_m(f, g));
}

SearchProblem power(const SearchProblem& f, int n) {
  if (n < 1) throw Error("power requires n >= 1");
  SearchProblem out = f;
  for (int i = 1; i < n; ++i) out = product_m(out, f);
  return out;
}

SearchProblem star_trunc(const SearchProblem& f, int n) {
  if (n < 1) throw Error("star truncation requires N >= 1");
  SearchProblem out = f;
  for (int i = 2; i <= n; ++i) out = coproduct_m(out, power(f, i));
  return out;
}

Obj power_obj(const Obj& a, int n) {
  Obj out = a;
  for (int i = 1; i < n; ++i) out = prod(out, a);
  return out;
}

Obj star_obj(const Obj& a, int n) {
  Obj out = a;
  for (int i = 2; i <= n; ++i) out = coprod(out, power_obj(a, i));
  return out;
}

SearchProblem empty_problem(const Obj& src, const Obj& dst) { return SearchProblem(src, dst); }

std::string to_string(DomainClass c) {
  switch (c) {
    case DomainClass::initial: return "initial";
    case DomainClass::empty: return "empty";
    case DomainClass::final: return "final";
    case DomainClass::none: return "none";
  }
  return "none";
}

DomainClass classify_domain(const SearchProblem& d, std::span<const Obj> context) {
  if (!is_domain(d)) throw NotADomainError("classify_domain expects a partial identity");
  std::size_t support = 0;
  for (std::size_t x = 0; x < d.rows().size(); ++x) support += d.defined_at(x) ? 1 : 0;

  // Relations g : A -> B with g ∘ d = g are exactly the relations out of the
  // support, 2^(support*|B|) of them; exactly one iff support*|B| == 0.
  bool initial = std::all_of(context.begin(), context.end(),
                             [&](const Obj& b) { return support * b->size == 0; });
  // Total g : C -> A with d ∘ g = g land in the support: (2^support - 1)^|C|
  // total relations, exactly one iff support == 1 or C is empty.
  bool final = std::all_of(context.begin(), context.end(),
                           [&](const Obj& c) { return c->size == 0 || support == 1; });
  if (initial) return support == 0 ? DomainClass::empty : DomainClass::initial;
  if (final) return DomainClass::final;
  return DomainClass::none;
}

}  // namespace manyone
