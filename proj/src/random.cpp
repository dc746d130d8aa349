#include "manyone/random.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace manyone {

std::size_t Sampler::below(std::size_t n) {
  if (n == 0) return 0;
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
}

bool Sampler::coin(double p) { return std::bernoulli_distribution(p)(rng_); }

Obj Sampler::atom(const std::string& name, std::size_t max_size, bool allow_empty) {
  std::size_t lo = allow_empty ? 0 : 1;
  std::size_t n = lo + below(max_size - lo + 1);
  std::string stem(1, static_cast<char>(std::tolower(static_cast<unsigned char>(name[0]))));
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(stem + std::to_string(i));
  return make_atom(name, std::move(labels));
}

Obj Sampler::object(const std::vector<Obj>& atoms, int depth, std::size_t max_carrier) {
  Obj pick = atoms[below(atoms.size())];
  if (depth <= 0 || coin(0.5)) return pick;
  for (int attempt = 0; attempt < 8; ++attempt) {
    Obj l = object(atoms, depth - 1, max_carrier);
    Obj r = object(atoms, depth - 1, max_carrier);
    Obj o = coin() ? prod(l, r) : coprod(l, r);
    if (o->size <= max_carrier) return o;
  }
  return pick;
}

SearchProblem Sampler::relation(const Obj& src, const Obj& dst, double density) {
  std::vector<std::vector<Index>> rows(src->size);
  for (auto& row : rows)
    for (std::size_t y = 0; y < dst->size; ++y)
      if (coin(density)) row.push_back(static_cast<Index>(y));
  return SearchProblem(src, dst, std::move(rows));
}

SearchProblem Sampler::function(const Obj& src, const Obj& dst, double defined) {
  std::vector<std::vector<Index>> rows(src->size);
  if (dst->size > 0)
    for (auto& row : rows)
      if (coin(defined)) row.push_back(static_cast<Index>(below(dst->size)));
  return SearchProblem(src, dst, std::move(rows));
}

SearchProblem Sampler::total_relation(const Obj& src, const Obj& dst, std::size_t max_width) {
  std::vector<std::vector<Index>> rows(src->size);
  if (dst->size == 0) return SearchProblem(src, dst, std::move(rows));
  std::vector<Index> all(dst->size);
  std::iota(all.begin(), all.end(), Index{0});
  for (auto& row : rows) {
    std::size_t w = 1 + below(std::min(max_width, dst->size));
    std::shuffle(all.begin(), all.end(), rng_);
    row.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(w));
  }
  return SearchProblem(src, dst, std::move(rows));
}

SearchProblem Sampler::domain(const Obj& a, double defined) {
  std::vector<std::vector<Index>> rows(a->size);
  for (std::size_t x = 0; x < rows.size(); ++x)
    if (coin(defined)) rows[x].push_back(static_cast<Index>(x));
  return SearchProblem(a, a, std::move(rows));
}

}  // namespace manyone
