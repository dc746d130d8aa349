#include "manyone/reduce.hpp"

namespace manyone {

namespace {

// Elements of a truncated star are a length and a tuple of digits.
std::vector<std::size_t> decode_star(std::size_t index, std::size_t base, int n) {
  std::size_t block = 1;
  for (int k = 1; k <= n; ++k) {
    block *= base;
    if (index < block) {
      std::vector<std::size_t> digits(static_cast<std::size_t>(k));
      for (std::size_t i = digits.size(); i-- > 0;) {
        digits[i] = index % base;
        index /= base;
      }
      return digits;
    }
    index -= block;
  }
  throw Error("index outside the truncated star");
}

std::size_t encode_star(const std::vector<std::size_t>& digits, std::size_t base) {
  std::size_t offset = 0, block = 1;
  for (std::size_t k = 1; k < digits.size(); ++k) {
    block *= base;
    offset += block;
  }
  std::size_t value = 0;
  for (std::size_t d : digits) value = value * base + d;
  return offset + value;
}

Term power_term(const Term& t, int n) {
  Term out = t;
  for (int i = 1; i < n; ++i) out = t_prod(out, t);
  return out;
}

Term star_term(const Term& t, int n) {
  Term out = t;
  for (int i = 2; i <= n; ++i) out = t_coprod(out, power_term(t, i));
  return out;
}

std::int32_t fallback(const Obj& target) { return target->size > 0 ? 0 : -1; }

}  // namespace

ReductionCert star_intro_cert(const NamedProblem& f, int n, const TermEnv& env) {
  if (n < 1) throw Error("star truncation requires N >= 1");
  std::vector<NamedProblem> family{f};
  for (int k = 2; k <= n; ++k) family.push_back({f.name + "^" + std::to_string(k), power(f.problem, k)});
  ReductionCert c = sm_to_m(sup_inj_cert(family, 0), env);
  c.g = star_of(f, n);
  return c;
}

ReductionCert star_mono_cert(const ReductionCert& c, int n, const TermEnv& env) {
  if (n < 1) throw Error("star truncation requires N >= 1");
  ReductionCert m = c.kind == ReductionKind::m ? c : sm_to_m(c, env);
  CertCheck check = check_cert(m, env);
  if (!check.valid) throw InvalidCertificate("certificate does not validate: " + check.witness.describe());

  const Obj& a = m.f.problem.src();
  const Obj& d = m.g.problem.dst();
  Obj sa = star_obj(a, n), sd = star_obj(d, n);
  Obj pairs = star_obj(prod(a, d), n);
  // Zip equal-length tuples; other combinations never occur on valid inputs.
  Obj src = prod(sa, sd);
  std::vector<std::int32_t> zip(src->size, fallback(pairs));
  for (std::size_t s = 0; s < sa->size; ++s)
    for (std::size_t t = 0; t < sd->size; ++t) {
      auto xs = decode_star(s, a->size, n);
      auto ys = decode_star(t, d->size, n);
      if (xs.size() != ys.size()) continue;
      std::vector<std::size_t> zs(xs.size());
      for (std::size_t i = 0; i < xs.size(); ++i) zs[i] = xs[i] * d->size + ys[i];
      zip[s * sd->size + t] = static_cast<std::int32_t>(encode_star(zs, a->size * d->size));
    }
  Term h = t_comp(star_term(m.H, n), compile_structural(src, pairs, zip));

  ReductionCert out;
  out.kind = ReductionKind::m;
  out.f = star_of(m.f, n);
  out.g = star_of(m.g, n);
  out.H = h;
  out.K = star_term(m.K, n);
  return out;
}

ReductionCert star_collapse_cert(const NamedProblem& f, int n, int m) {
  if (n < 1 || m < 1) throw Error("star truncation requires N >= 1");
  const Obj& a = f.problem.src();
  const Obj& b = f.problem.dst();
  Obj inner_a = star_obj(a, n), outer_a = star_obj(inner_a, m);
  Obj inner_b = star_obj(b, n), outer_b = star_obj(inner_b, m);
  Obj flat_a = star_obj(a, n * m), flat_b = star_obj(b, n * m);

  auto chunks = [&](std::size_t s) {
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t block : decode_star(s, inner_a->size, m)) out.push_back(decode_star(block, a->size, n));
    return out;
  };

  // Concatenate the inner tuples.
  std::vector<std::int32_t> concat(outer_a->size);
  for (std::size_t s = 0; s < outer_a->size; ++s) {
    std::vector<std::size_t> flat;
    for (const auto& c : chunks(s)) flat.insert(flat.end(), c.begin(), c.end());
    concat[s] = static_cast<std::int32_t>(encode_star(flat, a->size));
  }

  // Split the solution tuple along the instance's chunk lengths.
  Obj src = prod(outer_a, flat_b);
  std::vector<std::int32_t> split(src->size, fallback(outer_b));
  for (std::size_t s = 0; s < outer_a->size; ++s) {
    auto cs = chunks(s);
    std::size_t total = 0;
    for (const auto& c : cs) total += c.size();
    for (std::size_t t = 0; t < flat_b->size; ++t) {
      auto ys = decode_star(t, b->size, n * m);
      if (ys.size() != total) continue;
      std::vector<std::size_t> blocks;
      std::size_t pos = 0;
      for (const auto& c : cs) {
        std::vector<std::size_t> part(ys.begin() + static_cast<std::ptrdiff_t>(pos),
                                      ys.begin() + static_cast<std::ptrdiff_t>(pos + c.size()));
        blocks.push_back(encode_star(part, b->size));
        pos += c.size();
      }
      split[s * flat_b->size + t] = static_cast<std::int32_t>(encode_star(blocks, inner_b->size));
    }
  }

  ReductionCert out;
  out.kind = ReductionKind::m;
  out.f = star_of(star_of(f, n), m);
  out.g = star_of(f, n * m);
  out.K = compile_structural(outer_a, flat_a, concat);
  out.H = compile_structural(src, outer_b, split);
  return out;
}

}  // namespace manyone
