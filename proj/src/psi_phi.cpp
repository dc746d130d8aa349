#include <sstream>

#include "manyone/reduce.hpp"

namespace manyone {

bool is_choice_function(const SearchProblem& c, const SearchProblem& p) {
  return c.single_valued() && entails_fast(p, c);
}

void for_each_choice_function(const SearchProblem& p,
                              const std::function<void(const SearchProblem&)>& visit) {
  std::vector<std::size_t> points;
  for (std::size_t x = 0; x < p.src()->size; ++x)
    if (p.defined_at(x)) points.push_back(x);
  std::vector<std::size_t> odo(points.size(), 0);
  std::vector<std::int32_t> fn(p.src()->size, -1);
  while (true) {
    for (std::size_t i = 0; i < points.size(); ++i)
      fn[points[i]] = static_cast<std::int32_t>(p.image(points[i])[odo[i]]);
    visit(SearchProblem::from_function(p.src(), p.dst(), fn));
    std::size_t i = points.size();
    while (i > 0) {
      --i;
      if (++odo[i] < p.image(points[i]).size()) break;
      odo[i] = 0;
      if (i == 0) return;
    }
    if (points.empty()) return;
  }
}

std::string PsiPhi::report() const {
  std::ostringstream os;
  os << "psi " << (psi_chooses ? "is" : "is not") << " a total choice function of f; phi "
     << (phi_chooses ? "is" : "is not") << " a total choice function of g";
  return os.str();
}

PsiPhi psi_phi(const SearchProblem& choice, const SearchProblem& f, const SearchProblem& g) {
  const Obj& xf = f.src();
  const Obj& xg = g.src();
  if (!same(choice.src(), prod(xf, xg)) || !same(choice.dst(), coprod(f.dst(), g.dst())))
    throw PreconditionError("choice map has type " + choice.src()->text + " -> " + choice.dst()->text +
                            ", expected the type of f ⊕ g");
  if (!choice.single_valued()) throw PreconditionError("choice map is not single-valued");
  SearchProblem both = oplus(f, g);
  if (!entails_fast(both, choice)) throw PreconditionError("map is not a choice function of f ⊕ g");

  auto fn = choice.as_function();
  const auto left = static_cast<std::int32_t>(f.dst()->size);
  std::vector<std::int32_t> psi(xf->size, -1), phi(xg->size, -1);
  for (std::size_t x = 0; x < xf->size; ++x) {
    if (!f.defined_at(x)) continue;
    for (std::size_t y = 0; y < xg->size; ++y) {
      if (!g.defined_at(y)) continue;
      std::int32_t v = fn[x * xg->size + y];
      if (v < left) {
        psi[x] = v;
        break;
      }
    }
  }
  for (std::size_t y = 0; y < xg->size; ++y) {
    if (!g.defined_at(y)) continue;
    for (std::size_t x = 0; x < xf->size; ++x) {
      if (!f.defined_at(x)) continue;
      std::int32_t v = fn[x * xg->size + y];
      if (v >= left) {
        phi[y] = v - left;
        break;
      }
    }
  }
  PsiPhi out;
  out.psi = SearchProblem::from_function(xf, f.dst(), psi);
  out.phi = SearchProblem::from_function(xg, g.dst(), phi);
  out.psi_chooses = is_choice_function(out.psi, f);
  out.phi_chooses = is_choice_function(out.phi, g);
  return out;
}

}  // namespace manyone
