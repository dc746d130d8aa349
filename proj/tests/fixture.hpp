#pragma once

// The small running example: X = {a,b}, Y = {0,1}, Z = {p,q}, PT = {*}.

#include <vector>

#include "manyone/reduce.hpp"

namespace fixture {

using namespace manyone;
using Pairs = std::vector<std::pair<std::size_t, std::size_t>>;

struct E0 {
  TermEnv env;
  Obj X, Y, Z, PT;
  NamedProblem empty, f, g, gprime, idpt, h;

  E0() {
    X = env.atoms.declare("X", {"a", "b"});
    Y = env.atoms.declare("Y", {"0", "1"});
    Z = env.atoms.declare("Z", {"p", "q"});
    PT = env.atoms.declare("PT", {"*"});
    empty = add("empty", SearchProblem(X, Y));
    f = add("f", SearchProblem(X, Y, Pairs{{0, 0}, {0, 1}, {1, 1}}));
    g = add("g", SearchProblem(X, Y, Pairs{{0, 0}}));
    gprime = add("gprime", SearchProblem(X, Y, Pairs{{0, 0}, {1, 1}}));
    idpt = add("idpt", identity(PT));
    h = add("h", SearchProblem(Y, Z, Pairs{{0, 0}, {1, 0}, {1, 1}}));
  }

  NamedProblem add(const std::string& name, SearchProblem p) {
    env.problems[name] = p;
    return {name, p};
  }

  /// The five-member family of the golden matrix.
  std::vector<NamedProblem> family() const { return {empty, f, g, gprime, idpt}; }

  SubcatTable table(int depth = 2) const { return saturate(env, build_universe({X, Y, Z, PT}, depth)); }
};

}  // namespace fixture
