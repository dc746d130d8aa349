#include "manyone/degrees.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace manyone {

std::string OrderSpec::label() const {
  switch (mode) {
    case OrderMode::m: return "m";
    case OrderMode::sm: return "sm";
    case OrderMode::wtt: return "wtt(" + std::to_string(trunc) + ")";
  }
  return "?";
}

OrderSpec parse_order_spec(const std::string& mode, int trunc) {
  if (trunc < 1) throw Error("truncation must be at least 1");
  if (mode == "m") return {OrderMode::m, trunc};
  if (mode == "sm") return {OrderMode::sm, trunc};
  if (mode == "wtt") return {OrderMode::wtt, trunc};
  throw Error("unknown mode '" + mode + "' (expected m, sm or wtt)");
}

OracleVerdict decide_in(const NamedProblem& f, const NamedProblem& g, const SubcatTable& table,
                        const OrderSpec& spec) {
  switch (spec.mode) {
    case OrderMode::m: return decide(f, g, table, ReductionKind::m);
    case OrderMode::sm: return decide(f, g, table, ReductionKind::sm);
    case OrderMode::wtt: return wtt_leq(f, g, table, spec.trunc);
  }
  throw Error("unknown mode");
}

bool PreorderMatrix::complete() const {
  for (const auto& row : cells)
    for (const auto& c : row)
      if (!c.decided) return false;
  return true;
}

std::string PreorderMatrix::to_tsv() const {
  std::ostringstream os;
  os << spec.label();
  for (const auto& n : names) os << '\t' << n;
  os << '\n';
  for (std::size_t i = 0; i < names.size(); ++i) {
    os << names[i];
    for (const auto& c : cells[i]) os << '\t' << (!c.decided ? "?" : c.yes ? "1" : "0");
    os << '\n';
  }
  return os.str();
}

PreorderMatrix preorder_matrix(const std::vector<NamedProblem>& family, const SubcatTable& table,
                               const OrderSpec& spec) {
  PreorderMatrix m;
  m.spec = spec;
  m.universe_depth = table.universe().depth;
  for (const auto& p : family) m.names.push_back(p.name);
  m.cells.assign(family.size(), std::vector<Cell>(family.size()));
  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::size_t j = 0; j < family.size(); ++j) {
      Cell& c = m.cells[i][j];
      try {
        OracleVerdict v = decide_in(family[i], family[j], table, spec);
        c.yes = v.yes;
        c.cert = std::move(v.cert);
      } catch (const OutsideUniverse& e) {
        c.decided = false;
        c.note = e.what();
      } catch (const BudgetExceeded& e) {
        c.decided = false;
        c.note = e.what();
      }
    }
  return m;
}

void require_preorder(const PreorderMatrix& m) {
  std::size_t n = m.names.size();
  if (!m.complete()) throw Error("matrix has undecided cells");
  for (std::size_t i = 0; i < n; ++i)
    if (!m.cells[i][i].yes) throw Error("matrix is not reflexive at " + m.names[i]);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (m.cells[i][j].yes && m.cells[j][k].yes && !m.cells[i][k].yes)
          throw Error("matrix is not transitive: " + m.names[i] + " <= " + m.names[j] + " <= " + m.names[k]);
}

std::vector<std::vector<std::size_t>> degree_classes(const PreorderMatrix& m) {
  require_preorder(m);
  std::size_t n = m.names.size();
  std::vector<std::vector<std::size_t>> classes;
  std::vector<bool> placed(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (placed[i]) continue;
    std::vector<std::size_t> cls;
    for (std::size_t j = i; j < n; ++j)
      if (!placed[j] && m.cells[i][j].yes && m.cells[j][i].yes) {
        cls.push_back(j);
        placed[j] = true;
      }
    classes.push_back(std::move(cls));
  }
  return classes;
}

std::vector<std::pair<std::size_t, std::size_t>> hasse(const std::vector<std::vector<std::size_t>>& classes,
                                                       const PreorderMatrix& m) {
  std::size_t k = classes.size();
  auto below = [&](std::size_t a, std::size_t b) {
    return a != b && m.cells[classes[a][0]][classes[b][0]].yes;
  };
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      if (!below(a, b)) continue;
      bool covered = true;
      for (std::size_t c = 0; c < k && covered; ++c)
        if (below(a, c) && below(c, b)) covered = false;
      if (covered) edges.emplace_back(a, b);
    }
  return edges;
}

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string DegreeReport::to_dot() const {
  std::ostringstream os;
  os << "digraph degrees {\n  rankdir=BT;\n  node [shape=box];\n";
  for (std::size_t c = 0; c < classes.size(); ++c) {
    std::string label;
    for (std::size_t i : classes[c]) label += (label.empty() ? "" : ", ") + matrix.names[i];
    os << "  c" << c << " [label=\"" << dot_escape(label) << "\"];\n";
  }
  for (const auto& [a, b] : edges) os << "  c" << a << " -> c" << b << ";\n";
  os << "}\n";
  return os.str();
}

std::string DegreeReport::summary() const {
  std::ostringstream os;
  os << "mode " << matrix.spec.label() << ", universe depth " << matrix.universe_depth << ", "
     << matrix.names.size() << " problems, " << classes.size() << " classes\n";
  for (std::size_t c = 0; c < classes.size(); ++c) {
    os << "class " << c << ":";
    for (std::size_t i : classes[c]) os << ' ' << matrix.names[i];
    os << '\n';
  }
  for (const auto& [a, b] : edges) os << "cover " << a << " < " << b << '\n';
  return os.str();
}

DegreeReport degree_report(const std::vector<NamedProblem>& family, const SubcatTable& table,
                           const OrderSpec& spec) {
  DegreeReport r;
  r.matrix = preorder_matrix(family, table, spec);
  r.classes = degree_classes(r.matrix);
  r.edges = hasse(r.classes, r.matrix);
  return r;
}

// ---------------------------------------------------------------------------
// Lattice checks

bool LatticeReport::passed() const {
  return std::all_of(findings.begin(), findings.end(), [](const LatticeFinding& f) { return f.passed; });
}

bool LatticeReport::complete() const {
  return std::all_of(findings.begin(), findings.end(), [](const LatticeFinding& f) { return f.decided; });
}

std::string LatticeReport::format(bool verbose) const {
  std::ostringstream os;
  std::size_t failed = 0, undecided = 0;
  for (const auto& f : findings) {
    if (!f.decided)
      ++undecided;
    else if (!f.passed)
      ++failed;
    if (verbose || !f.passed)
      os << (f.passed ? "PASS " : f.decided ? "FAIL " : "UNDECIDED ") << f.check << " [" << f.evidence << "] " << f.subject
         << (f.detail.empty() ? "" : ": " + f.detail) << '\n';
  }
  os << pairs << " pairs, " << triples << " triples, " << bounds << " bounds: " << findings.size()
     << " checks, " << failed << " failed, " << undecided << " undecided\n";
  return os.str();
}

std::vector<NamedProblem> extend_family(const std::vector<NamedProblem>& family) {
  std::vector<NamedProblem> out = family;
  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      out.push_back(sup_of(family[i], family[j]));
      out.push_back(inf_of(family[i], family[j]));
    }
  return out;
}

namespace {

class LatticeCheck {
 public:
  LatticeCheck(const std::vector<NamedProblem>& family, const std::vector<NamedProblem>& bounds,
               const SubcatTable& table, const BinaryOp& sup)
      : family_(family), bounds_(bounds), table_(table), env_(table.env()), sup_(sup) {}

  LatticeReport run() {
    report_.bounds = bounds_.size();
    for (std::size_t i = 0; i < family_.size(); ++i)
      for (std::size_t j = i; j < family_.size(); ++j) {
        ++report_.pairs;
        check_sup(family_[i], family_[j]);
        check_inf(family_[i], family_[j]);
      }
    for (const auto& f : family_)
      for (const auto& g1 : family_)
        for (const auto& g2 : family_) {
          ++report_.triples;
          check_distrib(f, g1, g2);
        }
    return report_;
  }

 private:
  const std::vector<NamedProblem>& family_;
  const std::vector<NamedProblem>& bounds_;
  const SubcatTable& table_;
  const TermEnv& env_;
  const BinaryOp& sup_;
  LatticeReport report_;
  std::map<std::pair<std::string, std::string>, OracleVerdict> memo_;

  const OracleVerdict& leq(const NamedProblem& a, const NamedProblem& b) {
    auto key = std::make_pair(a.name + '|' + format_problem(a.problem), b.name + '|' + format_problem(b.problem));
    auto it = memo_.find(key);
    if (it == memo_.end()) it = memo_.emplace(key, decide(a, b, table_, ReductionKind::m)).first;
    return it->second;
  }

  void record(std::string check, std::string subject, std::string evidence, bool passed,
              std::string detail = {}, bool decided = true) {
    report_.findings.push_back(LatticeFinding{std::move(check), std::move(subject), std::move(evidence), passed,
                                              decided, std::move(detail)});
  }

  // Runs `body`. Refused certificates become failed findings; queries beyond
  // the universe or the search budget become undecided ones.
  template <class Body>
  void guarded(const std::string& check, const std::string& subject, const std::string& evidence, Body body) {
    try {
      std::string detail;
      bool ok = body(detail);
      record(check, subject, evidence, ok, detail);
    } catch (const OutsideUniverse& e) {
      record(check, subject, evidence, false, e.what(), false);
    } catch (const BudgetExceeded& e) {
      record(check, subject, evidence, false, e.what(), false);
    } catch (const Error& e) {
      record(check, subject, evidence, false, e.what());
    }
  }

  bool validates(const ReductionCert& c, std::string& detail) {
    CertCheck r = check_cert(c, env_);
    if (!r.valid) detail = c.f.name + " -> " + c.g.name + ": " + r.witness.describe();
    return r.valid;
  }

  void check_sup(const NamedProblem& f, const NamedProblem& g) {
    NamedProblem s = sup_(f, g);
    std::string subject = f.name + ", " + g.name;
    guarded("sup upper bound", subject, "oracle", [&](std::string& d) {
      bool ok = leq(f, s).yes && leq(g, s).yes;
      if (!ok) d = "an argument does not reduce to " + s.name;
      return ok;
    });
    guarded("sup upper bound", subject, "certificate", [&](std::string& d) {
      for (std::size_t side = 0; side < 2; ++side) {
        ReductionCert c = sup_inj_cert({f, g}, side);
        c.g = s;
        if (!validates(c, d)) return false;
      }
      return true;
    });
    for (const auto& u : bounds_) {
      bool is_bound = false;
      guarded("sup least", subject + " below " + u.name, "oracle", [&](std::string& d) {
        is_bound = leq(f, u).yes && leq(g, u).yes;
        bool ok = !is_bound || leq(s, u).yes;
        if (!ok) d = s.name + " does not reduce to the upper bound " + u.name;
        return ok;
      });
      if (!is_bound) {
        if (report_.findings.back().passed) report_.findings.pop_back();
        continue;
      }
      guarded("sup least", subject + " below " + u.name, "certificate", [&](std::string& d) {
        ReductionCert c = sup_univ_cert({*leq(f, u).cert, *leq(g, u).cert}, env_);
        c.f = s;
        return validates(c, d);
      });
    }
  }

  void check_inf(const NamedProblem& f, const NamedProblem& g) {
    NamedProblem t = inf_of(f, g);
    std::string subject = f.name + ", " + g.name;
    guarded("inf lower bound", subject, "oracle", [&](std::string& d) {
      bool ok = leq(t, f).yes && leq(t, g).yes;
      if (!ok) d = t.name + " does not reduce to an argument";
      return ok;
    });
    guarded("inf lower bound", subject, "certificate", [&](std::string& d) {
      return validates(inf_proj_cert(f, g, 1), d) && validates(inf_proj_cert(f, g, 2), d);
    });
    for (const auto& l : bounds_) {
      bool is_bound = false;
      guarded("inf greatest", l.name + " below " + subject, "oracle", [&](std::string& d) {
        is_bound = leq(l, f).yes && leq(l, g).yes;
        bool ok = !is_bound || leq(l, t).yes;
        if (!ok) d = "the lower bound " + l.name + " does not reduce to " + t.name;
        return ok;
      });
      if (!is_bound) {
        if (report_.findings.back().passed) report_.findings.pop_back();
        continue;
      }
      guarded("inf greatest", l.name + " below " + subject, "certificate", [&](std::string& d) {
        return validates(inf_univ_cert(*leq(l, f).cert, *leq(l, g).cert, env_), d);
      });
    }
  }

  void check_distrib(const NamedProblem& f, const NamedProblem& g1, const NamedProblem& g2) {
    guarded("distributive", f.name + ", " + g1.name + ", " + g2.name, "certificate", [&](std::string& d) {
      auto [forward, backward] = distrib_cert(f, g1, g2, env_);
      return validates(forward, d) && validates(backward, d);
    });
  }
};

}  // namespace

LatticeReport verify_lattice(const std::vector<NamedProblem>& family,
                             const std::vector<NamedProblem>& bounds, const SubcatTable& table,
                             const BinaryOp& sup) {
  return LatticeCheck(family, bounds, table, sup).run();
}

}  // namespace manyone
