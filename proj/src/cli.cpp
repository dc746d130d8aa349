#include "manyone/cli.hpp"

#include <algorithm>
#include <functional>

#include "CLI11.hpp"
#include "manyone/axioms.hpp"
#include "manyone/degrees.hpp"
#include "manyone/workspace.hpp"

namespace manyone {

namespace {

struct Options {
  std::size_t cases = 200;
  std::uint64_t seed = 7;
  std::size_t max_atom_size = 3;
  std::string workspace;
  std::string f, g;
  std::string mode = "m";
  int trunc = 0;  // 0: the workspace default
  int depth = -1;
  std::string emit_cert;
  std::string cert;
  std::string dot;
  bool verbose = false;
};

OrderSpec spec_of(const Options& o, const Workspace& ws) {
  return parse_order_spec(o.mode, o.trunc > 0 ? o.trunc : ws.star_truncation);
}

std::string relation(const OrderSpec& spec) { return "<=" + spec.label(); }

int cmd_axioms(const Options& o, std::ostream& out) {
  AxiomReport r = verify_pcategory_axioms(o.seed, o.cases, o.max_atom_size);
  out << r.format();
  return r.violations() == 0 ? 0 : 1;
}

int cmd_reduce(const Options& o, std::ostream& out) {
  Workspace ws = load_workspace(o.workspace);
  OrderSpec spec = spec_of(o, ws);
  NamedProblem f = ws.problem(o.f), g = ws.problem(o.g);
  SubcatTable table = ws.table(o.depth);
  OracleVerdict v = decide_in(f, g, table, spec);
  if (!v.yes) {
    out << "NO (exhaustive at depth " << v.universe_depth << ")\n";
    return 1;
  }
  out << "YES: " << f.name << ' ' << relation(spec) << ' ' << g.name << " (depth " << v.universe_depth << ")\n";
  std::string json = certificate_json(*v.cert);
  out << json;
  if (!o.emit_cert.empty()) write_file(o.emit_cert, json);
  return 0;
}

int cmd_check_cert(const Options& o, std::ostream& out) {
  Workspace ws = load_workspace(o.workspace);
  ReductionCert c = load_certificate(o.cert, ws);
  CertCheck r = check_cert(c, ws.env);
  if (r.valid) {
    out << "VALID: " << c.f.name << " <=" << to_string(c.kind) << ' ' << c.g.name << '\n';
    return 0;
  }
  out << "INVALID: " << r.witness.describe() << '\n';
  return 1;
}

int cmd_order(const Options& o, std::ostream& out) {
  Workspace ws = load_workspace(o.workspace);
  SubcatTable table = ws.table(o.depth);
  PreorderMatrix m = preorder_matrix(ws.problems, table, spec_of(o, ws));
  out << m.to_tsv();
  for (std::size_t i = 0; i < m.names.size(); ++i)
    for (std::size_t j = 0; j < m.names.size(); ++j)
      if (!m.cells[i][j].decided) out << "# " << m.names[i] << ", " << m.names[j] << ": " << m.cells[i][j].note << '\n';
  return m.complete() ? 0 : 2;
}

int cmd_hasse(const Options& o, std::ostream& out) {
  Workspace ws = load_workspace(o.workspace);
  SubcatTable table = ws.table(o.depth);
  PreorderMatrix m = preorder_matrix(ws.problems, table, spec_of(o, ws));
  if (!m.complete()) {
    out << "UNDECIDABLE: the matrix has cells outside the universe\n";
    return 2;
  }
  DegreeReport r;
  r.matrix = std::move(m);
  try {
    r.classes = degree_classes(r.matrix);
  } catch (const Error& e) {
    out << "NOT A PREORDER: " << e.what() << '\n';
    return 1;
  }
  r.edges = hasse(r.classes, r.matrix);
  write_file(o.dot, r.to_dot());
  out << r.summary();
  return 0;
}

int cmd_lattice(const Options& o, std::ostream& out) {
  Workspace ws = load_workspace(o.workspace);
  SubcatTable table = ws.table(o.depth);
  std::vector<NamedProblem> ext = extend_family(ws.problems);
  LatticeReport r = verify_lattice(ext, ext, table);
  out << r.format(o.verbose);
  bool failed = std::any_of(r.findings.begin(), r.findings.end(),
                            [](const LatticeFinding& f) { return f.decided && !f.passed; });
  std::string verdict = failed         ? "lattice checks FAILED"
                        : r.complete() ? "lattice checks passed"
                                       : "UNDECIDABLE: some checks need a deeper universe";
  out << verdict << " (universe depth " << table.universe().depth << ")\n";
  return failed ? 1 : r.complete() ? 0 : 2;
}

int cmd_param_check(const Options& o, std::ostream& out) {
  Workspace ws = load_workspace(o.workspace);
  if (o.f.empty() != o.g.empty()) throw InputError("param-check takes either no problems or two");
  if (o.f.empty()) {
    bool ok = true;
    for (const auto& name : ws.generator_names) {
      auto it = ws.param.generators.find(name);
      if (it == ws.param.generators.end()) {
        out << "generator " << name << ": no bound\n";
        continue;
      }
      try {
        ParamCheck r = check_param_morphism(it->second);
        out << "generator " << name << ": bound " << it->second.bound.format()
            << (r.holds ? " holds" : " violated " + r.detail) << '\n';
        ok = ok && r.holds;
      } catch (const IncompleteBound& e) {
        out << "generator " << name << ": incomplete bound: " << e.what() << '\n';
        ok = false;
      }
    }
    out << (ok ? "all bounds hold" : "bound violations found") << " (parameter-bound only)\n";
    return ok ? 0 : 1;
  }
  NamedProblem f = ws.problem(o.f), g = ws.problem(o.g);
  SubcatTable table = ws.table(o.depth);
  OracleVerdict v = decide(f, g, table, ReductionKind::m);
  if (!v.yes) {
    out << "NO (exhaustive at depth " << v.universe_depth << ")\n";
    return 1;
  }
  ParamReduceResult r = param_reduce_check(*v.cert, ws.env, ws.param);
  out << "K = " << print_term(v.cert->K) << '\n';
  out << (r.accepted() ? "ACCEPTED" : "REJECTED") << " (parameter-bound only): " << r.detail << '\n';
  return r.accepted() ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Many-one reductions between finite search problems", "manyone"};
  app.require_subcommand(1);
  Options o;
  std::function<int(const Options&, std::ostream&)> action;

  auto* axioms = app.add_subcommand("axioms", "Randomized check of the p-category laws");
  axioms->add_option("--cases", o.cases, "Number of random cases")->capture_default_str();
  axioms->add_option("--seed", o.seed, "Random seed")->capture_default_str();
  axioms->add_option("--max-atom-size", o.max_atom_size, "Largest atom carrier")->capture_default_str();
  axioms->callback([&] { action = cmd_axioms; });

  auto modes = CLI::IsMember({"m", "sm", "wtt"});
  auto* reduce = app.add_subcommand("reduce", "Decide F <= G and print a certificate");
  reduce->add_option("workspace", o.workspace, "Workspace file")->required();
  reduce->add_option("f", o.f, "Source problem")->required();
  reduce->add_option("g", o.g, "Target problem")->required();
  reduce->add_option("--mode", o.mode, "Reduction kind")->check(modes)->capture_default_str();
  reduce->add_option("--trunc", o.trunc, "Star truncation for wtt")->check(CLI::PositiveNumber);
  reduce->add_option("--emit-cert", o.emit_cert, "Write the certificate here");
  reduce->add_option("--depth", o.depth, "Universe depth override")->check(CLI::NonNegativeNumber);
  reduce->callback([&] { action = cmd_reduce; });

  auto* check = app.add_subcommand("check-cert", "Validate a certificate file");
  check->add_option("workspace", o.workspace, "Workspace file")->required();
  check->add_option("cert", o.cert, "Certificate file")->required();
  check->callback([&] { action = cmd_check_cert; });

  auto* order = app.add_subcommand("order", "Print the reducibility matrix as TSV");
  order->add_option("workspace", o.workspace, "Workspace file")->required();
  order->add_option("--mode", o.mode, "Reduction kind")->check(modes)->capture_default_str();
  order->add_option("--trunc", o.trunc, "Star truncation for wtt")->check(CLI::PositiveNumber);
  order->add_option("--depth", o.depth, "Universe depth override")->check(CLI::NonNegativeNumber);
  order->callback([&] { action = cmd_order; });

  auto* hasse_cmd = app.add_subcommand("hasse", "Write the Hasse diagram of the degrees as DOT");
  hasse_cmd->add_option("workspace", o.workspace, "Workspace file")->required();
  hasse_cmd->add_option("--dot", o.dot, "Output path")->required();
  hasse_cmd->add_option("--mode", o.mode, "Reduction kind")->check(modes)->capture_default_str();
  hasse_cmd->add_option("--trunc", o.trunc, "Star truncation for wtt")->check(CLI::PositiveNumber);
  hasse_cmd->add_option("--depth", o.depth, "Universe depth override")->check(CLI::NonNegativeNumber);
  hasse_cmd->callback([&] { action = cmd_hasse; });

  auto* lattice = app.add_subcommand("lattice", "Check joins, meets and distributivity on the family");
  lattice->add_option("workspace", o.workspace, "Workspace file")->required();
  lattice->add_option("--depth", o.depth, "Universe depth override")->check(CLI::NonNegativeNumber);
  lattice->add_flag("--verbose", o.verbose, "List every check");
  lattice->callback([&] { action = cmd_lattice; });

  auto* param = app.add_subcommand("param-check", "Check parameter bounds");
  param->add_option("workspace", o.workspace, "Workspace file")->required();
  param->add_option("f", o.f, "Source problem");
  param->add_option("g", o.g, "Target problem");
  param->add_option("--depth", o.depth, "Universe depth override")->check(CLI::NonNegativeNumber);
  param->callback([&] { action = cmd_param_check; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n' << app.help();
    return 2;
  }

  try {
    return action(o, out);
  } catch (const OutsideUniverse& e) {
    out << "UNDECIDABLE: " << e.what() << '\n';
    return 2;
  } catch (const BudgetExceeded& e) {
    out << "UNDECIDABLE: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace manyone
