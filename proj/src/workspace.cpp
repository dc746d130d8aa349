#include "manyone/workspace.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace manyone {

using Json = nlohmann::ordered_json;

namespace {

[[noreturn]] void schema(const std::string& path, const std::string& what) {
  throw InputError("schema violation at " + path + ": " + what);
}

const Json& field(const Json& obj, const std::string& key, const std::string& path) {
  if (!obj.contains(key)) schema(path, "missing field '" + key + "'");
  return obj.at(key);
}

std::string text_of(const Json& j, const std::string& path) {
  if (!j.is_string()) schema(path, "expected a string");
  return j.get<std::string>();
}

int int_of(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) schema(path, "expected an integer");
  return j.get<int>();
}

Obj object_of(const Json& j, const AtomEnv& atoms, const std::string& path) {
  std::string text = text_of(j, path);
  try {
    return parse_object(text, atoms);
  } catch (const Error& e) {
    throw InputError("type error at " + path + ": " + e.what());
  }
}

std::size_t element_of(const Json& j, const Obj& obj, const std::string& path) {
  std::string text = text_of(j, path);
  Element e;
  try {
    e = parse_element(text);
  } catch (const Error& err) {
    schema(path, std::string("bad element: ") + err.what());
  }
  auto idx = index_of(obj, e);
  if (!idx) schema(path, "'" + text + "' is not an element of " + obj->text);
  return *idx;
}

std::vector<int> kappa_of(const Json& j, const Obj& obj, const std::string& path) {
  if (!j.is_object()) schema(path, "expected an object keyed by element");
  std::vector<int> k(obj->size, 0);
  for (const auto& [label, value] : j.items()) {
    std::string at = path + "." + label;
    std::size_t x = element_of(Json(label), obj, at);
    int v = int_of(value, at);
    if (v < 1) schema(at, "parameter values must be at least 1");
    k[x] = v;
  }
  for (std::size_t x = 0; x < k.size(); ++x)
    if (k[x] == 0) schema(path, "no parameter for " + format_element(element_at(obj, x)));
  return k;
}

BoundTable bound_of(const Json& j, const std::string& path) {
  if (!j.is_object()) schema(path, "expected an object keyed by parameter value");
  std::map<int, int> e;
  for (const auto& [key, value] : j.items()) {
    int k = 0;
    try {
      std::size_t used = 0;
      k = std::stoi(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      schema(path + "." + key, "keys must be integers");
    }
    e[k] = int_of(value, path + "." + key);
  }
  try {
    return make_bound(std::move(e));
  } catch (const Error& err) {
    schema(path, err.what());
  }
}

void check_name(const std::string& name, std::set<std::string>& seen, const std::string& path) {
  if (name.empty()) schema(path, "empty name");
  for (char c : name)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
      schema(path, "name '" + name + "' may use only letters, digits and '_'");
  if (!seen.insert(name).second) schema(path, "duplicate name '" + name + "'");
}

}  // namespace

NamedProblem Workspace::problem(const std::string& name) const {
  auto star = name.rfind('*');
  if (star != std::string::npos) {
    int n = 0;
    try {
      n = std::stoi(name.substr(star + 1));
    } catch (const std::exception&) {
      throw InputError("bad truncation in problem name '" + name + "'");
    }
    return star_of(problem(name.substr(0, star)), n);
  }
  for (const auto& p : problems)
    if (p.name == name) return p;
  throw InputError("unknown problem '" + name + "'");
}

SubcatTable Workspace::table(int depth) const {
  return saturate(env, build_universe(env.atoms.atoms(), depth < 0 ? universe_depth : depth));
}

Workspace parse_workspace(const std::string& text) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("parse error: ") + e.what());
  }
  if (!root.is_object()) schema("$", "expected an object");
  Workspace ws;
  std::set<std::string> names;

  const Json& atoms = field(root, "atoms", "$");
  if (!atoms.is_object()) schema("atoms", "expected an object of label lists");
  for (const auto& [name, labels] : atoms.items()) {
    std::string path = "atoms." + name;
    check_name(name, names, path);
    if (!labels.is_array()) schema(path, "expected a list of labels");
    std::vector<std::string> ls;
    std::set<std::string> seen;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      std::string l = text_of(labels[i], path + "[" + std::to_string(i) + "]");
      if (!seen.insert(l).second) schema(path + "[" + std::to_string(i) + "]", "duplicate label '" + l + "'");
      ls.push_back(l);
    }
    try {
      ws.env.atoms.declare(name, std::move(ls));
    } catch (const Error& e) {
      schema(path, e.what());
    }
  }
  if (root.contains("universe_depth")) ws.universe_depth = int_of(root["universe_depth"], "universe_depth");
  if (root.contains("star_truncation")) ws.star_truncation = int_of(root["star_truncation"], "star_truncation");
  if (ws.universe_depth < 0) schema("universe_depth", "must be non-negative");
  if (ws.star_truncation < 1) schema("star_truncation", "must be at least 1");

  if (root.contains("generators")) {
    const Json& gens = root["generators"];
    if (!gens.is_array()) schema("generators", "expected a list");
    for (std::size_t i = 0; i < gens.size(); ++i) {
      std::string path = "generators[" + std::to_string(i) + "]";
      const Json& g = gens[i];
      if (!g.is_object()) schema(path, "expected an object");
      std::string name = text_of(field(g, "name", path), path + ".name");
      check_name(name, names, path + ".name");
      Obj src = object_of(field(g, "src", path), ws.env.atoms, path + ".src");
      Obj dst = object_of(field(g, "dst", path), ws.env.atoms, path + ".dst");
      const Json& map = field(g, "map", path);
      if (!map.is_object()) schema(path + ".map", "expected an object from element to element");
      std::vector<std::int32_t> fn(src->size, -1);
      for (const auto& [from, to] : map.items()) {
        std::string at = path + ".map." + from;
        std::size_t x = element_of(Json(from), src, at);
        fn[x] = static_cast<std::int32_t>(element_of(to, dst, at));
      }
      SearchProblem m = SearchProblem::from_function(src, dst, fn);
      ws.env.generators.emplace(name, m);
      ws.generator_names.push_back(name);
      if (g.contains("bound")) {
        BoundTable b = bound_of(g["bound"], path + ".bound");
        Parameterization ks = g.contains("kappa_src")
                                  ? Parameterization{src, kappa_of(g["kappa_src"], src, path + ".kappa_src")}
                                  : kappa_bottom(src);
        Parameterization kd = g.contains("kappa_dst")
                                  ? Parameterization{dst, kappa_of(g["kappa_dst"], dst, path + ".kappa_dst")}
                                  : kappa_bottom(dst);
        ws.param.generators.emplace(name, ParamMorphism{m, ks, kd, b});
      }
    }
  }

  const Json& probs = field(root, "problems", "$");
  if (!probs.is_array()) schema("problems", "expected a list");
  for (std::size_t i = 0; i < probs.size(); ++i) {
    std::string path = "problems[" + std::to_string(i) + "]";
    const Json& p = probs[i];
    if (!p.is_object()) schema(path, "expected an object");
    std::string name = text_of(field(p, "name", path), path + ".name");
    check_name(name, names, path + ".name");
    Obj src = object_of(field(p, "src", path), ws.env.atoms, path + ".src");
    Obj dst = object_of(field(p, "dst", path), ws.env.atoms, path + ".dst");
    const Json& pairs = field(p, "pairs", path);
    if (!pairs.is_array()) schema(path + ".pairs", "expected a list of [instance, solution] pairs");
    std::vector<std::pair<std::size_t, std::size_t>> ps;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      std::string at = path + ".pairs[" + std::to_string(k) + "]";
      if (!pairs[k].is_array() || pairs[k].size() != 2) schema(at, "expected [instance, solution]");
      ps.emplace_back(element_of(pairs[k][0], src, at), element_of(pairs[k][1], dst, at));
    }
    SearchProblem sp(src, dst, std::move(ps));
    ws.problems.push_back({name, sp});
    ws.env.problems.emplace(name, sp);
    if (p.contains("kappa"))
      ws.param.problems.emplace(name, Parameterization{src, kappa_of(p["kappa"], src, path + ".kappa")});
  }
  return ws;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
}

Workspace load_workspace(const std::string& path) { return parse_workspace(read_file(path)); }

std::string certificate_json(const ReductionCert& c) {
  Json j;
  j["kind"] = to_string(c.kind);
  j["f"] = c.f.name;
  j["g"] = c.g.name;
  j["H"] = print_term(c.H);
  j["K"] = print_term(c.K);
  return j.dump(2) + "\n";
}

ReductionCert parse_certificate(const std::string& text, const Workspace& ws) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("parse error: ") + e.what());
  }
  if (!root.is_object()) schema("$", "expected an object");
  ReductionCert c;
  try {
    c.kind = parse_reduction_kind(text_of(field(root, "kind", "$"), "kind"));
  } catch (const InputError&) {
    throw;
  } catch (const Error& e) {
    schema("kind", e.what());
  }
  c.f = ws.problem(text_of(field(root, "f", "$"), "f"));
  c.g = ws.problem(text_of(field(root, "g", "$"), "g"));
  for (const char* key : {"H", "K"}) {
    std::string src = text_of(field(root, key, "$"), key);
    try {
      (key[0] == 'H' ? c.H : c.K) = parse_term(src, ws.env);
    } catch (const Error& e) {
      throw InputError(std::string("type error at ") + key + ": " + e.what());
    }
  }
  return c;
}

ReductionCert load_certificate(const std::string& path, const Workspace& ws) {
  return parse_certificate(read_file(path), ws);
}

}  // namespace manyone
