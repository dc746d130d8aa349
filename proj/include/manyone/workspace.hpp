#pragma once

// Workspace and certificate files.

#include <string>
#include <vector>

#include "manyone/param.hpp"
#include "manyone/reduce.hpp"
#include "manyone/subcat.hpp"

namespace manyone {

/// Malformed workspace or certificate input. The message names the JSON path.
class InputError : public Error {
 public:
  using Error::Error;
};

struct Workspace {
  TermEnv env;
  int universe_depth = 2;
  int star_truncation = 3;
  std::vector<NamedProblem> problems;  // file order
  std::vector<std::string> generator_names;
  ParamContext param;

  /// A workspace problem, or NAME*N for its truncated star.
  NamedProblem problem(const std::string& name) const;
  /// The admissible maps over the workspace atoms; depth < 0 uses the default.
  SubcatTable table(int depth = -1) const;
};

Workspace parse_workspace(const std::string& text);
Workspace load_workspace(const std::string& path);

std::string certificate_json(const ReductionCert& c);
ReductionCert parse_certificate(const std::string& text, const Workspace& ws);
ReductionCert load_certificate(const std::string& path, const Workspace& ws);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace manyone
