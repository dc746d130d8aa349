#pragma once

// Randomized verification of the p-category equations and the laws of the
// relational model.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace manyone {

struct LawResult {
  std::string name;
  std::size_t checked = 0;
  std::size_t passed = 0;
  std::optional<std::string> counterexample;  // first failure only
};

struct AxiomReport {
  std::uint64_t seed = 0;
  std::size_t cases = 0;
  std::size_t max_atom_size = 0;
  std::vector<LawResult> laws;

  std::size_t violations() const;
  std::string format() const;
};

AxiomReport verify_pcategory_axioms(std::uint64_t seed, std::size_t cases,
                                    std::size_t max_atom_size);

}  // namespace manyone
