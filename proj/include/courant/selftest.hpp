#pragma once

// Invariant suite run by `courant selftest` on every corpus algebroid.

#include <cstdint>
#include <string>
#include <vector>

#include "courant/courant.hpp"

namespace courant {

struct SuiteCheck {
  std::string name;
  bool pass = false;
  int instances = 0;
  std::string detail;  // first failure, empty on success
};

/// Axioms, master equation, derived brackets, Cartan relations and formulas, cup/shuffle, connection
/// identities, Chern closedness and unimodularity, each on `instances` seeded random inputs.
std::vector<SuiteCheck> invariant_suite(const StructurePtr& E, std::uint64_t seed, int instances = 6);

}  // namespace courant
