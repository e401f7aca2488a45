#pragma once

// Desk check of the congruence cut out by the level-N modular vectors against
// the ray class congruence modulo N.

#include <utility>
#include <vector>

#include "cmw/qfield.hpp"

namespace cmw {

struct ModularityReport {
  Int d = 0, level = 1, bound = 0;
  unsigned prec = 0;
  double tolerance_log10 = 0;
  std::size_t vectors = 0;        // size of the family
  std::size_t ideals = 0;         // in-bound ideals compared
  std::size_t family_classes = 0;  // classes of the vector congruence
  std::size_t ray_classes = 0;     // classes of the ray congruence among them
  Int ray_class_count = 0;         // #DR of the modulus
  std::vector<std::pair<IdealHNF, IdealHNF>> mismatches;
  std::vector<std::pair<IdealHNF, IdealHNF>> ambiguous;  // gap within one order of the tolerance
  bool gcd_constant = true;
  std::vector<std::vector<IdealHNF>> classes;  // by the vector congruence

  bool passed() const { return mismatches.empty() && ambiguous.empty() && gcd_constant; }
};

/// Tolerance 10^(-prec/3).
ModularityReport modularity_check(Int d, Int N, Int B, unsigned prec);

}  // namespace cmw
