#pragma once

// Deterministic automata with output over a prime alphabet, generating
// families of truncated vectors.

#include <string>
#include <vector>

#include "cmw/witt.hpp"

namespace cmw {

struct Dfao {
  std::vector<IdealHNF> alphabet;
  int initial = 0;
  std::vector<std::vector<int>> delta;      // [state][letter]
  std::vector<std::vector<Coeff>> outputs;  // [state][vector]
  std::vector<CoeffDomain> domains;         // per vector
  std::vector<IdealHNF> state_ideal;        // first-reach ideal of each state
  Int bound = 0;                            // norms up to which outputs are certified
  Int d = 1;

  std::size_t size() const { return delta.size(); }
};

/// States are the orbit-monoid elements; outputs are the shifted vectors at (1).
Dfao dfao_from_witt(const std::vector<WittVector>& Xi, Int P, Int resolve = kDefaultResolve);

/// Moore refinement of the reachable part; states renumbered breadth-first.
Dfao minimize(const Dfao& A);

/// Output equivalence on all words, by breadth-first search of the product.
bool equivalent(const Dfao& A, const Dfao& B);

bool commutes(const Dfao& A);

/// Throws invalid_input for a letter outside the alphabet and
/// insufficient_bound when the word's norm exceeds the certified bound.
Coeff run(const Dfao& A, const std::vector<IdealHNF>& word, std::size_t which = 0);

std::size_t state_complexity(const std::vector<WittVector>& Xi, Int P);

struct BridyReport {
  std::size_t complexity = 0, dim = 0;
  Int bound = 0, prime_bound = 0;
  bool equal() const { return complexity == dim; }
};
BridyReport check_bridy(const std::vector<WittVector>& Xi, Int P);

/// Graphviz text, breadth-first state order, outputs as labels.
std::string to_dot(const Dfao& A);

}  // namespace cmw
