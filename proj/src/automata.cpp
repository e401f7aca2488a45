#include "cmw/automata.hpp"

#include <deque>
#include <map>
#include <sstream>

#include "cmw/errors.hpp"

namespace cmw {

Dfao dfao_from_witt(const std::vector<WittVector>& Xi, Int P, Int resolve) {
  OrbitMonoid M = orbit_monoid(Xi, P, resolve);
  Dfao A;
  A.alphabet = M.alphabet;
  A.initial = M.identity;
  A.delta = M.transitions;
  A.state_ideal = M.reps;
  A.bound = M.bound;
  A.d = Xi[0].field().d();
  for (const auto& x : Xi) A.domains.push_back(x.domain);
  for (const auto& row : M.shifted) {
    std::vector<Coeff> out;
    for (const auto& v : row) out.push_back(v.values.at(0));
    A.outputs.push_back(std::move(out));
  }
  return A;
}

namespace {

bool same_output(const Dfao& A, int s, const Dfao& B, int t) {
  for (std::size_t x = 0; x < A.domains.size(); ++x)
    if (!A.domains[x].equal(A.outputs[s][x], B.outputs[t][x])) return false;
  return true;
}

std::vector<int> bfs_order(const Dfao& A) {
  std::vector<int> order = {A.initial};
  std::vector<bool> seen(A.size(), false);
  seen[A.initial] = true;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (int t : A.delta[order[i]])
      if (!seen[t]) {
        seen[t] = true;
        order.push_back(t);
      }
  return order;
}

}  // namespace

Dfao minimize(const Dfao& A) {
  std::vector<int> reach = bfs_order(A);
  const std::size_t L = A.alphabet.size();

  // initial blocks by outputs, compared against the first member
  std::vector<int> block(A.size(), -1);
  std::vector<int> heads;
  for (int s : reach) {
    for (std::size_t b = 0; b < heads.size() && block[s] < 0; ++b)
      if (same_output(A, heads[b], A, s)) block[s] = static_cast<int>(b);
    if (block[s] < 0) {
      block[s] = static_cast<int>(heads.size());
      heads.push_back(s);
    }
  }
  for (std::size_t count = heads.size();;) {
    std::map<std::vector<int>, int> sig;
    std::vector<int> next(A.size(), -1);
    for (int s : reach) {
      std::vector<int> key = {block[s]};
      for (std::size_t l = 0; l < L; ++l) key.push_back(block[A.delta[s][l]]);
      auto it = sig.try_emplace(key, static_cast<int>(sig.size())).first;
      next[s] = it->second;
    }
    block = std::move(next);
    if (sig.size() == count) break;
    count = sig.size();
  }

  // renumber blocks breadth-first from the initial state
  Dfao R;
  R.alphabet = A.alphabet;
  R.domains = A.domains;
  R.bound = A.bound;
  R.d = A.d;
  R.initial = 0;
  std::map<int, int> id;
  std::vector<int> rep;
  id[block[A.initial]] = 0;
  rep.push_back(A.initial);
  for (std::size_t i = 0; i < rep.size(); ++i)
    for (int t : A.delta[rep[i]])
      if (id.try_emplace(block[t], static_cast<int>(rep.size())).second) rep.push_back(t);
  for (int s : rep) {
    std::vector<int> row;
    for (int t : A.delta[s]) row.push_back(id.at(block[t]));
    R.delta.push_back(std::move(row));
    R.outputs.push_back(A.outputs[s]);
    if (!A.state_ideal.empty()) R.state_ideal.push_back(A.state_ideal[s]);
  }
  return R;
}

bool equivalent(const Dfao& A, const Dfao& B) {
  if (!(A.alphabet == B.alphabet) || A.domains.size() != B.domains.size()) return false;
  std::map<std::pair<int, int>, bool> seen;
  std::deque<std::pair<int, int>> q = {{A.initial, B.initial}};
  seen[q.front()] = true;
  while (!q.empty()) {
    auto [s, t] = q.front();
    q.pop_front();
    if (!same_output(A, s, B, t)) return false;
    for (std::size_t l = 0; l < A.alphabet.size(); ++l) {
      std::pair<int, int> n = {A.delta[s][l], B.delta[t][l]};
      if (seen.try_emplace(n, true).second) q.push_back(n);
    }
  }
  return true;
}

bool commutes(const Dfao& A) {
  const std::size_t L = A.alphabet.size();
  for (std::size_t s = 0; s < A.size(); ++s)
    for (std::size_t p = 0; p < L; ++p)
      for (std::size_t q = p + 1; q < L; ++q)
        if (A.delta[A.delta[s][p]][q] != A.delta[A.delta[s][q]][p]) return false;
  return true;
}

Coeff run(const Dfao& A, const std::vector<IdealHNF>& word, std::size_t which) {
  if (which >= A.domains.size()) throw invalid_input("no such output vector");
  int s = A.initial;
  Int norm = 1;
  for (const auto& p : word) {
    std::size_t l = 0;
    while (l < A.alphabet.size() && !(A.alphabet[l] == p)) ++l;
    if (l == A.alphabet.size()) throw invalid_input("letter " + p.str() + " is outside the alphabet");
    norm *= p.lattice_norm();
    if (norm > A.bound)
      throw insufficient_bound("out of certified range: the word has norm beyond " + std::to_string(A.bound));
    s = A.delta[s][l];
  }
  return A.outputs[s][which];
}

std::size_t state_complexity(const std::vector<WittVector>& Xi, Int P) {
  return minimize(dfao_from_witt(Xi, P)).size();
}

BridyReport check_bridy(const std::vector<WittVector>& Xi, Int P) {
  BridyReport R;
  Dfao A = dfao_from_witt(Xi, P);
  R.dim = A.size();
  R.complexity = minimize(A).size();
  R.bound = A.bound;
  R.prime_bound = P;
  return R;
}

std::string to_dot(const Dfao& A) {
  std::vector<int> order = bfs_order(A);
  std::vector<int> pos(A.size(), -1);
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
  std::ostringstream o;
  o << "digraph dfao {\n  rankdir=LR;\n  start [shape=point];\n  start -> s0;\n";
  for (std::size_t i = 0; i < order.size(); ++i) {
    int s = order[i];
    o << "  s" << i << " [label=\"";
    for (std::size_t x = 0; x < A.domains.size(); ++x) {
      if (x) o << "\\n";
      o << A.domains[x].str(A.outputs[s][x], 12);
    }
    o << "\"];\n";
  }
  for (std::size_t i = 0; i < order.size(); ++i) {
    std::map<int, std::string> edges;  // target -> letters
    for (std::size_t l = 0; l < A.alphabet.size(); ++l) {
      auto& e = edges[pos[A.delta[order[i]][l]]];
      if (!e.empty()) e += ",";
      e += A.alphabet[l].str();
    }
    for (const auto& [t, label] : edges) o << "  s" << i << " -> s" << t << " [label=\"" << label << "\"];\n";
  }
  o << "}\n";
  return o.str();
}

}  // namespace cmw
