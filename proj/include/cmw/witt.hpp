#pragma once

// Frobenius shifts, the U_n congruence test, periodicity, orbit monoids and
// the zeta^(gamma) family over Q.

#include <optional>
#include <string>
#include <vector>

#include "cmw/rayclass.hpp"
#include "cmw/witt_vector.hpp"

namespace cmw {

/// (psi_a xi)_b = xi_{ab} on ideals of norm <= B / N(a).
WittVector shift(const WittVector& xi, const IdealHNF& a);

WittVector pointwise_mul(const WittVector& x, const WittVector& y);
WittVector pointwise_add(const WittVector& x, const WittVector& y);
WittVector constant_vector(const QuadField& K, Int B, const mpq_class& c);

/// n -> zeta_q^(p n) over Q.
WittVector zeta_gamma(long q, long p, Int B);

struct ZetaTerm {
  mpq_class coeff;
  mpq_class gamma;
};
/// sum coeff * zeta^(gamma) in Q(zeta_L), L the lcm of the denominators.
WittVector zlinear_combine(const std::vector<ZetaTerm>& terms, Int B);

struct UnVerdict {
  IdealHNF prime;
  int depth = 0;  // the depth whose step used this prime
  bool passed = true;
  long tested = 0;  // witnesses examined
};

struct UnReport {
  int depth = 0;
  Int prime_bound = 0;
  Int bound = 0;
  bool passed = true;   // every performed test passed
  bool complete = true;  // no prime had to be skipped
  std::vector<UnVerdict> verdicts;
  std::vector<IdealHNF> skipped;  // non-principal, or generator outside the domain
  std::string failure;            // first failing location
};

/// Recursive test of psi_p xi - xi^(Np) in p U_{n-1}; exact domains only.
UnReport check_un(const WittVector& xi, int depth, Int P);

/// xi_a = xi_b whenever a ~_f b, over all in-bound ideals.
bool is_periodic_mod(const WittVector& xi, const IdealHNF& f);

/// First candidate f (candidates sorted by norm) with is_periodic_mod.
std::optional<IdealHNF> find_modulus(const WittVector& xi, std::vector<IdealHNF> candidates);

struct OrbitMonoid {
  std::vector<IdealHNF> alphabet;
  std::vector<IdealHNF> reps;  // reps[i] = reps[parent[i]] * alphabet[letter[i]]
  std::vector<int> parent, letter;
  std::vector<std::vector<int>> transitions;  // [state][letter]
  std::vector<std::vector<int>> table;
  int identity = 0;
  Int bound = 0, prime_bound = 0, resolve = 0;
  Int min_compared = 0;  // smallest common bound of any comparison made
  std::vector<std::vector<WittVector>> shifted;  // [state][xi]

  std::size_t size() const { return reps.size(); }
};

constexpr Int kDefaultResolve = 4;

/// Breadth-first closure of the shifts of Xi under the primes of norm <= P.
/// Throws insufficient_bound when a needed comparison would use fewer than
/// `resolve` norms, or when the induced table is not commutative.
OrbitMonoid orbit_monoid(const std::vector<WittVector>& Xi, Int P, Int resolve = kDefaultResolve);

std::size_t dim_x(const std::vector<WittVector>& Xi, Int P, Int resolve = kDefaultResolve);

/// Blocks of mutually reachable states under the transitions.
JPartition mutual_access_partition(const OrbitMonoid& M);

struct ComponentClass {
  std::vector<int> states;
  std::size_t values = 0;  // distinct component values
  int degree_over_K = 0;   // 0 when no relation was found
  std::string method;
};

struct ComponentReport {
  JPartition partition;
  std::vector<ComponentClass> classes;
  Int bound = 0, prime_bound = 0;
};

/// Per J-class degree over K of the field generated by the components of the
/// shifted vectors in that class (of the first vector in Xi).
ComponentReport component_report(const std::vector<WittVector>& Xi, Int P, int dmax = 16,
                                 Int resolve = kDefaultResolve);

/// Restricted search for a single vector whose orbit monoid has a given size.
struct CyclicSearch {
  long tried = 0;
  std::vector<std::vector<ZetaTerm>> hits;
};
CyclicSearch cyclic_vector_search(long conductor, std::size_t target, Int B, Int P, int max_terms = 2);

}  // namespace cmw
