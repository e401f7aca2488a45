#pragma once

// Ray class monoids DR_f = I_K / ~_f at finite level, built by enumeration and
// cross-checked against the counting formula for ray class numbers.

#include <vector>

#include "cmw/qfield.hpp"
#include "cmw/witt_vector.hpp"

namespace cmw {

/// a ~_f b: a b^-1 = (t) with t - 1 in f b^-1 (and t > 0 over Q).
bool congruent_mod(const QuadField& K, const IdealHNF& a, const IdealHNF& b, const IdealHNF& f);

struct RayClassMonoid {
  IdealHNF modulus;
  Int bound = 0;                      // enumeration bound used to find the reps
  std::vector<IdealHNF> reps;         // enumeration-least member of each class
  std::vector<std::vector<int>> table;
  int identity = 0;
  std::vector<int> unit_indices;
  std::vector<IdealHNF> gcd_of_class;  // (rep, f)

  std::size_t size() const { return reps.size(); }
  /// Class index of an arbitrary integral ideal.
  int find(const QuadField& K, const IdealHNF& I) const;
};

struct JPartition {
  std::vector<std::vector<int>> blocks;  // ordered by least element
  std::vector<int> block_of;
};

/// max(200, 20 N(f))
Int default_drf_bound(const IdealHNF& f);

/// Throws insufficient_bound when the ideals of norm <= B do not meet every
/// class; throws std::logic_error when the two counting paths disagree.
RayClassMonoid build_drf(const QuadField& K, const IdealHNF& f, Int B = 0);

/// h * Phi(m) / [O^x : U_{m,1}], or phi(m) over Q.
Int ray_class_number(const QuadField& K, const IdealHNF& m);

/// Euler-type totient #(O_K/m)^x.
Int residue_units(const QuadField& K, const IdealHNF& m);

/// Invertible elements of a finite commutative monoid table.
std::vector<int> drf_units(const std::vector<std::vector<int>>& table, int identity);

/// [a]_f' -> [a]_f for f | f'.  Verified to be a surjective homomorphism.
std::vector<int> drf_projection(const QuadField& K, const RayClassMonoid& Mp, const RayClassMonoid& M);

JPartition j_classes(const std::vector<std::vector<int>>& table);

/// 1 where a divides the index, 0 elsewhere; values in Q.
WittVector rho_vector(const QuadField& K, const IdealHNF& a, Int B);

}  // namespace cmw
