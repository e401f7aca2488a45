#pragma once

// q-series evaluation of g2, g3, Delta, j, the Weierstrass function and the
// Fricke functions; CM points of ideals and their level matrices; modular
// vectors attached to the j, Fricke and characteristic families.

#include <array>
#include <vector>

#include "cmw/bigcomplex.hpp"
#include "cmw/qfield.hpp"
#include "cmw/witt_vector.hpp"

namespace cmw {

/// [[a, b], [c, d]] stored row-major.
using Mat2 = std::array<Int, 4>;

Mat2 mat_mul(const Mat2& x, const Mat2& y);
Mat2 mat_mod(const Mat2& x, Int N);
Int mat_det(const Mat2& x);
/// (a tau + b) / (c tau + d)
BigComplex mobius(const Mat2& g, const BigComplex& tau);

struct Reduction {
  BigComplex tau;      // in the standard fundamental domain
  Mat2 gamma{1, 0, 0, 1};  // tau = gamma * input, det 1
};
Reduction reduce_tau(const BigComplex& tau);

struct Eisenstein {
  BigComplex g2, g3, delta, j;
  /// Relative disagreement of the two Delta series and of the two j formulas.
  double delta_check = 0, j_check = 0;
};

/// Evaluated at the current default precision; throws precision_unreachable
/// if the internal cross-identities fail.
Eisenstein eisenstein(const BigComplex& tau);
BigComplex j_invariant(const BigComplex& tau);

/// Weierstrass function and derivative of the lattice Z tau + Z.
BigComplex wp(const BigComplex& z, const BigComplex& tau);
BigComplex wp_prime(const BigComplex& z, const BigComplex& tau);

/// Normalized Fricke value for a in Q^2, k in {1, 2, 3}.
BigComplex fricke(const mpq_class& a1, const mpq_class& a2, const BigComplex& tau, int k);

/// Imaginary unit tau_K = w.
BigComplex tau_field(const QuadField& K);

struct CmPoint {
  IdealHNF ideal;
  QuadElement w1, w2;  // basis of the inverse ideal
  BigComplex tau;
};
CmPoint cm_point(const QuadField& K, const IdealHNF& a);

struct LevelMatrix {
  Int level = 0;
  Mat2 exact{1, 0, 0, 1};  // (tau_K, 1)^T = exact * (w1, w2)^T
  Mat2 entries{1, 0, 0, 1};  // mod level
};
LevelMatrix level_matrix(const QuadField& K, const IdealHNF& a, Int N);

/// x*(w, 1)^T = q(x)*(w, 1)^T for x in O_K.
Mat2 mult_matrix(const QuadField& K, const QuadElement& x);

struct DeformationFamily {
  enum class Kind { j, fricke, character };
  Kind kind = Kind::j;
  Int level = 1;
  mpq_class a1, a2;   // fricke
  int power = 1;      // fricke
  std::vector<Mat2> S;  // character: sorted, entries in [0, level)

  static DeformationFamily j_family();
  /// Power chosen from the field: 2 for d = -1, 3 for d = -3, else 1.
  static DeformationFamily fricke_family(const QuadField& K, const mpq_class& a1, const mpq_class& a2);
  /// S must be closed under right multiplication by GL2(Z/N).
  static DeformationFamily character(Int N, std::vector<Mat2> S);
  /// The subspace q(s) M2(Z/N) with N = N(a), which detects a | b.
  static DeformationFamily rho_character(const QuadField& K, const IdealHNF& a);

  bool contains(const Mat2& m) const;
  std::string describe() const;
};

/// Fricke power convention of the field.
int fricke_power(const QuadField& K);

/// One component f(m_a, tau_{a^-1}) at the current default precision.
BigComplex modular_component(const QuadField& K, const DeformationFamily& F, const IdealHNF& a);

WittVector modular_vector(const QuadField& K, const DeformationFamily& F, Int B, unsigned prec);

struct Axiom2Sample {
  Mat2 u;
  BigComplex tau;
  double log10_dev = 0;
};
struct Axiom2Report {
  unsigned prec = 0;
  double tolerance_log10 = 0;
  bool passed = true;
  std::vector<Axiom2Sample> samples;
};
/// f_{a u}(u^-1 tau) = f_a(tau) (Fricke) or j(u^-1 tau) = j(tau) for the
/// given u in SL2(Z) and sample points.
Axiom2Report check_deformation_axiom2(const QuadField& K, const DeformationFamily& F,
                                      const std::vector<Mat2>& us, const std::vector<BigComplex>& taus,
                                      unsigned prec);

}  // namespace cmw
