#pragma once

// Integer relations by exact LLL, minimal polynomials of high-precision
// values, Hilbert class polynomials, and exact certification of vectors.

#include <optional>
#include <string>
#include <vector>

#include "cmw/bigcomplex.hpp"
#include "cmw/numfield.hpp"
#include "cmw/qfield.hpp"
#include "cmw/witt_vector.hpp"

namespace cmw {

using IntMatrix = std::vector<std::vector<mpz_class>>;

/// Integral LLL on the rows; throws invalid_input on dependent rows.  The
/// output is re-checked over Q before returning.
IntMatrix lll_reduce(IntMatrix B, const mpq_class& delta = mpq_class(99, 100));
bool is_lll_reduced(const IntMatrix& B, const mpq_class& delta = mpq_class(99, 100));

mpz_class round_to_mpz(const Real& x);

struct IntPoly {
  ZPoly coeffs;               // constant term first, leading coefficient > 0
  double residual_log10 = 0;  // log10 |P(x)|
  mpz_class content = 1;
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  bool monic_primitive() const;
  std::string residual_str() const;
};

/// Smallest-degree integer polynomial vanishing at x (degrees 1..dmax).
/// Throws no_relation.
IntPoly minpoly(const BigComplex& x, int dmax, unsigned prec);

/// beta = r(gamma) with deg r < D, found by relation search and checked
/// numerically to prec/2 digits.
std::optional<QPoly> express_in(const BigComplex& beta, const BigComplex& gamma, int D, unsigned prec);

struct ClassPolynomial {
  IntPoly poly;
  std::vector<IdealHNF> reps;
  std::vector<BigComplex> roots;  // j(tau_{a^-1}) for each rep
  double max_rounding_error = 0;
};
/// Throws precision_unreachable when some rounding error is >= 0.01.
ClassPolynomial class_polynomial(const QuadField& K, unsigned prec = 120);

struct CertifiedVector {
  bool ok = false;
  std::string failure;
  std::shared_ptr<const NumberField> field;
  WittVector exact;                 // number-field domain
  std::vector<BigComplex> distinct;  // numeric values, first-seen order
  std::vector<IntPoly> minpolys;     // of each distinct value
  std::vector<bool> integral;        // monic after content removal
  std::vector<int> value_of;         // component index -> distinct index

  bool all_integral() const;
};

/// Expresses every component of a complex vector in one number field that
/// also contains the base field.
CertifiedVector certify_vector(const WittVector& xi, int dmax = 16);

/// x / t is an algebraic integer.
bool exact_divisibility(const NumberField& F, const NfElement& x, const NfElement& t);
bool exact_divisibility(const NumberField& F, const NfElement& x, const mpq_class& t);

/// The image of w in F under the distinguished embedding, if F contains K.
std::optional<NfElement> omega_image(const QuadField& K, const NumberField& F);

/// Image of x + y w given the image of w.
NfElement quad_to_field(const NumberField& F, const NfElement& omega, const QuadElement& x);

}  // namespace cmw
