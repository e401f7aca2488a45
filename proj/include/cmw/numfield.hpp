#pragma once

// Polynomials over Q and exact arithmetic in Q[x]/(P), including cyclotomic
// fields Q(zeta_m) = Q[x]/(Phi_m).

#include <gmpxx.h>

#include <memory>
#include <string>
#include <vector>

#include "cmw/bigcomplex.hpp"

namespace cmw {

/// Coefficients from the constant term upward.
using QPoly = std::vector<mpq_class>;
using ZPoly = std::vector<mpz_class>;

namespace poly {

void trim(QPoly& p);
int degree(const QPoly& p);
QPoly add(const QPoly& a, const QPoly& b);
QPoly sub(const QPoly& a, const QPoly& b);
QPoly mul(const QPoly& a, const QPoly& b);
/// Quotient and remainder; b != 0.
std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b);
QPoly derivative(const QPoly& a);
QPoly monic(QPoly a);
/// Monic gcd.
QPoly gcd(QPoly a, QPoly b);
QPoly from_z(const ZPoly& p);
bool has_integer_coeffs(const QPoly& p);
/// Clears denominators and content; leading coefficient positive.
ZPoly primitive_part(const QPoly& p);
BigComplex eval(const QPoly& p, const BigComplex& x);
BigComplex eval(const ZPoly& p, const BigComplex& x);
ZPoly cyclotomic(unsigned m);
std::string str(const QPoly& p);
std::string str(const ZPoly& p);

}  // namespace poly

struct NfElement {
  QPoly c;  // reduced, length == field degree
  friend bool operator==(const NfElement&, const NfElement&) = default;
};

class NumberField {
 public:
  static std::shared_ptr<const NumberField> cyclotomic(unsigned m);
  /// Q[x]/(P) for a monic irreducible integer polynomial with a chosen root.
  static std::shared_ptr<const NumberField> make(ZPoly modulus, const BigComplex& root);

  bool is_cyclotomic() const { return conductor_ != 0; }
  unsigned conductor() const { return conductor_; }
  const ZPoly& modulus() const { return modulus_; }
  int degree() const { return static_cast<int>(modulus_.size()) - 1; }

  NfElement zero() const;
  NfElement one() const;
  NfElement from_rational(const mpq_class& q) const;
  /// Image of x^k, i.e. zeta_m^k for cyclotomic fields (k may be negative there).
  NfElement gen_pow(long k) const;
  NfElement from_poly(const QPoly& p) const;

  NfElement add(const NfElement& a, const NfElement& b) const;
  NfElement sub(const NfElement& a, const NfElement& b) const;
  NfElement neg(const NfElement& a) const;
  NfElement mul(const NfElement& a, const NfElement& b) const;
  NfElement pow(NfElement a, unsigned e) const;
  NfElement scale(const NfElement& a, const mpq_class& s) const;
  /// Inverse of a nonzero element (extended Euclid against the modulus).
  NfElement inv(const NfElement& a) const;
  /// Value of an integer polynomial at an element.
  NfElement eval(const QPoly& p, const NfElement& a) const;
  bool is_zero(const NfElement& a) const;

  /// det(X - mult_a), monic of degree n.
  QPoly charpoly(const NfElement& a) const;
  QPoly minpoly(const NfElement& a) const;
  bool is_algebraic_integer(const NfElement& a) const;

  /// The distinguished root at the current default precision.
  BigComplex root() const;
  BigComplex embed(const NfElement& a) const;
  std::string str(const NfElement& a) const;
  std::string describe() const;

 private:
  NumberField() = default;
  QPoly reduce(QPoly p) const;

  ZPoly modulus_;
  QPoly qmod_;
  unsigned conductor_ = 0;
  std::string root_re_, root_im_;  // general fields, refined by Newton on demand
  unsigned root_digits_ = 0;
};

}  // namespace cmw
