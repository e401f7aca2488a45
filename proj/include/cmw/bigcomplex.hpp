#pragma once

// Arbitrary-precision real/complex numbers on top of MPFR.

#include <boost/multiprecision/mpfr.hpp>

#include <string>

namespace cmw {

using Real = boost::multiprecision::mpfr_float;

/// Sets the MPFR default precision (decimal digits) for the lifetime of the
/// guard.  New Real values created inside the scope get this precision.
class PrecisionGuard {
 public:
  explicit PrecisionGuard(unsigned digits);
  ~PrecisionGuard();
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

 private:
  unsigned saved_;
};

/// Converts to the current default precision.
Real at_default(const Real& x);

class BigComplex {
 public:
  Real re, im;

  BigComplex() : re(0), im(0) {}
  BigComplex(const Real& r) : re(at_default(r)), im(0) {}
  BigComplex(const Real& r, const Real& i) : re(at_default(r)), im(at_default(i)) {}
  BigComplex(long v) : re(v), im(0) {}
  BigComplex(double r, double i) : re(r), im(i) {}

  /// Parses decimal strings at the current default precision.
  static BigComplex parse(const std::string& re, const std::string& im);

  BigComplex& operator+=(const BigComplex& o);
  BigComplex& operator-=(const BigComplex& o);
  BigComplex& operator*=(const BigComplex& o);
  BigComplex& operator/=(const BigComplex& o);

  friend BigComplex operator+(BigComplex a, const BigComplex& b) { return a += b; }
  friend BigComplex operator-(BigComplex a, const BigComplex& b) { return a -= b; }
  friend BigComplex operator*(BigComplex a, const BigComplex& b) { return a *= b; }
  friend BigComplex operator/(BigComplex a, const BigComplex& b) { return a /= b; }
  friend BigComplex operator-(const BigComplex& a) { return BigComplex(-a.re, -a.im); }
  friend BigComplex operator*(const Real& s, const BigComplex& a) { return BigComplex(s * a.re, s * a.im); }

  BigComplex conj() const { return BigComplex(re, -im); }
  /// |z|^2
  Real norm() const { return re * re + im * im; }
  Real abs() const;
  BigComplex pow(long e) const;

  /// Decimal rendering with `digits` significant digits.
  std::string re_str(unsigned digits) const;
  std::string im_str(unsigned digits) const;
  std::string str(unsigned digits = 20) const;
  double re_d() const { return re.convert_to<double>(); }
  double im_d() const { return im.convert_to<double>(); }
};

Real pi_real();
/// e^z
BigComplex exp(const BigComplex& z);
/// e^(2 pi i z)
BigComplex exp2pii(const BigComplex& z);
BigComplex sqrt(const BigComplex& z);
/// |a - b|
Real dist(const BigComplex& a, const BigComplex& b);
/// log10 of |z|, or a very negative number for 0.
double log10_abs(const BigComplex& z);

}  // namespace cmw
