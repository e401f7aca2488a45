#include "cmw/bigcomplex.hpp"

#include <sstream>

namespace cmw {

PrecisionGuard::PrecisionGuard(unsigned digits) : saved_(Real::default_precision()) {
  Real::default_precision(digits);
}

PrecisionGuard::~PrecisionGuard() { Real::default_precision(saved_); }

Real at_default(const Real& x) {
  unsigned p = Real::default_precision();
  if (x.precision() == p) return x;
  return Real(x, p);
}

BigComplex BigComplex::parse(const std::string& r, const std::string& i) {
  BigComplex z;
  z.re = Real(r);
  z.im = Real(i);
  return z;
}

BigComplex& BigComplex::operator+=(const BigComplex& o) {
  re += o.re;
  im += o.im;
  return *this;
}

BigComplex& BigComplex::operator-=(const BigComplex& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

BigComplex& BigComplex::operator*=(const BigComplex& o) {
  Real r = re * o.re - im * o.im;
  Real i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

BigComplex& BigComplex::operator/=(const BigComplex& o) {
  Real n = o.norm();
  Real r = (re * o.re + im * o.im) / n;
  Real i = (im * o.re - re * o.im) / n;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

Real BigComplex::abs() const { return boost::multiprecision::sqrt(norm()); }

BigComplex BigComplex::pow(long e) const {
  if (e < 0) return BigComplex(1) / pow(-e);
  BigComplex r(1), b = *this;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

namespace {
std::string render(const Real& x, unsigned digits) {
  std::ostringstream os;
  os << std::setprecision(static_cast<int>(digits)) << std::scientific << x;
  return os.str();
}
}  // namespace

std::string BigComplex::re_str(unsigned digits) const { return render(re, digits); }
std::string BigComplex::im_str(unsigned digits) const { return render(im, digits); }

std::string BigComplex::str(unsigned digits) const {
  std::ostringstream os;
  os << std::setprecision(static_cast<int>(digits)) << re << (im < 0 ? " - " : " + ");
  os << std::setprecision(static_cast<int>(digits)) << boost::multiprecision::abs(im) << "i";
  return os.str();
}

Real pi_real() { return boost::multiprecision::acos(Real(-1)); }

BigComplex exp(const BigComplex& z) {
  Real m = boost::multiprecision::exp(z.re);
  return BigComplex(m * boost::multiprecision::cos(z.im), m * boost::multiprecision::sin(z.im));
}

BigComplex exp2pii(const BigComplex& z) {
  Real tp = 2 * pi_real();
  return exp(BigComplex(-tp * z.im, tp * z.re));
}

BigComplex sqrt(const BigComplex& z) {
  Real r = z.abs();
  if (r == 0) return BigComplex(0);
  Real a = boost::multiprecision::sqrt((r + z.re) / 2);
  Real b = boost::multiprecision::sqrt((r - z.re) / 2);
  if (z.im < 0) b = -b;
  return BigComplex(a, b);
}

Real dist(const BigComplex& a, const BigComplex& b) { return (a - b).abs(); }

double log10_abs(const BigComplex& z) {
  Real r = z.abs();
  if (r == 0) return -1e9;
  return boost::multiprecision::log10(r).convert_to<double>();
}

}  // namespace cmw
