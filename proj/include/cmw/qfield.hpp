#pragma once

// Exact arithmetic in Q and imaginary quadratic fields Q(sqrt d): elements in
// the basis {1, w} of the ring of integers, ideals in Hermite normal form.

#include <gmpxx.h>

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace cmw {

using Int = std::int64_t;

/// x + y*w with w the integral generator of the field (y == 0 over Q).
struct QuadElement {
  mpq_class x{0}, y{0};

  QuadElement() = default;
  QuadElement(mpq_class x_, mpq_class y_ = 0) : x(std::move(x_)), y(std::move(y_)) {}
  QuadElement(long v) : x(v), y(0) {}

  friend bool operator==(const QuadElement& u, const QuadElement& v) {
    return u.x == v.x && u.y == v.y;
  }
  friend QuadElement operator+(const QuadElement& u, const QuadElement& v) {
    return {u.x + v.x, u.y + v.y};
  }
  friend QuadElement operator-(const QuadElement& u, const QuadElement& v) {
    return {u.x - v.x, u.y - v.y};
  }
  friend QuadElement operator-(const QuadElement& u) { return {-u.x, -u.y}; }
  friend QuadElement operator*(const mpq_class& s, const QuadElement& u) {
    return {s * u.x, s * u.y};
  }
  bool is_zero() const { return x == 0 && y == 0; }
  bool is_rational() const { return y == 0; }
};

/// The lattice (1/den) * (Z*a + Z*(b + c*w)).
///
/// Canonical form: c | a, c | b, 0 <= b < a, and gcd(content, den) == 1.  The
/// field tag `d` is 1 for Q.  Over Q an ideal (n)/den is stored as (n, 0, 1).
struct IdealHNF {
  Int a = 1, b = 0, c = 1, den = 1;
  Int d = 0;

  bool integral() const { return den == 1; }
  /// Norm of the integral part.
  Int lattice_norm() const { return a * c; }

  friend bool operator==(const IdealHNF&, const IdealHNF&) = default;
  std::string str() const;
};

/// Enumeration order: norm, then (a, b, c), then den.  This is the indexing
/// contract for every truncated vector.
bool enum_less(const IdealHNF& x, const IdealHNF& y);

struct IdealHash {
  std::size_t operator()(const IdealHNF& I) const noexcept;
};

struct PrimeSplitting {
  enum class Kind { rational, inert, split, ramified };
  Kind kind;
  Int p;
  std::vector<IdealHNF> primes;  // canonical order
  int kronecker = 0;             // (disc / p); 0 for the rational field
};

struct ClassGroup {
  Int h = 1;
  std::vector<IdealHNF> reps;               // one integral ideal per class
  std::vector<std::array<Int, 3>> forms;    // reduced forms (a, b, c)
};

/// A prime ideal with its exponent.
using PrimePower = std::pair<IdealHNF, int>;

class QuadField {
 public:
  static QuadField rational();
  /// d squarefree, d < 0.
  static QuadField imaginary(Int d);
  /// d == 1 selects Q.
  static QuadField from_d(Int d);

  bool is_rational() const { return rational_; }
  Int d() const { return d_; }
  Int disc() const { return disc_; }
  /// w^2 = t*w - n.
  Int omega_trace() const { return t_; }
  Int omega_norm() const { return n_; }
  const std::vector<QuadElement>& units() const { return units_; }
  QuadElement omega() const { return {0, rational_ ? 0 : 1}; }
  std::complex<double> omega_approx() const;
  std::string name() const;

  friend bool operator==(const QuadField& x, const QuadField& y) { return x.d_ == y.d_; }

  // elements
  QuadElement mul(const QuadElement& u, const QuadElement& v) const;
  QuadElement pow(QuadElement u, unsigned e) const;
  QuadElement conj(const QuadElement& u) const;
  QuadElement inv(const QuadElement& u) const;
  mpq_class norm(const QuadElement& u) const;
  mpq_class trace(const QuadElement& u) const;
  bool is_integral(const QuadElement& u) const;
  std::complex<double> approx(const QuadElement& u) const;
  std::string str(const QuadElement& u) const;

  // ideals
  IdealHNF unit_ideal() const;
  /// Validates and canonicalizes (a, b, c)/den; throws if not an ideal.
  IdealHNF ideal(Int a, Int b, Int c, Int den = 1) const;
  IdealHNF principal(const QuadElement& t) const;
  IdealHNF from_generators(std::span<const QuadElement> gens) const;
  IdealHNF mul(const IdealHNF& x, const IdealHNF& y) const;
  IdealHNF pow(const IdealHNF& x, unsigned e) const;
  IdealHNF conj(const IdealHNF& x) const;
  IdealHNF inverse(const IdealHNF& x) const;
  /// x + y, i.e. gcd for integral ideals.
  IdealHNF add(const IdealHNF& x, const IdealHNF& y) const;
  IdealHNF lcm(const IdealHNF& x, const IdealHNF& y) const;
  /// x | y for integral ideals (y subset of x).
  bool divides(const IdealHNF& x, const IdealHNF& y) const;
  /// y / x for integral ideals with x | y.
  IdealHNF quotient(const IdealHNF& y, const IdealHNF& x) const;
  mpq_class norm(const IdealHNF& x) const;
  bool contains(const IdealHNF& x, const QuadElement& u) const;
  /// Z-basis (w1, w2) with w1 = (b + c*w)/den, w2 = a/den; Im(w1/w2) > 0.
  std::array<QuadElement, 2> basis(const IdealHNF& x) const;

  std::optional<QuadElement> principal_generator(const IdealHNF& x) const;
  std::vector<IdealHNF> enumerate_ideals(Int bound) const;
  PrimeSplitting factor_prime(Int p) const;
  /// All prime ideals of norm <= bound, in enumeration order.
  std::vector<IdealHNF> primes_up_to(Int bound) const;
  std::vector<PrimePower> factor(const IdealHNF& x) const;
  /// All integral divisors, in enumeration order.
  std::vector<IdealHNF> divisors(const IdealHNF& x) const;
  ClassGroup class_group() const;

  void check_same_field(const IdealHNF& x) const;

 private:
  QuadField() = default;

  IdealHNF canonical(Int a, Int b, Int c, Int den) const;
  IdealHNF hnf(std::span<const std::pair<__int128, __int128>> gens, Int den) const;

  bool rational_ = true;
  Int d_ = 1, disc_ = 1, t_ = 0, n_ = 0;
  std::vector<QuadElement> units_;
};

bool is_prime(Int p);
bool is_squarefree(Int n);

}  // namespace cmw
