#include "cmw/qfield.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "cmw/errors.hpp"

namespace cmw {

namespace {

using I128 = __int128;

Int narrow(I128 v) {
  if (v > std::numeric_limits<Int>::max() || v < std::numeric_limits<Int>::min())
    throw std::overflow_error("ideal arithmetic overflow (entries exceed 64 bits)");
  return static_cast<Int>(v);
}

I128 abs128(I128 v) { return v < 0 ? -v : v; }

I128 gcd128(I128 a, I128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    I128 r = a % b;
    a = b;
    b = r;
  }
  return a;
}

I128 mod_floor(I128 a, I128 m) {
  I128 r = a % m;
  return r < 0 ? r + m : r;
}

mpz_class to_mpz(I128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
  mpz_class hi(static_cast<unsigned long>(u >> 64));
  mpz_class lo(static_cast<unsigned long>(u & 0xffffffffffffffffULL));
  mpz_class r = (hi << 64) + lo;
  return neg ? mpz_class(-r) : r;
}

Int to_int(const mpz_class& z) {
  if (!z.fits_slong_p()) throw std::overflow_error("integer does not fit 64 bits");
  return z.get_si();
}

// round(num / den) for den > 0, halves away from -inf
I128 round_div(I128 num, I128 den) {
  I128 n2 = 2 * num + den;
  I128 d2 = 2 * den;
  I128 q = n2 / d2;
  if ((n2 % d2 != 0) && ((n2 < 0) != (d2 < 0))) --q;
  return q;
}

}  // namespace

bool is_prime(Int p) {
  if (p < 2) return false;
  for (Int q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

bool is_squarefree(Int n) {
  n = n < 0 ? -n : n;
  if (n == 0) return false;
  for (Int q = 2; q * q <= n; ++q)
    if (n % (q * q) == 0) return false;
  return true;
}

std::string IdealHNF::str() const {
  std::ostringstream os;
  if (d == 1) {
    os << "(" << a << ")";
  } else {
    os << "(" << a << ", " << b;
    if (c == 1)
      os << "+w)";
    else
      os << "+" << c << "w)";
  }
  if (den != 1) os << "/" << den;
  return os.str();
}

bool enum_less(const IdealHNF& x, const IdealHNF& y) {
  // norms compared as rationals: (ac/den^2)
  I128 lx = static_cast<I128>(x.a) * x.c * y.den * y.den;
  I128 ly = static_cast<I128>(y.a) * y.c * x.den * x.den;
  if (lx != ly) return lx < ly;
  return std::tie(x.a, x.b, x.c, x.den) < std::tie(y.a, y.b, y.c, y.den);
}

std::size_t IdealHash::operator()(const IdealHNF& I) const noexcept {
  std::size_t h = std::hash<Int>{}(I.a);
  auto mix = [&h](Int v) { h ^= std::hash<Int>{}(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
  mix(I.b);
  mix(I.c);
  mix(I.den);
  mix(I.d);
  return h;
}

QuadField QuadField::rational() {
  QuadField K;
  K.rational_ = true;
  K.d_ = 1;
  K.disc_ = 1;
  K.t_ = 0;
  K.n_ = 0;
  K.units_ = {QuadElement(1), QuadElement(-1)};
  return K;
}

QuadField QuadField::imaginary(Int d) {
  if (d >= 0) throw invalid_input("imaginary quadratic field needs d < 0, got " + std::to_string(d));
  if (!is_squarefree(d)) throw invalid_input("d must be squarefree, got " + std::to_string(d));
  QuadField K;
  K.rational_ = false;
  K.d_ = d;
  Int r = ((d % 4) + 4) % 4;
  if (r == 1) {
    K.disc_ = d;
    K.t_ = 1;
    K.n_ = (1 - d) / 4;
  } else {
    K.disc_ = 4 * d;
    K.t_ = 0;
    K.n_ = -d;
  }
  K.units_ = {QuadElement(1), QuadElement(-1)};
  if (d == -1) {
    K.units_.push_back(QuadElement(0, 1));
    K.units_.push_back(QuadElement(0, -1));
  } else if (d == -3) {
    // w^2 = w - 1, so w is a primitive sixth root of unity
    K.units_.push_back(QuadElement(0, 1));
    K.units_.push_back(QuadElement(0, -1));
    K.units_.push_back(QuadElement(-1, 1));
    K.units_.push_back(QuadElement(1, -1));
  }
  return K;
}

QuadField QuadField::from_d(Int d) { return d == 1 ? rational() : imaginary(d); }

std::string QuadField::name() const {
  return rational_ ? std::string("Q") : "Q(sqrt(" + std::to_string(d_) + "))";
}

std::complex<double> QuadField::omega_approx() const {
  if (rational_) return {0.0, 0.0};
  double s = std::sqrt(static_cast<double>(-d_));
  return t_ == 1 ? std::complex<double>(0.5, s / 2) : std::complex<double>(0.0, s);
}

QuadElement QuadField::mul(const QuadElement& u, const QuadElement& v) const {
  mpq_class yy = u.y * v.y;
  return {u.x * v.x - n_ * yy, u.x * v.y + u.y * v.x + t_ * yy};
}

QuadElement QuadField::pow(QuadElement u, unsigned e) const {
  QuadElement r(1);
  while (e) {
    if (e & 1U) r = mul(r, u);
    u = mul(u, u);
    e >>= 1U;
  }
  return r;
}

QuadElement QuadField::conj(const QuadElement& u) const { return {u.x + t_ * u.y, -u.y}; }

mpq_class QuadField::norm(const QuadElement& u) const {
  return u.x * u.x + t_ * u.x * u.y + n_ * u.y * u.y;
}

mpq_class QuadField::trace(const QuadElement& u) const { return 2 * u.x + t_ * u.y; }

QuadElement QuadField::inv(const QuadElement& u) const {
  mpq_class N = norm(u);
  if (N == 0) throw invalid_input("inverse of zero element");
  QuadElement c = conj(u);
  return {c.x / N, c.y / N};
}

bool QuadField::is_integral(const QuadElement& u) const {
  return u.x.get_den() == 1 && u.y.get_den() == 1;
}

std::complex<double> QuadField::approx(const QuadElement& u) const {
  return u.x.get_d() + u.y.get_d() * omega_approx();
}

std::string QuadField::str(const QuadElement& u) const {
  std::ostringstream os;
  os << u.x.get_str();
  if (u.y != 0) os << (u.y > 0 ? "+" : "-") << mpq_class(abs(u.y)).get_str() << "w";
  return os.str();
}

void QuadField::check_same_field(const IdealHNF& x) const {
  if (x.d != d_)
    throw invalid_input("ideal " + x.str() + " belongs to d=" + std::to_string(x.d) +
                        ", not to " + name());
}

IdealHNF QuadField::canonical(Int a, Int b, Int c, Int den) const {
  if (a <= 0 || c <= 0 || den <= 0) throw invalid_input("degenerate lattice");
  IdealHNF I;
  I.d = d_;
  if (rational_) {
    Int g = std::gcd(a, den);
    I.a = a / g;
    I.b = 0;
    I.c = 1;
    I.den = den / g;
    return I;
  }
  b = static_cast<Int>(mod_floor(b, a));
  Int g = std::gcd(std::gcd(a, b), c);
  g = std::gcd(g, den);
  I.a = a / g;
  I.b = b / g;
  I.c = c / g;
  I.den = den / g;
  return I;
}

IdealHNF QuadField::hnf(std::span<const std::pair<I128, I128>> gens, Int den) const {
  std::vector<std::pair<I128, I128>> v;
  for (auto& g : gens)
    if (g.first != 0 || g.second != 0) v.push_back(g);
  if (v.empty()) throw invalid_input("zero ideal");
  if (rational_) {
    I128 a = 0;
    for (auto& g : v) a = gcd128(a, g.first);
    return canonical(narrow(a), 0, 1, den);
  }
  // Euclid on the w-coordinate.
  while (true) {
    std::size_t piv = v.size();
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i].second != 0 && (piv == v.size() || abs128(v[i].second) < abs128(v[piv].second)))
        piv = i;
    if (piv == v.size()) throw invalid_input("lattice has rank < 2 (not an ideal)");
    bool done = true;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i == piv || v[i].second == 0) continue;
      I128 q = v[i].second / v[piv].second;
      v[i].first -= q * v[piv].first;
      v[i].second -= q * v[piv].second;
      if (v[i].second != 0) done = false;
    }
    if (done) {
      auto [b0, c0] = v[piv];
      if (c0 < 0) {
        b0 = -b0;
        c0 = -c0;
      }
      I128 a = 0;
      for (std::size_t i = 0; i < v.size(); ++i)
        if (i != piv) a = gcd128(a, v[i].first);
      if (a == 0) throw invalid_input("lattice has rank < 2 (not an ideal)");
      b0 = mod_floor(b0, a);
      return canonical(narrow(a), narrow(b0), narrow(c0), den);
    }
    // merge the w-free vectors into one and keep first coordinates bounded
    I128 a = 0;
    for (auto& g : v)
      if (g.second == 0) a = gcd128(a, g.first);
    if (a != 0) {
      std::erase_if(v, [](const auto& g) { return g.second == 0; });
      for (auto& g : v) g.first = mod_floor(g.first, a);
      v.emplace_back(a, 0);
    }
  }
}

IdealHNF QuadField::unit_ideal() const { return canonical(1, 0, 1, 1); }

IdealHNF QuadField::ideal(Int a, Int b, Int c, Int den) const {
  if (a <= 0 || c <= 0 || den <= 0) throw invalid_input("ideal needs a, c, den > 0");
  if (rational_) return canonical(a, 0, 1, den);
  if (a % c != 0 || b % c != 0)
    throw invalid_input("(" + std::to_string(a) + "," + std::to_string(b) + "," +
                        std::to_string(c) + ") is not an ideal: c must divide a and b");
  Int A = a / c;
  I128 B = mod_floor(b / c, A);
  I128 f = B * B + t_ * B + n_;
  if (f % A != 0)
    throw invalid_input("(" + std::to_string(a) + "," + std::to_string(b) + "," +
                        std::to_string(c) + ") is not an ideal");
  return canonical(a, c * static_cast<Int>(B), c, den);
}

IdealHNF QuadField::from_generators(std::span<const QuadElement> gens) const {
  mpz_class D = 1;
  for (auto& g : gens) {
    if (rational_ && g.y != 0) throw invalid_input("non-rational element in Q");
    mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), g.x.get_den_mpz_t());
    mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), g.y.get_den_mpz_t());
  }
  std::vector<std::pair<I128, I128>> v;
  std::vector<QuadElement> all(gens.begin(), gens.end());
  // ideal generated, so close under multiplication by w
  if (!rational_)
    for (auto& g : gens) all.push_back(mul(g, omega()));
  for (auto& g : all) {
    mpq_class X = g.x * D, Y = g.y * D;
    v.emplace_back(to_int(X.get_num()), to_int(Y.get_num()));
  }
  return hnf(v, to_int(D));
}

IdealHNF QuadField::principal(const QuadElement& t) const {
  if (t.is_zero()) throw invalid_input("zero ideal");
  QuadElement g[1] = {t};
  return from_generators(g);
}

IdealHNF QuadField::mul(const IdealHNF& x, const IdealHNF& y) const {
  check_same_field(x);
  check_same_field(y);
  I128 den = static_cast<I128>(x.den) * y.den;
  if (rational_) return canonical(narrow(static_cast<I128>(x.a) * y.a), 0, 1, narrow(den));
  // (b + c w)(b' + c' w) = (bb' - n cc') + (bc' + b'c + t cc') w
  I128 cc = static_cast<I128>(x.c) * y.c;
  std::pair<I128, I128> g[4] = {
      {static_cast<I128>(x.a) * y.a, 0},
      {static_cast<I128>(x.a) * y.b, static_cast<I128>(x.a) * y.c},
      {static_cast<I128>(y.a) * x.b, static_cast<I128>(y.a) * x.c},
      {static_cast<I128>(x.b) * y.b - n_ * cc,
       static_cast<I128>(x.b) * y.c + static_cast<I128>(y.b) * x.c + t_ * cc}};
  return hnf(g, narrow(den));
}

IdealHNF QuadField::pow(const IdealHNF& x, unsigned e) const {
  IdealHNF r = unit_ideal(), b = x;
  while (e) {
    if (e & 1U) r = mul(r, b);
    b = mul(b, b);
    e >>= 1U;
  }
  return r;
}

IdealHNF QuadField::conj(const IdealHNF& x) const {
  check_same_field(x);
  if (rational_) return x;
  std::pair<I128, I128> g[2] = {{x.a, 0}, {static_cast<I128>(x.b) + static_cast<I128>(t_) * x.c, -x.c}};
  return hnf(g, x.den);
}

IdealHNF QuadField::inverse(const IdealHNF& x) const {
  check_same_field(x);
  // (L/den)^-1 = den * conj(L) / N(L)
  IdealHNF cj = conj(IdealHNF{x.a, x.b, x.c, 1, x.d});
  Int N = x.lattice_norm();
  if (rational_) return canonical(x.den, 0, 1, x.a);
  return canonical(narrow(static_cast<I128>(cj.a) * x.den), narrow(static_cast<I128>(cj.b) * x.den),
                   narrow(static_cast<I128>(cj.c) * x.den), N);
}

IdealHNF QuadField::add(const IdealHNF& x, const IdealHNF& y) const {
  check_same_field(x);
  check_same_field(y);
  Int L = std::lcm(x.den, y.den);
  Int sx = L / x.den, sy = L / y.den;
  if (rational_) return canonical(std::gcd(x.a * sx, y.a * sy), 0, 1, L);
  std::pair<I128, I128> g[4] = {{static_cast<I128>(x.a) * sx, 0},
                                {static_cast<I128>(x.b) * sx, static_cast<I128>(x.c) * sx},
                                {static_cast<I128>(y.a) * sy, 0},
                                {static_cast<I128>(y.b) * sy, static_cast<I128>(y.c) * sy}};
  return hnf(g, L);
}

IdealHNF QuadField::lcm(const IdealHNF& x, const IdealHNF& y) const {
  return mul(mul(x, y), inverse(add(x, y)));
}

mpq_class QuadField::norm(const IdealHNF& x) const {
  return mpq_class(mpz_class(x.lattice_norm()), mpz_class(x.den) * x.den);
}

bool QuadField::contains(const IdealHNF& x, const QuadElement& u) const {
  check_same_field(x);
  if (rational_ && u.y != 0) return false;
  mpq_class X = u.x * x.den, Y = u.y * x.den;
  if (X.get_den() != 1 || Y.get_den() != 1) return false;
  if (rational_) return mpz_divisible_p(X.get_num_mpz_t(), mpz_class(x.a).get_mpz_t()) != 0;
  mpz_class Yz = Y.get_num(), Xz = X.get_num();
  if (!mpz_divisible_p(Yz.get_mpz_t(), mpz_class(x.c).get_mpz_t())) return false;
  mpz_class k = Yz / x.c;
  mpz_class rest = Xz - k * x.b;
  return mpz_divisible_p(rest.get_mpz_t(), mpz_class(x.a).get_mpz_t()) != 0;
}

bool QuadField::divides(const IdealHNF& x, const IdealHNF& y) const {
  auto B = basis(y);
  return contains(x, B[0]) && contains(x, B[1]);
}

IdealHNF QuadField::quotient(const IdealHNF& y, const IdealHNF& x) const {
  if (!divides(x, y)) throw invalid_input(x.str() + " does not divide " + y.str());
  return mul(y, inverse(x));
}

std::array<QuadElement, 2> QuadField::basis(const IdealHNF& x) const {
  check_same_field(x);
  mpq_class den(x.den);
  if (rational_) return {QuadElement(0), QuadElement(mpq_class(x.a) / den)};
  QuadElement w1{mpq_class(x.b) / den, mpq_class(x.c) / den};
  QuadElement w2{mpq_class(x.a) / den, 0};
  w1.x.canonicalize();
  w1.y.canonicalize();
  w2.x.canonicalize();
  return {w1, w2};
}

std::optional<QuadElement> QuadField::principal_generator(const IdealHNF& x) const {
  check_same_field(x);
  if (rational_) {
    QuadElement g(mpq_class(mpz_class(x.a), mpz_class(x.den)));
    g.x.canonicalize();
    return g;
  }
  auto N = [this](I128 X, I128 Y) { return X * X + t_ * X * Y + n_ * Y * Y; };
  auto B2 = [this](I128 x1, I128 y1, I128 x2, I128 y2) {
    return 2 * x1 * x2 + t_ * (x1 * y2 + y1 * x2) + 2 * n_ * y1 * y2;
  };
  I128 x1 = x.a, y1 = 0, x2 = x.b, y2 = x.c;
  if (N(x2, y2) < N(x1, y1)) {
    std::swap(x1, x2);
    std::swap(y1, y2);
  }
  while (true) {
    I128 m = round_div(B2(x1, y1, x2, y2), 2 * N(x1, y1));
    x2 -= m * x1;
    y2 -= m * y1;
    if (N(x2, y2) < N(x1, y1)) {
      std::swap(x1, x2);
      std::swap(y1, y2);
    } else {
      break;
    }
  }
  if (N(x1, y1) != static_cast<I128>(x.a) * x.c) return std::nullopt;
  mpq_class den(x.den);
  QuadElement g{mpq_class(to_mpz(x1)) / den, mpq_class(to_mpz(y1)) / den};
  g.x.canonicalize();
  g.y.canonicalize();
  return g;
}

std::vector<IdealHNF> QuadField::enumerate_ideals(Int bound) const {
  std::vector<IdealHNF> out;
  if (bound < 1) return out;
  if (rational_) {
    for (Int n = 1; n <= bound; ++n) out.push_back(canonical(n, 0, 1, 1));
    return out;
  }
  for (Int c = 1; c * c <= bound; ++c) {
    for (Int A = 1; A * c * c <= bound; ++A) {
      for (Int B = 0; B < A; ++B) {
        I128 f = static_cast<I128>(B) * B + t_ * B + n_;
        if (f % A != 0) continue;
        IdealHNF I;
        I.a = c * A;
        I.b = c * B;
        I.c = c;
        I.den = 1;
        I.d = d_;
        out.push_back(I);
      }
    }
  }
  std::sort(out.begin(), out.end(), enum_less);
  return out;
}

PrimeSplitting QuadField::factor_prime(Int p) const {
  if (!is_prime(p)) throw invalid_input(std::to_string(p) + " is not prime");
  PrimeSplitting s{PrimeSplitting::Kind::rational, p, {}, 0};
  if (rational_) {
    s.primes.push_back(canonical(p, 0, 1, 1));
    return s;
  }
  if (p == 2) {
    Int r = ((disc_ % 8) + 8) % 8;
    s.kronecker = (r % 2 == 0) ? 0 : ((r == 1 || r == 7) ? 1 : -1);
  } else {
    mpz_class D(disc_), P(p);
    s.kronecker = mpz_kronecker(D.get_mpz_t(), P.get_mpz_t());
  }
  for (Int B = 0; B < p; ++B) {
    I128 f = static_cast<I128>(B) * B + t_ * B + n_;
    if (f % p == 0) s.primes.push_back(canonical(p, B, 1, 1));
  }
  if (s.primes.empty()) {
    s.kind = PrimeSplitting::Kind::inert;
    s.primes.push_back(ideal(p, 0, p));  // (p) = Z p + Z p w
  } else if (s.primes.size() == 1) {
    s.kind = PrimeSplitting::Kind::ramified;
  } else {
    s.kind = PrimeSplitting::Kind::split;
  }
  int expect = s.kind == PrimeSplitting::Kind::split ? 1 : s.kind == PrimeSplitting::Kind::inert ? -1 : 0;
  if (expect != s.kronecker)
    throw std::logic_error("prime splitting disagrees with Kronecker symbol at p=" + std::to_string(p));
  std::sort(s.primes.begin(), s.primes.end(), enum_less);
  return s;
}

std::vector<IdealHNF> QuadField::primes_up_to(Int bound) const {
  std::vector<IdealHNF> out;
  for (Int p = 2; p <= bound; ++p) {
    if (!is_prime(p)) continue;
    for (auto& P : factor_prime(p).primes)
      if (P.lattice_norm() <= bound) out.push_back(P);
  }
  std::sort(out.begin(), out.end(), enum_less);
  return out;
}

std::vector<PrimePower> QuadField::factor(const IdealHNF& x) const {
  check_same_field(x);
  if (!x.integral()) throw invalid_input("factor needs an integral ideal");
  std::vector<PrimePower> out;
  Int N = x.lattice_norm();
  for (Int p = 2; p <= N; ++p) {
    if (N % p != 0 || !is_prime(p)) continue;
    for (auto& P : factor_prime(p).primes) {
      int e = 0;
      IdealHNF Pe = P;
      while (divides(Pe, x)) {
        ++e;
        Pe = mul(Pe, P);
      }
      if (e > 0) out.emplace_back(P, e);
    }
    while (N % p == 0) N /= p;
  }
  return out;
}

std::vector<IdealHNF> QuadField::divisors(const IdealHNF& x) const {
  std::vector<IdealHNF> out = {unit_ideal()};
  for (auto& [P, e] : factor(x)) {
    std::vector<IdealHNF> next;
    for (auto& D : out) {
      IdealHNF cur = D;
      for (int k = 0; k <= e; ++k) {
        next.push_back(cur);
        cur = mul(cur, P);
      }
    }
    out = std::move(next);
  }
  std::sort(out.begin(), out.end(), enum_less);
  return out;
}

ClassGroup QuadField::class_group() const {
  ClassGroup G;
  if (rational_) {
    G.h = 1;
    G.reps = {unit_ideal()};
    return G;
  }
  Int D = disc_;
  for (Int a = 1; 3 * a * a <= -D; ++a) {
    for (Int b = -a + 1; b <= a; ++b) {
      if (((b - D) % 2) != 0) continue;
      Int num = b * b - D;
      if (num % (4 * a) != 0) continue;
      Int c = num / (4 * a);
      if (c < a) continue;
      if (a == c && b < 0) continue;
      if (std::gcd(std::gcd(a, b), c) != 1) continue;
      G.forms.push_back({a, b, c});
      // ideal Z a + Z (-b + sqrt D)/2
      QuadElement g = t_ == 1 ? QuadElement(mpq_class(-b - 1, 2), 1) : QuadElement(mpq_class(-b, 2), 1);
      g.x.canonicalize();
      std::pair<I128, I128> gens[2] = {{a, 0}, {to_int(g.x.get_num()), 1}};
      G.reps.push_back(hnf(gens, 1));
    }
  }
  G.h = static_cast<Int>(G.forms.size());
  return G;
}

}  // namespace cmw
