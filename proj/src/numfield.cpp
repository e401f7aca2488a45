#include "cmw/numfield.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "cmw/errors.hpp"

namespace cmw {

namespace poly {

void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const QPoly& p) {
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
    if (p[i] != 0) return i;
  return -1;
}

QPoly add(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  trim(r);
  return r;
}

QPoly sub(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

QPoly mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
  int db = degree(b);
  if (db < 0) throw invalid_input("polynomial division by zero");
  QPoly r = a;
  trim(r);
  QPoly q;
  int dr = degree(r);
  if (dr >= db) q.assign(dr - db + 1, 0);
  while ((dr = degree(r)) >= db) {
    mpq_class f = r[dr] / b[db];
    q[dr - db] = f;
    for (int i = 0; i <= db; ++i) r[dr - db + i] -= f * b[i];
    r.resize(dr);
    trim(r);
  }
  trim(q);
  return {q, r};
}

QPoly derivative(const QPoly& a) {
  QPoly r;
  for (std::size_t i = 1; i < a.size(); ++i) r.push_back(a[i] * static_cast<long>(i));
  trim(r);
  return r;
}

QPoly monic(QPoly a) {
  trim(a);
  if (a.empty()) return a;
  mpq_class lc = a.back();
  for (auto& c : a) c /= lc;
  return a;
}

QPoly gcd(QPoly a, QPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

QPoly from_z(const ZPoly& p) {
  QPoly r(p.begin(), p.end());
  trim(r);
  return r;
}

bool has_integer_coeffs(const QPoly& p) {
  for (auto& c : p)
    if (c.get_den() != 1) return false;
  return true;
}

ZPoly primitive_part(const QPoly& p) {
  QPoly q = p;
  trim(q);
  if (q.empty()) return {};
  mpz_class L = 1;
  for (auto& c : q) mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), c.get_den_mpz_t());
  ZPoly z;
  mpz_class g = 0;
  for (auto& c : q) {
    mpq_class s = c * L;
    z.push_back(s.get_num());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.back().get_mpz_t());
  }
  if (z.back() < 0) g = -g;
  for (auto& c : z) c /= g;
  return z;
}

BigComplex eval(const QPoly& p, const BigComplex& x) {
  BigComplex r(0);
  for (std::size_t i = p.size(); i-- > 0;) {
    r *= x;
    r.re += Real(p[i].get_mpq_t());
  }
  return r;
}

BigComplex eval(const ZPoly& p, const BigComplex& x) {
  BigComplex r(0);
  for (std::size_t i = p.size(); i-- > 0;) {
    r *= x;
    r.re += Real(p[i].get_mpz_t());
  }
  return r;
}

ZPoly cyclotomic(unsigned m) {
  if (m == 0) throw invalid_input("cyclotomic polynomial of order 0");
  // x^m - 1 divided by Phi_d for every proper divisor d of m
  QPoly num(m + 1, 0);
  num[0] = -1;
  num[m] = 1;
  for (unsigned d = 1; d < m; ++d) {
    if (m % d) continue;
    num = divmod(num, from_z(cyclotomic(d))).first;
  }
  ZPoly r;
  for (auto& c : num) r.push_back(c.get_num());
  return r;
}

namespace {
template <class P>
std::string render(const P& p) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = p.size(); i-- > 0;) {
    if (p[i] == 0) continue;
    auto c = p[i];
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    decltype(c) a = abs(c);
    if (a != 1 || i == 0) os << a.get_str();
    if (i > 0) os << (a != 1 ? "*" : "") << "X" << (i > 1 ? "^" + std::to_string(i) : "");
    first = false;
  }
  if (first) os << "0";
  return os.str();
}
}  // namespace

std::string str(const QPoly& p) { return render(p); }
std::string str(const ZPoly& p) { return render(p); }

}  // namespace poly

std::shared_ptr<const NumberField> NumberField::cyclotomic(unsigned m) {
  static std::mutex mu;
  static std::map<unsigned, std::shared_ptr<const NumberField>> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  std::shared_ptr<NumberField> F(new NumberField());
  F->modulus_ = poly::cyclotomic(m);
  F->qmod_ = poly::from_z(F->modulus_);
  F->conductor_ = m;
  cache[m] = F;
  return F;
}

std::shared_ptr<const NumberField> NumberField::make(ZPoly modulus, const BigComplex& root) {
  if (modulus.size() < 2 || modulus.back() != 1)
    throw invalid_input("number field modulus must be monic of degree >= 1");
  if (poly::degree(poly::gcd(poly::from_z(modulus), poly::derivative(poly::from_z(modulus)))) > 0)
    throw invalid_input("number field modulus must be squarefree");
  {
    // |P(root)| relative to sum |c_i| |root|^i
    PrecisionGuard g(static_cast<unsigned>(root.re.precision()));
    Real r = root.abs(), acc = 0, rk = 1;
    for (const auto& c : modulus) {
      acc += abs(Real(c.get_mpz_t())) * rk;
      rk *= r;
    }
    double rel = log10_abs(poly::eval(modulus, root)) - std::log10(std::max(1.0, acc.convert_to<double>()));
    if (rel > -static_cast<double>(root.re.precision()) / 2)
      throw invalid_input("chosen root does not satisfy the modulus");
  }
  std::shared_ptr<NumberField> F(new NumberField());
  F->modulus_ = std::move(modulus);
  F->qmod_ = poly::from_z(F->modulus_);
  F->root_digits_ = static_cast<unsigned>(root.re.precision());
  F->root_re_ = root.re_str(F->root_digits_ + 5);
  F->root_im_ = root.im_str(F->root_digits_ + 5);
  return F;
}

QPoly NumberField::reduce(QPoly p) const {
  poly::trim(p);
  if (poly::degree(p) >= degree()) p = poly::divmod(p, qmod_).second;
  p.resize(degree(), 0);
  return p;
}

NfElement NumberField::zero() const { return {QPoly(degree(), 0)}; }
NfElement NumberField::one() const { return from_rational(1); }

NfElement NumberField::from_rational(const mpq_class& q) const {
  NfElement e = zero();
  e.c[0] = q;
  e.c[0].canonicalize();
  return e;
}

NfElement NumberField::gen_pow(long k) const {
  if (k < 0) {
    if (!is_cyclotomic()) throw invalid_input("negative power of a general field generator");
    long m = conductor_;
    k = ((k % m) + m) % m;
  }
  if (is_cyclotomic()) k %= static_cast<long>(conductor_);
  QPoly p(k + 1, 0);
  p[k] = 1;
  return {reduce(p)};
}

NfElement NumberField::from_poly(const QPoly& p) const {
  QPoly q = p;
  for (auto& c : q) c.canonicalize();
  return {reduce(std::move(q))};
}

NfElement NumberField::add(const NfElement& a, const NfElement& b) const {
  NfElement r = a;
  for (int i = 0; i < degree(); ++i) r.c[i] += b.c[i];
  return r;
}

NfElement NumberField::sub(const NfElement& a, const NfElement& b) const {
  NfElement r = a;
  for (int i = 0; i < degree(); ++i) r.c[i] -= b.c[i];
  return r;
}

NfElement NumberField::neg(const NfElement& a) const {
  NfElement r = a;
  for (auto& c : r.c) c = -c;
  return r;
}

NfElement NumberField::mul(const NfElement& a, const NfElement& b) const {
  return {reduce(poly::mul(a.c, b.c))};
}

NfElement NumberField::pow(NfElement a, unsigned e) const {
  NfElement r = one();
  while (e) {
    if (e & 1U) r = mul(r, a);
    a = mul(a, a);
    e >>= 1U;
  }
  return r;
}

NfElement NumberField::scale(const NfElement& a, const mpq_class& s) const {
  NfElement r = a;
  for (auto& c : r.c) c *= s;
  return r;
}

NfElement NumberField::inv(const NfElement& a) const {
  if (is_zero(a)) throw invalid_input("inverse of zero");
  // s*a + t*P = g with g a nonzero constant when P is irreducible
  QPoly r0 = qmod_, r1 = a.c, s0, s1 = {1};
  poly::trim(r1);
  while (poly::degree(r1) > 0) {
    auto [q, r] = poly::divmod(r0, r1);
    QPoly s2 = poly::sub(s0, poly::mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r1.empty()) throw invalid_input("element is a zero divisor; modulus is reducible");
  mpq_class g = r1[0];
  QPoly out = s1;
  for (auto& c : out) c /= g;
  return {reduce(out)};
}

NfElement NumberField::eval(const QPoly& p, const NfElement& a) const {
  NfElement r = zero();
  for (std::size_t i = p.size(); i-- > 0;) {
    r = mul(r, a);
    r.c[0] += p[i];
  }
  return r;
}

bool NumberField::is_zero(const NfElement& a) const {
  for (auto& c : a.c)
    if (c != 0) return false;
  return true;
}

QPoly NumberField::charpoly(const NfElement& a) const {
  const int n = degree();
  // column j of A is a * x^j
  std::vector<std::vector<mpq_class>> A(n, std::vector<mpq_class>(n));
  NfElement col = a;
  NfElement x = gen_pow(1);
  if (n == 1) x = one();
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) A[i][j] = col.c[i];
    col = mul(col, n == 1 ? one() : x);
  }
  // Faddeev-LeVerrier
  QPoly c(n + 1, 0);
  c[n] = 1;
  std::vector<std::vector<mpq_class>> M(n, std::vector<mpq_class>(n, 0)), AM(n, std::vector<mpq_class>(n));
  for (int k = 1; k <= n; ++k) {
    for (int i = 0; i < n; ++i) M[i][i] += c[n - k + 1];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        mpq_class s = 0;
        for (int l = 0; l < n; ++l) s += A[i][l] * M[l][j];
        AM[i][j] = s;
      }
    mpq_class tr = 0;
    for (int i = 0; i < n; ++i) tr += AM[i][i];
    c[n - k] = -tr / k;
    M = AM;
  }
  return c;
}

QPoly NumberField::minpoly(const NfElement& a) const {
  QPoly ch = charpoly(a);
  QPoly g = poly::gcd(ch, poly::derivative(ch));
  return poly::monic(poly::divmod(ch, g).first);
}

bool NumberField::is_algebraic_integer(const NfElement& a) const {
  // Z[zeta_m] is the full ring of integers, so the power basis decides
  if (is_cyclotomic()) return poly::has_integer_coeffs(a.c);
  return poly::has_integer_coeffs(minpoly(a));
}

BigComplex NumberField::root() const {
  if (is_cyclotomic()) return exp2pii(BigComplex(Real(1) / Real(conductor_)));
  BigComplex z = BigComplex::parse(root_re_, root_im_);
  unsigned want = Real::default_precision();
  if (want > root_digits_) {
    QPoly dp = poly::derivative(qmod_);
    // Newton doubles the correct digits per step
    for (unsigned have = root_digits_ / 2 + 1; have < 2 * want + 10; have *= 2)
      z -= poly::eval(qmod_, z) / poly::eval(dp, z);
    z -= poly::eval(qmod_, z) / poly::eval(dp, z);
  }
  return z;
}

BigComplex NumberField::embed(const NfElement& a) const { return poly::eval(a.c, root()); }

std::string NumberField::str(const NfElement& a) const {
  std::string s = poly::str(a.c);
  if (is_cyclotomic()) {
    std::string z = "z" + std::to_string(conductor_);
    std::string out;
    for (char ch : s) {
      if (ch == 'X')
        out += z;
      else
        out += ch;
    }
    return out;
  }
  return s;
}

std::string NumberField::describe() const {
  if (is_cyclotomic()) return "Q(zeta_" + std::to_string(conductor_) + ")";
  return "Q[X]/(" + poly::str(modulus_) + ")";
}

}  // namespace cmw
