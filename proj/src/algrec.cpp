#include "cmw/algrec.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cmw/errors.hpp"
#include "cmw/modular.hpp"

namespace cmw {

namespace {

mpz_class dot(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
  mpz_class s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

mpz_class exact_div(const mpz_class& a, const mpz_class& b) {
  mpz_class r;
  mpz_divexact(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

// nearest integer to a / b for b > 0
mpz_class round_div(const mpz_class& a, const mpz_class& b) {
  mpz_class r;
  mpz_class num = 2 * a + b, den = 2 * b;
  mpz_fdiv_q(r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return r;
}

double log10_mpz(const mpz_class& z) {
  if (z == 0) return -1e9;
  long e;
  double m = mpz_get_d_2exp(&e, z.get_mpz_t());
  return std::log10(std::fabs(m)) + static_cast<double>(e) * std::log10(2.0);
}

double log10_norm(const std::vector<mpz_class>& v, std::size_t count) {
  mpz_class s = 0;
  for (std::size_t i = 0; i < count; ++i) s += v[i] * v[i];
  return log10_mpz(s) / 2;
}

Real pow10(long e) { return boost::multiprecision::pow(Real(10), e); }

bool looks_real(const BigComplex& x, unsigned prec) {
  return boost::multiprecision::abs(x.im) < pow10(-static_cast<long>(prec / 2)) * std::max(Real(1), x.abs());
}

// LLL-reduced rows of [e_i | round(10^w Re v_i) | round(10^w Im v_i)]
IntMatrix relation_rows(const std::vector<BigComplex>& v, long w, bool use_im) {
  Real S = pow10(w);
  const std::size_t m = v.size();
  IntMatrix B(m);
  for (std::size_t i = 0; i < m; ++i) {
    B[i].assign(m, 0);
    B[i][i] = 1;
    B[i].push_back(round_to_mpz(S * v[i].re));
    if (use_im) B[i].push_back(round_to_mpz(S * v[i].im));
  }
  return lll_reduce(std::move(B));
}

// Log10 of the typical shortest vector when no relation exists.
double generic_size(long w, bool use_im, std::size_t m) {
  return (use_im ? 2 : 1) * static_cast<double>(w) / static_cast<double>(m);
}

// Scalings used for a search. A genuine relation shows up at both; a
// lattice accident (e.g. z^2 + 1 = 2 Re(z) z on the unit circle) moves
// with the scaling.
std::pair<long, long> scalings(unsigned prec) {
  const long w1 = static_cast<long>(prec) - 10;
  return {w1, w1 - std::max(6L, w1 / 10)};
}

std::vector<mpz_class> primitive(std::vector<mpz_class> c) {
  mpz_class g = 0;
  for (auto& x : c) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (g == 0) return c;
  std::size_t lead = c.size();
  while (lead > 0 && c[lead - 1] == 0) --lead;
  if (lead > 0 && c[lead - 1] < 0) g = -g;
  for (auto& x : c) x /= g;
  return c;
}

constexpr double kMargin = 10;

}  // namespace

mpz_class round_to_mpz(const Real& x) {
  mpz_class z;
  Real r = boost::multiprecision::round(x);
  mpfr_get_z(z.get_mpz_t(), r.backend().data(), MPFR_RNDN);
  return z;
}

IntMatrix lll_reduce(IntMatrix Bin, const mpq_class& delta) {
  const int n = static_cast<int>(Bin.size());
  if (n == 0) return Bin;
  const mpz_class p = delta.get_num(), q = delta.get_den();
  // 1-based as in the integral algorithm
  std::vector<std::vector<mpz_class>> b(n + 1);
  for (int i = 1; i <= n; ++i) b[i] = std::move(Bin[i - 1]);
  std::vector<mpz_class> d(n + 1, 0);
  std::vector<std::vector<mpz_class>> lam(n + 1, std::vector<mpz_class>(n + 1, 0));
  d[0] = 1;
  d[1] = dot(b[1], b[1]);
  if (d[1] == 0) throw invalid_input("LLL input rows are dependent");

  auto red = [&](int k, int l) {
    mpz_class twice = 2 * abs(lam[k][l]);
    if (twice <= d[l]) return;
    mpz_class r = round_div(lam[k][l], d[l]);
    for (std::size_t c = 0; c < b[k].size(); ++c) b[k][c] -= r * b[l][c];
    lam[k][l] -= r * d[l];
    for (int i = 1; i < l; ++i) lam[k][i] -= r * lam[l][i];
  };

  int k = 2, kmax = 1;
  while (k <= n) {
    if (k > kmax) {
      kmax = k;
      for (int j = 1; j <= k; ++j) {
        mpz_class u = dot(b[k], b[j]);
        for (int i = 1; i < j; ++i) u = exact_div(d[i] * u - lam[k][i] * lam[j][i], d[i - 1]);
        if (j < k) {
          lam[k][j] = u;
        } else {
          d[k] = u;
          if (u == 0) throw invalid_input("LLL input rows are dependent");
        }
      }
    }
    red(k, k - 1);
    const mpz_class& L = lam[k][k - 1];
    if (q * d[k] * d[k - 2] < p * d[k - 1] * d[k - 1] - q * L * L) {
      std::swap(b[k], b[k - 1]);
      for (int j = 1; j <= k - 2; ++j) std::swap(lam[k][j], lam[k - 1][j]);
      mpz_class l = lam[k][k - 1];
      mpz_class Bv = exact_div(d[k - 2] * d[k] + l * l, d[k - 1]);
      for (int i = k + 1; i <= kmax; ++i) {
        mpz_class t = lam[i][k];
        lam[i][k] = exact_div(d[k] * lam[i][k - 1] - l * t, d[k - 1]);
        lam[i][k - 1] = exact_div(Bv * t + l * lam[i][k], d[k]);
      }
      d[k - 1] = Bv;
      k = std::max(2, k - 1);
    } else {
      for (int l = k - 2; l >= 1; --l) red(k, l);
      ++k;
    }
  }
  IntMatrix out(n);
  for (int i = 1; i <= n; ++i) out[i - 1] = std::move(b[i]);
  if (!is_lll_reduced(out, delta)) throw std::logic_error("LLL output fails the reducedness check");
  return out;
}

bool is_lll_reduced(const IntMatrix& B, const mpq_class& delta) {
  const std::size_t n = B.size();
  if (n == 0) return true;
  const std::size_t m = B[0].size();
  std::vector<std::vector<mpq_class>> bs(n, std::vector<mpq_class>(m));
  std::vector<mpq_class> nb(n);
  std::vector<std::vector<mpq_class>> mu(n, std::vector<mpq_class>(n, 0));
  const mpq_class half(1, 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < m; ++c) bs[i][c] = B[i][c];
    for (std::size_t j = 0; j < i; ++j) {
      mpq_class s = 0;
      for (std::size_t c = 0; c < m; ++c) s += mpq_class(B[i][c]) * bs[j][c];
      mu[i][j] = s / nb[j];
      if (abs(mu[i][j]) > half) return false;
      for (std::size_t c = 0; c < m; ++c) bs[i][c] -= mu[i][j] * bs[j][c];
    }
    nb[i] = 0;
    for (std::size_t c = 0; c < m; ++c) nb[i] += bs[i][c] * bs[i][c];
    if (nb[i] == 0) return false;
    if (i > 0 && nb[i] < (delta - mu[i][i - 1] * mu[i][i - 1]) * nb[i - 1]) return false;
  }
  return true;
}

bool IntPoly::monic_primitive() const {
  if (coeffs.empty()) return false;
  mpz_class g = 0;
  for (auto& c : coeffs) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return abs(coeffs.back()) == g;
}

std::string IntPoly::residual_str() const {
  std::ostringstream os;
  if (residual_log10 < -1e8) return "0";
  os << "1e" << static_cast<long>(std::ceil(residual_log10));
  return os.str();
}

IntPoly minpoly(const BigComplex& x_in, int dmax, unsigned prec) {
  if (dmax < 1) throw invalid_input("dmax must be positive");
  if (prec < 30) throw invalid_input("minpoly needs at least 30 digits");
  PrecisionGuard g(prec + 20);
  BigComplex x(x_in.re, x_in.im);
  const bool use_im = !looks_real(x, prec);
  if (!use_im) x.im = 0;
  std::vector<BigComplex> pw = {BigComplex(1)};
  const double accept = -static_cast<double>(prec) / 4;
  const auto [w1, w2] = scalings(prec);
  auto search = [&](int d, long w) -> std::optional<std::vector<mpz_class>> {
    double G = generic_size(w, use_im, pw.size());
    if (G <= kMargin) return std::nullopt;
    for (const auto& r : relation_rows(pw, w, use_im)) {
      if (r[d] == 0) continue;
      if (log10_norm(r, d + 1) >= G - kMargin) continue;
      return std::vector<mpz_class>(r.begin(), r.begin() + d + 1);
    }
    return std::nullopt;
  };
  for (int d = 1; d <= dmax; ++d) {
    pw.push_back(pw.back() * x);
    if (generic_size(w1, use_im, pw.size()) <= kMargin) break;
    auto c1 = search(d, w1);
    if (!c1) continue;
    auto c2 = search(d, w2);
    if (!c2 || primitive(*c1) != primitive(*c2)) continue;
    BigComplex val(0);
    for (int i = d; i >= 0; --i) val = val * x + BigComplex(Real((*c1)[i].get_mpz_t()));
    double res = log10_abs(val);
    if (res >= accept) continue;
    IntPoly P;
    P.coeffs = std::move(*c1);
    if (P.coeffs.back() < 0)
      for (auto& c : P.coeffs) c = -c;
    P.residual_log10 = res;
    P.content = 0;
    for (auto& c : P.coeffs) mpz_gcd(P.content.get_mpz_t(), P.content.get_mpz_t(), c.get_mpz_t());
    return P;
  }
  throw no_relation("no integer polynomial of degree <= " + std::to_string(dmax) + " found at " +
                    std::to_string(prec) + " digits");
}

std::optional<QPoly> express_in(const BigComplex& beta_in, const BigComplex& gamma_in, int D, unsigned prec) {
  PrecisionGuard g(prec + 20);
  BigComplex beta(beta_in.re, beta_in.im), gamma(gamma_in.re, gamma_in.im);
  const bool use_im = !looks_real(beta, prec) || !looks_real(gamma, prec);
  std::vector<BigComplex> v = {beta, BigComplex(1)};
  for (int i = 1; i < D; ++i) v.push_back(v.back() * gamma);
  const auto [w1, w2] = scalings(prec);
  auto search = [&](long w) -> std::optional<std::vector<mpz_class>> {
    double G = generic_size(w, use_im, v.size());
    if (G <= kMargin) return std::nullopt;
    for (const auto& r : relation_rows(v, w, use_im)) {
      if (r[0] == 0) continue;
      if (log10_norm(r, v.size()) >= G - kMargin) continue;
      return r;
    }
    return std::nullopt;
  };
  auto r = search(w1);
  if (!r) return std::nullopt;
  auto r2 = search(w2);
  if (!r2) return std::nullopt;
  std::vector<mpz_class> p1(r->begin(), r->begin() + v.size()), p2(r2->begin(), r2->begin() + v.size());
  if (primitive(p1) != primitive(p2)) return std::nullopt;
  Real tol = pow10(-static_cast<long>(prec / 2)) * std::max(Real(1), beta.abs());
  QPoly s(D);
  for (int i = 0; i < D; ++i) {
    s[i] = mpq_class(-p1[i + 1], p1[0]);
    s[i].canonicalize();
  }
  if (dist(poly::eval(s, gamma), beta) >= tol) return std::nullopt;
  poly::trim(s);
  return s;
}

ClassPolynomial class_polynomial(const QuadField& K, unsigned prec) {
  if (K.is_rational()) throw invalid_input("class polynomials need an imaginary quadratic field");
  ClassPolynomial out;
  PrecisionGuard g(prec + 10);
  out.reps = K.class_group().reps;
  std::vector<BigComplex> P = {BigComplex(1)};
  for (const auto& a : out.reps) {
    BigComplex j = j_invariant(cm_point(K, a).tau);
    out.roots.push_back(j);
    std::vector<BigComplex> next(P.size() + 1, BigComplex(0));
    for (std::size_t i = 0; i < P.size(); ++i) {
      next[i + 1] += P[i];
      next[i] -= j * P[i];
    }
    P = std::move(next);
  }
  double worst = -1e9;
  for (const auto& c : P) {
    mpz_class z = round_to_mpz(c.re);
    BigComplex err = c - BigComplex(Real(z.get_mpz_t()));
    worst = std::max(worst, log10_abs(err));
    out.poly.coeffs.push_back(z);
  }
  out.max_rounding_error = worst < -1e8 ? 0.0 : std::pow(10.0, worst);
  if (out.max_rounding_error >= 0.01)
    throw precision_unreachable("class polynomial rounding is uncertified at " + std::to_string(prec) + " digits");
  double res = -1e9;
  for (const auto& r : out.roots) res = std::max(res, log10_abs(poly::eval(out.poly.coeffs, r)));
  out.poly.residual_log10 = res;
  return out;
}

bool CertifiedVector::all_integral() const {
  return ok && std::all_of(integral.begin(), integral.end(), [](bool b) { return b; });
}

namespace {

// Monic integral generator from theta with primitive minimal polynomial m:
// theta' = lc * theta has minimal polynomial lc^(d-1) m(X / lc).
ZPoly monic_scaled(const ZPoly& m, mpz_class& lc) {
  lc = m.back();
  const int d = static_cast<int>(m.size()) - 1;
  ZPoly r(m.size());
  mpz_class pw = 1;  // lc^(d-1-i) accumulated from the top
  for (int i = d; i >= 0; --i) {
    if (i == d) {
      r[i] = 1;
      continue;
    }
    r[i] = m[i] * pw;
    pw *= lc;
  }
  return r;
}

bool exact_root(const NumberField& F, const ZPoly& m, const NfElement& x) {
  return F.is_zero(F.eval(poly::from_z(m), x));
}

}  // namespace

CertifiedVector certify_vector(const WittVector& xi, int dmax) {
  CertifiedVector out;
  if (xi.domain.exact()) throw invalid_input("certify_vector expects a complex vector");
  const unsigned prec = xi.domain.prec;
  PrecisionGuard g(prec);
  const Real tol = xi.domain.tolerance();
  for (const auto& c : xi.values) {
    const auto& z = std::get<BigComplex>(c);
    int found = -1;
    for (std::size_t i = 0; i < out.distinct.size() && found < 0; ++i)
      if (dist(out.distinct[i], z) < tol) found = static_cast<int>(i);
    if (found < 0) {
      found = static_cast<int>(out.distinct.size());
      out.distinct.push_back(z);
    }
    out.value_of.push_back(found);
  }
  try {
    for (const auto& z : out.distinct) out.minpolys.push_back(minpoly(z, dmax, prec));
  } catch (const no_relation& e) {
    out.failure = std::string("no relation: ") + e.what();
    return out;
  }

  // generator theta of F = Q[X]/(P), and each distinct value as r_i(theta)
  mpz_class lc;
  ZPoly P = monic_scaled(out.minpolys[0].coeffs, lc);
  BigComplex theta = Real(lc.get_mpz_t()) * out.distinct[0];
  std::shared_ptr<const NumberField> F = NumberField::make(P, theta);
  std::vector<QPoly> reps = {QPoly{0, mpq_class(1) / mpq_class(lc)}};
  reps[0][1].canonicalize();

  // targets beyond the distinct values: w, so that F contains the field
  std::vector<BigComplex> targets = out.distinct;
  std::vector<ZPoly> tpolys;
  for (const auto& m : out.minpolys) tpolys.push_back(m.coeffs);
  const QuadField& K = xi.field();
  if (!K.is_rational()) {
    targets.push_back(tau_field(K));
    tpolys.push_back(ZPoly{mpz_class(K.omega_norm()), mpz_class(-K.omega_trace()), mpz_class(1)});
  }

  for (std::size_t i = 1; i < targets.size(); ++i) {
    const BigComplex& beta = targets[i];
    auto r = express_in(beta, theta, F->degree(), prec);
    if (r && exact_root(*F, tpolys[i], F->from_poly(*r))) {
      reps.push_back(*r);
      continue;
    }
    bool grown = false;
    for (int k = 1; k <= 12 && !grown; ++k) {
      BigComplex gam = theta + Real(k) * beta;
      IntPoly mg;
      try {
        mg = minpoly(gam, dmax, prec);
      } catch (const no_relation&) {
        continue;
      }
      if (mg.degree() <= F->degree()) continue;
      mpz_class l2;
      ZPoly P2 = monic_scaled(mg.coeffs, l2);
      BigComplex theta2 = Real(l2.get_mpz_t()) * gam;
      auto F2 = NumberField::make(P2, theta2);
      auto s = express_in(theta, theta2, F2->degree(), prec);
      if (!s) continue;
      NfElement th = F2->from_poly(*s);
      if (!exact_root(*F2, P, th)) continue;
      // beta = (theta2 / l2 - theta) / k
      NfElement b = F2->scale(F2->sub(F2->scale(F2->gen_pow(1), mpq_class(1) / mpq_class(l2)), th),
                              mpq_class(1, k));
      if (!exact_root(*F2, tpolys[i], b)) continue;
      std::vector<QPoly> moved;
      bool good = true;
      for (std::size_t j = 0; j < reps.size() && good; ++j) {
        NfElement e = F2->eval(reps[j], th);
        good = exact_root(*F2, tpolys[j], e);
        moved.push_back(e.c);
      }
      if (!good) continue;
      moved.push_back(b.c);
      reps = std::move(moved);
      P = P2;
      F = F2;
      theta = theta2;
      grown = true;
    }
    if (!grown) {
      out.failure = "compositum degree exceeded " + std::to_string(dmax) + " at value " + std::to_string(i);
      return out;
    }
  }

  for (std::size_t i = 0; i < out.distinct.size(); ++i) {
    NfElement e = F->from_poly(reps[i]);
    if (dist(F->embed(e), out.distinct[i]) >= tol) {
      out.failure = "exact value " + std::to_string(i) + " does not match its numeric value";
      return out;
    }
    bool monic = out.minpolys[i].monic_primitive();
    if (monic != F->is_algebraic_integer(e)) {
      out.failure = "integrality of value " + std::to_string(i) + " disagrees between paths";
      return out;
    }
    out.integral.push_back(monic);
  }
  out.field = F;
  out.exact.index = xi.index;
  out.exact.bound = xi.bound;
  out.exact.domain = CoeffDomain::number_field(F);
  for (int v : out.value_of) out.exact.values.push_back(F->from_poly(reps[v]));
  out.ok = true;
  return out;
}

bool exact_divisibility(const NumberField& F, const NfElement& x, const NfElement& t) {
  return F.is_algebraic_integer(F.mul(x, F.inv(t)));
}

bool exact_divisibility(const NumberField& F, const NfElement& x, const mpq_class& t) {
  if (t == 0) throw invalid_input("division by zero");
  return F.is_algebraic_integer(F.scale(x, 1 / t));
}

NfElement quad_to_field(const NumberField& F, const NfElement& omega, const QuadElement& x) {
  return F.add(F.from_rational(x.x), F.scale(omega, x.y));
}

std::optional<NfElement> omega_image(const QuadField& K, const NumberField& F) {
  if (K.is_rational()) return F.zero();
  const Int t = K.omega_trace(), n = K.omega_norm(), D = K.disc();
  auto check = [&](const NfElement& w) {
    return F.is_zero(F.add(F.sub(F.mul(w, w), F.scale(w, t)), F.from_rational(n)));
  };
  if (F.is_cyclotomic()) {
    const long L = F.conductor(), aD = -D;
    if (L % aD != 0) return std::nullopt;
    // Gauss sum of the Kronecker character gives +-sqrt(D)
    NfElement gs = F.zero();
    for (long a = 1; a < aD; ++a) {
      int chi = mpz_kronecker_si(mpz_class(D).get_mpz_t(), a);
      if (chi != 0) gs = F.add(gs, F.scale(F.gen_pow(a * (L / aD)), chi));
    }
    PrecisionGuard g(40);
    if (F.embed(gs).im < 0) gs = F.neg(gs);
    NfElement w = F.scale(F.add(gs, F.from_rational(t)), mpq_class(1, 2));
    if (!check(w)) throw std::logic_error("Gauss sum does not square to the discriminant");
    return w;
  }
  const unsigned prec = 60 + 10 * static_cast<unsigned>(F.degree());
  PrecisionGuard g(prec + 20);
  auto r = express_in(tau_field(K), F.root(), F.degree(), prec);
  if (!r) return std::nullopt;
  NfElement w = F.from_poly(*r);
  if (!check(w)) return std::nullopt;
  return w;
}

}  // namespace cmw
