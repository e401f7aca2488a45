#include "cmw/modular.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "cmw/errors.hpp"

namespace cmw {

namespace {

Real from_q(const mpq_class& q) { return Real(q.get_mpq_t()); }

Real eps_digits(unsigned digits) { return boost::multiprecision::pow(Real(10), -static_cast<long>(digits)); }

BigComplex with_digits(const BigComplex& z, unsigned digits) {
  BigComplex r;
  r.re = Real(z.re, digits);
  r.im = Real(z.im, digits);
  return r;
}

long round_real(const Real& x) { return boost::multiprecision::round(x).convert_to<long>(); }

mpq_class frac(const mpq_class& x) {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  mpq_class r = x - mpq_class(f);
  r.canonicalize();
  return r;
}

double rel_dev(const BigComplex& a, const BigComplex& b) {
  Real scale = std::max(Real(1), b.abs());
  Real d = dist(a, b) / scale;
  if (d == 0) return -1e9;
  return boost::multiprecision::log10(d).convert_to<double>();
}

constexpr long kMaxTerms = 200000;

}  // namespace

Mat2 mat_mul(const Mat2& x, const Mat2& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
          x[2] * y[1] + x[3] * y[3]};
}

Mat2 mat_mod(const Mat2& x, Int N) {
  Mat2 r;
  for (int i = 0; i < 4; ++i) r[i] = ((x[i] % N) + N) % N;
  return r;
}

Int mat_det(const Mat2& x) { return x[0] * x[3] - x[1] * x[2]; }

BigComplex mobius(const Mat2& g, const BigComplex& tau) {
  return (Real(g[0]) * tau + BigComplex(g[1])) / (Real(g[2]) * tau + BigComplex(g[3]));
}

Reduction reduce_tau(const BigComplex& tau) {
  if (tau.im <= 0) throw invalid_input("tau must lie in the upper half plane");
  Reduction R;
  R.tau = tau;
  for (int it = 0; it < 10000; ++it) {
    long k = round_real(R.tau.re);
    if (k != 0) {
      R.tau.re -= k;
      R.gamma = mat_mul({1, -k, 0, 1}, R.gamma);
    }
    if (R.tau.norm() < 1) {
      R.tau = BigComplex(-1) / R.tau;
      R.gamma = mat_mul({0, -1, 1, 0}, R.gamma);
    } else {
      return R;
    }
  }
  throw precision_unreachable("fundamental-domain reduction did not terminate");
}

Eisenstein eisenstein(const BigComplex& tau_in) {
  const unsigned P = Real::default_precision();
  Eisenstein out;
  {
    PrecisionGuard g(P + 20);
    BigComplex tau(tau_in.re, tau_in.im);
    Reduction R = reduce_tau(tau);
    BigComplex q = exp2pii(R.tau);
    Real eps = eps_digits(P + 15);
    BigComplex s3(0), s5(0), prod(1), qn(1);
    for (long n = 1;; ++n) {
      if (n > kMaxTerms) throw precision_unreachable("q-series term budget exhausted");
      qn *= q;
      BigComplex l = qn / (BigComplex(1) - qn);
      Real n3 = Real(n) * n * n;
      s3 += n3 * l;
      s5 += (n3 * n * n) * l;
      prod *= BigComplex(1) - qn;
      if (qn.abs() * n3 * n * n < eps) break;
    }
    BigComplex E4 = BigComplex(1) + Real(240) * s3;
    BigComplex E6 = BigComplex(1) - Real(504) * s5;
    Real pi = pi_real();
    Real pi2 = pi * pi;
    BigComplex g2 = (Real(4) * pi2 * pi2 / 3) * E4;
    BigComplex g3 = (Real(8) * pi2 * pi2 * pi2 / 27) * E6;
    Real tp12 = boost::multiprecision::pow(2 * pi, 12);
    BigComplex delta = tp12 * (q * prod.pow(24));
    BigComplex g2c = g2 * g2 * g2;
    BigComplex delta2 = g2c - Real(27) * (g3 * g3);
    BigComplex j = Real(1728) * g2c / delta;
    BigComplex E43 = E4 * E4 * E4;
    BigComplex j2 = Real(1728) * E43 / (E43 - E6 * E6);
    Real dd = dist(delta2, delta) / delta.abs();
    out.delta_check = dd == 0 ? -1e9 : boost::multiprecision::log10(dd).convert_to<double>();
    out.j_check = rel_dev(j2, j);
    double lim = -static_cast<double>(P) + 10;
    if (out.delta_check > lim || out.j_check > lim)
      throw precision_unreachable("Eisenstein cross-identities fail at " + std::to_string(P) + " digits");
    // undo the reduction: f(tau) = (c tau + d)^-k f(gamma tau)
    BigComplex lam = Real(R.gamma[2]) * tau + BigComplex(R.gamma[3]);
    BigComplex l4 = lam.pow(4), l6 = lam.pow(6);
    g2 /= l4;
    g3 /= l6;
    delta /= l6 * l6;
    out.g2 = g2;
    out.g3 = g3;
    out.delta = delta;
    out.j = j;
  }
  out.g2 = with_digits(out.g2, P);
  out.g3 = with_digits(out.g3, P);
  out.delta = with_digits(out.delta, P);
  out.j = with_digits(out.j, P);
  return out;
}

BigComplex j_invariant(const BigComplex& tau) { return eisenstein(tau).j; }

namespace {

// Sum S with wp = (2 pi i)^2 S (deriv = false) or wp' = (2 pi i)^3 S (deriv =
// true) for the reduced lattice Z tau + Z and reduced z.
BigComplex wp_series(const BigComplex& z, const BigComplex& tau, bool deriv, unsigned P) {
  BigComplex u = exp2pii(z);
  BigComplex one(1);
  if (dist(u, one) < eps_digits(P / 2)) throw invalid_input("wp evaluated at a lattice point");
  BigComplex ui = one / u;
  BigComplex q = exp2pii(tau);
  Real eps = eps_digits(P + 15);
  Real um = std::max(u.abs(), ui.abs());
  auto f = [&](const BigComplex& v) -> BigComplex {
    BigComplex w = one - v;
    if (!deriv) return v / (w * w);
    return v * (one + v) / (w * w * w);
  };
  BigComplex S = deriv ? f(u) : BigComplex(Real(1) / 12) + f(u);
  BigComplex qn(1);
  for (long n = 1;; ++n) {
    if (n > kMaxTerms) throw precision_unreachable("wp series term budget exhausted");
    qn *= q;
    if (deriv) {
      S += f(qn * u) - f(qn * ui);
    } else {
      S += f(qn * u) + f(qn * ui) - Real(2) * f(qn);
    }
    if (qn.abs() * um < eps) break;
  }
  return S;
}

BigComplex wp_impl(const BigComplex& z_in, const BigComplex& tau_in, bool deriv) {
  const unsigned P = Real::default_precision();
  BigComplex out;
  {
    PrecisionGuard g(P + 20);
    BigComplex z(z_in.re, z_in.im), tau(tau_in.re, tau_in.im);
    Reduction R = reduce_tau(tau);
    BigComplex lam = Real(R.gamma[2]) * tau + BigComplex(R.gamma[3]);
    BigComplex zr = z / lam;
    long m = round_real(zr.im / R.tau.im);
    zr -= Real(m) * R.tau;
    zr.re -= round_real(zr.re);
    Real pi = pi_real();
    BigComplex S = wp_series(zr, R.tau, deriv, P);
    if (deriv) {
      // (2 pi i)^3 = -8 pi^3 i
      BigComplex c(Real(0), -8 * pi * pi * pi);
      out = c * S / lam.pow(3);
    } else {
      out = (-4 * pi * pi) * S / (lam * lam);
    }
  }
  return with_digits(out, P);
}

}  // namespace

BigComplex wp(const BigComplex& z, const BigComplex& tau) { return wp_impl(z, tau, false); }
BigComplex wp_prime(const BigComplex& z, const BigComplex& tau) { return wp_impl(z, tau, true); }

BigComplex fricke(const mpq_class& a1_in, const mpq_class& a2_in, const BigComplex& tau_in, int k) {
  if (k < 1 || k > 3) throw invalid_input("Fricke power must be 1, 2 or 3");
  mpq_class a1 = frac(a1_in), a2 = frac(a2_in);
  if (a1 == 0 && a2 == 0) throw invalid_input("Fricke function needs a nonzero torsion point");
  const unsigned P = Real::default_precision();
  BigComplex out;
  {
    PrecisionGuard g(P + 20);
    BigComplex tau(tau_in.re, tau_in.im);
    Reduction R = reduce_tau(tau);
    // f_a(tau) = f_{a gamma^-1}(gamma tau)
    const Mat2& G = R.gamma;
    mpq_class b1 = frac(a1 * G[3] - a2 * G[2]);
    mpq_class b2 = frac(-a1 * G[1] + a2 * G[0]);
    if (b1 > mpq_class(1, 2)) {
      b1 = frac(-b1);
      b2 = frac(-b2);
    }
    BigComplex z = from_q(b1) * R.tau + BigComplex(from_q(b2));
    Eisenstein E = eisenstein(R.tau);
    BigComplex p = wp(z, R.tau);
    if (k == 1) out = E.g2 * E.g3 / E.delta * p;
    if (k == 2) out = E.g2 * E.g2 / E.delta * p * p;
    if (k == 3) out = E.g3 / E.delta * p * p * p;
  }
  return with_digits(out, P);
}

BigComplex tau_field(const QuadField& K) {
  if (K.is_rational()) throw invalid_input("the rational field has no CM point");
  Int t = K.omega_trace(), n = K.omega_norm();
  Real im = boost::multiprecision::sqrt(Real(4 * n - t * t)) / 2;
  return BigComplex(Real(t) / 2, im);
}

namespace {
BigComplex quad_numeric(const QuadField& K, const QuadElement& x) {
  return BigComplex(from_q(x.x)) + from_q(x.y) * tau_field(K);
}
}  // namespace

CmPoint cm_point(const QuadField& K, const IdealHNF& a) {
  if (K.is_rational()) throw invalid_input("CM points need an imaginary quadratic field");
  K.check_same_field(a);
  if (!a.integral()) throw invalid_input("CM point needs an integral ideal");
  CmPoint P;
  P.ideal = a;
  auto B = K.basis(K.inverse(a));
  P.w1 = B[0];
  P.w2 = B[1];
  P.tau = quad_numeric(K, K.mul(P.w1, K.inv(P.w2)));
  if (P.tau.im <= 0) throw std::logic_error("CM basis is not oriented");
  return P;
}

LevelMatrix level_matrix(const QuadField& K, const IdealHNF& a, Int N) {
  if (N < 1) throw invalid_input("level must be positive");
  CmPoint P = cm_point(K, a);
  // w1 = (B + C w)/den, w2 = A/den
  const QuadElement& w1 = P.w1;
  const QuadElement& w2 = P.w2;
  mpq_class m11 = 1 / w1.y;
  mpq_class m12 = -m11 * w1.x / w2.x;
  mpq_class m22 = 1 / w2.x;
  for (auto* v : {&m11, &m12, &m22}) {
    v->canonicalize();
    if (v->get_den() != 1) throw std::logic_error("level matrix is not integral for " + a.str());
  }
  LevelMatrix L;
  L.level = N;
  L.exact = {m11.get_num().get_si(), m12.get_num().get_si(), 0, m22.get_num().get_si()};
  // exactness of both defining equations
  QuadElement e1 = mpq_class(L.exact[0]) * w1 + mpq_class(L.exact[1]) * w2;
  QuadElement e2 = mpq_class(L.exact[2]) * w1 + mpq_class(L.exact[3]) * w2;
  if (!(e1 == K.omega()) || !(e2 == QuadElement(1)))
    throw std::logic_error("level matrix equations fail for " + a.str());
  L.entries = mat_mod(L.exact, N);
  return L;
}

Mat2 mult_matrix(const QuadField& K, const QuadElement& x) {
  if (x.x.get_den() != 1 || x.y.get_den() != 1) throw invalid_input("mult_matrix needs an integral element");
  Int u = x.x.get_num().get_si(), v = x.y.get_num().get_si();
  return {u + v * K.omega_trace(), -v * K.omega_norm(), v, u};
}

int fricke_power(const QuadField& K) {
  if (K.d() == -1) return 2;
  if (K.d() == -3) return 3;
  return 1;
}

DeformationFamily DeformationFamily::j_family() { return {}; }

DeformationFamily DeformationFamily::fricke_family(const QuadField& K, const mpq_class& a1,
                                                   const mpq_class& a2) {
  DeformationFamily F;
  F.kind = Kind::fricke;
  F.a1 = frac(a1);
  F.a2 = frac(a2);
  mpz_class L;
  mpz_lcm(L.get_mpz_t(), F.a1.get_den_mpz_t(), F.a2.get_den_mpz_t());
  F.level = L.get_si();
  F.power = fricke_power(K);
  return F;
}

DeformationFamily DeformationFamily::character(Int N, std::vector<Mat2> S) {
  if (N < 1) throw invalid_input("level must be positive");
  DeformationFamily F;
  F.kind = Kind::character;
  F.level = N;
  for (auto& m : S) m = mat_mod(m, N);
  std::sort(S.begin(), S.end());
  S.erase(std::unique(S.begin(), S.end()), S.end());
  F.S = std::move(S);
  std::vector<Mat2> gens = {{1, 1, 0, 1}, {0, N - 1, 1, 0}};
  for (Int u = 2; u < N; ++u)
    if (std::gcd(u, N) == 1) gens.push_back({u, 0, 0, 1});
  for (const auto& m : F.S)
    for (const auto& g : gens)
      if (!F.contains(mat_mul(m, g))) throw invalid_input("S is not closed under the right GL2 action");
  return F;
}

DeformationFamily DeformationFamily::rho_character(const QuadField& K, const IdealHNF& a) {
  if (K.is_rational()) throw invalid_input("characteristic families need an imaginary quadratic field");
  Int N = a.lattice_norm();
  IdealHNF NO = K.principal(QuadElement(N));
  auto B = K.basis(a);
  std::optional<QuadElement> s;
  for (Int r = 0; r < 50 && !s; ++r)
    for (Int i = -r; i <= r && !s; ++i)
      for (Int j = -r; j <= r && !s; ++j) {
        if (std::max(std::abs(i), std::abs(j)) != r) continue;
        QuadElement x = mpq_class(i) * B[0] + mpq_class(j) * B[1];
        if (x.is_zero()) continue;
        IdealHNF c = K.mul(K.principal(x), K.inverse(a));
        if (K.add(c, NO) == K.unit_ideal()) s = x;
      }
  if (!s) throw std::logic_error("no element of " + a.str() + " with cofactor prime to its norm");
  Mat2 q = mult_matrix(K, *s);
  std::vector<Mat2> S;
  for (Int x0 = 0; x0 < N; ++x0)
    for (Int x1 = 0; x1 < N; ++x1)
      for (Int x2 = 0; x2 < N; ++x2)
        for (Int x3 = 0; x3 < N; ++x3) S.push_back(mat_mod(mat_mul(q, {x0, x1, x2, x3}), N));
  return character(N, std::move(S));
}

bool DeformationFamily::contains(const Mat2& m) const {
  return std::binary_search(S.begin(), S.end(), mat_mod(m, level));
}

std::string DeformationFamily::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::j:
      return "j";
    case Kind::fricke:
      os << "fricke:" << a1.get_str() << "," << a2.get_str() << " k=" << power;
      return os.str();
    case Kind::character:
      os << "char:N=" << level << " |S|=" << S.size();
      return os.str();
  }
  return "?";
}

BigComplex modular_component(const QuadField& K, const DeformationFamily& F, const IdealHNF& a) {
  CmPoint P = cm_point(K, a);
  switch (F.kind) {
    case DeformationFamily::Kind::j:
      return j_invariant(P.tau);
    case DeformationFamily::Kind::fricke: {
      LevelMatrix L = level_matrix(K, a, F.level);
      const Mat2& M = L.exact;
      mpq_class b1 = frac(F.a1 * M[0] + F.a2 * M[2]);
      mpq_class b2 = frac(F.a1 * M[1] + F.a2 * M[3]);
      if (b1 == 0 && b2 == 0) return j_invariant(P.tau);  // f_0 := j
      return fricke(b1, b2, P.tau, F.power);
    }
    case DeformationFamily::Kind::character: {
      LevelMatrix L = level_matrix(K, a, F.level);
      return BigComplex(F.contains(L.entries) ? 1 : 0);
    }
  }
  throw std::logic_error("unknown family");
}

WittVector modular_vector(const QuadField& K, const DeformationFamily& F, Int B, unsigned prec) {
  if (K.is_rational()) throw invalid_input("modular vectors need an imaginary quadratic field");
  auto dom = CoeffDomain::complex(prec);
  return tabulate(K, B, dom, [&](const IdealHNF& a) -> Coeff {
    BigComplex v;
    {
      PrecisionGuard g(prec + 10);
      v = modular_component(K, F, a);
    }
    return with_digits(v, prec);
  });
}

Axiom2Report check_deformation_axiom2(const QuadField& K, const DeformationFamily& F,
                                      const std::vector<Mat2>& us, const std::vector<BigComplex>& taus,
                                      unsigned prec) {
  if (F.kind == DeformationFamily::Kind::character)
    throw invalid_input("axiom check applies to the j and Fricke families");
  (void)K;
  Axiom2Report R;
  R.prec = prec;
  R.tolerance_log10 = -static_cast<double>(prec) / 2;
  PrecisionGuard g(prec);
  for (const auto& u : us) {
    if (mat_det(u) != 1) throw invalid_input("axiom samples must lie in SL2(Z)");
    Mat2 ui = {u[3], -u[1], -u[2], u[0]};
    for (const auto& t : taus) {
      BigComplex tau(t.re, t.im);
      BigComplex moved = mobius(ui, tau);
      BigComplex lhs, rhs;
      if (F.kind == DeformationFamily::Kind::j) {
        lhs = j_invariant(moved);
        rhs = j_invariant(tau);
      } else {
        mpq_class b1 = F.a1 * u[0] + F.a2 * u[2];
        mpq_class b2 = F.a1 * u[1] + F.a2 * u[3];
        lhs = fricke(b1, b2, moved, F.power);
        rhs = fricke(F.a1, F.a2, tau, F.power);
      }
      Axiom2Sample s{u, tau, rel_dev(lhs, rhs)};
      if (s.log10_dev >= R.tolerance_log10) R.passed = false;
      R.samples.push_back(s);
    }
  }
  return R;
}

}  // namespace cmw
