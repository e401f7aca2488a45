#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cmw/algrec.hpp"
#include "cmw/errors.hpp"
#include "cmw/modular.hpp"
#include "oracles.hpp"

using namespace cmw;

namespace {

Real tenpow(double e) { return boost::multiprecision::pow(Real(10), Real(e)); }

mpz_class det(IntMatrix m) {
  // fraction-free Bareiss
  const std::size_t n = m.size();
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && m[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

// product over reduced forms of (X - j(tau_Q)), j by theta functions
std::vector<mpz_class> class_poly_oracle(Int d, unsigned prec) {
  PrecisionGuard g(prec);
  Int D = oracle::fundamental_disc(d);
  std::vector<BigComplex> c = {BigComplex(1L)};
  for (auto [a, b, cc] : oracle::reduced_forms(D)) {
    (void)cc;
    BigComplex tau(Real(-b) / (2 * a), boost::multiprecision::sqrt(Real(-D)) / (2 * a));
    BigComplex r = oracle::j_theta(tau, 80);
    std::vector<BigComplex> n(c.size() + 1, BigComplex(0L));
    for (std::size_t i = 0; i < c.size(); ++i) {
      n[i + 1] += c[i];
      n[i] -= r * c[i];
    }
    c = n;
  }
  std::vector<mpz_class> out;
  for (const auto& z : c) out.push_back(round_to_mpz(z.re));
  return out;
}

}  // namespace

TEST_CASE("LLL output is reduced and spans the same lattice") {
  std::mt19937 rng(23);
  std::uniform_int_distribution<long> co(-1000, 1000);
  for (int t = 0; t < 20; ++t) {
    const int n = 3 + t % 4;
    IntMatrix B(n, std::vector<mpz_class>(n));
    for (auto& row : B)
      for (auto& x : row) x = co(rng);
    mpz_class d0 = det(B);
    if (d0 == 0) continue;
    IntMatrix R = lll_reduce(B);
    CHECK(is_lll_reduced(R));
    mpz_class d1 = det(R);
    CHECK(abs(d0) == abs(d1));
  }
  CHECK_FALSE(is_lll_reduced({{mpz_class(1), mpz_class(0)}, {mpz_class(100), mpz_class(1)}}));
}

TEST_CASE("minimal polynomials of algebraic numbers") {
  PrecisionGuard g(80);
  Real s2 = boost::multiprecision::sqrt(Real(2)), s3 = boost::multiprecision::sqrt(Real(3));
  auto p = minpoly(BigComplex(s2 + s3), 8, 80);
  CHECK(p.coeffs == ZPoly{1, 0, -10, 0, 1});
  CHECK(p.monic_primitive());
  auto q = minpoly(BigComplex(boost::multiprecision::cbrt(Real(2))), 8, 80);
  CHECK(q.coeffs == ZPoly{-2, 0, 0, 1});
  auto h = minpoly(BigComplex(s2 / 2), 8, 80);
  CHECK(h.coeffs == ZPoly{-1, 0, 2});
  CHECK_FALSE(h.monic_primitive());
  auto z = minpoly(exp2pii(BigComplex(Real(1) / 5)), 8, 80);
  CHECK(z.coeffs == ZPoly{1, 1, 1, 1, 1});
  CHECK(minpoly(BigComplex(1728L), 4, 80).coeffs == ZPoly{-1728, 1});
  CHECK_THROWS_AS(minpoly(BigComplex(pi_real()), 4, 80), no_relation);
}

TEST_CASE("expressing one number in terms of another") {
  PrecisionGuard g(80);
  Real s2 = boost::multiprecision::sqrt(Real(2)), s3 = boost::multiprecision::sqrt(Real(3));
  BigComplex theta(s2 + s3);
  auto r = express_in(BigComplex(s2), theta, 4, 80);
  REQUIRE(r.has_value());
  CHECK(dist(poly::eval(*r, theta), BigComplex(s2)) < tenpow(-60));
  CHECK_FALSE(express_in(BigComplex(boost::multiprecision::sqrt(Real(5))), theta, 4, 80).has_value());
}

TEST_CASE("Hilbert class polynomials against the theta oracle") {
  CHECK(class_polynomial(QuadField::imaginary(-1)).poly.coeffs == ZPoly{-1728, 1});
  CHECK(class_polynomial(QuadField::imaginary(-2)).poly.coeffs == ZPoly{-8000, 1});
  CHECK(class_polynomial(QuadField::imaginary(-7)).poly.coeffs == ZPoly{3375, 1});
  for (Int d : {-5L, -6L, -15L, -23L, -31L}) {
    auto P = class_polynomial(QuadField::imaginary(d), 120);
    CHECK(P.max_rounding_error < 0.01);
    std::vector<mpz_class> o = class_poly_oracle(d, 120);
    CHECK_MESSAGE(P.poly.coeffs == ZPoly(o.begin(), o.end()), "d=" << d);
  }
}

TEST_CASE("certifying the d = -5 j-vector") {
  auto K = QuadField::imaginary(-5);
  auto v = modular_vector(K, DeformationFamily::j_family(), 30, 100);
  auto c = certify_vector(v);
  REQUIRE(c.ok);
  CHECK(c.distinct.size() == 2);
  CHECK(c.all_integral());
  for (const auto& m : c.minpolys) CHECK(m.degree() == 2);
  PrecisionGuard g(100);
  for (std::size_t i = 0; i < v.size(); ++i)
    CHECK(dist(c.field->embed(std::get<NfElement>(c.exact.values[i])), std::get<BigComplex>(v.values[i])) < tenpow(-50));
  auto w = omega_image(K, *c.field);
  REQUIRE(w.has_value());
  CHECK(dist(c.field->embed(*w), tau_field(K)) < tenpow(-50));
}

TEST_CASE("image of w in cyclotomic fields") {
  PrecisionGuard g(50);
  for (auto [d, m] : std::vector<std::pair<Int, unsigned>>{{-1, 4}, {-3, 3}, {-5, 20}, {-7, 7}, {-15, 15}, {-2, 8}}) {
    auto K = QuadField::imaginary(d);
    auto F = NumberField::cyclotomic(m);
    auto w = omega_image(K, *F);
    REQUIRE_MESSAGE(w.has_value(), "d=" << d);
    NfElement r = F->add(F->sub(F->mul(*w, *w), F->scale(*w, K.omega_trace())), F->from_rational(K.omega_norm()));
    CHECK(F->is_zero(r));
    CHECK(dist(F->embed(*w), tau_field(K)) < tenpow(-40));
  }
  CHECK_FALSE(omega_image(QuadField::imaginary(-5), *NumberField::cyclotomic(5)).has_value());
}

TEST_CASE("exact divisibility") {
  auto F = NumberField::cyclotomic(3);
  NfElement x = F->from_rational(6);
  CHECK(exact_divisibility(*F, x, mpq_class(3)));
  CHECK_FALSE(exact_divisibility(*F, x, mpq_class(4)));
  // 1 - zeta divides 3
  NfElement t = F->sub(F->one(), F->gen_pow(1));
  CHECK(exact_divisibility(*F, F->from_rational(3), t));
  CHECK_FALSE(exact_divisibility(*F, F->from_rational(2), t));
}
