#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cmw/errors.hpp"
#include "cmw/numfield.hpp"
#include "oracles.hpp"

using namespace cmw;

namespace {
long totient(long m) {
  long r = 0;
  for (long k = 1; k <= m; ++k)
    if (oracle::gcd(k, m) == 1) ++r;
  return r;
}

NfElement random_element(const NumberField& F, std::mt19937& rng) {
  std::uniform_int_distribution<long> co(-5, 5);
  QPoly p;
  for (int i = 0; i < F.degree(); ++i) p.push_back(mpq_class(co(rng), 1 + (co(rng) + 5) % 3));
  return F.from_poly(p);
}
}  // namespace

TEST_CASE("cyclotomic polynomials") {
  CHECK(poly::cyclotomic(1) == ZPoly{-1, 1});
  CHECK(poly::cyclotomic(12) == ZPoly{1, 0, -1, 0, 1});
  CHECK(poly::cyclotomic(9) == ZPoly{1, 0, 0, 1, 0, 0, 1});
  for (unsigned m = 1; m <= 40; ++m) CHECK(poly::degree(poly::from_z(poly::cyclotomic(m))) == totient(m));
}

TEST_CASE("roots of unity") {
  auto F = NumberField::cyclotomic(12);
  CHECK(F->degree() == 4);
  CHECK(F->gen_pow(12) == F->one());
  CHECK(F->mul(F->gen_pow(5), F->gen_pow(-5)) == F->one());
  CHECK(F->gen_pow(6) == F->neg(F->one()));
  PrecisionGuard g(50);
  BigComplex z = F->embed(F->gen_pow(1));
  CHECK(dist(z, exp2pii(BigComplex(Real(1) / 12))) < Real("1e-45"));
}

TEST_CASE("field operations are a field") {
  std::mt19937 rng(3);
  for (unsigned m : {1u, 3u, 5u, 8u, 12u}) {
    auto F = NumberField::cyclotomic(m);
    for (int t = 0; t < 20; ++t) {
      NfElement a = random_element(*F, rng), b = random_element(*F, rng);
      CHECK(F->mul(a, b) == F->mul(b, a));
      CHECK(F->sub(F->add(a, b), b) == a);
      if (!F->is_zero(a)) CHECK(F->mul(a, F->inv(a)) == F->one());
      PrecisionGuard g(40);
      CHECK(dist(F->embed(F->mul(a, b)), F->embed(a) * F->embed(b)) < Real("1e-30"));
    }
  }
}

TEST_CASE("characteristic and minimal polynomials") {
  auto F = NumberField::cyclotomic(7);
  NfElement c = F->add(F->gen_pow(1), F->gen_pow(-1));
  QPoly mp = F->minpoly(c);
  CHECK(mp == QPoly{-1, -2, 1, 1});  // x^3 + x^2 - 2x - 1
  QPoly cp = F->charpoly(c);
  CHECK(cp == poly::mul(mp, mp));
  CHECK(F->is_algebraic_integer(c));
  CHECK_FALSE(F->is_algebraic_integer(F->scale(c, mpq_class(1, 2))));
  NfElement h = F->scale(F->add(F->one(), F->gen_pow(1)), mpq_class(1, 2));
  CHECK_FALSE(F->is_algebraic_integer(h));
}

TEST_CASE("general field from a monic polynomial") {
  PrecisionGuard g(60);
  Real s5 = boost::multiprecision::sqrt(Real(5));
  auto F = NumberField::make(ZPoly{-1, -1, 1}, BigComplex((1 + s5) / 2, Real(0)));
  NfElement x = F->gen_pow(1);
  CHECK(F->mul(x, x) == F->add(x, F->one()));
  CHECK(F->is_algebraic_integer(x));
  CHECK_FALSE(F->is_algebraic_integer(F->scale(x, mpq_class(1, 2))));
  CHECK(abs(F->root().re - (1 + s5) / 2) < Real("1e-55"));
  // (2x - 1)^2 = 5
  NfElement y = F->sub(F->scale(x, 2), F->one());
  CHECK(F->mul(y, y) == F->from_rational(5));
  CHECK(F->minpoly(y) == QPoly{-5, 0, 1});
  CHECK_THROWS_AS(NumberField::make(ZPoly{-2, 0, 1}, BigComplex(Real(1), Real(0))), invalid_input);
  CHECK_THROWS_AS(NumberField::make(ZPoly{1, -2, 1}, BigComplex(Real(1), Real(0))), invalid_input);
}

TEST_CASE("polynomial gcd and division") {
  QPoly a = poly::mul(QPoly{-1, 1}, QPoly{2, 0, 1});
  QPoly b = poly::mul(QPoly{-1, 1}, QPoly{3, 1});
  CHECK(poly::gcd(a, b) == QPoly{-1, 1});
  auto [q, r] = poly::divmod(a, QPoly{-1, 1});
  CHECK(q == QPoly{2, 0, 1});
  CHECK(poly::degree(r) <= 0);
}
