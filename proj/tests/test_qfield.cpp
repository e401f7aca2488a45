#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "cmw/errors.hpp"
#include "cmw/qfield.hpp"
#include "oracles.hpp"

using namespace cmw;

namespace {
std::vector<Int> test_ds() { return {-1, -2, -3, -5, -6, -7, -15, -23, -47, -71}; }

IdealHNF product(const QuadField& K, const std::vector<PrimePower>& f) {
  IdealHNF r = K.unit_ideal();
  for (const auto& [P, e] : f) r = K.mul(r, K.pow(P, static_cast<unsigned>(e)));
  return r;
}
}  // namespace

TEST_CASE("field constants") {
  auto K = QuadField::imaginary(-5);
  CHECK(K.disc() == -20);
  CHECK(K.omega_trace() == 0);
  CHECK(K.omega_norm() == 5);
  auto L = QuadField::imaginary(-15);
  CHECK(L.disc() == -15);
  CHECK(L.omega_trace() == 1);
  CHECK(L.omega_norm() == 4);
  CHECK(QuadField::imaginary(-1).units().size() == 4);
  CHECK(QuadField::imaginary(-3).units().size() == 6);
  CHECK(QuadField::imaginary(-7).units().size() == 2);
  CHECK(QuadField::rational().units().size() == 2);
  CHECK_THROWS_AS(QuadField::imaginary(-4), invalid_input);
  CHECK_THROWS_AS(QuadField::imaginary(3), invalid_input);
}

TEST_CASE("element arithmetic") {
  auto K = QuadField::imaginary(-15);
  QuadElement u(mpq_class(2), mpq_class(3)), v(mpq_class(-1, 2), mpq_class(5));
  CHECK(K.norm(K.mul(u, v)) == K.norm(u) * K.norm(v));
  CHECK(K.mul(u, K.inv(u)) == QuadElement(1));
  CHECK(K.mul(u, K.conj(u)) == QuadElement(K.norm(u)));
  CHECK(K.trace(u) == 2 * u.x + u.y * K.omega_trace());
  CHECK(K.is_integral(u));
  CHECK_FALSE(K.is_integral(v));
  // w^2 = t w - n
  CHECK(K.mul(K.omega(), K.omega()) == QuadElement(mpq_class(-K.omega_norm()), mpq_class(K.omega_trace())));
}

TEST_CASE("ideal counts against the Dirichlet convolution") {
  for (Int d : test_ds()) {
    auto K = QuadField::imaginary(d);
    std::map<Int, Int> count;
    for (const auto& I : K.enumerate_ideals(150)) count[I.lattice_norm()]++;
    for (Int n = 1; n <= 150; ++n) CHECK_MESSAGE(count[n] == oracle::ideal_count(K.disc(), n), "d=" << d << " n=" << n);
  }
  auto Q = QuadField::rational();
  CHECK(Q.enumerate_ideals(30).size() == 30);
}

TEST_CASE("enumeration order is by norm and strict") {
  auto K = QuadField::imaginary(-23);
  auto v = K.enumerate_ideals(100);
  for (std::size_t i = 1; i < v.size(); ++i) CHECK(enum_less(v[i - 1], v[i]));
}

TEST_CASE("omega-stable sublattices of Z^2") {
  // HNF sublattices Z(a,0) + Z(b,c) of O_K = Z + Zw stable under w
  for (Int d : {-1L, -5L, -15L}) {
    auto K = QuadField::imaginary(d);
    const Int t = K.omega_trace(), n = K.omega_norm();
    std::set<std::array<Int, 3>> brute;
    for (Int N = 1; N <= 40; ++N)
      for (Int c = 1; c <= N; ++c) {
        if (N % c) continue;
        Int a = N / c;
        for (Int b = 0; b < a; ++b) {
          // w*a = a w: need (0, a) in the lattice: c | a and a/c*b == 0 mod a
          // lattice vectors (x, y) meaning x + y w; basis (a, 0), (b, c)
          auto in = [&](Int x, Int y) {
            if (y % c) return false;
            Int k = y / c;
            return oracle::mod(x - k * b, a) == 0;
          };
          // w * (x + y w) = -n y + (x + t y) w
          if (in(0, a) && in(-n * c, b + t * c)) brute.insert({a, b, c});
        }
      }
    std::set<std::array<Int, 3>> ours;
    for (const auto& I : K.enumerate_ideals(40)) ours.insert({I.a, I.b, I.c});
    CHECK(brute == ours);
  }
}

TEST_CASE("class numbers against reduced forms") {
  for (Int d = -1; d >= -200; --d) {
    if (!is_squarefree(-d)) continue;
    auto K = QuadField::imaginary(d);
    auto forms = oracle::reduced_forms(oracle::fundamental_disc(d));
    CHECK_MESSAGE(K.class_group().h == static_cast<Int>(forms.size()), "d=" << d);
  }
}

TEST_CASE("class group representatives are pairwise inequivalent") {
  for (Int d : test_ds()) {
    auto K = QuadField::imaginary(d);
    auto G = K.class_group();
    for (std::size_t i = 0; i < G.reps.size(); ++i)
      for (std::size_t j = 0; j < G.reps.size(); ++j) {
        bool principal = K.principal_generator(K.mul(G.reps[i], K.inverse(G.reps[j]))).has_value();
        CHECK(principal == (i == j));
      }
  }
}

TEST_CASE("ideal arithmetic properties") {
  std::mt19937 rng(7);
  for (Int d : test_ds()) {
    auto K = QuadField::imaginary(d);
    auto all = K.enumerate_ideals(60);
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    for (int trial = 0; trial < 40; ++trial) {
      const auto& a = all[pick(rng)];
      const auto& b = all[pick(rng)];
      const auto& c = all[pick(rng)];
      auto ab = K.mul(a, b);
      CHECK(ab == K.mul(b, a));
      CHECK(K.mul(ab, c) == K.mul(a, K.mul(b, c)));
      CHECK(K.norm(ab) == K.norm(a) * K.norm(b));
      CHECK(K.mul(a, K.inverse(a)) == K.unit_ideal());
      CHECK(K.mul(a, K.conj(a)) == K.principal(QuadElement(K.norm(a))));
      CHECK(K.divides(a, ab));
      CHECK(K.quotient(ab, a) == b);
      CHECK(product(K, K.factor(ab)) == ab);
      auto g = K.add(a, b);
      CHECK(K.divides(g, a));
      CHECK(K.divides(g, b));
      auto l = K.lcm(a, b);
      CHECK(K.norm(g) * K.norm(l) == K.norm(a) * K.norm(b));
      auto basis = K.basis(a);
      for (const auto& w : basis) CHECK(K.contains(a, w));
    }
  }
}

TEST_CASE("divisors are complete") {
  auto K = QuadField::imaginary(-5);
  auto I = K.principal(QuadElement(6));
  auto divs = K.divisors(I);
  std::size_t brute = 0;
  for (const auto& J : K.enumerate_ideals(36))
    if (K.divides(J, I)) ++brute;
  CHECK(divs.size() == brute);
  CHECK(divs.size() == 12);  // (6) = p2^2 p3 p3'
}

TEST_CASE("principal generators generate") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<long> co(-9, 9);
  for (Int d : test_ds()) {
    auto K = QuadField::imaginary(d);
    for (int trial = 0; trial < 30; ++trial) {
      QuadElement x(mpq_class(co(rng)), mpq_class(co(rng)));
      if (x.is_zero()) continue;
      auto I = K.principal(x);
      auto g = K.principal_generator(I);
      REQUIRE(g.has_value());
      CHECK(K.principal(*g) == I);
    }
  }
}

TEST_CASE("prime splitting follows the Kronecker symbol") {
  for (Int d : test_ds()) {
    auto K = QuadField::imaginary(d);
    for (Int p : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L}) {
      auto S = K.factor_prime(p);
      int k = oracle::kronecker(K.disc(), p);
      CHECK(S.kronecker == k);
      CHECK(S.primes.size() == (k == 1 ? 2u : 1u));
      for (const auto& P : S.primes) CHECK(P.lattice_norm() == (k == -1 ? p * p : p));
    }
  }
}

TEST_CASE("rejects malformed ideals and mixed fields") {
  auto K = QuadField::imaginary(-5);
  CHECK_THROWS_AS(K.ideal(3, 0, 2), invalid_input);
  auto L = QuadField::imaginary(-1);
  CHECK_THROWS_AS(K.mul(K.unit_ideal(), L.unit_ideal()), invalid_input);
}
