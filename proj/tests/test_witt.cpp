#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "cmw/algrec.hpp"
#include "cmw/errors.hpp"
#include "cmw/modular.hpp"
#include "cmw/witt.hpp"
#include "oracles.hpp"

using namespace cmw;

namespace {

const QuadField& Q() {
  static const QuadField q = QuadField::rational();
  return q;
}

IdealHNF n_(Int n) { return Q().ideal(n, 0, 1); }

bool same(const WittVector& x, const WittVector& y) {
  if (x.size() != y.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!x.domain.equal(x.values[i], y.values[i])) return false;
  return true;
}

// J-classes of (Z/q, x) by comparing the sets sZ/q
std::size_t residue_j_count(long q) {
  std::set<std::set<long>> ideals;
  for (long s = 0; s < q; ++s) {
    std::set<long> I;
    for (long t = 0; t < q; ++t) I.insert(s * t % q);
    ideals.insert(I);
  }
  return ideals.size();
}

std::vector<ZetaTerm> random_combination(std::mt19937& rng, bool integral) {
  // distinct gamma sharing one conductor <= 12
  std::uniform_int_distribution<long> den(1, 12), co(-4, 4), nterms(1, 3), split(2, 4);
  const long q = den(rng);
  std::vector<long> nums(q);
  std::iota(nums.begin(), nums.end(), 0);
  std::shuffle(nums.begin(), nums.end(), rng);
  const long k = std::min(nterms(rng), q);
  std::vector<ZetaTerm> t;
  for (long i = 0; i < k; ++i) {
    long c = co(rng);
    if (c == 0) c = 1;
    t.push_back({mpq_class(c), mpq_class(nums[i], q)});
  }
  if (!integral) {
    long m = split(rng);
    t.front().coeff = mpq_class(m * co(rng) + 1, m);
  }
  return t;
}

}  // namespace

TEST_CASE("shifts") {
  auto z = zeta_gamma(3, 1, 200);
  CHECK(same(shift(z, n_(1)), z));
  auto s = shift(z, n_(2));
  const auto& F = *z.domain.field;
  for (std::size_t i = 0; i < s.size(); ++i)
    CHECK(std::get<NfElement>(s.values[i]) == F.gen_pow(static_cast<long>(2 * s.ideal(i).a % 3)));
  CHECK(s.bound == 100);

  auto K = QuadField::imaginary(-5);
  auto r = rho_vector(K, K.ideal(3, 1, 1), 300);
  auto ideals = K.enumerate_ideals(20);
  std::mt19937 rng(29);
  std::uniform_int_distribution<std::size_t> pick(0, ideals.size() - 1);
  for (int t = 0; t < 200; ++t) {
    const auto& a = ideals[pick(rng)];
    const auto& b = ideals[pick(rng)];
    if (K.norm(a) * K.norm(b) > 300) continue;
    CHECK(same(shift(shift(r, b), a), shift(r, K.mul(a, b))));
  }
}

TEST_CASE("zeta vectors") {
  auto one = zeta_gamma(1, 0, 50);
  for (const auto& v : one.values) CHECK(std::get<NfElement>(v) == one.domain.field->one());
  auto alt = zeta_gamma(2, 1, 50);
  for (std::size_t i = 0; i < alt.size(); ++i)
    CHECK(std::get<NfElement>(alt.values[i]) == alt.domain.field->from_rational(alt.ideal(i).a % 2 ? -1 : 1));
  auto z3 = zeta_gamma(3, 1, 50);
  CHECK(std::get<NfElement>(z3.at(n_(5))) == z3.domain.field->gen_pow(2));
  auto c = zlinear_combine({{1, mpq_class(1, 3)}, {1, mpq_class(2, 3)}}, 30);
  CHECK(std::get<NfElement>(c.at(n_(1))) == c.domain.field->from_rational(-1));
}

TEST_CASE("the U_n test") {
  auto z = zeta_gamma(3, 1, 23 * 23 * 23);
  auto r = check_un(z, 3, 23);
  CHECK(r.passed);
  CHECK(r.complete);
  CHECK(r.verdicts.size() == 3 * 9);

  auto half = constant_vector(Q(), 50, mpq_class(1, 2));
  auto h = check_un(half, 0, 7);
  CHECK_FALSE(h.passed);
  CHECK(h.failure.find("not integral") != std::string::npos);

  auto ghost = tabulate(Q(), 400, CoeffDomain::cyclotomic(1), [](const IdealHNF& I) -> Coeff {
    return CoeffDomain::cyclotomic(1).field->from_rational(I.a);
  });
  auto g = check_un(ghost, 1, 7);
  CHECK_FALSE(g.passed);
  CHECK(g.failure.find("psi(2)") == 0);

  auto m = zlinear_combine({{2, mpq_class(1, 4)}, {-3, mpq_class(1, 2)}}, 400);
  CHECK(check_un(m, 2, 13).passed);

  CHECK_THROWS_AS(check_un(zeta_gamma(3, 1, 100), 2, 13), insufficient_bound);
  CHECK_THROWS_AS(check_un(zeta_gamma(3, 1, 100), -1, 13), invalid_input);
}

TEST_CASE("non-principal primes are reported") {
  auto K = QuadField::imaginary(-5);
  auto r = rho_vector(K, K.unit_ideal(), 200);
  auto u = check_un(r, 1, 7);
  CHECK(u.passed);
  CHECK_FALSE(u.complete);
  // above 2, 3 and 7 the primes are non-principal; sqrt(-5) is not in Q
  std::size_t nonprincipal = 0;
  for (const auto& p : u.skipped) nonprincipal += !K.principal_generator(p).has_value();
  CHECK(nonprincipal == 5);
  CHECK(u.skipped.size() == 6);
  // the certified j-vector lives in a field containing sqrt(-5)
  auto j = certify_vector(modular_vector(K, DeformationFamily::j_family(), 60, 100)).exact;
  auto uj = check_un(j, 1, 7);
  CHECK(uj.passed);
  CHECK(uj.skipped.size() == 5);
  CHECK(uj.verdicts.size() == 1);
}

TEST_CASE("periodicity") {
  auto z3 = zeta_gamma(3, 1, 100);
  CHECK(is_periodic_mod(z3, n_(3)));
  CHECK_FALSE(is_periodic_mod(z3, n_(2)));
  auto c = constant_vector(Q(), 100, mpq_class(7));
  for (Int f : {1, 2, 5}) CHECK(is_periodic_mod(c, n_(f)));
  auto z6 = zeta_gamma(6, 1, 100);
  auto f = find_modulus(z6, {n_(1), n_(2), n_(3), n_(6)});
  REQUIRE(f.has_value());
  CHECK(*f == n_(6));
  CHECK(*find_modulus(c, {n_(1), n_(2)}) == n_(1));

  auto K = QuadField::imaginary(-5);
  auto j = modular_vector(K, DeformationFamily::j_family(), 40, 60);
  auto fj = find_modulus(j, {K.unit_ideal(), K.principal(QuadElement(2)), K.principal(QuadElement(3))});
  REQUIRE(fj.has_value());
  CHECK(*fj == K.unit_ideal());
}

TEST_CASE("orbit monoids of zeta vectors are Z/q") {
  for (long q : {1L, 2L, 3L, 4L, 5L, 6L, 8L, 12L}) {
    auto z = zeta_gamma(q, 1, 1000);
    auto M = orbit_monoid({z}, 13);
    REQUIRE(M.size() == static_cast<std::size_t>(q));
    CHECK(dim_x({z}, 13) == static_cast<std::size_t>(q));
    // state s is n -> zeta^(k_s n); products multiply the k
    std::vector<long> k(M.size());
    const auto& F = *z.domain.field;
    for (std::size_t s = 0; s < M.size(); ++s)
      for (long e = 0; e < q; ++e)
        if (std::get<NfElement>(M.shifted[s][0].at(n_(1))) == F.gen_pow(e)) k[s] = e;
    for (std::size_t s = 0; s < M.size(); ++s)
      for (std::size_t t = 0; t < M.size(); ++t) CHECK(k[M.table[s][t]] == k[s] * k[t] % q);
    CHECK(mutual_access_partition(M).blocks.size() == residue_j_count(q));
  }
  CHECK(orbit_monoid({constant_vector(Q(), 100, mpq_class(3))}, 13).size() == 1);
}

TEST_CASE("orbit monoid of the d = -5 j-vector is the class group") {
  auto K = QuadField::imaginary(-5);
  auto j = modular_vector(K, DeformationFamily::j_family(), 60, 60);
  auto M = orbit_monoid({j}, 11);
  CHECK(M.size() == 2);
  CHECK(mutual_access_partition(M).blocks.size() == 1);
  CHECK_THROWS_AS(orbit_monoid({modular_vector(K, DeformationFamily::j_family(), 10, 60)}, 11), insufficient_bound);
}

TEST_CASE("random group-ring elements are integral and periodic") {
  std::mt19937 rng(41);
  for (int t = 0; t < 10; ++t) {
    auto terms = random_combination(rng, true);
    long L = 1;
    for (const auto& x : terms) L = std::lcm(L, x.gamma.get_den().get_si());
    auto v = zlinear_combine(terms, 200);
    CHECK(check_un(v, 2, 13).passed);
    std::vector<IdealHNF> cands;
    for (Int f = 1; f <= L; ++f) cands.push_back(n_(f));
    auto f = find_modulus(v, cands);
    REQUIRE(f.has_value());
    CHECK(L % f->a == 0);
  }
  for (int t = 0; t < 10; ++t) {
    auto v = zlinear_combine(random_combination(rng, false), 50);
    CHECK_FALSE(check_un(v, 0, 13).passed);
  }
}

TEST_CASE("component report") {
  auto K = QuadField::imaginary(-5);
  auto j = modular_vector(K, DeformationFamily::j_family(), 60, 100);
  auto R = component_report({j}, 11);
  REQUIRE(R.classes.size() == 1);
  CHECK(R.classes[0].degree_over_K == 2);
  CHECK(R.classes[0].method == "exact");

  auto c = component_report({constant_vector(Q(), 100, mpq_class(5))}, 13);
  REQUIRE(c.classes.size() == 1);
  CHECK(c.classes[0].degree_over_K == 1);

  auto z6 = component_report({zeta_gamma(6, 1, 1000)}, 13);
  CHECK(z6.classes.size() == residue_j_count(6));
  CHECK(z6.classes.size() == 4);
}

TEST_CASE("cyclic vector search") {
  auto S = cyclic_vector_search(4, 4, 300, 13, 1);
  CHECK(S.tried > 0);
  REQUIRE_FALSE(S.hits.empty());
  for (const auto& h : S.hits) CHECK(orbit_monoid({zlinear_combine(h, 300)}, 13).size() == 4);
}
