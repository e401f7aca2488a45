#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cmw/automata.hpp"
#include "cmw/errors.hpp"
#include "cmw/modular.hpp"

using namespace cmw;

namespace {

const QuadField& Q() {
  static const QuadField q = QuadField::rational();
  return q;
}

IdealHNF n_(Int n) { return Q().ideal(n, 0, 1); }

// exponent k with output zeta_3^k
long exponent3(const Dfao& A, int s) {
  const auto& F = *A.domains[0].field;
  for (long k = 0; k < 3; ++k)
    if (std::get<NfElement>(A.outputs[s][0]) == F.gen_pow(k)) return k;
  return -1;
}

// every reachable state doubled, plus three unreachable copies
Dfao padded(const Dfao& A) {
  const int n = static_cast<int>(A.size());
  Dfao B = A;
  B.delta.clear();
  B.outputs.clear();
  B.state_ideal.clear();
  for (int copy = 0; copy < 2; ++copy)
    for (int s = 0; s < n; ++s) {
      std::vector<int> row;
      // alternate letters into the second copy
      for (std::size_t l = 0; l < A.alphabet.size(); ++l) row.push_back(A.delta[s][l] + ((l + copy) % 2 ? n : 0));
      B.delta.push_back(row);
      B.outputs.push_back(A.outputs[s]);
      B.state_ideal.push_back(A.state_ideal[s]);
    }
  for (int s = 0; s < 3; ++s) {
    B.delta.push_back(std::vector<int>(A.alphabet.size(), 2 * n + s));
    B.outputs.push_back(A.outputs[s % n]);
    B.state_ideal.push_back(A.state_ideal[0]);
  }
  return B;
}

}  // namespace

TEST_CASE("zeta^(1/3) with primes up to 7") {
  auto z = zeta_gamma(3, 1, 1000);
  Dfao A = dfao_from_witt({z}, 7);
  REQUIRE(A.size() == 3);
  REQUIRE(A.alphabet.size() == 4);
  const long factor[] = {2, 0, 2, 1};  // 2, 3, 5, 7 mod 3
  for (int s = 0; s < 3; ++s)
    for (std::size_t l = 0; l < 4; ++l) CHECK(exponent3(A, A.delta[s][l]) == exponent3(A, s) * factor[l] % 3);
  CHECK(exponent3(A, A.initial) == 1);
  CHECK(commutes(A));
  CHECK(minimize(A).size() == 3);
}

TEST_CASE("constant and j-vectors") {
  CHECK(dfao_from_witt({constant_vector(Q(), 200, mpq_class(4))}, 7).size() == 1);
  auto K = QuadField::imaginary(-5);
  auto j = modular_vector(K, DeformationFamily::j_family(), 60, 60);
  Dfao A = dfao_from_witt({j}, 11);
  REQUIRE(A.size() == 2);
  // a letter moves the state iff its prime is non-principal
  for (std::size_t l = 0; l < A.alphabet.size(); ++l) {
    bool principal = K.principal_generator(A.alphabet[l]).has_value();
    CHECK((A.delta[A.initial][l] == A.initial) == principal);
  }
  CHECK(check_bridy({j}, 11).equal());
}

TEST_CASE("minimization") {
  Dfao A = dfao_from_witt({zeta_gamma(3, 1, 1000)}, 7);
  Dfao B = padded(A);
  REQUIRE(B.size() == 9);
  Dfao m = minimize(B);
  CHECK(m.size() == 3);
  CHECK(equivalent(m, A));
  CHECK(equivalent(B, A));
  CHECK(minimize(m).size() == m.size());
  CHECK(equivalent(minimize(m), m));

  // all outputs equal collapses to one state
  Dfao C = A;
  for (auto& o : C.outputs) o = A.outputs[0];
  CHECK(minimize(C).size() == 1);
  CHECK_FALSE(equivalent(C, A));
}

TEST_CASE("running words") {
  auto z = zeta_gamma(3, 1, 1000);
  Dfao A = dfao_from_witt({z}, 7);
  CHECK(z.domain.equal(run(A, {}), z.at(n_(1))));
  CHECK(std::get<NfElement>(run(A, {n_(2), n_(2)})) == z.domain.field->gen_pow(1));

  auto K = QuadField::imaginary(-15);
  auto v = modular_vector(K, DeformationFamily::j_family(), 400, 60);
  Dfao J = dfao_from_witt({v}, 13);
  std::mt19937 rng(31);
  std::uniform_int_distribution<std::size_t> pick(0, J.alphabet.size() - 1), len(0, 4);
  int checked = 0;
  while (checked < 200) {
    std::vector<IdealHNF> w;
    IdealHNF prod = K.unit_ideal();
    for (std::size_t i = len(rng); i > 0; --i) {
      w.push_back(J.alphabet[pick(rng)]);
      prod = K.mul(prod, w.back());
    }
    if (K.norm(prod) > J.bound) {
      CHECK_THROWS_AS(run(J, w), insufficient_bound);
      continue;
    }
    CHECK(v.domain.distance(run(J, w), v.at(prod)) < v.domain.tolerance());
    ++checked;
  }
  CHECK_THROWS_AS(run(A, {n_(11)}), invalid_input);
  CHECK_THROWS_AS(run(A, {n_(2)}, 1), invalid_input);
}

TEST_CASE("state complexity equals the orbit dimension") {
  for (long q : {1L, 2L, 3L, 4L, 6L}) {
    auto R = check_bridy({zeta_gamma(q, 1, 1000)}, 13);
    CHECK(R.equal());
    CHECK(R.dim == static_cast<std::size_t>(q));
  }
  auto r2 = check_bridy({rho_vector(Q(), n_(2), 500)}, 13);
  CHECK(r2.equal());
  CHECK(state_complexity({zeta_gamma(3, 1, 1000), zeta_gamma(2, 1, 1000)}, 13) == 6);
}

TEST_CASE("DOT export is deterministic") {
  Dfao A = dfao_from_witt({zeta_gamma(3, 1, 1000)}, 7);
  std::string d = to_dot(A);
  CHECK(d == to_dot(dfao_from_witt({zeta_gamma(3, 1, 1000)}, 7)));
  CHECK(d.rfind("digraph dfao {", 0) == 0);
  CHECK(d.find("s0 -> s") != std::string::npos);
  CHECK(to_dot(minimize(padded(A))) == to_dot(minimize(A)));
}
