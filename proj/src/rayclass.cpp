#include "cmw/rayclass.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "cmw/errors.hpp"

namespace cmw {

namespace {

void check_integral(const QuadField& K, const IdealHNF& I, const char* what) {
  K.check_same_field(I);
  if (!I.integral()) throw invalid_input(std::string(what) + " must be an integral ideal");
}

bool congruent_same_gcd(const QuadField& K, const IdealHNF& a, const IdealHNF& b,
                        const IdealHNF& f) {
  auto t0 = K.principal_generator(K.mul(a, K.inverse(b)));
  if (!t0) return false;
  IdealHNF target = K.mul(f, K.inverse(b));
  for (const auto& u : K.units()) {
    QuadElement t = K.mul(*t0, u);
    if (K.is_rational() && t.x <= 0) continue;
    if (K.contains(target, t - QuadElement(1))) return true;
  }
  return false;
}

}  // namespace

bool congruent_mod(const QuadField& K, const IdealHNF& a, const IdealHNF& b, const IdealHNF& f) {
  check_integral(K, a, "a");
  check_integral(K, b, "b");
  check_integral(K, f, "modulus");
  // the relation preserves (., f), which makes this a sound shortcut
  if (!(K.add(a, f) == K.add(b, f))) return false;
  return congruent_same_gcd(K, a, b, f);
}

int RayClassMonoid::find(const QuadField& K, const IdealHNF& I) const {
  IdealHNF g = K.add(I, modulus);
  for (std::size_t i = 0; i < reps.size(); ++i) {
    if (!(gcd_of_class[i] == g)) continue;
    if (congruent_same_gcd(K, I, reps[i], modulus)) return static_cast<int>(i);
  }
  throw insufficient_bound("ideal " + I.str() + " meets no class of the monoid mod " + modulus.str());
}

Int default_drf_bound(const IdealHNF& f) { return std::max<Int>(200, 20 * f.lattice_norm()); }

Int residue_units(const QuadField& K, const IdealHNF& m) {
  Int phi = 1;
  for (auto& [P, e] : K.factor(m)) {
    Int q = P.lattice_norm();
    phi *= q - 1;
    for (int i = 1; i < e; ++i) phi *= q;
  }
  return phi;
}

Int ray_class_number(const QuadField& K, const IdealHNF& m) {
  check_integral(K, m, "modulus");
  if (K.is_rational()) return residue_units(K, m);
  Int h = K.class_group().h;
  Int fixed = 0;
  for (const auto& u : K.units())
    if (K.contains(m, u - QuadElement(1))) ++fixed;
  Int index = static_cast<Int>(K.units().size()) / fixed;
  Int num = h * residue_units(K, m);
  if (num % index != 0) throw std::logic_error("ray class number formula is not integral");
  return num / index;
}

std::vector<int> drf_units(const std::vector<std::vector<int>>& table, int identity) {
  std::vector<int> out;
  for (std::size_t i = 0; i < table.size(); ++i)
    if (std::find(table[i].begin(), table[i].end(), identity) != table[i].end())
      out.push_back(static_cast<int>(i));
  return out;
}

RayClassMonoid build_drf(const QuadField& K, const IdealHNF& f, Int B) {
  check_integral(K, f, "modulus");
  if (B <= 0) B = default_drf_bound(f);
  RayClassMonoid M;
  M.modulus = f;
  M.bound = B;

  Int expected = 0;
  for (const auto& D : K.divisors(f)) expected += ray_class_number(K, K.quotient(f, D));

  for (const auto& I : K.enumerate_ideals(B)) {
    IdealHNF g = K.add(I, f);
    bool found = false;
    for (std::size_t i = 0; i < M.reps.size() && !found; ++i)
      found = M.gcd_of_class[i] == g && congruent_same_gcd(K, I, M.reps[i], f);
    if (found) continue;
    M.reps.push_back(I);
    M.gcd_of_class.push_back(g);
  }
  Int got = static_cast<Int>(M.reps.size());
  if (got < expected)
    throw insufficient_bound("ideals of norm <= " + std::to_string(B) + " meet " + std::to_string(got) +
                             " of the " + std::to_string(expected) + " classes mod " + f.str());
  if (got > expected)
    throw std::logic_error("enumeration finds " + std::to_string(got) + " classes mod " + f.str() +
                           ", counting formula gives " + std::to_string(expected));

  const std::size_t n = M.reps.size();
  M.table.assign(n, std::vector<int>(n, -1));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      int k = M.find(K, K.mul(M.reps[i], M.reps[j]));
      M.table[i][j] = M.table[j][i] = k;
    }
  M.identity = 0;  // (1) is enumerated first
  M.unit_indices = drf_units(M.table, M.identity);
  Int h = ray_class_number(K, f);
  if (static_cast<Int>(M.unit_indices.size()) != h)
    throw std::logic_error("unit group of DR" + f.str() + " has order " +
                           std::to_string(M.unit_indices.size()) + ", formula gives " + std::to_string(h));
  return M;
}

std::vector<int> drf_projection(const QuadField& K, const RayClassMonoid& Mp, const RayClassMonoid& M) {
  if (!K.divides(M.modulus, Mp.modulus))
    throw invalid_input(M.modulus.str() + " does not divide " + Mp.modulus.str());
  std::vector<int> pi(Mp.size());
  for (std::size_t i = 0; i < Mp.size(); ++i) pi[i] = M.find(K, Mp.reps[i]);
  std::vector<bool> hit(M.size(), false);
  for (std::size_t i = 0; i < Mp.size(); ++i) {
    hit[pi[i]] = true;
    for (std::size_t j = 0; j < Mp.size(); ++j)
      if (pi[Mp.table[i][j]] != M.table[pi[i]][pi[j]])
        throw std::logic_error("projection is not multiplicative");
  }
  if (std::find(hit.begin(), hit.end(), false) != hit.end())
    throw std::logic_error("projection is not surjective");
  return pi;
}

JPartition j_classes(const std::vector<std::vector<int>>& table) {
  JPartition P;
  const std::size_t n = table.size();
  P.block_of.assign(n, -1);
  std::map<std::set<int>, int> seen;
  for (std::size_t s = 0; s < n; ++s) {
    std::set<int> ideal(table[s].begin(), table[s].end());
    auto [it, fresh] = seen.emplace(std::move(ideal), static_cast<int>(P.blocks.size()));
    if (fresh) P.blocks.emplace_back();
    P.blocks[it->second].push_back(static_cast<int>(s));
    P.block_of[s] = it->second;
  }
  return P;
}

WittVector rho_vector(const QuadField& K, const IdealHNF& a, Int B) {
  check_integral(K, a, "ideal");
  auto dom = CoeffDomain::cyclotomic(1);
  const auto& F = *dom.field;
  return tabulate(K, B, dom, [&](const IdealHNF& I) -> Coeff {
    return F.from_rational(K.divides(a, I) ? 1 : 0);
  });
}

}  // namespace cmw
