#include "cmw/modularity.hpp"

#include <algorithm>
#include <set>

#include "cmw/errors.hpp"
#include "cmw/modular.hpp"
#include "cmw/rayclass.hpp"
#include "cmw/witt.hpp"

namespace cmw {

ModularityReport modularity_check(Int d, Int N, Int B, unsigned prec) {
  if (d >= 0) throw invalid_input("modularity check needs an imaginary quadratic field");
  if (N < 1) throw invalid_input("level must be positive");
  if (prec < 40) throw invalid_input("precision must be at least 40 digits");
  QuadField K = QuadField::imaginary(d);
  ModularityReport R;
  R.d = d;
  R.level = N;
  R.bound = B;
  R.prec = prec;
  R.tolerance_log10 = -static_cast<double>(prec) / 3;
  PrecisionGuard g(prec);
  const Real tol = boost::multiprecision::pow(Real(10), Real(R.tolerance_log10));
  const Real lo = tol / 10, hi = tol * 10;

  std::vector<WittVector> family;
  std::set<std::pair<Int, Int>> seen;
  for (Int i = 0; i < N; ++i)
    for (Int j = 0; j < N; ++j) {
      if (seen.count({(N - i) % N, (N - j) % N})) continue;  // f_{-a} = f_a
      seen.insert({i, j});
      auto F = DeformationFamily::fricke_family(K, mpq_class(i, N), mpq_class(j, N));
      family.push_back(modular_vector(K, F, B, prec));
    }
  R.vectors = family.size();

  const auto& ideals = family[0].index->ideals();
  R.ideals = ideals.size();
  std::vector<std::vector<WittVector>> shifted;
  for (const auto& I : ideals) {
    std::vector<WittVector> row;
    for (const auto& x : family) row.push_back(shift(x, I));
    shifted.push_back(std::move(row));
  }
  // largest component gap of the two shifted families on their common range
  auto gap = [&](std::size_t a, std::size_t b) {
    Real worst = 0;
    for (std::size_t x = 0; x < family.size(); ++x) {
      const auto& u = shifted[a][x];
      const auto& v = shifted[b][x];
      std::size_t n = u.index->count_upto(std::min(u.bound, v.bound));
      for (std::size_t k = 0; k < n; ++k) {
        Real e = dist(std::get<BigComplex>(u.values[k]), std::get<BigComplex>(v.values[k]));
        if (e > worst) worst = e;
      }
    }
    return worst;
  };

  std::vector<int> fam(ideals.size(), -1);
  std::vector<std::size_t> heads;
  for (std::size_t i = 0; i < ideals.size(); ++i) {
    for (std::size_t c = 0; c < heads.size() && fam[i] < 0; ++c) {
      Real e = gap(heads[c], i);
      if (e >= lo && e < hi) R.ambiguous.emplace_back(ideals[heads[c]], ideals[i]);
      if (e < tol) fam[i] = static_cast<int>(c);
    }
    if (fam[i] < 0) {
      fam[i] = static_cast<int>(heads.size());
      heads.push_back(i);
      R.classes.emplace_back();
    }
    R.classes[fam[i]].push_back(ideals[i]);
  }
  R.family_classes = heads.size();

  IdealHNF NO = K.principal(QuadElement(mpq_class(N)));
  RayClassMonoid M = build_drf(K, NO, std::max(B, default_drf_bound(NO)));
  R.ray_class_count = static_cast<Int>(M.size());
  std::vector<int> ray;
  std::set<int> used;
  for (const auto& I : ideals) {
    ray.push_back(M.find(K, I));
    used.insert(ray.back());
  }
  R.ray_classes = used.size();
  for (std::size_t i = 0; i < ideals.size(); ++i)
    for (std::size_t j = i + 1; j < ideals.size(); ++j)
      if ((fam[i] == fam[j]) != (ray[i] == ray[j])) R.mismatches.emplace_back(ideals[i], ideals[j]);

  for (const auto& cls : R.classes) {
    IdealHNF g0 = K.add(cls[0], NO);
    for (const auto& I : cls)
      if (!(K.add(I, NO) == g0)) R.gcd_constant = false;
  }
  return R;
}

}  // namespace cmw
