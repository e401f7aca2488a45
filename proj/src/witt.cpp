#include "cmw/witt.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>

#include "cmw/algrec.hpp"
#include "cmw/errors.hpp"
#include "cmw/modular.hpp"

namespace cmw {

namespace {

void require_same(const WittVector& x, const WittVector& y) {
  if (x.field().d() != y.field().d()) throw invalid_input("vectors live over different fields");
  if (x.domain.kind != y.domain.kind || x.domain.field != y.domain.field || x.domain.prec != y.domain.prec)
    throw invalid_input("vectors have different coefficient domains");
}

WittVector narrowed(const WittVector& x, Int b) {
  WittVector r;
  r.index = x.index;
  r.bound = std::min(b, x.bound);
  r.domain = x.domain;
  std::size_t n = x.index->count_upto(r.bound);
  r.values.assign(x.values.begin(), x.values.begin() + static_cast<long>(n));
  return r;
}

template <class Op>
WittVector combine(const WittVector& x, const WittVector& y, Op op) {
  require_same(x, y);
  Int b = std::min(x.bound, y.bound);
  WittVector r = narrowed(x, b);
  for (std::size_t i = 0; i < r.values.size(); ++i) {
    const IdealHNF& I = r.ideal(i);
    r.values[i] = op(r.values[i], y.at(I));
  }
  return r;
}

}  // namespace

WittVector shift(const WittVector& xi, const IdealHNF& a) {
  const QuadField& K = xi.field();
  K.check_same_field(a);
  if (!a.integral()) throw invalid_input("shift needs an integral ideal");
  Int N = a.lattice_norm();
  if (N > xi.bound)
    throw insufficient_bound("bound exhausted: shift by " + a.str() + " of a vector with bound " +
                             std::to_string(xi.bound));
  WittVector r;
  r.index = xi.index;
  r.bound = xi.bound / N;
  r.domain = xi.domain;
  std::size_t n = xi.index->count_upto(r.bound);
  r.values.reserve(n);
  for (std::size_t i = 0; i < n; ++i) r.values.push_back(xi.at(K.mul(a, xi.ideal(i))));
  return r;
}

WittVector pointwise_mul(const WittVector& x, const WittVector& y) {
  return combine(x, y, [&](const Coeff& u, const Coeff& v) -> Coeff {
    if (x.domain.exact()) return x.domain.field->mul(std::get<NfElement>(u), std::get<NfElement>(v));
    return std::get<BigComplex>(u) * std::get<BigComplex>(v);
  });
}

WittVector pointwise_add(const WittVector& x, const WittVector& y) {
  return combine(x, y, [&](const Coeff& u, const Coeff& v) -> Coeff {
    if (x.domain.exact()) return x.domain.field->add(std::get<NfElement>(u), std::get<NfElement>(v));
    return std::get<BigComplex>(u) + std::get<BigComplex>(v);
  });
}

WittVector constant_vector(const QuadField& K, Int B, const mpq_class& c) {
  auto dom = CoeffDomain::cyclotomic(1);
  NfElement v = dom.field->from_rational(c);
  return tabulate(K, B, dom, [&](const IdealHNF&) -> Coeff { return v; });
}

WittVector zeta_gamma(long q, long p, Int B) {
  if (q < 1) throw invalid_input("zeta_gamma needs q >= 1");
  auto dom = CoeffDomain::cyclotomic(static_cast<unsigned>(q));
  const auto& F = *dom.field;
  return tabulate(QuadField::rational(), B, dom, [&](const IdealHNF& I) -> Coeff {
    long e = static_cast<long>((static_cast<__int128>(p) * I.a) % q);
    return F.gen_pow(e);
  });
}

WittVector zlinear_combine(const std::vector<ZetaTerm>& terms, Int B) {
  long L = 1;
  for (const auto& t : terms) {
    mpq_class g = t.gamma;
    g.canonicalize();
    L = std::lcm(L, g.get_den().get_si());
  }
  auto dom = CoeffDomain::cyclotomic(static_cast<unsigned>(L));
  const auto& F = *dom.field;
  std::vector<std::pair<mpq_class, long>> ex;  // coefficient, exponent step
  for (const auto& t : terms) {
    mpq_class s = t.gamma * L;
    s.canonicalize();
    long k = s.get_num().get_si() % L;
    ex.emplace_back(t.coeff, (k + L) % L);
  }
  return tabulate(QuadField::rational(), B, dom, [&](const IdealHNF& I) -> Coeff {
    NfElement v = F.zero();
    for (const auto& [c, k] : ex) {
      long e = static_cast<long>((static_cast<__int128>(k) * I.a) % L);
      v = F.add(v, F.scale(F.gen_pow(e), c));
    }
    return v;
  });
}

namespace {

struct UnPrime {
  IdealHNF prime;
  Int norm;
  bool rational;
  mpq_class t_rat;
  NfElement t_inv;
};

struct UnRun {
  const QuadField& K;
  const NumberField& F;
  std::vector<UnPrime> primes;
  std::map<std::pair<std::size_t, int>, UnVerdict> verdicts;
  std::map<QPoly, bool> integral_cache;
  std::string failure;

  bool integral(const NfElement& x) {
    auto it = integral_cache.find(x.c);
    if (it != integral_cache.end()) return it->second;
    bool r = F.is_algebraic_integer(x);
    integral_cache.emplace(x.c, r);
    return r;
  }

  bool depth0(const WittVector& v, const std::string& where) {
    for (std::size_t i = 0; i < v.size(); ++i)
      if (!integral(std::get<NfElement>(v.values[i]))) {
        if (failure.empty()) failure = where + "component " + v.ideal(i).str() + " is not integral";
        return false;
      }
    return true;
  }

  bool rec(const WittVector& v, int n, const std::string& where) {
    if (n == 0) return depth0(v, where);
    bool ok = rec(v, n - 1, where);
    for (std::size_t k = 0; k < primes.size(); ++k) {
      const UnPrime& p = primes[k];
      if (v.bound < p.norm)
        throw insufficient_bound("bound exhausted: depth " + std::to_string(n) + " step by " + p.prime.str() +
                                 " needs norm " + std::to_string(p.norm) + " but the witness has bound " +
                                 std::to_string(v.bound));
      WittVector eta = shift(v, p.prime);
      std::map<QPoly, NfElement> pw;
      for (std::size_t i = 0; i < eta.size(); ++i) {
        const auto& x = std::get<NfElement>(v.values[i]);
        auto it = pw.find(x.c);
        if (it == pw.end()) it = pw.emplace(x.c, F.pow(x, static_cast<unsigned>(p.norm))).first;
        NfElement e = F.sub(std::get<NfElement>(eta.values[i]), it->second);
        eta.values[i] = p.rational ? F.scale(e, 1 / p.t_rat) : F.mul(e, p.t_inv);
      }
      bool sub = rec(eta, n - 1, where + "psi" + p.prime.str() + " ");
      auto [it, fresh] = verdicts.try_emplace({k, n}, UnVerdict{p.prime, n, true, 0});
      it->second.passed = it->second.passed && sub;
      it->second.tested += 1;
      ok = ok && sub;
    }
    return ok;
  }
};

}  // namespace

UnReport check_un(const WittVector& xi, int depth, Int P) {
  if (!xi.domain.exact()) throw invalid_input("check_un needs an exact coefficient domain");
  if (depth < 0) throw invalid_input("depth must be non-negative");
  const QuadField& K = xi.field();
  const NumberField& F = *xi.domain.field;
  UnReport R;
  R.depth = depth;
  R.prime_bound = P;
  R.bound = xi.bound;
  UnRun run{K, F, {}, {}, {}, {}};
  std::optional<std::optional<NfElement>> omega;
  for (const auto& p : K.primes_up_to(P)) {
    auto t = K.principal_generator(p);
    if (!t) {
      R.skipped.push_back(p);
      continue;
    }
    UnPrime up{p, p.lattice_norm(), t->is_rational(), t->x, F.zero()};
    if (!up.rational) {
      if (!omega) omega = omega_image(K, F);
      if (!*omega) {
        R.skipped.push_back(p);
        continue;
      }
      up.t_inv = F.inv(quad_to_field(F, **omega, *t));
    }
    run.primes.push_back(up);
  }
  R.complete = R.skipped.empty();
  R.passed = run.rec(xi, depth, "");
  R.failure = run.failure;
  for (auto& [key, v] : run.verdicts) R.verdicts.push_back(v);
  std::sort(R.verdicts.begin(), R.verdicts.end(), [](const UnVerdict& a, const UnVerdict& b) {
    if (a.depth != b.depth) return a.depth > b.depth;
    return enum_less(a.prime, b.prime);
  });
  return R;
}

bool is_periodic_mod(const WittVector& xi, const IdealHNF& f) {
  const QuadField& K = xi.field();
  RayClassMonoid M = build_drf(K, f, std::max<Int>(xi.bound, 1));
  std::vector<std::optional<std::size_t>> first(M.size());
  for (std::size_t i = 0; i < xi.size(); ++i) {
    int c = M.find(K, xi.ideal(i));
    if (!first[c]) {
      first[c] = i;
      continue;
    }
    if (!xi.domain.equal(xi.values[*first[c]], xi.values[i])) return false;
  }
  return true;
}

std::optional<IdealHNF> find_modulus(const WittVector& xi, std::vector<IdealHNF> candidates) {
  std::stable_sort(candidates.begin(), candidates.end(), enum_less);
  for (const auto& f : candidates)
    if (is_periodic_mod(xi, f)) return f;
  return std::nullopt;
}

OrbitMonoid orbit_monoid(const std::vector<WittVector>& Xi, Int P, Int resolve) {
  if (Xi.empty()) throw invalid_input("orbit monoid of an empty family");
  if (resolve < 1) throw invalid_input("resolve bound must be positive");
  const QuadField& K = Xi[0].field();
  for (const auto& x : Xi) {
    if (x.field().d() != K.d()) throw invalid_input("vectors live over different fields");
    if (x.bound != Xi[0].bound) throw invalid_input("vectors have different bounds");
  }
  OrbitMonoid M;
  M.alphabet = K.primes_up_to(P);
  M.bound = Xi[0].bound;
  M.prime_bound = P;
  M.resolve = resolve;
  M.min_compared = M.bound;
  M.reps.push_back(K.unit_ideal());
  M.parent.push_back(-1);
  M.letter.push_back(-1);
  M.shifted.push_back(Xi);
  const std::size_t L = M.alphabet.size();

  auto same = [&](const std::vector<WittVector>& a, const std::vector<WittVector>& b) {
    Int common = std::min(a[0].bound, b[0].bound);
    M.min_compared = std::min(M.min_compared, common);
    std::size_t n = a[0].index->count_upto(common);
    for (std::size_t x = 0; x < a.size(); ++x)
      for (std::size_t i = 0; i < n; ++i)
        if (!a[x].domain.equal(a[x].values[i], b[x].values[i])) return false;
    return true;
  };

  for (std::size_t s = 0; s < M.reps.size(); ++s) {
    M.transitions.emplace_back(L, -1);
    for (std::size_t l = 0; l < L; ++l) {
      IdealHNF I = K.mul(M.reps[s], M.alphabet[l]);
      if (M.bound / I.lattice_norm() < resolve)
        throw insufficient_bound("orbit not closed at bound " + std::to_string(M.bound) + ": the shift by " +
                                 I.str() + " leaves fewer than " + std::to_string(resolve) + " norms to compare");
      std::vector<WittVector> next;
      for (const auto& v : M.shifted[s]) next.push_back(shift(v, M.alphabet[l]));
      int hit = -1;
      for (std::size_t t = 0; t < M.reps.size() && hit < 0; ++t)
        if (same(next, M.shifted[t])) hit = static_cast<int>(t);
      if (hit < 0) {
        hit = static_cast<int>(M.reps.size());
        M.reps.push_back(I);
        M.parent.push_back(static_cast<int>(s));
        M.letter.push_back(static_cast<int>(l));
        M.shifted.push_back(std::move(next));
      }
      M.transitions[s][l] = hit;
    }
  }

  const std::size_t n = M.reps.size();
  std::vector<std::vector<int>> word(n);
  for (std::size_t j = 1; j < n; ++j) {
    word[j] = word[M.parent[j]];
    word[j].push_back(M.letter[j]);
  }
  M.table.assign(n, std::vector<int>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      int s = static_cast<int>(i);
      for (int l : word[j]) s = M.transitions[s][l];
      M.table[i][j] = s;
    }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      if (M.table[i][j] != M.table[j][i])
        throw insufficient_bound("induced orbit table is not commutative at bound " + std::to_string(M.bound));
    for (std::size_t l = 0; l < L; ++l)
      if (M.table[i][M.transitions[0][l]] != M.transitions[i][l])
        throw insufficient_bound("orbit transitions disagree with the induced table at bound " +
                                 std::to_string(M.bound));
  }
  return M;
}

std::size_t dim_x(const std::vector<WittVector>& Xi, Int P, Int resolve) {
  return orbit_monoid(Xi, P, resolve).size();
}

JPartition mutual_access_partition(const OrbitMonoid& M) {
  const std::size_t n = M.size();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (std::size_t s = 0; s < n; ++s) {
    std::deque<int> q = {static_cast<int>(s)};
    reach[s][s] = true;
    while (!q.empty()) {
      int u = q.front();
      q.pop_front();
      for (int v : M.transitions[u])
        if (!reach[s][v]) {
          reach[s][v] = true;
          q.push_back(v);
        }
    }
  }
  JPartition P;
  P.block_of.assign(n, -1);
  for (std::size_t s = 0; s < n; ++s) {
    if (P.block_of[s] >= 0) continue;
    int b = static_cast<int>(P.blocks.size());
    P.blocks.emplace_back();
    for (std::size_t t = s; t < n; ++t)
      if (P.block_of[t] < 0 && reach[s][t] && reach[t][s]) {
        P.block_of[t] = b;
        P.blocks[b].push_back(static_cast<int>(t));
      }
  }
  return P;
}

namespace {

// [Q(V):Q] as the dimension of the Q-algebra generated by V inside F.
int subfield_degree(const NumberField& F, const std::vector<NfElement>& V) {
  const int n = F.degree();
  std::vector<std::vector<mpq_class>> ech;  // rows with pivots
  std::vector<int> piv;
  std::vector<NfElement> basis;
  auto insert = [&](const NfElement& x) {
    std::vector<mpq_class> r = x.c;
    for (std::size_t k = 0; k < ech.size(); ++k) {
      if (r[piv[k]] == 0) continue;
      mpq_class f = r[piv[k]] / ech[k][piv[k]];
      for (int j = 0; j < n; ++j) r[j] -= f * ech[k][j];
    }
    for (int j = 0; j < n; ++j)
      if (r[j] != 0) {
        ech.push_back(r);
        piv.push_back(j);
        basis.push_back(x);
        return;
      }
  };
  insert(F.one());
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (const auto& v : V) {
      if (static_cast<int>(basis.size()) == n) return n;
      insert(F.mul(basis[i], v));
    }
  return static_cast<int>(basis.size());
}

}  // namespace

ComponentReport component_report(const std::vector<WittVector>& Xi, Int P, int dmax, Int resolve) {
  OrbitMonoid M = orbit_monoid(Xi, P, resolve);
  ComponentReport R;
  R.partition = j_classes(M.table);
  R.bound = M.bound;
  R.prime_bound = P;
  const QuadField& K = Xi[0].field();
  // complex components are first expressed in one number field
  std::optional<WittVector> exact;
  if (!Xi[0].domain.exact()) {
    CertifiedVector cv = certify_vector(Xi[0], dmax);
    if (cv.ok) exact = std::move(cv.exact);
  }
  const CoeffDomain& dom = exact ? exact->domain : Xi[0].domain;
  for (const auto& block : R.partition.blocks) {
    ComponentClass C;
    C.states = block;
    std::vector<Coeff> vals;
    for (int s : block) {
      const WittVector v = exact ? shift(*exact, M.reps[s]) : M.shifted[s][0];
      for (const auto& c : v.values) {
        bool seen = false;
        for (const auto& w : vals) seen = seen || dom.equal(w, c);
        if (!seen) vals.push_back(c);
      }
    }
    C.values = vals.size();
    std::optional<NfElement> omega;
    if (dom.exact()) {
      omega = omega_image(K, *dom.field);
    }
    if (dom.exact() && omega) {
      std::vector<NfElement> V;
      for (const auto& c : vals) V.push_back(std::get<NfElement>(c));
      if (!K.is_rational()) V.push_back(*omega);
      int deg = subfield_degree(*dom.field, V);
      C.degree_over_K = K.is_rational() ? deg : deg / 2;
      C.method = "exact";
    } else {
      const unsigned prec = dom.exact() ? 120 : dom.prec;
      PrecisionGuard g(prec + 10);
      std::vector<BigComplex> nv;
      for (const auto& c : vals) nv.push_back(dom.numeric(c));
      int best = 0;
      for (int trial = 0; trial < 2; ++trial) {
        BigComplex gam(0);
        for (std::size_t i = 0; i < nv.size(); ++i) gam += Real(static_cast<long>(i * (trial + 2) + 1)) * nv[i];
        if (!K.is_rational()) gam += Real(trial + 1) * tau_field(K);
        try {
          IntPoly p = minpoly(gam, K.is_rational() ? dmax : 2 * dmax, prec);
          best = std::max(best, p.degree());
        } catch (const no_relation&) {
        }
      }
      C.degree_over_K = K.is_rational() ? best : best / 2;
      C.method = best ? "numeric" : "numeric (no relation)";
    }
    R.classes.push_back(C);
  }
  return R;
}

CyclicSearch cyclic_vector_search(long conductor, std::size_t target, Int B, Int P, int max_terms) {
  if (conductor < 1) throw invalid_input("conductor must be positive");
  CyclicSearch S;
  const long coeffs[] = {1, -1, 2};
  std::vector<ZetaTerm> cur;
  auto visit = [&](auto&& self, long from, int left) -> void {
    if (!cur.empty()) {
      ++S.tried;
      try {
        if (dim_x({zlinear_combine(cur, B)}, P) == target) S.hits.push_back(cur);
      } catch (const insufficient_bound&) {
      }
    }
    if (left == 0) return;
    for (long a = from; a < conductor; ++a)
      for (long c : coeffs) {
        cur.push_back({mpq_class(c), mpq_class(a, conductor)});
        cur.back().gamma.canonicalize();
        self(self, a + 1, left - 1);
        cur.pop_back();
      }
  };
  visit(visit, 0, max_terms);
  return S;
}

}  // namespace cmw
