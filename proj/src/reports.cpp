#include "cmw/reports.hpp"

#include <cmath>

#include "cmw/automata.hpp"
#include "cmw/errors.hpp"
#include "cmw/modularity.hpp"

namespace cmw {

void RunConfig::merge(const json& j) {
  try {
    if (j.contains("d")) d = j["d"].is_string() ? j["d"].get<std::string>() : std::to_string(j["d"].get<Int>());
    if (j.contains("bound")) bound = j["bound"].get<Int>();
    if (j.contains("primes")) primes = j["primes"].get<Int>();
    if (j.contains("depth")) depth = j["depth"].get<int>();
    if (j.contains("prec")) prec = j["prec"].get<unsigned>();
    if (j.contains("out")) out = j["out"].get<std::string>();
    if (j.contains("cache")) cache = j["cache"].get<std::string>();
  } catch (const json::exception& e) {
    throw invalid_input(std::string("bad config: ") + e.what());
  }
}

void RunConfig::validate() const {
  if (bound < 1) throw invalid_input("bound must be positive");
  if (primes < 2) throw invalid_input("prime bound must be at least 2");
  if (depth < 0) throw invalid_input("depth must be non-negative");
  if (prec < 40) throw invalid_input("precision must be at least 40 digits");
  parse_field(d);
}

json RunConfig::params() const {
  return {{"d", field().d()}, {"bound", bound}, {"primes", primes}, {"depth", depth}, {"prec", prec}};
}

namespace {

json ideals_json(const std::vector<IdealHNF>& v) {
  json a = json::array();
  for (const auto& I : v) a.push_back(ideal_json(I)["ideal"]);
  return a;
}

json head(const char* schema, const RunConfig& c) { return {{"schema", schema}, {"params", c.params()}}; }

RunConfig with_field(RunConfig c, const QuadField& K) {
  c.d = K.is_rational() ? "Q" : std::to_string(K.d());
  return c;
}

}  // namespace

json report_field(const RunConfig& c) {
  json j = field_json(c.field());
  j["params"] = c.params();
  j["passed"] = true;
  return j;
}

json report_drf(const RunConfig& c, const std::string& modulus, Int bound) {
  QuadField K = c.field();
  IdealHNF f = parse_ideal(K, modulus);
  RayClassMonoid M = build_drf(K, f, bound);
  json j = table_json(M);
  j["params"] = c.params();
  j["params"]["bound"] = M.bound;
  j["ray_class_number"] = ray_class_number(K, f);
  j["passed"] = static_cast<Int>(M.unit_indices.size()) == ray_class_number(K, f);
  return j;
}

json report_witt_verify(const RunConfig& c0, const json& spec) {
  VectorSpec s = vector_spec(spec);
  RunConfig c = with_field(c0, s.field());
  WittVector xi = s.build(c.bound, c.prec);
  json j = head("cmw.witt.verify/1", c);
  j["vector"] = spec;
  j["domain"] = xi.domain.describe();
  if (!xi.domain.exact()) {
    CertifiedVector cv = certify_vector(xi);
    j["certified"] = {{"ok", cv.ok}, {"failure", cv.failure}};
    if (!cv.ok) {
      j["passed"] = false;
      return j;
    }
    j["certified"]["field"] = cv.field->describe();
    j["certified"]["all_integral"] = cv.all_integral();
    xi = cv.exact;
  }
  UnReport r = check_un(xi, c.depth, c.primes);
  j["un"] = un_json(r);
  j["passed"] = r.passed;
  return j;
}

json report_witt_orbit(const RunConfig& c0, const json& spec) {
  VectorSpec s = vector_spec(spec);
  RunConfig c = with_field(c0, s.field());
  std::vector<WittVector> Xi = {s.build(c.bound, c.prec)};
  OrbitMonoid M = orbit_monoid(Xi, c.primes);
  JPartition J = j_classes(M.table), A = mutual_access_partition(M);
  ComponentReport C = component_report(Xi, c.primes);
  json j = head("cmw.witt.orbit/1", c);
  j["vector"] = spec;
  j["resolve"] = M.resolve;
  j["min_compared"] = M.min_compared;
  j["dim"] = M.size();
  j["alphabet"] = ideals_json(M.alphabet);
  j["reps"] = ideals_json(M.reps);
  j["transitions"] = M.transitions;
  j["table"] = M.table;
  j["jclasses"] = J.blocks;
  json comps = json::array();
  for (const auto& k : C.classes)
    comps.push_back({{"states", k.states}, {"values", k.values}, {"degree_over_K", k.degree_over_K}, {"method", k.method}});
  j["components"] = comps;
  j["passed"] = J.blocks == A.blocks;
  return j;
}

json report_witt_modulus(const RunConfig& c0, const json& spec, Int max_norm) {
  VectorSpec s = vector_spec(spec);
  RunConfig c = with_field(c0, s.field());
  WittVector xi = s.build(c.bound, c.prec);
  auto cands = xi.field().enumerate_ideals(max_norm);
  auto f = find_modulus(xi, cands);
  json j = head("cmw.witt.modulus/1", c);
  j["vector"] = spec;
  j["max_norm"] = max_norm;
  j["modulus"] = f ? ideal_json(*f)["ideal"] : json(nullptr);
  j["passed"] = f.has_value();
  return j;
}

json report_witt_cyclic(const RunConfig& c0, long conductor, std::size_t target, int terms) {
  RunConfig c = with_field(c0, QuadField::rational());
  CyclicSearch S = cyclic_vector_search(conductor, target, c.bound, c.primes, terms);
  json j = head("cmw.witt.cyclic/1", c);
  j["conductor"] = conductor;
  j["target"] = target;
  j["max_terms"] = terms;
  j["tried"] = S.tried;
  json hits = json::array();
  for (const auto& h : S.hits) {
    json t = json::array();
    for (const auto& z : h) t.push_back({z.coeff.get_str(), z.gamma.get_str()});
    hits.push_back(t);
  }
  j["hits"] = hits;
  j["passed"] = !S.hits.empty();
  return j;
}

json report_automata(const RunConfig& c0, const json& spec, AutomataMode mode, std::string* dot) {
  VectorSpec s = vector_spec(spec);
  RunConfig c = with_field(c0, s.field());
  std::vector<WittVector> Xi = {s.build(c.bound, c.prec)};
  Dfao A = dfao_from_witt(Xi, c.primes);
  json j = head("cmw.automata/1", c);
  j["vector"] = spec;
  j["alphabet"] = ideals_json(A.alphabet);
  j["states"] = A.size();
  j["commutes"] = commutes(A);
  const Dfao* shown = &A;
  Dfao R;
  bool ok = commutes(A);
  if (mode != AutomataMode::build) {
    R = minimize(A);
    shown = &R;
    j["minimized_states"] = R.size();
    j["equivalent"] = equivalent(A, R);
    ok = ok && equivalent(A, R);
  }
  if (mode == AutomataMode::bridy) {
    j["dim"] = A.size();
    j["complexity"] = R.size();
    j["equal"] = A.size() == R.size();
    ok = ok && A.size() == R.size();
  }
  j["transitions"] = shown->delta;
  json outs = json::array();
  for (const auto& row : shown->outputs) outs.push_back(shown->domains[0].str(row[0], 20));
  j["outputs"] = outs;
  j["passed"] = ok;
  if (dot) *dot = to_dot(*shown);
  return j;
}

json report_modular_eval(const RunConfig& c, const std::string& family) {
  QuadField K = c.field();
  WittVector v = modular_vector(K, parse_family(K, family), c.bound, c.prec);
  json j = vector_json(v);
  j["family"] = family;
  j["params"] = c.params();
  return j;
}

json report_minpoly(const json& vector, const std::string& ideal, int dmax) {
  WittVector v = vector_from_json(vector);
  IdealHNF I = parse_ideal(v.field(), ideal);
  PrecisionGuard g(v.domain.prec);
  json j = {{"schema", "cmw.algrec.minpoly/1"},
            {"params", {{"d", v.field().d()}, {"bound", v.bound}, {"prec", v.domain.prec}, {"dmax", dmax}}},
            {"index", ideal_json(I)["ideal"]}};
  try {
    j["poly"] = poly_json(minpoly(std::get<BigComplex>(v.at(I)), dmax, v.domain.prec));
    j["passed"] = true;
  } catch (const no_relation& e) {
    j["failure"] = e.what();
    j["passed"] = false;
  }
  return j;
}

json report_classpoly(const RunConfig& c) {
  ClassPolynomial P = class_polynomial(c.field(), c.prec);
  json j = head("cmw.algrec.classpoly/1", c);
  j["poly"] = poly_json(P.poly);
  j["reps"] = ideals_json(P.reps);
  j["max_rounding_error"] = P.max_rounding_error;
  j["passed"] = P.max_rounding_error < 0.01;
  return j;
}

json report_modularity(const RunConfig& c, Int level) {
  QuadField K = c.field();
  ModularityReport R = modularity_check(K.d(), level, c.bound, c.prec);
  json j = head("cmw.check.modularity/1", c);
  j["level"] = level;
  j["tolerance_log10"] = R.tolerance_log10;
  j["vectors"] = R.vectors;
  j["ideals"] = R.ideals;
  j["family_classes"] = R.family_classes;
  j["ray_classes"] = R.ray_classes;
  j["ray_class_count"] = R.ray_class_count;
  auto pairs = [](const std::vector<std::pair<IdealHNF, IdealHNF>>& v) {
    json a = json::array();
    for (const auto& [x, y] : v) a.push_back({ideal_json(x)["ideal"], ideal_json(y)["ideal"]});
    return a;
  };
  j["mismatches"] = pairs(R.mismatches);
  j["ambiguous"] = pairs(R.ambiguous);
  j["gcd_constant"] = R.gcd_constant;
  json cls = json::array();
  for (const auto& k : R.classes) cls.push_back(ideals_json(k));
  j["classes"] = cls;
  j["passed"] = R.passed();
  return j;
}

}  // namespace cmw
