#include "cmw/serialize.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cmw/errors.hpp"

namespace cmw {

json ideal_json(const IdealHNF& I) {
  return {{"d", I.d}, {"ideal", {{"a", I.a}, {"b", I.b}, {"c", I.c}, {"den", I.den}}}};
}

IdealHNF parse_ideal(const QuadField& K, const std::string& s) {
  std::vector<Int> v;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) {
    std::size_t used = 0;
    Int x = 0;
    try {
      x = std::stoll(part, &used);
    } catch (const std::exception&) {
      throw invalid_input("bad ideal '" + s + "'");
    }
    while (used < part.size() && part[used] == ' ') ++used;
    if (used != part.size()) throw invalid_input("bad ideal '" + s + "'");
    v.push_back(x);
  }
  if (v.size() == 1) {
    if (v[0] == 0) throw invalid_input("the zero ideal is not allowed");
    return K.principal(QuadElement(mpq_class(v[0] < 0 ? -v[0] : v[0])));
  }
  if (v.size() == 3 || v.size() == 4) return K.ideal(v[0], v[1], v[2], v.size() == 4 ? v[3] : 1);
  throw invalid_input("bad ideal '" + s + "': expected n or a,b,c[,den]");
}

IdealHNF ideal_from_json(const QuadField& K, const json& j) {
  try {
    if (j.is_number_integer()) return parse_ideal(K, std::to_string(j.get<Int>()));
    if (j.is_string()) return parse_ideal(K, j.get<std::string>());
    if (j.is_object() && j.contains("ideal")) {
      if (j.contains("d") && j["d"].get<Int>() != K.d())
        throw invalid_input("ideal belongs to d = " + std::to_string(j["d"].get<Int>()) + ", not " + K.name());
      return ideal_from_json(K, j["ideal"]);
    }
    if (j.is_object())
      return K.ideal(j.at("a").get<Int>(), j.at("b").get<Int>(), j.at("c").get<Int>(), j.value("den", Int(1)));
  } catch (const json::exception& e) {
    throw invalid_input(std::string("bad ideal JSON: ") + e.what());
  }
  throw invalid_input("bad ideal JSON");
}

QuadField parse_field(const std::string& s) {
  if (s == "Q" || s == "q" || s == "1") return QuadField::rational();
  try {
    std::size_t used = 0;
    Int d = std::stoll(s, &used);
    if (used == s.size()) return QuadField::from_d(d);
  } catch (const std::invalid_argument&) {
  } catch (const std::out_of_range&) {
  }
  throw invalid_input("bad field '" + s + "': expected Q or a negative squarefree integer");
}

json field_json(const QuadField& K) {
  json j = {{"schema", "cmw.field/1"}, {"d", K.d()}, {"name", K.name()}};
  if (K.is_rational()) return j;
  j["disc"] = K.disc();
  j["omega"] = {{"trace", K.omega_trace()}, {"norm", K.omega_norm()}};
  j["units"] = K.units().size();
  ClassGroup G = K.class_group();
  j["class_number"] = G.h;
  json reps = json::array(), forms = json::array();
  for (const auto& r : G.reps) reps.push_back(ideal_json(r)["ideal"]);
  for (const auto& f : G.forms) forms.push_back(f);
  j["class_reps"] = reps;
  j["forms"] = forms;
  return j;
}

json table_json(const RayClassMonoid& M) {
  json reps = json::array();
  for (const auto& r : M.reps) reps.push_back(ideal_json(r)["ideal"]);
  JPartition P = j_classes(M.table);
  return {{"schema", "cmw.drf/1"},
          {"d", M.modulus.d},
          {"modulus", ideal_json(M.modulus)["ideal"]},
          {"bound", M.bound},
          {"reps", reps},
          {"table", M.table},
          {"identity", M.identity},
          {"units", M.unit_indices},
          {"jclasses", P.blocks}};
}

mpq_class parse_rational(const std::string& s) {
  mpq_class q;
  if (s.empty() || q.set_str(s, 10) != 0) throw invalid_input("bad rational '" + s + "'");
  if (q.get_den() == 0) throw invalid_input("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

DeformationFamily parse_family(const QuadField& K, const std::string& s) {
  if (s == "j") return DeformationFamily::j_family();
  auto colon = s.find(':');
  std::string head = s.substr(0, colon), rest = colon == std::string::npos ? "" : s.substr(colon + 1);
  if (head == "fricke") {
    auto comma = rest.find(',');
    if (comma == std::string::npos) throw invalid_input("fricke family needs a1,a2");
    return DeformationFamily::fricke_family(K, parse_rational(rest.substr(0, comma)),
                                            parse_rational(rest.substr(comma + 1)));
  }
  if (head == "char") return DeformationFamily::rho_character(K, parse_ideal(K, rest));
  throw invalid_input("unknown family '" + s + "'");
}

namespace {

QuadField spec_field(const json& j) {
  if (!j.contains("d")) return QuadField::rational();
  if (j["d"].is_string()) return parse_field(j["d"].get<std::string>());
  return QuadField::from_d(j["d"].get<Int>());
}

}  // namespace

QuadField VectorSpec::field() const {
  if (kind == "zeta" || kind == "zlin") return QuadField::rational();
  return spec_field(raw);
}

WittVector VectorSpec::build(Int B, unsigned prec) const {
  try {
    if (kind == "zeta") {
      mpq_class g = parse_rational(raw.at("gamma").get<std::string>());
      return zeta_gamma(g.get_den().get_si(), g.get_num().get_si(), B);
    }
    if (kind == "zlin") {
      std::vector<ZetaTerm> terms;
      for (const auto& t : raw.at("terms")) {
        mpq_class c = t.at(0).is_string() ? parse_rational(t.at(0).get<std::string>()) : mpq_class(t.at(0).get<long>());
        terms.push_back({c, parse_rational(t.at(1).get<std::string>())});
      }
      if (terms.empty()) throw invalid_input("zlin needs at least one term");
      return zlinear_combine(terms, B);
    }
    QuadField K = field();
    if (kind == "modular") {
      unsigned p = raw.value("prec", prec);
      return modular_vector(K, parse_family(K, raw.value("family", std::string("j"))), B, p);
    }
    if (kind == "rho") return rho_vector(K, ideal_from_json(K, raw.at("ideal")), B);
    if (kind == "ones") return constant_vector(K, B, 1);
  } catch (const json::exception& e) {
    throw invalid_input(std::string("bad vector spec: ") + e.what());
  }
  throw invalid_input("unknown vector kind '" + kind + "'");
}

VectorSpec vector_spec(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw invalid_input("vector spec needs a \"kind\"");
  VectorSpec s{j, j["kind"].get<std::string>()};
  static const char* kinds[] = {"zeta", "zlin", "modular", "rho", "ones"};
  for (const char* k : kinds)
    if (s.kind == k) return s;
  throw invalid_input("unknown vector kind '" + s.kind + "'");
}

json vector_json(const WittVector& v, unsigned digits) {
  unsigned prec = v.domain.exact() ? 40 : v.domain.prec;
  if (!digits) digits = prec;
  json comps = json::array();
  PrecisionGuard g(prec);
  for (std::size_t i = 0; i < v.size(); ++i) {
    BigComplex z = v.domain.numeric(v.values[i]);
    json c = {{"ideal", ideal_json(v.ideal(i))["ideal"]}, {"re", z.re_str(digits)}, {"im", z.im_str(digits)}};
    if (v.domain.exact()) c["exact"] = v.domain.str(v.values[i]);
    comps.push_back(c);
  }
  return {{"schema", "cmw.vector/1"}, {"d", v.field().d()}, {"bound", v.bound},
          {"prec", prec},             {"domain", v.domain.describe()}, {"components", comps}};
}

WittVector vector_from_json(const json& j) {
  try {
    if (j.value("schema", std::string()) != "cmw.vector/1") throw invalid_input("not a vector artifact");
    QuadField K = QuadField::from_d(j.at("d").get<Int>());
    Int B = j.at("bound").get<Int>();
    unsigned prec = j.at("prec").get<unsigned>();
    PrecisionGuard g(prec);
    WittVector v;
    v.index = IdealIndex::make(K, B);
    v.bound = B;
    v.domain = CoeffDomain::complex(prec);
    const auto& comps = j.at("components");
    if (comps.size() != v.index->ideals().size()) throw invalid_input("vector artifact has the wrong number of components");
    for (std::size_t i = 0; i < comps.size(); ++i) {
      if (!(ideal_from_json(K, comps[i].at("ideal")) == v.index->ideals()[i]))
        throw invalid_input("vector artifact components are out of enumeration order");
      v.values.push_back(BigComplex::parse(comps[i].at("re").get<std::string>(), comps[i].at("im").get<std::string>()));
    }
    return v;
  } catch (const json::exception& e) {
    throw invalid_input(std::string("bad vector artifact: ") + e.what());
  }
}

json poly_json(const IntPoly& p) {
  json c = json::array();
  for (const auto& x : p.coeffs) c.push_back(x.get_str());
  return {{"schema", "cmw.intpoly/1"}, {"coeffs", c}, {"residual", p.residual_str()}, {"degree", p.degree()},
          {"text", poly::str(p.coeffs)}};
}

json un_json(const UnReport& r) {
  json v = json::array();
  for (const auto& x : r.verdicts)
    v.push_back({{"prime", ideal_json(x.prime)["ideal"]}, {"depth", x.depth}, {"passed", x.passed}, {"tested", x.tested}});
  json sk = json::array();
  for (const auto& p : r.skipped) sk.push_back(ideal_json(p)["ideal"]);
  return {{"depth", r.depth}, {"primes", r.prime_bound}, {"bound", r.bound}, {"passed", r.passed},
          {"complete", r.complete}, {"verdicts", v}, {"skipped", sk}, {"failure", r.failure}};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw artifact_error("cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw artifact_error(path + ": " + e.what());
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::error_code ec;
  auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent, ec);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw artifact_error("cannot write " + path);
  out << text;
  if (!out) throw artifact_error("write failed for " + path);
}

}  // namespace cmw
