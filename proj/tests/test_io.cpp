#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cmw/errors.hpp"
#include "cmw/pipeline.hpp"

using namespace cmw;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("cmw_io_" + std::to_string(::getpid()) + "_" + name);
  fs::remove_all(p);
  return p;
}

int cli(const std::string& args) {
  std::string cmd = std::string(CMW_CLI) + " " + args + " >/dev/null 2>&1";
  int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

json small_spec() {
  return json::parse(R"({
    "schema": "cmw.pipeline/1",
    "config": {"bound": 200, "primes": 13, "depth": 2, "prec": 60},
    "tasks": [
      {"task": "drf", "d": "Q", "modulus": "6"},
      {"task": "witt-verify", "vector": {"kind": "zeta", "gamma": "1/4"}},
      {"name": "z3", "task": "automata-minimize", "vector": {"kind": "zeta", "gamma": "1/3"}, "primes": 7},
      {"name": "jv", "task": "modular-eval", "d": "-5", "family": "j", "bound": 30},
      {"task": "minpoly", "from": "jv", "index": "2,1,1", "dmax": 4},
      {"task": "witt-verify", "vector": {"kind": "zeta", "gamma": "1/3"}, "bound": 20}
    ]
  })");
}

}  // namespace

TEST_CASE("ideals and fields round-trip") {
  for (Int d : {1L, -1L, -5L, -15L}) {
    QuadField K = d == 1 ? QuadField::rational() : QuadField::imaginary(d);
    for (const auto& I : K.enumerate_ideals(40)) {
      json j = ideal_json(I);
      CHECK(ideal_from_json(K, j) == I);
      CHECK(ideal_from_json(K, json::parse(j.dump())) == I);
    }
  }
  auto K = QuadField::imaginary(-5);
  CHECK(parse_ideal(K, "3") == K.principal(QuadElement(3)));
  CHECK(parse_ideal(K, "3,1,1") == K.ideal(3, 1, 1));
  CHECK(ideal_from_json(K, json(6)) == K.principal(QuadElement(6)));
  CHECK_THROWS_AS(parse_ideal(K, "3,2,2"), invalid_input);
  CHECK_THROWS_AS(parse_ideal(K, "x"), invalid_input);
  CHECK(parse_field("Q").is_rational());
  CHECK(parse_field("-15").d() == -15);
  CHECK_THROWS_AS(parse_field("7"), invalid_input);
  CHECK(field_json(K)["schema"] == "cmw.field/1");
}

TEST_CASE("vectors and polynomials round-trip") {
  auto K = QuadField::imaginary(-5);
  auto v = modular_vector(K, DeformationFamily::j_family(), 30, 60);
  json j = vector_json(v);
  CHECK(j["schema"] == "cmw.vector/1");
  WittVector w = vector_from_json(json::parse(j.dump()));
  REQUIRE(w.size() == v.size());
  PrecisionGuard g(60);
  for (std::size_t i = 0; i < v.size(); ++i) {
    CHECK(w.ideal(i) == v.ideal(i));
    CHECK(v.domain.distance(w.values[i], v.values[i]) < v.domain.tolerance());
  }
  CHECK(vector_json(w).dump() == j.dump());

  IntPoly p;
  p.coeffs = {mpz_class(-2), mpz_class(0), mpz_class(1)};
  p.residual_log10 = -70;
  json pj = poly_json(p);
  CHECK(pj["schema"] == "cmw.intpoly/1");
  CHECK(pj["coeffs"] == json::array({"-2", "0", "1"}));
  CHECK(pj["residual"] == "1e-70");

  CHECK_THROWS_AS(vector_spec(json::parse(R"({"kind":"nonsense"})")).build(10, 40), invalid_input);
  CHECK(parse_rational("-3/6") == mpq_class(-1, 2));
  CHECK_THROWS_AS(vector_from_json(json::parse(R"({"schema":"cmw.vector/1"})")), invalid_input);
}

TEST_CASE("monoid tables") {
  auto Q = QuadField::rational();
  json t = table_json(build_drf(Q, Q.ideal(6, 0, 1)));
  CHECK(t["schema"] == "cmw.drf/1");
  CHECK(t["table"].size() == 6);
  CHECK(t["units"] == json::array({0, 4}));
}

TEST_CASE("pipelines are deterministic and cached") {
  fs::path a = scratch("a"), b = scratch("b"), c = scratch("c"), cache = scratch("cache");
  json spec = small_spec();

  RunConfig base;
  base.out = a.string();
  PipelineResult ra = run_pipeline(spec, base);
  base.out = b.string();
  PipelineResult rb = run_pipeline(spec, base);
  CHECK(ra.files.size() == 8);
  CHECK(ra.config_hash == rb.config_hash);
  CHECK(ra.errors == 1);  // the last task's bound is too small
  for (const auto& f : fs::directory_iterator(a)) CHECK(slurp(f.path()) == slurp(b / f.path().filename()));

  // with a cache: the second run reuses every entry and changes no byte
  base.out = c.string();
  base.cache = cache.string();
  PipelineResult r1 = run_pipeline(spec, base);
  PipelineResult r2 = run_pipeline(spec, base);
  CHECK(r1.cache_hits == 0);
  CHECK(r2.cache_hits == 5);
  for (const auto& f : fs::directory_iterator(a)) CHECK(slurp(f.path()) == slurp(c / f.path().filename()));

  json m = read_json_file((a / "manifest.json").string());
  CHECK(m["schema"] == "cmw.manifest/1");
  for (const auto& art : m["artifacts"]) CHECK(art["sha256"] == sha256_hex(slurp(a / art["file"].get<std::string>())));

  // poison one cache entry
  fs::path victim;
  for (const auto& f : fs::directory_iterator(cache)) victim = f.path();
  REQUIRE_FALSE(victim.empty());
  json e = read_json_file(victim.string());
  e["result"]["passed"] = !e["result"].value("passed", true);
  write_file(victim.string(), e.dump());
  CHECK_THROWS_WITH_AS(run_pipeline(spec, base), doctest::Contains("checksum mismatch"), artifact_error);

  for (const auto& p : {a, b, c, cache}) fs::remove_all(p);
}

TEST_CASE("sha256") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(canonical(json::parse(R"({"b":1,"a":[2,3]})")) == R"({"a":[2,3],"b":1})");
}

TEST_CASE("command-line exit codes") {
  fs::path cache = scratch("clicache"), out = scratch("cliout");
  CHECK(cli("drf build --d Q --modulus 6") == 0);
  CHECK(cli("field --d -5") == 0);
  CHECK(cli("witt verify --vector '{\"kind\":\"zeta\",\"gamma\":\"1/3\"}' --bound 200") == 0);
  CHECK(cli("witt verify --vector '{\"kind\":\"zlin\",\"terms\":[[\"1/2\",\"1/3\"]]}' --bound 200") == 1);
  CHECK(cli("witt verify --vector '{\"kind\":\"zeta\",\"gamma\":\"1/3\"}' --bound 30") == 3);
  CHECK(cli("automata check-bridy --vector '{\"kind\":\"zeta\",\"gamma\":\"1/3\"}' --primes 7") == 0);
  CHECK(cli("check modularity --d -5 -N 1 --bound 40") == 0);
  CHECK(cli("algrec classpoly --d -15") == 0);
  CHECK(cli("drf build --d Q") == 2);
  CHECK(cli("nonsense") == 2);
  CHECK(cli("field --d 3") == 2);
  CHECK(cli("field --prec 10") == 2);
  CHECK(cli("--config /nonexistent/cfg.json field") == 2);
  CHECK(cli("check pipeline /nonexistent/spec.json") == 2);

  // cached run, then poisoned cache
  CHECK(cli("--cache " + cache.string() + " drf build --d Q --modulus 5 --out " + (out / "r.json").string()) == 0);
  CHECK(cli("--cache " + cache.string() + " drf build --d Q --modulus 5 --out " + (out / "s.json").string()) == 0);
  CHECK(slurp(out / "r.json") == slurp(out / "s.json"));
  for (const auto& f : fs::directory_iterator(cache)) {
    std::string t = slurp(f.path());
    t.replace(t.find("\"passed\": true"), 14, "\"passed\":false");
    write_file(f.path().string(), t);
  }
  CHECK(cli("--cache " + cache.string() + " drf build --d Q --modulus 5") == 2);
  fs::remove_all(cache);
  fs::remove_all(out);
}

TEST_CASE("the shipped desk pipeline passes") {
  fs::path out = scratch("desk");
  RunConfig base;
  base.out = out.string();
  PipelineResult R = run_pipeline(read_json_file(std::string(CMW_SOURCE_DIR) + "/pipelines/desk.json"), base);
  CHECK(R.failed == 0);
  CHECK(R.errors == 0);
  json m = read_json_file((out / "manifest.json").string());
  CHECK(m["artifacts"].size() + 1 == R.files.size());
  fs::remove_all(out);
}
