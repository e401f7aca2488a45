#include "cmw/pipeline.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <filesystem>
#include <map>

#include "cmw/errors.hpp"

namespace cmw {

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr))
    throw std::runtime_error("sha256 failed");
  std::string hex;
  char buf[3];
  for (unsigned i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

std::string canonical(const json& j) { return j.dump(); }

ResultCache::ResultCache(std::string dir) : dir_(std::move(dir)) {}

std::string ResultCache::path_for(const json& key) const {
  return (std::filesystem::path(dir_) / (sha256_hex(canonical(key)) + ".json")).string();
}

std::optional<json> ResultCache::get(const json& key) const {
  if (dir_.empty()) return std::nullopt;
  std::string p = path_for(key);
  if (!std::filesystem::exists(p)) return std::nullopt;
  json e = read_json_file(p);
  if (!e.is_object() || e.value("schema", std::string()) != "cmw.cache/1" || !e.contains("result"))
    throw artifact_error("cache entry " + p + " is malformed");
  if (e.value("key", std::string()) != sha256_hex(canonical(key)))
    throw artifact_error("cache entry " + p + " has the wrong key");
  if (e.value("checksum", std::string()) != sha256_hex(canonical(e["result"])))
    throw artifact_error("checksum mismatch in cache entry " + p);
  return e["result"];
}

void ResultCache::put(const json& key, const json& result) const {
  if (dir_.empty()) return;
  std::filesystem::create_directories(dir_);
  json e = {{"schema", "cmw.cache/1"},
            {"key", sha256_hex(canonical(key))},
            {"checksum", sha256_hex(canonical(result))},
            {"result", result}};
  write_file(path_for(key), e.dump(1) + "\n");
}

namespace {

RunConfig task_config(const RunConfig& base, const json& task) {
  RunConfig c = base;
  c.merge(task);
  c.validate();
  return c;
}

AutomataMode automata_mode(const std::string& t) {
  if (t == "automata-build") return AutomataMode::build;
  if (t == "automata-minimize") return AutomataMode::minimize;
  return AutomataMode::bridy;
}

}  // namespace

json run_task(const RunConfig& base, const json& task, std::string* dot) {
  if (!task.is_object() || !task.contains("task")) throw invalid_input("pipeline task needs a \"task\"");
  const std::string t = task["task"].get<std::string>();
  RunConfig c = task_config(base, task);
  try {
    if (t == "field") return report_field(c);
    if (t == "drf") return report_drf(c, task.at("modulus").is_string() ? task["modulus"].get<std::string>()
                                                                         : task["modulus"].dump(),
                                      task.value("drf_bound", Int(0)));
    if (t == "witt-verify") return report_witt_verify(c, task.at("vector"));
    if (t == "witt-orbit") return report_witt_orbit(c, task.at("vector"));
    if (t == "witt-modulus") return report_witt_modulus(c, task.at("vector"), task.value("max_norm", Int(24)));
    if (t == "witt-cyclic")
      return report_witt_cyclic(c, task.at("conductor").get<long>(), task.at("target").get<std::size_t>(),
                                task.value("terms", 2));
    if (t == "automata-build" || t == "automata-minimize" || t == "automata-check-bridy")
      return report_automata(c, task.at("vector"), automata_mode(t), dot);
    if (t == "modular-eval") return report_modular_eval(c, task.value("family", std::string("j")));
    if (t == "classpoly") return report_classpoly(c);
    if (t == "modularity") return report_modularity(c, task.value("level", Int(1)));
  } catch (const json::exception& e) {
    throw invalid_input("task " + t + ": " + e.what());
  }
  throw invalid_input("unknown pipeline task '" + t + "'");
}

PipelineResult run_pipeline(const json& spec, const RunConfig& base0) {
  if (!spec.is_object() || spec.value("schema", std::string()) != "cmw.pipeline/1")
    throw invalid_input("pipeline spec needs \"schema\": \"cmw.pipeline/1\"");
  RunConfig base = base0;
  if (spec.contains("config")) base.merge(spec["config"]);
  if (spec.contains("out") && base.out.empty()) base.out = spec["out"].get<std::string>();
  if (spec.contains("cache") && base.cache.empty()) base.cache = spec["cache"].get<std::string>();
  base.validate();
  if (base.out.empty()) throw invalid_input("pipeline spec needs an output directory");
  namespace fs = std::filesystem;
  fs::create_directories(base.out);

  PipelineResult R;
  R.config_hash = sha256_hex(canonical(spec));
  ResultCache cache(base.cache);
  json artifacts = json::array();
  std::map<std::string, json> by_name;
  int n = 0;
  for (const auto& task : spec.value("tasks", json::array())) {
    ++n;
    char num[16];
    std::snprintf(num, sizeof num, "%02d", n);
    std::string name = task.value("name", std::string(num) + "_" + task.value("task", std::string("task")));
    RunConfig c = task_config(base, task);
    json key = {{"task", task}, {"params", c.params()}};
    json result;
    std::string dot;
    if (auto hit = cache.get(key)) {
      result = *hit;
      ++R.cache_hits;
    } else {
      try {
        if (task.value("task", std::string()) == "minpoly") {
          const std::string from = task.at("from").get<std::string>();
          if (!by_name.count(from)) throw invalid_input("minpoly task refers to unknown task '" + from + "'");
          result = report_minpoly(by_name[from], task.at("index").get<std::string>(), task.value("dmax", 8));
        } else {
          result = run_task(base, task, &dot);
        }
        if (!dot.empty()) result["dot"] = dot;
        cache.put(key, result);
      } catch (const artifact_error&) {
        throw;
      } catch (const std::exception& e) {
        const char* kind = dynamic_cast<const insufficient_bound*>(&e)      ? "insufficient_bound"
                           : dynamic_cast<const precision_unreachable*>(&e) ? "precision_unreachable"
                           : dynamic_cast<const no_relation*>(&e)           ? "no_relation"
                                                                            : "invalid_input";
        result = {{"schema", "cmw.error/1"}, {"params", c.params()}, {"task", task}, {"kind", kind},
                  {"error", e.what()}, {"passed", false}};
        ++R.errors;
      }
    }
    result["config_hash"] = R.config_hash;
    if (!result.value("passed", true)) ++R.failed;
    if (result.contains("dot")) {
      std::string dp = (fs::path(base.out) / (name + ".dot")).string();
      std::string text = result["dot"].get<std::string>();
      write_file(dp, text);
      artifacts.push_back({{"file", name + ".dot"}, {"sha256", sha256_hex(text)}});
      R.files.push_back(dp);
      result.erase("dot");
    }
    std::string text = result.dump(2) + "\n";
    std::string p = (fs::path(base.out) / (name + ".json")).string();
    write_file(p, text);
    artifacts.push_back({{"file", name + ".json"}, {"sha256", sha256_hex(text)}});
    R.files.push_back(p);
    by_name[name] = result;
  }
  json manifest = {{"schema", "cmw.manifest/1"}, {"config_hash", R.config_hash}, {"artifacts", artifacts},
                   {"failed", R.failed}, {"errors", R.errors}};
  std::string mp = (fs::path(base.out) / "manifest.json").string();
  write_file(mp, manifest.dump(2) + "\n");
  R.files.push_back(mp);
  return R;
}

}  // namespace cmw
