#pragma once

// Content-addressed result cache and the spec-file pipeline runner.

#include <optional>
#include <string>
#include <vector>

#include "cmw/reports.hpp"

namespace cmw {

std::string sha256_hex(const std::string& data);
/// Compact dump with sorted keys.
std::string canonical(const json& j);

class ResultCache {
 public:
  explicit ResultCache(std::string dir);  // empty dir disables the cache
  /// Throws artifact_error when a stored entry fails its checksum.
  std::optional<json> get(const json& key) const;
  void put(const json& key, const json& result) const;
  std::string path_for(const json& key) const;

 private:
  std::string dir_;
};

/// One task of a pipeline spec, e.g. {"task":"drf","modulus":"3"}; keys
/// besides "task" and "name" are task arguments or config overrides.
json run_task(const RunConfig& base, const json& task, std::string* dot = nullptr);

struct PipelineResult {
  std::vector<std::string> files;
  std::string config_hash;
  int failed = 0, errors = 0, cache_hits = 0;
};

/// Writes <out>/<name>.json per task (plus .dot for automata tasks) and
/// <out>/manifest.json.  Output is byte-identical for identical specs.
PipelineResult run_pipeline(const json& spec, const RunConfig& overrides_base = {});

}  // namespace cmw
