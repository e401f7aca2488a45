#pragma once

// JSON reports shared by the command line and the pipeline runner.  Every
// report carries its truncation parameters under "params".

#include <optional>
#include <string>

#include "cmw/serialize.hpp"

namespace cmw {

struct RunConfig {
  std::string d = "Q";
  Int bound = 400;
  Int primes = 13;
  int depth = 2;
  unsigned prec = 120;
  std::string out, cache;

  /// Overwrites the fields present in j.
  void merge(const json& j);
  void validate() const;
  QuadField field() const { return parse_field(d); }
  json params() const;
};

json report_field(const RunConfig& c);
json report_drf(const RunConfig& c, const std::string& modulus, Int bound);
json report_witt_verify(const RunConfig& c, const json& spec);
json report_witt_orbit(const RunConfig& c, const json& spec);
/// Candidates: all integral ideals of norm <= max_norm.
json report_witt_modulus(const RunConfig& c, const json& spec, Int max_norm);
json report_witt_cyclic(const RunConfig& c, long conductor, std::size_t target, int terms);

enum class AutomataMode { build, minimize, bridy };
/// Fills dot with the Graphviz text of the reported machine.
json report_automata(const RunConfig& c, const json& spec, AutomataMode mode, std::string* dot = nullptr);

json report_modular_eval(const RunConfig& c, const std::string& family);
json report_minpoly(const json& vector, const std::string& ideal, int dmax);
json report_classpoly(const RunConfig& c);
json report_modularity(const RunConfig& c, Int level);

}  // namespace cmw
