// cmw: command-line front end.
//
// Exit codes: 0 pass, 1 check failed, 2 usage/config/IO, 3 bound or
// precision insufficient.

#include <CLI11.hpp>

#include <functional>
#include <iostream>

#include "cmw/errors.hpp"
#include "cmw/pipeline.hpp"

using namespace cmw;

namespace {

struct Opts {
  std::string config, cache, d, out, dot;
  Int bound = 0, primes = 0;
  int depth = -1;
  unsigned prec = 0;
};

json load_vector_arg(const std::string& s) {
  if (!s.empty() && s.front() == '{') {
    try {
      return json::parse(s);
    } catch (const json::parse_error& e) {
      throw invalid_input(std::string("bad inline vector spec: ") + e.what());
    }
  }
  return read_json_file(s);
}

int emit(const json& report, const std::string& out) {
  std::string text = report.dump(2) + "\n";
  if (out.empty())
    std::cout << text;
  else
    write_file(out, text);
  return report.value("passed", true) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ray class monoids, Witt vectors and modular vectors of imaginary quadratic fields"};
  app.require_subcommand(1);
  Opts o;
  app.add_option("--config", o.config, "JSON run configuration; flags override it");
  app.add_option("--cache", o.cache, "result cache directory");

  auto common = [&](CLI::App* c, bool field = true) {
    if (field) c->add_option("--d", o.d, "field: Q or a negative squarefree integer");
    c->add_option("--bound", o.bound, "ideal-norm bound B");
    c->add_option("--primes", o.primes, "prime-norm bound P");
    c->add_option("--depth", o.depth, "U_n depth");
    c->add_option("--prec", o.prec, "decimal digits");
    c->add_option("--out", o.out, "write the report here instead of stdout");
  };

  std::function<json(const RunConfig&)> job;
  std::string job_name;
  json job_args = json::object();
  auto set_job = [&](const std::string& name, std::function<json(const RunConfig&)> f) {
    job_name = name;
    job = std::move(f);
  };

  auto* field = app.add_subcommand("field", "field data and class group");
  common(field);
  field->callback([&] { set_job("field", report_field); });

  auto* drf = app.add_subcommand("drf", "ray class monoids");
  drf->require_subcommand(1);
  auto* drf_build = drf->add_subcommand("build", "multiplication table of DR_f");
  common(drf_build);
  std::string modulus;
  drf_build->add_option("--modulus", modulus, "modulus ideal: n or a,b,c")->required();
  drf_build->callback([&] {
    job_args = {{"modulus", modulus}};
    set_job("drf", [&](const RunConfig& c) { return report_drf(c, modulus, o.bound); });
  });

  std::string vector_arg;
  auto* witt = app.add_subcommand("witt", "Witt vector checks");
  witt->require_subcommand(1);
  auto* wv = witt->add_subcommand("verify", "recursive U_n test");
  auto* wo = witt->add_subcommand("orbit", "orbit monoid, J-classes and components");
  auto* wm = witt->add_subcommand("modulus", "smallest periodicity modulus");
  auto* wc = witt->add_subcommand("cyclic", "search for single vectors with a given orbit size");
  Int max_norm = 24;
  long conductor = 6;
  std::size_t target = 4;
  int terms = 2;
  for (auto* s : {wv, wo, wm}) {
    common(s, false);
    s->add_option("--vector", vector_arg, "vector spec JSON file or inline JSON")->required();
  }
  wm->add_option("--max-norm", max_norm, "largest candidate modulus norm");
  common(wc, false);
  wc->add_option("--conductor", conductor, "denominator of the gammas");
  wc->add_option("--target", target, "orbit size to look for");
  wc->add_option("--terms", terms, "at most this many zeta terms");
  wv->callback([&] {
    job_args = load_vector_arg(vector_arg);
    set_job("witt-verify", [&](const RunConfig& c) { return report_witt_verify(c, job_args); });
  });
  wo->callback([&] {
    job_args = load_vector_arg(vector_arg);
    set_job("witt-orbit", [&](const RunConfig& c) { return report_witt_orbit(c, job_args); });
  });
  wm->callback([&] {
    job_args = {{"vector", load_vector_arg(vector_arg)}, {"max_norm", max_norm}};
    set_job("witt-modulus", [&](const RunConfig& c) { return report_witt_modulus(c, job_args["vector"], max_norm); });
  });
  wc->callback([&] {
    job_args = {{"conductor", conductor}, {"target", target}, {"terms", terms}};
    set_job("witt-cyclic", [&](const RunConfig& c) { return report_witt_cyclic(c, conductor, target, terms); });
  });

  auto* aut = app.add_subcommand("automata", "automata generating vectors");
  aut->require_subcommand(1);
  std::string dot_text;
  for (auto [name, mode] : {std::pair{"build", AutomataMode::build}, std::pair{"minimize", AutomataMode::minimize},
                            std::pair{"check-bridy", AutomataMode::bridy}}) {
    auto* s = aut->add_subcommand(name, std::string("automata ") + name);
    common(s, false);
    s->add_option("--vector", vector_arg, "vector spec JSON file or inline JSON")->required();
    s->add_option("--dot", o.dot, "write Graphviz output here");
    std::string nm = std::string("automata-") + name;
    AutomataMode m = mode;
    s->callback([&, nm, m] {
      job_args = load_vector_arg(vector_arg);
      set_job(nm, [&, m](const RunConfig& c) {
        json r = report_automata(c, job_args, m, &dot_text);
        r["dot"] = dot_text;
        return r;
      });
    });
  }

  auto* mod = app.add_subcommand("modular", "modular vectors");
  mod->require_subcommand(1);
  auto* meval = mod->add_subcommand("eval", "special values f(m_a, tau) over ideals of norm <= B");
  common(meval);
  std::string family = "j";
  meval->add_option("--family", family, "j | fricke:a1,a2 | char:<ideal>");
  meval->callback([&] {
    job_args = {{"family", family}};
    set_job("modular-eval", [&](const RunConfig& c) { return report_modular_eval(c, family); });
  });

  auto* alg = app.add_subcommand("algrec", "algebraic recognition");
  alg->require_subcommand(1);
  auto* amp = alg->add_subcommand("minpoly", "minimal polynomial of one component");
  std::string value_from, index = "1";
  int dmax = 8;
  amp->add_option("--value-from", value_from, "vector JSON from modular eval")->required();
  amp->add_option("--index", index, "ideal: n or a,b,c");
  amp->add_option("--dmax", dmax, "largest degree tried");
  amp->add_option("--out", o.out, "write the report here instead of stdout");
  amp->callback([&] {
    job_args = {{"vector", read_json_file(value_from)}, {"index", index}, {"dmax", dmax}};
    set_job("algrec-minpoly", [&](const RunConfig&) { return report_minpoly(job_args["vector"], index, dmax); });
  });
  auto* acp = alg->add_subcommand("classpoly", "Hilbert class polynomial");
  common(acp);
  acp->callback([&] { set_job("algrec-classpoly", report_classpoly); });

  auto* chk = app.add_subcommand("check", "composite checks");
  chk->require_subcommand(1);
  auto* cmod = chk->add_subcommand("modularity", "vector congruence of level N against ray classes mod N");
  common(cmod);
  Int level = 1;
  cmod->add_option("--level,-N", level, "level N");
  cmod->callback([&] {
    job_args = {{"level", level}};
    set_job("modularity", [&](const RunConfig& c) { return report_modularity(c, level); });
  });
  auto* cpipe = chk->add_subcommand("pipeline", "run a pipeline spec file");
  std::string spec_path;
  cpipe->add_option("spec", spec_path, "pipeline spec JSON")->required();
  cpipe->add_option("--out", o.out, "artifact directory (overrides the spec)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    RunConfig cfg;
    if (!o.config.empty()) cfg.merge(read_json_file(o.config));
    if (!o.cache.empty()) cfg.cache = o.cache;
    if (!o.d.empty()) cfg.d = o.d;
    if (o.bound) cfg.bound = o.bound;
    if (o.primes) cfg.primes = o.primes;
    if (o.depth >= 0) cfg.depth = o.depth;
    if (o.prec) cfg.prec = o.prec;

    if (cpipe->parsed()) {
      cfg.out = o.out;
      PipelineResult R = run_pipeline(read_json_file(spec_path), cfg);
      std::cout << "artifacts " << R.files.size() << ", failed " << R.failed << ", errors " << R.errors
                << ", cache hits " << R.cache_hits << "\nconfig " << R.config_hash << "\n";
      return R.failed ? 1 : 0;
    }

    cfg.validate();
    ResultCache cache(cfg.cache);
    json key = {{"command", job_name}, {"args", job_args}, {"params", cfg.params()}};
    json report;
    if (auto hit = cache.get(key)) {
      report = *hit;
    } else {
      report = job(cfg);
      cache.put(key, report);
    }
    if (report.contains("dot")) {
      if (!o.dot.empty()) write_file(o.dot, report["dot"].get<std::string>());
      report.erase("dot");
    }
    return emit(report, o.out);
  } catch (const insufficient_bound& e) {
    std::cerr << "insufficient bound: " << e.what() << "\n";
    return 3;
  } catch (const precision_unreachable& e) {
    std::cerr << "precision unreachable: " << e.what() << "\n";
    return 3;
  } catch (const no_relation& e) {
    std::cerr << "no relation: " << e.what() << "\n";
    return 1;
  } catch (const artifact_error& e) {
    std::cerr << "artifact error: " << e.what() << "\n";
    return 2;
  } catch (const invalid_input& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
