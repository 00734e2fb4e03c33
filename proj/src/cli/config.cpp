#include "ermakov/cli/config.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "ermakov/expr/parse.hpp"
#include "ermakov/lie/algebra.hpp"
#include "ermakov/sigma/sigma.hpp"

namespace ermakov::cli {

namespace {

using json = nlohmann::ordered_json;
using expr::Expression;

const std::set<std::string> kJetSymbols = {"t", "x", "y", "xdot", "ydot"};

std::string child(const std::string& ptr, const std::string& key) {
  std::string esc;
  for (char c : key) {
    if (c == '~') esc += "~0";
    else if (c == '/') esc += "~1";
    else esc += c;
  }
  return ptr + "/" + esc;
}

void expect_object(const json& j, const std::string& ptr, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw ConfigError(ptr, "expected an object");
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw ConfigError(child(ptr, key), "unknown key");
  }
}

double number(const json& j, const std::string& ptr) {
  if (!j.is_number()) throw ConfigError(ptr, "expected a number");
  return j.get<double>();
}

std::uint64_t unsigned_integer(const json& j, const std::string& ptr) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
    throw ConfigError(ptr, "expected a nonnegative integer");
  return j.get<std::uint64_t>();
}

std::string string(const json& j, const std::string& ptr) {
  if (!j.is_string()) throw ConfigError(ptr, "expected a string");
  return j.get<std::string>();
}

bool boolean(const json& j, const std::string& ptr) {
  if (!j.is_boolean()) throw ConfigError(ptr, "expected true or false");
  return j.get<bool>();
}

Expression expression(const json& j, const std::string& ptr) {
  if (j.is_number_integer()) return Expression(static_cast<int>(j.get<std::int64_t>()));
  if (j.is_number()) return Expression::real(j.get<double>());
  std::string text = string(j, ptr);
  try {
    return expr::parse(text);
  } catch (const expr::ParseError& e) {
    throw ConfigError(ptr, std::string("cannot parse expression: ") + e.what());
  }
}

models::UnaryFunction function_entry(const json& j, const std::string& ptr, const std::string& name,
                                     const std::string& default_param, bool& opaque) {
  if (j.is_string() && j.get<std::string>() == "opaque") {
    opaque = true;
    return models::UnaryFunction::opaque(name, default_param);
  }
  if (j.is_string() || j.is_number()) {
    opaque = false;
    return models::UnaryFunction::closed(name, default_param, expression(j, ptr));
  }
  expect_object(j, ptr, {"param", "body"});
  std::string param = j.contains("param") ? string(j["param"], child(ptr, "param")) : default_param;
  if (!j.contains("body")) throw ConfigError(child(ptr, "body"), "missing (use \"opaque\" for an undefined function)");
  Expression body = expression(j["body"], child(ptr, "body"));
  for (const auto& s : expr::free_symbols(body))
    if (s != param && kJetSymbols.count(s))
      throw ConfigError(child(ptr, "body"), "body of " + name + " may depend only on '" + param + "' and parameters, found '" + s + "'");
  opaque = false;
  return models::UnaryFunction::closed(name, param, body);
}

jet::PointGenerator generator_entry(const json& j, const std::string& ptr) {
  expect_object(j, ptr, {"xi", "eta1", "eta2", "sigma"});
  if (j.contains("sigma")) {
    if (j.contains("xi") || j.contains("eta1") || j.contains("eta2"))
      throw ConfigError(ptr, "give either sigma or xi/eta1/eta2");
    return sigma::build_generator_family(expression(j["sigma"], child(ptr, "sigma")));
  }
  for (const char* k : {"xi", "eta1", "eta2"})
    if (!j.contains(k)) throw ConfigError(child(ptr, k), "missing");
  try {
    return jet::PointGenerator(expression(j["xi"], child(ptr, "xi")),
                               {expression(j["eta1"], child(ptr, "eta1")), expression(j["eta2"], child(ptr, "eta2"))});
  } catch (const std::invalid_argument& e) {
    throw ConfigError(ptr, e.what());
  }
}

}  // namespace

expr::Bindings RunConfig::bindings() const {
  expr::Bindings b = parameters;
  for (const auto& [name, def] : model.functions()) b.functions[name] = def;
  return b;
}

void RunConfig::require_numeric() const {
  for (const auto* fn : {&model.f, &model.g, &model.h}) {
    if (fn == &model.h && model.H_override) continue;
    auto def = fn->definition();
    if (!def || (!def->body && !def->native))
      throw ConfigError("/functions/" + fn->name, "a closed-form body is required for numeric runs");
  }
}

const NamedGenerator& RunConfig::generator(const std::string& name) const {
  for (const auto& g : generators)
    if (g.name == name) return g;
  throw ConfigError("/generators", "no generator named '" + name + "'");
}

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("invalid JSON: ") + e.what());
  }
  expect_object(j, "", {"model", "functions", "parameters", "generators", "run", "initial", "pinney", "outputs", "expect"});
  RunConfig cfg;

  cfg.declared_opaque = {{"f", true}, {"g", true}, {"h", true}};
  if (j.contains("functions")) {
    const auto& fs = j["functions"];
    expect_object(fs, "/functions", {"f", "g", "h"});
    for (const auto& [name, value] : fs.items()) {
      std::string param = name == "h" ? "v" : "u";
      bool opaque = true;
      auto fn = function_entry(value, child("/functions", name), name, param, opaque);
      cfg.declared_opaque[name] = opaque;
      if (name == "f") cfg.model.f = fn;
      else if (name == "g") cfg.model.g = fn;
      else cfg.model.h = fn;
    }
  }

  if (j.contains("model")) {
    const auto& m = j["model"];
    expect_object(m, "/model", {"w", "C", "C0", "H", "integrable_h", "compatible_g"});
    if (m.contains("w")) cfg.model.w = expression(m["w"], "/model/w");
    if (m.contains("C")) cfg.model.C = expression(m["C"], "/model/C");
    if (m.contains("C0")) cfg.model.C0 = expression(m["C0"], "/model/C0");
    if (m.contains("H")) cfg.model.H_override = expression(m["H"], "/model/H");
    if (expr::contains_any_symbol(cfg.model.w, {"x", "y", "xdot", "ydot"}))
      throw ConfigError("/model/w", "w may depend only on t");
    if (expr::contains_any_symbol(cfg.model.C, kJetSymbols)) throw ConfigError("/model/C", "must be a constant");
    if (expr::contains_any_symbol(cfg.model.C0, kJetSymbols)) throw ConfigError("/model/C0", "must be a constant");
    if (m.contains("integrable_h") && boolean(m["integrable_h"], "/model/integrable_h")) {
      if (j.contains("functions") && j["functions"].contains("h"))
        throw ConfigError("/model/integrable_h", "conflicts with /functions/h");
      cfg.model.with_integrable_h();
      cfg.declared_opaque["h"] = false;
    }
    if (m.contains("compatible_g") && boolean(m["compatible_g"], "/model/compatible_g")) {
      if (j.contains("functions") && j["functions"].contains("g"))
        throw ConfigError("/model/compatible_g", "conflicts with /functions/g");
      cfg.model.with_compatible_g();
      cfg.declared_opaque["g"] = false;
    }
  }

  if (j.contains("parameters")) {
    const auto& ps = j["parameters"];
    if (!ps.is_object()) throw ConfigError("/parameters", "expected an object");
    for (const auto& [name, value] : ps.items()) {
      if (kJetSymbols.count(name))
        throw ConfigError(child("/parameters", name), "not a parameter");
      cfg.parameters.set(name, number(value, child("/parameters", name)));
    }
  }

  if (j.contains("generators")) {
    const auto& gs = j["generators"];
    if (!gs.is_object()) throw ConfigError("/generators", "expected an object");
    for (const auto& [name, value] : gs.items())
      cfg.generators.push_back({name, generator_entry(value, child("/generators", name))});
  }

  if (j.contains("run")) {
    const auto& r = j["run"];
    expect_object(r, "/run", {"t0", "t1", "samples", "rtol", "atol", "seed", "tol", "check_samples", "drift_tol", "coordinates"});
    auto& s = cfg.run;
    if (r.contains("t0")) s.t0 = number(r["t0"], "/run/t0");
    if (r.contains("t1")) s.t1 = number(r["t1"], "/run/t1");
    if (r.contains("samples")) s.samples = unsigned_integer(r["samples"], "/run/samples");
    if (r.contains("rtol")) s.rtol = number(r["rtol"], "/run/rtol");
    if (r.contains("atol")) s.atol = number(r["atol"], "/run/atol");
    if (r.contains("seed")) s.seed = unsigned_integer(r["seed"], "/run/seed");
    if (r.contains("tol")) s.tol = number(r["tol"], "/run/tol");
    if (r.contains("check_samples")) s.check_samples = unsigned_integer(r["check_samples"], "/run/check_samples");
    if (r.contains("drift_tol")) s.drift_tol = number(r["drift_tol"], "/run/drift_tol");
    if (r.contains("coordinates")) {
      s.coordinates = string(r["coordinates"], "/run/coordinates");
      if (s.coordinates != "cartesian" && s.coordinates != "polar")
        throw ConfigError("/run/coordinates", "expected \"cartesian\" or \"polar\"");
    }
    if (!(s.t1 > s.t0)) throw ConfigError("/run/t1", "must exceed t0");
    if (s.samples < 2) throw ConfigError("/run/samples", "at least 2 samples");
    if (!(s.rtol > 0)) throw ConfigError("/run/rtol", "must be positive");
    if (!(s.atol >= 0)) throw ConfigError("/run/atol", "must be nonnegative");
    if (!(s.tol > 0)) throw ConfigError("/run/tol", "must be positive");
  }

  if (j.contains("initial")) {
    const auto& i = j["initial"];
    expect_object(i, "/initial", {"x", "y", "xdot", "ydot"});
    for (const char* k : {"x", "y", "xdot", "ydot"})
      if (!i.contains(k)) throw ConfigError(child("/initial", k), "missing");
    cfg.initial = models::CartesianState{number(i["x"], "/initial/x"), number(i["y"], "/initial/y"),
                                         number(i["xdot"], "/initial/xdot"), number(i["ydot"], "/initial/ydot")};
  }

  if (j.contains("pinney")) {
    const auto& p = j["pinney"];
    expect_object(p, "/pinney", {"w0", "c2", "rho0", "rhodot0"});
    PinneySettings s;
    if (p.contains("w0")) s.w0 = number(p["w0"], "/pinney/w0");
    if (p.contains("c2")) s.c2 = number(p["c2"], "/pinney/c2");
    if (p.contains("rho0")) s.rho0 = number(p["rho0"], "/pinney/rho0");
    if (p.contains("rhodot0")) s.rhodot0 = number(p["rhodot0"], "/pinney/rhodot0");
    if (s.c2 < 0) throw ConfigError("/pinney/c2", "must be nonnegative");
    if (!(s.rho0 > 0)) throw ConfigError("/pinney/rho0", "must be positive");
    cfg.pinney = s;
  }

  if (j.contains("outputs")) {
    const auto& o = j["outputs"];
    expect_object(o, "/outputs", {"report", "trajectory", "drift", "table", "equations", "pinney"});
    for (const auto& [key, value] : o.items()) {
      std::string name = string(value, child("/outputs", key));
      output_path(".", key, name);
      cfg.outputs[key] = name;
    }
  }

  if (j.contains("expect")) {
    const auto& e = j["expect"];
    expect_object(e, "/expect", {"label"});
    if (e.contains("label")) {
      std::string label = string(e["label"], "/expect/label");
      bool known = false;
      for (auto c : {lie::Classification::Abelian, lie::Classification::Heisenberg, lie::Classification::Solvable,
                     lie::Classification::Sl2R, lie::Classification::Su2, lie::Classification::Other,
                     lie::Classification::Unclassified})
        known = known || lie::to_string(c) == label;
      if (!known) throw ConfigError("/expect/label", "unknown algebra label '" + label + "'");
      cfg.expect_label = label;
    }
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot read config file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::filesystem::path output_path(const std::filesystem::path& out_dir, const std::string& key, const std::string& name) {
  std::filesystem::path p(name);
  if (name.empty() || p.is_absolute() || p.has_root_name())
    throw ConfigError("/outputs/" + key, "must be a relative file name inside the output directory");
  for (const auto& part : p)
    if (part == "..") throw ConfigError("/outputs/" + key, "must not leave the output directory");
  return out_dir / p;
}

expr::FunctionTable witness_functions(const RunConfig& cfg) {
  static const std::map<std::string, std::pair<std::string, const char*>> stand_in = {
      {"f", {"u", "1 + u^2/3"}}, {"g", {"u", "(3 + u)/(4 + u^2)"}}, {"h", {"v", "(2 + v^2)/(3 + v)"}}};
  expr::FunctionTable out;
  for (const auto& [name, opaque] : cfg.declared_opaque) {
    if (!opaque) continue;
    const auto& [param, body] = stand_in.at(name);
    out[name] = expr::FunctionDef::closed(param, expr::parse(body));
  }
  return out;
}

}  // namespace ermakov::cli
