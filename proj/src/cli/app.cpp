#include "ermakov/cli/app.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "ermakov/cli/config.hpp"
#include "ermakov/dynamics/csv.hpp"
#include "ermakov/dynamics/simulate.hpp"
#include "ermakov/expr/parse.hpp"
#include "ermakov/expr/print.hpp"
#include "ermakov/jet/check.hpp"
#include "ermakov/jet/noether.hpp"
#include "ermakov/jet/symmetry.hpp"
#include "ermakov/lie/algebra.hpp"
#include "ermakov/sigma/sigma.hpp"

namespace ermakov::cli {

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

struct Flags {
  std::string config;
  std::string out = ".";
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
  std::optional<double> tol, rtol, atol;
  std::string generator;
};

struct Context {
  RunConfig cfg;
  Flags flags;
  std::ostream& out;

  fs::path path(const std::string& key, const std::string& fallback = "") const {
    auto it = cfg.outputs.find(key);
    std::string name = it != cfg.outputs.end() ? it->second : fallback;
    if (name.empty()) return {};
    fs::path p = output_path(flags.out, key, name);
    fs::create_directories(p.parent_path());
    return p;
  }

  void write(const std::string& key, const std::string& content, const std::string& fallback = "") const {
    fs::path p = path(key, fallback);
    if (p.empty()) return;
    std::ofstream f(p, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write '" + p.string() + "'");
    f << content;
    out << "wrote " << p.string() << '\n';
  }

  jet::CheckOptions check_options(bool witnesses) const {
    jet::CheckOptions o;
    o.bindings = cfg.parameters;
    if (witnesses)
      for (auto& [name, def] : witness_functions(cfg)) o.bindings.functions[name] = def;
    o.samples = cfg.run.check_samples;
    o.tol = cfg.run.tol;
    o.seed = cfg.run.seed;
    return o;
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// A residual that cannot be sampled is a config problem: something lacks a value.
jet::ZeroCheck checked_zero(const expr::Expression& e, const jet::SecondOrderSystem& sys, const jet::CheckOptions& o) {
  jet::ZeroCheck z = jet::check_zero(e, sys, o);
  if (!z.zero && !z.note.empty())
    throw ConfigError("/parameters", "cannot evaluate a residual (" + z.note + "); give every parameter a value");
  return z;
}

int verify_symmetry(const Context& ctx) {
  const auto& cfg = ctx.cfg;
  if (cfg.generators.empty()) throw ConfigError("/generators", "verify-symmetry needs at least one generator");
  std::vector<const NamedGenerator*> selected;
  if (ctx.flags.generator.empty()) {
    for (const auto& g : cfg.generators) selected.push_back(&g);
  } else {
    selected.push_back(&cfg.generator(ctx.flags.generator));
  }
  jet::SecondOrderSystem sys = models::build_system(cfg.model);
  jet::CheckOptions o = ctx.check_options(true);
  bool all = true;
  double worst = 0.0;
  json report = {{"generators", json::array()}};
  for (const auto* ng : selected) {
    auto residual = jet::symmetry_residual(ng->generator, sys);
    json entry = {{"name", ng->name}, {"generator", ng->generator.str()}, {"components", json::array()}};
    bool zero = true;
    for (std::size_t a = 0; a < residual.size(); ++a) {
      jet::ZeroCheck z = checked_zero(residual[a], sys, o);
      zero = zero && z.zero;
      worst = std::max(worst, z.zero ? 0.0 : z.max_abs);
      std::string how = z.structural ? "structural" : "sampled over " + std::to_string(o.samples) + " points";
      ctx.out << ng->name << " component " << sys.coords[a] << ": " << (z.zero ? "zero" : "NONZERO") << " ("
              << how << ", max |residual| " << fmt(z.structural ? 0.0 : z.max_abs) << ")\n";
      if (!z.zero) ctx.out << "  residual = " << expr::to_string(residual[a]) << '\n';
      entry["components"].push_back({{"coordinate", sys.coords[a]}, {"zero", z.zero}, {"structural", z.structural},
                                     {"max_abs", z.structural ? 0.0 : z.max_abs}});
    }
    entry["symmetry"] = zero;
    report["generators"].push_back(entry);
    all = all && zero;
  }
  report["max_residual"] = worst;
  report["passed"] = all;
  bool witnesses = false;
  for (const auto& [name, opaque] : cfg.declared_opaque) witnesses = witnesses || opaque;
  if (witnesses && !all) ctx.out << "(opaque functions sampled with stand-in bodies; a nonzero value rules out an identity)\n";
  ctx.out << "max residual " << fmt(worst) << '\n';
  ctx.write("report", report.dump(2) + "\n");
  return all ? kPassed : kCheckFailed;
}

int determining(const Context& ctx) {
  jet::SecondOrderSystem sys = models::build_system(ctx.cfg.model);
  auto eqs = jet::determining_equations(sys);
  std::string text = jet::format_equations(eqs);
  ctx.out << text;
  ctx.out << eqs.size() << " conditions\n";
  ctx.write("equations", text);
  return kPassed;
}

int commutators(const Context& ctx) {
  const auto& cfg = ctx.cfg;
  if (cfg.generators.empty()) throw ConfigError("/generators", "commutators needs at least one generator");
  std::vector<jet::PointGenerator> basis;
  std::vector<std::string> labels;
  for (const auto& g : cfg.generators) {
    basis.push_back(g.generator);
    labels.push_back(g.name);
  }
  lie::DecompositionOptions o;
  o.params = cfg.parameters;
  o.seed = cfg.run.seed;
  if (ctx.flags.samples) o.samples = *ctx.flags.samples;
  lie::AlgebraTable table = lie::structure_constants(basis, labels, o);
  lie::Classification label = lie::classify(table, cfg.parameters);
  ctx.out << table.str() << "label: " << lie::to_string(label) << '\n';

  json j = {{"basis", labels}, {"brackets", json::array()}, {"label", lie::to_string(label)}};
  const std::size_t n = table.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = i + 1; k < n; ++k) {
      json terms = json::object();
      for (std::size_t m = 0; m < n; ++m)
        if (!table(i, k, m).is_zero()) terms[labels[m]] = expr::to_string(table(i, k, m));
      j["brackets"].push_back({{"left", labels[i]}, {"right", labels[k]}, {"value", terms}});
    }
  ctx.write("table", j.dump(2) + "\n");
  if (cfg.expect_label && *cfg.expect_label != lie::to_string(label)) {
    ctx.out << "expected label " << *cfg.expect_label << '\n';
    return kCheckFailed;
  }
  return kPassed;
}

int simulate(const Context& ctx) {
  const auto& cfg = ctx.cfg;
  if (!cfg.initial) throw ConfigError("/initial", "simulate needs an initial state");
  cfg.require_numeric();
  dynamics::SimulationOptions o;
  o.integrate.rtol = cfg.run.rtol;
  o.integrate.atol = cfg.run.atol;
  o.integrate.samples = cfg.run.samples;
  dynamics::Simulation sim;
  try {
    if (cfg.run.coordinates == "polar") {
      sim = dynamics::simulate_polar(cfg.model, cfg.parameters, models::to_polar_state(*cfg.initial), cfg.run.t0,
                                     cfg.run.t1, o);
    } else {
      sim = dynamics::simulate(cfg.model, cfg.parameters, *cfg.initial, cfg.run.t0, cfg.run.t1, o);
    }
  } catch (const expr::UnboundSymbol& e) {
    throw ConfigError("/parameters", "no value for '" + e.symbol + "'");
  }
  const auto& traj = sim.trajectory;
  ctx.out << "integrated " << cfg.run.coordinates << " system over [" << fmt(cfg.run.t0) << ", " << fmt(cfg.run.t1)
          << "]: " << traj.meta.accepted << " steps accepted, " << traj.meta.rejected << " rejected\n";
  bool ok = true;
  for (const auto& r : sim.drift) {
    bool within = r.within(cfg.run.drift_tol);
    ok = ok && within;
    ctx.out << r.name << ": initial " << fmt(r.initial) << ", relative drift " << fmt(r.relative) << " ("
            << (within ? "within " : "EXCEEDS ") << fmt(cfg.run.drift_tol) << ")\n";
  }
  std::ostringstream tcsv, dcsv;
  dynamics::write_trajectory_csv(tcsv, traj, sim.state_names, sim.columns());
  dynamics::write_drift_csv(dcsv, traj, sim.drift);
  ctx.write("trajectory", tcsv.str(), "trajectory.csv");
  ctx.write("drift", dcsv.str(), "drift.csv");
  return ok ? kPassed : kCheckFailed;
}

int pinney(const Context& ctx) {
  const auto& cfg = ctx.cfg;
  if (!cfg.pinney) throw ConfigError("/pinney", "pinney needs w0, c2, rho0, rhodot0");
  const auto& s = *cfg.pinney;
  sigma::PinneyParams p{s.w0, s.c2};
  dynamics::IntegrateOptions o;
  o.rtol = cfg.run.rtol;
  o.atol = cfg.run.atol;
  o.samples = cfg.run.samples;
  auto rho = sigma::integrate_pinney(p, s.rho0, s.rhodot0, cfg.run.t0, cfg.run.t1, o);
  auto red = sigma::pinney_reduce(rho, p);
  double worst = 0.0;
  for (double r : red.third_order_residual) worst = std::max(worst, std::abs(r));
  bool ok = red.first_integral.within(cfg.run.drift_tol);
  ctx.out << "sigma = rho^2 first integral: initial " << fmt(red.first_integral.initial) << " (2 c2 = " << fmt(2 * s.c2)
          << "), max drift " << fmt(red.first_integral.max_abs) << ", relative " << fmt(red.first_integral.relative)
          << (ok ? " within " : " EXCEEDS ") << fmt(cfg.run.drift_tol) << '\n';
  ctx.out << "third-order residual max " << fmt(worst) << '\n';
  std::ostringstream csv;
  csv << "t,rho,rhodot,sigma,first_integral\n";
  for (std::size_t i = 0; i < rho.size(); ++i) {
    auto r = rho.state(i);
    using dynamics::format_double;
    csv << format_double(rho.times[i]) << ',' << format_double(r[0]) << ',' << format_double(r[1]) << ','
        << format_double(red.sigma.state(i)[0]) << ',' << format_double(red.first_integral.values[i]) << '\n';
  }
  ctx.write("pinney", csv.str(), "pinney.csv");
  return ok ? kPassed : kCheckFailed;
}

int cartan(const Context& ctx) {
  const auto& cfg = ctx.cfg;
  models::LagrangianModel m = models::build_lagrangian(cfg.model);
  models::SymbolicInvariant inv = models::ermakov_lewis_symbolic(cfg.model);
  expr::FunctionTable table = m.functions;
  for (const auto& [name, def] : inv.functions) table[name] = def;
  jet::SecondOrderSystem sys = models::build_system(cfg.model);
  for (const auto& [name, def] : table) sys.functions[name] = def;
  auto g = jet::cartan_generator(inv.I, m.L, sys.coords, sys.parameters, table);
  ctx.out << "first integral: " << expr::to_string(inv.I) << '\n';
  ctx.out << "Lagrangian: " << expr::to_string(m.L) << '\n';
  ctx.out << "generator: " << g.str() << '\n';
  auto report = jet::verify_dynamical(g, inv.I, sys, m.L, ctx.check_options(true));
  for (const auto& note : report.notes) ctx.out << "  " << note << '\n';
  if (!report.pass && report.max_residual == 0.0)
    for (const auto& note : report.notes)
      if (note.find("unbound") != std::string::npos) throw ConfigError("/parameters", note);
  ctx.out << "first integral " << (report.first_integral ? "yes" : "NO") << ", pairing "
          << (report.pairing ? "yes" : "NO") << ", extension " << (report.extension ? "yes" : "NO") << '\n';
  ctx.out << (report.pass ? "dynamical symmetry verified" : "dynamical symmetry FAILED") << '\n';
  json j = {{"generator", g.str()},
            {"xi", expr::to_string(g.xi)},
            {"eta", {expr::to_string(g.eta[0]), expr::to_string(g.eta[1])}},
            {"eta_dot", {expr::to_string(g.eta_dot[0]), expr::to_string(g.eta_dot[1])}},
            {"passed", report.pass},
            {"max_residual", report.max_residual}};
  ctx.write("report", j.dump(2) + "\n");
  return report.pass ? kPassed : kCheckFailed;
}

int lagrangian_check(const Context& ctx) {
  const auto& cfg = ctx.cfg;
  jet::SecondOrderSystem sys = models::build_system(cfg.model);
  jet::CheckOptions o = ctx.check_options(true);
  expr::Expression compat = models::lagrangian_compatibility(cfg.model.f, cfg.model.g);
  jet::ZeroCheck cz = checked_zero(compat, sys, o);
  ctx.out << "compatibility y^2 f'(y/x) + x^2 g'(y/x) = " << expr::to_string(compat) << ": "
          << (cz.zero ? "zero" : "NONZERO") << '\n';
  json j = {{"compatibility", expr::to_string(compat)}, {"compatible", cz.zero}};
  bool ok = cz.zero;
  if (cfg.model.H_override) {
    ctx.out << "an explicit H has no Lagrangian of this form\n";
    ok = false;
  }
  if (ok) {
    try {
      models::LagrangianModel m = models::build_lagrangian(cfg.model);
      auto el = jet::euler_lagrange_system(m.L, sys.coords, sys.parameters, m.functions);
      ctx.out << "L = " << expr::to_string(m.L) << '\n';
      j["lagrangian"] = expr::to_string(m.L);
      for (std::size_t a = 0; a < el.rhs.size(); ++a) {
        jet::ZeroCheck z = checked_zero(el.rhs[a] - sys.rhs[a], sys, o);
        ctx.out << "Euler-Lagrange equation for " << sys.coords[a] << ": " << (z.zero ? "matches" : "DIFFERS") << '\n';
        ok = ok && z.zero;
      }
    } catch (const models::NonIntegrable& e) {
      ctx.out << "no potential for h: curl " << expr::to_string(e.curl) << '\n';
      ok = false;
    }
  }
  j["passed"] = ok;
  ctx.write("report", j.dump(2) + "\n");
  ctx.out << (ok ? "Lagrangian verified" : "Lagrangian check FAILED") << '\n';
  return ok ? kPassed : kCheckFailed;
}

void apply_flags(Context& ctx, const std::string& command) {
  auto& run = ctx.cfg.run;
  const auto& f = ctx.flags;
  if (f.seed) run.seed = *f.seed;
  if (f.tol) run.tol = *f.tol;
  if (f.rtol) run.rtol = *f.rtol;
  if (f.atol) run.atol = *f.atol;
  if (f.samples) {
    bool symbolic = command == "verify-symmetry" || command == "cartan" || command == "lagrangian-check";
    (symbolic ? run.check_samples : run.samples) = *f.samples;
  }
  if (!(run.rtol > 0) || !(run.tol > 0) || !(run.atol >= 0)) throw ConfigError("/run", "tolerances must be positive");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kepler-Ermakov symmetry toolkit"};
  app.require_subcommand(1);
  Flags flags;
  const std::vector<std::pair<std::string, std::function<int(const Context&)>>> commands = {
      {"verify-symmetry", verify_symmetry}, {"determining", determining},         {"commutators", commutators},
      {"simulate", simulate},               {"pinney", pinney},                   {"cartan", cartan},
      {"lagrangian-check", lagrangian_check}};
  const std::map<std::string, std::string> help = {
      {"verify-symmetry", "symmetry residual of each configured generator"},
      {"determining", "determining equations of the configured system"},
      {"commutators", "structure constants and algebra label of the generators"},
      {"simulate", "integrate and monitor the first integrals"},
      {"pinney", "Pinney equation and its reduction to sigma = rho^2"},
      {"cartan", "dynamical symmetry of the Ermakov-Lewis invariant"},
      {"lagrangian-check", "Lagrangian existence and Euler-Lagrange match"}};
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, fn] : commands) {
    CLI::App* sub = app.add_subcommand(name, help.at(name));
    sub->add_option("--config", flags.config, "JSON run configuration")->required();
    sub->add_option("--out", flags.out, "output directory");
    sub->add_option("--seed", flags.seed, "sampling seed");
    sub->add_option("--samples", flags.samples, "sample count");
    sub->add_option("--tol", flags.tol, "zero-test tolerance");
    sub->add_option("--rtol", flags.rtol, "integrator relative tolerance");
    sub->add_option("--atol", flags.atol, "integrator absolute tolerance");
    if (name == "verify-symmetry") sub->add_option("--generator", flags.generator, "check only this generator");
    subs[name] = sub;
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kPassed : kUsageError;
  }

  for (const auto& [name, fn] : commands) {
    if (!subs[name]->parsed()) continue;
    try {
      Context ctx{load_config(flags.config), flags, out};
      apply_flags(ctx, name);
      return fn(ctx);
    } catch (const ConfigError& e) {
      err << "config error: " << e.what() << '\n';
      return kUsageError;
    } catch (const expr::UnboundSymbol& e) {
      err << "config error: /parameters: no value for '" << e.symbol << "'\n";
      return kUsageError;
    } catch (const std::exception& e) {
      err << name << " failed: " << e.what() << '\n';
      return kCheckFailed;
    }
  }
  return kUsageError;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace ermakov::cli
