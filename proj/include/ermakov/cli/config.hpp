#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ermakov/expr/equivalence.hpp"
#include "ermakov/expr/evaluate.hpp"
#include "ermakov/jet/generator.hpp"
#include "ermakov/models/kepler_ermakov.hpp"

namespace ermakov::cli {

/// A schema violation, located by a JSON pointer such as "/model/C".
struct ConfigError : std::runtime_error {
  ConfigError(std::string pointer_, const std::string& what)
      : std::runtime_error((pointer_.empty() ? std::string("/") : pointer_) + ": " + what), pointer(std::move(pointer_)) {}
  std::string pointer;
};

struct NamedGenerator {
  std::string name;
  jet::PointGenerator generator;
};

struct RunSettings {
  double t0 = 0.0;
  double t1 = 10.0;
  std::size_t samples = 201;
  double rtol = 1e-10;
  double atol = 1e-12;
  std::uint64_t seed = expr::kDefaultSeed;
  double tol = 1e-10;             // zero test for residuals
  std::size_t check_samples = 200;
  double drift_tol = 1e-6;        // relative drift accepted by simulate and pinney
  std::string coordinates = "cartesian";
};

struct PinneySettings {
  double w0 = 1.0;
  double c2 = 1.0;
  double rho0 = 1.0;
  double rhodot0 = 0.0;
};

struct RunConfig {
  models::KEParams model;
  std::map<std::string, bool> declared_opaque;  // f, g, h without a body
  expr::Bindings parameters;                   // numeric values of parameter symbols
  std::vector<NamedGenerator> generators;
  RunSettings run;
  std::optional<models::CartesianState> initial;
  std::optional<PinneySettings> pinney;
  std::map<std::string, std::string> outputs;  // key -> file name inside the output directory
  std::optional<std::string> expect_label;

  /// Parameter values plus the model's function table.
  expr::Bindings bindings() const;

  /// Throws ConfigError unless f, g and h can be evaluated numerically.
  void require_numeric() const;

  const NamedGenerator& generator(const std::string& name) const;
};

/// Validates against the schema (unknown keys are errors) and builds the
/// model. Throws ConfigError.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::filesystem::path& path);

/// `out_dir / name`, refusing absolute names and ".." components.
std::filesystem::path output_path(const std::filesystem::path& out_dir, const std::string& key, const std::string& name);

/// Smooth stand-in bodies for opaque f, g, h used when a residual has to be
/// sampled: a nonzero sample disproves an identity for all f, g, h.
expr::FunctionTable witness_functions(const RunConfig& cfg);

}  // namespace ermakov::cli
