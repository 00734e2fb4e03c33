#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ermakov/dynamics/integrator.hpp"
#include "ermakov/dynamics/invariants.hpp"
#include "ermakov/expr/expression.hpp"
#include "ermakov/jet/check.hpp"
#include "ermakov/jet/generator.hpp"

namespace ermakov::sigma {

/// Candidate values of k / C in sigma'' + k sigma = zeta for the radial
/// family with w = 0: the printed second-order equation, and the value from
/// substituting the H family into the printed third-order condition.
inline const expr::Rational kPrintedRatio(4, 5);
inline const expr::Rational kSubstitutedRatio(1, 1);

struct SigmaResolution {
  expr::Rational ratio;              // the winning k / C
  double residual_printed = 0.0;     // max |residual| with kPrintedRatio
  double residual_substituted = 0.0; // max |residual| with kSubstitutedRatio
  std::string summary;
};

/// Decides k / C by pushing sigma = cos(sqrt(k) t) through the generator
/// family and the symmetry residual on the model with w = 0, C = 1/2 and
/// h = 0 (the h part of the residual is independent of k). Throws
/// std::logic_error unless exactly one candidate makes the residual vanish.
SigmaResolution resolve_sigma_coefficient(const jet::CheckOptions& options = {});

/// resolve_sigma_coefficient(), computed once.
const SigmaResolution& resolved_sigma_coefficient();

/// Closed-form solutions of sigma''' + Omega^2 sigma' = 0 with
/// Omega^2 = 4 w^2 + k C, for constant w.
struct SigmaSolution {
  std::vector<expr::Expression> basis;          // three, or two when `particular` is set
  std::optional<expr::Expression> particular;   // zeta / k for the second-order form
  expr::Expression omega2;
  bool numeric = false;                         // w depends on t: use integrate_sigma
  std::string equation;

  /// The sigma values that generate symmetries: the basis, plus the constant
  /// particular solution normalized to 1.
  std::vector<expr::Expression> generators() const;
};

/// w must be a constant expression (number or parameter symbol) for a closed
/// form; otherwise `numeric` is set and the basis is empty. The ratio
/// defaults to the resolved one. A symbolic Omega^2 is taken as positive.
SigmaSolution sigma_basis(const expr::Expression& w, const expr::Expression& C,
                          std::optional<expr::Rational> ratio = std::nullopt);

/// sigma d/dt + sigma'/2 (x d/dx + y d/dy).
jet::PointGenerator build_generator_family(const expr::Expression& sigma);

/// sigma sigma'' - sigma'^2/2 + 2 sigma^2 w^2, simplified, for sigma and w in t.
expr::Expression sigma_first_integral(const expr::Expression& sigma, const expr::Expression& w);

/// Drift of sigma sigma'' - sigma'^2/2 + 2 sigma^2 w^2 along samples
/// (sigma, sigma', sigma'').
dynamics::DriftReport sigma_first_integral(const dynamics::Trajectory& sigma, const std::function<double(double)>& w);

/// Samples (sigma, sigma', sigma'') of a closed form at the given times.
dynamics::Trajectory sample_sigma(const expr::Expression& sigma, const std::vector<double>& times,
                                  const expr::Bindings& bindings = {});

/// Integrates sigma''' = -4 w' w sigma - 4 w^2 sigma' for a time-dependent w,
/// returning samples (sigma, sigma', sigma'').
dynamics::Trajectory integrate_sigma(const expr::Expression& w, const expr::Bindings& bindings,
                                     std::array<double, 3> init, double t0, double t1,
                                     const dynamics::IntegrateOptions& options = {});

struct PinneyParams {
  double w0 = 1.0;
  double c2 = 1.0;

  /// Throws std::invalid_argument for c2 < 0.
  void validate() const;
};

/// rho'' + w0^2 rho = c2 / rho^3 from (rho, rho'); samples (rho, rho').
/// Throws dynamics::SingularityError when rho reaches 0.
dynamics::Trajectory integrate_pinney(const PinneyParams& p, double rho0, double rhodot0, double t0, double t1,
                                      const dynamics::IntegrateOptions& options = {});

struct PinneyReduction {
  dynamics::Trajectory sigma;              // (sigma, sigma', sigma'') with sigma = rho^2
  std::vector<double> third_order_residual; // sigma''' + 4 w0^2 sigma'
  dynamics::DriftReport first_integral;
};

/// sigma = rho^2 with derivatives from the Pinney equation. Throws
/// std::domain_error when rho is not positive at some sample.
PinneyReduction pinney_reduce(const dynamics::Trajectory& rho, const PinneyParams& p);

}  // namespace ermakov::sigma
