#pragma once

#include <string>
#include <vector>

#include "ermakov/expr/expression.hpp"

namespace ermakov::jet {

/// X = xi d/dt + eta^a d/dq^a with coefficients over (t, q) only.
class PointGenerator {
 public:
  /// Throws std::invalid_argument if a velocity symbol appears or the
  /// component count does not match `coords`.
  PointGenerator(expr::Expression xi, std::vector<expr::Expression> eta, std::vector<std::string> coords = {"x", "y"},
                 std::string time = "t");

  const expr::Expression& xi() const { return xi_; }
  const std::vector<expr::Expression>& eta() const { return eta_; }
  const expr::Expression& eta(std::size_t a) const { return eta_[a]; }
  const std::vector<std::string>& coords() const { return coords_; }
  const std::string& time() const { return time_; }
  std::size_t dim() const { return eta_.size(); }

  /// The generator applied to a function of (t, q).
  expr::Expression apply(const expr::Expression& f) const;

  /// Coefficient-wise simplified copy.
  PointGenerator simplified() const;

  friend PointGenerator operator+(const PointGenerator& a, const PointGenerator& b);
  friend PointGenerator operator*(const expr::Expression& k, const PointGenerator& g);

  std::string str() const;

 private:
  expr::Expression xi_;
  std::vector<expr::Expression> eta_;
  std::vector<std::string> coords_;
  std::string time_;
};

/// Velocity-dependent generator xi d/dt + eta^a d/dq^a + etadot^a d/dqdot^a,
/// with the velocity components stored explicitly.
struct DynamicalGenerator {
  expr::Expression xi;
  std::vector<expr::Expression> eta;
  std::vector<expr::Expression> eta_dot;
  std::vector<std::string> coords = {"x", "y"};
  std::string time = "t";

  DynamicalGenerator() = default;
  DynamicalGenerator(expr::Expression xi, std::vector<expr::Expression> eta, std::vector<expr::Expression> eta_dot,
                     std::vector<std::string> coords = {"x", "y"}, std::string time = "t");

  std::size_t dim() const { return eta.size(); }

  /// The generator applied to a function of (t, q, qdot).
  expr::Expression apply(const expr::Expression& f) const;

  /// True when no coefficient of d/dq or d/dt depends on a velocity.
  bool is_point() const;

  std::string str() const;
};

}  // namespace ermakov::jet
