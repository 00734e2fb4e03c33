#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ermakov/expr/equivalence.hpp"
#include "ermakov/expr/expression.hpp"
#include "ermakov/jet/generator.hpp"

namespace ermakov::lie {

/// [a, b] = a(coeffs of b) - b(coeffs of a), simplified. Throws
/// std::invalid_argument when the coordinate spaces differ.
jet::PointGenerator lie_bracket(const jet::PointGenerator& a, const jet::PointGenerator& b);

/// A bracket that is not a constant combination of the basis.
struct NotInSpan : std::runtime_error {
  NotInSpan(std::size_t i_, std::size_t j_, double residual_)
      : std::runtime_error("bracket [e" + std::to_string(i_ + 1) + ", e" + std::to_string(j_ + 1) +
                           "] is not in the span of the basis (residual " + std::to_string(residual_) + ")"),
        i(i_), j(j_), residual(residual_) {}
  std::size_t i, j;
  double residual;
};

/// Structure constants c^k_ij with [e_i, e_j] = sum_k c^k_ij e_k. Entries
/// are constant expressions: exact rationals, reals, or expressions in
/// parameter symbols.
class AlgebraTable {
 public:
  AlgebraTable() = default;

  /// `c[(i*n + j)*n + k]` is c^k_ij. Throws std::invalid_argument when
  /// antisymmetry or the Jacobi identity fails. Identities that do not
  /// reduce structurally are sampled with parameter symbols in [0.5, 2]
  /// unless bound in `params`.
  AlgebraTable(std::size_t n, std::vector<expr::Expression> c, std::vector<std::string> labels = {},
               const expr::Bindings& params = {});

  /// Nonzero entries given as (i, j, k, value) with i < j; the rest follows
  /// from antisymmetry.
  static AlgebraTable from_brackets(std::size_t n,
                                    const std::vector<std::tuple<std::size_t, std::size_t, std::size_t, expr::Expression>>& entries,
                                    std::vector<std::string> labels = {}, const expr::Bindings& params = {});

  std::size_t dim() const { return n_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const expr::Expression& operator()(std::size_t i, std::size_t j, std::size_t k) const { return c_[(i * n_ + j) * n_ + k]; }

  /// Numeric constants; symbols take values from `params`.
  std::vector<double> numeric(const expr::Bindings& params = {}) const;

  /// Table in the basis f_a = sum_b m[a][b] e_b for an invertible m.
  AlgebraTable change_basis(const std::vector<std::vector<expr::Expression>>& m) const;

  /// Aligned "[e1, e2] = ..." lines, one per nonzero bracket with i < j.
  std::string str() const;

 private:
  std::size_t n_ = 0;
  std::vector<expr::Expression> c_;
  std::vector<std::string> labels_;
};

struct DecompositionOptions {
  expr::Bindings params;          // values for parameter symbols in the numeric fallback
  std::size_t samples = 0;        // points per bracket; 0 means max(2n, 8)
  double tol = 1e-9;              // least-squares residual threshold
  std::int64_t max_denominator = 64;
  std::uint64_t seed = expr::kDefaultSeed;
};

/// Each bracket is matched structurally against a constant multiple of one
/// basis element, else decomposed by least squares over sampled (t, q) in
/// [0.5, 2] with rational reconstruction of the coefficients. Throws
/// NotInSpan, or std::invalid_argument for a dependent basis.
AlgebraTable structure_constants(const std::vector<jet::PointGenerator>& basis,
                                 const std::vector<std::string>& labels = {}, const DecompositionOptions& options = {});

enum class Classification { Abelian, Heisenberg, Solvable, Sl2R, Su2, Other, Unclassified };

std::string to_string(Classification c);

struct KillingForm {
  std::vector<double> matrix;  // row-major n x n
  int positive = 0, negative = 0, zero = 0;
};

KillingForm killing_form(const AlgebraTable& t, const expr::Bindings& params = {});

/// Dimension at most 3; larger or empty algebras are Unclassified.
Classification classify(const AlgebraTable& t, const expr::Bindings& params = {});

}  // namespace ermakov::lie
