#include "ermakov/lie/algebra.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>

#include "ermakov/expr/evaluate.hpp"
#include "ermakov/expr/print.hpp"
#include "ermakov/expr/simplify.hpp"

namespace ermakov::lie {

using expr::Expression;

namespace {

std::vector<Expression> components(const jet::PointGenerator& g) {
  std::vector<Expression> out{g.xi()};
  out.insert(out.end(), g.eta().begin(), g.eta().end());
  return out;
}

bool same_space(const jet::PointGenerator& a, const jet::PointGenerator& b) {
  return a.coords() == b.coords() && a.time() == b.time();
}

std::set<std::string> jet_symbols(const jet::PointGenerator& g) {
  std::set<std::string> s(g.coords().begin(), g.coords().end());
  s.insert(g.time());
  return s;
}

// Best rational p/q with q <= max_den, by continued fractions.
std::optional<expr::Rational> reconstruct(double v, std::int64_t max_den, double tol) {
  double x = v;
  std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (int iter = 0; iter < 40; ++iter) {
    double a = std::floor(x);
    if (std::abs(a) > 1e15) break;
    auto ai = static_cast<std::int64_t>(a);
    std::int64_t p2 = ai * p1 + p0, q2 = ai * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1, q0 = q1, p1 = p2, q1 = q2;
    if (std::abs(v - static_cast<double>(p1) / static_cast<double>(q1)) <= tol * std::max(1.0, std::abs(v)))
      return expr::Rational(p1, q1);
    double frac = x - a;
    if (frac < 1e-300) break;
    x = 1.0 / frac;
  }
  return std::nullopt;
}

// Parameter values for the identity checks: bound ones fixed, the rest
// drawn from [0.5, 2].
std::vector<expr::Bindings> parameter_samples(const std::vector<Expression>& c, const expr::Bindings& params) {
  std::set<std::string> free;
  for (const auto& e : c)
    for (const auto& s : expr::free_symbols(e))
      if (!params.values.count(s)) free.insert(s);
  std::vector<expr::Bindings> out;
  std::mt19937_64 rng(expr::kDefaultSeed);
  std::uniform_real_distribution<double> dist(0.5, 2.0);
  std::size_t count = free.empty() ? 1 : 12;
  for (std::size_t s = 0; s < count; ++s) {
    expr::Bindings b = params;
    for (const auto& name : free) b.set(name, dist(rng));
    out.push_back(b);
  }
  return out;
}

std::vector<double> evaluate_all(const std::vector<Expression>& c, const expr::Bindings& b) {
  std::vector<double> out;
  out.reserve(c.size());
  for (const auto& e : c) out.push_back(expr::evaluate(e, b));
  return out;
}

void validate(std::size_t n, const std::vector<Expression>& c, const expr::Bindings& params) {
  auto at = [n](const std::vector<double>& v, std::size_t i, std::size_t j, std::size_t k) { return v[(i * n + j) * n + k]; };
  for (const auto& b : parameter_samples(c, params)) {
    std::vector<double> v = evaluate_all(c, b);
    double scale = 1.0;
    for (double x : v) scale = std::max(scale, std::abs(x));
    const double tol = 1e-9 * scale * scale;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          if (std::abs(at(v, i, j, k) + at(v, j, i, k)) > 1e-9 * scale)
            throw std::invalid_argument("structure constants are not antisymmetric in (" + std::to_string(i + 1) + ", " +
                                        std::to_string(j + 1) + ")");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        for (std::size_t l = j + 1; l < n; ++l)
          for (std::size_t k = 0; k < n; ++k) {
            double s = 0.0;
            for (std::size_t m = 0; m < n; ++m)
              s += at(v, i, j, m) * at(v, m, l, k) + at(v, j, l, m) * at(v, m, i, k) + at(v, l, i, m) * at(v, m, j, k);
            if (std::abs(s) > tol)
              throw std::invalid_argument("Jacobi identity fails for (" + std::to_string(i + 1) + ", " +
                                          std::to_string(j + 1) + ", " + std::to_string(l + 1) + ")");
          }
  }
}

std::optional<std::vector<Expression>> structural_match(const std::vector<Expression>& bracket,
                                                        const std::vector<std::vector<Expression>>& basis,
                                                        const std::set<std::string>& jet) {
  const std::size_t n = basis.size();
  std::vector<Expression> coeffs(n, Expression(0));
  if (std::all_of(bracket.begin(), bracket.end(), [](const Expression& e) { return e.is_zero(); })) return coeffs;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = 0;
    while (p < bracket.size() && (bracket[p].is_zero() || basis[k][p].is_zero())) ++p;
    if (p == bracket.size()) continue;
    Expression r = expr::simplify(bracket[p] / basis[k][p]);
    if (expr::contains_any_symbol(r, jet)) continue;
    bool ok = true;
    for (std::size_t c = 0; c < bracket.size() && ok; ++c)
      ok = expr::structurally_zero(expr::simplify(bracket[c] - r * basis[k][c]));
    if (ok) {
      coeffs[k] = r;
      return coeffs;
    }
  }
  return std::nullopt;
}

std::vector<Expression> numeric_decomposition(std::size_t i, std::size_t j, const std::vector<Expression>& bracket,
                                              const std::vector<std::vector<Expression>>& basis,
                                              const jet::PointGenerator& space, const DecompositionOptions& o) {
  const std::size_t n = basis.size(), ncomp = bracket.size();
  const std::size_t points = o.samples ? o.samples : std::max<std::size_t>(2 * n, 8);
  std::mt19937_64 rng(o.seed + 7919 * (i * n + j));
  std::uniform_real_distribution<double> dist(0.5, 2.0);
  Eigen::MatrixXd A(points * ncomp, n);
  Eigen::VectorXd b(points * ncomp);
  for (std::size_t s = 0; s < points; ++s) {
    expr::Bindings at = o.params;
    at.set(space.time(), dist(rng));
    for (const auto& q : space.coords()) at.set(q, dist(rng));
    for (std::size_t c = 0; c < ncomp; ++c) {
      const auto row = static_cast<Eigen::Index>(s * ncomp + c);
      b(row) = expr::evaluate(bracket[c], at);
      for (std::size_t k = 0; k < n; ++k) A(row, static_cast<Eigen::Index>(k)) = expr::evaluate(basis[k][c], at);
    }
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
  qr.setThreshold(1e-10);
  if (qr.rank() < static_cast<Eigen::Index>(n)) throw std::invalid_argument("basis generators are linearly dependent");
  Eigen::VectorXd x = qr.solve(b);
  double residual = (A * x - b).norm() / (1.0 + b.norm());
  if (residual > o.tol) throw NotInSpan(i, j, residual);
  std::vector<Expression> out;
  for (std::size_t k = 0; k < n; ++k) {
    double v = x(static_cast<Eigen::Index>(k));
    if (std::abs(v) < o.tol) {
      out.emplace_back(0);
    } else if (auto r = reconstruct(v, o.max_denominator, o.tol)) {
      out.emplace_back(*r);
    } else {
      out.push_back(Expression::real(v));
    }
  }
  return out;
}

// Inverse of a small matrix of constant expressions by Gauss-Jordan.
std::vector<std::vector<Expression>> invert(std::vector<std::vector<Expression>> m) {
  const std::size_t n = m.size();
  std::vector<std::vector<Expression>> inv(n, std::vector<Expression>(n, Expression(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = Expression(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && expr::simplify(m[piv][col]).is_zero()) ++piv;
    if (piv == n) throw std::invalid_argument("basis change is singular");
    std::swap(m[piv], m[col]);
    std::swap(inv[piv], inv[col]);
    Expression p = m[col][col];
    for (std::size_t k = 0; k < n; ++k) {
      m[col][k] = expr::simplify(m[col][k] / p);
      inv[col][k] = expr::simplify(inv[col][k] / p);
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      Expression f = m[r][col];
      if (expr::simplify(f).is_zero()) continue;
      for (std::size_t k = 0; k < n; ++k) {
        m[r][k] = expr::simplify(m[r][k] - f * m[col][k]);
        inv[r][k] = expr::simplify(inv[r][k] - f * inv[col][k]);
      }
    }
  }
  return inv;
}

}  // namespace

jet::PointGenerator lie_bracket(const jet::PointGenerator& a, const jet::PointGenerator& b) {
  if (!same_space(a, b)) throw std::invalid_argument("generators act on different coordinate spaces");
  Expression xi = expr::simplify(a.apply(b.xi()) - b.apply(a.xi()));
  std::vector<Expression> eta;
  for (std::size_t k = 0; k < a.dim(); ++k) eta.push_back(expr::simplify(a.apply(b.eta(k)) - b.apply(a.eta(k))));
  return jet::PointGenerator(xi, eta, a.coords(), a.time());
}

AlgebraTable::AlgebraTable(std::size_t n, std::vector<Expression> c, std::vector<std::string> labels,
                           const expr::Bindings& params)
    : n_(n), c_(std::move(c)), labels_(std::move(labels)) {
  if (c_.size() != n * n * n) throw std::invalid_argument("structure constant array must have n^3 entries");
  for (auto& e : c_) e = expr::simplify(e);
  if (labels_.empty())
    for (std::size_t i = 0; i < n; ++i) labels_.push_back("e" + std::to_string(i + 1));
  if (labels_.size() != n) throw std::invalid_argument("one label per basis element");
  validate(n_, c_, params);
}

AlgebraTable AlgebraTable::from_brackets(
    std::size_t n, const std::vector<std::tuple<std::size_t, std::size_t, std::size_t, Expression>>& entries,
    std::vector<std::string> labels, const expr::Bindings& params) {
  std::vector<Expression> c(n * n * n, Expression(0));
  for (const auto& [i, j, k, v] : entries) {
    if (i >= n || j >= n || k >= n || i == j) throw std::invalid_argument("bracket index out of range");
    c[(i * n + j) * n + k] = c[(i * n + j) * n + k] + v;
    c[(j * n + i) * n + k] = c[(j * n + i) * n + k] - v;
  }
  return AlgebraTable(n, std::move(c), std::move(labels), params);
}

std::vector<double> AlgebraTable::numeric(const expr::Bindings& params) const { return evaluate_all(c_, params); }

AlgebraTable AlgebraTable::change_basis(const std::vector<std::vector<Expression>>& m) const {
  if (m.size() != n_) throw std::invalid_argument("basis change must be n x n");
  for (const auto& row : m)
    if (row.size() != n_) throw std::invalid_argument("basis change must be n x n");
  auto inv = invert(m);
  std::vector<Expression> c(n_ * n_ * n_, Expression(0));
  for (std::size_t a = 0; a < n_; ++a)
    for (std::size_t b = 0; b < n_; ++b)
      for (std::size_t l = 0; l < n_; ++l) {
        std::vector<Expression> terms;
        for (std::size_t p = 0; p < n_; ++p)
          for (std::size_t q = 0; q < n_; ++q)
            for (std::size_t k = 0; k < n_; ++k) {
              const Expression& ck = (*this)(p, q, k);
              if (ck.is_zero()) continue;
              terms.push_back(m[a][p] * m[b][q] * ck * inv[k][l]);
            }
        c[(a * n_ + b) * n_ + l] = expr::simplify(Expression::sum(terms));
      }
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n_; ++i) labels.push_back("f" + std::to_string(i + 1));
  return AlgebraTable(n_, std::move(c), std::move(labels));
}

std::string AlgebraTable::str() const {
  std::vector<std::pair<std::string, std::string>> rows;
  std::size_t width = 0;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j) {
      std::string rhs;
      for (std::size_t k = 0; k < n_; ++k) {
        const Expression& v = (*this)(i, j, k);
        if (v.is_zero()) continue;
        bool minus_one = v.is_number() && (-v.number()).is_one();
        std::string coef = v.is_one() || minus_one ? "" : "(" + expr::to_string(v) + ")*";
        std::string sep = rhs.empty() ? (minus_one ? "-" : "") : (minus_one ? " - " : " + ");
        rhs += sep + coef + labels_[k];
      }
      if (rhs.empty()) continue;
      std::string lhs = "[" + labels_[i] + ", " + labels_[j] + "]";
      width = std::max(width, lhs.size());
      rows.emplace_back(lhs, rhs);
    }
  std::ostringstream os;
  for (const auto& [l, r] : rows) os << std::left << std::setw(static_cast<int>(width)) << l << " = " << r << '\n';
  if (rows.empty()) os << "(abelian: all brackets vanish)\n";
  return os.str();
}

AlgebraTable structure_constants(const std::vector<jet::PointGenerator>& basis, const std::vector<std::string>& labels,
                                 const DecompositionOptions& options) {
  const std::size_t n = basis.size();
  if (n == 0) throw std::invalid_argument("empty basis");
  for (const auto& g : basis)
    if (!same_space(g, basis[0])) throw std::invalid_argument("generators act on different coordinate spaces");
  std::vector<std::vector<Expression>> comps;
  for (const auto& g : basis) {
    auto cs = components(g);
    for (auto& e : cs) e = expr::simplify(e);
    comps.push_back(std::move(cs));
  }
  const auto jet = jet_symbols(basis[0]);
  std::vector<Expression> c(n * n * n, Expression(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      auto bracket = components(lie_bracket(basis[i], basis[j]));
      auto coeffs = structural_match(bracket, comps, jet);
      if (!coeffs) coeffs = numeric_decomposition(i, j, bracket, comps, basis[0], options);
      for (std::size_t k = 0; k < n; ++k) {
        c[(i * n + j) * n + k] = (*coeffs)[k];
        c[(j * n + i) * n + k] = expr::simplify(-(*coeffs)[k]);
      }
    }
  return AlgebraTable(n, std::move(c), labels, options.params);
}

std::string to_string(Classification c) {
  switch (c) {
    case Classification::Abelian: return "abelian";
    case Classification::Heisenberg: return "heisenberg";
    case Classification::Solvable: return "solvable";
    case Classification::Sl2R: return "sl2R";
    case Classification::Su2: return "su2";
    case Classification::Other: return "other";
    case Classification::Unclassified: return "unclassified";
  }
  return "unclassified";
}

KillingForm killing_form(const AlgebraTable& t, const expr::Bindings& params) {
  const std::size_t n = t.dim();
  std::vector<double> c = t.numeric(params);
  auto at = [&](std::size_t i, std::size_t j, std::size_t k) { return c[(i * n + j) * n + k]; };
  KillingForm kf;
  kf.matrix.assign(n * n, 0.0);
  Eigen::MatrixXd K(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      double s = 0.0;
      for (std::size_t m = 0; m < n; ++m)
        for (std::size_t k = 0; k < n; ++k) s += at(a, m, k) * at(b, k, m);
      kf.matrix[a * n + b] = s;
      K(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = s;
    }
  if (n == 0) return kf;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(K);
  double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    double ev = es.eigenvalues()(i);
    if (std::abs(ev) <= 1e-9 * scale) ++kf.zero;
    else if (ev > 0) ++kf.positive;
    else ++kf.negative;
  }
  return kf;
}

namespace {

// Columns spanning [A, B] for subspaces given by column bases.
Eigen::MatrixXd bracket_span(const std::vector<double>& c, std::size_t n, const Eigen::MatrixXd& A,
                             const Eigen::MatrixXd& B) {
  Eigen::MatrixXd out(n, A.cols() * B.cols());
  Eigen::Index col = 0;
  for (Eigen::Index p = 0; p < A.cols(); ++p)
    for (Eigen::Index q = 0; q < B.cols(); ++q, ++col)
      for (std::size_t k = 0; k < n; ++k) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j)
            s += A(static_cast<Eigen::Index>(i), p) * B(static_cast<Eigen::Index>(j), q) * c[(i * n + j) * n + k];
        out(static_cast<Eigen::Index>(k), col) = s;
      }
  return out;
}

// `scale` is the size of the structure constants; spans below 1e-9 of it
// are roundoff.
Eigen::MatrixXd column_basis(const Eigen::MatrixXd& M, std::size_t n, double scale) {
  if (M.cols() == 0 || M.cwiseAbs().maxCoeff() <= 1e-9 * scale) return Eigen::MatrixXd(n, 0);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(M);
  qr.setThreshold(1e-9);
  Eigen::Index r = qr.rank();
  Eigen::MatrixXd Q = qr.householderQ();
  return Q.leftCols(r);
}

}  // namespace

Classification classify(const AlgebraTable& t, const expr::Bindings& params) {
  const std::size_t n = t.dim();
  if (n == 0 || n > 3) return Classification::Unclassified;
  std::vector<double> c = t.numeric(params);
  double scale = 0.0;
  for (double v : c) scale = std::max(scale, std::abs(v));
  if (scale <= 1e-12) return Classification::Abelian;

  KillingForm kf = killing_form(t, params);
  if (kf.zero == 0 && n == 3) {
    if (kf.negative == 3) return Classification::Su2;
    if (kf.positive == 2 && kf.negative == 1) return Classification::Sl2R;
    return Classification::Other;
  }

  const auto N = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd full = Eigen::MatrixXd::Identity(N, N);
  Eigen::MatrixXd lower = column_basis(bracket_span(c, n, full, full), n, scale);
  Eigen::MatrixXd derived = lower;
  for (std::size_t step = 0; step < n && lower.cols() > 0; ++step)
    lower = column_basis(bracket_span(c, n, full, lower), n, scale);
  if (lower.cols() == 0) return n == 3 ? Classification::Heisenberg : Classification::Other;
  for (std::size_t step = 0; step < n && derived.cols() > 0; ++step)
    derived = column_basis(bracket_span(c, n, derived, derived), n, scale);
  if (derived.cols() == 0) return Classification::Solvable;
  return Classification::Other;
}

}  // namespace ermakov::lie
