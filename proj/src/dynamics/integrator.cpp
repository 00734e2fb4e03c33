#include "ermakov/dynamics/integrator.hpp"

#include <algorithm>
#include <cmath>

namespace ermakov::dynamics {

namespace {

// Dormand-Prince tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784, a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200, e6 = 22.0 / 525,
                 e7 = -1.0 / 40;
constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                 d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                 d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;

constexpr double kSafety = 0.9, kFacMin = 0.2, kFacMax = 10.0, kBeta = 0.04;

bool finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

class Stepper {
 public:
  Stepper(const Rhs& rhs, std::size_t n, double rtol, double atol)
      : rhs_(rhs), n_(n), rtol_(rtol), atol_(atol), k_(7, std::vector<double>(n)), tmp_(n), y1_(n), cont_(5, std::vector<double>(n)) {}

  double norm(std::span<const double> v, std::span<const double> scale_ref) const {
    double s = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      double sc = atol_ + rtol_ * std::abs(scale_ref[i]);
      s += (v[i] / sc) * (v[i] / sc);
    }
    return std::sqrt(s / static_cast<double>(n_));
  }

  void eval(double t, std::span<const double> y, std::span<double> dy) const {
    rhs_(t, y, dy);
  }

  double initial_step(double t, std::span<const double> y, std::span<const double> f0, double dir, double hmax) {
    double dnf = norm(f0, y), dny = norm(y, y);
    double h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : 0.01 * dny / dnf;
    h = std::min(h, hmax);
    for (std::size_t i = 0; i < n_; ++i) tmp_[i] = y[i] + dir * h * f0[i];
    std::vector<double> f1(n_);
    eval(t + dir * h, tmp_, f1);
    if (!finite(f1)) return h * 0.1;
    for (std::size_t i = 0; i < n_; ++i) f1[i] -= f0[i];
    double der2 = norm(f1, y) / h;
    double der12 = std::max(std::abs(der2), std::sqrt(dnf));
    double h1 = der12 <= 1e-15 ? std::max(1e-6, std::abs(h) * 1e-3) : std::pow(0.01 / der12, 0.2);
    return std::min({100 * h, h1, hmax});
  }

  // One trial step from (t, y) with k_[0] = F(t, y) already set. Returns the
  // error norm, or infinity when a stage is not finite.
  double attempt(double t, std::span<const double> y, double h) {
    auto stage = [&](int s, double c, std::initializer_list<double> a) {
      for (std::size_t i = 0; i < n_; ++i) {
        double acc = 0.0;
        int j = 0;
        for (double aj : a) acc += aj * k_[j++][i];
        tmp_[i] = y[i] + h * acc;
      }
      eval(t + c * h, tmp_, k_[s]);
      return finite(k_[s]);
    };
    if (!stage(1, c2, {a21})) return INFINITY;
    if (!stage(2, c3, {a31, a32})) return INFINITY;
    if (!stage(3, c4, {a41, a42, a43})) return INFINITY;
    if (!stage(4, c5, {a51, a52, a53, a54})) return INFINITY;
    if (!stage(5, 1.0, {a61, a62, a63, a64, a65})) return INFINITY;
    for (std::size_t i = 0; i < n_; ++i)
      y1_[i] = y[i] + h * (a71 * k_[0][i] + a73 * k_[2][i] + a74 * k_[3][i] + a75 * k_[4][i] + a76 * k_[5][i]);
    eval(t + h, y1_, k_[6]);
    if (!finite(y1_) || !finite(k_[6])) return INFINITY;
    double s = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      double err = h * (e1 * k_[0][i] + e3 * k_[2][i] + e4 * k_[3][i] + e5 * k_[4][i] + e6 * k_[5][i] + e7 * k_[6][i]);
      double sc = atol_ + rtol_ * std::max(std::abs(y[i]), std::abs(y1_[i]));
      s += (err / sc) * (err / sc);
    }
    return std::sqrt(s / static_cast<double>(n_));
  }

  void prepare_dense(std::span<const double> y, double h) {
    for (std::size_t i = 0; i < n_; ++i) {
      double ydiff = y1_[i] - y[i];
      double bspl = h * k_[0][i] - ydiff;
      cont_[0][i] = y[i];
      cont_[1][i] = ydiff;
      cont_[2][i] = bspl;
      cont_[3][i] = ydiff - h * k_[6][i] - bspl;
      cont_[4][i] = h * (d1 * k_[0][i] + d3 * k_[2][i] + d4 * k_[3][i] + d5 * k_[4][i] + d6 * k_[5][i] + d7 * k_[6][i]);
    }
  }

  void dense(double theta, std::span<double> out) const {
    double theta1 = 1.0 - theta;
    for (std::size_t i = 0; i < n_; ++i)
      out[i] = cont_[0][i] +
               theta * (cont_[1][i] + theta1 * (cont_[2][i] + theta * (cont_[3][i] + theta1 * cont_[4][i])));
  }

  std::vector<double>& k0() { return k_[0]; }
  std::vector<double>& k6() { return k_[6]; }
  std::vector<double>& y1() { return y1_; }

 private:
  const Rhs& rhs_;
  std::size_t n_;
  double rtol_, atol_;
  std::vector<std::vector<double>> k_;
  std::vector<double> tmp_, y1_;
  std::vector<std::vector<double>> cont_;
};

}  // namespace

std::vector<double> linspace(double t0, double t1, std::size_t n) {
  if (n < 2) return {t0, t1};
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = t0 + (t1 - t0) * static_cast<double>(k) / static_cast<double>(n - 1);
  out.back() = t1;
  return out;
}

Trajectory integrate(const Rhs& rhs, std::span<const double> y0, double t0, double t1, const IntegrateOptions& options) {
  if (t1 == t0) throw std::invalid_argument("empty integration interval");
  if (!(options.rtol > 0) || !(options.atol >= 0)) throw std::invalid_argument("tolerances must be positive");
  const std::size_t n = y0.size();
  const double dir = t1 > t0 ? 1.0 : -1.0;

  std::vector<double> samples = options.sample_times.empty() ? linspace(t0, t1, options.samples) : options.sample_times;
  for (std::size_t i = 1; i < samples.size(); ++i)
    if (dir * (samples[i] - samples[i - 1]) <= 0) throw std::invalid_argument("sample times must be strictly monotone");
  if (dir * (samples.front() - t0) < 0 || dir * (samples.back() - t1) > 0)
    throw std::invalid_argument("sample times outside the integration interval");

  Trajectory traj;
  traj.dim = n;
  traj.meta.rtol = options.rtol;
  traj.meta.atol = options.atol;
  traj.times.reserve(samples.size());
  traj.states.reserve(samples.size() * n);

  std::string blocked;  // why the last step was refused by the guard
  auto guarded = [&](std::span<const double> prev, std::span<const double> next) {
    if (!options.guard) return false;
    auto why = options.guard(prev, next);
    if (why) blocked = *why;
    return why.has_value();
  };

  std::vector<double> y(y0.begin(), y0.end());
  if (!finite(y)) throw std::invalid_argument("non-finite initial state");
  if (guarded(y, y)) throw SingularityError("singularity approached: " + blocked, t0);

  Stepper st(rhs, n, options.rtol, options.atol);
  st.eval(t0, y, st.k0());
  if (!finite(st.k0())) throw IntegrationError("right-hand side is not finite at the initial state", t0);

  std::size_t next = 0;
  auto emit = [&](double t, std::span<const double> state) {
    traj.times.push_back(t);
    traj.states.insert(traj.states.end(), state.begin(), state.end());
  };
  while (next < samples.size() && samples[next] == t0) emit(samples[next++], y);

  const double span = std::abs(t1 - t0);
  const double hmax = std::min(options.max_step, span);
  double h = options.initial_step > 0 ? std::min(options.initial_step, hmax) : st.initial_step(t0, y, st.k0(), dir, hmax);
  double t = t0;
  double facold = 1e-4;
  std::vector<double> out(n);
  std::size_t steps = 0;

  while (dir * (t1 - t) > 0) {
    if (++steps > options.max_steps) throw IntegrationError("step budget exhausted", t);
    if (h < 1e-14 * std::max(1.0, std::abs(t)))
      throw SingularityError(blocked.empty() ? "step size underflow" : "singularity approached: " + blocked, t);
    bool last = false;
    if (h >= std::abs(t1 - t)) {
      h = std::abs(t1 - t);
      last = true;
    }
    double err = st.attempt(t, y, dir * h);
    if (!std::isfinite(err)) {
      ++traj.meta.rejected;
      h *= 0.25;
      continue;
    }
    if (err <= 1.0 && guarded(y, st.y1())) {
      ++traj.meta.rejected;
      h *= 0.5;
      continue;
    }
    double fac11 = std::pow(err, 0.2 - kBeta * 0.75);
    if (err <= 1.0) {
      double fac = std::clamp(fac11 / std::pow(facold, kBeta) / kSafety, 1.0 / kFacMax, 1.0 / kFacMin);
      facold = std::max(err, 1e-4);
      ++traj.meta.accepted;
      st.prepare_dense(y, dir * h);
      double tnew = last ? t1 : t + dir * h;
      while (next < samples.size() && dir * (samples[next] - tnew) <= 0) {
        double theta = (samples[next] - t) / (dir * h);
        if (samples[next] == tnew) {
          emit(samples[next], st.y1());
        } else {
          st.dense(theta, out);
          emit(samples[next], out);
        }
        ++next;
      }
      y = st.y1();
      st.k0() = st.k6();
      t = tnew;
      h = std::min(h / fac, hmax);
    } else {
      ++traj.meta.rejected;
      h /= std::min(1.0 / kFacMin, fac11 / kSafety);
    }
  }
  while (next < samples.size()) emit(samples[next++], y);
  return traj;
}

}  // namespace ermakov::dynamics
