#include "nhq/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <vector>

#include "nhq/error.hpp"

namespace nhq {

void OptimizerConfig::validate() const {
  if (max_evals < 1) throw Error(ErrorCode::ConfigError, "max_evals must be >= 1");
  if (!(tolerance > 0.0) || !(x_tolerance > 0.0)) throw Error(ErrorCode::ConfigError, "tolerances must be > 0");
  if (!(initial_step > 0.0)) throw Error(ErrorCode::ConfigError, "initial_step must be > 0");
  if (!(learning_rate > 0.0)) throw Error(ErrorCode::ConfigError, "learning_rate must be > 0");
  if (!(fd_step > 0.0)) throw Error(ErrorCode::ConfigError, "fd_step must be > 0");
  if (restarts < 0) throw Error(ErrorCode::ConfigError, "restarts must be >= 0");
}

Rng::Rng(std::uint64_t seed) : engine_(seed) {}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  // Box-Muller; one draw per call keeps the stream simple to reason about.
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "empty range");
  // Rejection sampling removes modulo bias.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t v;
  do {
    v = engine_();
  } while (v >= limit);
  return v % n;
}

namespace {

class Counted {
 public:
  Counted(const Objective& f, int budget) : f_(f), budget_(budget) {}

  double operator()(const ParamVector& x) {
    ++evals_;
    const double v = f_(x);
    if (!std::isfinite(v)) throw Error(ErrorCode::NonConvergence, "objective returned a non-finite value");
    if (v < best_f_) {
      best_f_ = v;
      best_x_ = x;
    }
    return v;
  }

  bool spent() const { return evals_ >= budget_; }
  int evals() const { return evals_; }
  double best_f() const { return best_f_; }
  const ParamVector& best_x() const { return best_x_; }

 private:
  const Objective& f_;
  int budget_;
  int evals_ = 0;
  double best_f_ = std::numeric_limits<double>::infinity();
  ParamVector best_x_;
};

Eigen::MatrixXd simplex_directions(Eigen::Index n, std::uint64_t seed, std::uint64_t round) {
  if (seed == 0) return Eigen::MatrixXd::Identity(n, n);
  Rng rng(seed * 0x9e3779b97f4a7c15ULL + round);
  Eigen::MatrixXd g(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) g(i, j) = rng.normal();
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  return qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
}

}  // namespace

OptimizeResult nelder_mead(const Objective& f, const ParamVector& x0, const OptimizerConfig& cfg) {
  cfg.validate();
  const Eigen::Index n = x0.size();
  Counted eval(f, cfg.max_evals);
  const double f0 = eval(x0);
  if (n == 0) return {x0, f0, eval.evals(), false};

  constexpr double kReflect = 1.0, kExpand = 2.0, kContract = 0.5, kShrink = 0.5;
  bool converged = false;
  ParamVector start = x0;
  double start_f = f0;

  for (int round = 0; round <= cfg.restarts && !eval.spent(); ++round) {
    const Eigen::MatrixXd dirs = simplex_directions(n, cfg.seed, static_cast<std::uint64_t>(round));
    std::vector<ParamVector> pts{start};
    std::vector<double> vals{start_f};
    for (Eigen::Index i = 0; i < n && !eval.spent(); ++i) {
      pts.push_back(start + cfg.initial_step * dirs.col(i));
      vals.push_back(eval(pts.back()));
    }
    if (static_cast<Eigen::Index>(pts.size()) != n + 1) break;

    std::vector<std::size_t> order(pts.size());
    converged = false;
    while (!eval.spent()) {
      // Ties keep the lower index first.
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
      std::vector<ParamVector> p2;
      std::vector<double> v2;
      for (auto k : order) {
        p2.push_back(pts[k]);
        v2.push_back(vals[k]);
      }
      pts.swap(p2);
      vals.swap(v2);

      double diameter = 0.0;
      for (Eigen::Index i = 1; i <= n; ++i) diameter = std::max(diameter, (pts[i] - pts[0]).cwiseAbs().maxCoeff());
      if (vals[n] - vals[0] <= cfg.tolerance && diameter <= cfg.x_tolerance) {
        converged = true;
        break;
      }

      ParamVector centroid = ParamVector::Zero(n);
      for (Eigen::Index i = 0; i < n; ++i) centroid += pts[i];
      centroid /= static_cast<double>(n);

      const ParamVector xr = centroid + kReflect * (centroid - pts[n]);
      const double fr = eval(xr);
      if (fr < vals[0]) {
        if (eval.spent()) {
          pts[n] = xr;
          vals[n] = fr;
          break;
        }
        const ParamVector xe = centroid + kExpand * (xr - centroid);
        const double fe = eval(xe);
        if (fe < fr) {
          pts[n] = xe;
          vals[n] = fe;
        } else {
          pts[n] = xr;
          vals[n] = fr;
        }
        continue;
      }
      if (fr < vals[n - 1]) {
        pts[n] = xr;
        vals[n] = fr;
        continue;
      }
      if (eval.spent()) break;
      // Outside contraction when the reflection beat the worst point, inside otherwise.
      const bool outside = fr < vals[n];
      const ParamVector xc = outside ? ParamVector(centroid + kContract * (xr - centroid))
                                     : ParamVector(centroid + kContract * (pts[n] - centroid));
      const double fc = eval(xc);
      if (fc < (outside ? fr : vals[n])) {
        pts[n] = xc;
        vals[n] = fc;
        continue;
      }
      for (Eigen::Index i = 1; i <= n && !eval.spent(); ++i) {
        pts[i] = pts[0] + kShrink * (pts[i] - pts[0]);
        vals[i] = eval(pts[i]);
      }
    }
    start = eval.best_x();
    start_f = eval.best_f();
  }
  return {eval.best_x(), eval.best_f(), eval.evals(), !converged && eval.spent()};
}

ParamVector central_difference_gradient(const Objective& f, const ParamVector& x, double h) {
  if (!(h > 0.0)) throw Error(ErrorCode::InvalidArgument, "finite-difference step must be > 0");
  ParamVector g(x.size());
  ParamVector y = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    y[i] = x[i] + h;
    const double up = f(y);
    y[i] = x[i] - h;
    const double down = f(y);
    y[i] = x[i];
    g[i] = (up - down) / (2.0 * h);
  }
  return g;
}

OptimizeResult gradient_descent(const Objective& f, const ParamVector& x0, const OptimizerConfig& cfg) {
  cfg.validate();
  Counted eval(f, cfg.max_evals);
  ParamVector x = x0;
  double fx = eval(x);
  if (x.size() == 0) return {x, fx, eval.evals(), false};
  double rate = cfg.learning_rate;
  bool converged = false;
  const Objective counted = [&](const ParamVector& y) { return eval(y); };
  while (!eval.spent()) {
    if (eval.evals() + 2 * x.size() > cfg.max_evals) break;
    const ParamVector g = central_difference_gradient(counted, x, cfg.fd_step);
    if (g.norm() < cfg.tolerance) {
      converged = true;
      break;
    }
    // Halve the rate until the step goes downhill; grow it back slowly after a success.
    bool moved = false;
    while (!eval.spent() && rate > 1e-12) {
      const ParamVector trial = x - rate * g;
      const double ft = eval(trial);
      if (ft < fx) {
        x = trial;
        fx = ft;
        rate = std::min(rate * 1.25, cfg.learning_rate * 16.0);
        moved = true;
        break;
      }
      rate *= 0.5;
    }
    if (!moved) {
      converged = rate <= 1e-12;
      break;
    }
  }
  return {eval.best_x(), eval.best_f(), eval.evals(), !converged && eval.spent()};
}

OptimizeResult bfgs(const Objective& f, const ParamVector& x0, const OptimizerConfig& cfg) {
  cfg.validate();
  Counted eval(f, cfg.max_evals);
  const Eigen::Index n = x0.size();
  ParamVector x = x0;
  double fx = eval(x);
  if (n == 0) return {x, fx, eval.evals(), false};
  const Objective counted = [&](const ParamVector& y) { return eval(y); };
  Eigen::MatrixXd hinv = Eigen::MatrixXd::Identity(n, n) * cfg.learning_rate;
  ParamVector g = central_difference_gradient(counted, x, cfg.fd_step);
  bool converged = false;
  while (eval.evals() + 2 * n + 1 <= cfg.max_evals) {
    if (g.norm() < cfg.tolerance) {
      converged = true;
      break;
    }
    ParamVector dir = -hinv * g;
    if (dir.dot(g) >= 0.0) {
      hinv = Eigen::MatrixXd::Identity(n, n) * cfg.learning_rate;
      dir = -hinv * g;
    }
    // Backtracking line search with the Armijo condition.
    double step = 1.0;
    double ft = 0.0;
    ParamVector trial;
    bool accepted = false;
    while (!eval.spent() && step > 1e-10) {
      trial = x + step * dir;
      ft = eval(trial);
      if (ft <= fx + 1e-4 * step * g.dot(dir)) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      converged = step <= 1e-10;
      break;
    }
    if (eval.evals() + 2 * n > cfg.max_evals) break;
    const ParamVector g_new = central_difference_gradient(counted, trial, cfg.fd_step);
    const ParamVector s = trial - x;
    const ParamVector y = g_new - g;
    const double sy = s.dot(y);
    if (sy > 1e-12) {
      const double rho = 1.0 / sy;
      const Eigen::MatrixXd i_n = Eigen::MatrixXd::Identity(n, n);
      hinv = (i_n - rho * s * y.transpose()) * hinv * (i_n - rho * y * s.transpose()) + rho * s * s.transpose();
    }
    const double drop = fx - ft;
    x = trial;
    fx = ft;
    g = g_new;
    if (drop >= 0.0 && drop < cfg.tolerance * 1e-2 && g.norm() < std::sqrt(cfg.tolerance)) {
      converged = true;
      break;
    }
  }
  return {eval.best_x(), eval.best_f(), eval.evals(), !converged && eval.evals() + 2 * n + 1 > cfg.max_evals};
}

OptimizeResult minimize(const Objective& f, const ParamVector& x0, const OptimizerConfig& cfg) {
  switch (cfg.method) {
    case Method::NelderMead: return nelder_mead(f, x0, cfg);
    case Method::GradientDescent: return gradient_descent(f, x0, cfg);
    case Method::Bfgs: return bfgs(f, x0, cfg);
  }
  throw Error(ErrorCode::ConfigError, "unknown optimizer");
}

}  // namespace nhq
