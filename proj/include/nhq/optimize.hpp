#pragma once

#include <cstdint>
#include <functional>
#include <random>

#include <Eigen/Dense>

namespace nhq {

using ParamVector = Eigen::VectorXd;
using Objective = std::function<double(const ParamVector&)>;

/// GradientDescent and Bfgs both use central-difference gradients.
enum class Method { NelderMead, GradientDescent, Bfgs };

struct OptimizerConfig {
  Method method = Method::NelderMead;
  int max_evals = 2000;
  double tolerance = 1e-10;     // spread of simplex values / gradient norm
  double x_tolerance = 1e-8;    // simplex diameter (Nelder-Mead)
  double initial_step = 0.5;    // simplex edge length (Nelder-Mead)
  double learning_rate = 0.1;   // gradient descent
  double fd_step = 1e-5;        // central-difference step
  int restarts = 1;             // Nelder-Mead: rebuild the simplex at the optimum this many times
  std::uint64_t seed = 0;       // 0 keeps the axis-aligned simplex

  void validate() const;
};

struct OptimizeResult {
  ParamVector x;
  double f = 0.0;
  int evaluations = 0;
  bool exhausted = false;  // max_evals hit before convergence
};

/// Never returns a point worse than x0. Zero-length x0 evaluates once.
OptimizeResult minimize(const Objective& f, const ParamVector& x0, const OptimizerConfig& cfg);

OptimizeResult nelder_mead(const Objective& f, const ParamVector& x0, const OptimizerConfig& cfg);
OptimizeResult gradient_descent(const Objective& f, const ParamVector& x0, const OptimizerConfig& cfg);
OptimizeResult bfgs(const Objective& f, const ParamVector& x0, const OptimizerConfig& cfg);

ParamVector central_difference_gradient(const Objective& f, const ParamVector& x, double h);

/// Platform-independent draws from mt19937_64 (the standard distributions
/// are implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  double uniform();  // [0, 1)
  double normal();
  std::uint64_t below(std::uint64_t n);  // uniform on [0, n)

 private:
  std::mt19937_64 engine_;
};

}  // namespace nhq
