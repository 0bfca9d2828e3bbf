#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "gaitlift/error.hpp"

namespace gaitlift {

using State = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Autonomous-or-not ODE x' = f(t, x) with an analytic Jacobian.
class OdeSystem {
 public:
  virtual ~OdeSystem() = default;
  virtual int dim() const = 0;
  virtual void rhs(double t, const State& x, State& dx) const = 0;
  virtual void jacobian(double t, const State& x, Matrix& jac) const = 0;
};

/// x' = J x for a constant matrix J.
class LinearSystem final : public OdeSystem {
 public:
  explicit LinearSystem(Matrix j) : j_(std::move(j)) {}
  int dim() const override { return static_cast<int>(j_.rows()); }
  void rhs(double, const State& x, State& dx) const override { dx.noalias() = j_ * x; }
  void jacobian(double, const State&, Matrix& jac) const override { jac = j_; }
  const Matrix& matrix() const { return j_; }

 private:
  Matrix j_;
};

enum class Method { rk4 };

struct IntegratorConfig {
  double step = 1e-3;
  Method method = Method::rk4;
  double max_time = std::numeric_limits<double>::infinity();
};

/// Samples at t0 + k*step, k = 0..floor((t1-t0)/step).
struct Trajectory {
  double t0 = 0.0;
  double step = 0.0;
  std::vector<State> samples;

  double time(std::size_t k) const { return t0 + static_cast<double>(k) * step; }
  double t1() const { return samples.empty() ? t0 : time(samples.size() - 1); }
};

/// One classical RK4 step of y' = f(t, y) for any Eigen vector type.
template <class F, class Vec>
void rk4_step(F&& f, double t, Vec& y, double h, Vec& k1, Vec& k2, Vec& k3, Vec& k4, Vec& tmp) {
  f(t, y, k1);
  tmp = y + (0.5 * h) * k1;
  f(t + 0.5 * h, tmp, k2);
  tmp = y + (0.5 * h) * k2;
  f(t + 0.5 * h, tmp, k3);
  tmp = y + h * k3;
  f(t + h, tmp, k4);
  y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

/// Number of uniform steps no longer than `max_step` covering [t0, t1].
inline long steps_for(double t0, double t1, double max_step) {
  const double span = t1 - t0;
  if (span <= 0.0) return 0;
  return std::max(1L, static_cast<long>(std::ceil(span / max_step - 1e-9)));
}

/// Integrates y' = f(t, y) from t0 to exactly t1 using uniform RK4 steps no
/// longer than max_step.
template <class F>
Eigen::VectorXd rk4_flow(F&& f, Eigen::VectorXd y, double t0, double t1, double max_step) {
  const long n = steps_for(t0, t1, max_step);
  if (n == 0) return y;
  const double h = (t1 - t0) / static_cast<double>(n);
  Eigen::VectorXd k1(y.size()), k2(y.size()), k3(y.size()), k4(y.size()), tmp(y.size());
  for (long i = 0; i < n; ++i) {
    rk4_step(f, t0 + static_cast<double>(i) * h, y, h, k1, k2, k3, k4, tmp);
    if (!y.allFinite()) {
      throw NonFinite("state became non-finite at t = " +
                      std::to_string(t0 + static_cast<double>(i + 1) * h));
    }
  }
  return y;
}

Trajectory integrate(const State& s0, const OdeSystem& sys, const IntegratorConfig& cfg,
                     double t0, double t1);

/// End state at exactly t1 (the last step is shortened uniformly).
State flow(const State& s0, const OdeSystem& sys, const IntegratorConfig& cfg, double t0,
           double t1);

/// Integrates x' = f(x), V' = Df(x) V in lockstep and returns (x(t1), V(t1)).
/// V0 may be rectangular (dim x k).
std::pair<State, Matrix> flow_with_variational(const State& s0, const Matrix& v0,
                                               const OdeSystem& sys, const IntegratorConfig& cfg,
                                               double t0, double t1);

}  // namespace gaitlift
