#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gaitlift/integrator.hpp"
#include "gaitlift/network.hpp"

namespace gaitlift {

/// Logistic gain a / (1 + exp(-b (x - c))).
struct GainParams {
  double a = 1.0;
  double b = 8.0;
  double c = 1.0;
};

double gain(double x, const GainParams& gp);
double gain_prime(double x, const GainParams& gp);

/// `slow` integrates the equations as written (eps xE' = ..., xH' = ...).
/// `fast` measures time in units of eps, which multiplies the whole vector
/// field by eps and divides every period by eps.
enum class TimeScale { slow, fast };

struct RateParams {
  double epsilon = 1.0;
  double g = 0.0;
  /// One entry (broadcast to every node) or one per node.
  std::vector<double> input{0.0};
  /// Bindings for symbolic arrow weights, e.g. alpha, beta, gamma.
  std::map<std::string, double> symbols;
  GainParams gain;
  /// Lateral module strength; unset means "use beta".
  std::optional<double> h;
  TimeScale time_scale = TimeScale::slow;

  double input_at(int node_id) const;
  double resolve(const Weight& w) const;
  void validate() const;
};

/// Wilson-Cowan rate model on a network. State layout: all activities
/// xE_1..xE_n followed by all fatigues xH_1..xH_n.
class RateSystem final : public OdeSystem {
 public:
  RateSystem(Network net, RateParams params);

  int dim() const override { return 2 * n_; }
  int nodes() const { return n_; }
  void rhs(double t, const State& x, State& dx) const override;
  void jacobian(double t, const State& x, Matrix& jac) const override;

  /// -g xH_i + sum_j A_ij xE_j + I_i for node i (1-based).
  double gain_argument(const State& x, int node_id) const;
  Eigen::VectorXd gain_arguments(const State& x) const;

  /// 1 for the slow scale, eps for the fast one.
  double time_factor() const { return kappa_; }
  /// min(1e-3, eps/20) measured in this system's time units.
  double default_step() const;

  const Network& network() const { return net_; }
  const RateParams& params() const { return params_; }
  /// Resolved connection matrix A (row = head, column = tail).
  const Matrix& coupling() const { return a_; }

 private:
  Network net_;
  RateParams params_;
  int n_ = 0;
  Matrix a_;
  Eigen::VectorXd input_;
  double kappa_ = 1.0;
};

/// Stateless convenience wrappers.
State rhs(double t, const State& s, const Network& net, const RateParams& p);
Matrix jacobian(const State& s, const Network& net, const RateParams& p);

}  // namespace gaitlift
