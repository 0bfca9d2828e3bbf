#include "gaitlift/rate_model.hpp"

#include <cmath>

#include "gaitlift/error.hpp"

namespace gaitlift {

double gain(double x, const GainParams& gp) {
  const double z = gp.b * (x - gp.c);
  if (z >= 0.0) return gp.a / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return gp.a * e / (1.0 + e);
}

double gain_prime(double x, const GainParams& gp) {
  // Symmetric in z, so exp(-|z|) never overflows.
  const double e = std::exp(-std::abs(gp.b * (x - gp.c)));
  return gp.a * gp.b * e / ((1.0 + e) * (1.0 + e));
}

double RateParams::input_at(int node_id) const {
  if (input.size() == 1) return input.front();
  return input.at(static_cast<std::size_t>(node_id - 1));
}

double RateParams::resolve(const Weight& w) const {
  if (!w.is_symbolic()) return w.value;
  if (w.symbol == "h") {
    if (h) return *h;
    if (auto it = symbols.find("beta"); it != symbols.end()) return it->second;
    throw UnresolvedSymbol("'h' is unset and no 'beta' binding exists");
  }
  auto it = symbols.find(w.symbol);
  if (it == symbols.end()) throw UnresolvedSymbol("no binding for weight '" + w.symbol + "'");
  return it->second;
}

void RateParams::validate() const {
  if (!(epsilon > 0.0)) throw InvalidParameters("epsilon must be positive");
  if (!(g >= 0.0)) throw InvalidParameters("g must be non-negative");
  if (!(gain.a > 0.0) || !(gain.b > 0.0)) throw InvalidParameters("gain a and b must be positive");
  if (input.empty()) throw InvalidParameters("input I must have at least one entry");
}

RateSystem::RateSystem(Network net, RateParams params)
    : net_(std::move(net)), params_(std::move(params)), n_(net_.size()) {
  params_.validate();
  if (params_.input.size() != 1 && static_cast<int>(params_.input.size()) != n_) {
    throw DimensionMismatch("input vector has " + std::to_string(params_.input.size()) +
                            " entries for " + std::to_string(n_) + " nodes");
  }
  a_ = Matrix::Zero(n_, n_);
  for (const Arrow& arrow : net_.arrows()) {
    if (arrow.from == arrow.to) {
      throw InvalidParameters("self-coupling on node " + std::to_string(arrow.to) +
                              " is not part of the rate model");
    }
    a_(arrow.to - 1, arrow.from - 1) += params_.resolve(arrow.weight);
  }
  input_.resize(n_);
  for (int i = 1; i <= n_; ++i) input_(i - 1) = params_.input_at(i);
  kappa_ = params_.time_scale == TimeScale::fast ? params_.epsilon : 1.0;
}

double RateSystem::default_step() const {
  return std::min(1e-3, params_.epsilon / 20.0) / kappa_;
}

double RateSystem::gain_argument(const State& x, int node_id) const {
  const int i = node_id - 1;
  return -params_.g * x(n_ + i) + a_.row(i).dot(x.head(n_)) + input_(i);
}

Eigen::VectorXd RateSystem::gain_arguments(const State& x) const {
  return -params_.g * x.tail(n_) + a_ * x.head(n_) + input_;
}

void RateSystem::rhs(double, const State& x, State& dx) const {
  if (x.size() != dim()) throw DimensionMismatch("state has wrong dimension");
  dx.resize(dim());
  const Eigen::VectorXd arg = gain_arguments(x);
  const double fe = kappa_ / params_.epsilon;
  for (int i = 0; i < n_; ++i) {
    dx(i) = fe * (-x(i) + gain(arg(i), params_.gain));
    dx(n_ + i) = kappa_ * (x(i) - x(n_ + i));
  }
}

void RateSystem::jacobian(double, const State& x, Matrix& jac) const {
  if (x.size() != dim()) throw DimensionMismatch("state has wrong dimension");
  jac.setZero(dim(), dim());
  const Eigen::VectorXd arg = gain_arguments(x);
  const double fe = kappa_ / params_.epsilon;
  for (int i = 0; i < n_; ++i) {
    const double gp = gain_prime(arg(i), params_.gain);
    jac.block(i, 0, 1, n_) = (fe * gp) * a_.row(i);
    jac(i, i) -= fe;
    jac(i, n_ + i) = -fe * params_.g * gp;
    jac(n_ + i, i) = kappa_;
    jac(n_ + i, n_ + i) = -kappa_;
  }
}

State rhs(double t, const State& s, const Network& net, const RateParams& p) {
  RateSystem sys(net, p);
  State dx(sys.dim());
  sys.rhs(t, s, dx);
  return dx;
}

Matrix jacobian(const State& s, const Network& net, const RateParams& p) {
  RateSystem sys(net, p);
  Matrix jac;
  sys.jacobian(0.0, s, jac);
  return jac;
}

}  // namespace gaitlift
