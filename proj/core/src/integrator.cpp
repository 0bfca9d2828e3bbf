#include "gaitlift/integrator.hpp"

namespace gaitlift {

namespace {

void check_span(const IntegratorConfig& cfg, double t0, double t1) {
  if (!(cfg.step > 0.0)) throw InvalidParameters("integration step must be positive");
  if (t1 - t0 > cfg.max_time) {
    throw InvalidParameters("requested span exceeds max_time");
  }
}

}  // namespace

Trajectory integrate(const State& s0, const OdeSystem& sys, const IntegratorConfig& cfg,
                     double t0, double t1) {
  check_span(cfg, t0, t1);
  if (!(t1 > t0)) throw InvalidParameters("integrate requires t1 > t0");
  if (s0.size() != sys.dim()) throw DimensionMismatch("initial state has wrong dimension");

  const double h = cfg.step;
  const auto count = static_cast<std::size_t>(std::floor((t1 - t0) / h + 1e-9)) + 1;
  Trajectory traj{t0, h, {}};
  traj.samples.reserve(count);
  State y = s0;
  traj.samples.push_back(y);
  State k1(y.size()), k2(y.size()), k3(y.size()), k4(y.size()), tmp(y.size());
  auto f = [&sys](double t, const State& x, State& dx) { sys.rhs(t, x, dx); };
  for (std::size_t k = 1; k < count; ++k) {
    rk4_step(f, traj.time(k - 1), y, h, k1, k2, k3, k4, tmp);
    if (!y.allFinite()) {
      throw NonFinite("state became non-finite at t = " + std::to_string(traj.time(k)));
    }
    traj.samples.push_back(y);
  }
  return traj;
}

State flow(const State& s0, const OdeSystem& sys, const IntegratorConfig& cfg, double t0,
           double t1) {
  check_span(cfg, t0, t1);
  if (s0.size() != sys.dim()) throw DimensionMismatch("initial state has wrong dimension");
  auto f = [&sys](double t, const State& x, State& dx) { sys.rhs(t, x, dx); };
  return rk4_flow(f, s0, t0, t1, cfg.step);
}

std::pair<State, Matrix> flow_with_variational(const State& s0, const Matrix& v0,
                                               const OdeSystem& sys, const IntegratorConfig& cfg,
                                               double t0, double t1) {
  check_span(cfg, t0, t1);
  const int n = sys.dim();
  if (s0.size() != n || v0.rows() != n) {
    throw DimensionMismatch("variational flow: state/matrix dimension does not match system");
  }
  const auto cols = v0.cols();
  Eigen::VectorXd y(n + n * cols);
  y.head(n) = s0;
  y.tail(n * cols) = Eigen::Map<const Eigen::VectorXd>(v0.data(), n * cols);

  Matrix jac(n, n);
  State dx(n);
  auto f = [&](double t, const Eigen::VectorXd& z, Eigen::VectorXd& dz) {
    const State x = z.head(n);
    sys.rhs(t, x, dx);
    sys.jacobian(t, x, jac);
    dz.head(n) = dx;
    Eigen::Map<const Matrix> v(z.data() + n, n, cols);
    Eigen::Map<Matrix> dv(dz.data() + n, n, cols);
    dv.noalias() = jac * v;
  };
  y = rk4_flow(f, std::move(y), t0, t1, cfg.step);
  Matrix v = Eigen::Map<const Matrix>(y.data() + n, n, cols);
  return {y.head(n), std::move(v)};
}

}  // namespace gaitlift
