#include "gaitlift/floquet.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <Eigen/Eigenvalues>

#include "gaitlift/error.hpp"

namespace gaitlift {

namespace {

void sort_by_modulus(std::vector<Complex>& v) {
  std::stable_sort(v.begin(), v.end(), [](const Complex& a, const Complex& b) {
    if (std::abs(a) != std::abs(b)) return std::abs(a) > std::abs(b);
    return a.imag() > b.imag();
  });
}

// Integrates the CPG orbit together with a small linear block whose matrix
// depends on the CPG state; returns the block's monodromy.
template <class BlockJacobian>
Matrix lockstep_block(const PeriodicOrbit& orbit, const RateSystem& cpg, int k,
                      BlockJacobian&& block_jac) {
  const int n = cpg.dim();
  if (orbit.base_point().size() != n) {
    throw DimensionMismatch("orbit does not belong to the CPG system");
  }
  Eigen::VectorXd y(n + k * k);
  y.head(n) = orbit.base_point();
  Eigen::Map<Matrix>(y.data() + n, k, k).setIdentity();
  Matrix jb(k, k);
  State dx(n);
  auto f = [&](double t, const Eigen::VectorXd& z, Eigen::VectorXd& dz) {
    const State x = z.head(n);
    cpg.rhs(t, x, dx);
    dz.head(n) = dx;
    block_jac(x, jb);
    Eigen::Map<const Matrix> w(z.data() + n, k, k);
    Eigen::Map<Matrix> dw(dz.data() + n, k, k);
    dw.noalias() = jb * w;
  };
  y = rk4_flow(f, std::move(y), 0.0, orbit.period(), orbit.step() * (1.0 + 1e-12));
  return Eigen::Map<const Matrix>(y.data() + n, k, k);
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::stable: return "stable";
    case Verdict::unstable: return "unstable";
    case Verdict::marginal: return "marginal";
  }
  return "marginal";
}

Matrix balance(const Matrix& m) {
  Matrix a = m;
  const Eigen::Index n = a.rows();
  constexpr double radix = 2.0;
  bool done = false;
  while (!done) {
    done = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double c = 0.0, r = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / radix;
      double f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= radix;
        c *= radix * radix;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= radix * radix;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
  return a;
}

std::vector<Complex> eig(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("eig needs a square matrix");
  if (m.rows() == 0) return {};
  if (!m.allFinite()) throw NonFinite("eig input has non-finite entries");
  Eigen::EigenSolver<Matrix> solver;
  solver.setMaxIterations(static_cast<Eigen::Index>(100 * m.rows()));
  solver.compute(balance(m), false);
  if (solver.info() != Eigen::Success) {
    throw NoConvergence("QR iteration did not converge for a " + std::to_string(m.rows()) +
                        "x" + std::to_string(m.cols()) + " matrix");
  }
  std::vector<Complex> out(solver.eigenvalues().data(),
                           solver.eigenvalues().data() + solver.eigenvalues().size());
  sort_by_modulus(out);
  return out;
}

std::vector<Multiplier> MultiplierSet::block(const std::string& tag) const {
  std::vector<Multiplier> out;
  std::copy_if(items.begin(), items.end(), std::back_inserter(out),
               [&](const Multiplier& m) { return m.block == tag; });
  return out;
}

void MultiplierSet::sort() {
  std::stable_sort(items.begin(), items.end(), [](const Multiplier& a, const Multiplier& b) {
    return a.modulus() > b.modulus();
  });
}

MonodromyResult monodromy(const PeriodicOrbit& orbit, const OdeSystem& sys) {
  const int n = sys.dim();
  IntegratorConfig cfg;
  cfg.step = orbit.step() * (1.0 + 1e-12);
  auto [x, phi] = flow_with_variational(orbit.base_point(), Matrix::Identity(n, n), sys, cfg, 0.0,
                                        orbit.period());
  if (!phi.allFinite()) throw NonFinite("monodromy matrix is not finite");
  Block all{"cpg", {}};
  for (int i = 0; i < n; ++i) all.indices.push_back(i);
  return {std::move(phi), orbit.period(), {std::move(all)}};
}

MonodromyResult transverse_monodromy_1node(const PeriodicOrbit& orbit, const RateSystem& cpg,
                                           int cpg_node) {
  if (cpg_node < 1 || cpg_node > cpg.nodes()) throw DimensionMismatch("CPG node out of range");
  const auto& p = cpg.params();
  const double kappa = cpg.time_factor();
  const double fe = kappa / p.epsilon;
  Matrix phi = lockstep_block(orbit, cpg, 2, [&](const State& x, Matrix& j) {
    const double eta = gain_prime(cpg.gain_argument(x, cpg_node), p.gain);
    j << -fe, -fe * p.g * eta, kappa, -kappa;
  });
  return {std::move(phi), orbit.period(), {{"transverse:1", {0, 1}}}};
}

MonodromyResult transverse_monodromy_2node(const PeriodicOrbit& orbit, const RateSystem& cpg,
                                           std::pair<int, int> cpg_nodes, double h) {
  const auto [a, b] = cpg_nodes;
  if (a < 1 || a > cpg.nodes() || b < 1 || b > cpg.nodes()) {
    throw DimensionMismatch("CPG node out of range");
  }
  const auto& p = cpg.params();
  const double kappa = cpg.time_factor();
  const double fe = kappa / p.epsilon;
  Matrix phi = lockstep_block(orbit, cpg, 4, [&](const State& x, Matrix& j) {
    const double g1 = gain_prime(cpg.gain_argument(x, a), p.gain);
    const double g2 = gain_prime(cpg.gain_argument(x, b), p.gain);
    j << -fe, fe * h * g1, -fe * p.g * g1, 0.0,
         fe * h * g2, -fe, 0.0, -fe * p.g * g2,
         kappa, 0.0, -kappa, 0.0,
         0.0, kappa, 0.0, -kappa;
  });
  return {std::move(phi), orbit.period(), {{"transverse:1", {0, 1, 2, 3}}}};
}

MultiplierSet multipliers(const MonodromyResult& mono, const std::string& tag) {
  MultiplierSet ms;
  for (const Complex& z : eig(mono.matrix)) ms.items.push_back({z, tag});
  return ms;
}

MultiplierSet split_multipliers(const MonodromyResult& full, const LiftStructure& lift) {
  int total = lift.cpg_size;
  for (const auto& mod : lift.modules) total += static_cast<int>(mod.size());
  const Matrix& phi = full.matrix;
  if (phi.rows() != 2 * total || phi.cols() != 2 * total) {
    throw StructureMismatch("monodromy has dimension " + std::to_string(phi.rows()) +
                            " but the lift has " + std::to_string(total) + " nodes");
  }

  auto indices_of = [&](const std::vector<int>& nodes) {
    std::vector<int> idx;
    for (int v : nodes) idx.push_back(v - 1);
    for (int v : nodes) idx.push_back(total + v - 1);
    return idx;
  };
  std::vector<Block> blocks;
  {
    std::vector<int> cpg_nodes(static_cast<std::size_t>(lift.cpg_size));
    for (int i = 0; i < lift.cpg_size; ++i) cpg_nodes[static_cast<std::size_t>(i)] = i + 1;
    blocks.push_back({"cpg", indices_of(cpg_nodes)});
  }
  for (std::size_t k = 0; k < lift.modules.size(); ++k) {
    blocks.push_back({"transverse:" + std::to_string(k + 1), indices_of(lift.modules[k])});
  }

  // Feedforward order: no block may depend on a later one.
  const double tol = 1e-12 * std::max(1.0, phi.cwiseAbs().maxCoeff());
  for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
    for (std::size_t bj = bi + 1; bj < blocks.size(); ++bj) {
      for (int r : blocks[bi].indices) {
        for (int c : blocks[bj].indices) {
          if (std::abs(phi(r, c)) > tol) {
            throw StructureMismatch("block " + blocks[bi].tag + " depends on " + blocks[bj].tag);
          }
        }
      }
    }
  }

  MultiplierSet ms;
  std::map<std::vector<int>, std::vector<double>> seen;
  for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
    const auto& idx = blocks[bi].indices;
    const auto k = static_cast<Eigen::Index>(idx.size());
    Matrix sub(k, k);
    for (Eigen::Index r = 0; r < k; ++r) {
      for (Eigen::Index c = 0; c < k; ++c) sub(r, c) = phi(idx[static_cast<std::size_t>(r)], idx[static_cast<std::size_t>(c)]);
    }
    const auto values = eig(sub);
    for (const Complex& z : values) ms.items.push_back({z, blocks[bi].tag});
    if (bi == 0) continue;

    std::vector<double> moduli;
    for (const Complex& z : values) moduli.push_back(std::abs(z));
    auto key = lift.counterparts[bi - 1];
    std::sort(key.begin(), key.end());
    auto [it, fresh] = seen.try_emplace(key, moduli);
    if (!fresh) {
      for (std::size_t i = 0; i < moduli.size(); ++i) {
        const double ref = it->second[i];
        ms.module_spread =
            std::max(ms.module_spread, std::abs(moduli[i] - ref) / std::max(ref, 1e-300));
      }
    }
  }
  ms.sort();
  return ms;
}

Verdict stability_verdict(const MultiplierSet& ms, double unit_tolerance) {
  int near_one = 0;
  bool trivial_on_cpg = false;
  for (const auto& m : ms.items) {
    if (m.modulus() > 1.0 + unit_tolerance) return Verdict::unstable;
  }
  for (const auto& m : ms.items) {
    if (std::abs(m.modulus() - 1.0) <= unit_tolerance) {
      ++near_one;
      if (std::abs(m.value - 1.0) <= unit_tolerance && m.block == "cpg") trivial_on_cpg = true;
    }
  }
  if (near_one == 1 && trivial_on_cpg) return Verdict::stable;
  return Verdict::marginal;
}

}  // namespace gaitlift
