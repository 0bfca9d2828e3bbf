#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "gaitlift/integrator.hpp"
#include "gaitlift/network.hpp"
#include "gaitlift/orbit.hpp"
#include "gaitlift/rate_model.hpp"

namespace gaitlift {

using Complex = std::complex<double>;

/// Eigenvalues of a real square matrix, sorted by decreasing modulus.
/// The matrix is balanced by exact power-of-two scaling before the
/// Hessenberg/QR stage. Throws NoConvergence.
std::vector<Complex> eig(const Matrix& m);

/// Diagonal similarity D^{-1} M D with power-of-two entries that equalises
/// row and column norms. Returns the balanced matrix.
Matrix balance(const Matrix& m);

struct Block {
  std::string tag;           // "cpg" or "transverse:k"
  std::vector<int> indices;  // state indices (0-based) spanned by the block
};

struct MonodromyResult {
  Matrix matrix;
  double period = 0.0;
  std::vector<Block> blocks;
};

struct Multiplier {
  Complex value;
  std::string block;
  double modulus() const { return std::abs(value); }
};

struct MultiplierSet {
  /// Sorted by decreasing modulus.
  std::vector<Multiplier> items;
  /// Largest relative modulus mismatch between modules replicating the same
  /// CPG nodes (0 when no module is repeated).
  double module_spread = 0.0;

  std::vector<Multiplier> block(const std::string& tag) const;
  void sort();
};

enum class Verdict { stable, unstable, marginal };
std::string to_string(Verdict v);

/// Full-state monodromy along the orbit, re-integrating the nonlinear system
/// in lockstep from the orbit's base point.
MonodromyResult monodromy(const PeriodicOrbit& orbit, const OdeSystem& sys);

/// 2x2 transverse monodromy of a single chain node synchronous with CPG node
/// `cpg_node`; the orbit must belong to `cpg`.
MonodromyResult transverse_monodromy_1node(const PeriodicOrbit& orbit, const RateSystem& cpg,
                                           int cpg_node);

/// 4x4 transverse monodromy of a laterally coupled pair synchronous with CPG
/// nodes (first, second), in the variable order (u1E, u2E, u1H, u2H).
MonodromyResult transverse_monodromy_2node(const PeriodicOrbit& orbit, const RateSystem& cpg,
                                           std::pair<int, int> cpg_nodes, double h);

/// Eigenvalues of a monodromy matrix, all tagged with `tag`.
MultiplierSet multipliers(const MonodromyResult& mono, const std::string& tag = "cpg");

/// Splits a lift's full monodromy along its block-lower-triangular structure.
/// Throws StructureMismatch when a block above the diagonal is non-zero.
MultiplierSet split_multipliers(const MonodromyResult& full, const LiftStructure& lift);

/// Stable iff exactly one multiplier lies within unit_tolerance of 1 (and it
/// belongs to the CPG) and every other modulus is below 1 - unit_tolerance.
Verdict stability_verdict(const MultiplierSet& ms, double unit_tolerance = 0.02);

}  // namespace gaitlift
