#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "haloproj/polyproject.hpp"

namespace haloproj {

/// Seed-determined random projection problem. Identical fields produce an
/// identical instance on every platform.
struct RandomInstance {
  std::uint64_t seed = 0;
  int dimension = 2;
  int constraint_count = 4;  // at most 12, to stay inside the oracle budget
  double offset_range = 2.0; // offsets drawn uniformly from [-range, range]
  double anchor_range = 3.0; // anchor coordinates drawn from [-range, range]
};

/// Random unit-normal halfspaces plus a random anchor point.
std::pair<Polyhedron, Vector> random_polyhedron_instance(const RandomInstance& inst);

/// Derives dimension (from {2, 3, 5}) and constraint count (1..max_constraints)
/// from the sweep seed. Used by oracle-sweep and the acceptance suite.
RandomInstance make_sweep_instance(std::uint64_t seed, int max_constraints = 10);

struct OracleReport {
  bool kind_agree = false;
  bool point_agree = false;  // true when both infeasible, or points within tolerance
  double point_distance = 0.0;
  ProjectionOutcome::Kind solver_kind = ProjectionOutcome::Kind::Point;
  ProjectionOutcome::Kind oracle_kind = ProjectionOutcome::Kind::Point;

  bool agree() const { return kind_agree && point_agree; }
  std::string to_string() const;
};

/// Runs the active-set projector and the subset-enumeration reference on the
/// same instance and reports whether they agree.
OracleReport oracle_compare(const RandomInstance& inst, double point_tol = 1e-7);

}  // namespace haloproj
