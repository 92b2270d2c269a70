#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "haloproj/geometry.hpp"

namespace haloproj {

/// Raised when the active-set loop exceeds its working-set change budget.
struct NumericalBreakdown : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ProjectionTolerances {
  double feas_eps = kDefaultFeasEps;  // primal feasibility slack
  double dual_eps = 1e-10;            // multiplier sign test
  double rank_eps = 1e-12;            // relative singular-value truncation in least-squares solves
  double dependence_eps = 1e-9;       // orthogonal-residual norm below which a normal is dependent
  int max_iter_factor = 50;           // change budget = factor * (constraints + dimension)
};

struct CertificateTerm {
  int index = 0;       // constraint index
  double weight = 0.0; // nonnegative multiplier
};

/// Nonnegative combination of constraints witnessing an empty intersection:
/// sum w_i a_i ~ 0 while sum w_i b_i < 0.
struct InfeasibilityCertificate {
  std::vector<CertificateTerm> terms;
};

struct CertificateCheck {
  bool weights_nonnegative = false;
  double combined_normal_norm = 0.0;
  double combined_offset = 0.0;

  bool valid(double normal_tol = 1e-8, double offset_bound = -1e-10) const {
    return weights_nonnegative && combined_normal_norm <= normal_tol && combined_offset <= offset_bound;
  }
};

struct ProjectionOutcome {
  enum class Kind { Point, Infeasible };

  Kind kind = Kind::Point;
  std::optional<Vector> point;                          // set when kind == Point
  std::optional<InfeasibilityCertificate> certificate;  // set when kind == Infeasible
  int working_set_changes = 0;

  static ProjectionOutcome feasible(Vector p, int changes);
  static ProjectionOutcome infeasible(InfeasibilityCertificate cert, int changes);
};

/// Append-only intersection of halfspaces together with the warm-start state
/// of the nearest-point solver. Constraints are stored with unit normals;
/// whole-space cuts are never stored. One instance is single-owner mutable
/// state: concurrent projections need separate instances.
class Polyhedron {
 public:
  explicit Polyhedron(int dim, ProjectionTolerances tols = {});

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(constraints_.size()); }
  const HalfSpace& constraint(int i) const { return constraints_[static_cast<std::size_t>(i)]; }
  const std::vector<HalfSpace>& constraints() const { return constraints_; }
  const ProjectionTolerances& tolerances() const { return tols_; }

  /// Appends h. Whole-space halfspaces leave the set unchanged.
  void add_constraint(const HalfSpace& h);

  /// Largest violation of z over the stored constraints (0 for an empty set).
  double max_violation(const Vector& z) const;

  /// Nearest point of the intersection to x0, computed by a dual active-set
  /// scheme warm started from the previous call, or a Farkas certificate when
  /// the intersection is empty. Throws NumericalBreakdown when the working-set
  /// change budget is exhausted.
  ProjectionOutcome project(const Vector& x0);

  void reset_warm_state();

 private:
  int dim_;
  ProjectionTolerances tols_;
  std::vector<HalfSpace> constraints_;
  std::vector<int> warm_active_;
  std::vector<double> warm_multipliers_;
};

/// Reference projector: enumerates every subset of constraints, solves the
/// equality-constrained projection for each, and keeps the feasible candidate
/// with nonnegative multipliers that is closest to x0. Infeasibility is
/// decided by the same enumeration. Independent of Polyhedron::project; caps
/// at 20 constraints.
ProjectionOutcome brute_force_project(const Polyhedron& P, const Vector& x0);

CertificateCheck check_certificate(const Polyhedron& P, const InfeasibilityCertificate& cert);

}  // namespace haloproj
