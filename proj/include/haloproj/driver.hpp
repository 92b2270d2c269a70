#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "haloproj/operators.hpp"
#include "haloproj/polyproject.hpp"

namespace haloproj {

struct RunConfig {
  Vector x0;
  std::shared_ptr<const Operator> op;
  int max_iter = 10000;
  double tol_residual = 1e-8;      // stop when |x_n - T x_n| falls below this
  double divergence_radius = 1e6;  // declare divergence when |x_n| exceeds this
  double feas_eps = kDefaultFeasEps;
  double dual_eps = 1e-10;
  // Per-iteration x/y vectors are kept while the running count of stored
  // scalars stays under this budget; later entries carry scalars only.
  std::int64_t trace_vector_budget = 10'000'000;

  void validate() const;  // throws std::invalid_argument
};

enum class RunStatus { Converged, FixedPointHit, Diverging, Infeasible, MaxIterReached };

std::string to_string(RunStatus status);

struct TraceEntry {
  int n = 0;
  std::optional<Vector> x;  // iterate x_n
  std::optional<Vector> y;  // operator image T(x_n)
  double dist_to_x0 = 0.0;
  double residual = 0.0;  // |x_n - y_n|
  int num_constraints = 0;
  int qp_working_set_changes = 0;  // of the projection that produced x_n
};

struct RunResult {
  RunStatus status = RunStatus::MaxIterReached;
  std::optional<Vector> final_point;  // absent for Infeasible
  std::vector<TraceEntry> trace;
  std::optional<InfeasibilityCertificate> certificate;
  int infeasible_at = -1;  // iteration whose cut emptied the intersection
};

/// Outer loop: evaluate y_n = T(x_n), stop on a small residual, otherwise cut
/// with the halfspace through the midpoint of (x_n, y_n) and re-project the
/// anchor x0 onto the accumulated intersection. Terminates with one of the
/// five statuses.
RunResult run(const RunConfig& cfg);

/// Anchored averaged iteration x_{n+1} = (1/(n+2)) x0 + (1 - 1/(n+2)) T(x_n),
/// for comparison against run(). Same result shape; num_constraints is 0.
RunResult halpern_baseline(const RunConfig& cfg);

struct TraceViolation {
  std::string check;  // monotone_distance | variational_inequality | closer_to_image |
                      // cut_membership | fixed_point_containment
  int m = -1;
  int n = -1;
  double amount = 0.0;  // by how much the inequality failed
};

/// Re-checks the inequalities every run() trace must satisfy:
///   (a) dist_to_x0 nondecreasing,
///   (b) <x_n - x_m, x0 - x_m> <= 0 for m < n,
///   (c) |y_m - x_n| <= |x_m - x_n| for m < n,
///   (d) x_n inside the cut built from (x_m, y_m) for m < n,
/// plus membership of every supplied fixed point in every cut. Pairs whose
/// vectors were not retained are skipped. Empty result means all checks pass.
std::vector<TraceViolation> verify_trace_entries(std::span<const TraceEntry> trace, const Vector& x0,
                                                 double feas_eps,
                                                 std::span<const Vector> known_fixed_points = {});

std::vector<TraceViolation> verify_trace(const RunResult& result, const RunConfig& cfg,
                                         std::span<const Vector> known_fixed_points = {});

}  // namespace haloproj
