#include "haloproj/driver.hpp"

#include <stdexcept>
#include <utility>

namespace haloproj {

namespace {

class TraceRecorder {
 public:
  TraceRecorder(std::int64_t vector_budget, int dim) : budget_(vector_budget), dim_(dim) {}

  void record(std::vector<TraceEntry>& trace, int n, const Vector& x, const Vector& y,
              double dist_to_x0, double residual, int num_constraints, int qp_changes) {
    TraceEntry e;
    e.n = n;
    e.dist_to_x0 = dist_to_x0;
    e.residual = residual;
    e.num_constraints = num_constraints;
    e.qp_working_set_changes = qp_changes;
    if (stored_ + 2 * dim_ <= budget_) {
      e.x = x;
      e.y = y;
      stored_ += 2 * dim_;
    }
    trace.push_back(std::move(e));
  }

 private:
  std::int64_t budget_;
  int dim_;
  std::int64_t stored_ = 0;
};

}  // namespace

void RunConfig::validate() const {
  if (!op) throw std::invalid_argument("RunConfig: operator is null");
  if (max_iter < 1) throw std::invalid_argument("RunConfig: max_iter must be at least 1");
  if (!(tol_residual > 0.0)) throw std::invalid_argument("RunConfig: tol_residual must be positive");
  if (!(divergence_radius > 0.0)) {
    throw std::invalid_argument("RunConfig: divergence_radius must be positive");
  }
  if (!(feas_eps > 0.0)) throw std::invalid_argument("RunConfig: feas_eps must be positive");
  if (!(dual_eps > 0.0)) throw std::invalid_argument("RunConfig: dual_eps must be positive");
  if (const auto op_dim = op->dim(); op_dim && *op_dim != x0.dim()) {
    throw std::invalid_argument("RunConfig: operator dimension does not match x0");
  }
}

std::string to_string(RunStatus status) {
  switch (status) {
    case RunStatus::Converged: return "Converged";
    case RunStatus::FixedPointHit: return "FixedPointHit";
    case RunStatus::Diverging: return "Diverging";
    case RunStatus::Infeasible: return "Infeasible";
    case RunStatus::MaxIterReached: return "MaxIterReached";
  }
  return "Unknown";
}

RunResult run(const RunConfig& cfg) {
  cfg.validate();
  const int d = cfg.x0.dim();
  ProjectionTolerances tols;
  tols.feas_eps = cfg.feas_eps;
  tols.dual_eps = cfg.dual_eps;
  Polyhedron cuts(d, tols);

  RunResult out;
  TraceRecorder recorder(cfg.trace_vector_budget, d);
  Vector x = cfg.x0;
  int qp_changes = 0;

  for (int n = 0;; ++n) {
    const Vector y = cfg.op->evaluate(x);
    if (y.dim() != d) throw std::invalid_argument("run: operator changed the dimension");
    const double residual = distance(x, y);
    recorder.record(out.trace, n, x, y, distance(cfg.x0, x), residual, cuts.size(), qp_changes);

    if (residual <= cfg.tol_residual) {
      // A cut through this pair would be the whole space exactly when the
      // start is already a fixed point.
      out.status = (n == 0 && pair_degenerate(x, y)) ? RunStatus::FixedPointHit
                                                     : RunStatus::Converged;
      out.final_point = std::move(x);
      break;
    }
    if (n >= cfg.max_iter) {
      out.status = RunStatus::MaxIterReached;
      out.final_point = std::move(x);
      break;
    }

    cuts.add_constraint(halfspace_from_pair(x, y));
    ProjectionOutcome next = cuts.project(cfg.x0);
    qp_changes = next.working_set_changes;
    if (next.kind == ProjectionOutcome::Kind::Infeasible) {
      out.status = RunStatus::Infeasible;
      out.certificate = std::move(next.certificate);
      out.infeasible_at = n + 1;
      break;
    }
    x = std::move(*next.point);
    if (norm(x) > cfg.divergence_radius) {
      out.status = RunStatus::Diverging;
      out.final_point = std::move(x);
      break;
    }
  }
  return out;
}

RunResult halpern_baseline(const RunConfig& cfg) {
  cfg.validate();
  const int d = cfg.x0.dim();
  RunResult out;
  TraceRecorder recorder(cfg.trace_vector_budget, d);
  Vector x = cfg.x0;

  for (int n = 0;; ++n) {
    const Vector y = cfg.op->evaluate(x);
    if (y.dim() != d) throw std::invalid_argument("halpern_baseline: operator changed the dimension");
    const double residual = distance(x, y);
    recorder.record(out.trace, n, x, y, distance(cfg.x0, x), residual, 0, 0);

    if (residual <= cfg.tol_residual) {
      out.status = (n == 0 && pair_degenerate(x, y)) ? RunStatus::FixedPointHit
                                                     : RunStatus::Converged;
      out.final_point = std::move(x);
      break;
    }
    if (n >= cfg.max_iter) {
      out.status = RunStatus::MaxIterReached;
      out.final_point = std::move(x);
      break;
    }

    const double t = 1.0 / (n + 2);
    x = t * cfg.x0 + (1.0 - t) * y;
    if (norm(x) > cfg.divergence_radius) {
      out.status = RunStatus::Diverging;
      out.final_point = std::move(x);
      break;
    }
  }
  return out;
}

std::vector<TraceViolation> verify_trace_entries(std::span<const TraceEntry> trace, const Vector& x0,
                                                 double feas_eps,
                                                 std::span<const Vector> known_fixed_points) {
  std::vector<TraceViolation> out;
  const int count = static_cast<int>(trace.size());

  // (a) distances to the anchor never decrease.
  double running_max = -1.0;
  int running_arg = -1;
  for (int n = 0; n < count; ++n) {
    const double dist = trace[static_cast<std::size_t>(n)].dist_to_x0;
    if (dist < running_max - feas_eps) {
      out.push_back({"monotone_distance", running_arg, n, running_max - dist});
    }
    if (dist > running_max) {
      running_max = dist;
      running_arg = n;
    }
  }

  // Rebuild the cut of each iteration once.
  std::vector<std::optional<HalfSpace>> cut(static_cast<std::size_t>(count));
  for (int m = 0; m < count; ++m) {
    const TraceEntry& e = trace[static_cast<std::size_t>(m)];
    if (e.x && e.y) cut[static_cast<std::size_t>(m)] = halfspace_from_pair(*e.x, *e.y);
  }

  for (int n = 1; n < count; ++n) {
    const TraceEntry& en = trace[static_cast<std::size_t>(n)];
    if (!en.x) continue;
    const Vector& xn = *en.x;
    for (int m = 0; m < n; ++m) {
      const TraceEntry& em = trace[static_cast<std::size_t>(m)];
      if (em.x) {
        const Vector& xm = *em.x;
        // (b) obtuse angle at the projection x_m, seen from the anchor.
        const double lhs = inner(xn - xm, x0 - xm);
        const double slack = feas_eps * (1.0 + norm(xn - xm) * norm(x0 - xm));
        if (lhs > slack) {
          out.push_back({"variational_inequality", m, n, lhs - slack});
        }
        // (c) later iterates sit on the image side of the cut.
        if (em.y) {
          const double gap = distance(*em.y, xn) - distance(xm, xn);
          if (gap > feas_eps) {
            out.push_back({"closer_to_image", m, n, gap - feas_eps});
          }
        }
      }
      // (d) membership of x_n in the cut recorded at iteration m.
      if (cut[static_cast<std::size_t>(m)] && !cut[static_cast<std::size_t>(m)]->contains(xn, feas_eps)) {
        out.push_back({"cut_membership", m, n, cut[static_cast<std::size_t>(m)]->violation(xn)});
      }
    }
  }

  for (const Vector& fp : known_fixed_points) {
    for (int m = 0; m < count; ++m) {
      if (cut[static_cast<std::size_t>(m)] && !cut[static_cast<std::size_t>(m)]->contains(fp, feas_eps)) {
        out.push_back({"fixed_point_containment", m, -1, cut[static_cast<std::size_t>(m)]->violation(fp)});
      }
    }
  }
  return out;
}

std::vector<TraceViolation> verify_trace(const RunResult& result, const RunConfig& cfg,
                                         std::span<const Vector> known_fixed_points) {
  return verify_trace_entries(result.trace, cfg.x0, cfg.feas_eps, known_fixed_points);
}

}  // namespace haloproj
