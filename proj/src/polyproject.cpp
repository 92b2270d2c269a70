#include "haloproj/polyproject.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

namespace haloproj {

namespace {

Eigen::VectorXd to_eigen(const Vector& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.coords().data(), v.dim());
}

Vector from_eigen(const Eigen::VectorXd& v) {
  return Vector(std::vector<double>(v.data(), v.data() + v.size()));
}

}  // namespace

ProjectionOutcome ProjectionOutcome::feasible(Vector p, int changes) {
  ProjectionOutcome out;
  out.kind = Kind::Point;
  out.point = std::move(p);
  out.working_set_changes = changes;
  return out;
}

ProjectionOutcome ProjectionOutcome::infeasible(InfeasibilityCertificate cert, int changes) {
  ProjectionOutcome out;
  out.kind = Kind::Infeasible;
  out.certificate = std::move(cert);
  out.working_set_changes = changes;
  return out;
}

Polyhedron::Polyhedron(int dim, ProjectionTolerances tols) : dim_(dim), tols_(tols) {
  if (dim < 1) throw std::invalid_argument("Polyhedron: dimension must be positive");
}

void Polyhedron::add_constraint(const HalfSpace& h) {
  if (h.dim() != dim_) throw std::invalid_argument("Polyhedron::add_constraint: dimension mismatch");
  if (h.is_whole_space()) return;
  constraints_.push_back(h);
}

double Polyhedron::max_violation(const Vector& z) const {
  double worst = 0.0;
  for (const HalfSpace& h : constraints_) worst = std::max(worst, h.violation(z));
  return worst;
}

void Polyhedron::reset_warm_state() {
  warm_active_.clear();
  warm_multipliers_.clear();
}

namespace {

// Dual active-set engine for min |z - x0| s.t. a_i^T z <= b_i with unit rows.
// The working set is held as an orthonormal factorization N = Q R of the
// active normals (columns), so dependence tests and equality projections stay
// accurate even when the active normals are nearly parallel; multipliers are
// accumulated the Goldfarb-Idnani way and never go negative.
class ActiveSetEngine {
 public:
  ActiveSetEngine(const Eigen::MatrixXd& rows, const Eigen::VectorXd& offsets,
                  const Eigen::VectorXd& anchor, const ProjectionTolerances& tols, int change_budget)
      : rows_(rows), offsets_(offsets), anchor_(anchor), tols_(tols),
        d_(static_cast<int>(anchor.size())), budget_(change_budget) {}

  int changes() const { return changes_; }

  int size() const { return static_cast<int>(active_.size()); }
  const std::vector<int>& active() const { return active_; }
  const Eigen::VectorXd& multipliers() const { return lambda_; }
  const Eigen::VectorXd& point() const { return z_; }

  bool contains(int constraint) const {
    return std::find(active_.begin(), active_.end(), constraint) != active_.end();
  }

  void init(const std::vector<int>& warm);
  // Equality projection of the anchor onto the current active planes.
  Eigen::VectorXd equality_projection() const;
  // Multipliers solving the normal equations of the active system.
  Eigen::VectorXd normal_equation_multipliers() const;

  // One violated constraint enters; returns false when the intersection is
  // empty (certificate filled in).
  bool bring_in(int entering, InfeasibilityCertificate* certificate);

 private:
  Eigen::VectorXd column(int constraint) const { return rows_.row(constraint).transpose(); }

  void bump() {
    if (++changes_ > budget_) {
      throw NumericalBreakdown("Polyhedron::project: working-set change budget exhausted (" +
                               std::to_string(budget_) + ")");
    }
  }

  void refactor();
  // Orthogonal split a = Q t + s with one reorthogonalization pass.
  void split(const Eigen::VectorXd& a, Eigen::VectorXd* tangent, Eigen::VectorXd* residual) const;

  // Right-hand side of the active normal equations, <a_i, x0> - b_i.
  Eigen::VectorXd active_rhs() const {
    Eigen::VectorXd rhs(size());
    for (int i = 0; i < size(); ++i) {
      rhs(i) = column(active_[static_cast<std::size_t>(i)]).dot(anchor_) -
               offsets_(active_[static_cast<std::size_t>(i)]);
    }
    return rhs;
  }

  const Eigen::MatrixXd& rows_;
  const Eigen::VectorXd& offsets_;
  const Eigen::VectorXd& anchor_;
  const ProjectionTolerances& tols_;
  int d_;
  int budget_ = 0;
  int changes_ = 0;

  std::vector<int> active_;
  Eigen::VectorXd lambda_;
  Eigen::MatrixXd q_;  // d x k, orthonormal columns spanning the active normals
  Eigen::MatrixXd r_;  // k x k, upper triangular, N = Q R
  Eigen::VectorXd z_;
};

void ActiveSetEngine::refactor() {
  const int k = size();
  q_.resize(d_, k);
  r_ = Eigen::MatrixXd::Zero(k, k);
  for (int j = 0; j < k; ++j) {
    Eigen::VectorXd v = column(active_[static_cast<std::size_t>(j)]);
    Eigen::VectorXd coeff = Eigen::VectorXd::Zero(j);
    if (j > 0) {
      const auto head = q_.leftCols(j);
      coeff = head.transpose() * v;
      v -= head * coeff;
      const Eigen::VectorXd correction = head.transpose() * v;
      v -= head * correction;
      coeff += correction;
    }
    r_.col(j).head(j) = coeff;
    const double len = v.norm();
    r_(j, j) = len;
    q_.col(j) = len > 0.0 ? Eigen::VectorXd(v / len) : Eigen::VectorXd::Zero(d_);
  }
}

void ActiveSetEngine::split(const Eigen::VectorXd& a, Eigen::VectorXd* tangent,
                            Eigen::VectorXd* residual) const {
  const int k = size();
  if (k == 0) {
    tangent->resize(0);
    *residual = a;
    return;
  }
  *tangent = q_.transpose() * a;
  *residual = a - q_ * *tangent;
  const Eigen::VectorXd correction = q_.transpose() * *residual;
  *residual -= q_ * correction;
  *tangent += correction;
}

Eigen::VectorXd ActiveSetEngine::equality_projection() const {
  if (size() == 0) return anchor_;
  const Eigen::MatrixXd r_lower = r_.transpose();
  const Eigen::VectorXd w = r_lower.triangularView<Eigen::Lower>().solve(active_rhs());
  return anchor_ - q_ * w;
}

Eigen::VectorXd ActiveSetEngine::normal_equation_multipliers() const {
  if (size() == 0) return Eigen::VectorXd();
  const Eigen::MatrixXd r_lower = r_.transpose();
  const Eigen::VectorXd w = r_lower.triangularView<Eigen::Lower>().solve(active_rhs());
  return r_.triangularView<Eigen::Upper>().solve(w);
}

void ActiveSetEngine::init(const std::vector<int>& warm) {
  active_.clear();
  for (int idx : warm) {
    if (idx >= 0 && idx < static_cast<int>(rows_.rows()) && !contains(idx)) active_.push_back(idx);
  }
  refactor();
  // Solve the normal equations of the warm active set and drop the most
  // negative multiplier until the start is dual feasible.
  while (size() > 0) {
    lambda_ = normal_equation_multipliers();
    int drop = -1;
    double most_negative = -tols_.dual_eps;
    for (int i = 0; i < size(); ++i) {
      if (lambda_(i) < most_negative) {
        most_negative = lambda_(i);
        drop = i;
      }
    }
    if (drop < 0) break;
    active_.erase(active_.begin() + drop);
    refactor();
    bump();
  }
  if (size() == 0) lambda_.resize(0);
  z_ = equality_projection();
}

bool ActiveSetEngine::bring_in(int entering, InfeasibilityCertificate* certificate) {
  const Eigen::VectorXd incoming = column(entering);
  double entering_multiplier = 0.0;
  while (true) {
    Eigen::VectorXd tangent;
    Eigen::VectorXd residual;
    split(incoming, &tangent, &residual);
    Eigen::VectorXd combo;
    if (size() > 0) combo = r_.triangularView<Eigen::Upper>().solve(tangent);

    const double violation = incoming.dot(z_) - offsets_(entering);
    if (violation <= tols_.feas_eps) return true;  // satisfied during partial steps

    const double residual_norm = residual.norm();
    const bool dependent = size() >= d_ || residual_norm <= tols_.dependence_eps;
    const double full_step = dependent ? std::numeric_limits<double>::infinity()
                                       : violation / residual.squaredNorm();

    int blocking = -1;
    double partial_step = std::numeric_limits<double>::infinity();
    for (int i = 0; i < size(); ++i) {
      if (combo(i) > tols_.dual_eps) {
        const double ratio = std::max(lambda_(i), 0.0) / combo(i);
        if (ratio < partial_step) {
          partial_step = ratio;
          blocking = i;
        }
      }
    }

    if (dependent && blocking < 0) {
      // The entering inequality is a nonnegative combination of the active
      // ones, so the intersection is empty; weights normalized to sum one.
      double total = 1.0;
      for (int i = 0; i < combo.size(); ++i) total += std::max(-combo(i), 0.0);
      certificate->terms.clear();
      certificate->terms.push_back({entering, 1.0 / total});
      for (int i = 0; i < combo.size(); ++i) {
        const double w = std::max(-combo(i), 0.0);
        if (w > 0.0) certificate->terms.push_back({active_[static_cast<std::size_t>(i)], w / total});
      }
      std::sort(certificate->terms.begin(), certificate->terms.end(),
                [](const CertificateTerm& a, const CertificateTerm& b) { return a.index < b.index; });
      return false;
    }

    const double step = std::min(full_step, partial_step);
    entering_multiplier += step;
    for (int i = 0; i < size(); ++i) lambda_(i) -= step * combo(i);

    if (full_step <= partial_step) {
      // Entering constraint becomes active; extend the factorization with the
      // freshly orthogonalized residual direction.
      active_.push_back(entering);
      const int k = size();
      q_.conservativeResize(d_, k);
      q_.col(k - 1) = residual / residual_norm;
      Eigen::MatrixXd grown = Eigen::MatrixXd::Zero(k, k);
      grown.topLeftCorner(k - 1, k - 1) = r_;
      grown.col(k - 1).head(k - 1) = tangent;
      grown(k - 1, k - 1) = residual_norm;
      r_ = std::move(grown);
      lambda_.conservativeResize(k);
      lambda_(k - 1) = entering_multiplier;
      z_ = equality_projection();
      bump();
      return true;
    }

    active_.erase(active_.begin() + blocking);
    const int kb = static_cast<int>(lambda_.size());
    for (int i = blocking; i + 1 < kb; ++i) lambda_(i) = lambda_(i + 1);
    lambda_.conservativeResize(kb - 1);
    refactor();
    // z carries the partially entered constraint until it becomes active.
    z_ = anchor_ - entering_multiplier * incoming;
    for (int i = 0; i < size(); ++i) z_ -= lambda_(i) * column(active_[static_cast<std::size_t>(i)]);
    bump();
  }
}

}  // namespace

ProjectionOutcome Polyhedron::project(const Vector& x0) {
  if (x0.dim() != dim_) throw std::invalid_argument("Polyhedron::project: dimension mismatch");
  const int m = size();
  const int d = dim_;
  const Eigen::VectorXd anchor = to_eigen(x0);
  const int change_budget = tols_.max_iter_factor * (m + d);

  Eigen::MatrixXd rows(m, d);
  Eigen::VectorXd offsets(m);
  for (int i = 0; i < m; ++i) {
    const HalfSpace& h = constraints_[static_cast<std::size_t>(i)];
    for (int c = 0; c < d; ++c) rows(i, c) = h.normal()[c];
    offsets(i) = h.offset();
  }

  ActiveSetEngine engine(rows, offsets, anchor, tols_, change_budget);
  engine.init(warm_active_);

  const auto store_warm_state = [&]() {
    warm_active_ = engine.active();
    warm_multipliers_.assign(engine.multipliers().data(),
                             engine.multipliers().data() + engine.multipliers().size());
  };

  while (true) {
    // Most violated constraint; ties broken by lowest index.
    const Eigen::VectorXd& z = engine.point();
    int entering = -1;
    double worst_violation = tols_.feas_eps;
    for (int i = 0; i < m; ++i) {
      const double v = rows.row(i).dot(z) - offsets(i);
      if (v > worst_violation) {
        worst_violation = v;
        entering = i;
      }
    }

    if (entering < 0) {
      store_warm_state();
      return ProjectionOutcome::feasible(from_eigen(z), engine.changes());
    }

    if (engine.contains(entering)) {
      // An active equality can miss feas_eps by round-off once multipliers or
      // the point grow large (far-away vertices of thin wedges). Accept the
      // point inside that noise band; anything bigger is a real breakdown.
      const double scale = engine.multipliers().size() > 0
                               ? engine.multipliers().lpNorm<1>() + z.norm()
                               : z.norm();
      if (worst_violation <= 1e-13 * (1.0 + scale)) {
        store_warm_state();
        return ProjectionOutcome::feasible(from_eigen(z), engine.changes());
      }
      throw NumericalBreakdown("Polyhedron::project: active constraint reported violated");
    }

    InfeasibilityCertificate certificate;
    if (!engine.bring_in(entering, &certificate)) {
      store_warm_state();
      return ProjectionOutcome::infeasible(std::move(certificate), engine.changes());
    }
  }
}

CertificateCheck check_certificate(const Polyhedron& P, const InfeasibilityCertificate& cert) {
  CertificateCheck out;
  out.weights_nonnegative = !cert.terms.empty();
  Eigen::VectorXd combined = Eigen::VectorXd::Zero(P.dim());
  double offset = 0.0;
  for (const CertificateTerm& t : cert.terms) {
    if (t.index < 0 || t.index >= P.size() || t.weight < 0.0) {
      out.weights_nonnegative = false;
      continue;
    }
    const HalfSpace& h = P.constraint(t.index);
    combined += t.weight * to_eigen(h.normal());
    offset += t.weight * h.offset();
  }
  out.combined_normal_norm = combined.norm();
  out.combined_offset = offset;
  return out;
}

}  // namespace haloproj
