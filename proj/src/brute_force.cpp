#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include "haloproj/polyproject.hpp"

// Subset-enumeration reference projector. Deliberately shares nothing with
// the active-set path in polyproject.cpp beyond the public types.

namespace haloproj {

namespace {

constexpr int kConstraintBudget = 20;

Eigen::VectorXd to_eigen(const Vector& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.coords().data(), v.dim());
}

Vector from_eigen(const Eigen::VectorXd& v) {
  return Vector(std::vector<double>(v.data(), v.data() + v.size()));
}

}  // namespace

ProjectionOutcome brute_force_project(const Polyhedron& P, const Vector& x0) {
  if (x0.dim() != P.dim()) throw std::invalid_argument("brute_force_project: dimension mismatch");
  const int m = P.size();
  const int d = P.dim();
  if (m > kConstraintBudget) {
    throw std::invalid_argument("brute_force_project: constraint budget exceeded (" +
                                std::to_string(m) + " > " + std::to_string(kConstraintBudget) + ")");
  }
  const ProjectionTolerances& tols = P.tolerances();
  const Eigen::VectorXd anchor = to_eigen(x0);

  Eigen::MatrixXd rows(m, d);
  Eigen::VectorXd offsets(m);
  for (int i = 0; i < m; ++i) {
    rows.row(i) = to_eigen(P.constraint(i).normal()).transpose();
    offsets(i) = P.constraint(i).offset();
  }

  // Feasibility and consistency are judged relative to the candidate's
  // magnitude: far-away vertices of thin wedges cannot meet an absolute
  // slack that double precision does not resolve at their scale.
  const auto is_feasible = [&](const Eigen::VectorXd& z) {
    const double slack = tols.feas_eps * (1.0 + z.norm());
    for (int i = 0; i < m; ++i) {
      if (rows.row(i).dot(z) - offsets(i) > slack) return false;
    }
    return true;
  };

  // Pass 1: best feasible KKT candidate over all active subsets.
  std::optional<Eigen::VectorXd> best;
  double best_dist = std::numeric_limits<double>::infinity();
  const std::uint32_t subsets = 1u << m;
  for (std::uint32_t mask = 0; mask < subsets; ++mask) {
    const int k = std::popcount(mask);
    Eigen::VectorXd z;
    if (k == 0) {
      z = anchor;
    } else {
      Eigen::MatrixXd sub(k, d);
      Eigen::VectorXd sub_offsets(k);
      int r = 0;
      for (int i = 0; i < m; ++i) {
        if (mask & (1u << i)) {
          sub.row(r) = rows.row(i);
          sub_offsets(r) = offsets(i);
          ++r;
        }
      }
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(sub * sub.transpose(),
                                            Eigen::ComputeThinU | Eigen::ComputeThinV);
      svd.setThreshold(tols.rank_eps);
      const Eigen::VectorXd multipliers = svd.solve(sub * anchor - sub_offsets);
      z = anchor - sub.transpose() * multipliers;
      // Skip subsets whose equality system the candidate does not solve
      // (inconsistent subset) and candidates with a negative multiplier.
      if ((sub * z - sub_offsets).lpNorm<Eigen::Infinity>() > tols.feas_eps * (1.0 + z.norm())) {
        continue;
      }
      if (multipliers.minCoeff() < -1e-9 * (1.0 + multipliers.lpNorm<Eigen::Infinity>())) continue;
    }
    if (!is_feasible(z)) continue;
    const double dist = (z - anchor).norm();
    if (dist < best_dist) {
      best_dist = dist;
      best = z;
    }
  }
  if (best) {
    return ProjectionOutcome::feasible(from_eigen(*best), 0);
  }

  // Pass 2: no subset produced a feasible point, so the intersection is
  // empty. Search supports of size <= d+1 for a Farkas vertex:
  // mu >= 0, sum mu_i a_i = 0, sum mu_i = 1, sum mu_i b_i < 0.
  std::optional<InfeasibilityCertificate> cert;
  double most_negative = -1e-10;
  for (std::uint32_t mask = 1; mask < subsets; ++mask) {
    const int k = std::popcount(mask);
    if (k > d + 1) continue;
    Eigen::MatrixXd stacked(d + 1, k);
    Eigen::VectorXd sub_offsets(k);
    std::vector<int> support;
    int c = 0;
    for (int i = 0; i < m; ++i) {
      if (mask & (1u << i)) {
        stacked.block(0, c, d, 1) = rows.row(i).transpose();
        stacked(d, c) = 1.0;
        sub_offsets(c) = offsets(i);
        support.push_back(i);
        ++c;
      }
    }
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(d + 1);
    rhs(d) = 1.0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(tols.rank_eps);
    const Eigen::VectorXd mu = svd.solve(rhs);
    if ((stacked * mu - rhs).norm() > 1e-9) continue;
    if (mu.minCoeff() < -1e-12) continue;
    const double combined_offset = sub_offsets.dot(mu);
    if (combined_offset < most_negative) {
      most_negative = combined_offset;
      InfeasibilityCertificate candidate;
      for (int i = 0; i < k; ++i) {
        const double w = std::max(mu(i), 0.0);
        if (w > 0.0) candidate.terms.push_back({support[static_cast<std::size_t>(i)], w});
      }
      cert = std::move(candidate);
    }
  }
  if (!cert) {
    throw std::runtime_error("brute_force_project: no feasible candidate and no certificate");
  }
  return ProjectionOutcome::infeasible(std::move(*cert), 0);
}

}  // namespace haloproj
