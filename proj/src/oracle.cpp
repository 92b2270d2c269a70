#include "haloproj/oracle.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace haloproj {

namespace {

// Mapping raw engine output keeps the draws identical across standard
// libraries; std::uniform_real_distribution makes no such promise.
double next_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double next_uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * next_unit(rng);
}

Vector next_unit_normal(std::mt19937_64& rng, int dim) {
  while (true) {
    std::vector<double> c(static_cast<std::size_t>(dim));
    for (double& v : c) v = next_uniform(rng, -1.0, 1.0);
    Vector candidate(std::move(c));
    const double len = norm(candidate);
    if (len >= 0.1) return (1.0 / len) * candidate;
  }
}

}  // namespace

std::pair<Polyhedron, Vector> random_polyhedron_instance(const RandomInstance& inst) {
  if (inst.dimension < 1) throw std::invalid_argument("random_polyhedron_instance: bad dimension");
  if (inst.constraint_count < 0 || inst.constraint_count > 12) {
    throw std::invalid_argument("random_polyhedron_instance: constraint count must be in [0, 12]");
  }
  std::mt19937_64 rng(inst.seed);
  Polyhedron poly(inst.dimension);
  for (int i = 0; i < inst.constraint_count; ++i) {
    const Vector normal = next_unit_normal(rng, inst.dimension);
    const double offset = next_uniform(rng, -inst.offset_range, inst.offset_range);
    poly.add_constraint(HalfSpace(normal, offset));
  }
  std::vector<double> anchor(static_cast<std::size_t>(inst.dimension));
  for (double& v : anchor) v = next_uniform(rng, -inst.anchor_range, inst.anchor_range);
  return {std::move(poly), Vector(std::move(anchor))};
}

RandomInstance make_sweep_instance(std::uint64_t seed, int max_constraints) {
  static constexpr int kDims[] = {2, 3, 5};
  std::mt19937_64 rng(seed);
  RandomInstance inst;
  inst.dimension = kDims[rng() % 3];
  inst.constraint_count = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_constraints));
  inst.seed = rng();
  return inst;
}

std::string OracleReport::to_string() const {
  const auto kind_name = [](ProjectionOutcome::Kind k) {
    return k == ProjectionOutcome::Kind::Point ? "Point" : "Infeasible";
  };
  std::string s = "solver=";
  s += kind_name(solver_kind);
  s += " oracle=";
  s += kind_name(oracle_kind);
  if (kind_agree && solver_kind == ProjectionOutcome::Kind::Point) {
    s += " point_distance=" + std::to_string(point_distance);
  }
  s += agree() ? " (agree)" : " (DISAGREE)";
  return s;
}

OracleReport oracle_compare(const RandomInstance& inst, double point_tol) {
  auto [poly, anchor] = random_polyhedron_instance(inst);
  Polyhedron solver_poly = poly;  // project() mutates warm-start state
  const ProjectionOutcome solved = solver_poly.project(anchor);
  const ProjectionOutcome reference = brute_force_project(poly, anchor);

  OracleReport report;
  report.solver_kind = solved.kind;
  report.oracle_kind = reference.kind;
  report.kind_agree = solved.kind == reference.kind;
  if (report.kind_agree && solved.kind == ProjectionOutcome::Kind::Point) {
    report.point_distance = distance(*solved.point, *reference.point);
    report.point_agree = report.point_distance <= point_tol;
  } else {
    report.point_agree = report.kind_agree;
  }
  return report;
}

}  // namespace haloproj
