#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "haloproj/oracle.hpp"

using namespace haloproj;

TEST_CASE("instances are reproducible from the seed") {
  const RandomInstance inst{.seed = 1, .dimension = 2, .constraint_count = 3};
  auto [p1, a1] = random_polyhedron_instance(inst);
  auto [p2, a2] = random_polyhedron_instance(inst);

  REQUIRE(p1.size() == 3);
  REQUIRE(p2.size() == 3);
  CHECK(a1 == a2);
  for (int i = 0; i < p1.size(); ++i) {
    CHECK(p1.constraint(i).normal() == p2.constraint(i).normal());
    CHECK(p1.constraint(i).offset() == p2.constraint(i).offset());
  }
}

TEST_CASE("different seeds give different instances") {
  auto [p1, a1] = random_polyhedron_instance({.seed = 1, .dimension = 2, .constraint_count = 3});
  auto [p2, a2] = random_polyhedron_instance({.seed = 2, .dimension = 2, .constraint_count = 3});
  CHECK(!(a1 == a2));
}

TEST_CASE("instance generator honors its ranges") {
  for (std::uint64_t seed = 10; seed < 40; ++seed) {
    const RandomInstance inst{.seed = seed, .dimension = 3, .constraint_count = 8};
    auto [p, anchor] = random_polyhedron_instance(inst);
    REQUIRE(p.size() == 8);
    for (int i = 0; i < p.size(); ++i) {
      CHECK(std::abs(norm(p.constraint(i).normal()) - 1.0) <= 1e-12);
      CHECK(std::abs(p.constraint(i).offset()) <= inst.offset_range + 1e-12);
    }
    for (int c = 0; c < 3; ++c) CHECK(std::abs(anchor[c]) <= inst.anchor_range);
  }
}

TEST_CASE("constraint budget is enforced") {
  CHECK_THROWS_AS(random_polyhedron_instance({.seed = 1, .dimension = 2, .constraint_count = 13}),
                  std::invalid_argument);
  CHECK_THROWS_AS(random_polyhedron_instance({.seed = 1, .dimension = 0, .constraint_count = 3}),
                  std::invalid_argument);
}

TEST_CASE("empty constraint set compares trivially") {
  const RandomInstance inst{.seed = 5, .dimension = 3, .constraint_count = 0};
  const OracleReport report = oracle_compare(inst);
  CHECK(report.agree());
  CHECK(report.solver_kind == ProjectionOutcome::Kind::Point);
  CHECK(report.point_distance == 0.0);
}

TEST_CASE("parallel contradictory constraints are infeasible on both routes") {
  Polyhedron p(2);
  p.add_constraint(HalfSpace(Vector{1.0, 0.0}, -1.0));  // z1 <= -1
  p.add_constraint(HalfSpace(Vector{-1.0, 0.0}, -1.0)); // z1 >= 1
  Polyhedron solver = p;
  CHECK(solver.project(Vector{0, 0}).kind == ProjectionOutcome::Kind::Infeasible);
  CHECK(brute_force_project(p, Vector{0, 0}).kind == ProjectionOutcome::Kind::Infeasible);
}

TEST_CASE("sweep instances stay inside the oracle budget") {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const RandomInstance inst = make_sweep_instance(seed);
    CHECK(inst.constraint_count >= 1);
    CHECK(inst.constraint_count <= 10);
    CHECK((inst.dimension == 2 || inst.dimension == 3 || inst.dimension == 5));
  }
}

TEST_CASE("agreement sweep over a seed block") {
  int feasible = 0;
  int infeasible = 0;
  for (std::uint64_t seed = 2000; seed < 2300; ++seed) {
    const OracleReport report = oracle_compare(make_sweep_instance(seed));
    INFO("seed ", seed, ": ", report.to_string());
    CHECK(report.agree());
    (report.solver_kind == ProjectionOutcome::Kind::Point ? feasible : infeasible) += 1;
  }
  // the block must exercise both outcomes
  CHECK(feasible > 50);
  CHECK(infeasible > 50);
}
