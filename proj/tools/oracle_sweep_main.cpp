#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>

#include "haloproj/oracle.hpp"

// Randomized cross-check of the active-set projector against the
// subset-enumeration reference.

int main(int argc, char** argv) {
  CLI::App app{"randomized agreement sweep: active-set projector vs. enumeration reference"};

  std::uint64_t seeds = 1000;
  std::uint64_t first_seed = 1;
  int max_constraints = 10;
  double point_tol = 1e-7;
  app.add_option("--seeds", seeds, "number of seeds to sweep")->capture_default_str();
  app.add_option("--first-seed", first_seed, "first seed")->capture_default_str();
  app.add_option("--max-constraints", max_constraints, "constraint count upper bound")
      ->capture_default_str();
  app.add_option("--point-tol", point_tol, "point agreement tolerance")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  std::uint64_t feasible = 0;
  std::uint64_t infeasible = 0;
  std::uint64_t disagreements = 0;
  double worst_distance = 0.0;
  for (std::uint64_t seed = first_seed; seed < first_seed + seeds; ++seed) {
    const haloproj::RandomInstance inst = haloproj::make_sweep_instance(seed, max_constraints);
    haloproj::OracleReport report;
    try {
      report = haloproj::oracle_compare(inst, point_tol);
    } catch (const std::exception& e) {
      ++disagreements;
      std::printf("seed %llu (d=%d, k=%d): error: %s\n", static_cast<unsigned long long>(seed),
                  inst.dimension, inst.constraint_count, e.what());
      continue;
    }
    if (!report.agree()) {
      ++disagreements;
      std::printf("seed %llu (d=%d, k=%d): %s\n", static_cast<unsigned long long>(seed),
                  inst.dimension, inst.constraint_count, report.to_string().c_str());
      continue;
    }
    if (report.solver_kind == haloproj::ProjectionOutcome::Kind::Point) {
      ++feasible;
      if (report.point_distance > worst_distance) worst_distance = report.point_distance;
    } else {
      ++infeasible;
    }
  }

  std::printf("seeds: %llu  feasible: %llu  infeasible: %llu  disagreements: %llu\n",
              static_cast<unsigned long long>(seeds), static_cast<unsigned long long>(feasible),
              static_cast<unsigned long long>(infeasible),
              static_cast<unsigned long long>(disagreements));
  std::printf("worst feasible point distance: %.3e\n", worst_distance);
  return disagreements == 0 ? 0 : 1;
}
