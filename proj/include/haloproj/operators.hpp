#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "haloproj/geometry.hpp"

namespace haloproj {

/// A deterministic map T : R^d -> R^d. Instances are immutable and safe to
/// share between threads; evaluate is pure. Factories below document the
/// fixed-point set of each shipped instance so tests can exercise the
/// quasi-nonexpansiveness inequalities where it is known.
class Operator {
 public:
  virtual ~Operator() = default;

  virtual Vector evaluate(const Vector& x) const = 0;
  virtual std::string describe() const = 0;

  /// Ambient dimension, or nullopt when the map works in any dimension.
  virtual std::optional<int> dim() const { return std::nullopt; }
};

/// Nonnegative convex function with a gradient, the ingredient of the
/// level-set projector below.
class SmoothConvexFunction {
 public:
  virtual ~SmoothConvexFunction() = default;

  virtual double value(const Vector& x) const = 0;
  virtual Vector gradient(const Vector& x) const = 0;
  virtual int dim() const = 0;
  virtual std::string describe() const = 0;
};

/// x -> alpha * x for alpha in [0,1). Fixed points: {0}.
std::shared_ptr<const Operator> contraction_operator(double alpha);

/// x -> x + alpha * direction for alpha > 0 and a unit direction.
/// No fixed points.
std::shared_ptr<const Operator> translation_operator(double alpha, const Vector& direction);

/// One-dimensional x -> x + sigma(x) where sigma takes values in {-1, +1}.
/// No fixed points.
std::shared_ptr<const Operator> sign_operator(std::function<double(double)> sigma);

/// The canonical sign instance: sigma(x) = +1 for x < 1/2, -1 otherwise.
std::shared_ptr<const Operator> canonical_sign_operator();

/// Level-set projector of f: identity where f(x) <= 0, otherwise
/// x - (f(x)/|g(x)|^2) g(x) with g the gradient of f. Fixed points:
/// {x : f(x) <= 0}.
std::shared_ptr<const Operator> subgradient_projector(std::shared_ptr<const SmoothConvexFunction> f);

/// f(x) = sum_{n=1..d} n * x_n^(2n), gradient entries 2 n^2 x_n^(2n-1).
/// Zero exactly at the origin; inputs restricted to [-10, 10]^d to keep the
/// powers finite.
std::shared_ptr<const SmoothConvexFunction> ell2_example(int dim);

/// Checks |Tx - y|^2 + |x - Tx|^2 <= |x - y|^2 + slack at a known fixed
/// point y of T.
bool check_quasi_firm(const Operator& T, const Vector& x, const Vector& y, double slack = 1e-9);

}  // namespace haloproj
