#include "haloproj/geometry.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace haloproj {

namespace {

void require_same_dim(const Vector& u, const Vector& v, const char* what) {
  if (u.dim() != v.dim()) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                std::to_string(u.dim()) + " vs " + std::to_string(v.dim()) + ")");
  }
}

}  // namespace

Vector::Vector(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) {
    throw std::invalid_argument("Vector: need at least one coordinate");
  }
  for (double c : coords_) {
    if (!std::isfinite(c)) {
      throw std::invalid_argument("Vector: coordinate is not finite");
    }
  }
}

Vector::Vector(std::initializer_list<double> coords) : Vector(std::vector<double>(coords)) {}

Vector Vector::zeros(int dim) { return Vector(std::vector<double>(static_cast<std::size_t>(dim), 0.0)); }

Vector Vector::unit(int dim, int axis) {
  if (axis < 0 || axis >= dim) {
    throw std::invalid_argument("Vector::unit: axis out of range");
  }
  std::vector<double> c(static_cast<std::size_t>(dim), 0.0);
  c[static_cast<std::size_t>(axis)] = 1.0;
  return Vector(std::move(c));
}

Vector operator+(const Vector& u, const Vector& v) {
  require_same_dim(u, v, "operator+");
  std::vector<double> c(u.coords().begin(), u.coords().end());
  for (int i = 0; i < v.dim(); ++i) c[static_cast<std::size_t>(i)] += v[i];
  return Vector(std::move(c));
}

Vector operator-(const Vector& u, const Vector& v) {
  require_same_dim(u, v, "operator-");
  std::vector<double> c(u.coords().begin(), u.coords().end());
  for (int i = 0; i < v.dim(); ++i) c[static_cast<std::size_t>(i)] -= v[i];
  return Vector(std::move(c));
}

Vector operator*(double s, const Vector& u) {
  std::vector<double> c(u.coords().begin(), u.coords().end());
  for (double& x : c) x *= s;
  return Vector(std::move(c));
}

bool operator==(const Vector& u, const Vector& v) {
  if (u.dim() != v.dim()) return false;
  for (int i = 0; i < u.dim(); ++i) {
    if (u[i] != v[i]) return false;
  }
  return true;
}

double inner(const Vector& u, const Vector& v) {
  require_same_dim(u, v, "inner");
  double s = 0.0;
  for (int i = 0; i < u.dim(); ++i) s += u[i] * v[i];
  return s;
}

double norm(const Vector& u) { return std::sqrt(inner(u, u)); }

double distance(const Vector& u, const Vector& v) { return norm(u - v); }

HalfSpace::HalfSpace(Vector normal, double offset, bool whole)
    : normal_(std::move(normal)), offset_(offset), whole_(whole) {}

HalfSpace::HalfSpace(const Vector& normal, double offset) : normal_(normal), offset_(offset) {
  const double len = norm(normal);
  if (len == 0.0) {
    throw std::invalid_argument("HalfSpace: normal must be nonzero");
  }
  if (!std::isfinite(offset)) {
    throw std::invalid_argument("HalfSpace: offset must be finite");
  }
  normal_ = (1.0 / len) * normal_;
  offset_ = offset / len;
  if (!std::isfinite(offset_)) {
    throw std::invalid_argument("HalfSpace: offset overflows after rescaling");
  }
}

HalfSpace HalfSpace::whole_space(int dim) { return HalfSpace(Vector::zeros(dim), 0.0, true); }

double HalfSpace::violation(const Vector& z) const {
  if (whole_) return -std::numeric_limits<double>::infinity();
  return inner(normal_, z) - offset_;
}

bool HalfSpace::contains(const Vector& z, double feas_eps) const {
  if (whole_) return true;
  return violation(z) <= feas_eps;
}

bool pair_degenerate(const Vector& x, const Vector& y) {
  require_same_dim(x, y, "pair_degenerate");
  return distance(x, y) <= 1e-12 * std::max(1.0, norm(x));
}

HalfSpace halfspace_from_pair(const Vector& x, const Vector& y) {
  require_same_dim(x, y, "halfspace_from_pair");
  if (pair_degenerate(x, y)) {
    return HalfSpace::whole_space(x.dim());
  }
  // The raw inequality 2<z, x - y> <= |x|^2 - |y|^2 is the halfspace through
  // the midpoint of x and y with normal x - y. Building it in midpoint form
  // keeps the boundary accurate when |x - y| is many orders below |x|, where
  // the difference of squared norms would cancel catastrophically.
  const Vector diff = x - y;
  const Vector unit_normal = (1.0 / norm(diff)) * diff;
  return HalfSpace(unit_normal, inner(unit_normal, 0.5 * (x + y)));
}

}  // namespace haloproj
