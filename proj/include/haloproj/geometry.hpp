#pragma once

#include <initializer_list>
#include <span>
#include <vector>

namespace haloproj {

/// Slack applied by every "point satisfies constraint" membership test.
inline constexpr double kDefaultFeasEps = 1e-9;

/// A point of R^d. Coordinates are validated to be finite on construction
/// and the dimension never changes afterwards.
class Vector {
 public:
  explicit Vector(std::vector<double> coords);
  Vector(std::initializer_list<double> coords);

  static Vector zeros(int dim);
  static Vector unit(int dim, int axis);

  int dim() const { return static_cast<int>(coords_.size()); }
  double operator[](int i) const { return coords_[static_cast<std::size_t>(i)]; }
  std::span<const double> coords() const { return coords_; }

 private:
  std::vector<double> coords_;
};

Vector operator+(const Vector& u, const Vector& v);
Vector operator-(const Vector& u, const Vector& v);
Vector operator*(double s, const Vector& u);

/// Exact coordinate-wise equality. Intended for determinism checks, not for
/// numerical comparisons.
bool operator==(const Vector& u, const Vector& v);

double inner(const Vector& u, const Vector& v);
double norm(const Vector& u);
double distance(const Vector& u, const Vector& v);

/// Closed halfspace {z : <normal, z> <= offset} with the normal stored at
/// unit length, or the whole space.
class HalfSpace {
 public:
  /// Rescales (normal, offset) so the stored normal has unit length.
  HalfSpace(const Vector& normal, double offset);

  static HalfSpace whole_space(int dim);

  bool is_whole_space() const { return whole_; }
  int dim() const { return normal_.dim(); }

  /// Unit-length normal; the zero vector when this is the whole space.
  const Vector& normal() const { return normal_; }
  double offset() const { return offset_; }

  /// Signed constraint violation <normal, z> - offset (nonpositive inside).
  /// -inf for the whole space.
  double violation(const Vector& z) const;
  bool contains(const Vector& z, double feas_eps = kDefaultFeasEps) const;

 private:
  HalfSpace(Vector normal, double offset, bool whole);

  Vector normal_;
  double offset_ = 0.0;
  bool whole_ = false;
};

/// True when x and y are too close for the cut through their midpoint to be
/// well defined, i.e. |x - y| <= 1e-12 * max(1, |x|).
bool pair_degenerate(const Vector& x, const Vector& y);

/// The set {z : |y - z| <= |x - z|}, i.e. points at least as close to y as
/// to x: the whole space when x ~ y, otherwise the halfspace
/// 2<z, x - y> <= |x|^2 - |y|^2 rescaled to a unit normal.
HalfSpace halfspace_from_pair(const Vector& x, const Vector& y);

}  // namespace haloproj
