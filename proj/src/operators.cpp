#include "haloproj/operators.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <utility>

namespace haloproj {

namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

class ContractionOperator final : public Operator {
 public:
  explicit ContractionOperator(double alpha) : alpha_(alpha) {}

  Vector evaluate(const Vector& x) const override { return alpha_ * x; }

  std::string describe() const override { return "contraction(alpha=" + format_double(alpha_) + ")"; }

 private:
  double alpha_;
};

class TranslationOperator final : public Operator {
 public:
  TranslationOperator(double alpha, Vector direction)
      : step_(alpha * direction), alpha_(alpha), dim_(direction.dim()) {}

  Vector evaluate(const Vector& x) const override { return x + step_; }

  std::string describe() const override {
    return "translation(alpha=" + format_double(alpha_) + ", dim=" + std::to_string(dim_) + ")";
  }

  std::optional<int> dim() const override { return dim_; }

 private:
  Vector step_;
  double alpha_;
  int dim_;
};

class SignOperator final : public Operator {
 public:
  explicit SignOperator(std::function<double(double)> sigma) : sigma_(std::move(sigma)) {}

  Vector evaluate(const Vector& x) const override {
    if (x.dim() != 1) throw std::invalid_argument("sign operator: expects dimension 1");
    const double s = sigma_(x[0]);
    if (s != 1.0 && s != -1.0) {
      throw std::domain_error("sign operator: sigma must return -1 or +1");
    }
    return Vector{x[0] + s};
  }

  std::string describe() const override { return "sign"; }

  std::optional<int> dim() const override { return 1; }

 private:
  std::function<double(double)> sigma_;
};

class SubgradientProjector final : public Operator {
 public:
  explicit SubgradientProjector(std::shared_ptr<const SmoothConvexFunction> f) : f_(std::move(f)) {}

  Vector evaluate(const Vector& x) const override {
    const double v = f_->value(x);
    if (v <= 0.0) return x;
    const Vector g = f_->gradient(x);
    const double g_norm = norm(g);
    if (g_norm <= 1e-14) {
      throw std::domain_error("subgradient projector: stationary point with positive value");
    }
    return x - (v / (g_norm * g_norm)) * g;
  }

  std::string describe() const override { return "subgradient_projector(" + f_->describe() + ")"; }

  std::optional<int> dim() const override { return f_->dim(); }

 private:
  std::shared_ptr<const SmoothConvexFunction> f_;
};

class PolynomialCoordinateSum final : public SmoothConvexFunction {
 public:
  explicit PolynomialCoordinateSum(int dim) : dim_(dim) {}

  double value(const Vector& x) const override {
    check_input(x);
    double total = 0.0;
    for (int i = 0; i < dim_; ++i) {
      const int n = i + 1;
      const double term = n * std::pow(x[i], 2 * n);
      if (!std::isfinite(term)) {
        throw std::domain_error("ell2_example: term " + std::to_string(n) + " overflows");
      }
      total += term;
    }
    return total;
  }

  Vector gradient(const Vector& x) const override {
    check_input(x);
    std::vector<double> g(static_cast<std::size_t>(dim_));
    for (int i = 0; i < dim_; ++i) {
      const int n = i + 1;
      const double entry = 2.0 * n * n * std::pow(x[i], 2 * n - 1);
      if (!std::isfinite(entry)) {
        throw std::domain_error("ell2_example: gradient entry " + std::to_string(n) + " overflows");
      }
      g[static_cast<std::size_t>(i)] = entry;
    }
    return Vector(std::move(g));
  }

  int dim() const override { return dim_; }

  std::string describe() const override { return "ell2(d=" + std::to_string(dim_) + ")"; }

 private:
  void check_input(const Vector& x) const {
    if (x.dim() != dim_) throw std::invalid_argument("ell2_example: dimension mismatch");
    for (int i = 0; i < dim_; ++i) {
      if (std::abs(x[i]) > 10.0) {
        throw std::domain_error("ell2_example: coordinate " + std::to_string(i) +
                                " outside [-10, 10]");
      }
    }
  }

  int dim_;
};

}  // namespace

std::shared_ptr<const Operator> contraction_operator(double alpha) {
  if (!(alpha >= 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("contraction_operator: alpha must lie in [0, 1)");
  }
  return std::make_shared<ContractionOperator>(alpha);
}

std::shared_ptr<const Operator> translation_operator(double alpha, const Vector& direction) {
  if (!(alpha > 0.0)) throw std::invalid_argument("translation_operator: alpha must be positive");
  if (std::abs(norm(direction) - 1.0) > 1e-9) {
    throw std::invalid_argument("translation_operator: direction must have unit length");
  }
  return std::make_shared<TranslationOperator>(alpha, direction);
}

std::shared_ptr<const Operator> sign_operator(std::function<double(double)> sigma) {
  if (!sigma) throw std::invalid_argument("sign_operator: sigma must be callable");
  return std::make_shared<SignOperator>(std::move(sigma));
}

std::shared_ptr<const Operator> canonical_sign_operator() {
  return sign_operator([](double x) { return x < 0.5 ? 1.0 : -1.0; });
}

std::shared_ptr<const Operator> subgradient_projector(std::shared_ptr<const SmoothConvexFunction> f) {
  if (!f) throw std::invalid_argument("subgradient_projector: null function");
  return std::make_shared<SubgradientProjector>(std::move(f));
}

std::shared_ptr<const SmoothConvexFunction> ell2_example(int dim) {
  if (dim < 1) throw std::invalid_argument("ell2_example: dimension must be positive");
  return std::make_shared<PolynomialCoordinateSum>(dim);
}

bool check_quasi_firm(const Operator& T, const Vector& x, const Vector& y, double slack) {
  const Vector tx = T.evaluate(x);
  const double lhs = inner(tx - y, tx - y) + inner(x - tx, x - tx);
  const double rhs = inner(x - y, x - y);
  return lhs <= rhs + slack;
}

}  // namespace haloproj
