#include "steklov/quadrature.hpp"

#include <gsl/gsl_integration.h>

#include <memory>

#include "steklov/errors.hpp"

namespace steklov {

Rule1D gauss_legendre(int n, double a, double b) {
  if (n < 1) throw ArgumentError("gauss_legendre needs n >= 1");
  std::unique_ptr<gsl_integration_glfixed_table, decltype(&gsl_integration_glfixed_table_free)> table(
      gsl_integration_glfixed_table_alloc(static_cast<std::size_t>(n)), &gsl_integration_glfixed_table_free);
  Rule1D rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    gsl_integration_glfixed_point(a, b, static_cast<std::size_t>(i), &rule.nodes[i], &rule.weights[i], table.get());
  }
  return rule;
}

Rule1D graded_rule(double first, double coarse, double end, int per_panel, int tail_points) {
  Rule1D rule;
  auto append = [&rule](const Rule1D& part) {
    rule.nodes.insert(rule.nodes.end(), part.nodes.begin(), part.nodes.end());
    rule.weights.insert(rule.weights.end(), part.weights.begin(), part.weights.end());
  };
  double left = 0.0;
  if (first > 0.0 && first < coarse && coarse < end) {
    double right = first;
    while (right < coarse) {
      append(gauss_legendre(per_panel, left, right));
      left = right;
      right *= 3.0;
    }
  }
  append(gauss_legendre(tail_points, left, end));
  return rule;
}

}  // namespace steklov
