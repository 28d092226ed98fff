#pragma once

#include <vector>

namespace steklov {

struct Rule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};

Rule1D gauss_legendre(int n, double a, double b);

// Composite Gauss rule on [0, end]: geometric panels starting at `first`
// (ratio 3, `per_panel` points each) until `coarse` is reached, then one
// panel of `tail_points` up to `end`. first >= coarse gives a single panel.
Rule1D graded_rule(double first, double coarse, double end, int per_panel, int tail_points);

}  // namespace steklov
