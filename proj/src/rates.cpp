#include <cmath>

#include "steklov/errors.hpp"
#include "steklov/spectral.hpp"

namespace steklov {

RateFit rate_fit(const std::vector<std::pair<double, double>>& pairs) {
  if (pairs.size() < 3) throw ArgumentError("rate_fit needs at least 3 points");
  const double n = static_cast<double>(pairs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (const auto& [x, y] : pairs) {
    if (!(x > 0.0) || !(y > 0.0)) throw ArgumentError("rate_fit needs positive abscissae and residuals");
    const double lx = std::log(x), ly = std::log(y);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    syy += ly * ly;
  }
  const double vx = sxx - sx * sx / n, vy = syy - sy * sy / n, cxy = sxy - sx * sy / n;
  if (vx <= 0.0) throw ArgumentError("rate_fit needs distinct abscissae");
  const double slope = cxy / vx;
  const double intercept = (sy - slope * sx) / n;
  const double r2 = vy > 0.0 ? cxy * cxy / (vx * vy) : 1.0;
  return {slope, intercept, r2};
}

}  // namespace steklov
