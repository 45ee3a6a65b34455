#ifndef BLOWUP_FIT_HPP
#define BLOWUP_FIT_HPP

#include <span>

namespace blowup {

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double stderr_slope = 0.0;
  double r2 = 0.0;  // coefficient of determination
  int npoints = 0;
};

// Ordinary least squares y = slope x + intercept; needs >= 2 points.
LinearFit ols(std::span<const double> x, std::span<const double> y);

}  // namespace blowup

#endif
