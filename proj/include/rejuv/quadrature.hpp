#pragma once

#include <cstddef>
#include <functional>

namespace rejuv {

struct QuadratureOptions {
  double absolute = 1e-12;
  double relative = 1e-10;
  std::size_t max_intervals = 4000;
  /// Initial pieces [a, a + w/2^k] for k = splits..1, so features near `a`
  /// much narrower than the interval are not stepped over by the first rule.
  std::size_t geometric_splits = 0;
};

/// Global adaptive Gauss-Kronrod (21-point) on a finite interval [a, b].
/// Stops when the summed error estimate is below max(absolute, relative * |I|).
/// Throws Error(NonConvergence) when the interval budget runs out first.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opts = {});

}  // namespace rejuv
