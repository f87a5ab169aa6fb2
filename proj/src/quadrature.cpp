#include "rejuv/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "rejuv/error.hpp"

namespace rejuv {
namespace {

using Rule = boost::math::quadrature::gauss_kronrod<double, 21>;

struct Piece {
  double a;
  double b;
  double value;
  double error;
};

struct ByError {
  bool operator()(const Piece& x, const Piece& y) const { return x.error < y.error; }
};

Piece evaluate(const std::function<double(double)>& f, double a, double b) {
  double err = 0.0;
  // max_depth 0: one application of the rule, with |K21 - G10| as the error estimate.
  const double v = Rule::integrate(f, a, b, 0, 0.0, &err);
  return {a, b, v, err};
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opts) {
  if (!(std::isfinite(a) && std::isfinite(b))) {
    throw Error(ErrorKind::NonConvergence, "integrate: bounds must be finite");
  }
  if (a == b) return 0.0;
  if (b < a) return -integrate(f, b, a, opts);

  std::priority_queue<Piece, std::vector<Piece>, ByError> heap;
  double total = 0.0;
  double total_error = 0.0;
  auto add = [&](double lo, double hi) {
    Piece p = evaluate(f, lo, hi);
    total += p.value;
    total_error += p.error;
    heap.push(p);
  };
  double hi = b;
  for (std::size_t k = 0; k < opts.geometric_splits; ++k) {
    const double mid = a + 0.5 * (hi - a);
    if (mid <= a) break;
    add(mid, hi);
    hi = mid;
  }
  add(a, hi);

  std::size_t intervals = heap.size();
  while (total_error > std::max(opts.absolute, opts.relative * std::abs(total))) {
    if (intervals >= opts.max_intervals) {
      std::ostringstream msg;
      msg << "adaptive quadrature on [" << a << ", " << b << "] stopped at error "
          << total_error << " after " << intervals << " intervals";
      throw Error(ErrorKind::NonConvergence, msg.str());
    }
    Piece worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      throw Error(ErrorKind::NonConvergence, "adaptive quadrature: interval underflow");
    }
    Piece left = evaluate(f, worst.a, mid);
    Piece right = evaluate(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++intervals;
  }

  // Re-sum from the pieces to drop the drift of the running updates.
  double sum = 0.0;
  while (!heap.empty()) {
    sum += heap.top().value;
    heap.pop();
  }
  return sum;
}

}  // namespace rejuv
