#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <type_traits>
#include <variant>

namespace rejuv {

// Event-time laws. All times are hours, all rates 1/hour.

struct Exponential {
  double rate;
};

/// Sum of two independent exponential phases with distinct rates.
struct Hypoexponential {
  double rate1;
  double rate2;
};

/// Point mass at `at`; the unit step u(t - at).
struct Deterministic {
  double at;
};

class Distribution {
 public:
  using Variant = std::variant<Exponential, Hypoexponential, Deterministic>;

  /// Throws Error(InvalidDistribution) when the parameters violate the law's invariants.
  explicit Distribution(Variant v);

  static Distribution exponential(double rate) { return Distribution(Exponential{rate}); }
  static Distribution hypoexponential(double rate1, double rate2) {
    return Distribution(Hypoexponential{rate1, rate2});
  }
  static Distribution deterministic(double at) { return Distribution(Deterministic{at}); }

  static Distribution exponential_with_mean(double mean);

  /// Two phases with means 0.4*mean and 0.6*mean.
  static Distribution hypoexponential_with_mean(double mean);

  const Variant& variant() const noexcept { return v_; }
  bool is_deterministic() const noexcept { return std::holds_alternative<Deterministic>(v_); }
  std::optional<double> atom() const noexcept;

  /// Multiplies every rate by `factor` (atoms divide). Keeps the law's shape.
  Distribution with_rate_scaled(double factor) const;

  /// Same law family, new mean.
  Distribution with_mean(double mean) const;

  std::string describe() const;

  friend bool operator==(const Distribution& a, const Distribution& b);

 private:
  Variant v_;
};

double cdf(const Distribution& d, double t);
double survival(const Distribution& d, double t);

/// Density of the absolutely continuous part; zero for Deterministic.
double pdf(const Distribution& d, double t);

double mean(const Distribution& d);

/// Smallest t with survival(d, t) < eps. For Deterministic this is the atom.
double tail_point(const Distribution& d, double eps);

/// ∫₀^{t_max} g(u) dF(u). t_max may be +inf.
/// Throws Error(NonConvergence) when adaptive quadrature misses tolerance.
double stieltjes_integrate(const std::function<double(double)>& g, const Distribution& d,
                           double t_max);

/// Uniform draw in [0, 1) with 53 random bits.
template <class Urbg>
double uniform01(Urbg& g) {
  static_assert(Urbg::max() - Urbg::min() == std::numeric_limits<std::uint64_t>::max(),
                "a 64-bit generator is required");
  return static_cast<double>((g() - Urbg::min()) >> 11) * 0x1.0p-53;
}

/// Inversion sampling; hypoexponential is the sum of two exponential inversions.
template <class Urbg>
double sample(const Distribution& d, Urbg& g) {
  return std::visit(
      [&](const auto& law) -> double {
        using T = std::decay_t<decltype(law)>;
        if constexpr (std::is_same_v<T, Exponential>) {
          return -std::log1p(-uniform01(g)) / law.rate;
        } else if constexpr (std::is_same_v<T, Hypoexponential>) {
          const double a = -std::log1p(-uniform01(g)) / law.rate1;
          const double b = -std::log1p(-uniform01(g)) / law.rate2;
          return a + b;
        } else {
          return law.at;
        }
      },
      d.variant());
}

}  // namespace rejuv
