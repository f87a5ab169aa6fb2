#include "rejuv/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rejuv/error.hpp"
#include "rejuv/quadrature.hpp"

namespace rejuv {
namespace {

constexpr double kTailMass = 1e-14;

void check_rate(double r, const char* what) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    std::ostringstream msg;
    msg << what << " must be positive and finite, got " << r;
    throw Error(ErrorKind::InvalidDistribution, msg.str());
  }
}

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

}  // namespace

Distribution::Distribution(Variant v) : v_(v) {
  std::visit(overloaded{
                 [](const Exponential& e) { check_rate(e.rate, "exponential rate"); },
                 [](const Hypoexponential& h) {
                   check_rate(h.rate1, "hypoexponential rate1");
                   check_rate(h.rate2, "hypoexponential rate2");
                   if (h.rate1 == h.rate2) {
                     throw Error(ErrorKind::InvalidDistribution,
                                 "hypoexponential phases need distinct rates");
                   }
                 },
                 [](const Deterministic& d) {
                   if (!(d.at >= 0.0) || !std::isfinite(d.at)) {
                     std::ostringstream msg;
                     msg << "deterministic atom must be finite and >= 0, got " << d.at;
                     throw Error(ErrorKind::InvalidDistribution, msg.str());
                   }
                 }},
             v_);
}

Distribution Distribution::exponential_with_mean(double m) {
  check_rate(m, "mean");
  return exponential(1.0 / m);
}

Distribution Distribution::hypoexponential_with_mean(double m) {
  check_rate(m, "mean");
  return hypoexponential(1.0 / (0.4 * m), 1.0 / (0.6 * m));
}

std::optional<double> Distribution::atom() const noexcept {
  if (const auto* d = std::get_if<Deterministic>(&v_)) return d->at;
  return std::nullopt;
}

Distribution Distribution::with_rate_scaled(double factor) const {
  check_rate(factor, "rate scale factor");
  return std::visit(overloaded{
                        [&](const Exponential& e) { return exponential(e.rate * factor); },
                        [&](const Hypoexponential& h) {
                          return hypoexponential(h.rate1 * factor, h.rate2 * factor);
                        },
                        [&](const Deterministic& d) { return deterministic(d.at / factor); }},
                    v_);
}

Distribution Distribution::with_mean(double m) const {
  if (is_deterministic()) return deterministic(m);
  return with_rate_scaled(mean(*this) / m);
}

std::string Distribution::describe() const {
  std::ostringstream out;
  out.precision(6);
  std::visit(overloaded{[&](const Exponential& e) { out << "Exp(rate=" << e.rate << ")"; },
                        [&](const Hypoexponential& h) {
                          out << "Hypo(rate1=" << h.rate1 << ", rate2=" << h.rate2 << ")";
                        },
                        [&](const Deterministic& d) { out << "Det(at=" << d.at << ")"; }},
             v_);
  return out.str();
}

bool operator==(const Distribution& a, const Distribution& b) {
  if (a.v_.index() != b.v_.index()) return false;
  return std::visit(overloaded{[&](const Exponential& e) {
                                 return e.rate == std::get<Exponential>(b.v_).rate;
                               },
                               [&](const Hypoexponential& h) {
                                 const auto& o = std::get<Hypoexponential>(b.v_);
                                 return h.rate1 == o.rate1 && h.rate2 == o.rate2;
                               },
                               [&](const Deterministic& d) {
                                 return d.at == std::get<Deterministic>(b.v_).at;
                               }},
                    a.v_);
}

double cdf(const Distribution& d, double t) {
  if (t < 0.0) return 0.0;
  return std::visit(overloaded{[&](const Exponential& e) { return -std::expm1(-e.rate * t); },
                               [&](const Hypoexponential& h) {
                                 const double a = h.rate1, b = h.rate2;
                                 const double v =
                                     (-b * std::expm1(-a * t) + a * std::expm1(-b * t)) / (b - a);
                                 return std::clamp(v, 0.0, 1.0);
                               },
                               [&](const Deterministic& p) { return t >= p.at ? 1.0 : 0.0; }},
                    d.variant());
}

double survival(const Distribution& d, double t) {
  if (t < 0.0) return 1.0;
  return std::visit(overloaded{[&](const Exponential& e) { return std::exp(-e.rate * t); },
                               [&](const Hypoexponential& h) {
                                 const double a = h.rate1, b = h.rate2;
                                 const double v =
                                     (b * std::exp(-a * t) - a * std::exp(-b * t)) / (b - a);
                                 return std::clamp(v, 0.0, 1.0);
                               },
                               [&](const Deterministic& p) { return t >= p.at ? 0.0 : 1.0; }},
                    d.variant());
}

double pdf(const Distribution& d, double t) {
  if (t < 0.0) return 0.0;
  return std::visit(
      overloaded{[&](const Exponential& e) { return e.rate * std::exp(-e.rate * t); },
                 [&](const Hypoexponential& h) {
                   const double a = h.rate1, b = h.rate2;
                   // e^{-at} - e^{-bt} written through expm1 to keep digits at small t.
                   const double diff = std::exp(-a * t) * -std::expm1(-(b - a) * t);
                   return a * b / (b - a) * diff;
                 },
                 [&](const Deterministic&) { return 0.0; }},
      d.variant());
}

double mean(const Distribution& d) {
  return std::visit(overloaded{[](const Exponential& e) { return 1.0 / e.rate; },
                               [](const Hypoexponential& h) { return 1.0 / h.rate1 + 1.0 / h.rate2; },
                               [](const Deterministic& p) { return p.at; }},
                    d.variant());
}

double tail_point(const Distribution& d, double eps) {
  if (auto a = d.atom()) return *a;
  if (const auto* e = std::get_if<Exponential>(&d.variant())) return -std::log(eps) / e->rate;
  double hi = mean(d);
  while (survival(d, hi) >= eps) hi *= 2.0;
  double lo = 0.0;
  for (int i = 0; i < 200 && hi - lo > 1e-12 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (survival(d, mid) < eps ? hi : lo) = mid;
  }
  return hi;
}

double stieltjes_integrate(const std::function<double(double)>& g, const Distribution& d,
                           double t_max) {
  if (auto a = d.atom()) return *a <= t_max ? g(*a) : 0.0;
  if (!(t_max > 0.0)) return 0.0;
  const double upper = std::min(t_max, tail_point(d, kTailMass));
  QuadratureOptions opts;
  opts.geometric_splits = 40;
  return integrate([&](double u) { return g(u) * pdf(d, u); }, 0.0, upper, opts);
}

}  // namespace rejuv
