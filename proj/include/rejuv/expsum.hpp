#pragma once

#include <cmath>
#include <limits>
#include <variant>
#include <vector>

#include "rejuv/distribution.hpp"
#include "rejuv/error.hpp"

namespace rejuv {

/// Signed exponential sum  f(t) = Σ_k c_k e^{-r_k t}  with r_k ≥ 0.
///
/// Survival functions and densities of the exponential and hypoexponential
/// laws are closed under products in this form, so competing-risk integrals
/// ∫ f_e ∏ S_j reduce to sums of c/r terms with no quadrature error.
template <class Scalar>
class ExpSum {
 public:
  struct Term {
    Scalar coef;
    Scalar rate;
  };

  ExpSum() = default;

  static ExpSum constant(const Scalar& c) {
    ExpSum s;
    s.terms_.push_back({c, Scalar(0)});
    return s;
  }

  static ExpSum survival(const Distribution& d) {
    ExpSum s;
    if (const auto* e = std::get_if<Exponential>(&d.variant())) {
      s.terms_.push_back({Scalar(1), Scalar(e->rate)});
    } else if (const auto* h = std::get_if<Hypoexponential>(&d.variant())) {
      const Scalar a(h->rate1), b(h->rate2);
      s.terms_.push_back({b / (b - a), a});
      s.terms_.push_back({-a / (b - a), b});
    } else {
      throw Error(ErrorKind::InvalidDistribution, "a point mass has no exponential-sum survival");
    }
    return s;
  }

  static ExpSum density(const Distribution& d) {
    ExpSum s;
    if (const auto* e = std::get_if<Exponential>(&d.variant())) {
      s.terms_.push_back({Scalar(e->rate), Scalar(e->rate)});
    } else if (const auto* h = std::get_if<Hypoexponential>(&d.variant())) {
      const Scalar a(h->rate1), b(h->rate2);
      const Scalar k = a * b / (b - a);
      s.terms_.push_back({k, a});
      s.terms_.push_back({-k, b});
    } else {
      throw Error(ErrorKind::InvalidDistribution, "a point mass has no density");
    }
    return s;
  }

  const std::vector<Term>& terms() const noexcept { return terms_; }

  friend ExpSum operator*(const ExpSum& x, const ExpSum& y) {
    ExpSum out;
    out.terms_.reserve(x.terms_.size() * y.terms_.size());
    for (const auto& p : x.terms_)
      for (const auto& q : y.terms_) out.add(p.coef * q.coef, p.rate + q.rate);
    return out;
  }

  ExpSum& operator*=(const ExpSum& y) { return *this = *this * y; }

  Scalar operator()(const Scalar& t) const {
    using std::exp;
    Scalar v(0);
    for (const auto& k : terms_) v += k.coef * exp(-k.rate * t);
    return v;
  }

  /// ∫₀^upper f(u) du; `upper` may be +inf when every rate is positive.
  Scalar integral(double upper) const {
    using std::expm1;
    Scalar v(0);
    const bool infinite = std::isinf(upper);
    const Scalar u(infinite ? 0.0 : upper);
    for (const auto& k : terms_) {
      if (k.rate == 0) {
        if (infinite) {
          throw Error(ErrorKind::DegenerateSojourn, "integral of a non-decaying term to infinity");
        }
        v += k.coef * u;
      } else if (infinite) {
        v += k.coef / k.rate;
      } else {
        v += k.coef * -expm1(-k.rate * u) / k.rate;
      }
    }
    return v;
  }

 private:
  void add(const Scalar& c, const Scalar& r) {
    for (auto& k : terms_) {
      if (k.rate == r) {
        k.coef += c;
        return;
      }
    }
    terms_.push_back({c, r});
  }

  std::vector<Term> terms_;
};

}  // namespace rejuv
