#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "rejuv/error.hpp"
#include "rejuv/kernel.hpp"
#include "rejuv/quadrature.hpp"
#include "rejuv/steady_state.hpp"
#include "support.hpp"

using namespace rejuv;
using testing::single;

namespace {

ErrorKind kind_of(auto f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::Parse;
}

}  // namespace

TEST_CASE("validate") {
  CHECK(validate(testing::up_down()).empty());

  auto m = testing::up_down();
  m.states[0].modes = {{0.5, {{"a", Distribution::exponential(1), 1}}}, {0.4, {{"b", Distribution::exponential(1), 1}}}};
  auto d = validate(m);
  REQUIRE(d.size() == 1);
  CHECK(d[0].find("UP") != std::string::npos);
  CHECK(d[0].find("weight") != std::string::npos);

  m = testing::up_down();
  m.states[1].modes[0].events[0].to = 2;
  d = validate(m);
  REQUIRE_FALSE(d.empty());
  CHECK(d[0].find("repair") != std::string::npos);
  CHECK(d[0].find("out-of-range") != std::string::npos);

  m = testing::up_down();
  m.states.push_back({2, "ISLAND", true, {single({{"x", Distribution::exponential(1), 0}})}});
  CHECK_FALSE(validate(m).empty());
  CHECK(validate(m, false).empty());
}

TEST_CASE("kernel examples") {
  auto m = testing::race_model({Distribution::exponential(1)});
  CHECK(kernel_value(m, 0, 1, 1.0) == doctest::Approx(0.6321206).epsilon(1e-7));

  m = testing::race_model({Distribution::exponential(1), Distribution::exponential(2)});
  CHECK(std::abs(kernel_value(m, 0, 1, INFINITY) - 1.0 / 3) < 1e-15);

  m = testing::race_model({Distribution::deterministic(1), Distribution::exponential(1)});
  CHECK(std::abs(kernel_value(m, 0, 1, INFINITY) - std::exp(-1.0)) < 1e-15);
  CHECK(std::abs(kernel_value(m, 0, 2, INFINITY) - (1 - std::exp(-1.0))) < 1e-15);
  CHECK(kernel_value(m, 0, 1, 0.999) == 0.0);

  auto lifetime = testing::up_down();
  lifetime.states[1].modes.clear();
  CHECK(kind_of([&] { kernel_value(lifetime, 1, 0, 1.0); }) == ErrorKind::AbsorbingSource);
}

TEST_CASE("kernel is nondecreasing and tends to the transition row") {
  auto m = testing::race_model({Distribution::hypoexponential(0.5, 2), Distribution::deterministic(3),
                                Distribution::exponential(0.2)});
  const auto chain = build_embedded_chain(m);
  for (StateId j = 1; j <= 3; ++j) {
    double prev = 0;
    for (double t = 0; t < 10; t += 0.05) {
      const double k = kernel_value(m, 0, j, t);
      CHECK(k >= prev - 1e-16);
      prev = k;
    }
    CHECK(std::abs(kernel_value(m, 0, j, 1e3) - chain.transition(0, static_cast<Eigen::Index>(j))) < 1e-15);
  }
  double total = 0;
  for (StateId j = 0; j < m.size(); ++j) total += kernel_value(m, 0, j, 50.0);
  CHECK(std::abs(total - 1.0) < 1e-8);
}

TEST_CASE("embedded chain examples") {
  auto c = build_embedded_chain(testing::up_down());
  CHECK(c.transition(0, 1) == 1.0);
  CHECK(c.transition(1, 0) == 1.0);
  CHECK(c.sojourn(0) == doctest::Approx(10).epsilon(1e-15));
  CHECK(c.sojourn(1) == doctest::Approx(1).epsilon(1e-15));

  c = build_embedded_chain(testing::race_model({Distribution::exponential(1), Distribution::exponential(2)}));
  CHECK(c.sojourn(0) == doctest::Approx(1.0 / 3).epsilon(1e-15));

  SmpModel mix{{{0, "M", true,
                 {{0.5, {{"a", Distribution::deterministic(1), 1}}}, {0.5, {{"b", Distribution::deterministic(3), 2}}}}},
                {1, "A", true, {single({{"r", Distribution::exponential(1), 0}})}},
                {2, "B", true, {single({{"r", Distribution::exponential(1), 0}})}}},
               0};
  c = build_embedded_chain(mix);
  CHECK(c.sojourn(0) == 2.0);
  CHECK(c.transition(0, 1) == 0.5);
  CHECK(c.transition(0, 2) == 0.5);

  auto lifetime = testing::up_down();
  lifetime.states[1].modes.clear();
  c = build_embedded_chain(lifetime);
  CHECK(c.transition(1, 1) == 1.0);
  CHECK(c.sojourn(1) == 0.0);
}

TEST_CASE("earlier-declared atom wins a tie") {
  auto m = testing::race_model({Distribution::deterministic(2), Distribution::deterministic(2)});
  const auto c = build_embedded_chain(m);
  CHECK(c.transition(0, 1) == 1.0);
  CHECK(c.transition(0, 2) == 0.0);
  CHECK(c.sojourn(0) == 2.0);
}

TEST_CASE("edtmc stationary vector") {
  Eigen::MatrixXd p(2, 2);
  p << 0, 1, 1, 0;
  auto v = steady_state_edtmc(p);
  CHECK(v(0) == doctest::Approx(0.5));
  CHECK(v(1) == doctest::Approx(0.5));

  Eigen::MatrixXd cyc(3, 3);
  cyc << 0, 1, 0, 0, 0, 1, 1, 0, 0;
  v = steady_state_edtmc(cyc);
  for (int i = 0; i < 3; ++i) CHECK(v(i) == doctest::Approx(1.0 / 3).epsilon(1e-14));

  p << 0.5, 0.5, 1, 0;
  v = steady_state_edtmc(p);
  CHECK(v(0) == doctest::Approx(2.0 / 3).epsilon(1e-15));
  CHECK(v(1) == doctest::Approx(1.0 / 3).epsilon(1e-15));
  CHECK((v * p - v).cwiseAbs().maxCoeff() <= 1e-12);

  Eigen::MatrixXd absorbing(2, 2);
  absorbing << 0, 1, 0, 1;
  CHECK(kind_of([&] { steady_state_edtmc(absorbing); }) == ErrorKind::Reducible);
  Eigen::MatrixXd split(4, 4);
  split << 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0;
  CHECK(kind_of([&] { steady_state_edtmc(split); }) == ErrorKind::Reducible);
}

TEST_CASE("state probabilities and availability") {
  Eigen::RowVector2d v(0.5, 0.5);
  Eigen::Vector2d h(10, 1);
  auto pi = state_probabilities(v, h);
  CHECK(pi(0) == doctest::Approx(10.0 / 11));
  CHECK(pi(1) == doctest::Approx(1.0 / 11));
  pi = state_probabilities(v, Eigen::Vector2d(3, 3));
  CHECK(pi(0) == doctest::Approx(0.5));
  pi = state_probabilities(Eigen::RowVector2d(2.0 / 3, 1.0 / 3), Eigen::Vector2d(1, 2));
  CHECK(pi(0) == doctest::Approx(0.5));
  CHECK(pi(1) == doctest::Approx(0.5));
  CHECK(kind_of([&] { state_probabilities(v, Eigen::Vector2d(0, 0)); }) == ErrorKind::DegenerateSojourn);

  const auto ss = solve_steady_state(testing::up_down());
  CHECK(std::abs(ss.availability - 10.0 / 11) < 1e-15);
  auto all_up = testing::up_down();
  all_up.states[1].up = true;
  CHECK(solve_steady_state(all_up).availability == doctest::Approx(1.0));
}

TEST_CASE("property: exponential models reduce to the CTMC") {
  std::mt19937_64 g(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const auto m = testing::random_exponential_model(g);
    const auto ss = solve_steady_state(m);
    const auto oracle = testing::ctmc_stationary(testing::generator(m));
    for (Eigen::Index i = 0; i < oracle.size(); ++i) CHECK(std::abs(ss.pi(i) - oracle(i)) <= 1e-9);
  }
}

TEST_CASE("property: sojourn equals the sum of kernel mean contributions") {
  std::mt19937_64 g(5);
  std::uniform_real_distribution<double> u(0.1, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Distribution> laws{Distribution::exponential(u(g)), Distribution::hypoexponential(u(g), u(g) + 3.5),
                                   Distribution::deterministic(u(g))};
    auto m = testing::race_model(laws);
    const double h = build_embedded_chain(m).sojourn(0);
    // independent route: h = integral over t of (1 - sum_j k_0j(t))
    QuadratureOptions o;
    const double cut = *laws[2].atom();
    const double alt = integrate(
        [&](double t) {
          double k = 0;
          for (StateId j = 1; j <= 3; ++j) k += kernel_value(m, 0, j, t);
          return 1 - k;
        },
        0, cut, o);
    CHECK(std::abs(h - alt) <= 1e-8);
  }
}

TEST_CASE("property: quadrature route agrees with the exact route") {
  std::mt19937_64 g(77);
  std::uniform_real_distribution<double> u(0.05, 4.0);
  for (int trial = 0; trial < 30; ++trial) {
    auto m = testing::race_model({Distribution::hypoexponential(u(g), u(g) + 4.1), Distribution::exponential(u(g)),
                                  Distribution::deterministic(u(g)), Distribution::deterministic(u(g))});
    const auto a = build_embedded_chain(m);
    const auto b = build_embedded_chain_quadrature(m);
    CHECK((a.transition - b.transition).cwiseAbs().maxCoeff() <= 1e-9);
    CHECK((a.sojourn - b.sojourn).cwiseAbs().maxCoeff() <= 1e-9 * a.sojourn.maxCoeff());
    for (StateId j = 1; j <= 4; ++j)
      CHECK(std::abs(kernel_value(m, 0, j, 1.3) - kernel_value_quadrature(m, 0, j, 1.3)) <= 1e-9);
  }
}

TEST_CASE("property: relabelling states permutes pi") {
  std::mt19937_64 g(99);
  for (int trial = 0; trial < 50; ++trial) {
    const auto m = testing::random_exponential_model(g);
    std::vector<StateId> perm(m.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), g);
    const auto pm = permute_states(m, perm);
    const auto a = solve_steady_state(m).pi;
    const auto b = solve_steady_state(pm).pi;
    for (StateId i = 0; i < m.size(); ++i)
      CHECK(std::abs(a(static_cast<Eigen::Index>(i)) - b(static_cast<Eigen::Index>(perm[i]))) <= 1e-12);
  }
}

TEST_CASE("extended precision agrees with double") {
  std::mt19937_64 g(1);
  const auto m = testing::random_exponential_model(g);
  const auto a = solve_steady_state<double>(m);
  const auto b = solve_steady_state<extended>(m);
  CHECK(std::abs(a.availability - to_double(b.availability)) <= 1e-13);
}
