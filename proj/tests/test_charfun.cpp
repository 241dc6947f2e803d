#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cmath>
#include <numbers>
#include <random>

#include "cltkit/charfun.hpp"
#include "cltkit/distribution.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace cltkit;
using testing::code_of;

namespace {
const Dist kTwoPoint = discrete({{-1.0, 0.5}, {1.0, 0.5}});

std::vector<double> grid20() {
  std::vector<double> ts;
  for (int i = 0; i < 20; ++i) ts.push_back(-10.0 + 20.0 * i / 19.0);
  return ts;
}
}  // namespace

TEST_CASE("charfun examples") {
  std::mt19937_64 rng(1);
  std::vector<Dist> family{kTwoPoint, point_mass(3.0), standard_normal(), normal({1.0, 2.0}),
                           empirical({0.5, -2.0, 4.0})};
  for (int i = 0; i < 5; ++i) family.push_back(testing::random_discrete(rng));
  for (const auto& mu : family) {
    const auto z = charfun(mu, 0.0);
    CHECK(std::abs(z.real() - 1.0) <= 1e-12);
    CHECK(std::abs(z.imag()) <= 1e-12);
  }
  for (double t : {-3.0, 0.4, 17.0}) {
    CHECK(charfun(point_mass(0.0), t) == ComplexValue(1.0, 0.0));
    // Average of e^{it} and e^{-it}.
    const auto avg = 0.5 * (std::exp(ComplexValue(0.0, t)) + std::exp(ComplexValue(0.0, -t)));
    CHECK(std::abs(charfun(kTwoPoint, t) - avg) <= 1e-15);
    CHECK(std::abs(charfun(kTwoPoint, t).real() - std::cos(t)) <= 1e-15);
  }
  const auto e = empirical({0.0, 1.0});
  CHECK(std::abs(charfun(e, 2.0) - 0.5 * (1.0 + std::exp(ComplexValue(0.0, 2.0)))) <= 1e-15);
}

TEST_CASE("normal_charfun examples") {
  CHECK(normal_charfun(0.0) == ComplexValue(1.0, 0.0));
  CHECK(std::abs(normal_charfun(1.0).real() - 0.6065306597126334) <= 1e-15);
  CHECK(std::abs(normal_charfun(2.0).real() - 0.1353352832366127) <= 1e-15);
  CHECK(normal_charfun(2.0).imag() == 0.0);
  for (double t : {0.0, 0.5, 1.0, 2.0, 4.0, -1.5}) {
    CHECK(std::abs(charfun(standard_normal(), t) - normal_charfun(t)) <= 1e-6);
  }
  // N(m, s^2): e^{itm - s^2 t^2 / 2}.
  const auto nu = normal({1.0, 2.0});
  for (double t : {0.3, 1.0, 2.0}) {
    const auto expected = std::exp(ComplexValue(-t * t, t));
    CHECK(std::abs(charfun(nu, t) - expected) <= 1e-6);
  }
}

TEST_CASE("charfun_of_sum examples") {
  for (double t : {-2.0, 0.3, 1.0, 5.0}) {
    const std::vector<Dist> one{kTwoPoint};
    CHECK(charfun_of_sum(one, t) == charfun(kTwoPoint, t));
    const std::vector<Dist> three(3, kTwoPoint);
    const auto folded = convolve(convolve(kTwoPoint, kTwoPoint), kTwoPoint);
    CHECK(std::abs(charfun_of_sum(three, t) - charfun(folded, t)) <= 1e-12);
    CHECK(std::abs(charfun_of_sum(three, t).real() - std::pow(std::cos(t), 3)) <= 1e-12);
    const std::vector<Dist> with_zero{kTwoPoint, point_mass(0.0)};
    CHECK(charfun_of_sum(with_zero, t) == charfun(kTwoPoint, t));
  }
  CHECK(code_of([] { charfun_of_sum({}, 1.0); }) == ErrorCode::InvalidParams);
  CHECK(int_pow(ComplexValue(0.0, 1.0), 4) == ComplexValue(1.0, 0.0));
  CHECK(int_pow(ComplexValue(2.0, 0.0), 0) == ComplexValue(1.0, 0.0));
  CHECK(int_pow(ComplexValue(2.0, 0.0), 10) == ComplexValue(1024.0, 0.0));
}

TEST_CASE("second_order_check examples") {
  std::mt19937_64 rng(2);
  CHECK(second_order_check(kTwoPoint, 0.0) == 0.0);
  // Random weights sum to one only up to rounding.
  for (int i = 0; i < 5; ++i) CHECK(second_order_check(testing::random_centered(rng), 0.0) <= 1e-15);
  const double v1 = second_order_check(kTwoPoint, 0.1);
  CHECK(std::abs(v1 - std::abs(std::cos(0.1) - 0.995)) <= 1e-15);
  CHECK(std::abs(v1 - 4.165278e-6) <= 1e-11);
  CHECK(v1 <= second_order_bound(kTwoPoint, 0.1));
  CHECK(second_order_bound(kTwoPoint, 0.1) == doctest::Approx(0.001 / 6));
  const double v2 = second_order_check(kTwoPoint, 1.0);
  CHECK(std::abs(v2 - std::abs(std::cos(1.0) - 0.5)) <= 1e-15);
  CHECK(v2 <= second_order_bound(kTwoPoint, 1.0));
  CHECK(second_order_bound(kTwoPoint, 1.0) == doctest::Approx(1.0 / 6));
  CHECK(code_of([] { second_order_check(point_mass(1.0), 1.0); }) == ErrorCode::NonZeroMean);
}

TEST_CASE("second_order_check respects the bound on the test family") {
  std::mt19937_64 rng(3);
  std::vector<Dist> family{kTwoPoint, standard_normal(), shift_scale(uniform_on({1, 2, 3, 4, 5, 6}), 3.5, 1.0)};
  for (int i = 0; i < 20; ++i) family.push_back(testing::random_centered(rng));
  for (const auto& mu : family) {
    for (double t = -2.0; t <= 2.0; t += 0.1) {
      CHECK(second_order_check(mu, t) <= second_order_bound(mu, t) + 1e-9);
    }
  }
}

TEST_CASE("levy_invert examples") {
  const double v = levy_invert(CharFn::standard_normal(), -1.96, 1.96, 50.0);
  CHECK(std::abs(v - 0.9500042097035591) <= 1e-3);
  // The same probability by quadrature of the density.
  CHECK(std::abs(oracle::simpson([](double x) { return normal_density({0.0, 1.0}, x); }, -1.96, 1.96, 2000) -
                 0.9500042097035591) <= 1e-12);
  CHECK(std::abs(levy_invert(CharFn::of(point_mass(0.0)), -1.0, 1.0, 1e3) - 1.0) <= 1e-2);
  CHECK(std::abs(levy_invert(CharFn::of(kTwoPoint), 0.0, 2.0, 1e3) - 0.5) <= 1e-2);
  const CharFn cosine("cos", [](double t) { return ComplexValue(std::cos(t), 0.0); });
  CHECK(std::abs(levy_invert(cosine, 0.0, 2.0, 1e3) - 0.5) <= 1e-2);

  CHECK(code_of([] { levy_invert(CharFn::standard_normal(), 1.0, 1.0, 10.0); }) == ErrorCode::DegenerateInterval);
  CHECK(code_of([] { levy_invert(CharFn::standard_normal(), 2.0, 1.0, 10.0); }) == ErrorCode::DegenerateInterval);
  CHECK(code_of([] { levy_invert(CharFn::standard_normal(), 0.0, 1.0, -5.0); }) == ErrorCode::InvalidParams);
}

TEST_CASE("levy_invert picks its own horizon") {
  InversionOptions auto_t;
  auto_t.tol = 1e-6;
  const double v = levy_invert(CharFn::standard_normal(), -1.0, 1.0, auto_t);
  CHECK(std::abs(v - (oracle::normal_cdf(1.0) - oracle::normal_cdf(-1.0))) <= 1e-5);

  InversionOptions damped;
  damped.horizon = 1e3;
  damped.gaussian_damping = true;
  CHECK(std::abs(levy_invert(CharFn::of(kTwoPoint), -0.5, 1.5, damped) - 0.5) <= 1e-2);
}

TEST_CASE("charfun_distance examples") {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 5; ++i) {
    const auto mu = testing::random_discrete(rng);
    CHECK(charfun_distance(mu, mu, grid20()) <= 1e-12);
  }
  const std::vector<double> pi_grid{std::numbers::pi};
  CHECK(std::abs(charfun_distance(kTwoPoint, point_mass(0.0), pi_grid) - 2.0) <= 1e-15);
  const std::vector<double> small{0.0, 0.5, 1.0, 2.0};
  const Dist closed_form = normal({0.0, 1.0});
  CHECK(charfun_distance(standard_normal(), closed_form, small) <= 1e-6);
  double direct = 0.0;
  for (double t : small) direct = std::max(direct, std::abs(charfun(standard_normal(), t) - normal_charfun(t)));
  CHECK(direct <= 1e-6);
  CHECK(code_of([] { charfun_distance(kTwoPoint, kTwoPoint, {}); }) == ErrorCode::InvalidParams);
}

// ---------------------------------------------------------------------------
// Properties

TEST_CASE("modulus bound and conjugate symmetry") {
  std::mt19937_64 rng(5);
  std::vector<Dist> family{standard_normal(), normal({2.0, 0.5}), sample(standard_normal(), 200, 9)};
  for (int i = 0; i < 30; ++i) family.push_back(testing::random_discrete(rng));
  for (const auto& mu : family) {
    for (double t = -10.0; t <= 10.0; t += 0.37) {
      const auto z = charfun(mu, t);
      CHECK(std::abs(z) <= 1.0 + 1e-9);
      CHECK(std::abs(charfun(mu, -t) - std::conj(z)) <= 1e-9);
    }
  }
}

TEST_CASE("product law and shift/scale covariance") {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 40; ++trial) {
    const auto mu = testing::random_discrete(rng), nu = testing::random_discrete(rng);
    const auto sum = convolve(mu, nu);
    double a = u(rng), b = u(rng);
    if (std::abs(b) < 0.1) b = 1.0;
    const auto affine = shift_scale(mu, a, b);
    for (double t : grid20()) {
      CHECK(std::abs(charfun(sum, t) - charfun(mu, t) * charfun(nu, t)) <= 1e-9);
      const auto expected = std::exp(ComplexValue(0.0, -t * a / b)) * charfun(mu, t / b);
      CHECK(std::abs(charfun(affine, t) - expected) <= 1e-9);
    }
  }
}

TEST_CASE("inversion agrees with interval probabilities and tightens with T") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> lattice(-24, 23);
  for (int trial = 0; trial < 8; ++trial) {
    const auto mu = testing::random_discrete(rng);
    // Endpoints halfway between lattice points carry no mass.
    int ia = lattice(rng), ib = lattice(rng);
    if (ia == ib) ++ib;
    const double a = std::min(ia, ib) * 0.25 + 0.125, b = std::max(ia, ib) * 0.25 + 0.125;
    const double truth = interval_prob(mu, a, b);
    const auto phi = CharFn::of(mu);
    const double e2 = std::abs(levy_invert(phi, a, b, 1e2) - truth);
    const double e3 = std::abs(levy_invert(phi, a, b, 1e3) - truth);
    const double e4 = std::abs(levy_invert(phi, a, b, 1e4) - truth);
    CHECK(e3 <= 1e-2);
    CHECK(e4 <= e2 + 1e-2);
    CHECK(e4 <= e3 + 1e-2);
  }
}
