#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cltkit/weak_convergence.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace cltkit;
using testing::code_of;

namespace {
const Dist kTwoPoint = discrete({{-1.0, 0.5}, {1.0, 0.5}});

ConvergenceProbe delta0_probe(std::vector<double> grid) {
  return ConvergenceProbe{point_mass(0.0), std::move(grid), default_test_functions()};
}

// The x range must cover every atom of either side.
double scan(const Dist& mu, const Dist& nu) {
  return oracle::levy_scan([&](double x) { return cdf(mu, x); }, [&](double x) { return cdf(nu, x); }, -8.0, 8.0,
                           1e-3);
}

const TestFunction& find_fn(const std::vector<TestFunction>& fns, const std::string& name) {
  for (const auto& f : fns)
    if (f.name == name) return f;
  FAIL("missing test function " << name);
  return fns.front();
}
}  // namespace

TEST_CASE("default test functions respect their bounds") {
  const auto fns = default_test_functions();
  CHECK(fns.size() == 4);
  for (const auto& fn : fns) {
    for (double x = -50.0; x <= 50.0; x += 0.013) CHECK(std::abs(fn.f(x)) <= fn.bound);
  }
  const auto& clamp = find_fn(fns, "clamp01");
  CHECK(clamp.f(-2.0) == 0.0);
  CHECK(clamp.f(0.3) == 0.3);
  CHECK(clamp.f(4.0) == 1.0);
  CHECK(find_fn(fns, "bump").f(1.0) == 0.0);
  CHECK(find_fn(fns, "bump").f(0.0) > 0.0);
}

TEST_CASE("continuity grids avoid atoms") {
  CHECK(continuity_grid(kTwoPoint) == std::vector<double>{-2.0, 0.0, 2.0});
  CHECK(continuity_grid(point_mass(0.0)) == std::vector<double>{-1.0, 1.0});
  const auto g = continuity_grid(standard_normal());
  REQUIRE(g.size() == 101);
  CHECK(g.front() == doctest::Approx(-4.0));
  CHECK(g.back() == doctest::Approx(4.0));
  CHECK_NOTHROW(ConvergenceProbe::standard(kTwoPoint).validate());
  CHECK_NOTHROW(ConvergenceProbe::standard(standard_normal()).validate());
}

TEST_CASE("probe validation") {
  CHECK(code_of([] { delta0_probe({-1.0, 0.0, 1.0}).validate(); }) == ErrorCode::AtomOnGrid);
  CHECK(code_of([] { delta0_probe({}).validate(); }) == ErrorCode::InvalidProbe);
  ConvergenceProbe bad = delta0_probe({-1.0, 1.0});
  bad.test_fns.push_back({"identity", [](double x) { return x; }, 1.0});
  CHECK(code_of([&] { bad.validate(); }) == ErrorCode::InvalidProbe);
  bad.test_fns.back() = {"unbounded", [](double x) { return x; }, INFINITY};
  CHECK(code_of([&] { bad.validate(); }) == ErrorCode::InvalidProbe);
}

TEST_CASE("cdf_distance examples") {
  CHECK(cdf_distance(kTwoPoint, ConvergenceProbe::standard(kTwoPoint)) == 0.0);
  CHECK(cdf_distance(standard_normal(), ConvergenceProbe::standard(standard_normal())) == 0.0);
  const auto probe = delta0_probe({-1.0, -0.1, 0.1, 1.0});
  for (int n = 10; n <= 1000; n *= 10) CHECK(cdf_distance(point_mass(1.0 / n), probe) == 0.0);
  // Below n = 10 the atom at 1/n sits past the 0.1 grid point.
  CHECK(cdf_distance(point_mass(1.0 / 5), probe) == 1.0);
  CHECK(code_of([] { cdf_distance(point_mass(0.5), delta0_probe({-1.0, 0.0, 1.0})); }) == ErrorCode::AtomOnGrid);
}

TEST_CASE("levy_metric examples") {
  CHECK(levy_metric(kTwoPoint, kTwoPoint, 1e-9) <= 1e-9);
  CHECK(levy_metric(standard_normal(), standard_normal(), 1e-9) <= 1e-9);
  // Point masses at 0 and 0.1: the scan oracle settles at 0.1.
  const double d = levy_metric(point_mass(0.0), point_mass(0.1), 1e-9);
  const double scanned = scan(point_mass(0.0), point_mass(0.1));
  CHECK(std::abs(scanned - 0.1) <= 1e-3 + 1e-12);
  CHECK(std::abs(d - scanned) <= 1e-3);
  CHECK(d <= 0.1 + 1e-9);
  CHECK(d >= 0.05 - 1e-9);
  double prev = 1.0;
  for (int n = 1; n <= 1024; n *= 2) {
    const double v = levy_metric(point_mass(1.0 / n), point_mass(0.0), 1e-9);
    CHECK(v <= 1.0 / n + 1e-9);
    CHECK(v <= prev + 1e-9);
    prev = v;
  }
  CHECK(code_of([] { levy_metric(kTwoPoint, kTwoPoint, 0.0); }) == ErrorCode::InvalidTolerance);
}

TEST_CASE("levy_metric matches the scan oracle") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 8; ++trial) {
    const auto mu = testing::random_discrete(rng, 4), nu = testing::random_discrete(rng, 4);
    const double d = levy_metric(mu, nu, 1e-9);
    CHECK(std::abs(d - scan(mu, nu)) <= 1e-3 + 1e-9);
  }
  // Against a density limit.
  const auto s = iid_sum_normalized(kTwoPoint, 16);
  const double d = levy_metric(s, standard_normal(), 1e-9);
  const double scanned = oracle::levy_scan([&](double x) { return cdf(s, x); }, oracle::normal_cdf, -5.0, 5.0, 1e-4);
  // eps step 1e-4, plus x step 5e-4 times a normal density of at most 0.4.
  CHECK(std::abs(d - scanned) <= 1e-4 + 2e-4);
}

TEST_CASE("levy_metric is a pseudometric on a fixed family") {
  const std::vector<Dist> family{
      point_mass(0.0),
      point_mass(0.3),
      kTwoPoint,
      uniform_on({-1.0, 0.0, 1.0}),
      discrete({{-0.5, 0.2}, {0.25, 0.5}, {2.0, 0.3}}),
      iid_sum_normalized(kTwoPoint, 9),
  };
  const double tol = 1e-9;
  std::vector<std::vector<double>> d(family.size(), std::vector<double>(family.size()));
  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::size_t j = 0; j < family.size(); ++j) d[i][j] = levy_metric(family[i], family[j], tol);
  for (std::size_t i = 0; i < family.size(); ++i) {
    CHECK(d[i][i] <= tol);
    for (std::size_t j = 0; j < family.size(); ++j) {
      CHECK(std::abs(d[i][j] - d[j][i]) <= tol);
      if (i != j) CHECK(d[i][j] > tol);
      for (std::size_t k = 0; k < family.size(); ++k) CHECK(d[i][k] <= d[i][j] + d[j][k] + 3 * tol);
    }
  }
}

TEST_CASE("portmanteau_testfn examples") {
  for (const auto& mu : {kTwoPoint, standard_normal()}) {
    for (double v : portmanteau_testfn(mu, ConvergenceProbe::standard(mu))) CHECK(v <= 1e-9);
  }
  ConvergenceProbe clamp_only = delta0_probe({-1.0, 1.0});
  clamp_only.test_fns = {find_fn(default_test_functions(), "clamp01")};
  for (int n : {1, 3, 10, 250}) {
    const auto vals = portmanteau_testfn(point_mass(1.0 / n), clamp_only);
    REQUIRE(vals.size() == 1);
    CHECK(std::abs(vals[0] - 1.0 / n) <= 1e-15);
  }
  ConvergenceProbe square = delta0_probe({-2.0, 2.0});
  square.test_fns = {{"square", [](double x) { return x * x; }, 1.0, -1.0, 1.0}};
  CHECK_NOTHROW(square.validate());
  CHECK(portmanteau_testfn(kTwoPoint, square) == std::vector<double>{1.0});
}

TEST_CASE("boundary_null_check examples") {
  const std::vector<HalfOpenInterval> central{{-1.96, 1.96}};
  auto r = boundary_null_check(iid_sum_normalized(kTwoPoint, 64), standard_normal(), central);
  CHECK(r.boundary_mass == 0.0);
  CHECK(std::abs(r.limit_value - 0.9500042097035591) <= 1e-8);

  const std::vector<HalfOpenInterval> unit{{0.0, 1.0}};
  r = boundary_null_check(point_mass(0.5), point_mass(0.0), unit);
  CHECK(r.boundary_mass == 1.0);

  const std::vector<HalfOpenInterval> wide{{-1.0, 1.0}};
  for (int n : {2, 10, 1000}) {
    r = boundary_null_check(point_mass(1.0 / n), point_mass(0.0), wide);
    CHECK(r.mu_value == 1.0);
    CHECK(r.limit_value == 1.0);
    CHECK(r.boundary_mass == 0.0);
  }

  const std::vector<HalfOpenInterval> two{{-3.0, -1.0}, {0.5, 1.0}};
  r = boundary_null_check(kTwoPoint, uniform_on({-2.0, 0.75, 5.0}), two);
  CHECK(r.mu_value == 1.0);
  CHECK(r.limit_value == doctest::Approx(2.0 / 3.0));
  CHECK(r.boundary_mass == 0.0);

  const std::vector<HalfOpenInterval> overlap{{0.0, 2.0}, {1.0, 3.0}};
  CHECK(code_of([&] { boundary_null_check(kTwoPoint, kTwoPoint, overlap); }) == ErrorCode::MalformedSet);
  const std::vector<HalfOpenInterval> empty_piece{{1.0, 1.0}};
  CHECK(code_of([&] { boundary_null_check(kTwoPoint, kTwoPoint, empty_piece); }) == ErrorCode::MalformedSet);
}

TEST_CASE("portmanteau verdicts") {
  const std::vector<std::vector<HalfOpenInterval>> sets{{{-0.5, 0.5}}, {{-2.0, -0.25}, {0.25, 2.0}}};
  // The default grid {-1, 1} cannot see an atom at 0.75; use a finer one.
  ConvergenceProbe probe = delta0_probe({-1.0, -0.5, -0.25, -0.1, 0.1, 0.25, 0.5, 1.0});
  auto v = portmanteau_verdict(point_mass(1.0 / 4096), probe, sets, 1e-3);
  CHECK(v.agree());
  CHECK(v.cdf);
  CHECK(v.testfn);
  CHECK(v.boundary);

  v = portmanteau_verdict(point_mass(0.75), probe, sets, 1e-3);
  CHECK(v.agree());
  CHECK_FALSE(v.cdf);

  const std::vector<std::vector<HalfOpenInterval>> only_atoms{{{0.0, 1.0}}};
  CHECK(code_of([&] { portmanteau_verdict(point_mass(0.5), probe, only_atoms, 1e-3); }) == ErrorCode::InvalidProbe);
}

TEST_CASE("discrete limits have finitely many jumps") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const auto mu = testing::random_discrete(rng);
    const auto jumps = discontinuity_points(mu);
    CHECK(jumps.size() == mu.discrete().size());
    for (double g : continuity_grid(mu)) {
      CHECK(cdf(mu, g) == cdf_left(mu, g));
    }
  }
}
