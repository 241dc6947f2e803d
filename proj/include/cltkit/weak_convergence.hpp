#ifndef CLTKIT_WEAK_CONVERGENCE_HPP
#define CLTKIT_WEAK_CONVERGENCE_HPP

#include <span>
#include <string>
#include <vector>

#include "cltkit/distribution.hpp"

namespace cltkit {

/// Bounded continuous function used to probe convergence of integrals.
/// bound is checked on a sweep of [domain_lo, domain_hi].
struct TestFunction {
  std::string name;
  RealFn f;
  double bound = 1.0;
  double domain_lo = -100.0;
  double domain_hi = 100.0;
};

/// clamp(x, 0, 1), 1 / (1 + x^2), cos(x) and a smooth bump supported on [-1, 1].
std::vector<TestFunction> default_test_functions();

/// Points where the limit CDF is continuous: midpoints between consecutive
/// atoms plus one unit beyond the extreme atoms for discrete/empirical
/// limits; 101 evenly spaced points over mean +/- 4 sd for densities.
std::vector<double> continuity_grid(const Dist& limit);

struct ConvergenceProbe {
  Dist limit;
  std::vector<double> grid;
  std::vector<TestFunction> test_fns;

  /// Probe with the default grid and test-function dictionary.
  static ConvergenceProbe standard(const Dist& limit);

  /// Throws AtomOnGrid if a grid point is an atom of the limit, InvalidProbe
  /// for an empty grid or a test function exceeding its declared bound.
  void validate() const;
};

/// max over the probe grid of |F_mu(x) - F_limit(x)|.
double cdf_distance(const Dist& mu, const ConvergenceProbe& probe);

/// Levy distance inf{eps > 0 : F_mu(x - eps) - eps <= F_nu(x) <= F_mu(x + eps) + eps
/// for all x}, by bisection on eps to within tol.
double levy_metric(const Dist& mu, const Dist& nu, double tol = kDefaultTol);

/// |E_mu f - E_limit f| for each test function of the probe.
std::vector<double> portmanteau_testfn(const Dist& mu, const ConvergenceProbe& probe);

/// The interval (a, b].
struct HalfOpenInterval {
  double a;
  double b;
};

struct BoundaryCheck {
  double mu_value;
  double limit_value;
  /// Mass the limit puts on the endpoints of the set.
  double boundary_mass;
};

/// Measure of a finite disjoint union of half-open intervals under both
/// distributions. Throws MalformedSet for empty or overlapping intervals.
BoundaryCheck boundary_null_check(const Dist& member, const Dist& limit,
                                  std::span<const HalfOpenInterval> set);

/// Convergence verdicts of the three equivalent characterizations, each read
/// off a single sequence member at tolerance tol. Sets whose boundary carries
/// limit mass are skipped.
struct PortmanteauVerdict {
  double cdf_value = 0.0;
  double testfn_value = 0.0;
  double boundary_value = 0.0;
  bool cdf = false;
  bool testfn = false;
  bool boundary = false;

  bool agree() const { return cdf == testfn && testfn == boundary; }
};

PortmanteauVerdict portmanteau_verdict(const Dist& member, const ConvergenceProbe& probe,
                                       const std::vector<std::vector<HalfOpenInterval>>& sets,
                                       double tol);

}  // namespace cltkit

#endif  // CLTKIT_WEAK_CONVERGENCE_HPP
