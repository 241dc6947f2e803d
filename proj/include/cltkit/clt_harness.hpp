#ifndef CLTKIT_CLT_HARNESS_HPP
#define CLTKIT_CLT_HARNESS_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cltkit/distribution.hpp"

namespace cltkit {

/// The distribution of X - E[X].
Dist center(const Dist& mu);

/// Normalized i.i.d. sums of a centered discrete base, compared against the
/// standard normal for each n in ns.
struct CltExperiment {
  Dist base;
  double sigma2 = 0.0;
  std::vector<std::size_t> ns;
  std::vector<double> t_grid;
  /// Continuity grid for the CDF comparison.
  std::vector<double> grid;
  std::uint64_t seed = 0;
  /// When set, each normalized sum is estimated from this many Monte Carlo
  /// draws instead of exact convolution.
  std::optional<std::size_t> mc_draws;
  double tol = kDefaultTol;

  /// Centers base if needed and fills sigma2 and the default grids
  /// (t in {0.25, 0.5, 1, 2, 4}; CDF grid of the standard normal).
  static CltExperiment make(const Dist& base, std::vector<std::size_t> ns);

  /// Throws NonZeroMean, NonZeroVariance or InvalidParams.
  void validate() const;
};

struct ConvergenceRow {
  std::size_t n;
  double cdf_sup;
  double levy;
  double charfun_sup;
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
};

/// Distribution of S_n / sqrt(n sigma^2) estimated from `draws` samples.
Dist normalized_sum_monte_carlo(const Dist& base, std::size_t n, std::size_t draws,
                                std::uint64_t seed);

ConvergenceReport run_clt(const CltExperiment& exp);

struct CurvePoint {
  std::size_t n;
  double t;
  double modulus_error;
};

/// |phi_base(t / sqrt(n sigma^2))^n - e^{-t^2/2}| for every (n, t), via the
/// product rule rather than the convolution.
std::vector<CurvePoint> charfun_convergence_curve(const CltExperiment& exp);

/// Header `n,cdf_sup,levy,charfun_sup`, then one row per n with 12
/// significant digits.
void emit_csv(const ConvergenceReport& report, std::ostream& out);
void emit_csv(const ConvergenceReport& report, const std::string& path);

}  // namespace cltkit

#endif  // CLTKIT_CLT_HARNESS_HPP
