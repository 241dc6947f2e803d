#ifndef CLTKIT_DISTRIBUTION_HPP
#define CLTKIT_DISTRIBUTION_HPP

#include <cstddef>
#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

#include "cltkit/numerics.hpp"

namespace cltkit {

struct Atom {
  double point;
  double weight;

  friend bool operator==(const Atom&, const Atom&) = default;
};

/// Finitely many atoms, points strictly increasing, weights positive and
/// summing to one within 1e-12.
class DiscreteDist {
 public:
  /// Sorts, merges exactly equal points and drops zero weights before
  /// validating. Throws InvalidDistribution.
  explicit DiscreteDist(std::vector<Atom> atoms);

  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return atoms_.size(); }

  double cdf(double x) const;
  double left_limit(double x) const;
  double quantile(double p) const;

 private:
  std::vector<Atom> atoms_;
  // cumulative_[i] = weight of atoms 0..i; the last entry is exactly 1.
  std::vector<double> cumulative_;
};

/// A density f on a support interval.
///
/// center/scale locate the bulk of the mass; integrals over infinite ranges
/// are split at center and truncated in units of scale. knots are points
/// where f is not smooth (e.g. the nodes of a tabulated density); quadrature
/// never straddles them.
class DensityDist {
 public:
  struct Options {
    double mass_tol = 1e-8;
    double center = 0.0;
    double scale = 1.0;
    std::vector<double> knots;
  };

  /// Throws InvalidDistribution when f does not integrate to one within
  /// mass_tol over the support.
  DensityDist(RealFn f, OrientedInterval support, Options options);
  DensityDist(RealFn f, OrientedInterval support);

  double operator()(double x) const;
  const OrientedInterval& support() const noexcept { return support_; }
  double mass_tol() const noexcept { return options_.mass_tol; }
  double center() const noexcept { return options_.center; }
  double scale() const noexcept { return options_.scale; }
  const std::vector<double>& knots() const noexcept { return options_.knots; }

  /// Integral of g(x) f(x) over [lo, hi] intersected with the support.
  double integrate(const RealFn& g, ExtendedReal lo, ExtendedReal hi,
                   double tol = kDefaultTol) const;
  double integrate(const RealFn& g, double tol = kDefaultTol) const;

 private:
  RealFn f_;
  OrientedInterval support_;
  Options options_;
};

/// Sorted, nonempty sample.
class EmpiricalDist {
 public:
  explicit EmpiricalDist(std::vector<double> samples);

  const std::vector<double>& samples() const noexcept { return samples_; }
  std::size_t size() const noexcept { return samples_.size(); }

  double cdf(double x) const;
  double left_limit(double x) const;
  double quantile(double p) const;

 private:
  std::vector<double> samples_;
};

/// Real distribution in one of three representations. Immutable.
class Dist {
 public:
  enum class Kind { Discrete, Density, Empirical };

  Dist(DiscreteDist d) : rep_(std::move(d)) {}  // NOLINT(google-explicit-constructor)
  Dist(DensityDist d) : rep_(std::move(d)) {}  // NOLINT(google-explicit-constructor)
  Dist(EmpiricalDist d) : rep_(std::move(d)) {}  // NOLINT(google-explicit-constructor)

  Kind kind() const noexcept { return static_cast<Kind>(rep_.index()); }
  bool is_discrete() const noexcept { return kind() == Kind::Discrete; }
  bool is_density() const noexcept { return kind() == Kind::Density; }
  bool is_empirical() const noexcept { return kind() == Kind::Empirical; }

  /// Throw UnsupportedRepresentation on a kind mismatch.
  const DiscreteDist& discrete() const;
  const DensityDist& density() const;
  const EmpiricalDist& empirical() const;

  template <typename Visitor>
  decltype(auto) visit(Visitor&& v) const {
    return std::visit(std::forward<Visitor>(v), rep_);
  }

 private:
  std::variant<DiscreteDist, DensityDist, EmpiricalDist> rep_;
};

struct NormalParams {
  double m = 0.0;
  double sigma2 = 1.0;
};

// Construction helpers.
Dist discrete(std::vector<Atom> atoms);
Dist point_mass(double x);
Dist uniform_on(const std::vector<double>& points);
Dist empirical(std::vector<double> samples);
Dist normal(NormalParams params);
Dist standard_normal();

/// (1 / (sigma sqrt(2 pi))) exp(-(x - m)^2 / (2 sigma^2)). Throws InvalidParams
/// for sigma2 <= 0.
double normal_density(NormalParams params, double x);

/// F(x) = mu((-inf, x]).
double cdf(const Dist& mu, double x);
/// mu((-inf, x)).
double cdf_left(const Dist& mu, double x);
/// mu((a, b]).
double interval_prob(const Dist& mu, double a, double b);

/// inf{x : F(x) >= p} for 0 < p < 1; throws OutOfRange otherwise.
double quantile(const Dist& mu, double p);

double mean(const Dist& mu);
double variance(const Dist& mu);

/// Integral of g with respect to mu.
double expect(const Dist& mu, const RealFn& g, double tol = kDefaultTol);

/// Interval carrying the mass: atom/sample extremes, or for densities the
/// support clipped to mean +/- half_width_sds standard deviations.
std::pair<double, double> effective_range(const Dist& mu, double half_width_sds = 8.0);

/// Distribution of X + Y for independent X ~ mu, Y ~ nu.
///
/// Discrete pairs are convolved exactly, merging points closer than 1e-12.
/// Density pairs are convolved on a 4096-point grid and returned as a
/// piecewise-linear density. Other pairs throw UnsupportedPair.
Dist convolve(const Dist& mu, const Dist& nu);

/// Distribution of (X - a) / b. Throws InvalidScale for b == 0.
Dist shift_scale(const Dist& mu, double a, double b);

inline constexpr std::size_t kMaxAtoms = 1'000'000;

/// Distribution of S_n / sqrt(n sigma^2) for n i.i.d. copies of a centered
/// discrete mu, by binary powering of the convolution. Throws NonZeroMean,
/// NonZeroVariance, OutOfRange (n == 0) and SizeLimit.
Dist iid_sum_normalized(const Dist& mu, std::size_t n);

/// n draws by inverse transform from a seeded 64-bit Mersenne twister.
Dist sample(const Dist& mu, std::size_t n, std::uint64_t seed);

/// Uniform variate in the open interval (0, 1) from the top 52 random bits.
double open_unit_uniform(std::uint64_t bits);

/// Jump points of the CDF, sorted. Densities have none.
std::vector<double> discontinuity_points(const Dist& mu);

}  // namespace cltkit

#endif  // CLTKIT_DISTRIBUTION_HPP
