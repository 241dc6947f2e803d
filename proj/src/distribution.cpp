#include "cltkit/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <random>
#include <string>

#include "cltkit/error.hpp"

namespace cltkit {

namespace {

constexpr double kMassTol = 1e-12;
constexpr double kMergeTol = 1e-12;
constexpr std::size_t kMaxPairs = 50'000'000;

void require_probability(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw Error(ErrorCode::OutOfRange, "quantile level must lie in (0, 1), got " + std::to_string(p));
  }
}

ExtendedReal map_endpoint(const ExtendedReal& x, double a, double b) {
  if (x.is_finite()) return (x.value() - a) / b;
  if (b > 0) return x;
  return x.is_pos_inf() ? ExtendedReal::neg_inf() : ExtendedReal::pos_inf();
}

}  // namespace

// ---------------------------------------------------------------------------
// DiscreteDist

DiscreteDist::DiscreteDist(std::vector<Atom> atoms) {
  if (atoms.empty()) throw Error(ErrorCode::InvalidDistribution, "no atoms");
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& l, const Atom& r) { return l.point < r.point; });
  double total = 0.0;
  for (const Atom& atom : atoms) {
    if (!std::isfinite(atom.point) || !std::isfinite(atom.weight) || atom.weight < 0.0) {
      throw Error(ErrorCode::InvalidDistribution, "atoms need finite points and weights >= 0");
    }
    total += atom.weight;
    if (atom.weight == 0.0) continue;
    if (!atoms_.empty() && atoms_.back().point == atom.point) {
      atoms_.back().weight += atom.weight;
    } else {
      atoms_.push_back(atom);
    }
  }
  if (std::abs(total - 1.0) > kMassTol) {
    throw Error(ErrorCode::InvalidDistribution, "weights sum to " + std::to_string(total));
  }
  cumulative_.reserve(atoms_.size());
  double running = 0.0;
  for (const Atom& atom : atoms_) {
    running += atom.weight;
    cumulative_.push_back(std::min(running, 1.0));
  }
  cumulative_.back() = 1.0;
}

double DiscreteDist::cdf(double x) const {
  const auto it = std::upper_bound(atoms_.begin(), atoms_.end(), x,
                                   [](double v, const Atom& a) { return v < a.point; });
  if (it == atoms_.begin()) return 0.0;
  return cumulative_[static_cast<std::size_t>(it - atoms_.begin()) - 1];
}

double DiscreteDist::left_limit(double x) const {
  const auto it = std::lower_bound(atoms_.begin(), atoms_.end(), x,
                                   [](const Atom& a, double v) { return a.point < v; });
  if (it == atoms_.begin()) return 0.0;
  return cumulative_[static_cast<std::size_t>(it - atoms_.begin()) - 1];
}

double DiscreteDist::quantile(double p) const {
  require_probability(p);
  const auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), p);
  return atoms_[static_cast<std::size_t>(it - cumulative_.begin())].point;
}

// ---------------------------------------------------------------------------
// DensityDist

DensityDist::DensityDist(RealFn f, OrientedInterval support)
    : DensityDist(std::move(f), support, Options{}) {}

DensityDist::DensityDist(RealFn f, OrientedInterval support, Options options)
    : f_(std::move(f)), support_(support), options_(std::move(options)) {
  if (!(support_.lo < support_.hi)) {
    throw Error(ErrorCode::InvalidDistribution, "density support must have lo < hi");
  }
  if (!(options_.scale > 0.0) || !std::isfinite(options_.center) || !(options_.mass_tol > 0.0)) {
    throw Error(ErrorCode::InvalidDistribution, "density needs scale > 0 and mass_tol > 0");
  }
  std::sort(options_.knots.begin(), options_.knots.end());
  const double mass = integrate([](double) { return 1.0; }, options_.mass_tol / 4.0);
  if (std::abs(mass - 1.0) > options_.mass_tol) {
    throw Error(ErrorCode::InvalidDistribution, "density integrates to " + std::to_string(mass));
  }
}

double DensityDist::operator()(double x) const {
  const ExtendedReal ex(x);
  if (ex < support_.lo || ex > support_.hi) return 0.0;
  return f_(x);
}

double DensityDist::integrate(const RealFn& g, double tol) const {
  return integrate(g, support_.lo, support_.hi, tol);
}

double DensityDist::integrate(const RealFn& g, ExtendedReal lo, ExtendedReal hi,
                              double tol) const {
  const ExtendedReal a = std::max(lo, support_.lo);
  const ExtendedReal b = std::min(hi, support_.hi);
  if (!(a < b)) return 0.0;

  const double c = options_.center;
  const double s = options_.scale;
  // Work in standardized units u = (x - c) / s so that tail truncation is
  // relative to where the mass sits.
  std::vector<ExtendedReal> cuts{map_endpoint(a, c, s)};
  const ExtendedReal ub = map_endpoint(b, c, s);
  if (!a.is_finite() || !b.is_finite()) {
    if (cuts.front() < ExtendedReal(0.0) && ExtendedReal(0.0) < ub) cuts.emplace_back(0.0);
  }
  for (double knot : options_.knots) {
    const ExtendedReal k(knot);
    if (a < k && k < b) cuts.emplace_back((knot - c) / s);
  }
  cuts.push_back(ub);
  std::sort(cuts.begin(), cuts.end());

  const RealFn h = [&](double u) {
    const double x = c + s * u;
    return s * g(x) * f_(x);
  };
  const double piece_tol = tol / static_cast<double>(cuts.size() - 1);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    total += integrate_real(h, {cuts[i], cuts[i + 1]}, piece_tol);
  }
  return total;
}

// ---------------------------------------------------------------------------
// EmpiricalDist

EmpiricalDist::EmpiricalDist(std::vector<double> samples) : samples_(std::move(samples)) {
  if (samples_.empty()) throw Error(ErrorCode::InvalidDistribution, "empty sample");
  for (double s : samples_) {
    if (!std::isfinite(s)) throw Error(ErrorCode::InvalidDistribution, "non-finite sample");
  }
  std::sort(samples_.begin(), samples_.end());
}

double EmpiricalDist::cdf(double x) const {
  const auto count = std::upper_bound(samples_.begin(), samples_.end(), x) - samples_.begin();
  return static_cast<double>(count) / static_cast<double>(samples_.size());
}

double EmpiricalDist::left_limit(double x) const {
  const auto count = std::lower_bound(samples_.begin(), samples_.end(), x) - samples_.begin();
  return static_cast<double>(count) / static_cast<double>(samples_.size());
}

double EmpiricalDist::quantile(double p) const {
  require_probability(p);
  const auto n = samples_.size();
  // Smallest k with (k + 1) / n >= p.
  auto k = static_cast<std::size_t>(std::ceil(p * static_cast<double>(n)));
  k = std::clamp<std::size_t>(k, 1, n) - 1;
  while (k > 0 && static_cast<double>(k) / static_cast<double>(n) >= p) --k;
  while (k + 1 < n && static_cast<double>(k + 1) / static_cast<double>(n) < p) ++k;
  return samples_[k];
}

// ---------------------------------------------------------------------------
// Dist

const DiscreteDist& Dist::discrete() const {
  if (const auto* d = std::get_if<DiscreteDist>(&rep_)) return *d;
  throw Error(ErrorCode::UnsupportedRepresentation, "expected a discrete distribution");
}

const DensityDist& Dist::density() const {
  if (const auto* d = std::get_if<DensityDist>(&rep_)) return *d;
  throw Error(ErrorCode::UnsupportedRepresentation, "expected a density distribution");
}

const EmpiricalDist& Dist::empirical() const {
  if (const auto* d = std::get_if<EmpiricalDist>(&rep_)) return *d;
  throw Error(ErrorCode::UnsupportedRepresentation, "expected an empirical distribution");
}

Dist discrete(std::vector<Atom> atoms) { return DiscreteDist(std::move(atoms)); }

Dist point_mass(double x) { return DiscreteDist({{x, 1.0}}); }

Dist uniform_on(const std::vector<double>& points) {
  std::vector<Atom> atoms;
  atoms.reserve(points.size());
  for (double p : points) atoms.push_back({p, 1.0 / static_cast<double>(points.size())});
  return DiscreteDist(std::move(atoms));
}

Dist empirical(std::vector<double> samples) { return EmpiricalDist(std::move(samples)); }

double normal_density(NormalParams params, double x) {
  if (!(params.sigma2 > 0.0) || !std::isfinite(params.sigma2) || !std::isfinite(params.m)) {
    throw Error(ErrorCode::InvalidParams, "normal needs finite m and sigma2 > 0");
  }
  const double sigma = std::sqrt(params.sigma2);
  const double z = (x - params.m) / sigma;
  return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * std::numbers::pi));
}

Dist normal(NormalParams params) {
  normal_density(params, params.m);  // validates
  DensityDist::Options options;
  options.center = params.m;
  options.scale = std::sqrt(params.sigma2);
  return DensityDist([params](double x) { return normal_density(params, x); },
                     {ExtendedReal::neg_inf(), ExtendedReal::pos_inf()}, std::move(options));
}

Dist standard_normal() { return normal({0.0, 1.0}); }

// ---------------------------------------------------------------------------
// CDF, quantile, moments

double cdf(const Dist& mu, double x) {
  return mu.visit([x](const auto& d) -> double {
    using T = std::decay_t<decltype(d)>;
    if constexpr (std::is_same_v<T, DensityDist>) {
      const double v = d.integrate([](double) { return 1.0; }, ExtendedReal::neg_inf(), x);
      return std::clamp(v, 0.0, 1.0);
    } else {
      return d.cdf(x);
    }
  });
}

double cdf_left(const Dist& mu, double x) {
  return mu.visit([&mu, x](const auto& d) -> double {
    using T = std::decay_t<decltype(d)>;
    if constexpr (std::is_same_v<T, DensityDist>) {
      return cdf(mu, x);
    } else {
      return d.left_limit(x);
    }
  });
}

double interval_prob(const Dist& mu, double a, double b) {
  if (!(a < b)) return 0.0;
  if (mu.is_density()) {
    const double v = mu.density().integrate([](double) { return 1.0; }, a, b);
    return std::clamp(v, 0.0, 1.0);
  }
  return cdf(mu, b) - cdf(mu, a);
}

namespace {

// Generalized inverse of a density CDF by bracketing and safeguarded secant
// steps. CDF increments are integrated locally so each step is cheap.
double density_quantile(const DensityDist& d, double p) {
  const auto one = [](double) { return 1.0; };
  const double lo_bound = d.support().lo.as_double();
  const double hi_bound = d.support().hi.as_double();

  double x0 = std::clamp(d.center(), lo_bound, hi_bound);
  if (!std::isfinite(x0)) x0 = std::isfinite(lo_bound) ? lo_bound : hi_bound;
  double f0 = std::clamp(d.integrate(one, ExtendedReal::neg_inf(), x0), 0.0, 1.0);

  // Bracket [xl, xr] with F(xl) < p <= F(xr).
  double xl = x0, fl = f0, xr = x0, fr = f0;
  double step = d.scale();
  if (f0 < p) {
    while (fr < p) {
      xl = xr;
      fl = fr;
      xr = std::min(xl + step, hi_bound);
      fr = (xr >= hi_bound) ? 1.0 : fl + d.integrate(one, xl, xr, 1e-14);
      step *= 2.0;
      if (step > 1e300) throw Error(ErrorCode::NonConvergence, "quantile bracket search failed");
    }
  } else {
    while (fl >= p) {
      xr = xl;
      fr = fl;
      xl = std::max(xr - step, lo_bound);
      fl = (xl <= lo_bound) ? 0.0 : fr - d.integrate(one, xl, xr, 1e-14);
      step *= 2.0;
      if (step > 1e300) throw Error(ErrorCode::NonConvergence, "quantile bracket search failed");
    }
  }

  for (int iter = 0; iter < 200; ++iter) {
    if (xr - xl <= 1e-13 * (1.0 + std::abs(xl) + std::abs(xr))) break;
    double x = xl + (p - fl) * (xr - xl) / (fr - fl);
    const double margin = 0.01 * (xr - xl);
    if (!(x > xl + margin && x < xr - margin) || iter % 4 == 3) x = 0.5 * (xl + xr);
    const double fx = fl + d.integrate(one, xl, x, 1e-14);
    if (fx < p) {
      xl = x;
      fl = fx;
    } else {
      xr = x;
      fr = fx;
    }
    if (std::abs(fx - p) <= 1e-15) break;
  }
  return xr;
}

}  // namespace

double quantile(const Dist& mu, double p) {
  require_probability(p);
  return mu.visit([p](const auto& d) -> double {
    using T = std::decay_t<decltype(d)>;
    if constexpr (std::is_same_v<T, DensityDist>) {
      return density_quantile(d, p);
    } else {
      return d.quantile(p);
    }
  });
}

double expect(const Dist& mu, const RealFn& g, double tol) {
  return mu.visit([&g, tol](const auto& d) -> double {
    using T = std::decay_t<decltype(d)>;
    if constexpr (std::is_same_v<T, DiscreteDist>) {
      double sum = 0.0;
      for (const Atom& a : d.atoms()) sum += a.weight * g(a.point);
      return sum;
    } else if constexpr (std::is_same_v<T, DensityDist>) {
      return d.integrate(g, tol);
    } else {
      double sum = 0.0;
      for (double s : d.samples()) sum += g(s);
      return sum / static_cast<double>(d.size());
    }
  });
}

double mean(const Dist& mu) {
  return expect(mu, [](double x) { return x; });
}

double variance(const Dist& mu) {
  const double m = mean(mu);
  return std::max(0.0, expect(mu, [m](double x) { return (x - m) * (x - m); }));
}

std::pair<double, double> effective_range(const Dist& mu, double half_width_sds) {
  if (mu.is_discrete()) {
    const auto& atoms = mu.discrete().atoms();
    return {atoms.front().point, atoms.back().point};
  }
  if (mu.is_empirical()) {
    const auto& s = mu.empirical().samples();
    return {s.front(), s.back()};
  }
  const auto& d = mu.density();
  double lo = d.support().lo.as_double();
  double hi = d.support().hi.as_double();
  if (std::isfinite(lo) && std::isfinite(hi)) return {lo, hi};
  const double m = mean(mu);
  const double sd = std::sqrt(variance(mu));
  return {std::max(lo, m - half_width_sds * sd), std::min(hi, m + half_width_sds * sd)};
}

// ---------------------------------------------------------------------------
// Convolution and affine maps

namespace {

DiscreteDist convolve_discrete(const DiscreteDist& mu, const DiscreteDist& nu) {
  if (mu.size() * nu.size() > kMaxPairs) {
    throw Error(ErrorCode::SizeLimit, "convolution would enumerate " +
                                          std::to_string(mu.size() * nu.size()) + " atom pairs");
  }
  std::vector<Atom> pairs;
  pairs.reserve(mu.size() * nu.size());
  for (const Atom& a : mu.atoms()) {
    for (const Atom& b : nu.atoms()) pairs.push_back({a.point + b.point, a.weight * b.weight});
  }
  std::sort(pairs.begin(), pairs.end(),
            [](const Atom& l, const Atom& r) { return l.point < r.point; });

  std::vector<Atom> merged;
  double anchor = 0.0;
  for (const Atom& atom : pairs) {
    if (!merged.empty() && atom.point - anchor <= kMergeTol) {
      merged.back().weight += atom.weight;
    } else {
      anchor = atom.point;
      merged.push_back(atom);
    }
  }
  if (merged.size() > kMaxAtoms) {
    throw Error(ErrorCode::SizeLimit, "convolution has " + std::to_string(merged.size()) + " atoms");
  }
  return DiscreteDist(std::move(merged));
}

constexpr std::size_t kDensityGrid = 4096;

struct Tabulated {
  double origin;
  double step;
  std::vector<double> values;

  double operator()(double x) const {
    const double pos = (x - origin) / step;
    if (!(pos >= 0.0) || pos > static_cast<double>(values.size() - 1)) return 0.0;
    const auto i = std::min(static_cast<std::size_t>(pos), values.size() - 2);
    const double frac = pos - static_cast<double>(i);
    return values[i] + frac * (values[i + 1] - values[i]);
  }
};

Dist convolve_density(const Dist& mu, const Dist& nu) {
  const auto [l1, h1] = effective_range(mu);
  const auto [l2, h2] = effective_range(nu);
  const double lo = l1 + l2;
  const double hi = h1 + h2;
  const double step = (hi - lo) / static_cast<double>(kDensityGrid - 1);

  const auto sample_grid = [step](const DensityDist& d, double from, double to) {
    const auto count = static_cast<std::size_t>(std::floor((to - from) / step)) + 1;
    std::vector<double> v(count);
    for (std::size_t i = 0; i < count; ++i) v[i] = d(from + static_cast<double>(i) * step);
    return v;
  };
  const std::vector<double> f1 = sample_grid(mu.density(), l1, h1);
  const std::vector<double> f2 = sample_grid(nu.density(), l2, h2);

  auto table = std::make_shared<Tabulated>();
  table->origin = lo;
  table->step = step;
  table->values.assign(kDensityGrid, 0.0);
  for (std::size_t i = 0; i < f1.size(); ++i) {
    const double w = (i == 0 || i + 1 == f1.size()) ? 0.5 : 1.0;
    for (std::size_t j = 0; j < f2.size() && i + j < kDensityGrid; ++j) {
      table->values[i + j] += w * f1[i] * f2[j] * step;
    }
  }
  double mass = 0.0;
  for (std::size_t k = 0; k + 1 < kDensityGrid; ++k) {
    mass += 0.5 * (table->values[k] + table->values[k + 1]) * step;
  }
  if (!(mass > 0.0)) throw Error(ErrorCode::NonConvergence, "convolved density has no mass");
  for (double& v : table->values) v /= mass;

  DensityDist::Options options;
  options.mass_tol = 1e-9;
  options.center = 0.5 * (lo + hi);
  options.scale = std::max(step, 0.5 * (hi - lo));
  options.knots.reserve(kDensityGrid);
  for (std::size_t k = 0; k < kDensityGrid; ++k) {
    options.knots.push_back(lo + static_cast<double>(k) * step);
  }
  return DensityDist([table](double x) { return (*table)(x); }, {lo, hi}, std::move(options));
}

}  // namespace

Dist convolve(const Dist& mu, const Dist& nu) {
  if (mu.is_discrete() && nu.is_discrete()) return convolve_discrete(mu.discrete(), nu.discrete());
  if (mu.is_density() && nu.is_density()) return convolve_density(mu, nu);
  throw Error(ErrorCode::UnsupportedPair, "convolution needs two discrete or two density inputs");
}

Dist shift_scale(const Dist& mu, double a, double b) {
  if (b == 0.0 || !std::isfinite(b) || !std::isfinite(a)) {
    throw Error(ErrorCode::InvalidScale, "shift_scale needs finite a and nonzero finite b");
  }
  if (a == 0.0 && b == 1.0) return mu;
  return mu.visit([a, b](const auto& d) -> Dist {
    using T = std::decay_t<decltype(d)>;
    if constexpr (std::is_same_v<T, DiscreteDist>) {
      std::vector<Atom> atoms;
      atoms.reserve(d.size());
      for (const Atom& atom : d.atoms()) atoms.push_back({(atom.point - a) / b, atom.weight});
      return DiscreteDist(std::move(atoms));
    } else if constexpr (std::is_same_v<T, EmpiricalDist>) {
      std::vector<double> s;
      s.reserve(d.size());
      for (double x : d.samples()) s.push_back((x - a) / b);
      return EmpiricalDist(std::move(s));
    } else {
      ExtendedReal lo = map_endpoint(d.support().lo, a, b);
      ExtendedReal hi = map_endpoint(d.support().hi, a, b);
      if (hi < lo) std::swap(lo, hi);
      DensityDist::Options options;
      options.mass_tol = d.mass_tol();
      options.center = (d.center() - a) / b;
      options.scale = d.scale() / std::abs(b);
      for (double k : d.knots()) options.knots.push_back((k - a) / b);
      return DensityDist([d, a, b](double y) { return std::abs(b) * d(b * y + a); }, {lo, hi},
                         std::move(options));
    }
  });
}

Dist iid_sum_normalized(const Dist& mu, std::size_t n) {
  const DiscreteDist& base = mu.discrete();
  if (n == 0) throw Error(ErrorCode::OutOfRange, "n must be at least 1");
  const double m = mean(mu);
  if (std::abs(m) > 1e-9) {
    throw Error(ErrorCode::NonZeroMean, "base mean is " + std::to_string(m));
  }
  const double sigma2 = variance(mu);
  if (!(sigma2 > 0.0)) throw Error(ErrorCode::NonZeroVariance, "base variance must be positive");

  DiscreteDist power = base;
  DiscreteDist total({{0.0, 1.0}});
  for (std::size_t k = n;;) {
    if (k & 1U) total = convolve_discrete(total, power);
    k >>= 1U;
    if (k == 0) break;
    power = convolve_discrete(power, power);
  }
  return shift_scale(total, 0.0, std::sqrt(static_cast<double>(n) * sigma2));
}

// ---------------------------------------------------------------------------
// Sampling and atoms

double open_unit_uniform(std::uint64_t bits) {
  // 52 bits plus a half step: 53 bits would round the top value up to 1.
  return (static_cast<double>(bits >> 12U) + 0.5) * 0x1.0p-52;
}

Dist sample(const Dist& mu, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw Error(ErrorCode::OutOfRange, "sample size must be at least 1");
  std::mt19937_64 rng(seed);
  std::vector<double> draws;
  draws.reserve(n);
  for (std::size_t i = 0; i < n; ++i) draws.push_back(quantile(mu, open_unit_uniform(rng())));
  return EmpiricalDist(std::move(draws));
}

std::vector<double> discontinuity_points(const Dist& mu) {
  std::vector<double> points;
  if (mu.is_discrete()) {
    for (const Atom& a : mu.discrete().atoms()) points.push_back(a.point);
  } else if (mu.is_empirical()) {
    const auto& s = mu.empirical().samples();
    std::unique_copy(s.begin(), s.end(), std::back_inserter(points));
  }
  return points;
}

}  // namespace cltkit
