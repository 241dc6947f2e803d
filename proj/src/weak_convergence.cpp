#include "cltkit/weak_convergence.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include "cltkit/error.hpp"

namespace cltkit {

namespace {

constexpr double kAtomTol = 1e-12;
constexpr double kBoundSweepPoints = 2001;
constexpr std::size_t kCdfTablePanels = 8192;
constexpr double kTableHalfWidthSds = 12.0;
constexpr double kCorridorSlack = 1e-12;

double bump(double x) {
  if (std::abs(x) >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - x * x));
}

}  // namespace

std::vector<TestFunction> default_test_functions() {
  return {
      {"clamp01", [](double x) { return std::clamp(x, 0.0, 1.0); }, 1.0},
      {"cauchy_kernel", [](double x) { return 1.0 / (1.0 + x * x); }, 1.0},
      {"cos", [](double x) { return std::cos(x); }, 1.0},
      {"bump", bump, 1.0},
  };
}

std::vector<double> continuity_grid(const Dist& limit) {
  std::vector<double> grid;
  if (limit.is_density()) {
    const double m = mean(limit);
    const double sd = std::sqrt(variance(limit));
    for (int k = 0; k <= 100; ++k) grid.push_back(m + sd * (-4.0 + 8.0 * k / 100.0));
    return grid;
  }
  const std::vector<double> atoms = discontinuity_points(limit);
  grid.push_back(atoms.front() - 1.0);
  for (std::size_t i = 0; i + 1 < atoms.size(); ++i) grid.push_back(0.5 * (atoms[i] + atoms[i + 1]));
  grid.push_back(atoms.back() + 1.0);
  return grid;
}

ConvergenceProbe ConvergenceProbe::standard(const Dist& limit) {
  return {limit, continuity_grid(limit), default_test_functions()};
}

void ConvergenceProbe::validate() const {
  if (grid.empty()) throw Error(ErrorCode::InvalidProbe, "empty continuity grid");
  const std::vector<double> atoms = discontinuity_points(limit);
  for (double x : grid) {
    const auto it = std::lower_bound(atoms.begin(), atoms.end(), x - kAtomTol);
    if (it != atoms.end() && *it <= x + kAtomTol) {
      throw Error(ErrorCode::AtomOnGrid,
                  "grid point " + std::to_string(x) + " is an atom of the limit");
    }
  }
  for (const TestFunction& fn : test_fns) {
    if (!std::isfinite(fn.bound) || !(fn.domain_lo <= fn.domain_hi)) {
      throw Error(ErrorCode::InvalidProbe, "test function '" + fn.name + "' has no finite bound");
    }
    for (int k = 0; k < kBoundSweepPoints; ++k) {
      const double x = fn.domain_lo + (fn.domain_hi - fn.domain_lo) * k / (kBoundSweepPoints - 1);
      if (!(std::abs(fn.f(x)) <= fn.bound * (1.0 + 1e-12))) {
        throw Error(ErrorCode::InvalidProbe,
                    "test function '" + fn.name + "' exceeds its bound at " + std::to_string(x));
      }
    }
  }
}

double cdf_distance(const Dist& mu, const ConvergenceProbe& probe) {
  probe.validate();
  double worst = 0.0;
  for (double x : probe.grid) worst = std::max(worst, std::abs(cdf(mu, x) - cdf(probe.limit, x)));
  return worst;
}

std::vector<double> portmanteau_testfn(const Dist& mu, const ConvergenceProbe& probe) {
  probe.validate();
  std::vector<double> gaps;
  gaps.reserve(probe.test_fns.size());
  for (const TestFunction& fn : probe.test_fns) {
    gaps.push_back(std::abs(expect(mu, fn.f) - expect(probe.limit, fn.f)));
  }
  return gaps;
}

// ---------------------------------------------------------------------------
// Levy metric

namespace {

// CDF with cheap repeated evaluation. Step CDFs are evaluated exactly; a
// density CDF is tabulated once (cubic Hermite on panel masses) over
// mean +/- 12 sd.
class CdfView {
 public:
  explicit CdfView(const Dist& mu) : mu_(mu) {
    if (!mu.is_density()) {
      breaks_ = discontinuity_points(mu);
      return;
    }
    const DensityDist& d = mu.density();
    const auto [lo, hi] = effective_range(mu, kTableHalfWidthSds);
    lo_ = lo;
    step_ = (hi - lo) / static_cast<double>(kCdfTablePanels);
    nodes_.resize(kCdfTablePanels + 1);
    values_.resize(kCdfTablePanels + 1);
    slopes_.resize(kCdfTablePanels + 1);
    values_[0] = cdf(mu, lo);
    for (std::size_t i = 0; i <= kCdfTablePanels; ++i) {
      nodes_[i] = lo + static_cast<double>(i) * step_;
      slopes_[i] = d(nodes_[i]);
      if (i > 0) {
        values_[i] = values_[i - 1] +
                     d.integrate([](double) { return 1.0; }, nodes_[i - 1], nodes_[i], 1e-13);
      }
    }
  }

  bool continuous() const { return !nodes_.empty(); }
  const std::vector<double>& breaks() const { return breaks_; }
  const std::vector<double>& nodes() const { return nodes_; }

  double value(double x) const {
    if (!continuous()) return cdf(mu_, x);
    const double pos = (x - lo_) / step_;
    if (pos < 0.0 || pos > static_cast<double>(kCdfTablePanels)) return cdf(mu_, x);
    const auto i = std::min(static_cast<std::size_t>(pos), kCdfTablePanels - 1);
    const double s = pos - static_cast<double>(i);
    const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
    const double h10 = s * (1 - s) * (1 - s);
    const double h01 = s * s * (3 - 2 * s);
    const double h11 = s * s * (s - 1);
    const double v = h00 * values_[i] + h10 * step_ * slopes_[i] + h01 * values_[i + 1] +
                     h11 * step_ * slopes_[i + 1];
    return std::clamp(v, 0.0, 1.0);
  }

  double left(double x) const { return continuous() ? value(x) : cdf_left(mu_, x); }

 private:
  const Dist& mu_;
  std::vector<double> breaks_;
  double lo_ = 0.0;
  double step_ = 1.0;
  std::vector<double> nodes_;
  std::vector<double> values_;
  std::vector<double> slopes_;
};

// sup_x [F_upper(x) - F_lower(x + shift)] over right-continuous values and
// left limits at every point where either side can change.
double sup_gap(const CdfView& upper, const CdfView& lower, double shift) {
  double worst = 0.0;
  const auto probe = [&](double x) {
    worst = std::max(worst, upper.value(x) - lower.value(x + shift));
    worst = std::max(worst, upper.left(x) - lower.left(x + shift));
  };
  for (double x : upper.breaks()) probe(x);
  for (double x : lower.breaks()) probe(x - shift);
  for (double x : upper.nodes()) probe(x);
  for (double x : lower.nodes()) probe(x - shift);
  return worst;
}

}  // namespace

double levy_metric(const Dist& mu, const Dist& nu, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidTolerance, "tol must be positive");
  const CdfView fm(mu);
  const CdfView fn(nu);
  // eps is admissible iff F_nu(x) - F_mu(x + eps) <= eps and
  // F_mu(y) - F_nu(y + eps) <= eps everywhere (y = x - eps).
  const auto admissible = [&](double eps) {
    return sup_gap(fn, fm, eps) <= eps + kCorridorSlack &&
           sup_gap(fm, fn, eps) <= eps + kCorridorSlack;
  };
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (admissible(mid) ? hi : lo) = mid;
  }
  return hi;
}

// ---------------------------------------------------------------------------
// Boundary-null sets

BoundaryCheck boundary_null_check(const Dist& member, const Dist& limit,
                                  std::span<const HalfOpenInterval> set) {
  std::vector<HalfOpenInterval> parts(set.begin(), set.end());
  std::sort(parts.begin(), parts.end(),
            [](const HalfOpenInterval& l, const HalfOpenInterval& r) { return l.a < r.a; });
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (!(parts[i].a < parts[i].b)) throw Error(ErrorCode::MalformedSet, "interval with a >= b");
    if (i > 0 && parts[i].a < parts[i - 1].b) {
      throw Error(ErrorCode::MalformedSet, "overlapping intervals");
    }
  }
  BoundaryCheck out{0.0, 0.0, 0.0};
  std::vector<double> endpoints;
  for (const auto& part : parts) {
    out.mu_value += interval_prob(member, part.a, part.b);
    out.limit_value += interval_prob(limit, part.a, part.b);
    endpoints.push_back(part.a);
    endpoints.push_back(part.b);
  }
  std::sort(endpoints.begin(), endpoints.end());
  endpoints.erase(std::unique(endpoints.begin(), endpoints.end()), endpoints.end());
  for (double x : endpoints) out.boundary_mass += cdf(limit, x) - cdf_left(limit, x);
  return out;
}

PortmanteauVerdict portmanteau_verdict(const Dist& member, const ConvergenceProbe& probe,
                                       const std::vector<std::vector<HalfOpenInterval>>& sets,
                                       double tol) {
  PortmanteauVerdict v;
  v.cdf_value = cdf_distance(member, probe);
  for (double gap : portmanteau_testfn(member, probe)) v.testfn_value = std::max(v.testfn_value, gap);

  bool any_null_set = false;
  for (const auto& set : sets) {
    const BoundaryCheck check = boundary_null_check(member, probe.limit, set);
    if (check.boundary_mass > 0.0) continue;
    any_null_set = true;
    v.boundary_value = std::max(v.boundary_value, std::abs(check.mu_value - check.limit_value));
  }
  if (!any_null_set) throw Error(ErrorCode::InvalidProbe, "no boundary-null set supplied");

  v.cdf = v.cdf_value <= tol;
  v.testfn = v.testfn_value <= tol;
  v.boundary = v.boundary_value <= tol;
  return v;
}

}  // namespace cltkit
