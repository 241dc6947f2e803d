#include "cltkit/charfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "cltkit/error.hpp"

namespace cltkit {

ComplexValue charfun(const Dist& mu, double t, double tol) {
  return mu.visit([t, tol](const auto& d) -> ComplexValue {
    using T = std::decay_t<decltype(d)>;
    if constexpr (std::is_same_v<T, DiscreteDist>) {
      double re = 0.0, im = 0.0;
      for (const Atom& a : d.atoms()) {
        re += a.weight * std::cos(t * a.point);
        im += a.weight * std::sin(t * a.point);
      }
      return {re, im};
    } else if constexpr (std::is_same_v<T, DensityDist>) {
      const double re = d.integrate([t](double x) { return std::cos(t * x); }, tol);
      const double im = d.integrate([t](double x) { return std::sin(t * x); }, tol);
      return {re, im};
    } else {
      double re = 0.0, im = 0.0;
      for (double x : d.samples()) {
        re += std::cos(t * x);
        im += std::sin(t * x);
      }
      const auto n = static_cast<double>(d.size());
      return {re / n, im / n};
    }
  });
}

ComplexValue normal_charfun(double t) { return {std::exp(-0.5 * t * t), 0.0}; }

CharFn CharFn::of(const Dist& mu, double tol) {
  return CharFn("dist", [mu, tol](double t) { return charfun(mu, t, tol); });
}

CharFn CharFn::standard_normal() { return CharFn("normal", normal_charfun); }

ComplexValue charfun_of_sum(std::span<const Dist> mus, double t, double tol) {
  if (mus.empty()) throw Error(ErrorCode::InvalidParams, "need at least one summand");
  ComplexValue product(1.0, 0.0);
  for (const Dist& mu : mus) product *= charfun(mu, t, tol);
  return product;
}

ComplexValue int_pow(ComplexValue z, std::size_t n) {
  ComplexValue result(1.0, 0.0);
  while (n > 0) {
    if (n & 1U) result *= z;
    n >>= 1U;
    if (n > 0) z *= z;
  }
  return result;
}

double second_order_check(const Dist& mu, double t) {
  const double m = mean(mu);
  if (std::abs(m) > 1e-9) throw Error(ErrorCode::NonZeroMean, "mean is " + std::to_string(m));
  const double sigma2 = variance(mu);
  return std::abs(charfun(mu, t) - ComplexValue(1.0 - 0.5 * sigma2 * t * t, 0.0));
}

double second_order_bound(const Dist& mu, double t) {
  return expect(mu, [t](double x) {
    const double u = std::abs(t * x);
    return std::min(u * u * u / 6.0, u * u);
  });
}

namespace {

constexpr double kDampingEps = 1e-6;
constexpr double kMaxPanelWidth = 0.5;
constexpr double kAutoStart = 64.0;
constexpr double kAutoCap = 1e5;

// (e^{-ita} - e^{-itb}) / (it), continuous at t = 0.
ComplexValue inversion_kernel(double t, double a, double b) {
  const double reach = std::max(std::abs(a), std::abs(b));
  if (std::abs(t) * reach < 1e-4) {
    return {(b - a) - t * t * (b * b * b - a * a * a) / 6.0, -0.5 * t * (b * b - a * a)};
  }
  return {(std::sin(t * b) - std::sin(t * a)) / t, (std::cos(t * b) - std::cos(t * a)) / t};
}

double invert_truncated(const CharFn& phi, double a, double b, double horizon, double tol,
                        bool damping) {
  const RealFn integrand = [&](double t) {
    double v = (inversion_kernel(t, a, b) * phi(t)).real();
    if (damping) v *= std::exp(-kDampingEps * t * t);
    return v;
  };
  const double reach = std::max({std::abs(a), std::abs(b), 1.0});
  const double width = std::min(kMaxPanelWidth, std::numbers::pi / reach);
  const auto panels = static_cast<std::size_t>(std::ceil(2.0 * horizon / width));
  const double step = 2.0 * horizon / static_cast<double>(panels);
  const double panel_tol = tol * 2.0 * std::numbers::pi / static_cast<double>(panels);
  double total = 0.0;
  for (std::size_t i = 0; i < panels; ++i) {
    const double lo = -horizon + static_cast<double>(i) * step;
    const double hi = (i + 1 == panels) ? horizon : lo + step;
    total += integrate_real(integrand, {lo, hi}, panel_tol);
  }
  return total / (2.0 * std::numbers::pi);
}

}  // namespace

double levy_invert(const CharFn& phi, double a, double b, const InversionOptions& options) {
  if (!(a < b)) throw Error(ErrorCode::DegenerateInterval, "inversion needs a < b");
  if (!(options.tol > 0.0)) throw Error(ErrorCode::InvalidTolerance, "tol must be positive");
  if (options.horizon) {
    if (!(*options.horizon > 0.0) || !std::isfinite(*options.horizon)) {
      throw Error(ErrorCode::InvalidParams, "T must be positive and finite");
    }
    return invert_truncated(phi, a, b, *options.horizon, options.tol, options.gaussian_damping);
  }
  double horizon = kAutoStart;
  double previous = invert_truncated(phi, a, b, horizon, options.tol, options.gaussian_damping);
  while (horizon < kAutoCap) {
    horizon = std::min(2.0 * horizon, kAutoCap);
    const double current =
        invert_truncated(phi, a, b, horizon, options.tol, options.gaussian_damping);
    if (std::abs(current - previous) < options.tol) return current;
    previous = current;
  }
  throw Error(ErrorCode::NonConvergence, "inversion did not settle before T = 1e5");
}

double levy_invert(const CharFn& phi, double a, double b, double horizon, double tol) {
  InversionOptions options;
  options.horizon = horizon;
  options.tol = tol;
  return levy_invert(phi, a, b, options);
}

double charfun_distance(const Dist& mu, const Dist& nu, std::span<const double> t_grid,
                        double tol) {
  if (t_grid.empty()) throw Error(ErrorCode::InvalidParams, "empty t grid");
  double worst = 0.0;
  for (double t : t_grid) worst = std::max(worst, std::abs(charfun(mu, t, tol) - charfun(nu, t, tol)));
  return worst;
}

}  // namespace cltkit
