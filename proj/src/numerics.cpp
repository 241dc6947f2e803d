#include "cltkit/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <string>
#include <vector>

#include "cltkit/error.hpp"

namespace cltkit {

ExtendedReal::ExtendedReal(double value) {
  if (std::isnan(value)) throw Error(ErrorCode::InvalidParams, "extended real from NaN");
  if (std::isinf(value)) {
    kind_ = value > 0 ? Kind::PosInf : Kind::NegInf;
  } else {
    value_ = value;
  }
}

double ExtendedReal::value() const {
  if (!is_finite()) throw Error(ErrorCode::InvalidParams, "value() of an infinite endpoint");
  return value_;
}

double ExtendedReal::as_double() const noexcept {
  switch (kind_) {
    case Kind::NegInf: return -std::numeric_limits<double>::infinity();
    case Kind::PosInf: return std::numeric_limits<double>::infinity();
    case Kind::Finite: break;
  }
  return value_;
}

bool operator==(const ExtendedReal& lhs, const ExtendedReal& rhs) noexcept {
  return lhs.kind_ == rhs.kind_ && (!lhs.is_finite() || lhs.value_ == rhs.value_);
}

std::weak_ordering operator<=>(const ExtendedReal& lhs, const ExtendedReal& rhs) noexcept {
  if (lhs.kind_ != rhs.kind_) return lhs.kind_ <=> rhs.kind_;
  if (!lhs.is_finite() || lhs.value_ == rhs.value_) return std::weak_ordering::equivalent;
  return lhs.value_ < rhs.value_ ? std::weak_ordering::less : std::weak_ordering::greater;
}

namespace {

// Kronrod 15-point abscissae/weights and the embedded 7-point Gauss weights.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr std::size_t kMaxSegments = 50000;
constexpr double kInitialTruncation = 16.0;
constexpr int kMaxTruncationDoublings = 48;

struct Segment {
  double a;
  double b;
  double value;
  double error;
  double abs_value;

  bool operator<(const Segment& other) const { return error < other.error; }
};

double checked(const RealFn& f, double x) {
  const double y = f(x);
  if (!std::isfinite(y)) {
    throw Error(ErrorCode::NonConvergence, "integrand is not finite at x=" + std::to_string(x));
  }
  return y;
}

Segment gauss_kronrod(const RealFn& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = checked(f, center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  double abs_sum = std::abs(fc) * kWgk[7];
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = checked(f, center - dx);
    const double f2 = checked(f, center + dx);
    kronrod += kWgk[j] * (f1 + f2);
    abs_sum += kWgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half), abs_sum * std::abs(half)};
}

// Global adaptive bisection on a finite interval with a < b.
double adaptive_finite(const RealFn& f, double a, double b, double tol) {
  std::priority_queue<Segment> work;
  std::vector<Segment> settled;
  Segment first = gauss_kronrod(f, a, b);
  double total_error = first.error;
  double total_abs = first.abs_value;
  work.push(first);
  std::size_t count = 1;

  const double eps = std::numeric_limits<double>::epsilon();
  while (!work.empty() && total_error > std::max(tol, 50.0 * eps * total_abs)) {
    if (count >= kMaxSegments) {
      throw Error(ErrorCode::NonConvergence, "quadrature subdivision budget exhausted on [" +
                                                 std::to_string(a) + ", " + std::to_string(b) +
                                                 "]");
    }
    Segment worst = work.top();
    work.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // Too narrow to split in double precision.
      settled.push_back(worst);
      continue;
    }
    Segment left = gauss_kronrod(f, worst.a, mid);
    Segment right = gauss_kronrod(f, mid, worst.b);
    total_error += left.error + right.error - worst.error;
    total_abs += left.abs_value + right.abs_value - worst.abs_value;
    work.push(left);
    work.push(right);
    ++count;
  }
  if (work.empty()) {
    double err = 0.0;
    for (const auto& s : settled) err += s.error;
    if (err > std::max(tol, 50.0 * eps * total_abs)) {
      throw Error(ErrorCode::NonConvergence, "quadrature cannot reach the requested tolerance");
    }
  }

  double sum = 0.0;
  while (!work.empty()) {
    sum += work.top().value;
    work.pop();
  }
  for (const auto& s : settled) sum += s.value;
  return sum;
}

// Integral over [a, +inf) by progressive truncation.
double adaptive_upper_tail(const RealFn& f, double a, double tol) {
  double reach = kInitialTruncation;
  double total = adaptive_finite(f, a, a + reach, tol / 4.0);
  double panel_tol = tol / 8.0;
  int small_panels = 0;
  for (int step = 0; step < kMaxTruncationDoublings; ++step) {
    const double panel = adaptive_finite(f, a + reach, a + 2.0 * reach, panel_tol);
    total += panel;
    reach *= 2.0;
    panel_tol /= 2.0;
    small_panels = std::abs(panel) < tol / 4.0 ? small_panels + 1 : 0;
    if (small_panels == 2) return total;
  }
  throw Error(ErrorCode::NonConvergence, "improper integral tail did not settle");
}

}  // namespace

double integrate_real(const RealFn& f, const OrientedInterval& iv, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidTolerance, "tol must be positive");
  const auto& lo = iv.lo;
  const auto& hi = iv.hi;
  if (lo == hi) return 0.0;
  if (lo > hi) return -integrate_real(f, iv.reversed(), tol);

  if (lo.is_finite() && hi.is_finite()) return adaptive_finite(f, lo.value(), hi.value(), tol);
  if (lo.is_finite()) return adaptive_upper_tail(f, lo.value(), tol);

  const RealFn reflected = [&f](double u) { return f(-u); };
  if (hi.is_finite()) return adaptive_upper_tail(reflected, -hi.value(), tol);
  return adaptive_upper_tail(reflected, 0.0, tol / 2.0) + adaptive_upper_tail(f, 0.0, tol / 2.0);
}

ComplexValue integrate_complex(const ComplexFn& f, const OrientedInterval& iv, double tol) {
  const double re = integrate_real([&f](double x) { return f(x).real(); }, iv, tol);
  const double im = integrate_real([&f](double x) { return f(x).imag(); }, iv, tol);
  return {re, im};
}

namespace {

constexpr std::size_t kMaxHalfPeriods = 10000;
constexpr std::size_t kAveragingDepth = 24;
constexpr std::size_t kMinTerms = 8;

// Repeated averaging of the trailing partial sums.
double euler_estimate(const std::vector<double>& partial) {
  const std::size_t depth = std::min(kAveragingDepth, partial.size() - 1);
  std::vector<double> row(partial.end() - static_cast<std::ptrdiff_t>(depth + 1), partial.end());
  while (row.size() > 1) {
    for (std::size_t i = 0; i + 1 < row.size(); ++i) row[i] = 0.5 * (row[i] + row[i + 1]);
    row.pop_back();
  }
  return row.front();
}

}  // namespace

double integrate_oscillatory(const RealFn& f, const std::function<double(std::size_t)>& zeros,
                             const OrientedInterval& iv, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidTolerance, "tol must be positive");
  if (iv.lo.is_pos_inf() && iv.hi.is_finite()) {
    return -integrate_oscillatory(f, zeros, iv.reversed(), tol);
  }
  if (!iv.hi.is_pos_inf() || !iv.lo.is_finite()) {
    throw Error(ErrorCode::InvalidParams, "oscillatory integral needs [a, +inf) with finite a");
  }
  const double a = iv.lo.value();

  std::size_t k = 0;
  while (zeros(k) <= a) {
    if (++k > kMaxHalfPeriods) throw Error(ErrorCode::InvalidParams, "no sign change beyond a");
  }

  const double piece_tol = tol * 1e-3;
  std::vector<double> partial;
  partial.push_back(integrate_real(f, {a, zeros(k)}, piece_tol));

  double previous_term = 0.0;
  double previous_estimate = std::numeric_limits<double>::quiet_NaN();
  int settled = 0;
  for (std::size_t j = 1; j <= kMaxHalfPeriods; ++j, ++k) {
    const double left = zeros(k);
    const double right = zeros(k + 1);
    if (!(right > left)) throw Error(ErrorCode::InvalidParams, "zeros must be increasing");
    const double term = integrate_real(f, {left, right}, piece_tol);
    partial.push_back(partial.back() + term);

    if (term == 0.0) return partial.back();
    if (j > 1 && previous_term != 0.0 && std::signbit(term) == std::signbit(previous_term)) {
      throw Error(ErrorCode::NotOscillatory, "between-zero pieces do not alternate in sign");
    }
    previous_term = term;

    if (partial.size() < kMinTerms) continue;
    const double estimate = euler_estimate(partial);
    settled = std::abs(estimate - previous_estimate) <= tol / 2.0 ? settled + 1 : 0;
    previous_estimate = estimate;
    if (settled == 2) return estimate;
  }
  throw Error(ErrorCode::NonConvergence, "alternating-series acceleration stalled");
}

double sinc(double x) {
  if (std::abs(x) <= 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

double dirichlet_integral(double tol) {
  return integrate_oscillatory(
      sinc, [](std::size_t k) { return static_cast<double>(k) * std::numbers::pi; },
      {0.0, ExtendedReal::pos_inf()}, tol);
}

double gaussian_moment(unsigned k, double tol) {
  const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  return integrate_real(
      [k, norm](double x) { return std::pow(x, static_cast<int>(k)) * norm * std::exp(-0.5 * x * x); },
      {ExtendedReal::neg_inf(), ExtendedReal::pos_inf()}, tol);
}

double exp_taylor_remainder(double x, unsigned n) {
  if (x == 0.0) return 0.0;
  const ComplexValue ix(0.0, x);
  ComplexValue term(1.0, 0.0);
  ComplexValue head(0.0, 0.0);
  for (unsigned j = 0; j <= n; ++j) {
    head += term;
    term *= ix / static_cast<double>(j + 1);
  }
  if (std::abs(x) >= static_cast<double>(n) + 2.0) return std::abs(std::exp(ix) - head);

  // Tail terms shrink monotonically here; summing them avoids the
  // cancellation in e^{ix} - head.
  ComplexValue tail(0.0, 0.0);
  for (unsigned j = n + 1; j < n + 400; ++j) {
    tail += term;
    if (std::abs(term) <= 1e-18 * std::abs(tail)) break;
    term *= ix / static_cast<double>(j + 1);
  }
  return std::abs(tail);
}

}  // namespace cltkit
