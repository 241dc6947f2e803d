#ifndef CLTKIT_NUMERICS_HPP
#define CLTKIT_NUMERICS_HPP

#include <compare>
#include <complex>
#include <cstddef>
#include <functional>

namespace cltkit {

using ComplexValue = std::complex<double>;
using RealFn = std::function<double(double)>;
using ComplexFn = std::function<ComplexValue(double)>;

inline constexpr double kDefaultTol = 1e-8;

/// A real number or one of the two infinities.
///
/// Constructing from a double maps +/-inf onto PosInf/NegInf, so a Finite
/// value is always a genuine finite number. NaN is rejected.
class ExtendedReal {
 public:
  enum class Kind { NegInf, Finite, PosInf };

  ExtendedReal(double value);  // NOLINT(google-explicit-constructor)

  static ExtendedReal pos_inf() { return ExtendedReal(Kind::PosInf); }
  static ExtendedReal neg_inf() { return ExtendedReal(Kind::NegInf); }

  Kind kind() const noexcept { return kind_; }
  bool is_finite() const noexcept { return kind_ == Kind::Finite; }
  bool is_pos_inf() const noexcept { return kind_ == Kind::PosInf; }
  bool is_neg_inf() const noexcept { return kind_ == Kind::NegInf; }

  /// Finite value; throws InvalidParams for an infinity.
  double value() const;

  /// +/-infinity as a double for the infinite kinds.
  double as_double() const noexcept;

  friend bool operator==(const ExtendedReal& lhs, const ExtendedReal& rhs) noexcept;
  friend std::weak_ordering operator<=>(const ExtendedReal& lhs, const ExtendedReal& rhs) noexcept;

 private:
  explicit ExtendedReal(Kind kind) : kind_(kind) {}

  Kind kind_ = Kind::Finite;
  double value_ = 0.0;
};

/// Integration interval; lo > hi is allowed and means the negated integral
/// over the reversed interval.
struct OrientedInterval {
  ExtendedReal lo;
  ExtendedReal hi;

  OrientedInterval reversed() const { return {hi, lo}; }
};

/// Adaptive Gauss-Kronrod (7/15) quadrature over an oriented interval.
///
/// Infinite endpoints are handled by truncating at a distance R that doubles
/// from 16 until the last panel contributes less than tol/4. Throws
/// InvalidTolerance for tol <= 0 and NonConvergence when the refinement or
/// truncation budget runs out.
double integrate_real(const RealFn& f, const OrientedInterval& iv, double tol = kDefaultTol);

/// Componentwise integral of a complex-valued integrand.
ComplexValue integrate_complex(const ComplexFn& f, const OrientedInterval& iv,
                               double tol = kDefaultTol);

/// Integral over [a, +inf) of a function that changes sign at the abscissae
/// zeros(0) < zeros(1) < ... . Between-zero pieces are summed and the partial
/// sums are accelerated by repeated averaging (Euler transform).
///
/// Throws NotOscillatory when the pieces do not alternate in sign and
/// NonConvergence when 10^4 half-periods are not enough.
double integrate_oscillatory(const RealFn& f, const std::function<double(std::size_t)>& zeros,
                             const OrientedInterval& iv, double tol = kDefaultTol);

/// sin(x)/x, continuous at 0 (Taylor series on |x| <= 1e-4).
double sinc(double x);

/// Integral of sinc over (0, +inf) by integrate_oscillatory.
double dirichlet_integral(double tol = kDefaultTol);

/// E[X^k] for X standard normal, computed by quadrature over the real line.
double gaussian_moment(unsigned k, double tol = kDefaultTol);

/// |e^{ix} - sum_{j<=n} (ix)^j / j!|.
double exp_taylor_remainder(double x, unsigned n);

}  // namespace cltkit

#endif  // CLTKIT_NUMERICS_HPP
