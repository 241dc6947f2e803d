#ifndef CLTKIT_CHARFUN_HPP
#define CLTKIT_CHARFUN_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>

#include "cltkit/distribution.hpp"
#include "cltkit/numerics.hpp"

namespace cltkit {

/// phi(t) = E[e^{itX}]: exact sum for discrete, quadrature of
/// (cos(tx) f(x), sin(tx) f(x)) for densities, and the sample average for
/// empirical distributions.
ComplexValue charfun(const Dist& mu, double t, double tol = kDefaultTol);

/// e^{-t^2/2}, the standard normal characteristic function.
ComplexValue normal_charfun(double t);

/// A characteristic function as a callable, either backed by a distribution
/// or given in closed form.
class CharFn {
 public:
  using Eval = std::function<ComplexValue(double)>;

  CharFn(std::string label, Eval eval) : label_(std::move(label)), eval_(std::move(eval)) {}

  static CharFn of(const Dist& mu, double tol = kDefaultTol);
  static CharFn standard_normal();

  ComplexValue operator()(double t) const { return eval_(t); }
  const std::string& label() const noexcept { return label_; }

 private:
  std::string label_;
  Eval eval_;
};

/// Product of the characteristic functions of independent summands.
ComplexValue charfun_of_sum(std::span<const Dist> mus, double t, double tol = kDefaultTol);

/// z^n by binary powering.
ComplexValue int_pow(ComplexValue z, std::size_t n);

/// |phi(t) - (1 - sigma^2 t^2 / 2)| for a centered mu. Throws NonZeroMean.
double second_order_check(const Dist& mu, double t);

/// E[min(|tX|^3 / 6, |tX|^2)], the bound second_order_check must respect.
double second_order_bound(const Dist& mu, double t);

struct InversionOptions {
  /// Truncation T of the inversion integral; chosen automatically when empty
  /// by doubling from 64 until two results differ by less than tol
  /// (capped at 1e5).
  std::optional<double> horizon;
  double tol = kDefaultTol;
  /// Multiply the integrand by exp(-1e-6 t^2), which tames the slowly
  /// decaying phi of lattice distributions.
  bool gaussian_damping = false;
};

/// (1 / 2pi) * integral over [-T, T] of (e^{-ita} - e^{-itb}) / (it) * phi(t) dt.
///
/// For endpoints that carry no mass this tends to mu((a, b]) as T grows; an
/// atom at an endpoint contributes half its weight instead. Throws
/// DegenerateInterval for a >= b and NonConvergence.
double levy_invert(const CharFn& phi, double a, double b, const InversionOptions& options = {});
double levy_invert(const CharFn& phi, double a, double b, double horizon,
                   double tol = kDefaultTol);

/// max over t_grid of |phi_mu(t) - phi_nu(t)|.
double charfun_distance(const Dist& mu, const Dist& nu, std::span<const double> t_grid,
                        double tol = kDefaultTol);

}  // namespace cltkit

#endif  // CLTKIT_CHARFUN_HPP
