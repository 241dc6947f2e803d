#include "cltkit/clt_harness.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <random>
#include <string>

#include "cltkit/charfun.hpp"
#include "cltkit/dist_io.hpp"
#include "cltkit/error.hpp"
#include "cltkit/weak_convergence.hpp"

namespace cltkit {

Dist center(const Dist& mu) { return shift_scale(mu, mean(mu), 1.0); }

CltExperiment CltExperiment::make(const Dist& base, std::vector<std::size_t> ns) {
  Dist centered = std::abs(mean(base)) > 1e-12 ? center(base) : base;
  const double sigma2 = variance(centered);
  if (!(sigma2 > 0.0)) throw Error(ErrorCode::NonZeroVariance, "base variance must be positive");
  CltExperiment exp{std::move(centered), 0.0, {}, {}, {}, 0, std::nullopt, kDefaultTol};
  exp.sigma2 = sigma2;
  exp.ns = std::move(ns);
  exp.t_grid = {0.25, 0.5, 1.0, 2.0, 4.0};
  exp.grid = continuity_grid(standard_normal());
  exp.validate();
  return exp;
}

void CltExperiment::validate() const {
  base.discrete();
  const double m = mean(base);
  if (std::abs(m) > 1e-9) throw Error(ErrorCode::NonZeroMean, "base mean is " + std::to_string(m));
  const double s2 = variance(base);
  if (!(s2 > 0.0)) throw Error(ErrorCode::NonZeroVariance, "base variance must be positive");
  if (std::abs(s2 - sigma2) > 1e-9) {
    throw Error(ErrorCode::InvalidParams, "sigma2 disagrees with the base variance");
  }
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (ns[i] == 0 || (i > 0 && ns[i] <= ns[i - 1])) {
      throw Error(ErrorCode::InvalidParams, "ns must be strictly increasing and >= 1");
    }
  }
  if (t_grid.empty() || grid.empty()) throw Error(ErrorCode::InvalidParams, "empty grid");
  if (mc_draws && *mc_draws == 0) throw Error(ErrorCode::InvalidParams, "mc draws must be >= 1");
}

Dist normalized_sum_monte_carlo(const Dist& base, std::size_t n, std::size_t draws,
                                std::uint64_t seed) {
  const DiscreteDist& d = base.discrete();
  if (n == 0 || draws == 0) throw Error(ErrorCode::OutOfRange, "n and draws must be >= 1");
  const double scale = std::sqrt(static_cast<double>(n) * variance(base));
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32U),
                    static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(n >> 32U)};
  std::mt19937_64 rng(seq);
  std::vector<double> samples(draws);
  for (double& s : samples) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += d.quantile(open_unit_uniform(rng()));
    s = sum / scale;
  }
  return EmpiricalDist(std::move(samples));
}

ConvergenceReport run_clt(const CltExperiment& exp) {
  exp.validate();
  const Dist limit = standard_normal();
  const ConvergenceProbe probe{limit, exp.grid, {}};
  ConvergenceReport report;
  for (std::size_t n : exp.ns) {
    const Dist sum = exp.mc_draws ? normalized_sum_monte_carlo(exp.base, n, *exp.mc_draws, exp.seed)
                                  : iid_sum_normalized(exp.base, n);
    ConvergenceRow row{n, cdf_distance(sum, probe), levy_metric(sum, limit, exp.tol), 0.0};
    for (double t : exp.t_grid) {
      row.charfun_sup = std::max(row.charfun_sup, std::abs(charfun(sum, t) - normal_charfun(t)));
    }
    report.rows.push_back(row);
  }
  return report;
}

std::vector<CurvePoint> charfun_convergence_curve(const CltExperiment& exp) {
  exp.validate();
  std::vector<CurvePoint> curve;
  for (std::size_t n : exp.ns) {
    const double scale = std::sqrt(static_cast<double>(n) * exp.sigma2);
    for (double t : exp.t_grid) {
      const ComplexValue phi_n = int_pow(charfun(exp.base, t / scale), n);
      curve.push_back({n, t, std::abs(phi_n - normal_charfun(t))});
    }
  }
  return curve;
}

void emit_csv(const ConvergenceReport& report, std::ostream& out) {
  out << "n,cdf_sup,levy,charfun_sup\n";
  for (const ConvergenceRow& row : report.rows) {
    out << row.n << ',' << format_significant(row.cdf_sup, 12) << ','
        << format_significant(row.levy, 12) << ',' << format_significant(row.charfun_sup, 12)
        << '\n';
  }
  out.flush();
  if (!out) throw Error(ErrorCode::IoFailure, "failed writing report");
}

void emit_csv(const ConvergenceReport& report, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot open " + path);
  emit_csv(report, out);
}

}  // namespace cltkit
