#include "cltkit/commands.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>

#include "cltkit/charfun.hpp"
#include "cltkit/clt_harness.hpp"
#include "cltkit/dist_io.hpp"
#include "cltkit/error.hpp"
#include "cltkit/finite_space.hpp"
#include "cltkit/weak_convergence.hpp"

namespace cltkit::commands {

namespace {

constexpr std::string_view kPreset = "preset:";

template <typename Body>
void with_output(const std::optional<std::string>& path, std::ostream& os, Body&& body) {
  if (!path) {
    body(os);
    return;
  }
  std::ofstream file(*path, std::ios::binary);
  if (!file) throw Error(ErrorCode::IoFailure, "cannot open " + *path);
  body(file);
  file.flush();
  if (!file) throw Error(ErrorCode::IoFailure, "failed writing " + *path);
}

}  // namespace

Dist resolve_dist(const std::string& source) {
  if (!source.starts_with(kPreset)) return read_discrete_file(source);
  const std::string name = source.substr(kPreset.size());
  if (name == "bernoulli") return discrete({{-1.0, 0.5}, {1.0, 0.5}});
  if (name == "die") return uniform_on({1, 2, 3, 4, 5, 6});
  if (name == "normal") return standard_normal();
  if (name == "point0") return point_mass(0.0);
  throw Error(ErrorCode::InvalidParams, "unknown preset '" + name + "'");
}

void clt(const CltArgs& args, std::ostream& os) {
  CltExperiment exp = CltExperiment::make(resolve_dist(args.base), args.ns);
  exp.seed = args.seed;
  exp.mc_draws = args.mc;
  exp.tol = args.tol;
  const ConvergenceReport report = run_clt(exp);
  with_output(args.out, os, [&](std::ostream& out) { emit_csv(report, out); });
}

void charfun(const CharfunArgs& args, std::ostream& os) {
  if (args.steps < 2 || !(args.tmin < args.tmax)) {
    throw Error(ErrorCode::InvalidParams, "need tmin < tmax and at least 2 steps");
  }
  const CharFn phi = CharFn::of(resolve_dist(args.dist), args.tol);
  with_output(args.out, os, [&](std::ostream& out) {
    out << "t,re,im\n";
    for (std::size_t k = 0; k < args.steps; ++k) {
      const double t = args.tmin + (args.tmax - args.tmin) * static_cast<double>(k) /
                                       static_cast<double>(args.steps - 1);
      const ComplexValue v = phi(t);
      out << format_significant(t, 12) << ',' << format_significant(v.real(), 12) << ','
          << format_significant(v.imag(), 12) << '\n';
    }
  });
}

void invert(const InvertArgs& args, std::ostream& os) {
  const Dist mu = resolve_dist(args.dist);
  const CharFn phi = mu.is_density() ? CharFn::of(mu, args.tol * 1e-2) : CharFn::of(mu);
  InversionOptions options;
  options.horizon = args.horizon;
  options.tol = args.tol;
  options.gaussian_damping = args.damping;
  os << format_shortest(levy_invert(phi, args.a, args.b, options)) << '\n';
}

void weakdist(const WeakdistArgs& args, std::ostream& os) {
  const Dist left = read_discrete_file(args.left);
  const Dist right = read_discrete_file(args.right);
  const ConvergenceProbe probe = ConvergenceProbe::standard(right);
  double testfn_max = 0.0;
  for (double gap : portmanteau_testfn(left, probe)) testfn_max = std::max(testfn_max, gap);
  // Both CDFs are step functions, so the sup over all x is attained at an atom
  // of one side. This is the full Kolmogorov distance, not a grid restriction.
  double cdf_sup = 0.0;
  for (const Dist* side : {&left, &right}) {
    for (const Atom& a : side->discrete().atoms()) {
      cdf_sup = std::max(cdf_sup, std::abs(cdf(left, a.point) - cdf(right, a.point)));
    }
  }
  os << "metric,value\n";
  os << "cdf_sup," << format_significant(cdf_sup, 12) << '\n';
  os << "levy," << format_significant(levy_metric(left, right, args.tol), 12) << '\n';
  os << "testfn_max," << format_significant(testfn_max, 12) << '\n';
}

void integrate(const IntegrateArgs& args, std::ostream& os) {
  if (args.fn == "preset:sinc") {
    os << format_shortest(dirichlet_integral(args.tol)) << '\n';
    return;
  }
  constexpr std::string_view kMoment = "gauss_moment:";
  if (args.fn.starts_with(kMoment)) {
    const std::string_view digits = std::string_view(args.fn).substr(kMoment.size());
    unsigned k = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (ec != std::errc{} || ptr != digits.data() + digits.size()) {
      throw Error(ErrorCode::InvalidParams, "bad moment order in '" + args.fn + "'");
    }
    os << format_shortest(gaussian_moment(k, args.tol)) << '\n';
    return;
  }
  throw Error(ErrorCode::InvalidParams, "unknown integrand '" + args.fn + "'");
}

void space(const SpaceArgs& args, std::ostream& os) {
  if (args.demo != "die") throw Error(ErrorCode::InvalidParams, "unknown demo '" + args.demo + "'");
  const FiniteProbSpace die = FiniteProbSpace::uniform(6);
  const FiniteRV spots{{1, 2, 3, 4, 5, 6}};
  const ProductSpace two = product(die, die, spots, spots);
  const std::vector<FiniteRV> pair{two.first, two.second};
  const std::vector<FiniteRV> same{two.first, two.first};
  const EventFamily even_odd = generate_sigma_algebra(6, {{1, 3, 5}});

  os << "quantity,value\n";
  os << "mean," << format_shortest(expectation(die, spots)) << '\n';
  os << "variance," << format_shortest(variance(die, spots)) << '\n';
  os << "two_dice_independent," << (are_independent(two.space, pair) ? "true" : "false") << '\n';
  os << "same_die_independent," << (are_independent(two.space, same) ? "true" : "false") << '\n';
  os << "even_odd_sigma_algebra_size," << even_odd.size() << '\n';
  os << "even_odd_closed," << (even_odd.is_sigma_algebra() ? "true" : "false") << '\n';
}

}  // namespace cltkit::commands
