// cltkit command-line front end.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>

#include "cltkit/commands.hpp"
#include "cltkit/error.hpp"

namespace cmd = cltkit::commands;

int main(int argc, char** argv) {
  CLI::App app{"Characteristic functions, weak convergence and CLT experiments"};
  app.require_subcommand(1);

  double tol = cltkit::kDefaultTol;
  std::uint64_t seed = 0;
  app.add_option("--tol", tol, "Absolute tolerance")->capture_default_str();
  app.add_option("--seed", seed, "Random seed")->capture_default_str();
  app.fallthrough();

  cmd::CltArgs clt;
  auto* clt_cmd = app.add_subcommand("clt", "Convergence of normalized i.i.d. sums to N(0,1)");
  clt_cmd->add_option("--base", clt.base, "Discrete-dist file or preset:bernoulli|preset:die")
      ->capture_default_str();
  clt_cmd->add_option("--ns", clt.ns, "Sample sizes, strictly increasing")->delimiter(',');
  clt_cmd->add_option("--mc", clt.mc, "Monte Carlo draws per n instead of exact convolution");
  clt_cmd->add_option("--out", clt.out, "Write the CSV report here");

  cmd::CharfunArgs cf;
  auto* cf_cmd = app.add_subcommand("charfun", "Characteristic function on a t grid (t,re,im)");
  cf_cmd->add_option("--dist", cf.dist, "Discrete-dist file or preset")->capture_default_str();
  cf_cmd->add_option("--tmin", cf.tmin)->capture_default_str();
  cf_cmd->add_option("--tmax", cf.tmax)->capture_default_str();
  cf_cmd->add_option("--steps", cf.steps)->capture_default_str();
  cf_cmd->add_option("--out", cf.out, "Write the CSV here");

  cmd::InvertArgs inv;
  auto* inv_cmd = app.add_subcommand("invert", "Recover mu((a,b]) from the characteristic function");
  inv_cmd->add_option("--dist", inv.dist, "Discrete-dist file or preset")->capture_default_str();
  inv_cmd->add_option("--a", inv.a)->required();
  inv_cmd->add_option("--b", inv.b)->required();
  inv_cmd->add_option("--T", inv.horizon, "Truncation; chosen automatically when omitted");
  inv_cmd->add_flag("--damping", inv.damping, "Gaussian damping of the integrand");

  cmd::WeakdistArgs wd;
  auto* wd_cmd = app.add_subcommand("weakdist", "Distances between two discrete distributions");
  wd_cmd->add_option("--left", wd.left)->required();
  wd_cmd->add_option("--right", wd.right)->required();

  cmd::IntegrateArgs integ;
  auto* int_cmd = app.add_subcommand("integrate", "Reference improper integrals");
  int_cmd->add_option("--fn", integ.fn, "preset:sinc or gauss_moment:<k>")->capture_default_str();

  cmd::SpaceArgs sp;
  auto* sp_cmd = app.add_subcommand("space", "Finite probability space demonstration");
  sp_cmd->add_option("--demo", sp.demo)->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*clt_cmd) {
      clt.tol = tol;
      clt.seed = seed;
      cmd::clt(clt, std::cout);
    } else if (*cf_cmd) {
      cf.tol = tol;
      cmd::charfun(cf, std::cout);
    } else if (*inv_cmd) {
      inv.tol = tol;
      cmd::invert(inv, std::cout);
    } else if (*wd_cmd) {
      wd.tol = tol;
      cmd::weakdist(wd, std::cout);
    } else if (*int_cmd) {
      integ.tol = tol;
      cmd::integrate(integ, std::cout);
    } else if (*sp_cmd) {
      cmd::space(sp, std::cout);
    }
  } catch (const cltkit::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: Internal: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
