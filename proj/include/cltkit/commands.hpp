#ifndef CLTKIT_COMMANDS_HPP
#define CLTKIT_COMMANDS_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cltkit/distribution.hpp"
#include "cltkit/numerics.hpp"

// Command implementations behind the cltkit CLI. Each writes its result to
// the given stream (or to `out` when set).
namespace cltkit::commands {

/// "preset:bernoulli", "preset:die", "preset:normal", "preset:point0", or a
/// path to a discrete-dist file.
Dist resolve_dist(const std::string& source);

struct CltArgs {
  std::string base = "preset:bernoulli";
  std::vector<std::size_t> ns{1, 4, 16, 64, 256};
  std::optional<std::size_t> mc;
  std::uint64_t seed = 0;
  std::optional<std::string> out;
  double tol = kDefaultTol;
};
void clt(const CltArgs& args, std::ostream& os);

struct CharfunArgs {
  std::string dist = "preset:bernoulli";
  double tmin = -10.0;
  double tmax = 10.0;
  std::size_t steps = 401;
  std::optional<std::string> out;
  double tol = kDefaultTol;
};
void charfun(const CharfunArgs& args, std::ostream& os);

struct InvertArgs {
  std::string dist = "preset:normal";
  double a = -1.96;
  double b = 1.96;
  std::optional<double> horizon;
  bool damping = false;
  double tol = kDefaultTol;
};
void invert(const InvertArgs& args, std::ostream& os);

struct WeakdistArgs {
  std::string left;
  std::string right;
  double tol = kDefaultTol;
};
void weakdist(const WeakdistArgs& args, std::ostream& os);

struct IntegrateArgs {
  std::string fn = "preset:sinc";
  double tol = kDefaultTol;
};
void integrate(const IntegrateArgs& args, std::ostream& os);

struct SpaceArgs {
  std::string demo = "die";
};
void space(const SpaceArgs& args, std::ostream& os);

}  // namespace cltkit::commands

#endif  // CLTKIT_COMMANDS_HPP
