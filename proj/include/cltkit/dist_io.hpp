#ifndef CLTKIT_DIST_IO_HPP
#define CLTKIT_DIST_IO_HPP

#include <iosfwd>
#include <string>

#include "cltkit/distribution.hpp"

namespace cltkit {

// Text format for discrete distributions:
//
//   # discrete-dist v1
//   -1,0.5
//   1,0.5
//
// Blank lines are ignored. Numbers are written in shortest round-trip form,
// so write_discrete followed by read_discrete reproduces the atoms exactly.

inline constexpr const char* kDiscreteHeader = "# discrete-dist v1";

Dist read_discrete(std::istream& in);
Dist read_discrete_file(const std::string& path);
void write_discrete(const Dist& mu, std::ostream& out);

/// Shortest decimal string that parses back to the same double.
std::string format_shortest(double value);

/// Decimal string with the given number of significant digits.
std::string format_significant(double value, int digits);

}  // namespace cltkit

#endif  // CLTKIT_DIST_IO_HPP
