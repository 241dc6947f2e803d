#include "cltkit/dist_io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>

#include "cltkit/error.hpp"

namespace cltkit {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_number(std::string_view text, std::size_t line) {
  text = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::ParseError,
                "line " + std::to_string(line) + ": bad number '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

Dist read_discrete(std::istream& in) {
  std::string line;
  std::size_t number = 0;
  bool header_seen = false;
  std::vector<Atom> atoms;
  while (std::getline(in, line)) {
    ++number;
    const std::string_view text = trim(line);
    if (text.empty()) continue;
    if (!header_seen) {
      if (text != kDiscreteHeader) {
        throw Error(ErrorCode::ParseError, "missing header '" + std::string(kDiscreteHeader) + "'");
      }
      header_seen = true;
      continue;
    }
    const auto comma = text.find(',');
    if (comma == std::string_view::npos) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(number) + ": expected point,weight");
    }
    atoms.push_back({parse_number(text.substr(0, comma), number),
                     parse_number(text.substr(comma + 1), number)});
  }
  if (!header_seen) throw Error(ErrorCode::ParseError, "empty input");
  return DiscreteDist(std::move(atoms));
}

Dist read_discrete_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open " + path);
  return read_discrete(in);
}

void write_discrete(const Dist& mu, std::ostream& out) {
  out << kDiscreteHeader << '\n';
  for (const Atom& a : mu.discrete().atoms()) {
    out << format_shortest(a.point) << ',' << format_shortest(a.weight) << '\n';
  }
  if (!out) throw Error(ErrorCode::IoFailure, "write failed");
}

std::string format_shortest(double value) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return {buf.data(), ptr};
}

std::string format_significant(double value, int digits) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                       std::chars_format::general, digits);
  return {buf.data(), ptr};
}

}  // namespace cltkit
