// Shared helpers for the doctest suites.
#ifndef CLTKIT_TESTS_TEST_SUPPORT_HPP
#define CLTKIT_TESTS_TEST_SUPPORT_HPP

#include <doctest.h>

#include <cstdint>
#include <random>
#include <vector>

#include "cltkit/distribution.hpp"
#include "cltkit/error.hpp"

namespace testing {

template <typename Fn>
cltkit::ErrorCode code_of(Fn&& fn) {
  try {
    fn();
  } catch (const cltkit::Error& e) {
    return e.code();
  }
  FAIL("expected a cltkit::Error");
  return cltkit::ErrorCode::IoFailure;
}

// Discrete distribution with 1..max_atoms atoms on a quarter-integer lattice
// in [-5, 5] and random weights.
inline cltkit::Dist random_discrete(std::mt19937_64& rng, int max_atoms = 6) {
  std::uniform_int_distribution<int> count(1, max_atoms);
  std::uniform_int_distribution<int> lattice(-20, 20);
  std::uniform_real_distribution<double> w(0.05, 1.0);
  const int k = count(rng);
  std::vector<cltkit::Atom> atoms;
  double total = 0.0;
  for (int i = 0; i < k; ++i) {
    atoms.push_back({lattice(rng) * 0.25, w(rng)});
    total += atoms.back().weight;
  }
  for (auto& a : atoms) a.weight /= total;
  return cltkit::discrete(std::move(atoms));
}

inline cltkit::Dist random_centered(std::mt19937_64& rng, int max_atoms = 6) {
  for (;;) {
    auto mu = random_discrete(rng, max_atoms);
    if (mu.discrete().size() < 2) continue;
    return cltkit::shift_scale(mu, cltkit::mean(mu), 1.0);
  }
}

}  // namespace testing

#endif  // CLTKIT_TESTS_TEST_SUPPORT_HPP
