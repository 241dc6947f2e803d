#ifndef CLTKIT_FINITE_SPACE_HPP
#define CLTKIT_FINITE_SPACE_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "cltkit/distribution.hpp"

namespace cltkit {

/// Subset of a finite outcome set, one bit per outcome index.
using EventMask = std::uint32_t;

inline constexpr std::size_t kMaxOutcomes = 20;

/// Finite outcome list with nonnegative weights summing to one.
class FiniteProbSpace {
 public:
  FiniteProbSpace(std::vector<std::string> outcomes, std::vector<double> weights);

  /// Equal weights on outcomes labelled "1".."n".
  static FiniteProbSpace uniform(std::size_t n);

  std::size_t size() const noexcept { return outcomes_.size(); }
  const std::vector<std::string>& outcomes() const noexcept { return outcomes_; }
  const std::vector<double>& weights() const noexcept { return weights_; }

  EventMask full_event() const noexcept;
  double probability(EventMask event) const;

 private:
  std::vector<std::string> outcomes_;
  std::vector<double> weights_;
};

/// Random variable on a finite space: one value per outcome index.
struct FiniteRV {
  std::vector<double> values;
};

/// Product of two spaces together with the two coordinate variables.
struct ProductSpace {
  FiniteProbSpace space;
  FiniteRV first;
  FiniteRV second;
};

ProductSpace product(const FiniteProbSpace& left, const FiniteProbSpace& right,
                     const FiniteRV& left_rv, const FiniteRV& right_rv);

/// A family of events over {0..n-1}, kept sorted by mask.
class EventFamily {
 public:
  EventFamily(std::size_t n_outcomes, std::vector<EventMask> events);

  std::size_t n_outcomes() const noexcept { return n_outcomes_; }
  const std::vector<EventMask>& events() const noexcept { return events_; }
  std::size_t size() const noexcept { return events_.size(); }
  bool contains(EventMask event) const;

  /// Contains the empty set and is closed under complement and pairwise union.
  bool is_sigma_algebra() const;

 private:
  std::size_t n_outcomes_;
  std::vector<EventMask> events_;
};

/// Smallest sigma-algebra containing the generators. On a finite set this is
/// the family of all unions of the blocks of the partition the generators
/// induce. Throws OutOfRange for bad indices and SizeLimit above 20 outcomes.
EventFamily generate_sigma_algebra(std::size_t n_outcomes,
                                   const std::vector<std::vector<std::size_t>>& generators);

enum class MeasureCheck {
  Ok,
  EmptySetNonzero,
  OutOfUnitInterval,
  NotAdditive,
  TotalMassNotOne,
  NotInFamily,
};

struct MeasureVerdict {
  bool ok;
  MeasureCheck reason;
};

/// Checks the probability measure axioms of mu on every event of the family,
/// within 1e-12. Finite additivity is checked on all disjoint pairs.
MeasureVerdict is_probability_measure(const FiniteProbSpace& space, const EventFamily& family,
                                      const std::function<double(EventMask)>& mu);

/// Mutual independence of each listed group of variables (indices into rvs).
/// Every sub-collection of at least two variables and every combination of
/// singleton value events is compared against the product of marginals.
bool are_independent(const FiniteProbSpace& space, std::span<const FiniteRV> rvs,
                     const std::vector<std::vector<std::size_t>>& groups);

/// Same, for all of rvs as one group.
bool are_independent(const FiniteProbSpace& space, std::span<const FiniteRV> rvs);

/// Distribution of rv: distinct values weighted by their preimage mass.
Dist pushforward(const FiniteProbSpace& space, const FiniteRV& rv);

double expectation(const FiniteProbSpace& space, const FiniteRV& rv);
double variance(const FiniteProbSpace& space, const FiniteRV& rv);

}  // namespace cltkit

#endif  // CLTKIT_FINITE_SPACE_HPP
