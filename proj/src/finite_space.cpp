#include "cltkit/finite_space.hpp"

#include <algorithm>
#include <cmath>
#include <bit>
#include <map>
#include <set>
#include <string>
#include <unordered_set>

#include "cltkit/error.hpp"

namespace cltkit {

namespace {

constexpr double kProbTol = 1e-12;
constexpr std::size_t kMaxValueCombinations = 10'000'000;

EventMask mask_of(std::size_t n) {
  return n == 32 ? ~EventMask{0} : (EventMask{1} << n) - 1;
}

void require_rv(const FiniteProbSpace& space, const FiniteRV& rv) {
  if (rv.values.size() != space.size()) {
    throw Error(ErrorCode::OutOfRange, "random variable has " + std::to_string(rv.values.size()) +
                                           " values for " + std::to_string(space.size()) +
                                           " outcomes");
  }
}

}  // namespace

FiniteProbSpace::FiniteProbSpace(std::vector<std::string> outcomes, std::vector<double> weights)
    : outcomes_(std::move(outcomes)), weights_(std::move(weights)) {
  if (outcomes_.empty() || outcomes_.size() != weights_.size()) {
    throw Error(ErrorCode::InvalidParams, "need one weight per outcome and at least one outcome");
  }
  if (std::set<std::string>(outcomes_.begin(), outcomes_.end()).size() != outcomes_.size()) {
    throw Error(ErrorCode::InvalidParams, "outcome labels must be distinct");
  }
  double total = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw Error(ErrorCode::InvalidParams, "weights must be finite and nonnegative");
    }
    total += w;
  }
  if (std::abs(total - 1.0) > kProbTol) {
    throw Error(ErrorCode::InvalidParams, "weights sum to " + std::to_string(total));
  }
}

FiniteProbSpace FiniteProbSpace::uniform(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 1; i <= n; ++i) labels.push_back(std::to_string(i));
  return {std::move(labels), std::vector<double>(n, 1.0 / static_cast<double>(n))};
}

EventMask FiniteProbSpace::full_event() const noexcept {
  return size() > kMaxOutcomes ? 0 : mask_of(size());
}

double FiniteProbSpace::probability(EventMask event) const {
  if (size() > kMaxOutcomes) throw Error(ErrorCode::SizeLimit, "event masks cover at most 20 outcomes");
  if ((event & ~full_event()) != 0) throw Error(ErrorCode::OutOfRange, "event outside the space");
  double p = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    if (event & (EventMask{1} << i)) p += weights_[i];
  }
  return p;
}

ProductSpace product(const FiniteProbSpace& left, const FiniteProbSpace& right,
                     const FiniteRV& left_rv, const FiniteRV& right_rv) {
  require_rv(left, left_rv);
  require_rv(right, right_rv);
  std::vector<std::string> labels;
  std::vector<double> weights;
  FiniteRV first, second;
  for (std::size_t i = 0; i < left.size(); ++i) {
    for (std::size_t j = 0; j < right.size(); ++j) {
      labels.push_back("(" + left.outcomes()[i] + "," + right.outcomes()[j] + ")");
      weights.push_back(left.weights()[i] * right.weights()[j]);
      first.values.push_back(left_rv.values[i]);
      second.values.push_back(right_rv.values[j]);
    }
  }
  return {FiniteProbSpace(std::move(labels), std::move(weights)), std::move(first),
          std::move(second)};
}

// ---------------------------------------------------------------------------

EventFamily::EventFamily(std::size_t n_outcomes, std::vector<EventMask> events)
    : n_outcomes_(n_outcomes), events_(std::move(events)) {
  if (n_outcomes_ > kMaxOutcomes) throw Error(ErrorCode::SizeLimit, "at most 20 outcomes");
  const EventMask full = mask_of(n_outcomes_);
  for (EventMask e : events_) {
    if ((e & ~full) != 0) throw Error(ErrorCode::OutOfRange, "event references an invalid outcome");
  }
  std::sort(events_.begin(), events_.end());
  events_.erase(std::unique(events_.begin(), events_.end()), events_.end());
}

bool EventFamily::contains(EventMask event) const {
  return std::binary_search(events_.begin(), events_.end(), event);
}

bool EventFamily::is_sigma_algebra() const {
  const EventMask full = mask_of(n_outcomes_);
  if (!contains(0)) return false;
  for (EventMask a : events_) {
    if (!contains(full & ~a)) return false;
    for (EventMask b : events_) {
      if (!contains(a | b)) return false;
    }
  }
  return true;
}

EventFamily generate_sigma_algebra(std::size_t n_outcomes,
                                   const std::vector<std::vector<std::size_t>>& generators) {
  if (n_outcomes > kMaxOutcomes) {
    throw Error(ErrorCode::SizeLimit, "sigma-algebra generation is capped at 20 outcomes");
  }
  // Outcomes that agree on membership in every generator share a block.
  std::map<std::vector<bool>, EventMask> blocks;
  std::vector<std::vector<bool>> signature(n_outcomes, std::vector<bool>(generators.size(), false));
  for (std::size_t g = 0; g < generators.size(); ++g) {
    for (std::size_t idx : generators[g]) {
      if (idx >= n_outcomes) {
        throw Error(ErrorCode::OutOfRange, "generator references outcome " + std::to_string(idx));
      }
      signature[idx][g] = true;
    }
  }
  for (std::size_t i = 0; i < n_outcomes; ++i) blocks[signature[i]] |= EventMask{1} << i;

  std::vector<EventMask> block_masks;
  for (const auto& [sig, mask] : blocks) block_masks.push_back(mask);
  std::vector<EventMask> events;
  events.reserve(std::size_t{1} << block_masks.size());
  for (std::size_t choice = 0; choice < (std::size_t{1} << block_masks.size()); ++choice) {
    EventMask e = 0;
    for (std::size_t b = 0; b < block_masks.size(); ++b) {
      if (choice & (std::size_t{1} << b)) e |= block_masks[b];
    }
    events.push_back(e);
  }
  return {n_outcomes, std::move(events)};
}

MeasureVerdict is_probability_measure(const FiniteProbSpace& space, const EventFamily& family,
                                      const std::function<double(EventMask)>& mu) {
  if (family.n_outcomes() != space.size()) {
    throw Error(ErrorCode::OutOfRange, "family and space disagree on the outcome count");
  }
  if (!family.contains(0) || !family.contains(space.full_event())) {
    return {false, MeasureCheck::NotInFamily};
  }
  const auto& events = family.events();
  std::vector<double> value(events.size());
  for (std::size_t i = 0; i < events.size(); ++i) value[i] = mu(events[i]);
  const auto value_of = [&](EventMask e) {
    const auto it = std::lower_bound(events.begin(), events.end(), e);
    return value[static_cast<std::size_t>(it - events.begin())];
  };

  if (std::abs(value_of(0)) > kProbTol) return {false, MeasureCheck::EmptySetNonzero};
  for (double v : value) {
    if (!(v >= -kProbTol && v <= 1.0 + kProbTol)) return {false, MeasureCheck::OutOfUnitInterval};
  }
  for (std::size_t i = 0; i < events.size(); ++i) {
    for (std::size_t j = i + 1; j < events.size(); ++j) {
      if ((events[i] & events[j]) != 0) continue;
      const EventMask u = events[i] | events[j];
      if (!family.contains(u)) return {false, MeasureCheck::NotInFamily};
      if (std::abs(value_of(u) - value[i] - value[j]) > kProbTol) {
        return {false, MeasureCheck::NotAdditive};
      }
    }
  }
  if (std::abs(value_of(space.full_event()) - 1.0) > kProbTol) {
    return {false, MeasureCheck::TotalMassNotOne};
  }
  return {true, MeasureCheck::Ok};
}

// ---------------------------------------------------------------------------

namespace {

// Index of each outcome's value among the sorted distinct values of rv.
struct Levels {
  std::vector<std::size_t> level;
  std::size_t count = 0;
};

Levels levels_of(const FiniteRV& rv) {
  std::vector<double> distinct = rv.values;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  Levels out;
  out.count = distinct.size();
  for (double v : rv.values) {
    out.level.push_back(static_cast<std::size_t>(
        std::lower_bound(distinct.begin(), distinct.end(), v) - distinct.begin()));
  }
  return out;
}

bool jointly_factorizes(const FiniteProbSpace& space, const std::vector<const Levels*>& vars) {
  std::size_t combos = 1;
  for (const Levels* v : vars) {
    combos *= v->count;
    if (combos > kMaxValueCombinations) {
      throw Error(ErrorCode::SizeLimit, "too many value combinations to enumerate");
    }
  }
  std::vector<double> joint(combos, 0.0);
  std::vector<std::vector<double>> marginal(vars.size());
  for (std::size_t k = 0; k < vars.size(); ++k) marginal[k].assign(vars[k]->count, 0.0);

  for (std::size_t w = 0; w < space.size(); ++w) {
    std::size_t cell = 0;
    for (std::size_t k = 0; k < vars.size(); ++k) {
      cell = cell * vars[k]->count + vars[k]->level[w];
      marginal[k][vars[k]->level[w]] += space.weights()[w];
    }
    joint[cell] += space.weights()[w];
  }
  for (std::size_t cell = 0; cell < combos; ++cell) {
    double product = 1.0;
    std::size_t rest = cell;
    for (std::size_t k = vars.size(); k-- > 0;) {
      product *= marginal[k][rest % vars[k]->count];
      rest /= vars[k]->count;
    }
    if (std::abs(joint[cell] - product) > kProbTol) return false;
  }
  return true;
}

}  // namespace

bool are_independent(const FiniteProbSpace& space, std::span<const FiniteRV> rvs,
                     const std::vector<std::vector<std::size_t>>& groups) {
  if (rvs.empty()) throw Error(ErrorCode::OutOfRange, "need at least one random variable");
  std::vector<Levels> levels;
  for (const FiniteRV& rv : rvs) {
    require_rv(space, rv);
    levels.push_back(levels_of(rv));
  }
  for (const auto& group : groups) {
    if (group.size() > kMaxOutcomes) throw Error(ErrorCode::SizeLimit, "group too large");
    for (std::size_t idx : group) {
      if (idx >= rvs.size()) throw Error(ErrorCode::OutOfRange, "rv index " + std::to_string(idx));
    }
    for (std::size_t subset = 0; subset < (std::size_t{1} << group.size()); ++subset) {
      if (std::popcount(subset) < 2) continue;
      std::vector<const Levels*> vars;
      for (std::size_t k = 0; k < group.size(); ++k) {
        if (subset & (std::size_t{1} << k)) vars.push_back(&levels[group[k]]);
      }
      if (!jointly_factorizes(space, vars)) return false;
    }
  }
  return true;
}

bool are_independent(const FiniteProbSpace& space, std::span<const FiniteRV> rvs) {
  std::vector<std::size_t> all(rvs.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return are_independent(space, rvs, {all});
}

Dist pushforward(const FiniteProbSpace& space, const FiniteRV& rv) {
  require_rv(space, rv);
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < space.size(); ++i) atoms.push_back({rv.values[i], space.weights()[i]});
  return DiscreteDist(std::move(atoms));
}

double expectation(const FiniteProbSpace& space, const FiniteRV& rv) {
  require_rv(space, rv);
  double sum = 0.0;
  for (std::size_t i = 0; i < space.size(); ++i) sum += space.weights()[i] * rv.values[i];
  return sum;
}

double variance(const FiniteProbSpace& space, const FiniteRV& rv) {
  require_rv(space, rv);
  // Deviations are taken from the first value so a constant variable gives
  // exactly zero even when the weights do not sum to exactly one.
  const double pivot = rv.values.front();
  double shift = 0.0;
  for (std::size_t i = 0; i < space.size(); ++i) shift += space.weights()[i] * (rv.values[i] - pivot);
  double sum = 0.0;
  for (std::size_t i = 0; i < space.size(); ++i) {
    const double d = rv.values[i] - pivot - shift;
    sum += space.weights()[i] * d * d;
  }
  return sum;
}

}  // namespace cltkit
