#pragma once

// Probabilistic weight model and the one-sided Chebyshev surrogate.
//
// Every element weight is uniform on [1 - delta, 1 + delta], so a set S has
// E[W(S)] = |S| and Var[W(S)] = sum(delta^2) / 3. The surrogate weight
//
//   Gamma(S) = |S| + kappa_alpha * sqrt(Var[W(S)]),  kappa_alpha = sqrt((1 - alpha) / alpha)
//
// certifies Pr[W(S) > B] <= alpha whenever Gamma(S) <= B.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace ccsub {

using ElementId = std::uint32_t;

// sqrt((1 - alpha) / alpha). Throws std::domain_error unless 0 < alpha < 1.
double kappa(double alpha);

class ChanceParams {
 public:
  // Throws ParameterError unless budget > 1 and 0 < alpha < 1.
  ChanceParams(double budget, double alpha);

  double budget() const noexcept { return budget_; }
  double alpha() const noexcept { return alpha_; }
  double kappa() const noexcept { return kappa_; }

  friend bool operator==(const ChanceParams&, const ChanceParams&) = default;

 private:
  double budget_;
  double alpha_;
  double kappa_;
};

struct Element {
  ElementId id = 0;
  double delta = 0.0;  // half-width of the weight interval, in [0, 1]

  friend bool operator==(const Element&, const Element&) = default;
};

// A chance-constrained problem: elements with dispersions, budget and alpha,
// and optional linear objective coefficients (one per element).
class Instance {
 public:
  Instance(ChanceParams params, std::vector<Element> elements, std::vector<double> values = {});

  const ChanceParams& params() const noexcept { return params_; }
  std::span<const Element> elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const Element& operator[](std::size_t index) const { return elements_[index]; }

  bool has_values() const noexcept { return !values_.empty(); }
  std::span<const double> values() const noexcept { return values_; }

  std::optional<std::size_t> index_of(ElementId id) const;
  // Throws InputError for ids not in the instance.
  std::size_t require_index(ElementId id) const;

  std::vector<double> deltas() const;
  Instance with_params(const ChanceParams& params) const;

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.params_ == b.params_ && a.elements_ == b.elements_ && a.values_ == b.values_;
  }

 private:
  ChanceParams params_;
  std::vector<Element> elements_;
  std::vector<double> values_;
  std::unordered_map<ElementId, std::size_t> index_;
};

// A partial solution with incrementally maintained moments.
class SelectionState {
 public:
  explicit SelectionState(const ChanceParams& params) : kappa_(params.kappa()) {}

  // Throws std::logic_error when the id is already a member.
  void insert(const Element& element);
  bool contains(ElementId id) const { return lookup_.contains(id); }

  std::span<const ElementId> members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }

  double expected_weight() const noexcept { return static_cast<double>(members_.size()); }
  double dispersion_sq_sum() const noexcept { return dispersion_sq_sum_; }
  double variance() const noexcept { return dispersion_sq_sum_ / 3.0; }
  double surrogate() const noexcept { return surrogate_; }

  // Gamma(S + {e}) without modifying the state.
  double surrogate_with(const Element& element) const;
  // Gamma(S + {e}) - Gamma(S); always >= 1.
  double surrogate_gain(const Element& element) const;

 private:
  double kappa_;
  std::vector<ElementId> members_;
  std::unordered_set<ElementId> lookup_;
  double dispersion_sq_sum_ = 0.0;
  double surrogate_ = 0.0;
};

// Gamma evaluated with the given parameters (0 for the empty state).
double surrogate_weight(const SelectionState& state, const ChanceParams& params);
// Throws std::logic_error when the element is already in the state.
double surrogate_gain(const SelectionState& state, const Element& element, const ChanceParams& params);
// Gamma(S) <= B, no slack.
bool is_surrogate_feasible(const SelectionState& state, const ChanceParams& params);

// Gamma of an arbitrary dispersion multiset, computed from scratch.
double surrogate_of(std::span<const double> deltas, double kappa);

// Exact Pr[w > B] for w ~ Uniform[1 - delta, 1 + delta].
double single_violation_prob(double delta, double budget);

// Fraction of `samples` Monte-Carlo trials whose realized total weight is
// strictly above the budget. Deterministic in (seed, samples).
double mc_violation_estimate(std::span<const ElementId> members, const Instance& instance,
                             const ChanceParams& params, std::uint64_t samples, std::uint64_t seed);

}  // namespace ccsub
