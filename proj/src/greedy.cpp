#include "ccsub/greedy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "ccsub/error.hpp"
#include "ccsub/kernels.hpp"

namespace ccsub {

std::string_view strategy_name(Strategy s) {
  return s == Strategy::dispersion_sum ? "s1" : "s2";
}

double strategy_denominator(Strategy strategy, const SelectionState& state, const Element& element) {
  if (strategy == Strategy::dispersion_sum) return element.delta * element.delta;
  return state.surrogate_gain(element);
}

namespace {

using Index = std::uint32_t;

double ratio_of(double gain, double denominator) {
  if (!(gain > 0.0)) return 0.0;
  if (!(denominator > 0.0)) return std::numeric_limits<double>::infinity();
  return gain / denominator;
}

// Scan order: larger ratio, then larger gain, then smaller id.
struct Key {
  double ratio;
  double gain;
  ElementId id;
};

bool ranks_above(const Key& a, const Key& b) {
  if (a.ratio != b.ratio) return a.ratio > b.ratio;
  if (a.gain != b.gain) return a.gain > b.gain;
  return a.id < b.id;
}

struct Pick {
  Index index;
  double gain;
  double denominator;
};

// Marginal gains of the growing set, with stale values kept as upper bounds.
class GainBook {
 public:
  GainBook(const Instance& instance, const SubmodularOracle& oracle, GreedyOptions options)
      : instance_(instance), oracle_(oracle), options_(options), cursor_(oracle.cursor()),
        bound_(instance.size(), 0.0), fresh_at_(instance.size(), kNever) {
    if (oracle.ground_size() != instance.size()) {
      throw ParameterError("oracle ground set size " + std::to_string(oracle.ground_size()) +
                           " does not match instance size " + std::to_string(instance.size()));
    }
    if (auto cached = oracle.singleton_values()) {
      for (Index i = 0; i < instance.size(); ++i) mark_exact(i, (*cached)[i]);
    } else {
      std::vector<Index> all(instance.size());
      for (Index i = 0; i < all.size(); ++i) all[i] = i;
      sweep(all);
    }
    singletons_ = bound_;
  }

  double value() const { return cursor_->value(); }
  double value_with(Index i) const { return cursor_->value_with(i); }
  std::span<const double> singleton_values() const { return singletons_; }

  void grow(Index i) {
    cursor_->add(i);
    ++version_;
  }

  // Exact gains for every candidate not yet evaluated against the current set.
  void sweep(std::span<const Index> candidates) {
    std::vector<Index> stale;
    for (Index i : candidates) {
      if (fresh_at_[i] != version_) stale.push_back(i);
    }
    std::vector<double> gains(stale.size());
    if (options_.parallel) {
      kernels::sweep_gains(*cursor_, stale, gains);
    } else {
      kernels::sweep_gains_serial(*cursor_, stale, gains);
    }
    for (std::size_t k = 0; k < stale.size(); ++k) mark_exact(stale[k], gains[k]);
  }

  double exact(Index i) {
    if (fresh_at_[i] != version_) mark_exact(i, cursor_->gain(i));
    return bound_[i];
  }

  template <typename DenominatorFn>
  std::optional<Pick> select(std::span<const Index> candidates, DenominatorFn&& denominator_of) {
    if (candidates.empty()) return std::nullopt;
    if (!options_.lazy) sweep(candidates);

    struct Entry {
      Key key;
      Index index;
      double denominator;
    };
    std::vector<Entry> heap;
    heap.reserve(candidates.size());
    for (Index i : candidates) {
      const double d = denominator_of(i);
      heap.push_back({{ratio_of(bound_[i], d), bound_[i], instance_[i].id}, i, d});
    }
    auto below = [](const Entry& a, const Entry& b) { return ranks_above(b.key, a.key); };
    std::make_heap(heap.begin(), heap.end(), below);

    std::optional<Entry> best;
    while (!heap.empty()) {
      std::pop_heap(heap.begin(), heap.end(), below);
      Entry top = heap.back();
      heap.pop_back();
      // Upper-bound keys are popped in decreasing order; once one ranks
      // below the best exact key, nothing left can win.
      if (best && ranks_above(best->key, top.key)) break;
      const double g = exact(top.index);
      top.key = {ratio_of(g, top.denominator), g, top.key.id};
      if (!best || ranks_above(top.key, best->key)) best = top;
    }
    return Pick{best->index, best->key.gain, best->denominator};
  }

  // Candidates ordered by exact key against the current set.
  template <typename DenominatorFn>
  std::vector<Pick> rank_all(std::span<const Index> candidates, DenominatorFn&& denominator_of) {
    sweep(candidates);
    std::vector<std::pair<Key, Pick>> ranked;
    ranked.reserve(candidates.size());
    for (Index i : candidates) {
      const double d = denominator_of(i);
      ranked.push_back({{ratio_of(bound_[i], d), bound_[i], instance_[i].id}, {i, bound_[i], d}});
    }
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return ranks_above(a.first, b.first); });
    std::vector<Pick> out;
    out.reserve(ranked.size());
    for (const auto& [key, pick] : ranked) out.push_back(pick);
    return out;
  }

 private:
  void mark_exact(Index i, double gain) {
    bound_[i] = gain;
    fresh_at_[i] = version_;
  }

  static constexpr std::uint64_t kNever = std::numeric_limits<std::uint64_t>::max();

  const Instance& instance_;
  const SubmodularOracle& oracle_;
  GreedyOptions options_;
  std::unique_ptr<OracleCursor> cursor_;
  std::vector<double> bound_;
  std::vector<std::uint64_t> fresh_at_;
  std::vector<double> singletons_;
  std::uint64_t version_ = 0;
};

std::vector<Index> to_indices(const Instance& instance, std::span<const ElementId> ids) {
  std::vector<Index> out;
  out.reserve(ids.size());
  for (ElementId id : ids) out.push_back(static_cast<Index>(instance.require_index(id)));
  return out;
}

double evaluate(const Instance& instance, const SubmodularOracle& oracle, std::span<const ElementId> ids) {
  const auto idx = to_indices(instance, ids);
  return oracle.eval(idx);
}

// Shared loop of GA and GGA: take the best remaining candidate, keep it if
// the surrogate stays within budget, drop it from the pool either way.
template <typename DenominatorFn>
GreedyResult accept_or_discard_loop(const Instance& instance, const SubmodularOracle& oracle,
                                    const ChanceParams& params, GainBook& book,
                                    SelectionState& state, DenominatorFn&& denominator_of) {
  GreedyResult result;
  std::vector<Index> remaining(instance.size());
  for (Index i = 0; i < remaining.size(); ++i) remaining[i] = i;

  auto record = [&](const Pick& pick, bool accepted) {
    result.trace.push_back(
        {result.trace.size() + 1, instance[pick.index].id, pick.gain, pick.denominator, state.surrogate(), accepted});
  };

  while (!remaining.empty()) {
    // When not even the least dispersed candidate fits, every remaining step
    // is a rejection; record them in scan order against the final set.
    const auto lightest = std::min_element(remaining.begin(), remaining.end(), [&](Index a, Index b) {
      return instance[a].delta < instance[b].delta;
    });
    if (state.surrogate_with(instance[*lightest]) > params.budget()) {
      for (const Pick& pick : book.rank_all(remaining, denominator_of)) record(pick, false);
      break;
    }

    const Pick pick = *book.select(remaining, denominator_of);
    const Element& e = instance[pick.index];
    const bool accept = state.surrogate_with(e) <= params.budget();
    if (accept) {
      state.insert(e);
      book.grow(pick.index);
    }
    record(pick, accept);
    remaining.erase(std::find(remaining.begin(), remaining.end(), pick.index));
  }

  result.solution.assign(state.members().begin(), state.members().end());
  result.objective = evaluate(instance, oracle, result.solution);
  result.surrogate = state.surrogate();
  return result;
}

}  // namespace

GreedyResult run_ga(const Instance& instance, const SubmodularOracle& oracle, const ChanceParams& params,
                    GreedyOptions options) {
  GainBook book(instance, oracle, options);
  SelectionState state(params);
  return accept_or_discard_loop(instance, oracle, params, book, state, [](Index) { return 1.0; });
}

GreedyResult run_gga(const Instance& instance, const SubmodularOracle& oracle, const ChanceParams& params,
                     Strategy strategy, GreedyOptions options) {
  GainBook book(instance, oracle, options);
  SelectionState state(params);
  GreedyResult result = accept_or_discard_loop(
      instance, oracle, params, book, state,
      [&](Index i) { return strategy_denominator(strategy, state, instance[i]); });

  // Best single element whose exact violation probability is within alpha.
  std::optional<Index> best;
  const auto singles = book.singleton_values();
  for (Index i = 0; i < instance.size(); ++i) {
    if (single_violation_prob(instance[i].delta, params.budget()) > params.alpha()) continue;
    if (!best || singles[i] > singles[*best] ||
        (singles[i] == singles[*best] && instance[i].id < instance[*best].id)) {
      best = i;
    }
  }
  if (best) {
    const ElementId id = instance[*best].id;
    const ElementId ids[] = {id};
    const double single_value = evaluate(instance, oracle, ids);
    if (single_value > result.objective) {
      SelectionState single(params);
      single.insert(instance[*best]);
      result.solution = {id};
      result.objective = single_value;
      result.surrogate = single.surrogate();
      result.swapped_singleton = id;
    }
  }
  return result;
}

GreedyResult run_ggma(const Instance& instance, const SubmodularOracle& oracle, const ChanceParams& params,
                      Strategy strategy, GreedyOptions options) {
  GainBook book(instance, oracle, options);
  SelectionState state(params);
  GreedyResult result;

  auto augmentable = [&] {
    std::vector<Index> pool;
    for (Index i = 0; i < instance.size(); ++i) {
      const Element& e = instance[i];
      if (!state.contains(e.id) && state.surrogate_with(e) <= params.budget()) pool.push_back(i);
    }
    return pool;
  };

  std::vector<ElementId> best_set;
  double best_value = 0.0;
  for (auto pool = augmentable(); !pool.empty(); pool = augmentable()) {
    const Pick top = *book.select(pool, [](Index) { return 1.0; });
    const double augmented = book.value_with(top.index);
    if (best_value < augmented) {
      best_set.assign(state.members().begin(), state.members().end());
      best_set.push_back(instance[top.index].id);
      best_value = augmented;
      result.best_history.push_back(augmented);
    }

    const Pick pick =
        *book.select(pool, [&](Index i) { return strategy_denominator(strategy, state, instance[i]); });
    state.insert(instance[pick.index]);
    book.grow(pick.index);
    result.trace.push_back(
        {result.trace.size() + 1, instance[pick.index].id, pick.gain, pick.denominator, state.surrogate(), true});
  }

  SelectionState final_state(params);
  for (ElementId id : best_set) final_state.insert(instance[instance.require_index(id)]);
  result.solution = std::move(best_set);
  result.objective = evaluate(instance, oracle, result.solution);
  result.surrogate = final_state.surrogate();
  return result;
}

}  // namespace ccsub
