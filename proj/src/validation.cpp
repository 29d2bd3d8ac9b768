#include "ccsub/validation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "ccsub/error.hpp"
#include "ccsub/kernels.hpp"
#include "ccsub/random.hpp"

namespace ccsub {

namespace {

using Index = std::uint32_t;

// Positions of the instance elements in ascending id order; bit b of an
// enumeration mask stands for element order[b].
std::vector<Index> id_order(const Instance& instance) {
  std::vector<Index> order(instance.size());
  std::iota(order.begin(), order.end(), Index{0});
  std::sort(order.begin(), order.end(), [&](Index a, Index b) { return instance[a].id < instance[b].id; });
  return order;
}

void guard(const Instance& instance) {
  if (instance.size() > kBruteForceLimit) {
    throw RefusalError("exhaustive search refused: " + std::to_string(instance.size()) + " elements exceed the limit of " +
                       std::to_string(kBruteForceLimit));
  }
}

std::vector<Index> mask_indices(std::uint64_t mask, std::span<const Index> order) {
  std::vector<Index> out;
  out.reserve(static_cast<std::size_t>(std::popcount(mask)));
  for (; mask != 0; mask &= mask - 1) out.push_back(order[std::countr_zero(mask)]);
  return out;
}

SubsetOptimum optimum_from(const Instance& instance, const SubsetBest& best, std::span<const Index> order) {
  SubsetOptimum out;
  if (!best.found) return out;
  for (Index i : mask_indices(best.mask, order)) out.members.push_back(instance[i].id);
  out.value = best.value;
  return out;
}

MaskScore mask_score(const SubmodularOracle& oracle, std::span<const Index> order) {
  return [&oracle, order](std::uint64_t mask) {
    thread_local std::vector<Index> members;
    members.clear();
    for (; mask != 0; mask &= mask - 1) members.push_back(order[std::countr_zero(mask)]);
    return oracle.eval(members);
  };
}

std::string describe(std::span<const ElementId> ids) {
  std::ostringstream os;
  os << '{';
  for (std::size_t k = 0; k < ids.size(); ++k) os << (k ? "," : "") << ids[k];
  os << '}';
  return os.str();
}

std::string describe_indices(std::span<const Index> idx) {
  std::vector<ElementId> ids(idx.begin(), idx.end());
  return describe(ids);
}

}  // namespace

SubsetOptimum brute_force_surrogate_opt(const Instance& instance, const SubmodularOracle& oracle,
                                        const ChanceParams& params) {
  guard(instance);
  const auto order = id_order(instance);
  std::vector<double> sq(order.size());
  for (std::size_t b = 0; b < order.size(); ++b) sq[b] = instance[order[b]].delta * instance[order[b]].delta;

  auto feasible = [&](std::uint64_t mask) {
    if (mask == 0) return true;
    double sum = 0.0;
    for (std::uint64_t m = mask; m != 0; m &= m - 1) sum += sq[std::countr_zero(m)];
    const double gamma = std::popcount(mask) + params.kappa() * std::sqrt(sum / 3.0);
    return gamma <= params.budget();
  };
  const auto best = kernels::best_subset(static_cast<unsigned>(order.size()), feasible, mask_score(oracle, order));
  return optimum_from(instance, best, order);
}

SubsetOptimum brute_force_deterministic_opt(const Instance& instance, const SubmodularOracle& oracle,
                                            const ChanceParams& params) {
  const auto k = static_cast<std::size_t>(
      std::min(std::floor(params.budget()), static_cast<double>(instance.size())));

  if (const auto* linear = dynamic_cast<const LinearOracle*>(&oracle)) {
    const auto values = linear->values();
    auto order = id_order(instance);
    std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return values[a] > values[b]; });
    order.resize(k);
    SubsetOptimum out;
    out.value = oracle.eval(order);
    for (Index i : order) out.members.push_back(instance[i].id);
    std::sort(out.members.begin(), out.members.end());
    return out;
  }

  guard(instance);
  const auto order = id_order(instance);
  const auto best = kernels::best_subset(
      static_cast<unsigned>(order.size()), [](std::uint64_t) { return true; }, mask_score(oracle, order),
      static_cast<unsigned>(k));
  return optimum_from(instance, best, order);
}

const AlgorithmOutcome& ValidationReport::outcome(std::string_view algorithm,
                                                  std::optional<Strategy> strategy) const {
  for (const auto& o : outcomes) {
    if (o.algorithm == algorithm && o.strategy == strategy) return o;
  }
  throw std::out_of_range("no outcome for " + std::string(algorithm));
}

ValidationReport check_theorem_bounds(const Instance& instance, const SubmodularOracle& oracle,
                                      const ChanceParams& params) {
  ValidationReport report;
  const auto opt_s = brute_force_surrogate_opt(instance, oracle, params);
  const auto opt_d = brute_force_deterministic_opt(instance, oracle, params);
  report.opt_surrogate_value = opt_s.value;
  report.opt_surrogate_set = opt_s.members;
  report.opt_det_value = opt_d.value;
  report.opt_det_set = opt_d.members;

  auto ratio = [&](double f) {
    if (report.opt_det_value > 0.0) return f / report.opt_det_value;
    return f > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
  };
  auto add = [&](std::string name, std::optional<Strategy> strategy, const GreedyResult& r) {
    AlgorithmOutcome o{std::move(name), strategy, r.solution, r.objective, r.surrogate, ratio(r.objective)};
    const std::string label = o.algorithm + (strategy ? "-" + std::string(strategy_name(*strategy)) : "");
    if (r.surrogate > params.budget() && !r.swapped_singleton) {
      report.property_failures.push_back({"surrogate feasibility", label + " returned Gamma " +
                                                                       std::to_string(r.surrogate) + " for " +
                                                                       describe(r.solution)});
    }
    if (!r.swapped_singleton && r.objective > report.opt_surrogate_value) {
      report.property_failures.push_back({"surrogate optimum bound", label + " exceeds the exhaustive optimum"});
    }
    if (strategy == Strategy::surrogate_weight && o.ratio < kStrategyTwoFloor) {
      report.property_failures.push_back(
          {"approximation floor", label + " ratio " + std::to_string(o.ratio) + " below " +
                                      std::to_string(kStrategyTwoFloor) + " on " + describe(r.solution)});
    }
    report.outcomes.push_back(std::move(o));
  };

  add("ga", std::nullopt, run_ga(instance, oracle, params));
  for (Strategy s : {Strategy::dispersion_sum, Strategy::surrogate_weight}) {
    add("gga", s, run_gga(instance, oracle, params, s));
    add("ggma", s, run_ggma(instance, oracle, params, s));
  }
  return report;
}

AxiomReport check_oracle_axioms(const SubmodularOracle& oracle, std::size_t universe, std::size_t trials,
                                std::uint64_t seed) {
  AxiomReport report;
  report.trials = trials;
  if (universe < 1) return report;
  constexpr std::size_t kMaxWitnesses = 5;
  auto witness = [&](const char* property, std::span<const Index> s, std::span<const Index> t, Index v) {
    if (report.witnesses.size() >= kMaxWitnesses) return;
    report.witnesses.push_back(
        {property, "S=" + describe_indices(s) + " T=" + describe_indices(t) + " v=" + std::to_string(v)});
  };
  auto close = [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)}); };
  auto at_most = [&](double a, double b) { return a <= b || close(a, b); };

  for (std::size_t trial = 0; trial < trials; ++trial) {
    std::uint64_t draw = 0;
    auto uniform = [&] { return stream_uniform(seed, StreamTag::axiom_check, trial, draw++); };
    const auto v = static_cast<Index>(std::min<double>(uniform() * universe, universe - 1.0));
    const double density = uniform();
    std::vector<Index> s, t;
    for (Index x = 0; x < universe; ++x) {
      if (x == v || uniform() >= density) continue;
      t.push_back(x);
      if (uniform() < 0.5) s.push_back(x);
    }

    const double fs = oracle.eval(s);
    const double ft = oracle.eval(t);
    const double ms = oracle.marginal(v, s);
    const double mt = oracle.marginal(v, t);
    if (!at_most(fs, ft)) {
      ++report.monotonicity_violations;
      witness("monotonicity", s, t, v);
    }
    if (!at_most(mt, ms)) {
      ++report.submodularity_violations;
      witness("submodularity", s, t, v);
    }
    std::vector<Index> sv = s;
    sv.push_back(v);
    if (!close(ms, oracle.eval(sv) - fs)) {
      ++report.consistency_violations;
      witness("marginal consistency", s, s, v);
    }
  }
  return report;
}

}  // namespace ccsub
