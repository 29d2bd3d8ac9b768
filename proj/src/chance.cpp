#include "ccsub/chance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ccsub/error.hpp"
#include "ccsub/kernels.hpp"

namespace ccsub {

double kappa(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::domain_error("alpha must lie in (0, 1), got " + std::to_string(alpha));
  }
  return std::sqrt((1.0 - alpha) / alpha);
}

ChanceParams::ChanceParams(double budget, double alpha) : budget_(budget), alpha_(alpha), kappa_(0.0) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ParameterError("alpha must lie in (0, 1)");
  }
  if (!(budget > 1.0) || !std::isfinite(budget)) {
    throw ParameterError("budget must be a finite value > 1");
  }
  kappa_ = ccsub::kappa(alpha);
}

Instance::Instance(ChanceParams params, std::vector<Element> elements, std::vector<double> values)
    : params_(params), elements_(std::move(elements)), values_(std::move(values)) {
  if (!values_.empty() && values_.size() != elements_.size()) {
    throw ParameterError("value count does not match element count");
  }
  index_.reserve(elements_.size());
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    const Element& e = elements_[i];
    if (!(e.delta >= 0.0 && e.delta <= 1.0)) {
      throw ParameterError("element " + std::to_string(e.id) + ": dispersion outside [0, 1]");
    }
    if (!index_.emplace(e.id, i).second) {
      throw ParameterError("duplicate element id " + std::to_string(e.id));
    }
  }
  for (double v : values_) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw ParameterError("objective values must be finite and >= 0");
  }
}

std::optional<std::size_t> Instance::index_of(ElementId id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Instance::require_index(ElementId id) const {
  auto idx = index_of(id);
  if (!idx) throw InputError("unknown element id " + std::to_string(id));
  return *idx;
}

std::vector<double> Instance::deltas() const {
  std::vector<double> out;
  out.reserve(elements_.size());
  for (const auto& e : elements_) out.push_back(e.delta);
  return out;
}

Instance Instance::with_params(const ChanceParams& params) const {
  Instance copy = *this;
  copy.params_ = params;
  return copy;
}

namespace {

// sqrt(a + x) - sqrt(a), without cancellation for small x.
double sqrt_increment(double a, double x) {
  const double denom = std::sqrt(a + x) + std::sqrt(a);
  return denom > 0.0 ? x / denom : 0.0;
}

}  // namespace

void SelectionState::insert(const Element& element) {
  if (!lookup_.insert(element.id).second) {
    throw std::logic_error("element " + std::to_string(element.id) + " is already selected");
  }
  members_.push_back(element.id);
  dispersion_sq_sum_ += element.delta * element.delta;
  surrogate_ = expected_weight() + kappa_ * std::sqrt(variance());
}

double SelectionState::surrogate_with(const Element& element) const {
  const double var = (dispersion_sq_sum_ + element.delta * element.delta) / 3.0;
  return expected_weight() + 1.0 + kappa_ * std::sqrt(var);
}

double SelectionState::surrogate_gain(const Element& element) const {
  return 1.0 + kappa_ * sqrt_increment(variance(), element.delta * element.delta / 3.0);
}

double surrogate_weight(const SelectionState& state, const ChanceParams& params) {
  if (state.empty()) return 0.0;
  return state.expected_weight() + params.kappa() * std::sqrt(state.variance());
}

double surrogate_gain(const SelectionState& state, const Element& element, const ChanceParams& params) {
  if (state.contains(element.id)) {
    throw std::logic_error("element " + std::to_string(element.id) + " is already selected");
  }
  return 1.0 + params.kappa() * sqrt_increment(state.variance(), element.delta * element.delta / 3.0);
}

bool is_surrogate_feasible(const SelectionState& state, const ChanceParams& params) {
  return surrogate_weight(state, params) <= params.budget();
}

double surrogate_of(std::span<const double> deltas, double kappa) {
  if (deltas.empty()) return 0.0;
  double sq = 0.0;
  for (double d : deltas) sq += d * d;
  return static_cast<double>(deltas.size()) + kappa * std::sqrt(sq / 3.0);
}

double single_violation_prob(double delta, double budget) {
  if (delta <= 0.0 || budget >= 1.0 + delta) return 0.0;
  return std::clamp((1.0 + delta - budget) / (2.0 * delta), 0.0, 1.0);
}

double mc_violation_estimate(std::span<const ElementId> members, const Instance& instance,
                             const ChanceParams& params, std::uint64_t samples, std::uint64_t seed) {
  if (samples == 0) throw ParameterError("samples must be >= 1");
  // Sorted ids make the per-trial sum independent of member order.
  std::vector<ElementId> ids(members.begin(), members.end());
  std::sort(ids.begin(), ids.end());
  std::vector<double> deltas;
  deltas.reserve(ids.size());
  for (ElementId id : ids) deltas.push_back(instance[instance.require_index(id)].delta);
  const auto hits = kernels::count_violations(ids, deltas, params.budget(), samples, seed);
  return static_cast<double>(hits) / static_cast<double>(samples);
}

}  // namespace ccsub
