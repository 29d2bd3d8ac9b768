#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "ccsub/chance.hpp"
#include "ccsub/error.hpp"
#include "ccsub/instances.hpp"
#include "ccsub/random.hpp"

using namespace ccsub;

TEST_CASE("kappa closed form") {
  CHECK(kappa(0.5) == 1.0);
  CHECK(kappa(0.25) == doctest::Approx(1.7320508075688772).epsilon(1e-15));
  CHECK(kappa(1e-4) == doctest::Approx(99.99499987499375).epsilon(1e-15));
  CHECK(kappa(0.1) > kappa(0.2));
  CHECK_THROWS_AS(kappa(0.0), std::domain_error);
  CHECK_THROWS_AS(kappa(1.0), std::domain_error);
  CHECK_THROWS_AS(kappa(-0.1), std::domain_error);
}

TEST_CASE("chance params validate and cache kappa") {
  const ChanceParams p(5.0, 0.25);
  CHECK(p.kappa() == kappa(0.25));
  CHECK_THROWS_AS(ChanceParams(1.0, 0.5), ParameterError);
  CHECK_THROWS_AS(ChanceParams(2.0, 1.0), ParameterError);
  CHECK_THROWS_AS(ChanceParams(2.0, 0.0), ParameterError);
}

TEST_CASE("instance rejects bad elements") {
  const ChanceParams p(2.0, 0.5);
  CHECK_THROWS_AS(Instance(p, {{0, 0.1}, {0, 0.2}}), ParameterError);
  CHECK_THROWS_AS(Instance(p, {{0, 1.5}}), ParameterError);
  CHECK_THROWS_AS(Instance(p, {{0, -0.1}}), ParameterError);
  CHECK_THROWS_AS(Instance(p, {{0, 0.1}}, {1.0, 2.0}), ParameterError);
  const Instance ok(p, {{7, 0.0}, {3, 1.0}});
  CHECK(ok.index_of(3) == 1u);
  CHECK_FALSE(ok.index_of(4).has_value());
  CHECK_THROWS_AS(ok.require_index(4), InputError);
}

TEST_CASE("surrogate weight") {
  const ChanceParams any(3.5, 0.1);
  SelectionState empty(any);
  CHECK(surrogate_weight(empty, any) == 0.0);

  SelectionState flat(any);
  for (ElementId i = 0; i < 3; ++i) flat.insert({i, 0.0});
  CHECK(surrogate_weight(flat, any) == 3.0);
  CHECK(flat.surrogate() == 3.0);

  // Five second-block elements of I2 (epsilon 5, gamma 0.1, beta 0.4, alpha 0.25).
  const ChanceParams p(6.0, 0.25);
  SelectionState s(p);
  const double d = std::sqrt(0.9 / 5.0);
  for (ElementId i = 6; i <= 10; ++i) s.insert({i, d});
  CHECK(surrogate_weight(s, p) == doctest::Approx(5.948683298050514).epsilon(1e-12));
  CHECK(is_surrogate_feasible(s, p));
}

TEST_CASE("surrogate gain") {
  const ChanceParams p(4.0, 0.25);
  SelectionState s(p);
  CHECK(surrogate_gain(s, {1, 0.0}, p) == 1.0);
  CHECK(surrogate_gain(s, {1, 1.0}, p) == doctest::Approx(2.0).epsilon(1e-15));
  s.insert({1, 0.4});
  CHECK(surrogate_gain(s, {2, 0.0}, p) == 1.0);
  CHECK_THROWS_AS(surrogate_gain(s, {1, 0.4}, p), std::logic_error);
  CHECK_THROWS_AS(s.insert({1, 0.4}), std::logic_error);
}

TEST_CASE("surrogate gain is concave in the set") {
  const ChanceParams p(100.0, 0.01);
  std::uint64_t draw = 0;
  auto u = [&] { return stream_uniform(11, StreamTag::axiom_check, 0, draw++); };
  for (int trial = 0; trial < 500; ++trial) {
    SelectionState small(p), large(p);
    ElementId next = 0;
    const int base = static_cast<int>(u() * 10);
    const int extra = 1 + static_cast<int>(u() * 10);
    for (int i = 0; i < base; ++i) {
      const Element e{next++, u()};
      small.insert(e);
      large.insert(e);
    }
    for (int i = 0; i < extra; ++i) large.insert({next++, u()});
    const Element v{next, u()};
    CHECK(surrogate_gain(large, v, p) <= surrogate_gain(small, v, p));
    CHECK(surrogate_gain(large, v, p) >= 1.0);
  }
}

TEST_CASE("incremental caches agree with recomputation") {
  const ChanceParams p(2000.0, 0.001);
  SelectionState s(p);
  std::vector<double> deltas;
  double previous = 0.0;
  for (ElementId i = 0; i < 1000; ++i) {
    const double d = stream_uniform(5, StreamTag::dispersion, 1, i);
    s.insert({i, d});
    deltas.push_back(d);
    CHECK(s.surrogate() >= previous);
    previous = s.surrogate();
  }
  const double fresh = surrogate_of(deltas, p.kappa());
  CHECK(std::abs(s.surrogate() - fresh) <= 1e-9 * fresh);
  double sq = 0.0;
  for (double d : deltas) sq += d * d;
  CHECK(std::abs(s.dispersion_sq_sum() - sq) <= 1e-9 * sq);
  CHECK(s.variance() == doctest::Approx(sq / 3.0).epsilon(1e-9));
  CHECK(s.expected_weight() == 1000.0);
  CHECK(s.surrogate() >= 1000.0);
}

TEST_CASE("feasibility boundary is inclusive") {
  const ChanceParams p(3.0, 0.5);
  SelectionState s(p);
  CHECK(is_surrogate_feasible(s, p));
  for (ElementId i = 0; i < 3; ++i) s.insert({i, 0.0});
  CHECK(s.surrogate() == 3.0);
  CHECK(is_surrogate_feasible(s, p));
  s.insert({3, 0.0});
  CHECK_FALSE(is_surrogate_feasible(s, p));
}

TEST_CASE("I2 sets of size epsilon + 1 are never feasible") {
  const auto built = build_i2({});
  const auto& inst = built.instance;
  const auto& p = inst.params();
  // Every 6-subset of the 10 elements.
  for (unsigned mask = 0; mask < (1u << 10); ++mask) {
    if (__builtin_popcount(mask) != 6) continue;
    SelectionState s(p);
    for (unsigned b = 0; b < 10; ++b) {
      if (mask & (1u << b)) s.insert(inst[b]);
    }
    CHECK_FALSE(is_surrogate_feasible(s, p));
  }
}

TEST_CASE("single violation probability") {
  CHECK(single_violation_prob(0.0, 1.5) == 0.0);
  CHECK(single_violation_prob(0.5, 1.25) == 0.25);
  CHECK(single_violation_prob(0.2, 1.3) == 0.0);
  CHECK(single_violation_prob(1.0, 1.0 + 1e-12) == doctest::Approx(0.5));
}

TEST_CASE("monte carlo violation estimate") {
  const ChanceParams p(3.5, 0.1);
  const Instance flat(p, {{0, 0.0}, {1, 0.0}, {2, 0.0}});
  const ElementId all[] = {0, 1, 2};
  CHECK(mc_violation_estimate(all, flat, p, 1000, 1) == 0.0);

  const ChanceParams q(1.25, 0.3);
  const Instance single(q, {{4, 0.5}});
  const ElementId one[] = {4};
  const double rate = mc_violation_estimate(one, single, q, 1000000, 42);
  CHECK(std::abs(rate - 0.25) <= 3.0 * std::sqrt(0.25 * 0.75 / 1e6));
  CHECK(mc_violation_estimate(one, single, q, 1000000, 42) == rate);

  const ElementId unknown[] = {9};
  CHECK_THROWS_AS(mc_violation_estimate(unknown, single, q, 10, 1), InputError);
  CHECK_THROWS_AS(mc_violation_estimate(one, single, q, 0, 1), ParameterError);
}

TEST_CASE("monte carlo agrees with the exact single-element tail") {
  for (std::uint64_t k = 0; k < 100; ++k) {
    const double delta = 0.05 + 0.95 * stream_uniform(3, StreamTag::axiom_check, 0, k);
    const double budget = 1.0 + 1e-9 + 1.2 * delta * stream_uniform(3, StreamTag::axiom_check, 1, k);
    const ChanceParams p(budget, 0.5);
    const Instance inst(p, {{0, delta}});
    const ElementId one[] = {0};
    constexpr std::uint64_t samples = 20000;
    const double exact = single_violation_prob(delta, budget);
    const double est = mc_violation_estimate(one, inst, p, samples, k);
    const double se = std::sqrt(std::max(exact * (1.0 - exact), 1e-12) / samples);
    CHECK(std::abs(est - exact) <= 3.0 * se + 1e-12);
  }
}

TEST_CASE("surrogate-feasible sets respect alpha empirically") {
  const auto built = build_i2({});
  const auto& inst = built.instance;
  const ElementId block[] = {6, 7, 8, 9, 10};
  const double rate = mc_violation_estimate(block, inst, inst.params(), 100000, 7);
  CHECK(rate <= 0.25 + 3.0 * std::sqrt(0.25 / 100000.0));

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const double alpha = seed % 2 ? 0.05 : 0.2;
    const Instance random = build_random_instance(30, 8.0, alpha, seed);
    SelectionState s(random.params());
    for (const Element& e : random.elements()) {
      if (s.surrogate_with(e) <= random.params().budget()) s.insert(e);
    }
    const double r = mc_violation_estimate(s.members(), random, random.params(), 100000, seed);
    CHECK(r <= alpha + 3.0 * std::sqrt(alpha / 100000.0));
  }
}
