#pragma once

// Test-only helpers: seeded graph generators, a reference greedy, and a
// deliberately non-submodular oracle.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include "ccsub/chance.hpp"
#include "ccsub/graph.hpp"
#include "ccsub/oracle.hpp"
#include "ccsub/random.hpp"

namespace ccsub::testing {

inline Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (stream_uniform(seed, StreamTag::graph_gen, u, v) < p) edges.emplace_back(u, v);
    }
  }
  return Graph(n, std::move(edges));
}

inline Graph star(std::size_t leaves) {
  std::vector<Edge> edges;
  for (NodeId v = 1; v <= leaves; ++v) edges.emplace_back(0, v);
  return Graph(leaves + 1, std::move(edges));
}

// RB-model style graph: `groups` cliques of `group_size` nodes plus random
// inter-clique edges up to `edge_target`, keeping one hidden node per clique
// independent. Same shape as the frb benchmark family.
inline Graph rb_like(std::size_t groups, std::size_t group_size, std::size_t edge_target, std::uint64_t seed) {
  const std::size_t n = groups * group_size;
  std::set<Edge> edges;
  for (std::size_t g = 0; g < groups; ++g) {
    for (std::size_t a = 0; a < group_size; ++a) {
      for (std::size_t b = a + 1; b < group_size; ++b) {
        edges.emplace(static_cast<NodeId>(g * group_size + a), static_cast<NodeId>(g * group_size + b));
      }
    }
  }
  std::vector<NodeId> hidden(groups);
  for (std::size_t g = 0; g < groups; ++g) {
    hidden[g] = static_cast<NodeId>(g * group_size + stream_bits(seed, StreamTag::graph_gen, 0, g) % group_size);
  }
  auto is_hidden = [&](NodeId v) { return hidden[v / group_size] == v; };
  for (std::uint64_t draw = 0; edges.size() < edge_target; ++draw) {
    auto u = static_cast<NodeId>(stream_bits(seed, StreamTag::graph_gen, 1, 2 * draw) % n);
    auto v = static_cast<NodeId>(stream_bits(seed, StreamTag::graph_gen, 1, 2 * draw + 1) % n);
    if (u / group_size == v / group_size) continue;
    if (is_hidden(u) && is_hidden(v)) continue;
    if (u > v) std::swap(u, v);
    edges.emplace(u, v);
  }
  return Graph(n, std::vector<Edge>(edges.begin(), edges.end()));
}

// Preferential attachment: every new node links to `m` distinct earlier
// nodes picked proportionally to degree.
inline Graph preferential_attachment(std::size_t n, std::size_t m, std::uint64_t seed) {
  std::vector<Edge> edges;
  std::vector<NodeId> endpoints;
  for (NodeId u = 0; u <= m; ++u) {
    for (NodeId v = u + 1; v <= m; ++v) {
      edges.emplace_back(u, v);
      endpoints.push_back(u);
      endpoints.push_back(v);
    }
  }
  for (NodeId v = static_cast<NodeId>(m + 1); v < n; ++v) {
    std::set<NodeId> targets;
    for (std::uint64_t draw = 0; targets.size() < m; ++draw) {
      targets.insert(endpoints[stream_bits(seed, StreamTag::graph_gen, v, draw) % endpoints.size()]);
    }
    for (NodeId u : targets) {
      edges.emplace_back(u, v);
      endpoints.push_back(u);
      endpoints.push_back(v);
    }
  }
  return Graph(n, std::move(edges));
}

inline Instance uniform_instance(std::span<const double> deltas, double budget, double alpha) {
  std::vector<Element> elements;
  for (std::size_t i = 0; i < deltas.size(); ++i) elements.push_back({static_cast<ElementId>(i), deltas[i]});
  return Instance(ChanceParams(budget, alpha), std::move(elements));
}

// Plain greedy with a cardinality limit, evaluated through eval() only.
inline std::vector<std::uint32_t> reference_greedy(const SubmodularOracle& oracle, std::size_t k) {
  std::vector<std::uint32_t> chosen;
  std::vector<char> used(oracle.ground_size(), 0);
  for (std::size_t step = 0; step < k && step < oracle.ground_size(); ++step) {
    const double base = oracle.eval(chosen);
    std::int64_t best = -1;
    double best_gain = -1.0;
    for (std::uint32_t v = 0; v < oracle.ground_size(); ++v) {
      if (used[v]) continue;
      auto grown = chosen;
      grown.push_back(v);
      const double gain = oracle.eval(grown) - base;
      if (gain > best_gain) {
        best_gain = gain;
        best = v;
      }
    }
    used[best] = 1;
    chosen.push_back(static_cast<std::uint32_t>(best));
  }
  return chosen;
}

// f(S) = |S|^2: monotone but supermodular.
class SquareOracle final : public SubmodularOracle {
 public:
  explicit SquareOracle(std::size_t n) : n_(n) {}
  std::size_t ground_size() const override { return n_; }
  double eval(std::span<const std::uint32_t> members) const override {
    const auto k = static_cast<double>(std::set<std::uint32_t>(members.begin(), members.end()).size());
    return k * k;
  }
  std::unique_ptr<OracleCursor> cursor() const override { return nullptr; }

 private:
  std::size_t n_;
};

}  // namespace ccsub::testing
