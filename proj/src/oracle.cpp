#include "ccsub/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <mutex>
#include <string>

#include "ccsub/error.hpp"
#include "ccsub/graph.hpp"

namespace ccsub {

namespace {

bool contains(std::span<const std::uint32_t> members, std::uint32_t v) {
  return std::find(members.begin(), members.end(), v) != members.end();
}

// Per-thread visited marks for cursor BFS; reset whenever the node count changes.
struct BfsScratch {
  std::vector<std::uint32_t> stamp;
  std::uint32_t epoch = 0;
  std::vector<NodeId> stack;

  std::uint32_t next_epoch(std::size_t node_count) {
    if (stamp.size() != node_count || epoch == UINT32_MAX) {
      stamp.assign(node_count, 0);
      epoch = 0;
    }
    return ++epoch;
  }
};

thread_local BfsScratch tls_scratch;

class LinearCursor final : public OracleCursor {
 public:
  explicit LinearCursor(const LinearOracle& oracle)
      : values_(oracle.values()), selected_(values_.size(), 0) {}

  double value() const override { return value_; }
  double gain(std::uint32_t v) const override { return selected_[v] ? 0.0 : values_[v]; }
  void add(std::uint32_t v) override {
    if (selected_[v]) return;
    selected_[v] = 1;
    value_ += values_[v];
  }

 private:
  std::span<const double> values_;
  std::vector<char> selected_;
  double value_ = 0.0;
};

class CoverageCursor final : public OracleCursor {
 public:
  explicit CoverageCursor(const Graph& graph) : graph_(graph), covered_(graph.node_count(), 0) {}

  double value() const override { return static_cast<double>(count_); }
  double gain(std::uint32_t v) const override {
    std::uint64_t fresh = covered_[v] ? 0 : 1;
    for (NodeId u : graph_.neighbors(v)) fresh += covered_[u] ? 0 : 1;
    return static_cast<double>(fresh);
  }
  void add(std::uint32_t v) override {
    if (!covered_[v]) {
      covered_[v] = 1;
      ++count_;
    }
    for (NodeId u : graph_.neighbors(v)) {
      if (!covered_[u]) {
        covered_[u] = 1;
        ++count_;
      }
    }
  }

 private:
  const Graph& graph_;
  std::vector<char> covered_;
  std::uint64_t count_ = 0;
};

class InfluenceCursor final : public OracleCursor {
 public:
  explicit InfluenceCursor(const LiveEdgeSamples& live)
      : live_(live), reached_(live.sample_count(), std::vector<char>(live.node_count, 0)) {}

  double value() const override { return scaled(total_); }
  double gain(std::uint32_t v) const override { return scaled(fresh_count(v)); }
  double value_with(std::uint32_t v) const override { return scaled(total_ + fresh_count(v)); }
  void add(std::uint32_t v) override {
    auto& stack = tls_scratch.stack;
    for (std::size_t r = 0; r < live_.sample_count(); ++r) {
      auto& reached = reached_[r];
      if (reached[v]) continue;
      reached[v] = 1;
      ++total_;
      stack.assign(1, v);
      while (!stack.empty()) {
        const NodeId u = stack.back();
        stack.pop_back();
        for (NodeId w : live_.out(r, u)) {
          if (!reached[w]) {
            reached[w] = 1;
            ++total_;
            stack.push_back(w);
          }
        }
      }
    }
  }

 private:
  double scaled(std::uint64_t count) const {
    return static_cast<double>(count) / static_cast<double>(live_.sample_count());
  }

  // Nodes newly reached from v, summed over samples.
  std::uint64_t fresh_count(std::uint32_t v) const {
    BfsScratch& scratch = tls_scratch;
    std::uint64_t fresh = 0;
    for (std::size_t r = 0; r < live_.sample_count(); ++r) {
      const auto& reached = reached_[r];
      if (reached[v]) continue;
      const std::uint32_t epoch = scratch.next_epoch(live_.node_count);
      scratch.stamp[v] = epoch;
      scratch.stack.assign(1, v);
      ++fresh;
      while (!scratch.stack.empty()) {
        const NodeId u = scratch.stack.back();
        scratch.stack.pop_back();
        for (NodeId w : live_.out(r, u)) {
          if (!reached[w] && scratch.stamp[w] != epoch) {
            scratch.stamp[w] = epoch;
            scratch.stack.push_back(w);
            ++fresh;
          }
        }
      }
    }
    return fresh;
  }

  const LiveEdgeSamples& live_;
  std::vector<std::vector<char>> reached_;
  std::uint64_t total_ = 0;
};

}  // namespace

void SubmodularOracle::check_members(std::span<const std::uint32_t> members) const {
  const std::size_t n = ground_size();
  for (std::uint32_t v : members) {
    if (v >= n) throw InputError("unknown node id " + std::to_string(v));
  }
}

double SubmodularOracle::marginal(std::uint32_t v, std::span<const std::uint32_t> members) const {
  if (contains(members, v)) return 0.0;
  std::vector<std::uint32_t> grown(members.begin(), members.end());
  grown.push_back(v);
  return eval(grown) - eval(members);
}

LinearOracle::LinearOracle(std::vector<double> values) : values_(std::move(values)) {
  for (double c : values_) {
    if (!(c >= 0.0) || !std::isfinite(c)) throw ParameterError("linear coefficients must be finite and >= 0");
  }
}

double LinearOracle::eval(std::span<const std::uint32_t> members) const {
  check_members(members);
  double sum = 0.0;
  for (std::uint32_t v : members) sum += values_[v];
  return sum;
}

double LinearOracle::marginal(std::uint32_t v, std::span<const std::uint32_t> members) const {
  check_members(members);
  if (v >= values_.size()) throw InputError("unknown node id " + std::to_string(v));
  return contains(members, v) ? 0.0 : values_[v];
}

std::unique_ptr<OracleCursor> LinearOracle::cursor() const { return std::make_unique<LinearCursor>(*this); }

std::size_t CoverageOracle::ground_size() const { return graph_->node_count(); }

std::uint64_t CoverageOracle::covered_count(std::span<const std::uint32_t> members) const {
  check_members(members);
  std::vector<char> covered(graph_->node_count(), 0);
  std::uint64_t count = 0;
  auto mark = [&](NodeId u) {
    if (!covered[u]) {
      covered[u] = 1;
      ++count;
    }
  };
  for (std::uint32_t v : members) {
    mark(v);
    for (NodeId u : graph_->neighbors(v)) mark(u);
  }
  return count;
}

double CoverageOracle::eval(std::span<const std::uint32_t> members) const {
  return static_cast<double>(covered_count(members));
}

std::unique_ptr<OracleCursor> CoverageOracle::cursor() const {
  return std::make_unique<CoverageCursor>(*graph_);
}

struct InfluenceOracle::SingletonCache {
  std::once_flag once;
  std::optional<std::vector<double>> values;
};

InfluenceOracle::InfluenceOracle(LiveEdgeSamples samples)
    : live_(std::move(samples)), singletons_(std::make_shared<SingletonCache>()) {
  if (live_.sample_count() == 0) throw ParameterError("influence oracle needs at least one live-edge sample");
}

double InfluenceOracle::eval(std::span<const std::uint32_t> members) const {
  check_members(members);
  return static_cast<double>(kernels::reach_count(live_, members)) / static_cast<double>(sample_count());
}

double InfluenceOracle::marginal(std::uint32_t v, std::span<const std::uint32_t> members) const {
  check_members(members);
  if (v >= ground_size()) throw InputError("unknown node id " + std::to_string(v));
  if (contains(members, v)) return 0.0;
  std::vector<std::uint32_t> grown(members.begin(), members.end());
  grown.push_back(v);
  const auto with = kernels::reach_count(live_, grown);
  const auto without = kernels::reach_count(live_, members);
  return static_cast<double>(with - without) / static_cast<double>(sample_count());
}

std::unique_ptr<OracleCursor> InfluenceOracle::cursor() const { return std::make_unique<InfluenceCursor>(live_); }

std::optional<std::vector<double>> InfluenceOracle::singleton_values() const {
  std::call_once(singletons_->once, [this] {
    const auto counts = singleton_reach_counts(live_);
    if (counts.empty() && live_.node_count > 0) return;
    std::vector<double> values(counts.size());
    const auto r = static_cast<double>(sample_count());
    for (std::size_t v = 0; v < counts.size(); ++v) values[v] = static_cast<double>(counts[v]) / r;
    singletons_->values = std::move(values);
  });
  return singletons_->values;
}

std::vector<std::uint64_t> singleton_reach_counts(const LiveEdgeSamples& live, std::size_t max_words) {
  const std::size_t n = live.node_count;
  const std::size_t words = (n + 63) / 64;
  constexpr std::uint32_t kUnseen = UINT32_MAX;
  std::vector<std::uint64_t> total(n, 0);
  std::vector<std::uint32_t> index(n), low(n), comp(n);
  std::vector<char> on_stack(n);
  std::vector<NodeId> tarjan_stack;
  std::vector<std::pair<NodeId, std::uint32_t>> call;  // node, next out-arc position
  std::vector<std::uint64_t> bits;
  std::vector<std::uint64_t> comp_reach;

  for (std::size_t r = 0; r < live.sample_count(); ++r) {
    std::fill(index.begin(), index.end(), kUnseen);
    std::fill(on_stack.begin(), on_stack.end(), 0);
    std::uint32_t counter = 0;
    std::uint32_t comps = 0;
    bits.clear();
    comp_reach.clear();

    // Iterative Tarjan. Components are closed in reverse topological order,
    // so every successor component already has its reach set.
    for (NodeId root = 0; root < n; ++root) {
      if (index[root] != kUnseen) continue;
      call.emplace_back(root, 0);
      while (!call.empty()) {
        auto& [v, pos] = call.back();
        if (pos == 0 && index[v] == kUnseen) {
          index[v] = low[v] = counter++;
          tarjan_stack.push_back(v);
          on_stack[v] = 1;
        }
        const auto out = live.out(r, v);
        if (pos < out.size()) {
          const NodeId w = out[pos++];
          if (index[w] == kUnseen) {
            call.emplace_back(w, 0);
          } else if (on_stack[w]) {
            low[v] = std::min(low[v], index[w]);
          }
          continue;
        }
        const NodeId done = v;
        call.pop_back();
        if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
        if (low[done] != index[done]) continue;

        if ((static_cast<std::size_t>(comps) + 1) * words > max_words) return {};
        const std::size_t c = comps++;
        bits.resize(bits.size() + words, 0);
        std::uint64_t* own = bits.data() + c * words;
        const std::size_t first = tarjan_stack.size();
        std::size_t start = first;
        while (true) {
          const NodeId u = tarjan_stack[--start];
          on_stack[u] = 0;
          comp[u] = static_cast<std::uint32_t>(c);
          own[u / 64] |= std::uint64_t{1} << (u % 64);
          if (u == done) break;
        }
        for (std::size_t k = start; k < first; ++k) {
          for (NodeId w : live.out(r, tarjan_stack[k])) {
            const std::size_t cw = comp[w];
            if (cw == c) continue;
            const std::uint64_t* other = bits.data() + cw * words;
            for (std::size_t q = 0; q < words; ++q) own[q] |= other[q];
          }
        }
        std::uint64_t size = 0;
        for (std::size_t q = 0; q < words; ++q) size += static_cast<std::uint64_t>(std::popcount(own[q]));
        comp_reach.push_back(size);
        tarjan_stack.resize(start);
      }
    }
    for (NodeId v = 0; v < n; ++v) total[v] += comp_reach[comp[v]];
  }
  return total;
}

std::vector<Arc> symmetrized_arcs(const Graph& graph) {
  std::vector<Arc> arcs;
  arcs.reserve(2 * graph.edge_count());
  for (const auto& [u, v] : graph.edges()) {
    arcs.emplace_back(u, v);
    arcs.emplace_back(v, u);
  }
  return arcs;
}

InfluenceOracle build_live_edge_samples(std::size_t node_count, std::span<const Arc> arcs, double p,
                                        std::size_t samples, std::uint64_t seed) {
  if (samples == 0) throw ParameterError("live-edge sample count must be >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("edge probability must lie in [0, 1]");
  return InfluenceOracle(kernels::sample_live_edges(node_count, arcs, p, samples, seed));
}

InfluenceOracle build_live_edge_samples(const Graph& graph, double p, std::size_t samples, std::uint64_t seed) {
  const auto arcs = symmetrized_arcs(graph);
  return build_live_edge_samples(graph.node_count(), arcs, p, samples, seed);
}

double coverage_eval(const CoverageOracle& oracle, std::span<const std::uint32_t> members) {
  return oracle.eval(members);
}

double influence_eval(const InfluenceOracle& oracle, std::span<const std::uint32_t> members) {
  return oracle.eval(members);
}

}  // namespace ccsub
