#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ccsub/kernels.hpp"

namespace ccsub {

using Edge = std::pair<NodeId, NodeId>;

// Simple undirected graph. Edges are stored canonically (u < v), sorted,
// without duplicates or self-loops.
class Graph {
 public:
  Graph() = default;
  // Normalizes `edges`; entries with an endpoint >= node_count throw InputError.
  Graph(std::size_t node_count, std::vector<Edge> edges);

  std::size_t node_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::span<const NodeId> neighbors(NodeId v) const {
    return std::span<const NodeId>(adjacency_).subspan(offsets_[v], offsets_[v + 1] - offsets_[v]);
  }
  std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }

  std::size_t self_loops_dropped() const noexcept { return self_loops_dropped_; }
  std::size_t duplicates_dropped() const noexcept { return duplicates_dropped_; }

 private:
  std::vector<Edge> edges_;
  std::vector<std::uint32_t> offsets_;
  std::vector<NodeId> adjacency_;
  std::size_t self_loops_dropped_ = 0;
  std::size_t duplicates_dropped_ = 0;
};

enum class GraphFormat { edgelist, dimacs, mtx };

// "edgelist", "dimacs" or "mtx"; throws InputError otherwise.
GraphFormat parse_graph_format(std::string_view name);

// Parses already-decompressed text. Throws ParseError with a 1-based line number.
Graph parse_graph(std::string_view text, GraphFormat format);
Graph parse_graph(std::istream& in, GraphFormat format);
// Reads a file, inflating it first when it starts with the gzip magic bytes.
Graph read_graph_file(const std::filesystem::path& path, GraphFormat format);

// Writes the normalized edge list ("u v" per line, 0-based).
void write_edgelist(std::ostream& out, const Graph& graph);

// delta_i = degree(i) / sum of degrees, clamped to at most 1.
// Throws std::domain_error on a graph without edges.
std::vector<double> degree_dispersions(const Graph& graph);

// Inflates gzip data; returns the input unchanged if it lacks the gzip magic.
std::string maybe_gunzip(std::string bytes);

}  // namespace ccsub
