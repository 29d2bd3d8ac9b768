#include "ccsub/graph.hpp"

#include <zlib.h>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iterator>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "ccsub/error.hpp"

namespace ccsub {

Graph::Graph(std::size_t node_count, std::vector<Edge> edges) {
  for (auto& [u, v] : edges) {
    if (u >= node_count || v >= node_count) {
      throw InputError("edge (" + std::to_string(u) + ", " + std::to_string(v) + ") outside node range");
    }
    if (u > v) std::swap(u, v);
  }
  const auto loops = std::remove_if(edges.begin(), edges.end(), [](const Edge& e) { return e.first == e.second; });
  self_loops_dropped_ = static_cast<std::size_t>(std::distance(loops, edges.end()));
  edges.erase(loops, edges.end());
  std::sort(edges.begin(), edges.end());
  const auto dup = std::unique(edges.begin(), edges.end());
  duplicates_dropped_ = static_cast<std::size_t>(std::distance(dup, edges.end()));
  edges.erase(dup, edges.end());
  edges_ = std::move(edges);

  offsets_.assign(node_count + 1, 0);
  for (const auto& [u, v] : edges_) {
    ++offsets_[u + 1];
    ++offsets_[v + 1];
  }
  std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
  adjacency_.resize(2 * edges_.size());
  std::vector<std::uint32_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const auto& [u, v] : edges_) {
    adjacency_[fill[u]++] = v;
    adjacency_[fill[v]++] = u;
  }
  for (std::size_t x = 0; x < node_count; ++x) {
    std::sort(adjacency_.begin() + offsets_[x], adjacency_.begin() + offsets_[x + 1]);
  }
}

GraphFormat parse_graph_format(std::string_view name) {
  if (name == "edgelist") return GraphFormat::edgelist;
  if (name == "dimacs") return GraphFormat::dimacs;
  if (name == "mtx") return GraphFormat::mtx;
  throw InputError("unknown graph format '" + std::string(name) + "'");
}

namespace {

class LineTokens {
 public:
  explicit LineTokens(std::string_view line) : rest_(line) {}

  std::string_view next() {
    const auto begin = rest_.find_first_not_of(" \t\r");
    if (begin == std::string_view::npos) {
      rest_ = {};
      return {};
    }
    rest_.remove_prefix(begin);
    const auto end = std::min(rest_.find_first_of(" \t\r"), rest_.size());
    auto tok = rest_.substr(0, end);
    rest_.remove_prefix(end);
    return tok;
  }

 private:
  std::string_view rest_;
};

std::uint64_t parse_uint(std::string_view tok, std::size_t line, const char* what) {
  std::uint64_t value = 0;
  const auto* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, value);
  if (tok.empty() || ec != std::errc() || ptr != end) {
    throw ParseError(line, std::string("expected non-negative integer ") + what + ", got '" + std::string(tok) + "'");
  }
  return value;
}

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    const auto line = text.substr(0, nl);
    fn(line_no, line);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
}

bool blank(std::string_view line) { return line.find_first_not_of(" \t\r") == std::string_view::npos; }

constexpr std::uint64_t kMaxNodes = std::uint64_t{1} << 31;

Graph parse_edgelist(std::string_view text) {
  std::vector<Edge> edges;
  std::uint64_t max_id = 0;
  bool any = false;
  for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    if (blank(line)) return;
    LineTokens tokens(line);
    const auto first = tokens.next();
    if (first.front() == '#' || first.front() == '%') return;
    const auto u = parse_uint(first, line_no, "source id");
    const auto v = parse_uint(tokens.next(), line_no, "target id");
    if (u >= kMaxNodes || v >= kMaxNodes) throw ParseError(line_no, "node id too large");
    max_id = std::max({max_id, u, v});
    any = true;
    edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
  });
  return Graph(any ? static_cast<std::size_t>(max_id + 1) : 0, std::move(edges));
}

// Reads a 1-based pair and returns it 0-based, checking it against n.
Edge one_based_pair(LineTokens& tokens, std::string_view first, std::uint64_t n, std::size_t line_no) {
  const auto u = parse_uint(first, line_no, "source id");
  const auto v = parse_uint(tokens.next(), line_no, "target id");
  if (u == 0 || v == 0) throw ParseError(line_no, "node ids are 1-based");
  if (u > n || v > n) throw ParseError(line_no, "node id exceeds declared node count " + std::to_string(n));
  return {static_cast<NodeId>(u - 1), static_cast<NodeId>(v - 1)};
}

Graph parse_dimacs(std::string_view text) {
  std::vector<Edge> edges;
  std::optional<std::uint64_t> n;
  for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    if (blank(line)) return;
    LineTokens tokens(line);
    const auto kind = tokens.next();
    if (kind == "c" || kind.front() == '%' || kind.front() == '#') return;
    if (kind == "p") {
      if (n) throw ParseError(line_no, "duplicate problem line");
      tokens.next();  // "edge" / "col"
      n = parse_uint(tokens.next(), line_no, "node count");
      parse_uint(tokens.next(), line_no, "edge count");
      if (*n >= kMaxNodes) throw ParseError(line_no, "node count too large");
      return;
    }
    if (kind == "e") {
      if (!n) throw ParseError(line_no, "edge line before problem line");
      edges.push_back(one_based_pair(tokens, tokens.next(), *n, line_no));
      return;
    }
    throw ParseError(line_no, "unrecognized line type '" + std::string(kind) + "'");
  });
  if (!n) throw ParseError(0, "missing 'p edge n m' line");
  return Graph(static_cast<std::size_t>(*n), std::move(edges));
}

Graph parse_mtx(std::string_view text) {
  std::vector<Edge> edges;
  std::optional<std::uint64_t> n;
  for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    if (blank(line)) return;
    LineTokens tokens(line);
    const auto first = tokens.next();
    if (first.front() == '%') return;
    if (!n) {
      const auto rows = parse_uint(first, line_no, "row count");
      const auto cols = parse_uint(tokens.next(), line_no, "column count");
      parse_uint(tokens.next(), line_no, "entry count");
      if (rows != cols) throw ParseError(line_no, "adjacency matrix must be square");
      if (rows >= kMaxNodes) throw ParseError(line_no, "node count too large");
      n = rows;
      return;
    }
    edges.push_back(one_based_pair(tokens, first, *n, line_no));
  });
  if (!n) throw ParseError(0, "missing size line");
  return Graph(static_cast<std::size_t>(*n), std::move(edges));
}

}  // namespace

Graph parse_graph(std::string_view text, GraphFormat format) {
  switch (format) {
    case GraphFormat::edgelist:
      return parse_edgelist(text);
    case GraphFormat::dimacs:
      return parse_dimacs(text);
    case GraphFormat::mtx:
      return parse_mtx(text);
  }
  throw std::logic_error("unhandled graph format");
}

Graph parse_graph(std::istream& in, GraphFormat format) {
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_graph(maybe_gunzip(std::move(bytes)), format);
}

Graph read_graph_file(const std::filesystem::path& path, GraphFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot open " + path.string());
  return parse_graph(in, format);
}

std::string maybe_gunzip(std::string bytes) {
  if (bytes.size() < 2 || static_cast<unsigned char>(bytes[0]) != 0x1f ||
      static_cast<unsigned char>(bytes[1]) != 0x8b) {
    return bytes;
  }
  z_stream zs{};
  if (inflateInit2(&zs, 16 + MAX_WBITS) != Z_OK) throw InputError("zlib initialization failed");
  zs.next_in = reinterpret_cast<Bytef*>(bytes.data());
  zs.avail_in = static_cast<uInt>(bytes.size());
  std::string out;
  char buffer[1 << 16];
  int rc = Z_OK;
  while (rc != Z_STREAM_END) {
    zs.next_out = reinterpret_cast<Bytef*>(buffer);
    zs.avail_out = sizeof(buffer);
    rc = inflate(&zs, Z_NO_FLUSH);
    if (rc != Z_OK && rc != Z_STREAM_END) {
      inflateEnd(&zs);
      throw InputError("corrupt gzip stream");
    }
    out.append(buffer, sizeof(buffer) - zs.avail_out);
    if (rc == Z_OK && zs.avail_in == 0 && zs.avail_out != 0) {
      inflateEnd(&zs);
      throw InputError("truncated gzip stream");
    }
  }
  inflateEnd(&zs);
  return out;
}

void write_edgelist(std::ostream& out, const Graph& graph) {
  for (const auto& [u, v] : graph.edges()) out << u << ' ' << v << '\n';
}

std::vector<double> degree_dispersions(const Graph& graph) {
  if (graph.edge_count() == 0) throw std::domain_error("degree dispersions need at least one edge");
  const double total = 2.0 * static_cast<double>(graph.edge_count());
  std::vector<double> out(graph.node_count());
  for (std::size_t v = 0; v < out.size(); ++v) {
    out[v] = std::min(1.0, static_cast<double>(graph.degree(static_cast<NodeId>(v))) / total);
  }
  return out;
}

}  // namespace ccsub
