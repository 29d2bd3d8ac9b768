#include "ccsub/instances.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_set>

#include "ccsub/error.hpp"
#include "ccsub/random.hpp"

namespace ccsub {

namespace {

std::string decimal17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

double surrogate_of_single(double delta, double kappa) { return 1.0 + kappa * std::sqrt(delta * delta / 3.0); }

}  // namespace

std::pair<double, double> i1_alpha_interval(int budget, double gamma) {
  const double b1 = budget - 1.0;
  const double b2 = budget - 2.0;
  return {gamma / (gamma + 3.0 * b1 * b1), gamma / (gamma + 3.0 * b2 * b2)};
}

LinearInstance build_i1(const I1Params& p) {
  if (p.budget < 3) throw ParameterError("I1 needs an integer budget >= 3");
  if (!(p.gamma > 0.0 && p.gamma <= 1.0)) throw ParameterError("I1 needs gamma in (0, 1]");
  const int n = p.n.value_or(p.budget + 1);
  if (n < p.budget + 1) throw ParameterError("I1 needs at least B + 1 elements");

  const auto [lo, hi] = i1_alpha_interval(p.budget, p.gamma);
  if (!(lo < hi)) throw ParameterError("I1 admissible alpha interval is empty");
  const double alpha = p.alpha.value_or(0.5 * (lo + hi));
  const ChanceParams params(static_cast<double>(p.budget), alpha);

  // Gamma({1}) must sit strictly inside (B - 1, B) so that element 1 is
  // accepted and then blocks every deterministic element.
  const double delta1 = std::sqrt(p.gamma);
  const double g1 = surrogate_of_single(delta1, params.kappa());
  if (!(g1 > p.budget - 1.0 && g1 < p.budget)) {
    throw ParameterError("I1 precondition failed: Gamma({1}) = " + decimal17(g1) + " not in (B-1, B)");
  }
  if (!(g1 + 1.0 > p.budget)) throw ParameterError("I1 precondition failed: Gamma({1, j}) <= B");

  std::vector<Element> elements;
  elements.reserve(n);
  elements.push_back({1, delta1});
  for (int i = 2; i <= n; ++i) elements.push_back({static_cast<ElementId>(i), 0.0});
  std::vector<double> values(n, 1.0);
  Instance instance(params, std::move(elements), values);
  return {std::move(instance), LinearOracle(std::move(values))};
}

LinearInstance build_i2(const I2Params& p) {
  const int eps = p.epsilon;
  if (eps < 1) throw ParameterError("I2 needs epsilon >= 1");
  const int n = p.n.value_or(2 * eps);
  if (n < 2 * eps) throw ParameterError("I2 needs n >= 2 * epsilon");
  if (!(p.alpha > 0.0 && p.alpha < 0.5)) throw ParameterError("I2 needs alpha in (0, 0.5)");
  if (!(p.gamma > 0.0) || !(p.beta > 0.0)) throw ParameterError("I2 needs gamma > 0 and beta > 0");
  const double load = eps * p.gamma + p.beta;
  if (load > 3.0 * p.alpha / (1.0 - p.alpha)) {
    throw ParameterError("I2 needs epsilon*gamma + beta <= 3 alpha / (1 - alpha)");
  }
  const double small = std::sqrt(p.gamma / eps);
  const double large = std::sqrt(load / eps);
  if (large > 1.0) throw ParameterError("I2 dispersion exceeds 1; lower gamma or beta");

  const ChanceParams params(eps + 1.0, p.alpha);
  std::vector<Element> elements;
  std::vector<double> values;
  for (int i = 1; i <= n; ++i) {
    const bool first_block = i <= eps;
    elements.push_back({static_cast<ElementId>(i), first_block ? small : large});
    values.push_back(first_block ? 1.0 : static_cast<double>(eps));
  }

  // The heaviest epsilon-set uses only large dispersions; the lightest
  // (epsilon+1)-set uses as many small ones as exist.
  std::vector<double> heavy(static_cast<std::size_t>(eps), large);
  if (surrogate_of(heavy, params.kappa()) > params.budget()) {
    throw ParameterError("I2 precondition failed: some epsilon-size set is infeasible");
  }
  std::vector<double> light(static_cast<std::size_t>(eps), small);
  light.push_back(large);
  if (!(surrogate_of(light, params.kappa()) > params.budget())) {
    throw ParameterError("I2 precondition failed: some (epsilon+1)-size set is feasible");
  }

  Instance instance(params, std::move(elements), values);
  return {std::move(instance), LinearOracle(std::move(values))};
}

std::vector<double> uniform_dispersions(std::size_t n, std::uint64_t seed) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = stream_uniform(seed, StreamTag::dispersion, 0, i);
  return out;
}

Instance build_random_instance(int n, double budget, double alpha, std::uint64_t seed) {
  if (n < 1) throw ParameterError("random instance needs n >= 1");
  const auto deltas = uniform_dispersions(static_cast<std::size_t>(n), seed);
  std::vector<Element> elements;
  elements.reserve(deltas.size());
  for (std::size_t i = 0; i < deltas.size(); ++i) elements.push_back({static_cast<ElementId>(i), deltas[i]});
  return Instance(ChanceParams(budget, alpha), std::move(elements));
}

namespace {

double parse_decimal(const std::string& tok, std::size_t line) {
  double value = 0.0;
  const auto* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, value);
  if (tok.empty() || ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw ParseError(line, "expected a decimal, got '" + tok + "'");
  }
  return value;
}

std::uint64_t parse_count(const std::string& tok, std::size_t line) {
  std::uint64_t value = 0;
  const auto* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, value);
  if (tok.empty() || ec != std::errc() || ptr != end) {
    throw ParseError(line, "expected a non-negative integer, got '" + tok + "'");
  }
  return value;
}

}  // namespace

Instance read_instance(std::istream& in) {
  std::optional<std::uint64_t> n;
  std::optional<double> budget, alpha;
  std::vector<Element> elements;
  std::vector<double> values;
  std::optional<bool> with_values;
  std::unordered_set<ElementId> seen;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream fields(line);
    std::string key;
    if (!(fields >> key) || key.front() == '#') continue;
    std::vector<std::string> args;
    for (std::string tok; fields >> tok;) args.push_back(tok);

    auto expect_args = [&](std::size_t lo, std::size_t hi) {
      if (args.size() < lo || args.size() > hi) throw ParseError(line_no, "wrong field count for '" + key + "'");
    };
    if (key == "n") {
      expect_args(1, 1);
      if (n) throw ParseError(line_no, "duplicate 'n' header");
      n = parse_count(args[0], line_no);
    } else if (key == "B") {
      expect_args(1, 1);
      if (budget) throw ParseError(line_no, "duplicate 'B' header");
      budget = parse_decimal(args[0], line_no);
    } else if (key == "alpha") {
      expect_args(1, 1);
      if (alpha) throw ParseError(line_no, "duplicate 'alpha' header");
      alpha = parse_decimal(args[0], line_no);
    } else if (key == "elem") {
      if (!n || !budget || !alpha) throw ParseError(line_no, "element before the n/B/alpha headers");
      expect_args(2, 3);
      const auto id = parse_count(args[0], line_no);
      if (id > UINT32_MAX) throw ParseError(line_no, "element id too large");
      if (seen.contains(static_cast<ElementId>(id))) {
        throw ParseError(line_no, "duplicate element id " + args[0]);
      }
      const double delta = parse_decimal(args[1], line_no);
      if (!(delta >= 0.0 && delta <= 1.0)) throw ParseError(line_no, "dispersion must lie in [0, 1]");
      const bool has_value = args.size() == 3;
      if (with_values && *with_values != has_value) {
        throw ParseError(line_no, "objective values must be given for all elements or none");
      }
      with_values = has_value;
      if (has_value) {
        const double v = parse_decimal(args[2], line_no);
        if (v < 0.0) throw ParseError(line_no, "objective value must be >= 0");
        values.push_back(v);
      }
      seen.insert(static_cast<ElementId>(id));
      elements.push_back({static_cast<ElementId>(id), delta});
    } else {
      throw ParseError(line_no, "unknown record '" + key + "'");
    }
  }
  if (!n) throw ParseError(line_no, "missing 'n' header");
  if (!budget) throw ParseError(line_no, "missing 'B' header");
  if (!alpha) throw ParseError(line_no, "missing 'alpha' header");
  if (elements.size() != *n) {
    throw ParseError(line_no, "expected " + std::to_string(*n) + " elements, found " + std::to_string(elements.size()));
  }
  try {
    return Instance(ChanceParams(*budget, *alpha), std::move(elements), std::move(values));
  } catch (const ParameterError& e) {
    throw ParseError(line_no, e.what());
  }
}

Instance read_instance_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open " + path.string());
  return read_instance(in);
}

void write_instance(std::ostream& out, const Instance& instance) {
  out << "n " << instance.size() << '\n';
  out << "B " << decimal17(instance.params().budget()) << '\n';
  out << "alpha " << decimal17(instance.params().alpha()) << '\n';
  for (std::size_t i = 0; i < instance.size(); ++i) {
    out << "elem " << instance[i].id << ' ' << decimal17(instance[i].delta);
    if (instance.has_values()) out << ' ' << decimal17(instance.values()[i]);
    out << '\n';
  }
}

void write_instance_file(const std::filesystem::path& path, const Instance& instance) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot write " + path.string());
  write_instance(out, instance);
  if (!out) throw std::ios_base::failure("write failed for " + path.string());
}

LinearOracle linear_oracle_for(const Instance& instance) {
  if (instance.has_values()) {
    return LinearOracle(std::vector<double>(instance.values().begin(), instance.values().end()));
  }
  return LinearOracle(std::vector<double>(instance.size(), 1.0));
}

}  // namespace ccsub
