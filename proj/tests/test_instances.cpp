#include <doctest.h>

#include <cmath>
#include <numeric>
#include <sstream>

#include "ccsub/error.hpp"
#include "ccsub/instances.hpp"

using namespace ccsub;

TEST_CASE("I1 alpha interval and builder") {
  const auto [lo, hi] = i1_alpha_interval(5, 0.9);
  CHECK(lo == doctest::Approx(0.018404907975460124).epsilon(1e-15));
  CHECK(hi == doctest::Approx(0.03225806451612903).epsilon(1e-15));
  const auto [lo3, hi3] = i1_alpha_interval(3, 0.3);
  CHECK(lo3 == doctest::Approx(0.024390243902439022).epsilon(1e-15));
  CHECK(hi3 == doctest::Approx(0.09090909090909091).epsilon(1e-15));

  const auto built = build_i1({});
  const auto& inst = built.instance;
  CHECK(inst.size() == 6);
  CHECK(inst.params().alpha() == doctest::Approx(0.02533148624579458).epsilon(1e-14));
  CHECK(inst[0].id == 1);
  CHECK(inst[0].delta == doctest::Approx(std::sqrt(0.9)));
  for (std::size_t i = 1; i < 6; ++i) CHECK(inst[i].delta == 0.0);

  CHECK_THROWS_AS(build_i1({.budget = 5, .gamma = 0.0}), ParameterError);
  CHECK_THROWS_AS(build_i1({.budget = 5, .gamma = 0.9, .n = 5}), ParameterError);
  CHECK_THROWS_AS(build_i1({.budget = 5, .gamma = 0.9, .alpha = 0.5}), ParameterError);
  CHECK_NOTHROW(build_i1({.budget = 3, .gamma = 0.3}));
}

TEST_CASE("I2 builder") {
  const auto built = build_i2({});
  const auto& inst = built.instance;
  CHECK(inst.size() == 10);
  CHECK(inst.params().budget() == 6.0);
  CHECK(inst[0].delta == doctest::Approx(std::sqrt(0.02)));
  CHECK(inst[9].delta == doctest::Approx(std::sqrt(0.18)));
  CHECK(built.oracle.values()[0] == 1.0);
  CHECK(built.oracle.values()[9] == 5.0);

  CHECK_THROWS_AS(build_i2({.epsilon = 5, .n = 9}), ParameterError);
  CHECK_THROWS_AS(build_i2({.epsilon = 5, .alpha = 0.25, .gamma = 0.3, .beta = 0.4}), ParameterError);
  CHECK_THROWS_AS(build_i2({.epsilon = 5, .alpha = 0.6}), ParameterError);
}

TEST_CASE("uniform dispersions") {
  CHECK(uniform_dispersions(100, 4) == uniform_dispersions(100, 4));
  CHECK(uniform_dispersions(100, 4) != uniform_dispersions(100, 5));
  const auto big = uniform_dispersions(10000, 123);
  const double mean = std::accumulate(big.begin(), big.end(), 0.0) / 1e4;
  CHECK(std::abs(mean - 0.5) <= 0.015);
  CHECK(uniform_dispersions(0, 1).empty());
  CHECK_THROWS_AS(build_random_instance(0, 3.0, 0.1, 1), ParameterError);
}

TEST_CASE("instance file format") {
  std::istringstream minimal("n 1\nB 2\nalpha 0.5\nelem 0 0.3");
  const Instance one = read_instance(minimal);
  CHECK(one.size() == 1);
  CHECK(one[0].delta == 0.3);
  CHECK_FALSE(one.has_values());

  const auto built = build_i2({});
  std::ostringstream out;
  write_instance(out, built.instance);
  std::istringstream in(out.str());
  const Instance back = read_instance(in);
  CHECK(back == built.instance);

  auto error_line = [](const std::string& text) -> std::size_t {
    std::istringstream s(text);
    try {
      read_instance(s);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(error_line("n 1\nB 2\nalpha 0.5\nelem 0 1.5\n") == 4);
  CHECK(error_line("n 2\nB 2\nalpha 0.5\nelem 0 0.1\nelem 0 0.2\n") == 5);
  CHECK(error_line("n 2\nB 2\nalpha 0.5\nelem 0 0.1 1\nelem 1 0.2\n") == 5);
  CHECK(error_line("B 2\nalpha 0.5\nelem 0 0.1\n") == 3);
  CHECK(error_line("n 1\nB 2\nalpha 0.5\n") == 3);
  CHECK(error_line("n 1\nB 2\nalpha 1.5\nelem 0 0.1\n") == 4);
  CHECK(error_line("n 1\nn 1\n") == 2);
  CHECK(error_line("n 1\nB x\n") == 2);
  CHECK(error_line("n 1\nB 2\nalpha 0.5\nfoo 1\n") == 4);
}

TEST_CASE("linear oracle for an instance") {
  std::istringstream plain("n 2\nB 2\nalpha 0.5\nelem 4 0.1\nelem 9 0.2\n");
  const auto unit = linear_oracle_for(read_instance(plain));
  CHECK(std::vector<double>(unit.values().begin(), unit.values().end()) == std::vector<double>{1.0, 1.0});
  const auto built = build_i2({});
  const auto valued = linear_oracle_for(built.instance);
  CHECK(valued.values()[5] == 5.0);
}
