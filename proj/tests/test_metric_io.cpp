#include <doctest.h>

#include <filesystem>
#include <random>

#include "assouad/constructions.hpp"
#include "assouad/errors.hpp"
#include "assouad/metric_io.hpp"
#include "oracles.hpp"

using namespace assouad;

TEST_CASE("structured and flat documents parse to the same space") {
  const auto a = io::parse_metric(R"({"labels": ["p", "q"], "d": [[0, 1.5], [1.5, 0]]})");
  const auto b = io::parse_metric("2\n0,1.5\n1.5,0\n");
  CHECK(a.label(0) == "p");
  CHECK(a(0, 1) == b(0, 1));
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(io::parse_metric(""), ParseError);
  CHECK_THROWS_AS(io::parse_metric("{"), ParseError);
  CHECK_THROWS_AS(io::parse_metric(R"({"x": 1})"), ParseError);
  CHECK_THROWS_AS(io::parse_metric(R"({"d": [[0, "a"], [1, 0]]})"), ParseError);
  CHECK_THROWS_AS(io::parse_metric("2\n0,x\n1,0\n"), ParseError);
  CHECK_THROWS_AS(io::parse_metric("3\n0,1\n1,0\n"), MalformedMatrix);
  CHECK_THROWS_AS(io::parse_metric("2\n0,1\n2,0\n"), AsymmetryError);
  CHECK_THROWS_AS(io::read_metric("/nonexistent/file.json"), Error);
}

TEST_CASE("property: write/read round trip is exact in both formats") {
  std::mt19937_64 rng(8);
  const auto dir = std::filesystem::temp_directory_path() / "assouad_io_test";
  std::filesystem::create_directories(dir);
  for (int t = 0; t < 20; ++t) {
    const auto x = oracle::random_plane_space(1 + rng() % 8, rng, 9);
    for (auto fmt : {io::MatrixFormat::structured, io::MatrixFormat::flat}) {
      const auto path = dir / "m.txt";
      io::write_metric(path, x, fmt);
      const auto y = io::read_metric(path);
      REQUIRE(y.size() == x.size());
      for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j) CHECK(y(i, j) == x(i, j));
      if (fmt == io::MatrixFormat::structured) CHECK(y.labels() == x.labels());
    }
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("cantor labels survive a round trip") {
  const auto x = cantor_sample(2);
  const auto y = io::parse_metric(io::format_metric(x));
  CHECK(y.labels() == x.labels());
}
