#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "gproj/gproj.hpp"
#include "test_support.hpp"

using namespace gproj;
using testsupport::Rng;

namespace {

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

const char* kValidProblem = R"({
  "target": [0.3, 0.7],
  "basis": [[0.9, 0.1], [0.1, 0.9]],
  "connection": "e_as_nabla"
})";

}  // namespace

TEST_SUITE("io") {

TEST_CASE("well-formed problem files parse into problems") {
  const auto problem = parse_problem(kValidProblem);
  CHECK(problem.connection == Connection::EAsNabla);
  CHECK(problem.target[0] == doctest::Approx(0.3));
  CHECK(problem.basis.size() == 2);
  CHECK(problem.basis[1][1] == doctest::Approx(0.9));
}

TEST_CASE("canonical serialization round-trips") {
  Rng rng(701);
  const auto basis = testsupport::random_basis(rng, 3, 5);
  const auto target = testsupport::random_distribution(rng, 5);
  const ProjectionProblem problem{target, basis, Connection::MAsNabla};

  const std::string json = problem_to_json(problem);
  const auto parsed = parse_problem(json);
  CHECK(parsed.connection == problem.connection);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(parsed.target[i] == problem.target[i]);
    for (std::size_t k = 0; k < 3; ++k) {
      CHECK(parsed.basis[k][i] == problem.basis[k][i]);
    }
  }
  // Keys appear in a fixed order, so the output is reproducible.
  CHECK(json.find("\"target\"") < json.find("\"basis\""));
  CHECK(json.find("\"basis\"") < json.find("\"connection\""));
  CHECK(problem_to_json(problem) == json);
}

TEST_CASE("parse errors carry the offending field path") {
  CHECK(message_of([] { (void)parse_problem("not json at all {"); }).find("invalid JSON") !=
        std::string::npos);
  CHECK(message_of([] {
          (void)parse_problem(R"({"basis": [[0.5, 0.5], [0.1, 0.9]], "connection": "e_as_nabla"})");
        }).find("target") != std::string::npos);
  CHECK(message_of([] {
          (void)parse_problem(
              R"({"target": [0.3, "x"], "basis": [[0.9, 0.1], [0.1, 0.9]], "connection": "e_as_nabla"})");
        }).find("target[1]") != std::string::npos);
  CHECK(message_of([] {
          (void)parse_problem(
              R"({"target": [0.3, 0.7], "basis": [[0.9, 0.1], [0.1, -0.9]], "connection": "e_as_nabla"})");
        }).find("basis[1]") != std::string::npos);
  CHECK(message_of([] {
          (void)parse_problem(
              R"({"target": [0.3, 0.7], "basis": [[0.9, 0.1], [0.1, 0.9]], "connection": "geodesic"})");
        }).find("connection") != std::string::npos);
  CHECK(message_of([] {
          (void)parse_problem(
              R"({"target": [0.3, 0.7], "basis": [[0.9, 0.1], [0.2, 0.3, 0.5]], "connection": "e_as_nabla"})");
        }).find("basis[1]") != std::string::npos);
  CHECK(message_of([] {
          (void)parse_problem(
              R"({"target": [0.5, 0.4], "basis": [[0.9, 0.1], [0.1, 0.9]], "connection": "e_as_nabla"})");
        }).find("target") != std::string::npos);
}

TEST_CASE("double formatting survives a parse round trip") {
  for (double x : {0.1, 1.0 / 3.0, 0.38155261996083046, 1e-300, 2.5e-12, 1.0}) {
    const std::string s = format_double(x);
    CHECK(std::strtod(s.c_str(), nullptr) == x);
  }
}

TEST_CASE("trace table uses the fixed header and one row per iterate") {
  RunConfig config;
  config.record_trace = true;
  config.max_iters = 7;
  const auto problem = parse_problem(kValidProblem);
  const auto res = run_A(problem, config);

  std::ostringstream os;
  write_trace_csv(os, res.trace, 2);
  std::istringstream is(os.str());
  std::string line;
  REQUIRE(std::getline(is, line));
  CHECK(line == "iter,D,max_abs_gamma,w_1,w_2,gamma_1,gamma_2");

  std::size_t rows = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    ++rows;
    std::istringstream row(line);
    std::string cell;
    std::size_t cells = 0;
    while (std::getline(row, cell, ',')) {
      ++cells;
      if (cells == 1) {
        CHECK(std::stoull(cell) == rows - 1);
      } else {
        (void)std::stod(cell);  // throws if not numeric
      }
    }
    CHECK(cells == 7);
  }
  CHECK(rows == res.trace.records.size());
}

TEST_CASE("matrix csv round-trips through a temporary file") {
  Rng rng(702);
  std::vector<double> data;
  std::uniform_real_distribution<double> uni(0.01, 5.0);
  for (int i = 0; i < 12; ++i) data.push_back(uni(rng));
  const NonnegativeMatrix m(3, 4, std::move(data));

  const std::string path = "test_io_matrix_roundtrip.csv";
  {
    std::ofstream out(path);
    REQUIRE(out.good());
    write_matrix_csv(out, m);
  }
  const auto back = read_matrix_csv(path);
  CHECK(back.rows() == 3);
  CHECK(back.cols() == 4);
  CHECK(back.data() == m.data());
  std::remove(path.c_str());
}

TEST_CASE("matrix csv reader skips a header and reports bad rows") {
  const std::string path = "test_io_matrix_bad.csv";
  {
    std::ofstream out(path);
    out << "a,b,c\n1.0,2.0,3.0\n4.0,5.0,6.0\n";
  }
  const auto m = read_matrix_csv(path);
  CHECK(m.rows() == 2);
  CHECK(m.cols() == 3);
  CHECK(m.at(1, 2) == doctest::Approx(6.0));

  {
    std::ofstream out(path);
    out << "1.0,2.0\n3.0\n";
  }
  CHECK(message_of([&] { (void)read_matrix_csv(path); }).find("line") != std::string::npos);

  {
    std::ofstream out(path);
    out << "1.0,2.0\n3.0,-4.0\n";
  }
  CHECK_THROWS_AS((void)read_matrix_csv(path), ParseError);
  std::remove(path.c_str());

  CHECK_THROWS_AS((void)read_matrix_csv("does_not_exist_anywhere.csv"), ParseError);
}

TEST_CASE("problems load from disk") {
  const std::string path = "test_io_problem.json";
  {
    std::ofstream out(path);
    out << kValidProblem;
  }
  const auto problem = load_problem(path);
  CHECK(problem.basis.size() == 2);
  std::remove(path.c_str());
  CHECK_THROWS_AS((void)load_problem(path), ParseError);
}

}  // TEST_SUITE
