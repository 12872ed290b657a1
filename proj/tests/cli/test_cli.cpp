#define DOCTEST_CONFIG_IMPLEMENT
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

namespace {

std::string g_binary;  // path to the gproj executable under test

struct CommandResult {
  int exit_code;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

CommandResult run_cli(const std::string& args) {
  const std::string out_path = "cli_stdout.tmp";
  const std::string err_path = "cli_stderr.tmp";
  const std::string command =
      g_binary + " " + args + " >" + out_path + " 2>" + err_path;
  const int status = std::system(command.c_str());
  CommandResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out_path);
  r.err = slurp(err_path);
  std::remove(out_path.c_str());
  std::remove(err_path.c_str());
  return r;
}

const char* kPencilProblem = R"({
  "target": [0.3, 0.7],
  "basis": [[0.9, 0.1], [0.1, 0.9]],
  "connection": "e_as_nabla"
})";

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

// First "final weights:" value in a project summary.
double first_weight(const std::string& out) {
  const auto pos = out.find("final weights:");
  REQUIRE(pos != std::string::npos);
  std::istringstream rest(out.substr(pos + 14));
  double w = -1.0;
  rest >> w;
  return w;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("project solves a pencil problem and reports convergence") {
  write_file("cli_pencil.json", kPencilProblem);
  const auto r = run_cli("project cli_pencil.json --algorithm A");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "algorithm: A"));
  CHECK(contains(r.out, "termination: converged"));
  CHECK(first_weight(r.out) == doctest::Approx(0.25).epsilon(1e-6));
  std::remove("cli_pencil.json");
}

TEST_CASE("every algorithm reaches the same pencil optimum") {
  write_file("cli_pencil.json", kPencilProblem);
  const std::vector<std::pair<std::string, std::string>> runs = {
      {"A", ""},
      {"B", "--inner-L 2"},
      {"Ba", ""},
      {"C", ""},
      {"Cb", ""},
      {"grad", "--lambda 0.3 --max-iters 100000"},
      // The rescaled update doubles the two-member step, so the default
      // speed would overshoot; pick one safely inside its own threshold.
      {"adaptive", "--beta 2"},
      {"boundary", "--epsilon 1e-5 --tol 1e-3 --max-iters 100000"},
  };
  for (const auto& [algo, extra] : runs) {
    CAPTURE(algo);
    const auto r = run_cli("project cli_pencil.json --algorithm " + algo + " " + extra);
    CHECK(r.exit_code == 0);
    CHECK(first_weight(r.out) == doctest::Approx(0.25).epsilon(2e-3));
  }
  std::remove("cli_pencil.json");
}

TEST_CASE("repeated runs are byte-identical") {
  write_file("cli_pencil.json", kPencilProblem);
  const auto first = run_cli("project cli_pencil.json --trace cli_trace_1.csv");
  const auto second = run_cli("project cli_pencil.json --trace cli_trace_2.csv");
  CHECK(first.exit_code == 0);
  CHECK(first.out == second.out);
  const std::string t1 = slurp("cli_trace_1.csv");
  const std::string t2 = slurp("cli_trace_2.csv");
  CHECK(!t1.empty());
  CHECK(t1 == t2);
  CHECK(t1.rfind("iter,D,max_abs_gamma,w_1,w_2,gamma_1,gamma_2", 0) == 0);
  std::remove("cli_pencil.json");
  std::remove("cli_trace_1.csv");
  std::remove("cli_trace_2.csv");
}

TEST_CASE("echo prints canonical json and exits cleanly") {
  write_file("cli_pencil.json", kPencilProblem);
  const auto r = run_cli("project cli_pencil.json --echo");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "\"target\""));
  CHECK(contains(r.out, "\"connection\": \"e_as_nabla\""));
  std::remove("cli_pencil.json");
}

TEST_CASE("starved iteration budget exits with the budget code") {
  write_file("cli_pencil.json", kPencilProblem);
  const auto r = run_cli("project cli_pencil.json --max-iters 1");
  CHECK(r.exit_code == 2);
  CHECK(contains(r.out, "termination: iteration-limit"));
  std::remove("cli_pencil.json");
}

TEST_CASE("malformed input exits with the input-error code") {
  write_file("cli_bad.json", R"({"target": [0.5, 0.4],
    "basis": [[0.9, 0.1], [0.1, 0.9]], "connection": "e_as_nabla"})");
  const auto r = run_cli("project cli_bad.json");
  CHECK(r.exit_code == 1);
  CHECK(contains(r.err, "error:"));
  CHECK(contains(r.err, "target"));

  const auto missing = run_cli("project cli_no_such_file.json");
  CHECK(missing.exit_code == 1);
  std::remove("cli_bad.json");
}

TEST_CASE("oracle reports the optimum and a pythagorean certificate") {
  write_file("cli_pencil.json", kPencilProblem);
  const auto r = run_cli("oracle cli_pencil.json");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "method: golden-section"));
  REQUIRE(contains(r.out, "w*:"));
  std::istringstream rest(r.out.substr(r.out.find("w*:") + 3));
  double w = -1.0;
  rest >> w;
  CHECK(w == doctest::Approx(0.25).epsilon(1e-7));
  CHECK(contains(r.out, "pythagorean residual:"));
  std::remove("cli_pencil.json");
}

TEST_CASE("bounds lists thresholds and a recommended speed") {
  write_file("cli_pencil.json", kPencilProblem);
  const auto r = run_cli("bounds cli_pencil.json");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "f'(0) <"));
  CHECK(contains(r.out, "recommended beta:"));
  std::remove("cli_pencil.json");
}

TEST_CASE("gen is reproducible and emits a loadable problem") {
  const auto a = run_cli("gen --dim 5 --k 3 --seed 42 --sigma 0.1 --out cli_gen_a.json");
  const auto b = run_cli("gen --dim 5 --k 3 --seed 42 --sigma 0.1 --out cli_gen_b.json");
  CHECK(a.exit_code == 0);
  CHECK(b.exit_code == 0);
  const std::string ja = slurp("cli_gen_a.json");
  CHECK(!ja.empty());
  CHECK(ja == slurp("cli_gen_b.json"));

  // The seed-42 instance projects near a face, so the default iteration
  // budget is too small for the fixed-point tolerance.
  const auto solved = run_cli("project cli_gen_a.json --max-iters 500000");
  CHECK(solved.exit_code == 0);

  const auto other = run_cli("gen --dim 5 --k 3 --seed 43 --out cli_gen_c.json");
  CHECK(other.exit_code == 0);
  CHECK(slurp("cli_gen_c.json") != ja);
  std::remove("cli_gen_a.json");
  std::remove("cli_gen_b.json");
  std::remove("cli_gen_c.json");
}

TEST_CASE("nmf writes the factor files") {
  // A 4 x 6 matrix with an exact rank-2 mixture structure.
  write_file("cli_nmf.csv",
             "0.40,0.10,0.25,0.34,0.16,0.28\n"
             "0.30,0.20,0.25,0.28,0.22,0.26\n"
             "0.20,0.30,0.25,0.22,0.28,0.24\n"
             "0.10,0.40,0.25,0.16,0.34,0.22\n");
  const auto r = run_cli("nmf cli_nmf.csv --rank 2 --output-prefix cli_nmf_out --max-sweeps 40");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "final objective:"));

  const std::string p_csv = slurp("cli_nmf_out_P.csv");
  const std::string w_csv = slurp("cli_nmf_out_W.csv");
  const std::string obj_csv = slurp("cli_nmf_out_objective.csv");
  CHECK(!p_csv.empty());
  CHECK(!w_csv.empty());
  CHECK(obj_csv.rfind("sweep,objective", 0) == 0);
  std::remove("cli_nmf.csv");
  std::remove("cli_nmf_out_P.csv");
  std::remove("cli_nmf_out_W.csv");
  std::remove("cli_nmf_out_objective.csv");
}

TEST_CASE("unknown subcommands and flags are rejected") {
  const auto r = run_cli("solve nothing.json");
  CHECK(r.exit_code != 0);
  const auto f = run_cli("project --no-such-flag");
  CHECK(f.exit_code != 0);
}

}  // TEST_SUITE

int main(int argc, char** argv) {
  doctest::Context context;
  std::vector<char*> passthrough;
  for (int i = 0; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg.rfind("--bin=", 0) == 0) {
      g_binary = arg.substr(6);
    } else {
      passthrough.push_back(argv[i]);
    }
  }
  if (g_binary.empty()) {
    std::fprintf(stderr, "usage: %s --bin=<path to gproj>\n", argv[0]);
    return 64;
  }
  context.applyCommandLine(static_cast<int>(passthrough.size()), passthrough.data());
  return context.run();
}
