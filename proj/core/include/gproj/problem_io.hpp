#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "gproj/decomposition.hpp"
#include "gproj/projection.hpp"

namespace gproj {

// Raw content of a problem file, before semantic validation.
struct ProblemFile {
  std::vector<double> target;
  std::vector<std::vector<double>> basis;
  std::string connection;  // "e_as_nabla" | "m_as_nabla"
};

// Structural parse of the problem JSON
//   {"target": [...], "basis": [[...], ...], "connection": "e_as_nabla"}.
// Throws ParseError naming the offending field (e.g. "basis[1]").
ProblemFile parse_problem_file(const std::string& json_text);

// Semantic validation: simplex/positivity/dimension checks, reported with
// the same field paths.
ProjectionProblem to_problem(const ProblemFile& file);

ProjectionProblem parse_problem(const std::string& json_text);
ProjectionProblem load_problem(const std::string& path);

// 17-significant-digit serialization; round-trips doubles exactly.
std::string format_double(double x);

// Echo a problem as canonical JSON (17-digit floats, fixed key order).
std::string problem_to_json(const ProjectionProblem& problem);

// Trace table with the fixed header
//   iter,D,max_abs_gamma,w_1,...,w_K,gamma_1,...,gamma_K
// and one row per recorded iterate.
void write_trace_csv(std::ostream& os, const ConvergenceTrace& trace,
                     std::size_t k);

// Plain numeric CSV, one row per matrix row. Reading skips an optional
// header line.
NonnegativeMatrix read_matrix_csv(const std::string& path);
void write_matrix_csv(std::ostream& os, const NonnegativeMatrix& m);

}  // namespace gproj
