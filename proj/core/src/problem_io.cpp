#include "gproj/problem_io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <utility>

#include "json.hpp"

namespace gproj {
namespace {

using nlohmann::json;

std::vector<double> number_array(const json& node, const std::string& path) {
  if (!node.is_array() || node.empty()) {
    throw ParseError(path + ": expected a non-empty array of numbers");
  }
  std::vector<double> out;
  out.reserve(node.size());
  for (std::size_t i = 0; i < node.size(); ++i) {
    if (!node[i].is_number()) {
      throw ParseError(path + "[" + std::to_string(i) + "]: expected a number");
    }
    out.push_back(node[i].get<double>());
  }
  return out;
}

// Re-validate a probability vector so failures carry the field path.
DiscreteDistribution distribution_at(const std::vector<double>& probs,
                                     const std::string& path) {
  try {
    return DiscreteDistribution(probs);
  } catch (const Error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void append_array(std::string& out, const std::vector<double>& v) {
  out += '[';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += format_double(v[i]);
  }
  out += ']';
}

}  // namespace

ProblemFile parse_problem_file(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) {
    throw ParseError("top level: expected an object");
  }
  for (const auto& key : {"target", "basis", "connection"}) {
    if (!root.contains(key)) {
      throw ParseError(std::string(key) + ": missing required field");
    }
  }
  ProblemFile file;
  file.target = number_array(root["target"], "target");
  const json& basis = root["basis"];
  if (!basis.is_array() || basis.size() < 2) {
    throw ParseError("basis: expected an array of at least 2 vectors");
  }
  for (std::size_t k = 0; k < basis.size(); ++k) {
    file.basis.push_back(
        number_array(basis[k], "basis[" + std::to_string(k) + "]"));
  }
  if (!root["connection"].is_string()) {
    throw ParseError("connection: expected a string");
  }
  file.connection = root["connection"].get<std::string>();
  return file;
}

ProjectionProblem to_problem(const ProblemFile& file) {
  Connection c;
  if (file.connection == "e_as_nabla") {
    c = Connection::EAsNabla;
  } else if (file.connection == "m_as_nabla") {
    c = Connection::MAsNabla;
  } else {
    throw ParseError("connection: expected \"e_as_nabla\" or \"m_as_nabla\", "
                     "got \"" + file.connection + "\"");
  }
  DiscreteDistribution target = distribution_at(file.target, "target");
  std::vector<DiscreteDistribution> members;
  members.reserve(file.basis.size());
  for (std::size_t k = 0; k < file.basis.size(); ++k) {
    const std::string path = "basis[" + std::to_string(k) + "]";
    DiscreteDistribution member = distribution_at(file.basis[k], path);
    if (member.dim() != target.dim()) {
      throw ParseError(path + ": has " + std::to_string(member.dim()) +
                       " entries, target has " + std::to_string(target.dim()));
    }
    members.push_back(std::move(member));
  }
  return ProjectionProblem(std::move(target), BasisSet(std::move(members)),
                           c);
}

ProjectionProblem parse_problem(const std::string& json_text) {
  return to_problem(parse_problem_file(json_text));
}

ProjectionProblem load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot read " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem(buf.str());
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string problem_to_json(const ProjectionProblem& problem) {
  std::string out = "{\n  \"target\": ";
  append_array(out, problem.target.probs());
  out += ",\n  \"basis\": [\n";
  for (std::size_t k = 0; k < problem.basis.size(); ++k) {
    out += "    ";
    append_array(out, problem.basis[k].probs());
    out += k + 1 < problem.basis.size() ? ",\n" : "\n";
  }
  out += "  ],\n  \"connection\": \"";
  out += problem.connection == Connection::EAsNabla ? "e_as_nabla"
                                                    : "m_as_nabla";
  out += "\"\n}\n";
  return out;
}

void write_trace_csv(std::ostream& os, const ConvergenceTrace& trace,
                     std::size_t k) {
  os << "iter,D,max_abs_gamma";
  for (std::size_t i = 1; i <= k; ++i) os << ",w_" << i;
  for (std::size_t i = 1; i <= k; ++i) os << ",gamma_" << i;
  os << "\n";
  for (const TraceRecord& r : trace.records) {
    os << r.iter << ',' << format_double(r.divergence) << ','
       << format_double(r.max_abs_gamma);
    for (double w : r.weights) os << ',' << format_double(w);
    for (double g : r.gammas) os << ',' << format_double(g);
    os << "\n";
  }
}

NonnegativeMatrix read_matrix_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot read " + path);
  }
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    bool numeric = true;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
        while (used < cell.size() &&
               std::isspace(static_cast<unsigned char>(cell[used]))) {
          ++used;
        }
        if (used != cell.size()) numeric = false;
      } catch (const std::exception&) {
        numeric = false;
      }
      if (!numeric) break;
    }
    if (!numeric) {
      if (line_no == 1) continue;  // header line
      throw ParseError(path + " line " + std::to_string(line_no) +
                       ": non-numeric cell");
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ParseError(path + " line " + std::to_string(line_no) + ": has " +
                       std::to_string(row.size()) + " cells, expected " +
                       std::to_string(rows.front().size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) {
    throw ParseError(path + ": no data rows");
  }
  std::vector<double> data;
  data.reserve(rows.size() * rows.front().size());
  for (const auto& r : rows) data.insert(data.end(), r.begin(), r.end());
  try {
    return NonnegativeMatrix(rows.size(), rows.front().size(),
                             std::move(data));
  } catch (const Error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_matrix_csv(std::ostream& os, const NonnegativeMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) os << ',';
      os << format_double(m.at(i, j));
    }
    os << "\n";
  }
}

}  // namespace gproj
