#pragma once

#include <string>
#include <variant>

#include "lcpatlas/analysis.hpp"
#include "lcpatlas/circuit.hpp"
#include "lcpatlas/classify2d.hpp"
#include "lcpatlas/lcp_core.hpp"
#include "lcpatlas/lcs.hpp"
#include "lcpatlas/stability.hpp"
#include "lcpatlas/types.hpp"

namespace lcpatlas {

// Malformed problem text; carries the 1-based location of the offending
// byte and, for schema violations, the offending field name in the message.
struct ParseError : InputError {
  ParseError(const std::string& msg, int line_, int column_)
      : InputError(msg), line(line_), column(column_) {}
  int line = 0;
  int column = 0;
};

struct LcpProblem {
  Mat M;
  Vec q;
};

struct LcsProblem {
  LcsModel model;
  double r = 0.0;
  double s = 0.0;
};

struct CircuitProblem {
  CircuitParams params;
};

// A problem document: JSON object with "kind" of lcp | lcs | circuit,
// matrices as nested row arrays, vectors as arrays, optional "name" and
// "tol" overrides.
struct ProblemFile {
  std::string kind;
  std::string name;
  Tolerances tol;
  std::variant<LcpProblem, LcsProblem, CircuitProblem> data;

  const LcpProblem& lcp() const { return std::get<LcpProblem>(data); }
  const LcsProblem& lcs() const { return std::get<LcsProblem>(data); }
  const CircuitProblem& circuit() const { return std::get<CircuitProblem>(data); }
};

// `origin` names the source in error messages (file path or "<input>").
ProblemFile parse_problem(const std::string& text, const std::string& origin = "<input>");
ProblemFile load_problem(const std::string& path);

// JSON renderings of the report types; each from_json inverts its to_json
// exactly (field-level round trip, including double values).
std::string to_json_text(const SolutionSet& s, int indent = 2);
SolutionSet solution_set_from_json(const std::string& text);

std::string to_json_text(const StabilityReport& r, int indent = 2);
StabilityReport stability_report_from_json(const std::string& text);

std::string to_json_text(const DegreeReport& r, int indent = 2);
DegreeReport degree_report_from_json(const std::string& text);

std::string to_json_text(const MatrixClass2D& c, int indent = 2);
MatrixClass2D matrix_class_from_json(const std::string& text);

std::string to_json_text(const BifurcationDiagram& d, int indent = 2);
BifurcationDiagram bifurcation_from_json(const std::string& text);

}  // namespace lcpatlas
