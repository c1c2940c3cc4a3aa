#include "lcpatlas/problem_io.hpp"

#include <fstream>
#include <sstream>
#include <utility>

#include <json.hpp>

namespace lcpatlas {

namespace {

using nlohmann::json;

[[noreturn]] void fail_at_byte(const std::string& text, const std::string& origin,
                               std::size_t byte, const std::string& what) {
  int line = 1;
  int col = 1;
  const std::size_t stop = std::min(byte > 0 ? byte - 1 : 0, text.size());
  for (std::size_t i = 0; i < stop; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  std::ostringstream os;
  os << origin << ":" << line << ":" << col << ": " << what;
  throw ParseError(os.str(), line, col);
}

[[noreturn]] void fail_field(const std::string& origin, const std::string& field,
                             const std::string& what) {
  throw ParseError(origin + ": field '" + field + "': " + what, 0, 0);
}

double get_number(const json& j, const std::string& origin, const std::string& field) {
  if (!j.is_number()) fail_field(origin, field, "expected a number");
  return j.get<double>();
}

Vec get_vec(const json& j, const std::string& origin, const std::string& field) {
  if (!j.is_array()) fail_field(origin, field, "expected an array of numbers");
  Vec v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    v(static_cast<Eigen::Index>(i)) =
        get_number(j[i], origin, field + "[" + std::to_string(i) + "]");
  return v;
}

Mat get_mat(const json& j, const std::string& origin, const std::string& field) {
  if (!j.is_array() || j.empty()) fail_field(origin, field, "expected a nested array of rows");
  const std::size_t rows = j.size();
  std::size_t cols = 0;
  Mat m;
  for (std::size_t i = 0; i < rows; ++i) {
    const std::string row_field = field + "[" + std::to_string(i) + "]";
    if (!j[i].is_array()) fail_field(origin, row_field, "expected an array of numbers");
    if (i == 0) {
      cols = j[i].size();
      if (cols == 0) fail_field(origin, row_field, "rows must be nonempty");
      m.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    } else if (j[i].size() != cols) {
      fail_field(origin, row_field, "ragged rows: expected " + std::to_string(cols) + " entries");
    }
    for (std::size_t k = 0; k < cols; ++k)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
          get_number(j[i][k], origin, row_field + "[" + std::to_string(k) + "]");
  }
  return m;
}

const json& require(const json& j, const std::string& origin, const std::string& field) {
  const auto it = j.find(field);
  if (it == j.end()) fail_field(origin, field, "missing");
  return *it;
}

Tolerances parse_tolerances(const json& j, const std::string& origin) {
  Tolerances tol;
  if (!j.is_object()) fail_field(origin, "tol", "expected an object");
  for (const auto& [key, value] : j.items()) {
    const double v = get_number(value, origin, "tol." + key);
    if (key == "rank_rel") tol.rank_rel = v;
    else if (key == "sign_abs") tol.sign_abs = v;
    else if (key == "dedup_x") tol.dedup_x = v;
    else if (key == "membership") tol.membership = v;
    else fail_field(origin, "tol." + key, "unknown tolerance");
  }
  return tol;
}

CircuitParams parse_circuit_params(const json& j, const std::string& origin) {
  CircuitParams p;
  if (!j.is_object()) fail_field(origin, "params", "expected an object");
  for (const auto& [key, value] : j.items()) {
    const double v = get_number(value, origin, "params." + key);
    if (key == "R0a") p.R0a = v;
    else if (key == "R1a") p.R1a = v;
    else if (key == "R2a") p.R2a = v;
    else if (key == "R0b") p.R0b = v;
    else if (key == "R1b") p.R1b = v;
    else if (key == "R2b") p.R2b = v;
    else if (key == "R1") p.R1 = v;
    else if (key == "R2") p.R2 = v;
    else if (key == "RR") p.RR = v;
    else if (key == "RF") p.RF = v;
    else if (key == "C1a") p.C1a = v;
    else if (key == "C2a") p.C2a = v;
    else if (key == "C1b") p.C1b = v;
    else if (key == "C2b") p.C2b = v;
    else if (key == "alphaF") p.alphaF = v;
    else if (key == "alphaR") p.alphaR = v;
    else if (key == "s") p.s = v;
    else if (key == "r") p.r = v;
    else fail_field(origin, "params." + key, "unknown parameter");
  }
  return p;
}

json vec_to_json(const Vec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

json mat_to_json(const Mat& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json index_set_to_json(const IndexSet& s) {
  return json{{"members", s.members()}, {"n", s.n()}};
}

IndexSet index_set_from_json(const json& j) {
  return IndexSet(j.at("members").get<std::vector<int>>(), j.at("n").get<int>());
}

json parse_report(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail_at_byte(text, "<report>", e.byte, e.what());
  }
}

}  // namespace

ProblemFile parse_problem(const std::string& text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail_at_byte(text, origin, e.byte, e.what());
  }
  if (!doc.is_object()) fail_field(origin, "<document>", "expected a JSON object");

  ProblemFile file;
  const json& kind = require(doc, origin, "kind");
  if (!kind.is_string()) fail_field(origin, "kind", "expected a string");
  file.kind = kind.get<std::string>();
  if (const auto it = doc.find("name"); it != doc.end()) {
    if (!it->is_string()) fail_field(origin, "name", "expected a string");
    file.name = it->get<std::string>();
  }
  if (const auto it = doc.find("tol"); it != doc.end())
    file.tol = parse_tolerances(*it, origin);

  if (file.kind == "lcp") {
    LcpProblem p;
    p.M = get_mat(require(doc, origin, "M"), origin, "M");
    p.q = get_vec(require(doc, origin, "q"), origin, "q");
    if (p.M.rows() != p.M.cols()) fail_field(origin, "M", "must be square");
    if (p.q.size() != p.M.rows()) fail_field(origin, "q", "size must match M");
    file.data = std::move(p);
  } else if (file.kind == "lcs") {
    LcsProblem p;
    p.model.A = get_mat(require(doc, origin, "A"), origin, "A");
    p.model.B = get_mat(require(doc, origin, "B"), origin, "B");
    p.model.C = get_mat(require(doc, origin, "C"), origin, "C");
    p.model.D = get_mat(require(doc, origin, "D"), origin, "D");
    p.model.E1 = get_vec(require(doc, origin, "E1"), origin, "E1");
    p.model.E2 = get_vec(require(doc, origin, "E2"), origin, "E2");
    if (const auto it = doc.find("r"); it != doc.end()) p.r = get_number(*it, origin, "r");
    if (const auto it = doc.find("s"); it != doc.end()) p.s = get_number(*it, origin, "s");
    try {
      p.model.validate();
    } catch (const InputError& e) {
      fail_field(origin, "lcs", e.what());
    }
    file.data = std::move(p);
  } else if (file.kind == "circuit") {
    CircuitProblem p;
    if (const auto it = doc.find("params"); it != doc.end())
      p.params = parse_circuit_params(*it, origin);
    try {
      p.params.validate();
    } catch (const InputError& e) {
      fail_field(origin, "params", e.what());
    }
    file.data = std::move(p);
  } else {
    fail_field(origin, "kind", "must be one of lcp, lcs, circuit");
  }
  return file;
}

ProblemFile load_problem(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open problem file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_problem(buffer.str(), path);
}

// ---- report serialization ---------------------------------------------------

std::string to_json_text(const SolutionSet& s, int indent) {
  json doc;
  doc["isolated"] = json::array();
  for (const auto& sol : s.isolated) {
    doc["isolated"].push_back(json{{"alpha", index_set_to_json(sol.alpha)},
                                   {"z", vec_to_json(sol.z)},
                                   {"w", vec_to_json(sol.w)},
                                   {"x", vec_to_json(sol.x)}});
  }
  doc["degenerate"] = json::array();
  for (const auto& fam : s.degenerate) {
    json gens = json::array();
    for (const auto& g : fam.nullspace_generators) gens.push_back(vec_to_json(g));
    doc["degenerate"].push_back(json{{"alpha", index_set_to_json(fam.alpha)},
                                     {"particular_x", vec_to_json(fam.particular_x)},
                                     {"particular_z", vec_to_json(fam.particular_z)},
                                     {"nullspace_generators", std::move(gens)}});
  }
  return doc.dump(indent);
}

SolutionSet solution_set_from_json(const std::string& text) {
  const json doc = parse_report(text);
  SolutionSet s;
  for (const auto& j : doc.at("isolated")) {
    IsolatedSolution sol;
    sol.alpha = index_set_from_json(j.at("alpha"));
    sol.z = get_vec(j.at("z"), "<report>", "z");
    sol.w = get_vec(j.at("w"), "<report>", "w");
    sol.x = get_vec(j.at("x"), "<report>", "x");
    s.isolated.push_back(std::move(sol));
  }
  for (const auto& j : doc.at("degenerate")) {
    DegenerateFamily fam;
    fam.alpha = index_set_from_json(j.at("alpha"));
    fam.particular_x = get_vec(j.at("particular_x"), "<report>", "particular_x");
    fam.particular_z = get_vec(j.at("particular_z"), "<report>", "particular_z");
    for (const auto& g : j.at("nullspace_generators"))
      fam.nullspace_generators.push_back(get_vec(g, "<report>", "nullspace_generators"));
    s.degenerate.push_back(std::move(fam));
  }
  return s;
}

std::string to_json_text(const StabilityReport& r, int indent) {
  json doc;
  doc["margin"] = r.margin;
  doc["zero_column"] = r.zero_column;
  if (r.argmin) {
    doc["argmin"] = json{{"family", r.argmin->family == MarginFamily::FacetCone ? "facet-cone"
                                                                                : "span-drop"},
                         {"k", r.argmin->k},
                         {"label", r.argmin->label},
                         {"distance", r.argmin->distance}};
  }
  doc["facet_min_by_column"] = r.facet_min_by_column;
  doc["span_min_by_column"] = r.span_min_by_column;
  return doc.dump(indent);
}

StabilityReport stability_report_from_json(const std::string& text) {
  const json doc = parse_report(text);
  StabilityReport r;
  r.margin = doc.at("margin").get<double>();
  r.zero_column = doc.at("zero_column").get<bool>();
  if (const auto it = doc.find("argmin"); it != doc.end()) {
    MarginTerm term;
    term.family = it->at("family").get<std::string>() == "facet-cone" ? MarginFamily::FacetCone
                                                                      : MarginFamily::SpanDrop;
    term.k = it->at("k").get<int>();
    term.label = it->at("label").get<std::string>();
    term.distance = it->at("distance").get<double>();
    r.argmin = std::move(term);
  }
  r.facet_min_by_column = doc.at("facet_min_by_column").get<std::vector<double>>();
  r.span_min_by_column = doc.at("span_min_by_column").get<std::vector<double>>();
  return r;
}

std::string to_json_text(const DegreeReport& r, int indent) {
  json doc;
  doc["degree"] = r.degree;
  doc["probe_q"] = vec_to_json(r.probe_q);
  doc["solution_indices"] = json::array();
  for (const auto& [alpha, index] : r.solution_indices)
    doc["solution_indices"].push_back(
        json{{"alpha", index_set_to_json(alpha)}, {"index", index}});
  doc["probes_rejected"] = r.probes_rejected;
  return doc.dump(indent);
}

DegreeReport degree_report_from_json(const std::string& text) {
  const json doc = parse_report(text);
  DegreeReport r;
  r.degree = doc.at("degree").get<int>();
  r.probe_q = get_vec(doc.at("probe_q"), "<report>", "probe_q");
  for (const auto& j : doc.at("solution_indices"))
    r.solution_indices.emplace_back(index_set_from_json(j.at("alpha")),
                                    j.at("index").get<int>());
  r.probes_rejected = doc.at("probes_rejected").get<int>();
  return r;
}

std::string to_json_text(const MatrixClass2D& c, int indent) {
  json doc;
  doc["label"] = c.label;
  doc["stable"] = c.stable;
  doc["line_proximity"] = c.line_proximity;
  doc["nearest_family"] = c.nearest_family;
  doc["proximity_warning"] = c.proximity_warning;
  if (c.signature) {
    doc["signature"] = json{{"is_p", c.signature->is_p},
                            {"fingerprint", c.signature->fingerprint},
                            {"profile", c.signature->profile}};
  }
  if (c.degree) doc["degree"] = *c.degree;
  doc["theta1"] = c.theta1;
  doc["theta2"] = c.theta2;
  return doc.dump(indent);
}

MatrixClass2D matrix_class_from_json(const std::string& text) {
  const json doc = parse_report(text);
  MatrixClass2D c;
  c.label = doc.at("label").get<std::string>();
  c.stable = doc.at("stable").get<bool>();
  c.line_proximity = doc.at("line_proximity").get<double>();
  c.nearest_family = doc.at("nearest_family").get<std::string>();
  c.proximity_warning = doc.at("proximity_warning").get<bool>();
  if (const auto it = doc.find("signature"); it != doc.end()) {
    Signature2D sig;
    sig.is_p = it->at("is_p").get<bool>();
    const auto fp = it->at("fingerprint").get<std::vector<int>>();
    const auto pr = it->at("profile").get<std::vector<int>>();
    if (fp.size() != 4 || pr.size() != 4) fail_field("<report>", "signature", "expected 4 entries");
    std::copy(fp.begin(), fp.end(), sig.fingerprint.begin());
    std::copy(pr.begin(), pr.end(), sig.profile.begin());
    c.signature = sig;
  }
  if (const auto it = doc.find("degree"); it != doc.end()) c.degree = it->get<int>();
  c.theta1 = doc.at("theta1").get<double>();
  c.theta2 = doc.at("theta2").get<double>();
  return c;
}

std::string to_json_text(const BifurcationDiagram& d, int indent) {
  json doc;
  doc["q0"] = vec_to_json(d.q0);
  doc["dir"] = vec_to_json(d.dir);
  doc["lambdas"] = d.lambdas;
  doc["points"] = json::array();
  for (const auto& pt : d.points) {
    json j;
    j["lambda"] = pt.lambda;
    if (pt.count) j["count"] = *pt.count;
    else j["count"] = nullptr;
    j["continuum"] = pt.continuum;
    j["skeleton_proximal"] = pt.skeleton_proximal;
    j["solution_on_boundary"] = pt.solution_on_boundary;
    j["singular_piece"] = pt.singular_piece;
    j["z"] = json::array();
    for (const auto& z : pt.z) j["z"].push_back(vec_to_json(z));
    j["x"] = json::array();
    for (const auto& x : pt.x) j["x"].push_back(vec_to_json(x));
    doc["points"].push_back(std::move(j));
  }
  doc["branches"] = json::array();
  for (const auto& b : d.branches) {
    json pts = json::array();
    for (const auto& [idx, z] : b.points) pts.push_back(json{{"i", idx}, {"z", vec_to_json(z)}});
    doc["branches"].push_back(json{{"points", std::move(pts)}});
  }
  return doc.dump(indent);
}

BifurcationDiagram bifurcation_from_json(const std::string& text) {
  const json doc = parse_report(text);
  BifurcationDiagram d;
  d.q0 = get_vec(doc.at("q0"), "<report>", "q0");
  d.dir = get_vec(doc.at("dir"), "<report>", "dir");
  d.lambdas = doc.at("lambdas").get<std::vector<double>>();
  for (const auto& j : doc.at("points")) {
    SweepPoint pt;
    pt.lambda = j.at("lambda").get<double>();
    if (!j.at("count").is_null()) pt.count = j.at("count").get<int>();
    pt.continuum = j.at("continuum").get<bool>();
    pt.skeleton_proximal = j.at("skeleton_proximal").get<bool>();
    pt.solution_on_boundary = j.at("solution_on_boundary").get<bool>();
    pt.singular_piece = j.at("singular_piece").get<bool>();
    for (const auto& z : j.at("z")) pt.z.push_back(get_vec(z, "<report>", "z"));
    for (const auto& x : j.at("x")) pt.x.push_back(get_vec(x, "<report>", "x"));
    d.points.push_back(std::move(pt));
  }
  for (const auto& j : doc.at("branches")) {
    SweepBranch b;
    for (const auto& p : j.at("points"))
      b.points.emplace_back(p.at("i").get<int>(), get_vec(p.at("z"), "<report>", "z"));
    d.branches.push_back(std::move(b));
  }
  return d;
}

}  // namespace lcpatlas
