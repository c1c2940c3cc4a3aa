#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lcpatlas/analysis.hpp"
#include "lcpatlas/circuit.hpp"
#include "lcpatlas/classify2d.hpp"
#include "lcpatlas/equivalence.hpp"
#include "lcpatlas/lcp_core.hpp"
#include "lcpatlas/lcs.hpp"
#include "lcpatlas/problem_io.hpp"
#include "lcpatlas/stability.hpp"
#include "lcpatlas/svg.hpp"
#include "lcpatlas/types.hpp"

namespace {

using namespace lcpatlas;

// Exit codes: 0 ok, 2 input error, 3 numeric/solver error, 4 unsupported
// dimension.
constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitDimension = 4;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::string fmt_vec(const Vec& v) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += fmt(v(i));
  }
  return out + "]";
}

std::vector<double> parse_csv_doubles(const std::string& text, const std::string& flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const double v = std::stod(item, &used);
      while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw InputError(flag + ": cannot parse '" + item + "' as a number");
    }
  }
  if (out.empty()) throw InputError(flag + ": empty list");
  return out;
}

Vec parse_vec_flag(const std::string& text, const std::string& flag) {
  const std::vector<double> vals = parse_csv_doubles(text, flag);
  Vec v(static_cast<Eigen::Index>(vals.size()));
  for (std::size_t i = 0; i < vals.size(); ++i) v(static_cast<Eigen::Index>(i)) = vals[i];
  return v;
}

// "a:b:n" -> n points evenly spaced from a to b inclusive.
std::vector<double> parse_range(const std::string& text, const std::string& flag) {
  double a = 0.0, b = 0.0;
  long n = 0;
  char extra = 0;
  if (std::sscanf(text.c_str(), "%lf:%lf:%ld%c", &a, &b, &n, &extra) != 3 || n < 1)
    throw InputError(flag + ": expected a:b:n with n >= 1, got '" + text + "'");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n));
  if (n == 1) {
    out.push_back(a);
    return out;
  }
  for (long i = 0; i < n; ++i)
    out.push_back(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
  return out;
}

const LcpProblem& require_lcp(const ProblemFile& file) {
  if (file.kind != "lcp")
    throw InputError("field 'kind': expected an lcp problem, got '" + file.kind + "'");
  return file.lcp();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open output file: " + path);
  out << content;
  if (!out) throw InputError("failed writing output file: " + path);
}

// ---- solve -----------------------------------------------------------------

int cmd_solve(const std::string& path, double tol_opt, const std::string& method,
              bool json_out) {
  ProblemFile file = load_problem(path);
  const LcpProblem& prob = require_lcp(file);
  Tolerances tol = file.tol;
  if (tol_opt > 0) tol.sign_abs = tol_opt;

  if (method == "lemke") {
    const LemkeResult res = solve_lemke(LcpInstance(prob.M, prob.q, tol));
    if (res.status == LemkeStatus::RayTermination) {
      std::cerr << "lemke: ray termination after " << res.pivots << " pivots\n";
      return kExitNumeric;
    }
    SolutionSet set;
    IsolatedSolution sol;
    sol.z = res.z;
    sol.w = prob.M * res.z + prob.q;
    sol.x = x_from_z(prob.M, prob.q, res.z);
    std::vector<int> members;
    for (Eigen::Index i = 0; i < res.z.size(); ++i)
      if (res.z(i) > 0) members.push_back(static_cast<int>(i) + 1);
    sol.alpha = IndexSet(members, static_cast<int>(prob.q.size()));
    set.isolated.push_back(std::move(sol));
    if (json_out) {
      std::cout << to_json_text(set) << "\n";
    } else {
      std::cout << "method: lemke (" << res.pivots << " pivots)\n";
      std::cout << "solution: z=" << fmt_vec(set.isolated[0].z)
                << " w=" << fmt_vec(set.isolated[0].w) << "\n";
    }
    return kExitOk;
  }

  const SolutionSet set = solve_enumerate(LcpInstance(prob.M, prob.q, tol));
  if (json_out) {
    std::cout << to_json_text(set) << "\n";
    return kExitOk;
  }
  if (!file.name.empty()) std::cout << "problem: " << file.name << "\n";
  if (set.continuum())
    std::cout << "count: CONTINUUM\n";
  else
    std::cout << "count: " << *set.exact_count() << "\n";
  int i = 0;
  for (const auto& sol : set.isolated) {
    std::cout << "solution " << ++i << ": alpha=" << sol.alpha.to_string()
              << " z=" << fmt_vec(sol.z) << " w=" << fmt_vec(sol.w) << " x=" << fmt_vec(sol.x)
              << "\n";
  }
  for (const auto& fam : set.degenerate) {
    std::cout << "continuum family: alpha=" << fam.alpha.to_string()
              << " z=" << fmt_vec(fam.particular_z) << " directions:";
    for (const auto& g : fam.nullspace_generators) std::cout << " " << fmt_vec(g);
    std::cout << "\n";
  }
  return kExitOk;
}

// ---- analyze ---------------------------------------------------------------

int cmd_analyze(const std::string& path, bool with_margin, bool with_degree,
                std::uint64_t seed, bool json_out) {
  ProblemFile file = load_problem(path);
  const LcpProblem& prob = require_lcp(file);
  const Tolerances tol = file.tol;

  const R0Report r0 = is_R0(prob.M, tol);
  const auto cones = degenerate_cones(prob.M, tol);
  const WeakDegeneracyReport weak = is_weakly_degenerate(prob.M, tol);

  std::optional<StabilityReport> margin;
  if (with_margin) margin = stability_margin(prob.M, tol);
  std::optional<DegreeReport> deg;
  if (with_degree && r0.is_r0) deg = degree(prob.M, seed, tol);

  if (json_out) {
    std::ostringstream os;
    os << "{\n  \"n\": " << prob.M.rows() << ",\n";
    os << "  \"r0\": " << (r0.is_r0 ? "true" : "false") << ",\n";
    os << "  \"degenerate_cones\": [";
    for (std::size_t i = 0; i < cones.size(); ++i)
      os << (i ? ", " : "") << "\"" << cones[i].to_string() << "\"";
    os << "],\n";
    os << "  \"weakly_degenerate\": " << (weak.weakly_degenerate ? "true" : "false") << ",\n";
    if (weak.witness) os << "  \"witness\": \"" << weak.witness->describe() << "\",\n";
    os << "  \"stable\": " << (weak.weakly_degenerate ? "false" : "true");
    if (margin) os << ",\n  \"stability\": " << to_json_text(*margin);
    if (deg) os << ",\n  \"degree\": " << to_json_text(*deg);
    os << "\n}";
    std::cout << os.str() << "\n";
    return kExitOk;
  }

  std::cout << "n: " << prob.M.rows() << "\n";
  std::cout << "R0: " << (r0.is_r0 ? "yes" : "no");
  if (!r0.is_r0 && r0.witness_alpha)
    std::cout << " (kernel witness at alpha=" << r0.witness_alpha->to_string()
              << ", p=" << fmt_vec(*r0.witness_p) << ")";
  std::cout << "\n";
  std::cout << "degenerate cones:";
  if (cones.empty()) std::cout << " none";
  for (const auto& alpha : cones) std::cout << " " << alpha.to_string();
  std::cout << "\n";
  std::cout << "weakly degenerate: " << (weak.weakly_degenerate ? "yes" : "no");
  if (weak.witness) std::cout << " (" << weak.witness->describe() << ")";
  std::cout << "\n";
  std::cout << "stability: " << (weak.weakly_degenerate ? "UNSTABLE" : "STABLE") << "\n";
  if (margin) {
    std::cout << "margin: " << fmt(margin->margin);
    if (margin->argmin)
      std::cout << " (argmin: " << margin->argmin->label << ", k=" << margin->argmin->k << ")";
    if (margin->zero_column) std::cout << " (zero column)";
    std::cout << "\n";
  }
  if (deg) {
    std::cout << "degree: " << deg->degree << " (" << deg->solution_indices.size()
              << " solutions at probe, " << deg->probes_rejected << " probes rejected)\n";
  } else if (with_degree && !r0.is_r0) {
    std::cout << "degree: undefined (not R0)\n";
  }
  return kExitOk;
}

// ---- classify2d --------------------------------------------------------------

int cmd_classify2d(const std::string& path, bool json_out) {
  ProblemFile file = load_problem(path);
  const LcpProblem& prob = require_lcp(file);
  const MatrixClass2D cls = classify_2d(prob.M, file.tol);
  if (json_out) {
    std::cout << to_json_text(cls) << "\n";
    return kExitOk;
  }
  std::cout << "label: " << cls.label << "\n";
  std::cout << "stable: " << (cls.stable ? "yes" : "no") << "\n";
  std::cout << "theta1: " << fmt(cls.theta1) << " theta2: " << fmt(cls.theta2) << "\n";
  if (cls.signature) {
    const auto& f = cls.signature->fingerprint;
    const auto& p = cls.signature->profile;
    std::cout << "fingerprint: [" << f[0] << ", " << f[1] << ", " << f[2] << ", " << f[3]
              << "]\n";
    std::cout << "cone profile: [" << p[0] << ", " << p[1] << ", " << p[2] << ", " << p[3]
              << "]\n";
    std::cout << "P-matrix: " << (cls.signature->is_p ? "yes" : "no") << "\n";
  }
  if (cls.degree) std::cout << "degree: " << *cls.degree << "\n";
  std::cout << "line proximity: " << fmt(cls.line_proximity) << " (nearest: "
            << cls.nearest_family << ")\n";
  if (cls.proximity_warning && cls.stable)
    std::cout << "warning: within 1e-3 rad of an unstable line; label is fragile\n";
  return kExitOk;
}

// ---- sweep -------------------------------------------------------------------

std::string sweep_csv(const BifurcationDiagram& d) {
  std::ostringstream os;
  os << "lambda,count,skeleton_proximal,solution_on_boundary,singular_piece\n";
  for (const auto& pt : d.points) {
    os << fmt(pt.lambda) << ",";
    if (pt.count) os << *pt.count;
    else os << "CONTINUUM";
    os << "," << (pt.skeleton_proximal ? 1 : 0) << "," << (pt.solution_on_boundary ? 1 : 0)
       << "," << (pt.singular_piece ? 1 : 0) << "\n";
  }
  return os.str();
}

std::string sweep_svg(const BifurcationDiagram& d) {
  const double width = 640, height = 420;
  SvgScene svg(width, height);
  svg.rect(0, 0, width, height, "#ffffff");

  double zmax = 1e-12;
  for (const auto& pt : d.points)
    for (const auto& z : pt.z) zmax = std::max(zmax, z.lpNorm<Eigen::Infinity>());
  const double lam0 = d.lambdas.front();
  const double lam1 = d.lambdas.back();
  PlotFrame frame{lam0, lam1 == lam0 ? lam0 + 1 : lam1, 0, 1.05 * zmax, 50, 20, width - 70,
                  height - 60};

  // shaded bands where the solution set is a continuum
  for (std::size_t i = 0; i < d.points.size(); ++i) {
    if (!d.points[i].continuum) continue;
    const double lo = i > 0 ? 0.5 * (d.lambdas[i - 1] + d.lambdas[i]) : d.lambdas[i];
    const double hi =
        i + 1 < d.lambdas.size() ? 0.5 * (d.lambdas[i] + d.lambdas[i + 1]) : d.lambdas[i];
    svg.rect(frame.map_x(lo), frame.py, std::max(1.0, frame.map_x(hi) - frame.map_x(lo)),
             frame.ph, "#dddddd");
  }

  svg.line(frame.px, frame.py + frame.ph, frame.px + frame.pw, frame.py + frame.ph, "#000000");
  svg.line(frame.px, frame.py, frame.px, frame.py + frame.ph, "#000000");
  svg.text(frame.px + frame.pw / 2 - 30, height - 12, "lambda");
  svg.text(8, frame.py + 10, "|z|_inf");

  const std::vector<std::string> colors = {"#1f77b4", "#d62728", "#2ca02c",
                                           "#9467bd", "#ff7f0e", "#8c564b"};
  for (std::size_t b = 0; b < d.branches.size(); ++b) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& [idx, z] : d.branches[b].points)
      pts.emplace_back(frame.map_x(d.lambdas[static_cast<std::size_t>(idx)]),
                       frame.map_y(z.lpNorm<Eigen::Infinity>()));
    if (pts.size() == 1)
      svg.circle(pts[0].first, pts[0].second, 2.0, colors[b % colors.size()]);
    else
      svg.polyline(pts, colors[b % colors.size()], 1.5);
  }
  svg.text(frame.px, 14, "solution branches (" + std::to_string(d.branches.size()) + ")");
  return svg.str();
}

int cmd_sweep(const std::string& path, const std::string& q0_s, const std::string& dir_s,
              const std::string& lambda_s, const std::string& out_csv,
              const std::string& out_svg, bool json_out) {
  ProblemFile file = load_problem(path);
  const LcpProblem& prob = require_lcp(file);
  const Vec q0 = q0_s.empty() ? prob.q : parse_vec_flag(q0_s, "--q0");
  if (dir_s.empty()) throw InputError("--dir: required for sweep");
  const Vec dir = parse_vec_flag(dir_s, "--dir");
  const std::vector<double> lambdas =
      lambda_s.empty() ? parse_range("0:1:101", "--lambda") : parse_range(lambda_s, "--lambda");

  const BifurcationDiagram diagram = sweep_1d(prob.M, q0, dir, lambdas, file.tol);

  if (!out_csv.empty()) write_text_file(out_csv, sweep_csv(diagram));
  if (!out_svg.empty()) write_text_file(out_svg, sweep_svg(diagram));
  if (json_out) {
    std::cout << to_json_text(diagram) << "\n";
  } else {
    int changes = 0;
    for (std::size_t i = 1; i < diagram.points.size(); ++i)
      if (diagram.points[i].count != diagram.points[i - 1].count) ++changes;
    std::cout << "grid points: " << diagram.points.size() << "\n";
    std::cout << "branches: " << diagram.branches.size() << "\n";
    std::cout << "count changes: " << changes << "\n";
    if (!out_csv.empty()) std::cout << "csv: " << out_csv << "\n";
    if (!out_svg.empty()) std::cout << "svg: " << out_svg << "\n";
  }
  return kExitOk;
}

// ---- circuit -----------------------------------------------------------------

CircuitParams circuit_params_from(const ProblemFile& file) {
  if (file.kind != "circuit")
    throw InputError("field 'kind': expected a circuit problem, got '" + file.kind + "'");
  return file.circuit().params;
}

int cmd_circuit_info(CircuitParams params, const std::string& r2_grid_s) {
  const std::vector<double> grid =
      parse_range(r2_grid_s.empty() ? "1:1000:200" : r2_grid_s, "--r2-grid");
  std::cout << "gamma(R2=" << fmt(params.R2) << ") = " << fmt(circuit_gamma(params)) << "\n";
  const Mat Mhat = circuit_Mhat(params);
  std::cout << "Mhat vs closed form: max |diff| = "
            << fmt((Mhat - circuit_Mhat_closed_form(params)).cwiseAbs().maxCoeff()) << "\n";

  std::optional<std::pair<double, double>> bracket;
  CircuitParams p = params;
  p.R2 = grid.front();
  double prev = circuit_gamma(p);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    p.R2 = grid[i];
    const double cur = circuit_gamma(p);
    if (!bracket && ((prev < 0) != (cur < 0))) bracket = {grid[i - 1], grid[i]};
    prev = cur;
  }
  std::cout << "gamma sign change on R2 grid [" << fmt(grid.front()) << ", "
            << fmt(grid.back()) << "]: ";
  if (bracket)
    std::cout << "bracket [" << fmt(bracket->first) << ", " << fmt(bracket->second) << "]\n";
  else
    std::cout << "none\n";
  return kExitOk;
}

int cmd_circuit_equilibria(const CircuitParams& params, bool json_out) {
  const LcsModel model = circuit_model(params);
  const EquilibriumSet eqs = equilibria(model, params.r, params.s);
  if (json_out) {
    std::ostringstream os;
    os << "{\n  \"count\": ";
    if (eqs.continuum()) os << "null";
    else os << eqs.points.size();
    os << ",\n  \"equilibria\": [";
    for (std::size_t i = 0; i < eqs.points.size(); ++i) {
      os << (i ? "," : "") << "\n    {\"xi\": [";
      for (Eigen::Index k = 0; k < eqs.points[i].xi.size(); ++k)
        os << (k ? ", " : "") << fmt(eqs.points[i].xi(k));
      os << "], \"z\": [";
      for (Eigen::Index k = 0; k < eqs.points[i].z.size(); ++k)
        os << (k ? ", " : "") << fmt(eqs.points[i].z(k));
      os << "], \"alpha\": \"" << eqs.points[i].alpha.to_string() << "\"}";
    }
    os << "\n  ]\n}";
    std::cout << os.str() << "\n";
    return kExitOk;
  }
  std::cout << "r=" << fmt(params.r) << " s=" << fmt(params.s) << " R2=" << fmt(params.R2)
            << "\n";
  if (eqs.continuum())
    std::cout << "count: CONTINUUM\n";
  else
    std::cout << "count: " << eqs.points.size() << "\n";
  int i = 0;
  for (const auto& eq : eqs.points) {
    std::cout << "equilibrium " << ++i << ": xi=" << fmt_vec(eq.xi) << " z=" << fmt_vec(eq.z)
              << " alpha=" << eq.alpha.to_string() << "\n";
  }
  return kExitOk;
}

std::string circuit_sweep_csv(const CircuitSweep2D& sweep) {
  std::ostringstream os;
  os << "R2,r,count,continuum,solution_on_boundary,singular_piece\n";
  for (std::size_t i = 0; i < sweep.R2_values.size(); ++i)
    for (std::size_t j = 0; j < sweep.r_values.size(); ++j) {
      const CircuitSweepPoint& pt = sweep.at(i, j);
      os << fmt(sweep.R2_values[i]) << "," << fmt(sweep.r_values[j]) << ",";
      if (pt.count) os << *pt.count;
      else os << "CONTINUUM";
      os << "," << (pt.continuum ? 1 : 0) << "," << (pt.solution_on_boundary ? 1 : 0) << ","
         << (pt.singular_piece ? 1 : 0) << "\n";
    }
  return os.str();
}

std::string circuit_sweep_svg(const CircuitSweep2D& sweep) {
  const double width = 640, height = 480;
  SvgScene svg(width, height);
  svg.rect(0, 0, width, height, "#ffffff");
  PlotFrame frame{sweep.R2_values.front(), sweep.R2_values.back(), sweep.r_values.front(),
                  sweep.r_values.back(), 60, 30, width - 90, height - 80};
  const double cw = frame.pw / static_cast<double>(sweep.R2_values.size());
  const double ch = frame.ph / static_cast<double>(sweep.r_values.size());
  for (std::size_t i = 0; i < sweep.R2_values.size(); ++i)
    for (std::size_t j = 0; j < sweep.r_values.size(); ++j) {
      const CircuitSweepPoint& pt = sweep.at(i, j);
      std::string color = "#f0f0f0";  // one solution
      if (!pt.count) color = "#c2a5cf";  // continuum
      else if (*pt.count >= 3) color = "#2c7fb8";
      else if (*pt.count == 2) color = "#a6bddb";
      else if (*pt.count == 0) color = "#fdae61";
      svg.rect(frame.px + static_cast<double>(i) * cw,
               frame.py + frame.ph - static_cast<double>(j + 1) * ch, cw + 0.5, ch + 0.5,
               color);
    }
  svg.line(frame.px, frame.py + frame.ph, frame.px + frame.pw, frame.py + frame.ph, "#000000");
  svg.line(frame.px, frame.py, frame.px, frame.py + frame.ph, "#000000");
  svg.text(frame.px + frame.pw / 2 - 10, height - 14, "R2");
  svg.text(10, frame.py + frame.ph / 2, "r");
  svg.text(frame.px, 18, "steady-state solution count (dark: 3)");
  return svg.str();
}

int cmd_circuit_sweep2d(const CircuitParams& params, const std::string& r2_s,
                        const std::string& r_s, const std::string& out_csv,
                        const std::string& out_svg) {
  const std::vector<double> r2_grid = parse_range(r2_s.empty() ? "1:1000:50" : r2_s, "--r2");
  const std::vector<double> r_grid = parse_range(r_s.empty() ? "-0.5:2:50" : r_s, "--r");
  const CircuitSweep2D sweep = sweep_2d_circuit(params, r2_grid, r_grid);

  long three = 0, one = 0, other = 0;
  for (const auto& pt : sweep.points) {
    if (pt.count && *pt.count == 3) ++three;
    else if (pt.count && *pt.count == 1) ++one;
    else ++other;
  }
  std::cout << "grid: " << r2_grid.size() << " x " << r_grid.size() << "\n";
  std::cout << "count 1: " << one << "  count 3: " << three << "  other: " << other << "\n";
  if (!out_csv.empty()) {
    write_text_file(out_csv, circuit_sweep_csv(sweep));
    std::cout << "csv: " << out_csv << "\n";
  }
  if (!out_svg.empty()) {
    write_text_file(out_svg, circuit_sweep_svg(sweep));
    std::cout << "svg: " << out_svg << "\n";
  }
  return kExitOk;
}

std::vector<ScheduleStep> parse_schedule(const std::string& text, double default_r) {
  std::vector<ScheduleStep> schedule;
  if (text.empty()) {
    schedule.push_back({0.0, default_r});
    return schedule;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    double t = 0, r = 0;
    char extra = 0;
    if (std::sscanf(item.c_str(), "%lf:%lf%c", &t, &r, &extra) != 2)
      throw InputError("--schedule: expected t:r pairs separated by commas, got '" + item + "'");
    schedule.push_back({t, r});
  }
  return schedule;
}

std::string trajectory_csv(const Trajectory& traj) {
  std::ostringstream os;
  os << "t";
  const Eigen::Index n = traj.xi.empty() ? 0 : traj.xi.front().size();
  const Eigen::Index m = traj.z.empty() ? 0 : traj.z.front().size();
  for (Eigen::Index i = 0; i < n; ++i) os << ",xi" << (i + 1);
  for (Eigen::Index i = 0; i < m; ++i) os << ",z" << (i + 1);
  os << ",r\n";
  for (std::size_t k = 0; k < traj.t.size(); ++k) {
    os << fmt(traj.t[k]);
    for (Eigen::Index i = 0; i < n; ++i) os << "," << fmt(traj.xi[k](i));
    for (Eigen::Index i = 0; i < m; ++i) os << "," << fmt(traj.z[k](i));
    os << "," << fmt(traj.r[k]) << "\n";
  }
  return os.str();
}

std::string trajectory_svg(const Trajectory& traj) {
  const double width = 640, height = 420;
  SvgScene svg(width, height);
  svg.rect(0, 0, width, height, "#ffffff");
  double lo = 0, hi = 1e-9;
  for (const auto& xi : traj.xi) {
    lo = std::min(lo, xi.minCoeff());
    hi = std::max(hi, xi.maxCoeff());
  }
  PlotFrame frame{traj.t.front(), std::max(traj.t.back(), traj.t.front() + 1e-9), lo,
                  hi + 0.05 * (hi - lo + 1e-9), 50, 20, width - 70, height - 60};
  svg.line(frame.px, frame.map_y(0), frame.px + frame.pw, frame.map_y(0), "#bbbbbb");
  svg.line(frame.px, frame.py + frame.ph, frame.px + frame.pw, frame.py + frame.ph, "#000000");
  svg.line(frame.px, frame.py, frame.px, frame.py + frame.ph, "#000000");
  const std::vector<std::string> colors = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
  const Eigen::Index n = traj.xi.empty() ? 0 : traj.xi.front().size();
  for (Eigen::Index c = 0; c < n; ++c) {
    std::vector<std::pair<double, double>> pts;
    pts.reserve(traj.t.size());
    for (std::size_t k = 0; k < traj.t.size(); ++k)
      pts.emplace_back(frame.map_x(traj.t[k]), frame.map_y(traj.xi[k](c)));
    svg.polyline(pts, colors[static_cast<std::size_t>(c) % colors.size()], 1.2);
  }
  svg.text(frame.px + frame.pw / 2 - 10, height - 12, "t");
  svg.text(8, frame.py + 10, "state");
  return svg.str();
}

int cmd_circuit_simulate(const CircuitParams& params, const std::string& xi0_s,
                         const std::string& schedule_s, double t_end, double dt, int stride,
                         const std::string& out_csv, const std::string& out_svg) {
  const LcsModel model = circuit_model(params);
  Vec xi0 = Vec::Zero(4);
  if (!xi0_s.empty()) {
    xi0 = parse_vec_flag(xi0_s, "--xi0");
    if (xi0.size() != 4) throw InputError("--xi0: expected 4 components");
  }
  const std::vector<ScheduleStep> schedule = parse_schedule(schedule_s, params.r);
  const Trajectory traj = simulate(model, xi0, schedule, params.s, t_end, dt, stride);
  std::cout << "samples: " << traj.t.size() << "\n";
  std::cout << "final state: " << fmt_vec(traj.xi.back()) << "\n";
  if (!out_csv.empty()) {
    write_text_file(out_csv, trajectory_csv(traj));
    std::cout << "csv: " << out_csv << "\n";
  }
  if (!out_svg.empty()) {
    write_text_file(out_svg, trajectory_svg(traj));
    std::cout << "svg: " << out_svg << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lcp-atlas: geometric analysis of linear complementarity problems"};
  app.require_subcommand(1);

  std::string file, method = "enumerate", q0_s, dir_s, lambda_s, out_csv, out_svg;
  std::string r2_grid_s, r_grid_s, xi0_s, schedule_s;
  double tol_opt = 0.0, t_end = 1.0, dt = 1e-4;
  double override_r = 0.0, override_r2 = 0.0, override_s = 0.0;
  bool json_out = false, with_margin = false, with_degree = false;
  bool has_r = false, has_r2 = false, has_s = false;
  std::uint64_t seed = 12345;
  int stride = 10;

  auto* solve = app.add_subcommand("solve", "Solve an LCP problem file");
  solve->add_option("file", file)->required();
  solve->add_option("--tol", tol_opt, "solution sign tolerance (scaled by 1+|q|)");
  solve->add_option("--method", method)->check(CLI::IsMember({"enumerate", "lemke"}));
  solve->add_flag("--json", json_out);

  auto* analyze = app.add_subcommand("analyze", "Degeneracy, stability, margin, degree");
  analyze->add_option("file", file)->required();
  analyze->add_flag("--margin", with_margin, "include the stability margin breakdown");
  analyze->add_flag("--degree", with_degree, "include the solution degree (R0 only)");
  analyze->add_option("--seed", seed, "probe RNG seed");
  analyze->add_flag("--json", json_out);

  auto* classify = app.add_subcommand("classify2d", "Classify a 2x2 matrix");
  classify->add_option("file", file)->required();
  classify->add_flag("--json", json_out);

  auto* sweep = app.add_subcommand("sweep", "1-parameter offset sweep q0 + lambda*dir");
  sweep->add_option("file", file)->required();
  sweep->add_option("--q0", q0_s, "base offset, comma separated (default: q of the file)");
  sweep->add_option("--dir", dir_s, "sweep direction, comma separated")->required();
  sweep->add_option("--lambda", lambda_s, "grid a:b:n (default 0:1:101)");
  sweep->add_option("--out", out_csv, "CSV output path");
  sweep->add_option("--svg", out_svg, "SVG output path");
  sweep->add_flag("--json", json_out);

  auto* circuit = app.add_subcommand("circuit", "Transistor-circuit analyses");
  circuit->add_option("file", file)->required();
  auto* info = circuit->add_subcommand("info", "Pivoted matrix checks and gamma scan");
  info->add_option("--r2-grid", r2_grid_s, "R2 grid a:b:n for the gamma scan");
  auto* equil = circuit->add_subcommand("equilibria", "Steady states at the file's inputs");
  equil->add_flag("--json", json_out);
  auto* sweep2d = circuit->add_subcommand("sweep2d", "Solution counts over (R2, r)");
  sweep2d->add_option("--r2", r2_grid_s, "R2 grid a:b:n (default 1:1000:50)");
  sweep2d->add_option("--r", r_grid_s, "r grid a:b:n (default -0.5:2:50)");
  sweep2d->add_option("--out", out_csv, "CSV output path");
  sweep2d->add_option("--svg", out_svg, "SVG output path");
  auto* sim = circuit->add_subcommand("simulate", "Integrate the circuit dynamics");
  sim->add_option("--xi0", xi0_s, "initial capacitor voltages, comma separated (default 0)");
  sim->add_option("--schedule", schedule_s, "piecewise-constant input, t:r pairs");
  sim->add_option("--t-end", t_end, "end time, seconds");
  sim->add_option("--dt", dt, "integrator step, seconds");
  sim->add_option("--stride", stride, "record every k-th step");
  sim->add_option("--out", out_csv, "CSV output path");
  sim->add_option("--svg", out_svg, "SVG output path");
  circuit->add_option("--set-r", override_r, "override the input r");
  circuit->add_option("--set-r2", override_r2, "override R2, ohms");
  circuit->add_option("--set-s", override_s, "override the input s");
  circuit->require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  has_r = circuit->count("--set-r") > 0;
  has_r2 = circuit->count("--set-r2") > 0;
  has_s = circuit->count("--set-s") > 0;

  try {
    if (*solve) return cmd_solve(file, tol_opt, method, json_out);
    if (*analyze) return cmd_analyze(file, with_margin, with_degree, seed, json_out);
    if (*classify) return cmd_classify2d(file, json_out);
    if (*sweep) return cmd_sweep(file, q0_s, dir_s, lambda_s, out_csv, out_svg, json_out);
    if (*circuit) {
      CircuitParams params = circuit_params_from(load_problem(file));
      if (has_r) params.r = override_r;
      if (has_r2) params.R2 = override_r2;
      if (has_s) params.s = override_s;
      if (*info) return cmd_circuit_info(params, r2_grid_s);
      if (*equil) return cmd_circuit_equilibria(params, json_out);
      if (*sweep2d) return cmd_circuit_sweep2d(params, r2_grid_s, r_grid_s, out_csv, out_svg);
      if (*sim)
        return cmd_circuit_simulate(params, xi0_s, schedule_s, t_end, dt, stride, out_csv,
                                    out_svg);
    }
  } catch (const UnsupportedDimension& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDimension;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitOk;
}
