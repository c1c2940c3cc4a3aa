#include "lcpatlas/circuit.hpp"

#include <cmath>
#include <string>

#include "lcpatlas/analysis.hpp"
#include "lcpatlas/lcp_core.hpp"
#include "lcpatlas/parallel.hpp"

namespace lcpatlas {

namespace {

struct Conductances {
  double G0a, G1a, G2a, G0b, G1b, G2b, G1, G2;
};

Conductances conductances(const CircuitParams& p) {
  return {1.0 / p.R0a, 1.0 / p.R1a, 1.0 / p.R2a, 1.0 / p.R0b,
          1.0 / p.R1b, 1.0 / p.R2b, 1.0 / p.R1,  1.0 / p.R2};
}

}  // namespace

void CircuitParams::validate() const {
  auto positive = [](double v, const char* name) {
    if (!std::isfinite(v) || !(v > 0.0))
      throw InputError(std::string("circuit: ") + name + " must be positive");
  };
  positive(R0a, "R0a");
  positive(R1a, "R1a");
  positive(R2a, "R2a");
  positive(R0b, "R0b");
  positive(R1b, "R1b");
  positive(R2b, "R2b");
  positive(R1, "R1");
  positive(R2, "R2");
  positive(RR, "RR");
  positive(RF, "RF");
  positive(C1a, "C1a");
  positive(C2a, "C2a");
  positive(C1b, "C1b");
  positive(C2b, "C2b");
  if (!std::isfinite(alphaF) || !(alphaF > 0.0 && alphaF < 1.0))
    throw InputError("circuit: alphaF must lie in (0,1)");
  if (!std::isfinite(alphaR) || !(alphaR > 0.0 && alphaR < 1.0))
    throw InputError("circuit: alphaR must lie in (0,1)");
  if (!std::isfinite(s) || !std::isfinite(r)) throw InputError("circuit: inputs must be finite");
}

LcsModel circuit_model(const CircuitParams& p) {
  p.validate();
  const Conductances g = conductances(p);

  Mat Ablk(4, 4);
  Ablk << -(g.G0a + g.G2a + g.G2), g.G2a + g.G2, 0.0, g.G2,
      g.G2a + g.G2, -(g.G1a + g.G2a + g.G1 + g.G2), g.G1, -(g.G1 + g.G2),
      0.0, g.G1, -(g.G0b + g.G2b + g.G1), g.G2b + g.G1,
      g.G2, -(g.G1 + g.G2), g.G2b + g.G1, -(g.G1b + g.G2b + g.G1 + g.G2);

  Mat T(2, 2);
  T << -1.0 / p.alphaR, 1.0, 1.0, -1.0 / p.alphaF;
  Mat Bblk = Mat::Zero(4, 4);
  Bblk.block(0, 0, 2, 2) = T;
  Bblk.block(2, 2, 2, 2) = T;

  Vec inv_cap(4);
  inv_cap << 1.0 / p.C1a, 1.0 / p.C2a, 1.0 / p.C1b, 1.0 / p.C2b;

  Vec e1(4);
  e1 << -g.G2, g.G1 + g.G2, -g.G1, g.G1 + g.G2;

  LcsModel model;
  model.A = inv_cap.asDiagonal() * Ablk;
  model.B = inv_cap.asDiagonal() * Bblk;
  model.C = -Mat::Identity(4, 4);
  Vec d(4);
  d << p.RR / p.alphaR, p.RF / p.alphaF, p.RR / p.alphaR, p.RF / p.alphaF;
  model.D = d.asDiagonal();
  model.E1 = inv_cap.asDiagonal() * e1;
  model.E2 = Vec::Ones(4);
  model.validate();
  return model;
}

Mat circuit_Mhat(const CircuitParams& p) {
  const LcsModel model = circuit_model(p);
  if (is_singular(model.B)) throw SingularMatrixError("circuit_Mhat: B is singular");
  return -model.B.partialPivLu().solve(Mat(model.A * model.C.inverse()));
}

Mat circuit_Mhat_closed_form(const CircuitParams& p) {
  p.validate();
  const Conductances g = conductances(p);
  const double aF = p.alphaF;
  const double aR = p.alphaR;
  const double det_t = (1.0 - aR * aF) / (aR * aF);

  Mat M(4, 4);
  // own-transistor block, side a
  M(0, 0) = (g.G0a + (1 - aF) * (g.G2a + g.G2)) / aF;
  M(0, 1) = (aF * (g.G1a + g.G1) - (1 - aF) * (g.G2a + g.G2)) / aF;
  M(1, 0) = (aR * g.G0a - (1 - aR) * (g.G2a + g.G2)) / aR;
  M(1, 1) = (g.G1a + g.G1 + (1 - aR) * (g.G2a + g.G2)) / aR;
  // coupling block, a rows
  M(0, 2) = -g.G1;
  M(0, 3) = (aF * g.G1 - (1 - aF) * g.G2) / aF;
  M(1, 2) = -g.G1 / aR;
  M(1, 3) = (g.G1 + (1 - aR) * g.G2) / aR;
  // coupling block, b rows
  M(2, 0) = -g.G2;
  M(2, 1) = (aF * g.G2 - (1 - aF) * g.G1) / aF;
  M(3, 0) = -g.G2 / aR;
  M(3, 1) = (g.G2 + (1 - aR) * g.G1) / aR;
  // own-transistor block, side b
  M(2, 2) = (g.G0b + (1 - aF) * (g.G2b + g.G1)) / aF;
  M(2, 3) = (aF * (g.G1b + g.G2) - (1 - aF) * (g.G2b + g.G1)) / aF;
  M(3, 2) = (aR * g.G0b - (1 - aR) * (g.G2b + g.G1)) / aR;
  M(3, 3) = (g.G1b + g.G2 + (1 - aR) * (g.G2b + g.G1)) / aR;
  return M / det_t;
}

Vec circuit_qhat(const CircuitParams& p, double r, double s) {
  const LcsModel model = circuit_model(p);
  if (is_singular(model.B)) throw SingularMatrixError("circuit_qhat: B is singular");
  const Vec rhs = model.A * model.C.inverse() * model.E2 * s - model.E1 * r;
  return model.B.partialPivLu().solve(rhs);
}

double circuit_gamma(const CircuitParams& p) {
  p.validate();
  const Conductances g = conductances(p);
  const double aF = p.alphaF;
  return g.G0a * g.G0b +
         (1 - aF) * (g.G0a * g.G2b + g.G0b * g.G2a + (1 - aF) * g.G2a * g.G2b) +
         (1 - aF) * (g.G0a + (1 - aF) * g.G2a) * g.G1 -
         ((2 * aF - 1) * g.G1 - (1 - aF) * (g.G0b + (1 - aF) * g.G2b)) * g.G2;
}

CircuitSweep2D sweep_2d_circuit(const CircuitParams& base, const std::vector<double>& R2_values,
                                const std::vector<double>& r_values, const Tolerances& tol) {
  if (R2_values.empty() || r_values.empty()) throw InputError("sweep_2d_circuit: empty grid");
  CircuitSweep2D sweep;
  sweep.R2_values = R2_values;
  sweep.r_values = r_values;
  sweep.points.resize(R2_values.size() * r_values.size());

  const int rows = static_cast<int>(R2_values.size());
  parallel_for(rows, [&](int i) {
    CircuitParams p = base;
    p.R2 = R2_values[static_cast<std::size_t>(i)];
    const LcsModel model = circuit_model(p);
    const auto b_lu = model.B.partialPivLu();
    const Mat Mhat = -b_lu.solve(Mat(model.A * model.C.inverse()));
    const Vec q_s = b_lu.solve(Vec(model.A * model.C.inverse() * model.E2));
    const Vec q_r = b_lu.solve(Vec(model.E1));
    for (std::size_t j = 0; j < r_values.size(); ++j) {
      const Vec qhat = q_s * base.s - q_r * r_values[j];
      const SolutionSet sols = solve_enumerate(LcpInstance(Mhat, qhat, tol));
      CircuitSweepPoint pt;
      pt.continuum = sols.continuum();
      pt.count = sols.exact_count();
      for (const auto& sol : sols.isolated) {
        const SingularityFlags flags = singularity_flags(Mhat, sol.x, 1e-9, tol);
        pt.solution_on_boundary = pt.solution_on_boundary || flags.on_orthant_boundary;
        pt.singular_piece = pt.singular_piece || flags.singular_piece.has_value();
      }
      sweep.points[static_cast<std::size_t>(i) * r_values.size() + j] = pt;
    }
  }, /*grain=*/1);
  return sweep;
}

}  // namespace lcpatlas
