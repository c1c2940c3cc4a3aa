#pragma once

#include <optional>
#include <vector>

#include "lcpatlas/lcs.hpp"
#include "lcpatlas/types.hpp"

namespace lcpatlas {

// Two cross-coupled bipolar transistors (Ebers-Moll model with idealized
// diode junctions) in a four-capacitor resistive network. States are the
// capacitor voltages (v1a, v2a, v1b, v2b); the complementarity pair (w, z)
// collects the four junction port variables. Input r is the supply potential
// difference, s the junction forward voltage.
struct CircuitParams {
  // resistances, ohms
  double R0a = 100.0;
  double R1a = 2200.0;
  double R2a = 100.0;
  double R0b = 100.0;
  double R1b = 100.0;
  double R2b = 10000.0;
  double R1 = 10.0;
  double R2 = 500.0;
  double RR = 1.0;  // reverse junction resistance
  double RF = 1.0;  // forward junction resistance
  // capacitances, farads
  double C1a = 100e-6;
  double C2a = 100e-6;
  double C1b = 100e-6;
  double C2b = 100e-6;
  // transistor gains, each in (0,1)
  double alphaF = 0.99;
  double alphaR = 0.5;
  // inputs, volts
  double s = 0.7;
  double r = 0.0;

  void validate() const;  // throws InputError
};

LcsModel circuit_model(const CircuitParams& p);

// Steady-state data pivoted onto the junction variables:
//   Mhat = -inv(B) A inv(C),   qhat = inv(B) (A inv(C) E2 s - E1 r).
// Two independent routes to Mhat: the matrix product above, and entrywise
// closed-form expressions in the conductances and gains.
Mat circuit_Mhat(const CircuitParams& p);
Mat circuit_Mhat_closed_form(const CircuitParams& p);
Vec circuit_qhat(const CircuitParams& p, double r, double s);

// Bistability discriminant: every principal minor of Mhat is positive except
// possibly the one on rows/cols {1,3}, whose determinant has the sign of
// this quantity. Negative values open a three-solution offset region.
double circuit_gamma(const CircuitParams& p);

struct CircuitSweepPoint {
  std::optional<int> count;  // empty when a continuum is present
  bool continuum = false;
  bool solution_on_boundary = false;
  bool singular_piece = false;
};

// Solution counts of lcp(Mhat, qhat) over a (R2, r) parameter grid.
struct CircuitSweep2D {
  std::vector<double> R2_values;
  std::vector<double> r_values;
  std::vector<CircuitSweepPoint> points;  // row-major, R2 index major
  const CircuitSweepPoint& at(std::size_t i, std::size_t j) const {
    return points[i * r_values.size() + j];
  }
};
CircuitSweep2D sweep_2d_circuit(const CircuitParams& base, const std::vector<double>& R2_values,
                                const std::vector<double>& r_values, const Tolerances& tol = {});

}  // namespace lcpatlas
