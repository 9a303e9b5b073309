#pragma once

#include <vector>

#include "qmem/channel.hpp"
#include "qmem/ellipsoid.hpp"

namespace qmem {

double concurrence(const Matrix4cd& rho);

/// Absolute sum of the negative partial-transpose eigenvalues.
double negativity(const Matrix4cd& rho);

/// PPT test on the Choi state; exact separability criterion for 2x2.
bool is_eb(const ChoiState& c, double tol = 1e-9);

struct RobustnessResult {
  double value = 0.0;
  double t_lo = 0.0;  // certified infeasible (or 0)
  double t_hi = 0.0;  // certified feasible
};

/// Minimal t such that (choi + t X)/(1+t) is PPT for some valid Choi state X,
/// by bisection over alternating-projection feasibility. tol is the bisection
/// bracket width.
RobustnessResult memory_robustness(const ChoiState& c, double tol = 1e-4);

/// Generalized entanglement robustness: noise set relaxed to all density
/// matrices.
RobustnessResult state_robustness(const Matrix4cd& rho, double tol = 1e-4);

struct MemoryReport {
  bool eb = false;
  double negativity = 0.0;
  double concurrence = 0.0;
  double memory_robustness = 0.0;
  double volume = 0.0;
  double volume_bound = 0.0;
  double lemma_gap = 0.0;  // volume_bound - memory_robustness
};

MemoryReport memory_report(const ChoiState& c, double robustness_tol = 1e-4,
                           double ppt_tol = 1e-9);

namespace detail {

enum class RobustnessNoise { Choi, Density };

struct FeasibilityTrace {
  int cycles = 0;
  double final_violation = 0.0;
  std::vector<double> violations;  // one entry per cycle
};

/// Feasibility kernel behind the robustness bisection: true iff a noise state
/// X in the given set exists with (rho + t X)/(1+t) PPT.
bool mix_feasible(const Matrix4cd& rho, double t, RobustnessNoise noise,
                  FeasibilityTrace* trace = nullptr);

}  // namespace detail

}  // namespace qmem
