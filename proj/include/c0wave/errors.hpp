#pragma once

// Manufactured solutions on (-1,1)^2 and the error measures of the discrete
// solution against them.

#include "c0wave/slabsolver.hpp"

#include <array>
#include <functional>
#include <string>
#include <vector>

namespace c0wave {

enum class CaseId { case1, case2, case3 };

struct CaseParams {
  double alpha = 1.75;
  int mode_n = 1;  // x frequency of case 3
  int mode_m = 1;  // y frequency of case 3
  double omega = 1.4142135623730951;
};

using SpaceTimeGradient = std::function<std::array<double, 2>(double, double, double)>;

/// Exact solution u = g(x, y) theta(t) with f = u'' - Laplace(u).
struct ManufacturedCase {
  CaseId id = CaseId::case1;
  CaseParams params;

  SpaceFunction g;
  GradientFunction grad_g;
  SpaceFunction lap_g;
  std::function<double(double)> theta;
  std::function<double(double)> dtheta;
  std::function<double(double)> ddtheta;

  [[nodiscard]] double u(double x, double y, double t) const { return g(x, y) * theta(t); }
  [[nodiscard]] double ut(double x, double y, double t) const { return g(x, y) * dtheta(t); }
  [[nodiscard]] std::array<double, 2> grad(double x, double y, double t) const;
  [[nodiscard]] double lap(double x, double y, double t) const { return lap_g(x, y) * theta(t); }
  [[nodiscard]] double f(double x, double y, double t) const;

  /// Source, initial value and initial velocity for the solver.
  [[nodiscard]] ProblemData data() const;
};

/// Throws std::invalid_argument for alpha <= 1.5 (case 2) or mode numbers < 1
/// (case 3).
[[nodiscard]] ManufacturedCase make_case(CaseId id, const CaseParams& params = {});

[[nodiscard]] CaseId parse_case_id(const std::string& name);
[[nodiscard]] std::string case_name(CaseId id);

struct ErrorBundle {
  double max_W1inf_L2 = 0.0;  // max_n ||e'||_{Linf(I_n; L2)}
  double max_Linf_H1 = 0.0;   // max_n |e|_{Linf(I_n; H1)}
  double L2_H1 = 0.0;         // |e|_{L2(0,T; H1)}
  double H1deriv_L2L2 = 0.0;  // ||e'||_{L2(0,T; L2)}
  double Linf_L2 = 0.0;       // ||e||_{Linf(0,T; L2)}
  double jump_err = 0.0;      // (sum_n ||[e'](t_{n-1})||^2)^{1/2}
};

/// Linf-in-time norms are sampled at 2p+3 equispaced points per interval,
/// L2-in-time norms use Gauss rules of order 2p+3, spatial norms the tensor
/// Gauss rule of the space.
[[nodiscard]] ErrorBundle compute_errors(const SlabSolution& sol, const ManufacturedCase& c);

/// Same norms with the Linf quantities sampled at the given number of
/// equispaced points per interval (0 selects the default 2p+3).
[[nodiscard]] ErrorBundle compute_errors(const SlabSolution& sol, const ManufacturedCase& c,
                                         int linf_samples_per_interval);

/// rate_i = log(e_{i-1}/e_i) / log(h_{i-1}/h_i). Throws std::invalid_argument on
/// non-positive entries, length mismatch or fewer than two entries.
[[nodiscard]] std::vector<double> rate(const std::vector<double>& errors,
                                       const std::vector<double>& params);

/// Least-squares slope of log(errors) against log(params).
[[nodiscard]] double fitted_slope(const std::vector<double>& errors,
                                  const std::vector<double>& params);

}  // namespace c0wave
