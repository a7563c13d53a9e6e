#pragma once

// Explicit a posteriori estimator for the Linf(L2) error of the discrete
// solution, its data oscillation and the localized indicators.

#include "c0wave/slabsolver.hpp"

#include <vector>

namespace c0wave {

enum class EstimatorMode {
  global,     // m = N
  localized,  // m = argmax of the eta1 terms, first branch up to m, zero beyond
};

struct EstimatorReport {
  EstimatorMode mode = EstimatorMode::global;
  int m = 0;  // 0-based interval index
  double eta1 = 0.0;
  std::vector<double> eta1_n;  // tau_n (c1 c2)^{1/2} ||[U'](t_{n-1})||
  std::vector<double> eta2_n;
  std::vector<double> osc_n;
  double eta2 = 0.0;
  double osc = 0.0;
  double eta = 0.0;  // eta1 + eta2
  std::vector<double> local;
  bool include_osc = false;
  /// Largest relative change of an Linf-in-time integral when its Gauss rule
  /// is raised from order 2p+3 to 4p+6.
  double l1_quadrature_drift = 0.0;

  /// eta, plus osc when include_osc is set.
  [[nodiscard]] double total() const noexcept { return include_osc ? eta + osc : eta; }
};

struct Eta1Result {
  double value = 0.0;
  int argmax = 0;
  std::vector<double> terms;
};

/// Maximum of the weighted jump norms; ties go to the smallest index.
[[nodiscard]] Eta1Result eta1(const SlabSolution& sol);

enum class Eta2Form {
  two_branch,    // first branch for n < m, second for n = m
  first_branch,  // first branch for every n <= m, as in the localized loop
};

/// eta_{2,n} for n = 0..m (0-based).
/// `l1_order` > 0 overrides the Gauss order 2p+3 of the L1-in-time integrals.
/// Throws std::out_of_range for m outside 0..N-1.
[[nodiscard]] std::vector<double> eta2_terms(const SlabSolution& sol, int m, int l1_order = 0,
                                             Eta2Form form = Eta2Form::two_branch);

/// osc_n for n = 0..m with the temporal projection of f computed per spatial
/// quadrature point from the samples of the same Gauss rule.
[[nodiscard]] std::vector<double> osc_terms(const SpaceTimeFunction& f, const TimeGrid& grid,
                                            const SpatialSpace& space, int m, int l1_order = 0);

[[nodiscard]] EstimatorReport estimate(const SlabSolution& sol, const SpaceTimeFunction& f,
                                       bool include_osc,
                                       EstimatorMode mode = EstimatorMode::global);

/// eta / err. Throws std::domain_error when err is not a positive normal number.
[[nodiscard]] double effectivity(double eta, double err);

}  // namespace c0wave
