#pragma once

// Adaptive time refinement: solve, estimate, mark and bisect.

#include "c0wave/errors.hpp"
#include "c0wave/estimator.hpp"

#include <optional>
#include <string>
#include <vector>

namespace c0wave {

/// Indices of the largest indicators, taken in descending order with ties to
/// the smaller index, until their sum reaches theta times the total. Empty
/// when every indicator is zero. Throws std::invalid_argument unless
/// 0 < theta <= 1 and all indicators are nonnegative.
[[nodiscard]] std::vector<int> doerfler_mark(const std::vector<double>& local, double theta);

/// Splits every marked interval into two halves of the same degree.
/// Throws std::out_of_range for indices outside the grid.
[[nodiscard]] TimeGrid bisect(const TimeGrid& grid, const std::vector<int>& marked);

/// sum_n p_n times the number of interior spatial degrees of freedom.
[[nodiscard]] long long degrees_of_freedom(const TimeGrid& grid, const SpatialSpace& space);

struct AdaptiveOptions {
  double theta = 0.5;
  int max_iters = 25;
  double eta_tol = 0.0;
};

struct AdaptiveStep {
  TimeGrid grid;
  std::optional<ErrorBundle> errors;  // present when the exact solution is known
  EstimatorReport report;             // localized, drives the marking
  EstimatorReport global;             // m = N, used for effectivity
  StabilityReport stability;
  std::vector<int> marked;
  long long dofs = 0;
};

struct AdaptiveState {
  TimeGrid grid;
  std::vector<AdaptiveStep> history;
  std::string failure;  // nonempty when a solve aborted the loop

  [[nodiscard]] bool failed() const noexcept { return !failure.empty(); }
};

/// Runs the loop from `initial` until eta <= eta_tol, max_iters solves, or an
/// empty marking. Oscillation terms are left out of the marking. A solver
/// failure stops the loop and is recorded with the history kept.
[[nodiscard]] AdaptiveState run_adaptive(const ProblemData& data,
                                         std::shared_ptr<const SpatialSpace> space,
                                         const TimeGrid& initial, const AdaptiveOptions& options,
                                         const ManufacturedCase* exact = nullptr);

}  // namespace c0wave
