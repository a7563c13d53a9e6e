#include "c0wave/adaptive.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace c0wave {

std::vector<int> doerfler_mark(const std::vector<double>& local, double theta) {
  if (!(theta > 0.0 && theta <= 1.0)) throw std::invalid_argument("doerfler_mark: theta must lie in (0, 1]");
  double total = 0.0;
  for (double v : local) {
    if (!(v >= 0.0)) throw std::invalid_argument("doerfler_mark: indicators must be nonnegative");
    total += v;
  }
  std::vector<int> order(local.size());
  std::iota(order.begin(), order.end(), 0);
  if (total == 0.0) return {};
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return local[a] > local[b]; });
  std::vector<int> marked;
  double sum = 0.0;
  for (int i : order) {
    if (local[i] == 0.0) break;
    marked.push_back(i);
    sum += local[i];
    if (sum >= theta * total) break;
  }
  std::sort(marked.begin(), marked.end());
  return marked;
}

TimeGrid bisect(const TimeGrid& grid, const std::vector<int>& marked) {
  std::vector<char> split(grid.size(), 0);
  for (int n : marked) {
    if (n < 0 || n >= grid.size()) throw std::out_of_range("bisect: interval index out of range");
    split[n] = 1;
  }
  std::vector<double> nodes{grid.nodes().front()};
  std::vector<int> degrees;
  for (int n = 0; n < grid.size(); ++n) {
    const double a = grid.nodes()[n];
    const double b = grid.nodes()[n + 1];
    if (split[n]) {
      nodes.push_back(0.5 * (a + b));
      degrees.push_back(grid.degree(n));
    }
    nodes.push_back(b);
    degrees.push_back(grid.degree(n));
  }
  return TimeGrid(std::move(nodes), std::move(degrees));
}

long long degrees_of_freedom(const TimeGrid& grid, const SpatialSpace& space) {
  long long s = 0;
  for (int p : grid.degrees()) s += p;
  return s * space.dim();
}

AdaptiveState run_adaptive(const ProblemData& data, std::shared_ptr<const SpatialSpace> space,
                           const TimeGrid& initial, const AdaptiveOptions& options,
                           const ManufacturedCase* exact) {
  if (!(options.theta > 0.0 && options.theta <= 1.0)) {
    throw std::invalid_argument("run_adaptive: theta must lie in (0, 1]");
  }
  if (options.max_iters < 1) throw std::invalid_argument("run_adaptive: max_iters must be positive");
  AdaptiveState state;
  state.grid = initial;
  for (int iter = 0; iter < options.max_iters; ++iter) {
    AdaptiveStep step;
    step.grid = state.grid;
    step.dofs = degrees_of_freedom(state.grid, *space);
    try {
      const SlabSolution sol = march(data, space, state.grid);
      step.report = estimate(sol, data.f, false, EstimatorMode::localized);
      step.global = estimate(sol, data.f, false, EstimatorMode::global);
      step.stability = stability_check(sol, data);
      if (exact) step.errors = compute_errors(sol, *exact);
    } catch (const SolverError& e) {
      state.failure = e.what();
      return state;
    }
    const bool done = step.report.eta <= options.eta_tol || iter + 1 == options.max_iters;
    if (!done) step.marked = doerfler_mark(step.report.local, options.theta);
    const bool stop = done || step.marked.empty();
    if (!stop) state.grid = bisect(state.grid, step.marked);
    state.history.push_back(std::move(step));
    if (stop) break;
  }
  return state;
}

}  // namespace c0wave
