#pragma once

// Slab-by-slab solver for the C0-in-time Petrov-Galerkin discretization of
// u'' - Laplace(u) = f with homogeneous Dirichlet data.

#include "c0wave/spacefem.hpp"
#include "c0wave/timebasis.hpp"

#include <Eigen/SparseLU>

#include <functional>
#include <memory>
#include <vector>

namespace c0wave {

using SpaceTimeFunction = std::function<double(double, double, double)>;

class TimeGrid {
public:
  TimeGrid() = default;
  /// Throws std::invalid_argument unless nodes increase strictly from 0 and
  /// every degree is at least 2.
  TimeGrid(std::vector<double> nodes, std::vector<int> degrees);

  [[nodiscard]] static TimeGrid uniform(double T, int intervals, int degree);

  [[nodiscard]] int size() const noexcept { return static_cast<int>(degrees_.size()); }
  [[nodiscard]] const std::vector<double>& nodes() const noexcept { return nodes_; }
  [[nodiscard]] const std::vector<int>& degrees() const noexcept { return degrees_; }
  [[nodiscard]] int degree(int n) const { return degrees_.at(n); }
  [[nodiscard]] Interval interval(int n) const;
  [[nodiscard]] double tau(int n) const { return nodes_.at(n + 1) - nodes_.at(n); }
  [[nodiscard]] double final_time() const { return nodes_.back(); }

private:
  std::vector<double> nodes_;
  std::vector<int> degrees_;
};

struct ProblemData {
  SpaceTimeFunction f;  // empty means f = 0
  SpaceFunction u0;
  GradientFunction grad_u0;
  SpaceFunction u1;
};

/// Discrete initial data: elliptic projection of u0 and L2 projection of u1.
struct InitialData {
  Vec u0h;
  Vec u1h;
};
[[nodiscard]] InitialData discretize_initial(const ProblemData& data, const SpatialSpace& space);

/// Discrete solution. Interval n (0-based) carries a (p_n+1) x d block of
/// values at the p_n+1 equispaced time nodes of I_n, the first at its left end.
class SlabSolution {
public:
  SlabSolution(TimeGrid grid, std::shared_ptr<const SpatialSpace> space, std::vector<Mat> blocks,
               Vec u0h, Vec u1h);

  [[nodiscard]] const TimeGrid& grid() const noexcept { return grid_; }
  [[nodiscard]] const SpatialSpace& space() const noexcept { return *space_; }
  [[nodiscard]] std::shared_ptr<const SpatialSpace> space_ptr() const noexcept { return space_; }
  [[nodiscard]] const std::vector<Mat>& blocks() const noexcept { return blocks_; }
  [[nodiscard]] std::vector<Mat>& mutable_blocks() noexcept { return blocks_; }
  [[nodiscard]] const Vec& u0h() const noexcept { return u0h_; }
  [[nodiscard]] const Vec& u1h() const noexcept { return u1h_; }

  /// Modal form of U on interval n.
  [[nodiscard]] VectorTimePolynomial slab(int n) const;
  /// k-th time derivative of U restricted to I_n, evaluated at t.
  [[nodiscard]] Vec eval(int n, double t, int k = 0) const;
  /// (U^+)'(t_n), the derivative at the left end of interval n.
  [[nodiscard]] Vec right_limit_derivative(int n) const;
  /// (U^-)'(t_n); equals u1h for n = 0.
  [[nodiscard]] Vec left_limit_derivative(int n) const;

private:
  TimeGrid grid_;
  std::shared_ptr<const SpatialSpace> space_;
  std::vector<Mat> blocks_;
  Vec u0h_;
  Vec u1h_;
};

/// [U'](t_n) = (U^+)'(t_n) - (U^-)'(t_n) at the left end of interval n.
/// Throws std::out_of_range for n outside 0..N-1.
[[nodiscard]] Vec jump_at(const SlabSolution& sol, int n);

/// Reference-interval time matrices of one slab: the system uses
/// A = (2/tau) a_hat and B = (tau/2) b_hat, each p x (p+1) (test i, trial j).
struct SlabTimeMatrices {
  Mat a_hat;
  Mat b_hat;
};
[[nodiscard]] const SlabTimeMatrices& slab_time_matrices(int p);

struct SlabSystem {
  SpMat matrix;
  Vec rhs;
};

/// Assembles the square p*d system of interval n. Unknown j*d + k is the
/// value at time node j+1 of spatial node k.
[[nodiscard]] SlabSystem assemble_slab(int n, const Vec& prev_value, const Vec& prev_deriv,
                                       const ProblemData& data, const SpatialSpace& space,
                                       const TimeGrid& grid);

class SlabError : public SolverError {
public:
  SlabError(int slab, const std::string& what);
  [[nodiscard]] int slab() const noexcept { return slab_; }

private:
  int slab_;
};

/// Marches over all slabs. Factorizations are reused across slabs sharing
/// (p_n, tau_n). Throws SlabError naming the failing slab.
[[nodiscard]] SlabSolution march(const ProblemData& data, std::shared_ptr<const SpatialSpace> space,
                                 const TimeGrid& grid);

struct StabilityReport {
  double lhs = 0.0;
  double rhs = 0.0;
  int m = 0;
  bool satisfied = true;
};

/// Both sides of the discrete stability estimate, with the initial data
/// taken as the discrete u0h, u1h.
[[nodiscard]] StabilityReport stability_check(const SlabSolution& sol, const ProblemData& data);

/// Sampling nodes for L-infinity-in-time quantities on [-1,1]: 2p+3
/// equispaced points including both endpoints.
[[nodiscard]] std::vector<double> linf_sample_points(int p);

}  // namespace c0wave
