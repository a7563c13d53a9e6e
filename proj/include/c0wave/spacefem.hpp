#pragma once

// Tensor-product Q_p Lagrange elements on a uniform rectangular mesh with
// homogeneous Dirichlet conditions imposed by eliminating boundary nodes.

#include "c0wave/timebasis.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <array>
#include <functional>
#include <memory>
#include <stdexcept>

namespace c0wave {

using SpMat = Eigen::SparseMatrix<double>;
using SpaceFunction = std::function<double(double, double)>;
using GradientFunction = std::function<std::array<double, 2>(double, double)>;

struct RectMesh {
  double x0 = -1.0;
  double x1 = 1.0;
  double y0 = -1.0;
  double y1 = 1.0;
  int nx = 1;
  int ny = 1;

  [[nodiscard]] double hx() const noexcept { return (x1 - x0) / nx; }
  [[nodiscard]] double hy() const noexcept { return (y1 - y0) / ny; }
};

/// Uniform mesh of (-1,1)^2 with element size close to h.
[[nodiscard]] RectMesh square_mesh(double h);

class SolverError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class SpatialSpace {
public:
  /// Throws std::invalid_argument for degree < 1 or a degenerate mesh.
  SpatialSpace(RectMesh mesh, int degree);

  [[nodiscard]] const RectMesh& mesh() const noexcept { return mesh_; }
  [[nodiscard]] int degree() const noexcept { return degree_; }
  /// Number of interior (free) nodes.
  [[nodiscard]] Eigen::Index dim() const noexcept { return dim_; }
  [[nodiscard]] bool empty() const noexcept { return dim_ == 0; }

  /// Coordinates of interior node k.
  [[nodiscard]] std::array<double, 2> node(Eigen::Index k) const;

  [[nodiscard]] const SpMat& mass() const noexcept { return mass_; }
  [[nodiscard]] const SpMat& stiffness() const noexcept { return stiffness_; }
  /// Stiffness matrix over all nodes, boundary included.
  [[nodiscard]] SpMat full_stiffness() const;

  // Quadrature-point representation. Rows index tensor Gauss points of order
  // 2p+3 in every element, columns index interior nodes.
  [[nodiscard]] Eigen::Index num_qpoints() const noexcept { return qweights_.size(); }
  [[nodiscard]] const Vec& qweights() const noexcept { return qweights_; }
  [[nodiscard]] const Vec& qx() const noexcept { return qx_; }
  [[nodiscard]] const Vec& qy() const noexcept { return qy_; }
  [[nodiscard]] const SpMat& value_map() const noexcept { return value_map_; }
  [[nodiscard]] const SpMat& dx_map() const noexcept { return dx_map_; }
  [[nodiscard]] const SpMat& dy_map() const noexcept { return dy_map_; }
  /// Elementwise Laplacian at the quadrature points.
  [[nodiscard]] const SpMat& laplacian_map() const noexcept { return laplacian_map_; }

  [[nodiscard]] Vec sample(const SpaceFunction& f) const;
  /// Integral of f times each basis function.
  [[nodiscard]] Vec load(const SpaceFunction& f) const;
  [[nodiscard]] Vec load_from_samples(const Vec& fq) const;

  [[nodiscard]] Vec solve_mass(const Vec& b) const;
  [[nodiscard]] Vec solve_stiffness(const Vec& b) const;

  [[nodiscard]] Vec interpolate(const SpaceFunction& f) const;
  [[nodiscard]] Vec l2_project(const SpaceFunction& f) const;
  [[nodiscard]] Vec elliptic_project(const GradientFunction& grad) const;

  /// Evaluator of the elementwise Laplacian of the FE function v.
  [[nodiscard]] SpaceFunction broken_laplacian(const Vec& v) const;
  [[nodiscard]] SpaceFunction evaluator(const Vec& v) const;

  [[nodiscard]] double l2_norm(const Vec& v) const;
  [[nodiscard]] double h1_seminorm(const Vec& v) const;
  [[nodiscard]] double laplacian_l2_norm(const Vec& v) const;
  /// Weighted L2 norm of values given at the quadrature points.
  [[nodiscard]] double qnorm(const Vec& values) const;

  [[nodiscard]] double function_l2_norm(const SpaceFunction& f) const;
  [[nodiscard]] double function_h1_seminorm(const GradientFunction& grad) const;

private:
  void assemble();
  [[nodiscard]] Eigen::Index interior_index(int i, int j) const noexcept;
  [[nodiscard]] double local_eval(const Vec& v, double x, double y, int kx, int ky) const;

  RectMesh mesh_;
  int degree_;
  int nodes_x_;
  int nodes_y_;
  Eigen::Index dim_ = 0;

  SpMat mass_;
  SpMat stiffness_;
  Vec qweights_, qx_, qy_;
  SpMat value_map_, dx_map_, dy_map_, laplacian_map_;

  std::shared_ptr<Eigen::SimplicialLDLT<SpMat>> mass_factor_;
  std::shared_ptr<Eigen::SimplicialLDLT<SpMat>> stiffness_factor_;
};

}  // namespace c0wave
