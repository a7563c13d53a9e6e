#include "c0wave/spacefem.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace c0wave {

RectMesh square_mesh(double h) {
  if (!(h > 0.0)) throw std::invalid_argument("square_mesh: h must be positive");
  const int n = std::max(1, static_cast<int>(std::lround(2.0 / h)));
  return {-1.0, 1.0, -1.0, 1.0, n, n};
}

SpatialSpace::SpatialSpace(RectMesh mesh, int degree) : mesh_(mesh), degree_(degree) {
  if (degree < 1) throw std::invalid_argument("SpatialSpace: degree must be >= 1");
  if (mesh.nx < 1 || mesh.ny < 1 || !(mesh.x1 > mesh.x0) || !(mesh.y1 > mesh.y0)) {
    throw std::invalid_argument("SpatialSpace: degenerate mesh");
  }
  nodes_x_ = mesh.nx * degree + 1;
  nodes_y_ = mesh.ny * degree + 1;
  dim_ = static_cast<Eigen::Index>(nodes_x_ - 2) * (nodes_y_ - 2);
  assemble();
}

Eigen::Index SpatialSpace::interior_index(int i, int j) const noexcept {
  if (i <= 0 || j <= 0 || i >= nodes_x_ - 1 || j >= nodes_y_ - 1) return -1;
  return static_cast<Eigen::Index>(i - 1) + static_cast<Eigen::Index>(j - 1) * (nodes_x_ - 2);
}

std::array<double, 2> SpatialSpace::node(Eigen::Index k) const {
  if (k < 0 || k >= dim_) throw std::out_of_range("SpatialSpace::node: index out of range");
  const int i = static_cast<int>(k % (nodes_x_ - 2)) + 1;
  const int j = static_cast<int>(k / (nodes_x_ - 2)) + 1;
  return {mesh_.x0 + i * mesh_.hx() / degree_, mesh_.y0 + j * mesh_.hy() / degree_};
}

void SpatialSpace::assemble() {
  const int p = degree_;
  const auto& basis = equispaced_basis(p);
  const auto rule = gauss_legendre(2 * p + 3);
  const int nq1 = static_cast<int>(rule.size());
  const double hx = mesh_.hx();
  const double hy = mesh_.hy();

  // 1D basis tables at the Gauss points.
  std::vector<Vec> v1(nq1), d1(nq1), s1(nq1);
  for (int q = 0; q < nq1; ++q) {
    v1[q] = basis.eval(rule.nodes[q], 0);
    d1[q] = basis.eval(rule.nodes[q], 1);
    s1[q] = basis.eval(rule.nodes[q], 2);
  }

  const Eigen::Index nq = static_cast<Eigen::Index>(mesh_.nx) * mesh_.ny * nq1 * nq1;
  qweights_.resize(nq);
  qx_.resize(nq);
  qy_.resize(nq);

  std::vector<Eigen::Triplet<double>> tv, tdx, tdy, tlap;
  const std::size_t per = static_cast<std::size_t>(nq) * (p + 1) * (p + 1);
  tv.reserve(per);
  tdx.reserve(per);
  tdy.reserve(per);
  tlap.reserve(per);

  const double sx = 2.0 / hx;
  const double sy = 2.0 / hy;
  Eigen::Index row = 0;
  for (int ey = 0; ey < mesh_.ny; ++ey) {
    for (int ex = 0; ex < mesh_.nx; ++ex) {
      const double xl = mesh_.x0 + ex * hx;
      const double yl = mesh_.y0 + ey * hy;
      for (int qy = 0; qy < nq1; ++qy) {
        for (int qx = 0; qx < nq1; ++qx, ++row) {
          qweights_(row) = rule.weights[qx] * rule.weights[qy] * 0.25 * hx * hy;
          qx_(row) = xl + 0.5 * (rule.nodes[qx] + 1.0) * hx;
          qy_(row) = yl + 0.5 * (rule.nodes[qy] + 1.0) * hy;
          for (int b = 0; b <= p; ++b) {
            for (int a = 0; a <= p; ++a) {
              const Eigen::Index col = interior_index(ex * p + a, ey * p + b);
              if (col < 0) continue;
              tv.emplace_back(row, col, v1[qx](a) * v1[qy](b));
              tdx.emplace_back(row, col, sx * d1[qx](a) * v1[qy](b));
              tdy.emplace_back(row, col, sy * v1[qx](a) * d1[qy](b));
              tlap.emplace_back(row, col,
                                sx * sx * s1[qx](a) * v1[qy](b) + sy * sy * v1[qx](a) * s1[qy](b));
            }
          }
        }
      }
    }
  }

  value_map_.resize(nq, dim_);
  dx_map_.resize(nq, dim_);
  dy_map_.resize(nq, dim_);
  laplacian_map_.resize(nq, dim_);
  value_map_.setFromTriplets(tv.begin(), tv.end());
  dx_map_.setFromTriplets(tdx.begin(), tdx.end());
  dy_map_.setFromTriplets(tdy.begin(), tdy.end());
  laplacian_map_.setFromTriplets(tlap.begin(), tlap.end());

  const auto W = qweights_.asDiagonal();
  mass_ = SpMat(value_map_.transpose() * W * value_map_);
  stiffness_ = SpMat(dx_map_.transpose() * W * dx_map_ + dy_map_.transpose() * W * dy_map_);
  mass_.prune(0.0);
  stiffness_.prune(0.0);

  if (dim_ > 0) {
    mass_factor_ = std::make_shared<Eigen::SimplicialLDLT<SpMat>>(mass_);
    stiffness_factor_ = std::make_shared<Eigen::SimplicialLDLT<SpMat>>(stiffness_);
    if (mass_factor_->info() != Eigen::Success) throw SolverError("mass matrix factorization failed");
    if (stiffness_factor_->info() != Eigen::Success) {
      throw SolverError("stiffness matrix factorization failed");
    }
  }
}

SpMat SpatialSpace::full_stiffness() const {
  const int p = degree_;
  const auto& basis = equispaced_basis(p);
  const auto rule = gauss_legendre(2 * p + 3);
  const int nloc = (p + 1) * (p + 1);
  Mat local = Mat::Zero(nloc, nloc);
  const double hx = mesh_.hx();
  const double hy = mesh_.hy();
  for (std::size_t qy = 0; qy < rule.size(); ++qy) {
    for (std::size_t qx = 0; qx < rule.size(); ++qx) {
      const Vec vx = basis.eval(rule.nodes[qx], 0);
      const Vec dx = basis.eval(rule.nodes[qx], 1) * (2.0 / hx);
      const Vec vy = basis.eval(rule.nodes[qy], 0);
      const Vec dy = basis.eval(rule.nodes[qy], 1) * (2.0 / hy);
      Vec gx(nloc), gy(nloc);
      for (int b = 0; b <= p; ++b) {
        for (int a = 0; a <= p; ++a) {
          gx(a + b * (p + 1)) = dx(a) * vy(b);
          gy(a + b * (p + 1)) = vx(a) * dy(b);
        }
      }
      const double w = rule.weights[qx] * rule.weights[qy] * 0.25 * hx * hy;
      local += w * (gx * gx.transpose() + gy * gy.transpose());
    }
  }
  std::vector<Eigen::Triplet<double>> trip;
  for (int ey = 0; ey < mesh_.ny; ++ey) {
    for (int ex = 0; ex < mesh_.nx; ++ex) {
      for (int l1 = 0; l1 < nloc; ++l1) {
        const int g1 = (ex * p + l1 % (p + 1)) + (ey * p + l1 / (p + 1)) * nodes_x_;
        for (int l2 = 0; l2 < nloc; ++l2) {
          const int g2 = (ex * p + l2 % (p + 1)) + (ey * p + l2 / (p + 1)) * nodes_x_;
          trip.emplace_back(g1, g2, local(l1, l2));
        }
      }
    }
  }
  const Eigen::Index n = static_cast<Eigen::Index>(nodes_x_) * nodes_y_;
  SpMat full(n, n);
  full.setFromTriplets(trip.begin(), trip.end());
  return full;
}

Vec SpatialSpace::sample(const SpaceFunction& f) const {
  Vec out(num_qpoints());
  for (Eigen::Index q = 0; q < out.size(); ++q) out(q) = f(qx_(q), qy_(q));
  return out;
}

Vec SpatialSpace::load_from_samples(const Vec& fq) const {
  return value_map_.transpose() * qweights_.cwiseProduct(fq);
}

Vec SpatialSpace::load(const SpaceFunction& f) const { return load_from_samples(sample(f)); }

Vec SpatialSpace::solve_mass(const Vec& b) const {
  if (dim_ == 0) return Vec::Zero(0);
  Vec x = mass_factor_->solve(b);
  if (mass_factor_->info() != Eigen::Success || !x.allFinite()) {
    throw SolverError("mass solve failed");
  }
  return x;
}

Vec SpatialSpace::solve_stiffness(const Vec& b) const {
  if (dim_ == 0) return Vec::Zero(0);
  Vec x = stiffness_factor_->solve(b);
  if (stiffness_factor_->info() != Eigen::Success || !x.allFinite()) {
    throw SolverError("stiffness solve failed");
  }
  return x;
}

Vec SpatialSpace::interpolate(const SpaceFunction& f) const {
  Vec out(dim_);
  for (Eigen::Index k = 0; k < dim_; ++k) {
    const auto xy = node(k);
    out(k) = f(xy[0], xy[1]);
  }
  return out;
}

Vec SpatialSpace::l2_project(const SpaceFunction& f) const { return solve_mass(load(f)); }

Vec SpatialSpace::elliptic_project(const GradientFunction& grad) const {
  Vec gx(num_qpoints()), gy(num_qpoints());
  for (Eigen::Index q = 0; q < gx.size(); ++q) {
    const auto g = grad(qx_(q), qy_(q));
    gx(q) = qweights_(q) * g[0];
    gy(q) = qweights_(q) * g[1];
  }
  const Vec rhs = dx_map_.transpose() * gx + dy_map_.transpose() * gy;
  return solve_stiffness(rhs);
}

double SpatialSpace::local_eval(const Vec& v, double x, double y, int kx, int ky) const {
  const int p = degree_;
  const double hx = mesh_.hx();
  const double hy = mesh_.hy();
  const int ex = std::clamp(static_cast<int>(std::floor((x - mesh_.x0) / hx)), 0, mesh_.nx - 1);
  const int ey = std::clamp(static_cast<int>(std::floor((y - mesh_.y0) / hy)), 0, mesh_.ny - 1);
  const double rx = 2.0 * (x - (mesh_.x0 + ex * hx)) / hx - 1.0;
  const double ry = 2.0 * (y - (mesh_.y0 + ey * hy)) / hy - 1.0;
  const auto& basis = equispaced_basis(p);
  const Vec bx = basis.eval(rx, kx) * std::pow(2.0 / hx, kx);
  const Vec by = basis.eval(ry, ky) * std::pow(2.0 / hy, ky);
  double s = 0.0;
  for (int b = 0; b <= p; ++b) {
    for (int a = 0; a <= p; ++a) {
      const Eigen::Index k = interior_index(ex * p + a, ey * p + b);
      if (k >= 0) s += v(k) * bx(a) * by(b);
    }
  }
  return s;
}

SpaceFunction SpatialSpace::broken_laplacian(const Vec& v) const {
  return [this, v](double x, double y) {
    return local_eval(v, x, y, 2, 0) + local_eval(v, x, y, 0, 2);
  };
}

SpaceFunction SpatialSpace::evaluator(const Vec& v) const {
  return [this, v](double x, double y) { return local_eval(v, x, y, 0, 0); };
}

double SpatialSpace::qnorm(const Vec& values) const {
  return std::sqrt(qweights_.dot(values.cwiseAbs2()));
}

double SpatialSpace::l2_norm(const Vec& v) const { return qnorm(value_map_ * v); }

double SpatialSpace::h1_seminorm(const Vec& v) const {
  return std::sqrt(qweights_.dot((dx_map_ * v).cwiseAbs2()) +
                   qweights_.dot((dy_map_ * v).cwiseAbs2()));
}

double SpatialSpace::laplacian_l2_norm(const Vec& v) const { return qnorm(laplacian_map_ * v); }

double SpatialSpace::function_l2_norm(const SpaceFunction& f) const { return qnorm(sample(f)); }

double SpatialSpace::function_h1_seminorm(const GradientFunction& grad) const {
  double s = 0.0;
  for (Eigen::Index q = 0; q < num_qpoints(); ++q) {
    const auto g = grad(qx_(q), qy_(q));
    s += qweights_(q) * (g[0] * g[0] + g[1] * g[1]);
  }
  return std::sqrt(s);
}

}  // namespace c0wave
