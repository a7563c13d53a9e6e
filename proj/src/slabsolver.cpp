#include "c0wave/slabsolver.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>

namespace c0wave {

TimeGrid::TimeGrid(std::vector<double> nodes, std::vector<int> degrees)
    : nodes_(std::move(nodes)), degrees_(std::move(degrees)) {
  if (degrees_.empty() || nodes_.size() != degrees_.size() + 1) {
    throw std::invalid_argument("TimeGrid: need N >= 1 intervals and N+1 nodes");
  }
  if (nodes_.front() != 0.0) throw std::invalid_argument("TimeGrid: first node must be 0");
  for (std::size_t i = 1; i < nodes_.size(); ++i) {
    if (!(nodes_[i] > nodes_[i - 1])) {
      throw std::invalid_argument("TimeGrid: nodes must increase strictly");
    }
  }
  for (int p : degrees_) {
    if (p < 2) throw std::invalid_argument("TimeGrid: every degree must be >= 2");
  }
}

TimeGrid TimeGrid::uniform(double T, int intervals, int degree) {
  if (intervals < 1 || !(T > 0.0)) throw std::invalid_argument("TimeGrid::uniform: bad arguments");
  std::vector<double> nodes(intervals + 1);
  for (int i = 0; i <= intervals; ++i) nodes[i] = T * i / intervals;
  nodes.back() = T;
  return {std::move(nodes), std::vector<int>(intervals, degree)};
}

Interval TimeGrid::interval(int n) const { return {nodes_.at(n), nodes_.at(n + 1)}; }

InitialData discretize_initial(const ProblemData& data, const SpatialSpace& space) {
  InitialData init;
  init.u0h = data.grad_u0 ? space.elliptic_project(data.grad_u0) : Vec(Vec::Zero(space.dim()));
  init.u1h = data.u1 ? space.l2_project(data.u1) : Vec(Vec::Zero(space.dim()));
  return init;
}

SlabSolution::SlabSolution(TimeGrid grid, std::shared_ptr<const SpatialSpace> space,
                           std::vector<Mat> blocks, Vec u0h, Vec u1h)
    : grid_(std::move(grid)),
      space_(std::move(space)),
      blocks_(std::move(blocks)),
      u0h_(std::move(u0h)),
      u1h_(std::move(u1h)) {
  if (static_cast<int>(blocks_.size()) != grid_.size()) {
    throw std::invalid_argument("SlabSolution: one block per interval required");
  }
  for (int n = 0; n < grid_.size(); ++n) {
    if (blocks_[n].rows() != grid_.degree(n) + 1 || blocks_[n].cols() != space_->dim()) {
      throw std::invalid_argument("SlabSolution: block " + std::to_string(n) + " has wrong shape");
    }
  }
}

VectorTimePolynomial SlabSolution::slab(int n) const {
  const auto& basis = equispaced_basis(grid_.degree(n));
  return {grid_.interval(n), basis.nodal_to_modal() * blocks_.at(n)};
}

Vec SlabSolution::eval(int n, double t, int k) const {
  const Interval iv = grid_.interval(n);
  const auto& basis = equispaced_basis(grid_.degree(n));
  const Vec phi = basis.eval(iv.to_reference(t), k) * std::pow(2.0 / iv.length(), k);
  return blocks_.at(n).transpose() * phi;
}

Vec SlabSolution::right_limit_derivative(int n) const {
  return eval(n, grid_.nodes().at(n), 1);
}

Vec SlabSolution::left_limit_derivative(int n) const {
  if (n == 0) return u1h_;
  return eval(n - 1, grid_.nodes().at(n), 1);
}

Vec jump_at(const SlabSolution& sol, int n) {
  if (n < 0 || n >= sol.grid().size()) throw std::out_of_range("jump_at: interval index out of range");
  return sol.right_limit_derivative(n) - sol.left_limit_derivative(n);
}

const SlabTimeMatrices& slab_time_matrices(int p) {
  if (p < 2) throw std::invalid_argument("slab_time_matrices: degree must be >= 2");
  static std::mutex mutex;
  static std::map<int, SlabTimeMatrices> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(p);
  if (it != cache.end()) return it->second;

  const auto& basis = equispaced_basis(p);
  const auto rule = gauss_legendre(2 * p + 3);
  Mat a = Mat::Zero(p, p + 1);
  Mat b = Mat::Zero(p, p + 1);
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const double x = rule.nodes[q];
    const double w = rule.weights[q];
    const Vec leg = legendre_table(p - 1, x).value;
    const Vec phi = basis.eval(x, 0);
    const Vec phi2 = basis.eval(x, 2);
    a += w * leg * phi2.transpose();
    b += w * leg * phi.transpose();
  }
  const Vec dphi_left = basis.eval(-1.0, 1);
  for (int i = 0; i < p; ++i) {
    const double sign = (i % 2 == 0) ? 1.0 : -1.0;
    a.row(i) += sign * dphi_left.transpose();
  }
  return cache.emplace(p, SlabTimeMatrices{a, b}).first->second;
}

namespace {

SpMat slab_matrix(int p, double tau, const SpatialSpace& space) {
  const auto& tm = slab_time_matrices(p);
  const Mat A = tm.a_hat * (2.0 / tau);
  const Mat B = tm.b_hat * (0.5 * tau);
  const Eigen::Index d = space.dim();
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(p * p) *
               (space.mass().nonZeros() + space.stiffness().nonZeros()));
  auto add = [&](const SpMat& s, const Mat& coef) {
    for (int k = 0; k < s.outerSize(); ++k) {
      for (SpMat::InnerIterator it(s, k); it; ++it) {
        for (int i = 0; i < p; ++i) {
          for (int j = 1; j <= p; ++j) {
            const double c = coef(i, j);
            if (c != 0.0) trip.emplace_back(i * d + it.row(), (j - 1) * d + it.col(), c * it.value());
          }
        }
      }
    }
  };
  add(space.mass(), A);
  add(space.stiffness(), B);
  SpMat mat(p * d, p * d);
  mat.setFromTriplets(trip.begin(), trip.end());
  mat.makeCompressed();
  return mat;
}

Vec slab_rhs(int n, const Vec& prev_value, const Vec& prev_deriv, const ProblemData& data,
             const SpatialSpace& space, const TimeGrid& grid) {
  const int p = grid.degree(n);
  const Interval iv = grid.interval(n);
  const double tau = iv.length();
  const auto& tm = slab_time_matrices(p);
  const Eigen::Index d = space.dim();
  Vec rhs = Vec::Zero(p * d);
  if (d == 0) return rhs;

  if (data.f) {
    const auto rule = data_rule(n, 2 * p + 3);
    const Vec& qx = space.qx();
    const Vec& qy = space.qy();
    Vec fq(space.num_qpoints());
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const double t = iv.from_reference(rule.nodes[q]);
      for (Eigen::Index r = 0; r < fq.size(); ++r) fq(r) = data.f(qx(r), qy(r), t);
      const Vec load = space.load_from_samples(fq);
      const Vec leg = legendre_table(p - 1, rule.nodes[q]).value;
      for (int i = 0; i < p; ++i) rhs.segment(i * d, d) += (rule.weights[q] * 0.5 * tau * leg(i)) * load;
    }
  }

  const Vec m_deriv = space.mass() * prev_deriv;
  const Vec m_value = space.mass() * prev_value;
  const Vec k_value = space.stiffness() * prev_value;
  for (int i = 0; i < p; ++i) {
    const double sign = (i % 2 == 0) ? 1.0 : -1.0;
    const double a0 = tm.a_hat(i, 0) * 2.0 / tau;
    const double b0 = tm.b_hat(i, 0) * 0.5 * tau;
    rhs.segment(i * d, d) += sign * m_deriv - a0 * m_value - b0 * k_value;
  }
  return rhs;
}

}  // namespace

SlabSystem assemble_slab(int n, const Vec& prev_value, const Vec& prev_deriv,
                         const ProblemData& data, const SpatialSpace& space, const TimeGrid& grid) {
  const int p = grid.degree(n);
  return {slab_matrix(p, grid.tau(n), space), slab_rhs(n, prev_value, prev_deriv, data, space, grid)};
}

SlabError::SlabError(int slab, const std::string& what)
    : SolverError("slab " + std::to_string(slab) + ": " + what), slab_(slab) {}

SlabSolution march(const ProblemData& data, std::shared_ptr<const SpatialSpace> space,
                   const TimeGrid& grid) {
  const SpatialSpace& sp = *space;
  const Eigen::Index d = sp.dim();
  const InitialData init = discretize_initial(data, sp);

  struct Factor {
    int p;
    double tau;
    std::unique_ptr<Eigen::SparseLU<SpMat>> lu;
  };
  std::vector<Factor> factors;

  std::vector<Mat> blocks;
  blocks.reserve(grid.size());
  Vec value = init.u0h;
  Vec deriv = init.u1h;
  for (int n = 0; n < grid.size(); ++n) {
    const int p = grid.degree(n);
    const double tau = grid.tau(n);
    Mat block(p + 1, d);
    block.row(0) = value.transpose();
    if (d > 0) {
      Eigen::SparseLU<SpMat>* lu = nullptr;
      for (auto& f : factors) {
        if (f.p == p && std::abs(f.tau - tau) <= 1e-12 * tau) lu = f.lu.get();
      }
      if (lu == nullptr) {
        auto fresh = std::make_unique<Eigen::SparseLU<SpMat>>();
        fresh->compute(slab_matrix(p, tau, sp));
        if (fresh->info() != Eigen::Success) throw SlabError(n, "factorization failed");
        lu = fresh.get();
        factors.push_back({p, tau, std::move(fresh)});
      }
      const Vec x = lu->solve(slab_rhs(n, value, deriv, data, sp, grid));
      if (lu->info() != Eigen::Success || !x.allFinite()) throw SlabError(n, "solve failed");
      for (int j = 1; j <= p; ++j) block.row(j) = x.segment((j - 1) * d, d).transpose();
    }
    const auto& basis = equispaced_basis(p);
    value = block.row(p).transpose();
    deriv = block.transpose() * basis.eval(1.0, 1) * (2.0 / tau);
    blocks.push_back(std::move(block));
  }
  return {grid, std::move(space), std::move(blocks), init.u0h, init.u1h};
}

std::vector<double> linf_sample_points(int p) { return equispaced_points(2 * p + 3); }

StabilityReport stability_check(const SlabSolution& sol, const ProblemData& data) {
  const auto& grid = sol.grid();
  const auto& space = sol.space();
  const int N = grid.size();
  StabilityReport rep;
  if (N == 0) return rep;

  double best = -1.0;
  for (int n = 0; n < N; ++n) {
    const Interval iv = grid.interval(n);
    double vmax = 0.0;
    double gmax = 0.0;
    for (double x : linf_sample_points(grid.degree(n))) {
      const double t = iv.from_reference(x);
      vmax = std::max(vmax, std::pow(space.l2_norm(sol.eval(n, t, 1)), 2));
      gmax = std::max(gmax, std::pow(space.h1_seminorm(sol.eval(n, t, 0)), 2));
    }
    if (vmax + gmax > best) {
      best = vmax + gmax;
      rep.m = n;
    }
  }
  const double mu = mu_n(grid.degree(rep.m));
  double jumps = 0.0;
  for (int n = 0; n <= rep.m; ++n) jumps += std::pow(space.l2_norm(jump_at(sol, n)), 2);
  rep.lhs = mu * best + 0.25 * jumps;

  double f_sq = 0.0;
  if (data.f) {
    Vec fq(space.num_qpoints());
    for (int n = 0; n <= rep.m; ++n) {
      const Interval iv = grid.interval(n);
      const auto rule = data_rule(n, 2 * grid.degree(n) + 3);
      for (std::size_t q = 0; q < rule.size(); ++q) {
        const double t = iv.from_reference(rule.nodes[q]);
        for (Eigen::Index r = 0; r < fq.size(); ++r) fq(r) = data.f(space.qx()(r), space.qy()(r), t);
        f_sq += 0.5 * iv.length() * rule.weights[q] * std::pow(space.qnorm(fq), 2);
      }
    }
  }
  const double t_m = grid.nodes()[rep.m + 1];
  rep.rhs = 0.5 * (std::pow(space.h1_seminorm(sol.u0h()), 2) + std::pow(space.l2_norm(sol.u1h()), 2)) +
            t_m / mu * f_sq;
  rep.satisfied = rep.lhs <= rep.rhs * (1.0 + 1e-9);
  return rep;
}

}  // namespace c0wave
