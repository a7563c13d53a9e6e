#include "c0wave/errors.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace c0wave {

namespace {

constexpr double kPi = std::numbers::pi;

void set_bubble(ManufacturedCase& c) {
  c.g = [](double x, double y) { return (1 - x * x) * (1 - y * y); };
  c.grad_g = [](double x, double y) {
    return std::array<double, 2>{-2 * x * (1 - y * y), -2 * y * (1 - x * x)};
  };
  c.lap_g = [](double x, double y) { return -2 * (1 - y * y) - 2 * (1 - x * x); };
}

}  // namespace

std::array<double, 2> ManufacturedCase::grad(double x, double y, double t) const {
  const auto gg = grad_g(x, y);
  const double th = theta(t);
  return {gg[0] * th, gg[1] * th};
}

double ManufacturedCase::f(double x, double y, double t) const {
  return g(x, y) * ddtheta(t) - lap_g(x, y) * theta(t);
}

ProblemData ManufacturedCase::data() const {
  ProblemData d;
  const ManufacturedCase self = *this;
  const double modes_sq = params.mode_n * params.mode_n + params.mode_m * params.mode_m;
  const bool source_free =
      id == CaseId::case3 && std::abs(modes_sq - params.omega * params.omega) <= 1e-12 * modes_sq;
  if (!source_free) d.f = [self](double x, double y, double t) { return self.f(x, y, t); };
  const double th0 = theta(0.0);
  const double dth0 = dtheta(0.0);
  d.u0 = [self, th0](double x, double y) { return self.g(x, y) * th0; };
  d.grad_u0 = [self, th0](double x, double y) {
    const auto gg = self.grad_g(x, y);
    return std::array<double, 2>{gg[0] * th0, gg[1] * th0};
  };
  d.u1 = [self, dth0](double x, double y) { return self.g(x, y) * dth0; };
  return d;
}

ManufacturedCase make_case(CaseId id, const CaseParams& params) {
  ManufacturedCase c;
  c.id = id;
  c.params = params;
  switch (id) {
    case CaseId::case1:
      set_bubble(c);
      c.theta = [](double t) { return std::cos(4 * t); };
      c.dtheta = [](double t) { return -4 * std::sin(4 * t); };
      c.ddtheta = [](double t) { return -16 * std::cos(4 * t); };
      break;
    case CaseId::case2: {
      const double a = params.alpha;
      if (!(a > 1.5)) throw std::invalid_argument("case2 requires alpha > 1.5");
      set_bubble(c);
      c.theta = [a](double t) { return std::pow(t, a); };
      c.dtheta = [a](double t) { return a * std::pow(t, a - 1); };
      c.ddtheta = [a](double t) { return t > 0 ? a * (a - 1) * std::pow(t, a - 2) : 0.0; };
      break;
    }
    case CaseId::case3: {
      if (params.mode_n < 1 || params.mode_m < 1) {
        throw std::invalid_argument("case3 requires integer modes >= 1");
      }
      const double kx = kPi * params.mode_n;
      const double ky = kPi * params.mode_m;
      const double w = kPi * params.omega;
      c.g = [kx, ky](double x, double y) { return std::sin(kx * x) * std::sin(ky * y); };
      c.grad_g = [kx, ky](double x, double y) {
        return std::array<double, 2>{kx * std::cos(kx * x) * std::sin(ky * y),
                                     ky * std::sin(kx * x) * std::cos(ky * y)};
      };
      c.lap_g = [kx, ky](double x, double y) {
        return -(kx * kx + ky * ky) * std::sin(kx * x) * std::sin(ky * y);
      };
      c.theta = [w](double t) { return std::cos(w * t); };
      c.dtheta = [w](double t) { return -w * std::sin(w * t); };
      c.ddtheta = [w](double t) { return -w * w * std::cos(w * t); };
      break;
    }
  }
  return c;
}

CaseId parse_case_id(const std::string& name) {
  if (name == "case1" || name == "1") return CaseId::case1;
  if (name == "case2" || name == "2") return CaseId::case2;
  if (name == "case3" || name == "3") return CaseId::case3;
  throw std::invalid_argument("unknown case '" + name + "'");
}

std::string case_name(CaseId id) {
  switch (id) {
    case CaseId::case1: return "case1";
    case CaseId::case2: return "case2";
    case CaseId::case3: return "case3";
  }
  return "case?";
}

ErrorBundle compute_errors(const SlabSolution& sol, const ManufacturedCase& c) {
  return compute_errors(sol, c, 0);
}

ErrorBundle compute_errors(const SlabSolution& sol, const ManufacturedCase& c,
                           int linf_samples_per_interval) {
  const auto& grid = sol.grid();
  const auto& space = sol.space();
  const SpMat& B = space.value_map();
  const SpMat& Dx = space.dx_map();
  const SpMat& Dy = space.dy_map();

  // Spatial factors of the separable exact solution at the quadrature points.
  const Eigen::Index nq = space.num_qpoints();
  Vec gq(nq), gxq(nq), gyq(nq);
  for (Eigen::Index r = 0; r < nq; ++r) {
    const double x = space.qx()(r);
    const double y = space.qy()(r);
    gq(r) = c.g(x, y);
    const auto gg = c.grad_g(x, y);
    gxq(r) = gg[0];
    gyq(r) = gg[1];
  }
  auto value_err = [&](int n, double t) { return space.qnorm(gq * c.theta(t) - B * sol.eval(n, t)); };
  auto deriv_err = [&](int n, double t) {
    return space.qnorm(gq * c.dtheta(t) - B * sol.eval(n, t, 1));
  };
  auto grad_err = [&](int n, double t) {
    const Vec u = sol.eval(n, t);
    const double th = c.theta(t);
    const double ex = space.qnorm(gxq * th - Dx * u);
    const double ey = space.qnorm(gyq * th - Dy * u);
    return std::sqrt(ex * ex + ey * ey);
  };

  ErrorBundle e;
  double l2h1 = 0.0;
  double h1l2 = 0.0;
  double jumps = 0.0;
  for (int n = 0; n < grid.size(); ++n) {
    const int p = grid.degree(n);
    const Interval iv = grid.interval(n);
    const int samples = linf_samples_per_interval > 0 ? linf_samples_per_interval : 2 * p + 3;
    for (double x : equispaced_points(samples)) {
      const double t = iv.from_reference(x);
      e.max_W1inf_L2 = std::max(e.max_W1inf_L2, deriv_err(n, t));
      e.max_Linf_H1 = std::max(e.max_Linf_H1, grad_err(n, t));
      e.Linf_L2 = std::max(e.Linf_L2, value_err(n, t));
    }
    const auto rule = gauss_legendre(2 * p + 3);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const double t = iv.from_reference(rule.nodes[q]);
      const double w = 0.5 * iv.length() * rule.weights[q];
      l2h1 += w * std::pow(grad_err(n, t), 2);
      h1l2 += w * std::pow(deriv_err(n, t), 2);
    }
    // The exact solution is C1 in time with u'(0) = u1, so [e'] = -[U'].
    jumps += std::pow(space.l2_norm(jump_at(sol, n)), 2);
  }
  e.L2_H1 = std::sqrt(l2h1);
  e.H1deriv_L2L2 = std::sqrt(h1l2);
  e.jump_err = std::sqrt(jumps);
  return e;
}

std::vector<double> rate(const std::vector<double>& errors, const std::vector<double>& params) {
  if (errors.size() != params.size() || errors.size() < 2) {
    throw std::invalid_argument("rate: need two or more matching entries");
  }
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!(errors[i] > 0.0) || !(params[i] > 0.0)) {
      throw std::invalid_argument("rate: entries must be positive");
    }
  }
  std::vector<double> out;
  for (std::size_t i = 1; i < errors.size(); ++i) {
    out.push_back(std::log(errors[i - 1] / errors[i]) / std::log(params[i - 1] / params[i]));
  }
  return out;
}

double fitted_slope(const std::vector<double>& errors, const std::vector<double>& params) {
  if (errors.size() != params.size() || errors.size() < 2) {
    throw std::invalid_argument("fitted_slope: need two or more matching entries");
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(errors.size());
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!(errors[i] > 0.0) || !(params[i] > 0.0)) {
      throw std::invalid_argument("fitted_slope: entries must be positive");
    }
    const double x = std::log(params[i]);
    const double y = std::log(errors[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace c0wave
