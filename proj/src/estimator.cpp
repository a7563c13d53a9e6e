#include "c0wave/estimator.hpp"

#include <cfloat>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace c0wave {

namespace {

constexpr double kPi = std::numbers::pi;

// Integral over the reference interval of |L_p| with the Gauss rule of `order`.
double abs_legendre_integral(int p, int order) {
  const auto rule = gauss_legendre(order);
  double s = 0.0;
  for (std::size_t q = 0; q < rule.size(); ++q) s += rule.weights[q] * std::abs(legendre_eval(p, rule.nodes[q]));
  return s;
}

// ||Laplace(U - Pi0 U)||_{L1(I_n; L2)}. The defect is the top Legendre mode.
double defect_l1(const SlabSolution& sol, int n, int order) {
  const int p = sol.grid().degree(n);
  const Vec top = sol.slab(n).modes().row(p).transpose();
  return 0.5 * sol.grid().tau(n) * abs_legendre_integral(p, order) *
         sol.space().laplacian_l2_norm(top);
}

int default_order(int p) { return 2 * p + 3; }

}  // namespace

Eta1Result eta1(const SlabSolution& sol) {
  const auto& grid = sol.grid();
  Eta1Result r;
  r.terms.resize(grid.size());
  r.value = -1.0;
  for (int n = 0; n < grid.size(); ++n) {
    const int p = grid.degree(n);
    const double c1c2 = std::sqrt(c1_squared(p) * c2_squared(p));
    r.terms[n] = grid.tau(n) * std::sqrt(c1c2) * sol.space().l2_norm(jump_at(sol, n));
    if (r.terms[n] > r.value) {
      r.value = r.terms[n];
      r.argmax = n;
    }
  }
  return r;
}

std::vector<double> eta2_terms(const SlabSolution& sol, int m, int l1_order, Eta2Form form) {
  const auto& grid = sol.grid();
  if (m < 0 || m >= grid.size()) throw std::out_of_range("eta2_terms: m out of range");
  const double t_m = grid.nodes()[m + 1];
  std::vector<double> out(m + 1, 0.0);
  for (int n = 0; n <= m; ++n) {
    const int p = grid.degree(n);
    const double tau = grid.tau(n);
    const double l1 = defect_l1(sol, n, l1_order > 0 ? l1_order : default_order(p));
    const double jump_lap = sol.space().laplacian_l2_norm(jump_at(sol, n));
    const double c2 = std::sqrt(c2_squared(p));
    if (n < m || form == Eta2Form::first_branch) {
      const double c4 = c4_constant(p, t_m, grid.nodes()[n], tau);
      out[n] = 2.0 / kPi * (tau * c3_constant(p - 1) * l1 + tau * tau * tau * c2 * c4 * jump_lap);
    } else {
      out[n] = 2.0 * (tau * l1 + c2 * tau * tau * tau * jump_lap);
    }
  }
  return out;
}

std::vector<double> osc_terms(const SpaceTimeFunction& f, const TimeGrid& grid,
                              const SpatialSpace& space, int m, int l1_order) {
  if (m < 0 || m >= grid.size()) throw std::out_of_range("osc_terms: m out of range");
  std::vector<double> out(m + 1, 0.0);
  if (!f) return out;
  const Eigen::Index nq = space.num_qpoints();
  for (int n = 0; n <= m; ++n) {
    const int p = grid.degree(n);
    const Interval iv = grid.interval(n);
    const auto rule = data_rule(n, l1_order > 0 ? l1_order : default_order(p));
    const int nt = static_cast<int>(rule.size());
    Mat samples(nt, nq);
    Mat leg(nt, p);
    for (int q = 0; q < nt; ++q) {
      const double t = iv.from_reference(rule.nodes[q]);
      for (Eigen::Index r = 0; r < nq; ++r) samples(q, r) = f(space.qx()(r), space.qy()(r), t);
      leg.row(q) = legendre_table(p - 1, rule.nodes[q]).value.transpose();
    }
    // Modal coefficients of the projection onto degree p-1 at every spatial point.
    Vec w(nt);
    for (int q = 0; q < nt; ++q) w(q) = rule.weights[q];
    Mat coeffs = leg.transpose() * w.asDiagonal() * samples;
    for (int k = 0; k < p; ++k) coeffs.row(k) *= 0.5 * (2.0 * k + 1.0);
    const Mat defect = samples - leg * coeffs;
    double l1 = 0.0;
    for (int q = 0; q < nt; ++q) l1 += 0.5 * iv.length() * w(q) * space.qnorm(defect.row(q).transpose());
    const double tau = iv.length();
    out[n] = n < m ? 2.0 * tau / kPi * c3_constant(p - 1) * l1 : 2.0 * tau * l1;
  }
  return out;
}

EstimatorReport estimate(const SlabSolution& sol, const SpaceTimeFunction& f, bool include_osc,
                         EstimatorMode mode) {
  const auto& grid = sol.grid();
  const int N = grid.size();
  EstimatorReport rep;
  rep.mode = mode;
  rep.include_osc = include_osc;
  const auto e1 = eta1(sol);
  rep.eta1 = e1.value;
  rep.eta1_n = e1.terms;
  rep.m = mode == EstimatorMode::global ? N - 1 : e1.argmax;

  rep.eta2_n.assign(N, 0.0);
  rep.osc_n.assign(N, 0.0);
  const auto e2 = eta2_terms(sol, rep.m, 0,
                             mode == EstimatorMode::global ? Eta2Form::two_branch
                                                           : Eta2Form::first_branch);
  const auto os = osc_terms(f, grid, sol.space(), rep.m);
  for (int n = 0; n <= rep.m; ++n) {
    rep.eta2_n[n] = e2[n];
    rep.osc_n[n] = os[n];
    rep.eta2 += e2[n];
    rep.osc += os[n];
    const int p = grid.degree(n);
    const double lo = abs_legendre_integral(p, default_order(p));
    const double hi = abs_legendre_integral(p, 2 * default_order(p));
    rep.l1_quadrature_drift = std::max(rep.l1_quadrature_drift, std::abs(lo - hi) / hi);
  }
  rep.eta = rep.eta1 + rep.eta2;
  rep.local.assign(N, 0.0);
  for (int n = 0; n < N; ++n) rep.local[n] = (n == rep.m ? rep.eta1 : 0.0) + rep.eta2_n[n];
  return rep;
}

double effectivity(double eta, double err) {
  if (!(err >= DBL_MIN) || !std::isfinite(err)) {
    throw std::domain_error("effectivity: error norm is zero or not finite");
  }
  return eta / err;
}

}  // namespace c0wave
