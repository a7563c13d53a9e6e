#include "c0wave/errors.hpp"
#include "c0wave/estimator.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

namespace c0wave {
namespace {

constexpr double kPi = std::numbers::pi;

double bubble(double x, double y) { return (1 - x * x) * (1 - y * y); }

// Nodal blocks of U(t) = theta(t) w at the p+1 equispaced nodes of each interval.
SlabSolution separable_solution(const TimeGrid& grid, std::shared_ptr<const SpatialSpace> space,
                                const Vec& w, const std::function<double(double)>& theta,
                                const Vec& u1h) {
  std::vector<Mat> blocks;
  for (int n = 0; n < grid.size(); ++n) {
    const int p = grid.degree(n);
    Mat b(p + 1, space->dim());
    for (int j = 0; j <= p; ++j) {
      const double t = grid.nodes()[n] + grid.tau(n) * j / p;
      b.row(j) = theta(t) * w.transpose();
    }
    blocks.push_back(b);
  }
  const Vec u0h = theta(0.0) * w;
  return SlabSolution(grid, space, blocks, u0h, u1h);
}

// Four-point Gauss rule of order 7 applied to |L_2|, with closed-form nodes.
double abs_l2_gauss4() {
  const double a = std::sqrt(3.0 / 7.0 - 2.0 / 7.0 * std::sqrt(6.0 / 5.0));
  const double b = std::sqrt(3.0 / 7.0 + 2.0 / 7.0 * std::sqrt(6.0 / 5.0));
  const double wa = (18.0 + std::sqrt(30.0)) / 36.0;
  const double wb = (18.0 - std::sqrt(30.0)) / 36.0;
  const auto l2 = [](double x) { return std::abs(1.5 * x * x - 0.5); };
  return 2 * (wa * l2(a) + wb * l2(b));
}

class EstimatorFixture : public ::testing::Test {
protected:
  std::shared_ptr<SpatialSpace> space = std::make_shared<SpatialSpace>(square_mesh(0.5), 2);
  Vec w = space->interpolate(bubble);
  double w_l2 = space->l2_norm(w);
  double w_lap = std::sqrt(1408.0 / 45.0);
};

TEST_F(EstimatorFixture, ZeroSolutionGivesZeroReport) {
  const TimeGrid grid = TimeGrid::uniform(1.0, 4, 3);
  const Vec z = Vec::Zero(space->dim());
  const auto sol = separable_solution(grid, space, z, [](double) { return 0.0; }, z);
  for (auto mode : {EstimatorMode::global, EstimatorMode::localized}) {
    const auto rep = estimate(sol, {}, true, mode);
    EXPECT_EQ(rep.eta, 0.0);
    EXPECT_EQ(rep.eta1, 0.0);
    EXPECT_EQ(rep.osc, 0.0);
    EXPECT_EQ(rep.total(), 0.0);
    for (double v : rep.local) EXPECT_EQ(v, 0.0);
  }
  EXPECT_EQ(eta1(sol).argmax, 0);
}

TEST_F(EstimatorFixture, ConstantInTimeGivesZeroEta2) {
  const TimeGrid grid = TimeGrid::uniform(1.0, 3, 2);
  const auto sol =
      separable_solution(grid, space, w, [](double) { return 1.0; }, Vec::Zero(space->dim()));
  for (double v : eta2_terms(sol, 2)) EXPECT_NEAR(v, 0.0, 1e-14);
  EXPECT_NEAR(eta1(sol).value, 0.0, 1e-14);
}

TEST(Estimator, PiecewiseBilinearHasZeroEta2) {
  auto space = std::make_shared<SpatialSpace>(square_mesh(0.5), 1);
  const Vec w = space->interpolate(bubble);
  const TimeGrid grid = TimeGrid::uniform(1.0, 2, 2);
  const auto sol =
      separable_solution(grid, space, w, [](double t) { return t * t * t; }, Vec::Ones(space->dim()));
  for (double v : eta2_terms(sol, 1)) EXPECT_NEAR(v, 0.0, 1e-12);
  EXPECT_GT(eta1(sol).value, 0.0);
}

TEST_F(EstimatorFixture, Eta1PicksLargerJump) {
  // U = 0 on I_0 and 2 (t - tau) w / ||w|| on I_1, with u1h = -w / ||w||: jumps of norm 1 and 2.
  const double tau = 0.25;
  const TimeGrid grid = TimeGrid::uniform(2 * tau, 2, 2);
  const Vec unit = w / w_l2;
  const auto sol = separable_solution(
      grid, space, unit, [tau](double t) { return t <= tau ? 0.0 : 2 * (t - tau); }, -unit);
  const auto r = eta1(sol);
  const double c = std::sqrt(std::sqrt(c1_squared(2) * c2_squared(2)));
  EXPECT_EQ(r.argmax, 1);
  EXPECT_NEAR(r.value, tau * c * 2, 1e-12);
  EXPECT_NEAR(r.terms[0], tau * c, 1e-12);
}

TEST_F(EstimatorFixture, Eta1TiesGoToSmallestIndex) {
  const TimeGrid grid = TimeGrid::uniform(1.0, 2, 2);
  const Vec z = Vec::Zero(space->dim());
  const auto sol = separable_solution(grid, space, z, [](double) { return 0.0; }, z);
  EXPECT_EQ(eta1(sol).argmax, 0);
  const auto a = estimate(sol, {}, false, EstimatorMode::localized);
  const auto b = estimate(sol, {}, false, EstimatorMode::localized);
  EXPECT_EQ(a.m, 0);
  EXPECT_EQ(a.m, b.m);
}

TEST_F(EstimatorFixture, Eta2HandAssembledForQuadratic) {
  // U = t^2 w on two intervals of length tau with u1h = -w: C1 inside, jump w at t = 0.
  // On any interval t^2 has top Legendre coefficient tau^2/6, so
  // ||Laplace(U - Pi0 U)||_{L1(I_n;L2)} = (tau/2) (tau^2/6) I |Laplace w| with I the
  // four-point Gauss value of int |L_2|.
  const double tau = 0.4;
  const TimeGrid grid = TimeGrid::uniform(2 * tau, 2, 2);
  const auto sol = separable_solution(grid, space, w, [](double t) { return t * t; }, -w);
  const double l1 = 0.5 * tau * tau * tau / 6.0 * abs_l2_gauss4() * w_lap;
  const double c2 = std::sqrt(2.0 / 15.0) / kPi;
  const double c4 = kPi * 2 * tau / tau;
  const double first = 2.0 / kPi * (tau * std::sqrt(kPi) * l1 + tau * tau * tau * c2 * c4 * w_lap);
  const double last = 2.0 * tau * l1;
  const auto e2 = eta2_terms(sol, 1);
  ASSERT_EQ(e2.size(), 2u);
  EXPECT_NEAR(e2[0], first, 1e-10 * first);
  EXPECT_NEAR(e2[1], last, 1e-10 * last);

  // Second branch alone when m = 0, jump included.
  const auto e0 = eta2_terms(sol, 0);
  ASSERT_EQ(e0.size(), 1u);
  const double only = 2.0 * (tau * l1 + c2 * tau * tau * tau * w_lap);
  EXPECT_NEAR(e0[0], only, 1e-10 * only);

  // The localized form keeps the first branch at n = m, where c4 = pi and the jump vanishes.
  const auto f1 = eta2_terms(sol, 1, 0, Eta2Form::first_branch);
  EXPECT_NEAR(f1[0], first, 1e-10 * first);
  EXPECT_NEAR(f1[1], 2.0 / kPi * tau * std::sqrt(kPi) * l1, 1e-10 * l1);

  // A high-order rule approaches the exact integral 4/(3 sqrt 3) of |L_2|.
  const double exact_last = 2.0 * tau * 0.5 * tau * tau * tau / 6.0 * 4.0 / (3 * std::sqrt(3.0)) * w_lap;
  EXPECT_NEAR(eta2_terms(sol, 1, 401)[1], exact_last, 1e-3 * exact_last);
  EXPECT_THROW(static_cast<void>(eta2_terms(sol, 2)), std::out_of_range);
  EXPECT_THROW(static_cast<void>(eta2_terms(sol, -1)), std::out_of_range);
}

TEST(Osc, ZeroForEmptyAndLowDegreeSources) {
  const SpatialSpace space(square_mesh(0.5), 2);
  const TimeGrid grid = TimeGrid::uniform(1.0, 3, 3);
  for (double v : osc_terms({}, grid, space, 2)) EXPECT_EQ(v, 0.0);
  const SpaceTimeFunction quad = [](double x, double y, double t) {
    return (1 + x * y) * (1 - 2 * t + 3 * t * t);
  };
  for (double v : osc_terms(quad, grid, space, 2)) EXPECT_NEAR(v, 0.0, 1e-13);
}

TEST(Osc, QuadraticSourceMatchesLegendreExpansion) {
  // f = t^2 projected onto degree 1: defect (tau^2/6) L_2, and ||1||_{L2((-1,1)^2)} = 2.
  // The first interval uses the graded rule, later ones the plain Gauss rule.
  const SpatialSpace space(square_mesh(0.5), 2);
  const double tau = 0.3;
  const SpaceTimeFunction f = [](double, double, double t) { return t * t; };
  const double l1_gauss = 0.5 * tau * tau * tau / 6.0 * abs_l2_gauss4() * 2.0;
  const double l1_exact = 0.5 * tau * tau * tau / 6.0 * 4.0 / (3 * std::sqrt(3.0)) * 2.0;

  const TimeGrid grid = TimeGrid::uniform(tau, 1, 2);
  EXPECT_NEAR(osc_terms(f, grid, space, 0)[0], 2 * tau * l1_exact, 1e-3 * 2 * tau * l1_exact);
  EXPECT_NEAR(osc_terms(f, grid, space, 0, 401)[0], 2 * tau * l1_exact, 1e-3 * 2 * tau * l1_exact);

  // On (tau, 2 tau) the defect of t^2 is again (tau^2/6) L_2.
  const TimeGrid two = TimeGrid::uniform(2 * tau, 2, 2);
  const auto os = osc_terms(f, two, space, 1);
  const double branch1 = 2 * tau / kPi * std::sqrt(kPi) * l1_exact;
  EXPECT_NEAR(os[0], branch1, 1e-3 * branch1);
  EXPECT_NEAR(os[1], 2 * tau * l1_gauss, 1e-12);
}

TEST_F(EstimatorFixture, ScalingIsHomogeneous) {
  const TimeGrid grid = TimeGrid::uniform(0.6, 3, 2);
  const auto base = separable_solution(grid, space, w, [](double t) { return std::sin(3 * t); },
                                       Vec::Zero(space->dim()));
  const double s = 7.5;
  const auto scaled = separable_solution(
      grid, space, w, [s](double t) { return s * std::sin(3 * t); }, Vec::Zero(space->dim()));
  const auto a = estimate(base, {}, false);
  const auto b = estimate(scaled, {}, false);
  EXPECT_NEAR(b.eta1, s * a.eta1, 1e-12 * b.eta1);
  EXPECT_NEAR(b.eta, s * a.eta, 1e-12 * b.eta);
  EXPECT_EQ(a.m, b.m);
}

TEST(Estimator, LocalIndicatorsSumToEta) {
  const auto c = make_case(CaseId::case1);
  auto space = std::make_shared<SpatialSpace>(square_mesh(0.4), 2);
  const auto sol = march(c.data(), space, TimeGrid::uniform(1.0, 8, 2));
  for (auto mode : {EstimatorMode::global, EstimatorMode::localized}) {
    const auto rep = estimate(sol, c.data().f, true, mode);
    double sum = 0.0;
    for (double v : rep.local) sum += v;
    EXPECT_NEAR(sum, rep.eta, 1e-12 * rep.eta);
    EXPECT_NEAR(rep.total(), rep.eta + rep.osc, 1e-15);
    for (int n = rep.m + 1; n < 8; ++n) EXPECT_EQ(rep.eta2_n[n], 0.0);
    EXPECT_LE(rep.l1_quadrature_drift, 0.2);
  }
  const auto g = estimate(sol, {}, false, EstimatorMode::global);
  EXPECT_EQ(g.m, 7);
  const auto l = estimate(sol, {}, false, EstimatorMode::localized);
  EXPECT_EQ(l.m, eta1(sol).argmax);
  EXPECT_LE(l.eta, g.eta);
}

TEST(Effectivity, RatioAndErrors) {
  EXPECT_DOUBLE_EQ(effectivity(2.5, 2.5), 1.0);
  EXPECT_DOUBLE_EQ(effectivity(3.0, 1.5), 2.0);
  EXPECT_THROW(static_cast<void>(effectivity(1.0, 0.0)), std::domain_error);
  EXPECT_THROW(static_cast<void>(effectivity(1.0, 1e-320)), std::domain_error);
  EXPECT_THROW(static_cast<void>(effectivity(1.0, std::nan(""))), std::domain_error);
}

TEST(Estimator, ReliableAndRateMatchingOnSmoothCase) {
  const auto c = make_case(CaseId::case1);
  const auto data = c.data();
  auto space = std::make_shared<SpatialSpace>(square_mesh(0.4), 2);
  for (int p = 2; p <= 4; ++p) {
    std::vector<double> taus, errs, etas;
    for (int N : {10, 20, 40}) {
      const auto sol = march(data, space, TimeGrid::uniform(2.0, N, p));
      const auto e = compute_errors(sol, c);
      const auto rep = estimate(sol, data.f, true);
      EXPECT_GE(rep.total(), e.Linf_L2) << "p = " << p << ", N = " << N;
      taus.push_back(2.0 / N);
      errs.push_back(e.Linf_L2);
      etas.push_back(rep.eta);
    }
    EXPECT_NEAR(fitted_slope(etas, taus), fitted_slope(errs, taus), 0.3) << "p = " << p;
  }
}

}  // namespace
}  // namespace c0wave
