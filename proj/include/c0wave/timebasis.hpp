#pragma once

// One-dimensional polynomial machinery in time.
//
// Every polynomial on a time interval is stored in modal form: coefficients
// with respect to the Legendre polynomials L_0, ..., L_p on the reference
// interval [-1, 1], pulled back to the physical interval by the affine map.

#include <Eigen/Dense>

#include <functional>
#include <vector>

namespace c0wave {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// A time interval (left, right] with positive length.
class Interval {
public:
  Interval(double left, double right);

  [[nodiscard]] double left() const noexcept { return left_; }
  [[nodiscard]] double right() const noexcept { return right_; }
  [[nodiscard]] double length() const noexcept { return right_ - left_; }

  /// Maps t in the interval to x in [-1, 1].
  [[nodiscard]] double to_reference(double t) const noexcept;
  /// Maps x in [-1, 1] to the interval.
  [[nodiscard]] double from_reference(double x) const noexcept;

private:
  double left_;
  double right_;
};

/// L_degree(x) by the three-term recurrence.
[[nodiscard]] double legendre_eval(int degree, double x);

/// Values of L_0..L_n and their first two derivatives at one point.
struct LegendreTable {
  Vec value;
  Vec first;
  Vec second;
};
[[nodiscard]] LegendreTable legendre_table(int n, double x);

/// Gauss-Legendre rule on [-1, 1].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  [[nodiscard]] std::size_t size() const noexcept { return nodes.size(); }
};

/// Gauss-Legendre rule exact for polynomials up to `order`. Uses
/// ceil((order+1)/2) nodes. Throws std::invalid_argument for order < 1.
[[nodiscard]] QuadratureRule gauss_legendre(int order);

/// Rule with exactly `points` nodes.
[[nodiscard]] QuadratureRule gauss_legendre_points(int points);

/// Composite rule on [-1, 1] over a geometric partition graded towards -1
/// (ratio `sigma`, `levels` layers) with Gauss-Legendre pieces of at least 16
/// nodes and exact for polynomials up to `order`. Integrates algebraic
/// endpoint singularities at -1 accurately.
[[nodiscard]] QuadratureRule graded_gauss(int order, int levels = 14, double sigma = 0.15);

/// Rule for time integrals of the data on interval n: graded towards t_0 on
/// the first interval, plain Gauss-Legendre elsewhere.
[[nodiscard]] QuadratureRule data_rule(int n, int order);

/// `count` equispaced points in [-1, 1] including both endpoints.
[[nodiscard]] std::vector<double> equispaced_points(int count);

// Modal helpers on the reference interval acting on coefficient matrices
// (one row per Legendre mode, one column per component). The antiderivative
// vanishes at x = -1.
[[nodiscard]] Mat modal_derivative(const Mat& modes);
[[nodiscard]] Mat modal_antiderivative(const Mat& modes);

/// Scalar polynomial on an interval in modal Legendre form.
class TimePolynomial {
public:
  TimePolynomial(Interval interval, Vec coeffs);

  [[nodiscard]] const Interval& interval() const noexcept { return interval_; }
  [[nodiscard]] int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  [[nodiscard]] const Vec& coeffs() const noexcept { return coeffs_; }

  [[nodiscard]] double operator()(double t) const;
  /// k-th time derivative at t (k = 0, 1, 2).
  [[nodiscard]] double derivative(double t, int k = 1) const;

  [[nodiscard]] TimePolynomial derivative() const;
  /// Antiderivative vanishing at the left endpoint.
  [[nodiscard]] TimePolynomial antiderivative() const;

private:
  Interval interval_;
  Vec coeffs_;
};

/// Polynomial in time with values in R^d: row k of `modes` is the spatial
/// coefficient vector multiplying L_k.
class VectorTimePolynomial {
public:
  VectorTimePolynomial(Interval interval, Mat modes);

  [[nodiscard]] const Interval& interval() const noexcept { return interval_; }
  [[nodiscard]] int degree() const noexcept { return static_cast<int>(modes_.rows()) - 1; }
  [[nodiscard]] Eigen::Index dim() const noexcept { return modes_.cols(); }
  [[nodiscard]] const Mat& modes() const noexcept { return modes_; }

  [[nodiscard]] Vec operator()(double t) const;
  [[nodiscard]] Vec derivative(double t, int k = 1) const;

private:
  Interval interval_;
  Mat modes_;
};

/// Lagrange nodal basis on [-1, 1] expressed through Legendre modes:
/// phi_j(x) = sum_k C(k, j) L_k(x).
class LagrangeBasis {
public:
  explicit LagrangeBasis(std::vector<double> nodes);

  [[nodiscard]] int degree() const noexcept { return static_cast<int>(nodes_.size()) - 1; }
  [[nodiscard]] const std::vector<double>& nodes() const noexcept { return nodes_; }
  /// Nodal-to-modal conversion matrix C.
  [[nodiscard]] const Mat& nodal_to_modal() const noexcept { return to_modal_; }

  /// Values (k = 0), first or second derivatives of all basis functions at x
  /// on the reference interval.
  [[nodiscard]] Vec eval(double x, int k = 0) const;

private:
  std::vector<double> nodes_;
  Mat to_modal_;
};

/// Lagrange basis on p+1 equispaced nodes of [-1, 1]; cached per degree.
[[nodiscard]] const LagrangeBasis& equispaced_basis(int degree);

using TimeFunction = std::function<double(double)>;

/// Quadrature order used by the projectors for non-polynomial input.
inline constexpr int kProjectionOrder = 81;

/// L2-orthogonal projection onto polynomials of degree `degree` on the interval.
[[nodiscard]] TimePolynomial project_L2(const TimeFunction& w, int degree, const Interval& interval,
                                        int quad_order = kProjectionOrder);

/// H1 projector: r(left) = w(left) and r' is the L2 projection of w' onto
/// degree-1. Throws std::invalid_argument for degree < 1.
[[nodiscard]] TimePolynomial project_H1(const TimeFunction& w, const TimeFunction& dw, int degree,
                                        const Interval& interval,
                                        int quad_order = kProjectionOrder);

/// Thomee operator: L2-orthogonal to degree-1 and interpolating w at the right
/// endpoint.
[[nodiscard]] TimePolynomial thomee_project(const TimeFunction& w, int degree,
                                            const Interval& interval,
                                            int quad_order = kProjectionOrder);

/// Integrated Thomee operator: w(left) + int_left^t thomee_project(w', degree-1).
/// Throws std::invalid_argument for degree < 2.
[[nodiscard]] TimePolynomial integrated_thomee(const TimeFunction& w, const TimeFunction& dw,
                                               int degree, const Interval& interval,
                                               int quad_order = kProjectionOrder);

struct ReconstructionConstants {
  double c1_sq;
  double c2_sq;
  double c3;
};

/// c1(p)^2 and c2(p)^2 of the reconstruction defect bounds, plus c3(p).
/// Throws std::invalid_argument for p < 2.
[[nodiscard]] ReconstructionConstants reconstruction_constants(int p);

[[nodiscard]] double c1_squared(int p);
[[nodiscard]] double c2_squared(int p);
/// Defined for p >= 0: sqrt(pi) for p <= 2, 1/(p-2) otherwise.
[[nodiscard]] double c3_constant(int p);

/// c4(p-3): pi |t_m - t_prev| / tau_n for p = 2, c3(p-3) for p >= 3.
[[nodiscard]] double c4_constant(int p, double t_m, double t_prev, double tau_n);

/// Stability weight 1 / (1024 p^2 (2p+1)).
[[nodiscard]] double mu_n(int p);

}  // namespace c0wave
