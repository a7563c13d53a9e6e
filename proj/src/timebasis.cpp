#include "c0wave/timebasis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace c0wave {

Interval::Interval(double left, double right) : left_(left), right_(right) {
  if (!(right > left)) {
    throw std::invalid_argument("Interval: right endpoint must exceed left endpoint");
  }
}

double Interval::to_reference(double t) const noexcept {
  return 2.0 * (t - left_) / (right_ - left_) - 1.0;
}

double Interval::from_reference(double x) const noexcept {
  return left_ + 0.5 * (x + 1.0) * (right_ - left_);
}

double legendre_eval(int degree, double x) {
  if (degree < 0) throw std::invalid_argument("legendre_eval: negative degree");
  if (degree == 0) return 1.0;
  double prev = 1.0;
  double cur = x;
  for (int n = 1; n < degree; ++n) {
    const double next = ((2.0 * n + 1.0) * x * cur - n * prev) / (n + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

LegendreTable legendre_table(int n, double x) {
  LegendreTable tab{Vec::Zero(n + 1), Vec::Zero(n + 1), Vec::Zero(n + 1)};
  tab.value(0) = 1.0;
  if (n >= 1) {
    tab.value(1) = x;
    tab.first(1) = 1.0;
  }
  for (int k = 1; k < n; ++k) {
    tab.value(k + 1) = ((2.0 * k + 1.0) * x * tab.value(k) - k * tab.value(k - 1)) / (k + 1.0);
    // L'_{k+1} = L'_{k-1} + (2k+1) L_k, and the same relation differentiated.
    tab.first(k + 1) = tab.first(k - 1) + (2.0 * k + 1.0) * tab.value(k);
    tab.second(k + 1) = tab.second(k - 1) + (2.0 * k + 1.0) * tab.first(k);
  }
  return tab;
}

namespace {

// P_n(x) and P_n'(x) for n >= 1, |x| < 1.
std::pair<double, double> legendre_with_slope(int n, double x) {
  double p0 = 1.0;
  double p1 = x;
  for (int k = 1; k < n; ++k) {
    const double p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
    p0 = p1;
    p1 = p2;
  }
  return {p1, n * (x * p1 - p0) / (x * x - 1.0)};
}

}  // namespace

QuadratureRule gauss_legendre_points(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre_points: need at least one point");
  QuadratureRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  if (n == 1) {
    rule.weights[0] = 2.0;
    return rule;
  }
  for (int i = 0; i < n / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [value, slope] = legendre_with_slope(n, x);
      const double dx = value / slope;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double slope = legendre_with_slope(n, x).second;
    const double w = 2.0 / ((1.0 - x * x) * slope * slope);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) {
    const double slope = legendre_with_slope(n, 0.0).second;
    rule.weights[n / 2] = 2.0 / (slope * slope);
  }
  return rule;
}

QuadratureRule gauss_legendre(int order) {
  if (order < 1) {
    throw std::invalid_argument("gauss_legendre: order must be >= 1, got " + std::to_string(order));
  }
  return gauss_legendre_points((order + 2) / 2);
}

QuadratureRule graded_gauss(int order, int levels, double sigma) {
  if (levels < 0) throw std::invalid_argument("graded_gauss: levels must be >= 0");
  if (!(sigma > 0.0 && sigma < 1.0)) throw std::invalid_argument("graded_gauss: sigma must lie in (0, 1)");
  const auto base = gauss_legendre_points(std::max((order + 2) / 2, 16));
  std::vector<double> breaks{0.0};
  for (int k = levels; k >= 0; --k) breaks.push_back(std::pow(sigma, k));
  QuadratureRule rule;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    const double a = breaks[k];
    const double b = breaks[k + 1];
    for (std::size_t q = 0; q < base.size(); ++q) {
      const double s = a + 0.5 * (b - a) * (base.nodes[q] + 1.0);
      rule.nodes.push_back(2.0 * s - 1.0);
      rule.weights.push_back((b - a) * base.weights[q]);
    }
  }
  return rule;
}

QuadratureRule data_rule(int n, int order) { return n == 0 ? graded_gauss(order) : gauss_legendre(order); }

std::vector<double> equispaced_points(int count) {
  if (count < 2) throw std::invalid_argument("equispaced_points: need at least two points");
  std::vector<double> pts(count);
  for (int i = 0; i < count; ++i) pts[i] = -1.0 + 2.0 * i / (count - 1);
  return pts;
}

Mat modal_derivative(const Mat& modes) {
  const Eigen::Index p = modes.rows() - 1;
  Mat out = Mat::Zero(std::max<Eigen::Index>(p, 1), modes.cols());
  for (Eigen::Index k = 1; k <= p; ++k) {
    for (Eigen::Index j = k - 1; j >= 0; j -= 2) {
      out.row(j) += (2.0 * j + 1.0) * modes.row(k);
    }
  }
  return out;
}

Mat modal_antiderivative(const Mat& modes) {
  const Eigen::Index p = modes.rows() - 1;
  Mat out = Mat::Zero(p + 2, modes.cols());
  out.row(0) += modes.row(0);
  out.row(1) += modes.row(0);
  for (Eigen::Index k = 1; k <= p; ++k) {
    const double s = 1.0 / (2.0 * k + 1.0);
    out.row(k + 1) += s * modes.row(k);
    out.row(k - 1) -= s * modes.row(k);
  }
  return out;
}

TimePolynomial::TimePolynomial(Interval interval, Vec coeffs)
    : interval_(interval), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() == 0) throw std::invalid_argument("TimePolynomial: empty coefficients");
}

double TimePolynomial::operator()(double t) const { return derivative(t, 0); }

double TimePolynomial::derivative(double t, int k) const {
  const auto tab = legendre_table(degree(), interval_.to_reference(t));
  const double scale = std::pow(2.0 / interval_.length(), k);
  switch (k) {
    case 0: return coeffs_.dot(tab.value);
    case 1: return scale * coeffs_.dot(tab.first);
    case 2: return scale * coeffs_.dot(tab.second);
    default: throw std::invalid_argument("TimePolynomial::derivative: order must be 0, 1 or 2");
  }
}

TimePolynomial TimePolynomial::derivative() const {
  Mat d = modal_derivative(coeffs_) * (2.0 / interval_.length());
  return {interval_, d.col(0)};
}

TimePolynomial TimePolynomial::antiderivative() const {
  Mat a = modal_antiderivative(coeffs_) * (0.5 * interval_.length());
  return {interval_, a.col(0)};
}

VectorTimePolynomial::VectorTimePolynomial(Interval interval, Mat modes)
    : interval_(interval), modes_(std::move(modes)) {
  if (modes_.rows() == 0) throw std::invalid_argument("VectorTimePolynomial: no modes");
}

Vec VectorTimePolynomial::operator()(double t) const { return derivative(t, 0); }

Vec VectorTimePolynomial::derivative(double t, int k) const {
  const auto tab = legendre_table(degree(), interval_.to_reference(t));
  const double scale = std::pow(2.0 / interval_.length(), k);
  switch (k) {
    case 0: return modes_.transpose() * tab.value;
    case 1: return scale * (modes_.transpose() * tab.first);
    case 2: return scale * (modes_.transpose() * tab.second);
    default:
      throw std::invalid_argument("VectorTimePolynomial::derivative: order must be 0, 1 or 2");
  }
}

LagrangeBasis::LagrangeBasis(std::vector<double> nodes) : nodes_(std::move(nodes)) {
  const int n = static_cast<int>(nodes_.size());
  if (n == 0) throw std::invalid_argument("LagrangeBasis: no nodes");
  Mat vandermonde(n, n);
  for (int i = 0; i < n; ++i) {
    vandermonde.row(i) = legendre_table(n - 1, nodes_[i]).value.transpose();
  }
  Eigen::FullPivLU<Mat> lu(vandermonde);
  if (!lu.isInvertible()) throw std::invalid_argument("LagrangeBasis: repeated nodes");
  to_modal_ = lu.inverse();
}

Vec LagrangeBasis::eval(double x, int k) const {
  const auto tab = legendre_table(degree(), x);
  switch (k) {
    case 0: return to_modal_.transpose() * tab.value;
    case 1: return to_modal_.transpose() * tab.first;
    case 2: return to_modal_.transpose() * tab.second;
    default: throw std::invalid_argument("LagrangeBasis::eval: order must be 0, 1 or 2");
  }
}

const LagrangeBasis& equispaced_basis(int degree) {
  if (degree < 1) throw std::invalid_argument("equispaced_basis: degree must be >= 1");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<LagrangeBasis>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[degree];
  if (!slot) slot = std::make_unique<LagrangeBasis>(equispaced_points(degree + 1));
  return *slot;
}

TimePolynomial project_L2(const TimeFunction& w, int degree, const Interval& interval,
                          int quad_order) {
  if (degree < 0) throw std::invalid_argument("project_L2: negative degree");
  const auto rule = gauss_legendre(std::max(quad_order, 2 * degree + 1));
  Vec coeffs = Vec::Zero(degree + 1);
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const auto tab = legendre_table(degree, rule.nodes[q]);
    coeffs += rule.weights[q] * w(interval.from_reference(rule.nodes[q])) * tab.value;
  }
  for (int k = 0; k <= degree; ++k) coeffs(k) *= 0.5 * (2.0 * k + 1.0);
  return {interval, coeffs};
}

TimePolynomial project_H1(const TimeFunction& w, const TimeFunction& dw, int degree,
                          const Interval& interval, int quad_order) {
  if (degree < 1) throw std::invalid_argument("project_H1: degree must be >= 1");
  const auto slope = project_L2(dw, degree - 1, interval, quad_order);
  auto r = slope.antiderivative();
  Vec c = r.coeffs();
  c(0) += w(interval.left());
  return {interval, c};
}

TimePolynomial thomee_project(const TimeFunction& w, int degree, const Interval& interval,
                              int quad_order) {
  if (degree < 0) throw std::invalid_argument("thomee_project: negative degree");
  Vec c = Vec::Zero(degree + 1);
  double low_at_right = 0.0;
  if (degree >= 1) {
    const auto low = project_L2(w, degree - 1, interval, quad_order);
    c.head(degree) = low.coeffs();
    low_at_right = low(interval.right());
  }
  // L_p(1) = 1 and L_p is orthogonal to lower degrees.
  c(degree) = w(interval.right()) - low_at_right;
  return {interval, c};
}

TimePolynomial integrated_thomee(const TimeFunction& w, const TimeFunction& dw, int degree,
                                 const Interval& interval, int quad_order) {
  if (degree < 2) throw std::invalid_argument("integrated_thomee: degree must be >= 2");
  const auto slope = thomee_project(dw, degree - 1, interval, quad_order);
  auto r = slope.antiderivative();
  Vec c = r.coeffs();
  c(0) += w(interval.left());
  return {interval, c};
}

double c1_squared(int p) {
  if (p < 2) throw std::invalid_argument("c1_squared: p must be >= 2");
  return static_cast<double>(p) / ((2.0 * p - 1.0) * (2.0 * p + 1.0));
}

double c2_squared(int p) {
  if (p < 2) throw std::invalid_argument("c2_squared: p must be >= 2");
  if (p == 2) return 2.0 / (15.0 * std::numbers::pi * std::numbers::pi);
  return 0.25 * p / ((p - 2.0) * (p - 1.0) * (2.0 * p - 1.0) * (2.0 * p + 1.0));
}

double c3_constant(int p) {
  if (p < 0) throw std::invalid_argument("c3_constant: p must be >= 0");
  if (p <= 2) return std::sqrt(std::numbers::pi);
  return 1.0 / (p - 2.0);
}

ReconstructionConstants reconstruction_constants(int p) {
  return {c1_squared(p), c2_squared(p), c3_constant(p)};
}

double c4_constant(int p, double t_m, double t_prev, double tau_n) {
  if (p < 2) throw std::invalid_argument("c4_constant: p must be >= 2");
  if (!(tau_n > 0.0)) throw std::invalid_argument("c4_constant: tau_n must be positive");
  if (p == 2) return std::numbers::pi * std::abs(t_m - t_prev) / tau_n;
  return c3_constant(p - 3);
}

double mu_n(int p) {
  if (p < 2) throw std::invalid_argument("mu_n: p must be >= 2");
  return 1.0 / (1024.0 * p * p * (2.0 * p + 1.0));
}

}  // namespace c0wave
