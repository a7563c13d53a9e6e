#include "c0wave/reconstruct.hpp"

#include <cmath>
#include <stdexcept>

namespace c0wave {

namespace {

double gram_norm_sq(const SpMat& gram, const Vec& v) { return v.dot(gram * v); }

// L2(I) norm squared of a modal polynomial, exact by Legendre orthogonality.
double modal_l2_sq(const Mat& modes, double tau, const SpMat& gram) {
  double s = 0.0;
  for (Eigen::Index k = 0; k < modes.rows(); ++k) {
    s += 2.0 / (2.0 * k + 1.0) * gram_norm_sq(gram, modes.row(k).transpose());
  }
  return 0.5 * tau * s;
}

}  // namespace

VectorTimePolynomial reconstruct_slab(const VectorTimePolynomial& V, const Vec& prev_deriv) {
  const int p = V.degree();
  if (p < 2) throw std::invalid_argument("reconstruct_slab: degree must be >= 2");
  if (prev_deriv.size() != V.dim()) throw std::invalid_argument("reconstruct_slab: size mismatch");
  const Interval& iv = V.interval();
  const double tau = iv.length();
  const int n = p + 2;

  // g(i, k) = int_{-1}^{1} L_k'' L_i dx.
  Mat g = Mat::Zero(p, n);
  const auto rule = gauss_legendre(2 * n);
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const auto tab = legendre_table(n - 1, rule.nodes[q]);
    g += rule.weights[q] * tab.value.head(p) * tab.second.transpose();
  }

  Mat sys = Mat::Zero(n, n);
  sys.topRows(p) = g * (2.0 / tau);
  for (int k = 0; k < n; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    sys(p, k) = sign;                                    // L_k(-1)
    sys(p + 1, k) = -sign * 0.5 * k * (k + 1) * 2.0 / tau;  // (2/tau) L_k'(-1)
  }

  const Vec left_value = V(iv.left());
  const Vec jump = V.derivative(iv.left(), 1) - prev_deriv;
  Mat rhs(n, V.dim());
  Mat vpad = Mat::Zero(n, V.dim());
  vpad.topRows(p + 1) = V.modes();
  rhs.topRows(p) = (2.0 / tau) * (g * vpad);
  for (int i = 0; i < p; ++i) {
    const double sign = (i % 2 == 0) ? 1.0 : -1.0;
    rhs.row(i) += sign * jump.transpose();
  }
  rhs.row(p) = left_value.transpose();
  rhs.row(p + 1) = prev_deriv.transpose();

  Mat modes = sys.fullPivLu().solve(rhs);
  return {iv, std::move(modes)};
}

VectorTimePolynomial reconstruct_slab(const SlabSolution& sol, int n) {
  return reconstruct_slab(sol.slab(n), sol.left_limit_derivative(n));
}

WihlerSides wihler_identities(const VectorTimePolynomial& V, const VectorTimePolynomial& W,
                              const Vec& jump, const SpMat& gram) {
  const int p = V.degree();
  const double tau = V.interval().length();
  Mat diff = -W.modes();
  diff.topRows(V.modes().rows()) += V.modes();
  const Mat ddiff = modal_derivative(diff) * (2.0 / tau);
  const double j2 = gram_norm_sq(gram, jump);
  const auto k = reconstruction_constants(p);

  WihlerSides s;
  s.lhs1 = modal_l2_sq(ddiff, tau, gram);
  s.rhs1 = tau * k.c1_sq * j2;
  const VectorTimePolynomial dpoly(V.interval(), ddiff);
  for (double x : equispaced_points(2 * p + 3)) {
    s.lhs2 = std::max(s.lhs2, gram_norm_sq(gram, dpoly(V.interval().from_reference(x))));
  }
  s.rhs2 = j2;
  s.lhs3 = modal_l2_sq(diff, tau, gram);
  s.rhs3 = tau * tau * tau * k.c2_sq * j2;
  return s;
}

}  // namespace c0wave
