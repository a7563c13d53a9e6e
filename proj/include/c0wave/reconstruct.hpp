#pragma once

// C1-in-time reconstruction of a continuous piecewise polynomial in time.

#include "c0wave/slabsolver.hpp"
#include "c0wave/timebasis.hpp"

namespace c0wave {

/// Degree p+1 reconstruction of the degree-p slab polynomial V given the
/// incoming left-limit derivative. Satisfies
///   (W'', q) = (V'', q) + ([V'](left), q(left))   for deg q <= p-1,
///   W(left) = V(left),  W'(left) = prev_deriv.
/// Throws std::invalid_argument for p < 2 or mismatched sizes.
[[nodiscard]] VectorTimePolynomial reconstruct_slab(const VectorTimePolynomial& V,
                                                    const Vec& prev_deriv);

/// Reconstruction of the discrete solution on interval n.
[[nodiscard]] VectorTimePolynomial reconstruct_slab(const SlabSolution& sol, int n);

struct WihlerSides {
  double lhs1 = 0.0, rhs1 = 0.0;
  double lhs2 = 0.0, rhs2 = 0.0;
  double lhs3 = 0.0, rhs3 = 0.0;
};

/// Both sides of the three defect relations between V and its reconstruction
/// W, in the norm induced by the symmetric positive definite matrix `gram`:
///   ||(V-W)'||^2_{L2(I)} = tau c1^2 ||j||^2,
///   max_t ||(V-W)'(t)||^2 = ||j||^2 (sampled at 2p+3 equispaced points),
///   ||V-W||^2_{L2(I)} <= tau^3 c2^2 ||j||^2.
[[nodiscard]] WihlerSides wihler_identities(const VectorTimePolynomial& V,
                                            const VectorTimePolynomial& W, const Vec& jump,
                                            const SpMat& gram);

}  // namespace c0wave
