#pragma once

#include <vector>

#include "gpe/factorization.hpp"
#include "gpe/polynomial.hpp"
#include "gpe/slicefun.hpp"

namespace gpe::interp {

enum class ConstraintKind { value, sharp_value };

struct Constraint {
  Complex point;
  ConstraintKind kind = ConstraintKind::value;
  ComplexMatrix matrix;
};

struct QuatConstraint {
  quat::Quaternion point;
  ConstraintKind kind = ConstraintKind::value;
  quat::QuatMatrix matrix;
};

/// Positive semidefinite A with A xi = eta; exists iff xi* eta > 0 or eta = 0.
ComplexMatrix positive_matrix_for(const ComplexVector& xi, const ComplexVector& eta);

/// Minimal-degree complex matrix polynomial through value / sharp-value
/// constraints at distinct points (sharp-values become values at -conj(w)).
poly::MatrixPolynomial lagrange_matrix_polynomial(
    const std::vector<Constraint>& constraints);

/// Quaternionic two-sided Lagrange polynomial. Sharp-value constraints become
/// right-sided conditions; the pairwise Sylvester compatibility system is
/// checked first and the failing pair reported on infeasibility.
slicefun::SlicePolynomial quat_lagrange_polynomial(
    const std::vector<QuatConstraint>& constraints);

struct DirectionalSpec {
  std::vector<Complex> nodes;
  std::vector<ComplexVector> directions;  // nonzero
  std::vector<ComplexVector> targets;
};

struct GpeInterpolationResult {
  poly::MatrixPolynomial Phi;  // even generalized positive interpolant
  poly::MatrixPolynomial L;    // factor with L# L = Phi (tall in general)
};

/// Directional interpolation L#(w_i) L(w_i) xi_i = eta_i. Axis nodes require
/// xi* eta >= 0; symmetric node pairs require the coupled compatibility
/// condition xi_v* eta_u = eta_v* xi_u.
GpeInterpolationResult gpe_interpolate(const DirectionalSpec& spec);

struct EvenInterpolationResult {
  std::vector<Complex> coeffs;  // minimal even interpolant, ascending powers
  double beta = 0.0;
  poly::Polynomial Phi;         // p + beta * Phi0, certified by its factor
  poly::Polynomial factor;      // roots in the closed right half-plane
};

/// Scalar even-polynomial interpolation: Vandermonde solve on the symmetric
/// node extension, then a positivity shift along a factored perturbation.
EvenInterpolationResult even_polynomial_interpolate(
    const std::vector<Complex>& nodes, const std::vector<Complex>& values);

struct QuatInterpolationSpec {
  std::vector<quat::Quaternion> nodes;  // distinct, no three on one sphere
  std::vector<quat::QuatMatrix> values;
};

/// Full-value quaternionic interpolation: Phi = sum_u L_u * L_u# with
/// L_u(p_j) = delta_uj I and L_u#(p_u) = Phi_u.
slicefun::SlicePolynomial quat_gpe_interpolate(const QuatInterpolationSpec& spec);

}  // namespace gpe::interp
