#pragma once

#include <functional>
#include <vector>

#include "gpe/polynomial.hpp"
#include "gpe/realization.hpp"

namespace gpe::slicefun {

using QuatFunction = std::function<quat::QuatMatrix(const quat::Quaternion&)>;

/// Left slice-hyperholomorphic polynomial sum p^k C_k (right coefficients).
class SlicePolynomial {
 public:
  SlicePolynomial() = default;
  SlicePolynomial(int rows, int cols) : rows_(rows), cols_(cols) {}
  explicit SlicePolynomial(std::vector<quat::QuatMatrix> coeffs);

  static SlicePolynomial constant(const quat::QuatMatrix& c);
  static SlicePolynomial from_complex(const poly::MatrixPolynomial& p);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const std::vector<quat::QuatMatrix>& coeffs() const { return coeffs_; }
  quat::QuatMatrix coeff(int k) const;

  quat::QuatMatrix operator()(const quat::Quaternion& p) const;
  SlicePolynomial operator+(const SlicePolynomial& r) const;

  /// Coefficients (-1)^k C_k^*, realizing f#(p) = sum (-p)^k C_k^*.
  SlicePolynomial sharp() const;
  void trim();

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<quat::QuatMatrix> coeffs_;
};

/// Star product: coefficient convolution keeping the left factor on the left.
SlicePolynomial star_product(const SlicePolynomial& g, const SlicePolynomial& f);

/// Evaluable handle for (p + conj(q))^{-*} =
/// (|q|^2 + 2 Re(q) p + p^2)^{-1} (p + q); the pole sphere is [-conj(q)].
class StarInverseLinear {
 public:
  explicit StarInverseLinear(const quat::Quaternion& q) : q_(q) {}
  quat::Quaternion operator()(const quat::Quaternion& p) const;
  /// Representative of the pole sphere.
  quat::Quaternion pole_representative() const { return -q_.conj(); }

 private:
  quat::Quaternion q_;
};

/// Carathéodory-type kernel (Phi(p) + Phi(q)^*) * (p + conj q)^{-*} with the
/// star product taken in the p variable.
quat::QuatMatrix carat_kernel(const QuatFunction& phi, const quat::Quaternion& p,
                              const quat::Quaternion& q);

/// Checks E^{-1} conj(R(conj z)) E = R(z) on deterministic sample points.
bool verify_E_symmetry(const realization::Realization& r, double tolerance = 1e-9);

/// Result of the quaternionic pseudo-spectral factorization.
struct QuatFactorizationResult {
  Side side = Side::right;
  realization::QuatRealization L;
  double residual = 0.0;          // max |Phi - L# * L| over quaternionic samples
  double lift_symmetry_defect = 0.0;  // E-symmetry defect of the factor's lift
  int lift_state_dim = 0;
};

/// Factors an even generalized positive quaternionic function with value I at
/// infinity as Phi = L# * L through the chi-lift, returning the quaternionic
/// factor with L(infinity) = I.
QuatFactorizationResult quat_gpe_factor(const realization::QuatRealization& r,
                                        Side side);

}  // namespace gpe::slicefun
