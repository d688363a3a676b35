#pragma once

#include <vector>

#include "gpe/types.hpp"

namespace gpe::poly {

/// Scalar polynomial sum a_k z^k, coefficients ascending, trailing zeros trimmed.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Complex> coeffs);
  static Polynomial constant(Complex c) { return Polynomial({c}); }
  static Polynomial from_roots(const std::vector<Complex>& roots,
                               Complex leading = 1.0);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Complex>& coeffs() const { return coeffs_; }
  Complex coeff(int k) const {
    return k < static_cast<int>(coeffs_.size()) ? coeffs_[static_cast<size_t>(k)]
                                                : Complex(0, 0);
  }

  Complex operator()(Complex z) const;
  Polynomial operator+(const Polynomial& r) const;
  Polynomial operator-(const Polynomial& r) const;
  Polynomial operator*(const Polynomial& r) const;
  Polynomial operator*(Complex s) const;

  /// p#(z) = conj(p(-conj z)): coefficients (-1)^k conj(a_k).
  Polynomial sharp() const;
  bool is_even(double tolerance) const;

 private:
  std::vector<Complex> coeffs_;
};

/// Roots via the companion matrix of the monic normalization.
std::vector<Complex> roots(const Polynomial& p);

/// Matrix-valued polynomial sum z^k C_k.
class MatrixPolynomial {
 public:
  MatrixPolynomial() = default;
  MatrixPolynomial(int rows, int cols) : rows_(rows), cols_(cols) {}
  explicit MatrixPolynomial(std::vector<ComplexMatrix> coeffs);

  static MatrixPolynomial constant(const ComplexMatrix& c);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const std::vector<ComplexMatrix>& coeffs() const { return coeffs_; }
  ComplexMatrix coeff(int k) const;

  ComplexMatrix operator()(Complex z) const;
  MatrixPolynomial operator+(const MatrixPolynomial& r) const;
  MatrixPolynomial operator*(const MatrixPolynomial& r) const;
  MatrixPolynomial scale(Complex s) const;
  /// A * P(z) * B for constant matrices.
  MatrixPolynomial conjugate_by(const ComplexMatrix& left,
                                const ComplexMatrix& right) const;
  /// Vertical stack of two polynomials with equal column counts.
  static MatrixPolynomial vstack(const MatrixPolynomial& top,
                                 const MatrixPolynomial& bottom);

  MatrixPolynomial sharp() const;
  void trim(double tolerance = 0.0);

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<ComplexMatrix> coeffs_;
};

}  // namespace gpe::poly
