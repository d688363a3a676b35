#pragma once

#include <optional>
#include <vector>

#include "gpe/linalg.hpp"
#include "gpe/types.hpp"

namespace gpe::quat {

/// Quaternion w + x i + y j + z k.
struct Quaternion {
  double w = 0, x = 0, y = 0, z = 0;

  Quaternion() = default;
  Quaternion(double w_, double x_, double y_, double z_)
      : w(w_), x(x_), y(y_), z(z_) {}
  /// Embeds a complex number into the i-slice.
  explicit Quaternion(Complex c) : w(c.real()), x(c.imag()) {}

  static Quaternion zero() { return {}; }
  static Quaternion one() { return {1, 0, 0, 0}; }
  static Quaternion i() { return {0, 1, 0, 0}; }
  static Quaternion j() { return {0, 0, 1, 0}; }
  static Quaternion k() { return {0, 0, 0, 1}; }

  /// Splits q = z1 + z2 j with z1, z2 in the i-slice.
  Complex part1() const { return {w, x}; }
  Complex part2() const { return {y, z}; }
  static Quaternion from_parts(Complex z1, Complex z2) {
    return {z1.real(), z1.imag(), z2.real(), z2.imag()};
  }

  Quaternion conj() const { return {w, -x, -y, -z}; }
  double norm_sq() const { return w * w + x * x + y * y + z * z; }
  double norm() const;
  double real() const { return w; }
  Quaternion imag() const { return {0, x, y, z}; }
  Quaternion inverse() const;

  Quaternion operator-() const { return {-w, -x, -y, -z}; }
  Quaternion& operator+=(const Quaternion& r);
  Quaternion& operator-=(const Quaternion& r);
};

Quaternion operator+(Quaternion l, const Quaternion& r);
Quaternion operator-(Quaternion l, const Quaternion& r);
Quaternion operator*(const Quaternion& l, const Quaternion& r);
Quaternion operator*(double s, Quaternion q);
Quaternion operator*(Quaternion q, double s);
bool approx_equal(const Quaternion& l, const Quaternion& r, double tolerance);

/// Dense quaternion matrix, row-major.
class QuatMatrix {
 public:
  QuatMatrix() = default;
  QuatMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows * cols)) {}

  static QuatMatrix identity(int n);
  static QuatMatrix zero(int rows, int cols) { return QuatMatrix(rows, cols); }
  /// Entrywise embedding of a complex matrix into the i-slice.
  static QuatMatrix from_complex(const ComplexMatrix& m);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Quaternion& operator()(int r, int c) { return a_[static_cast<size_t>(r * cols_ + c)]; }
  const Quaternion& operator()(int r, int c) const {
    return a_[static_cast<size_t>(r * cols_ + c)];
  }

  QuatMatrix adjoint() const;
  QuatMatrix operator+(const QuatMatrix& r) const;
  QuatMatrix operator-(const QuatMatrix& r) const;
  QuatMatrix operator*(const QuatMatrix& r) const;
  QuatMatrix scale_left(const Quaternion& s) const;   // s * M
  QuatMatrix scale_right(const Quaternion& s) const;  // M * s
  QuatMatrix operator*(double s) const;

  double norm() const;  // Frobenius
  bool is_hermitian(double tolerance) const;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Quaternion> a_;
};

/// The canonical antisymmetry [[0, I_n], [-I_n, 0]]; E^2 = -I, E^{-1} = -E.
ComplexMatrix e_matrix(int n);

/// Complex adjoint representation: q = z1 + z2 j maps to
/// [[Z1, Z2], [-conj(Z2), conj(Z1)]], extended blockwise to matrices.
ComplexMatrix chi(const QuatMatrix& q);
ComplexMatrix chi(const Quaternion& q);

/// Measures how far a 2n x 2m complex matrix is from the range of chi.
double chi_symmetry_defect(const ComplexMatrix& m);

/// Inverse of chi on its range. Throws InputError when the symmetry
/// E^{-1} conj(M) E = M fails beyond the tolerance.
QuatMatrix chi_inverse(const ComplexMatrix& m, double tolerance = 1e-9);

struct SliceDecomposition {
  double x = 0;                      // real part
  double y = 0;                      // nonnegative imaginary magnitude
  std::optional<Quaternion> I;       // unit with I^2 = -1; absent for real p
};

/// Writes p = x + I y with y >= 0; I is empty when p is real.
SliceDecomposition slice_decompose(const Quaternion& p);

/// Inertia of a quaternion Hermitian matrix, computed through chi and halved
/// (eigenvalues of the complex lift come in pairs).
linalg::Inertia quat_hermitian_inertia(const QuatMatrix& h, double tolerance);

/// Deterministic unit imaginary quaternions spread over the sphere.
std::vector<Quaternion> unit_sphere_samples(int count);

}  // namespace gpe::quat
