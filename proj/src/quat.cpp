#include "gpe/quat.hpp"

#include <cmath>

namespace gpe::quat {

double Quaternion::norm() const { return std::sqrt(norm_sq()); }

Quaternion Quaternion::inverse() const {
  const double n2 = norm_sq();
  if (n2 == 0.0) throw InputError("Quaternion::inverse: zero quaternion");
  return {w / n2, -x / n2, -y / n2, -z / n2};
}

Quaternion& Quaternion::operator+=(const Quaternion& r) {
  w += r.w;
  x += r.x;
  y += r.y;
  z += r.z;
  return *this;
}

Quaternion& Quaternion::operator-=(const Quaternion& r) {
  w -= r.w;
  x -= r.x;
  y -= r.y;
  z -= r.z;
  return *this;
}

Quaternion operator+(Quaternion l, const Quaternion& r) { return l += r; }
Quaternion operator-(Quaternion l, const Quaternion& r) { return l -= r; }

Quaternion operator*(const Quaternion& l, const Quaternion& r) {
  return {l.w * r.w - l.x * r.x - l.y * r.y - l.z * r.z,
          l.w * r.x + l.x * r.w + l.y * r.z - l.z * r.y,
          l.w * r.y - l.x * r.z + l.y * r.w + l.z * r.x,
          l.w * r.z + l.x * r.y - l.y * r.x + l.z * r.w};
}

Quaternion operator*(double s, Quaternion q) {
  q.w *= s;
  q.x *= s;
  q.y *= s;
  q.z *= s;
  return q;
}

Quaternion operator*(Quaternion q, double s) { return s * q; }

bool approx_equal(const Quaternion& l, const Quaternion& r, double tolerance) {
  return (l - r).norm() <= tolerance;
}

QuatMatrix QuatMatrix::identity(int n) {
  QuatMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = Quaternion::one();
  return m;
}

QuatMatrix QuatMatrix::from_complex(const ComplexMatrix& c) {
  QuatMatrix m(static_cast<int>(c.rows()), static_cast<int>(c.cols()));
  for (int r = 0; r < m.rows(); ++r) {
    for (int cc = 0; cc < m.cols(); ++cc) m(r, cc) = Quaternion(c(r, cc));
  }
  return m;
}

QuatMatrix QuatMatrix::adjoint() const {
  QuatMatrix m(cols_, rows_);
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) m(c, r) = (*this)(r, c).conj();
  }
  return m;
}

QuatMatrix QuatMatrix::operator+(const QuatMatrix& r) const {
  if (rows_ != r.rows_ || cols_ != r.cols_) {
    throw InputError("QuatMatrix::operator+: dimension mismatch");
  }
  QuatMatrix out(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] + r.a_[i];
  return out;
}

QuatMatrix QuatMatrix::operator-(const QuatMatrix& r) const {
  if (rows_ != r.rows_ || cols_ != r.cols_) {
    throw InputError("QuatMatrix::operator-: dimension mismatch");
  }
  QuatMatrix out(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] - r.a_[i];
  return out;
}

QuatMatrix QuatMatrix::operator*(const QuatMatrix& r) const {
  if (cols_ != r.rows_) {
    throw InputError("QuatMatrix::operator*: inner dimensions differ");
  }
  QuatMatrix out(rows_, r.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < r.cols_; ++j) {
      Quaternion acc;
      for (int t = 0; t < cols_; ++t) acc += (*this)(i, t) * r(t, j);
      out(i, j) = acc;
    }
  }
  return out;
}

QuatMatrix QuatMatrix::scale_left(const Quaternion& s) const {
  QuatMatrix out(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = s * a_[i];
  return out;
}

QuatMatrix QuatMatrix::scale_right(const Quaternion& s) const {
  QuatMatrix out(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] * s;
  return out;
}

QuatMatrix QuatMatrix::operator*(double s) const {
  return scale_left(Quaternion(s, 0, 0, 0));
}

double QuatMatrix::norm() const {
  double acc = 0;
  for (const auto& q : a_) acc += q.norm_sq();
  return std::sqrt(acc);
}

bool QuatMatrix::is_hermitian(double tolerance) const {
  if (rows_ != cols_) return false;
  return ((*this) - adjoint()).norm() <= tolerance * (1.0 + norm());
}

ComplexMatrix e_matrix(int n) {
  ComplexMatrix e = ComplexMatrix::Zero(2 * n, 2 * n);
  e.topRightCorner(n, n) = ComplexMatrix::Identity(n, n);
  e.bottomLeftCorner(n, n) = -ComplexMatrix::Identity(n, n);
  return e;
}

ComplexMatrix chi(const QuatMatrix& q) {
  const int r = q.rows(), c = q.cols();
  ComplexMatrix m(2 * r, 2 * c);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < c; ++j) {
      const Complex z1 = q(i, j).part1();
      const Complex z2 = q(i, j).part2();
      m(i, j) = z1;
      m(i, j + c) = z2;
      m(i + r, j) = -std::conj(z2);
      m(i + r, j + c) = std::conj(z1);
    }
  }
  return m;
}

ComplexMatrix chi(const Quaternion& q) {
  QuatMatrix m(1, 1);
  m(0, 0) = q;
  return chi(m);
}

double chi_symmetry_defect(const ComplexMatrix& m) {
  if (m.rows() % 2 != 0 || m.cols() % 2 != 0) {
    throw InputError("quat::chi_symmetry_defect: dimensions must be even");
  }
  const int r = static_cast<int>(m.rows()) / 2;
  const int c = static_cast<int>(m.cols()) / 2;
  // E_r^{-1} conj(M) E_c - M, written blockwise.
  const ComplexMatrix er_inv = -e_matrix(r);
  return (er_inv * m.conjugate() * e_matrix(c) - m).norm();
}

QuatMatrix chi_inverse(const ComplexMatrix& m, double tolerance) {
  const double defect = chi_symmetry_defect(m);
  if (defect > tolerance * (1.0 + m.norm())) {
    throw InputError(
        "quat::chi_inverse: symmetry E^{-1} conj(M) E = M violated, defect " +
        std::to_string(defect));
  }
  const int r = static_cast<int>(m.rows()) / 2;
  const int c = static_cast<int>(m.cols()) / 2;
  QuatMatrix q(r, c);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < c; ++j) {
      // Average the two copies of each block for numerical symmetry.
      const Complex z1 = 0.5 * (m(i, j) + std::conj(m(i + r, j + c)));
      const Complex z2 = 0.5 * (m(i, j + c) - std::conj(m(i + r, j)));
      q(i, j) = Quaternion::from_parts(z1, z2);
    }
  }
  return q;
}

SliceDecomposition slice_decompose(const Quaternion& p) {
  SliceDecomposition out;
  out.x = p.w;
  const Quaternion v = p.imag();
  out.y = v.norm();
  if (out.y > 0) {
    out.I = (1.0 / out.y) * v;
  }
  return out;
}

linalg::Inertia quat_hermitian_inertia(const QuatMatrix& h, double tolerance) {
  if (h.rows() != h.cols()) {
    throw InputError("quat::quat_hermitian_inertia: matrix must be square");
  }
  if (!h.is_hermitian(tolerance)) {
    throw InputError("quat::quat_hermitian_inertia: matrix is not Hermitian");
  }
  QuatMatrix sym = (h + h.adjoint()) * 0.5;
  linalg::Inertia lifted = linalg::inertia(chi(sym), tolerance);
  if (lifted.n_plus % 2 != 0 || lifted.n_zero % 2 != 0 || lifted.n_minus % 2 != 0) {
    throw NumericalFailure(
        "quat::quat_hermitian_inertia: lifted eigenvalues did not pair up");
  }
  return {lifted.n_plus / 2, lifted.n_zero / 2, lifted.n_minus / 2};
}

std::vector<Quaternion> unit_sphere_samples(int count) {
  // Fibonacci spiral on the unit sphere of imaginary quaternions.
  std::vector<Quaternion> out;
  out.reserve(static_cast<size_t>(count));
  const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
  for (int m = 0; m < count; ++m) {
    const double t = (m + 0.5) / count;
    const double cos_theta = 1.0 - 2.0 * t;
    const double sin_theta = std::sqrt(std::max(0.0, 1.0 - cos_theta * cos_theta));
    const double phi = 2.0 * M_PI * m / golden;
    out.push_back(
        {0, sin_theta * std::cos(phi), sin_theta * std::sin(phi), cos_theta});
  }
  return out;
}

}  // namespace gpe::quat
