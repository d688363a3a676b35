#include "gpe/polynomial.hpp"

#include <algorithm>
#include <cmath>

#include "gpe/linalg.hpp"

namespace gpe::poly {

namespace {
void trim_scalar(std::vector<Complex>& c) {
  double scale = 0;
  for (const Complex& v : c) scale = std::max(scale, std::abs(v));
  const double cut = scale * 1e-14;
  while (!c.empty() && std::abs(c.back()) <= cut) c.pop_back();
}
}  // namespace

Polynomial::Polynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  trim_scalar(coeffs_);
}

Polynomial Polynomial::from_roots(const std::vector<Complex>& rs, Complex leading) {
  std::vector<Complex> c{leading};
  for (const Complex& r : rs) {
    std::vector<Complex> next(c.size() + 1, Complex(0, 0));
    for (size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= r * c[k];
    }
    c = std::move(next);
  }
  return Polynomial(std::move(c));
}

Complex Polynomial::operator()(Complex z) const {
  Complex acc(0, 0);
  for (size_t k = coeffs_.size(); k-- > 0;) acc = acc * z + coeffs_[k];
  return acc;
}

Polynomial Polynomial::operator+(const Polynomial& r) const {
  std::vector<Complex> c(std::max(coeffs_.size(), r.coeffs_.size()), Complex(0, 0));
  for (size_t k = 0; k < coeffs_.size(); ++k) c[k] += coeffs_[k];
  for (size_t k = 0; k < r.coeffs_.size(); ++k) c[k] += r.coeffs_[k];
  return Polynomial(std::move(c));
}

Polynomial Polynomial::operator-(const Polynomial& r) const {
  return *this + (r * Complex(-1, 0));
}

Polynomial Polynomial::operator*(const Polynomial& r) const {
  if (coeffs_.empty() || r.coeffs_.empty()) return Polynomial();
  std::vector<Complex> c(coeffs_.size() + r.coeffs_.size() - 1, Complex(0, 0));
  for (size_t a = 0; a < coeffs_.size(); ++a) {
    for (size_t b = 0; b < r.coeffs_.size(); ++b) {
      c[a + b] += coeffs_[a] * r.coeffs_[b];
    }
  }
  return Polynomial(std::move(c));
}

Polynomial Polynomial::operator*(Complex s) const {
  std::vector<Complex> c = coeffs_;
  for (Complex& v : c) v *= s;
  return Polynomial(std::move(c));
}

Polynomial Polynomial::sharp() const {
  std::vector<Complex> c = coeffs_;
  for (size_t k = 0; k < c.size(); ++k) {
    c[k] = std::conj(c[k]);
    if (k % 2 == 1) c[k] = -c[k];
  }
  return Polynomial(std::move(c));
}

bool Polynomial::is_even(double tolerance) const {
  const Polynomial diff = *this - sharp();
  double norm = 0, scale = 0;
  for (const Complex& v : diff.coeffs_) norm = std::max(norm, std::abs(v));
  for (const Complex& v : coeffs_) scale = std::max(scale, std::abs(v));
  return norm <= tolerance * (1.0 + scale);
}

std::vector<Complex> roots(const Polynomial& p) {
  if (p.degree() <= 0) return {};
  const int d = p.degree();
  const Complex lead = p.coeff(d);
  ComplexMatrix companion = ComplexMatrix::Zero(d, d);
  for (int k = 0; k < d; ++k) companion(k, d - 1) = -p.coeff(k) / lead;
  for (int k = 1; k < d; ++k) companion(k, k - 1) = 1.0;
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(companion, false);
  if (solver.info() != Eigen::Success) {
    throw NumericalFailure("poly::roots: companion eigenvalue solve failed");
  }
  std::vector<Complex> out(solver.eigenvalues().data(),
                           solver.eigenvalues().data() + d);
  std::sort(out.begin(), out.end(), [](Complex l, Complex r) {
    if (l.real() != r.real()) return l.real() < r.real();
    return l.imag() < r.imag();
  });
  return out;
}

MatrixPolynomial::MatrixPolynomial(std::vector<ComplexMatrix> coeffs)
    : coeffs_(std::move(coeffs)) {
  if (!coeffs_.empty()) {
    rows_ = static_cast<int>(coeffs_[0].rows());
    cols_ = static_cast<int>(coeffs_[0].cols());
    for (const auto& c : coeffs_) {
      if (c.rows() != rows_ || c.cols() != cols_) {
        throw InputError("MatrixPolynomial: inconsistent coefficient shapes");
      }
    }
  }
  trim();
}

MatrixPolynomial MatrixPolynomial::constant(const ComplexMatrix& c) {
  return MatrixPolynomial(std::vector<ComplexMatrix>{c});
}

ComplexMatrix MatrixPolynomial::coeff(int k) const {
  if (k < static_cast<int>(coeffs_.size())) return coeffs_[static_cast<size_t>(k)];
  return ComplexMatrix::Zero(rows_, cols_);
}

ComplexMatrix MatrixPolynomial::operator()(Complex z) const {
  ComplexMatrix acc = ComplexMatrix::Zero(rows_, cols_);
  for (size_t k = coeffs_.size(); k-- > 0;) acc = acc * z + coeffs_[k];
  return acc;
}

MatrixPolynomial MatrixPolynomial::operator+(const MatrixPolynomial& r) const {
  if (rows_ != r.rows_ || cols_ != r.cols_) {
    throw InputError("MatrixPolynomial::operator+: shape mismatch");
  }
  std::vector<ComplexMatrix> c(std::max(coeffs_.size(), r.coeffs_.size()),
                               ComplexMatrix::Zero(rows_, cols_));
  for (size_t k = 0; k < coeffs_.size(); ++k) c[k] += coeffs_[k];
  for (size_t k = 0; k < r.coeffs_.size(); ++k) c[k] += r.coeffs_[k];
  MatrixPolynomial out(rows_, cols_);
  out.coeffs_ = std::move(c);
  out.trim();
  return out;
}

MatrixPolynomial MatrixPolynomial::operator*(const MatrixPolynomial& r) const {
  if (cols_ != r.rows_) {
    throw InputError("MatrixPolynomial::operator*: inner dimensions differ");
  }
  if (coeffs_.empty() || r.coeffs_.empty()) return MatrixPolynomial(rows_, r.cols_);
  std::vector<ComplexMatrix> c(coeffs_.size() + r.coeffs_.size() - 1,
                               ComplexMatrix::Zero(rows_, r.cols_));
  for (size_t a = 0; a < coeffs_.size(); ++a) {
    for (size_t b = 0; b < r.coeffs_.size(); ++b) {
      c[a + b] += coeffs_[a] * r.coeffs_[b];
    }
  }
  MatrixPolynomial out(rows_, r.cols_);
  out.coeffs_ = std::move(c);
  out.trim();
  return out;
}

MatrixPolynomial MatrixPolynomial::scale(Complex s) const {
  MatrixPolynomial out = *this;
  for (auto& c : out.coeffs_) c *= s;
  return out;
}

MatrixPolynomial MatrixPolynomial::conjugate_by(const ComplexMatrix& left,
                                                const ComplexMatrix& right) const {
  MatrixPolynomial out(static_cast<int>(left.rows()),
                       static_cast<int>(right.cols()));
  out.coeffs_.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.coeffs_.push_back(left * c * right);
  out.trim();
  return out;
}

MatrixPolynomial MatrixPolynomial::vstack(const MatrixPolynomial& top,
                                          const MatrixPolynomial& bottom) {
  if (top.cols_ != bottom.cols_) {
    throw InputError("MatrixPolynomial::vstack: column counts differ");
  }
  MatrixPolynomial out(top.rows_ + bottom.rows_, top.cols_);
  const size_t n = std::max(top.coeffs_.size(), bottom.coeffs_.size());
  for (size_t k = 0; k < n; ++k) {
    ComplexMatrix c(out.rows_, out.cols_);
    c.topRows(top.rows_) = top.coeff(static_cast<int>(k));
    c.bottomRows(bottom.rows_) = bottom.coeff(static_cast<int>(k));
    out.coeffs_.push_back(std::move(c));
  }
  out.trim();
  return out;
}

MatrixPolynomial MatrixPolynomial::sharp() const {
  MatrixPolynomial out(cols_, rows_);
  out.coeffs_.reserve(coeffs_.size());
  for (size_t k = 0; k < coeffs_.size(); ++k) {
    ComplexMatrix c = coeffs_[k].adjoint();
    if (k % 2 == 1) c = -c;
    out.coeffs_.push_back(std::move(c));
  }
  out.trim();
  return out;
}

void MatrixPolynomial::trim(double tolerance) {
  double scale = 0;
  for (const auto& c : coeffs_) scale = std::max(scale, c.norm());
  const double cut = std::max(tolerance, scale * 1e-14);
  while (!coeffs_.empty() && coeffs_.back().norm() <= cut) coeffs_.pop_back();
}

}  // namespace gpe::poly
