#include "gpe/slicefun.hpp"

#include <algorithm>
#include <cmath>

#include "gpe/analysis.hpp"
#include "gpe/factorization.hpp"

namespace gpe::slicefun {

using quat::Quaternion;
using quat::QuatMatrix;
using realization::QuatRealization;
using realization::Realization;

SlicePolynomial::SlicePolynomial(std::vector<QuatMatrix> coeffs)
    : coeffs_(std::move(coeffs)) {
  if (!coeffs_.empty()) {
    rows_ = coeffs_[0].rows();
    cols_ = coeffs_[0].cols();
    for (const auto& c : coeffs_) {
      if (c.rows() != rows_ || c.cols() != cols_) {
        throw InputError("SlicePolynomial: inconsistent coefficient shapes");
      }
    }
  }
  trim();
}

SlicePolynomial SlicePolynomial::constant(const QuatMatrix& c) {
  return SlicePolynomial(std::vector<QuatMatrix>{c});
}

SlicePolynomial SlicePolynomial::from_complex(const poly::MatrixPolynomial& p) {
  std::vector<QuatMatrix> coeffs;
  coeffs.reserve(static_cast<size_t>(p.degree() + 1));
  for (const auto& c : p.coeffs()) coeffs.push_back(QuatMatrix::from_complex(c));
  SlicePolynomial out(p.rows(), p.cols());
  if (!coeffs.empty()) out = SlicePolynomial(std::move(coeffs));
  return out;
}

QuatMatrix SlicePolynomial::coeff(int k) const {
  if (k < static_cast<int>(coeffs_.size())) return coeffs_[static_cast<size_t>(k)];
  return QuatMatrix::zero(rows_, cols_);
}

QuatMatrix SlicePolynomial::operator()(const Quaternion& p) const {
  QuatMatrix acc = QuatMatrix::zero(rows_, cols_);
  Quaternion power = Quaternion::one();
  for (size_t k = 0; k < coeffs_.size(); ++k) {
    acc = acc + coeffs_[k].scale_left(power);
    power = power * p;
  }
  return acc;
}

SlicePolynomial SlicePolynomial::operator+(const SlicePolynomial& r) const {
  if (rows_ != r.rows_ || cols_ != r.cols_) {
    throw InputError("SlicePolynomial::operator+: shape mismatch");
  }
  std::vector<QuatMatrix> c(std::max(coeffs_.size(), r.coeffs_.size()),
                            QuatMatrix::zero(rows_, cols_));
  for (size_t k = 0; k < coeffs_.size(); ++k) c[k] = c[k] + coeffs_[k];
  for (size_t k = 0; k < r.coeffs_.size(); ++k) c[k] = c[k] + r.coeffs_[k];
  SlicePolynomial out(rows_, cols_);
  out.coeffs_ = std::move(c);
  out.trim();
  return out;
}

SlicePolynomial SlicePolynomial::sharp() const {
  SlicePolynomial out(cols_, rows_);
  out.coeffs_.reserve(coeffs_.size());
  for (size_t k = 0; k < coeffs_.size(); ++k) {
    QuatMatrix c = coeffs_[k].adjoint();
    if (k % 2 == 1) c = c * (-1.0);
    out.coeffs_.push_back(std::move(c));
  }
  out.trim();
  return out;
}

void SlicePolynomial::trim() {
  double scale = 0;
  for (const auto& c : coeffs_) scale = std::max(scale, c.norm());
  const double cut = scale * 1e-14;
  while (!coeffs_.empty() && coeffs_.back().norm() <= cut) coeffs_.pop_back();
}

SlicePolynomial star_product(const SlicePolynomial& g, const SlicePolynomial& f) {
  if (g.cols() != f.rows()) {
    throw InputError("slicefun::star_product: inner dimensions differ");
  }
  if (g.coeffs().empty() || f.coeffs().empty()) {
    return SlicePolynomial(g.rows(), f.cols());
  }
  std::vector<QuatMatrix> c(g.coeffs().size() + f.coeffs().size() - 1,
                            QuatMatrix::zero(g.rows(), f.cols()));
  for (size_t a = 0; a < g.coeffs().size(); ++a) {
    for (size_t b = 0; b < f.coeffs().size(); ++b) {
      c[a + b] = c[a + b] + g.coeffs()[a] * f.coeffs()[b];
    }
  }
  return SlicePolynomial(std::move(c));
}

Quaternion StarInverseLinear::operator()(const Quaternion& p) const {
  const Quaternion denom =
      Quaternion(q_.norm_sq(), 0, 0, 0) + 2.0 * q_.real() * p + p * p;
  const double scale = 1.0 + q_.norm_sq() + p.norm_sq();
  if (denom.norm() <= 1e-12 * scale) {
    const Quaternion rep = pole_representative();
    throw PoleError("slicefun::StarInverseLinear: point on the pole sphere",
                    Complex(rep.real(), rep.imag().norm()));
  }
  return denom.inverse() * (p + q_);
}

QuatMatrix carat_kernel(const QuatFunction& phi, const Quaternion& p,
                        const Quaternion& q) {
  // (Phi(p) + Phi(q)*) * (p + conj q)^{-*} with the star product in p:
  // the numerator composed with (p + q) gives p M(p) + M(p) q, and the real
  // quadratic |q|^2 + 2 Re(q) p + p^2 divides out pointwise on the left.
  const QuatMatrix m = phi(p) + phi(q).adjoint();
  const Quaternion denom =
      Quaternion(q.norm_sq(), 0, 0, 0) + 2.0 * q.real() * p + p * p;
  const double scale = 1.0 + q.norm_sq() + p.norm_sq();
  if (denom.norm() <= 1e-12 * scale) {
    throw PoleError("slicefun::carat_kernel: p on the pole sphere of q",
                    Complex(-q.real(), q.imag().norm()));
  }
  const QuatMatrix numerator = m.scale_left(p) + m.scale_right(q);
  return numerator.scale_left(denom.inverse());
}

bool verify_E_symmetry(const Realization& r, double tolerance) {
  r.validate();
  if (r.n_out() % 2 != 0 || r.n_in() % 2 != 0) return false;
  const ComplexMatrix e_out = quat::e_matrix(r.n_out() / 2);
  const ComplexMatrix e_in = quat::e_matrix(r.n_in() / 2);
  double defect = 0.0, scale = 0.0;
  int used = 0;
  for (const Complex& z : realization::sample_points(r, 24)) {
    try {
      const ComplexMatrix direct = realization::evaluate(r, z);
      const ComplexMatrix mirrored =
          -e_out * realization::evaluate(r, std::conj(z)).conjugate() * e_in;
      defect = std::max(defect, (mirrored - direct).norm());
      scale = std::max(scale, direct.norm());
      ++used;
    } catch (const PoleError&) {
    }
  }
  return used > 0 && defect <= tolerance * (1.0 + scale);
}

QuatFactorizationResult quat_gpe_factor(const QuatRealization& r, Side side) {
  r.validate();
  if (r.n_in() != r.n_out()) {
    throw InputError("slicefun::quat_gpe_factor: function must be square");
  }
  const int n = r.n_out();
  const QuatMatrix eye = QuatMatrix::identity(n);
  if ((r.D - eye).norm() > 1e-9) {
    throw InputError(
        "slicefun::quat_gpe_factor: value at infinity must be the identity");
  }

  // Lift, minimize, and run the complex factorization machinery.
  const Realization lift = realization::minimize(realization::chi_lift(r));
  if (!analysis::is_even(lift)) {
    throw NotEvenError("slicefun::quat_gpe_factor: function is not even");
  }
  const auto boundary = analysis::boundary_positivity(lift);
  if (boundary.min_eig < -tol::kGpe) {
    throw NotGpeError(
        "slicefun::quat_gpe_factor: boundary positivity fails (min eigenvalue " +
        std::to_string(boundary.min_eig) + ")");
  }
  if (!verify_E_symmetry(lift)) {
    throw NumericalFailure(
        "slicefun::quat_gpe_factor: lifted function lost its chi symmetry");
  }

  factorization::FactorizationResult lifted_factor =
      factorization::pseudo_spectral_factor(lift, side);

  // The normalized factor of a chi-symmetric function is chi-symmetric.
  const double factor_defect_tol = 1e-7;
  if (!verify_E_symmetry(lifted_factor.L, factor_defect_tol)) {
    throw NumericalFailure(
        "slicefun::quat_gpe_factor: factor violates the chi symmetry; "
        "uniqueness of the normalized factor failed numerically");
  }

  const Realization structured =
      realization::restore_chi_structure(lifted_factor.L);

  QuatFactorizationResult result;
  result.side = side;
  result.lift_state_dim = lifted_factor.L.state_dim();
  result.L.A = quat::chi_inverse(structured.A);
  result.L.B = quat::chi_inverse(structured.B);
  result.L.C = quat::chi_inverse(structured.C);
  result.L.D = quat::chi_inverse(structured.D);

  // The lift of the pulled-back factor is chi-symmetric by construction; what
  // matters is its distance to the computed lifted factor.
  result.lift_symmetry_defect =
      realization::evaluation_distance(realization::chi_lift(result.L),
                                       lifted_factor.L, 20);

  // Residual of Phi - L# * L at quaternionic sample points.
  const QuatRealization product_back =
      realization::product(realization::sharp(result.L), result.L);
  result.residual = realization::evaluation_distance(r, product_back, 20);
  if (result.residual > 1e-6) {
    throw NumericalFailure(
        "slicefun::quat_gpe_factor: factorization residual " +
        std::to_string(result.residual));
  }
  return result;
}

}  // namespace gpe::slicefun
