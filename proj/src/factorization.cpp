#include "gpe/factorization.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace gpe::factorization {

using linalg::SubspaceBasis;
using realization::Realization;

namespace {

/// Hermitian positive square root; throws unless the matrix is positive
/// definite beyond `floor_eig`.
ComplexMatrix psd_sqrt(const ComplexMatrix& d, double floor_eig) {
  if (d.rows() == 0) return d;
  const ComplexMatrix herm = 0.5 * (d + d.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(herm);
  if (solver.eigenvalues().minCoeff() <= floor_eig) {
    throw DSingularError("D singular, use --regularize");
  }
  const auto sqrt_vals = solver.eigenvalues().array().sqrt().matrix();
  return solver.eigenvectors() * sqrt_vals.asDiagonal() *
         solver.eigenvectors().adjoint();
}

ComplexMatrix hstack_columns(int n, const std::vector<ComplexVector>& cols) {
  ComplexMatrix m(n, static_cast<int>(cols.size()));
  for (size_t c = 0; c < cols.size(); ++c) m.col(static_cast<int>(c)) = cols[c];
  return m;
}

/// Half-plane plus half-chain subspaces for one state matrix.
std::pair<SubspaceBasis, SubspaceBasis> split_subspaces(const ComplexMatrix& a,
                                                        const char* who) {
  const int n = static_cast<int>(a.rows());
  const double axis_band = tol::axis(a.norm());
  const linalg::EigenStructure es = linalg::eig(a);
  std::vector<ComplexVector> plus_cols, minus_cols;
  for (const auto& group : es.groups) {
    if (group.value.real() > axis_band) {
      for (const auto& chain : group.chains) {
        for (const auto& v : chain.vectors) plus_cols.push_back(v);
      }
    } else if (group.value.real() < -axis_band) {
      for (const auto& chain : group.chains) {
        for (const auto& v : chain.vectors) minus_cols.push_back(v);
      }
    } else {
      for (const auto& chain : group.chains) {
        if (chain.length() % 2 != 0) {
          throw UnsupportedStructureError(
              std::string(who) +
              ": odd partial multiplicity on the imaginary axis (length " +
              std::to_string(chain.length()) + ")");
        }
        // First half of each even chain goes to both subspaces.
        for (int t = 0; t < chain.length() / 2; ++t) {
          plus_cols.push_back(chain.vectors[static_cast<size_t>(t)]);
          minus_cols.push_back(chain.vectors[static_cast<size_t>(t)]);
        }
      }
    }
  }
  SubspaceBasis plus{n, linalg::orthonormal_range(hstack_columns(n, plus_cols))};
  SubspaceBasis minus{n, linalg::orthonormal_range(hstack_columns(n, minus_cols))};
  return {plus, minus};
}

void check_neutral(const SubspaceBasis& m, const ComplexMatrix& h,
                   const char* name) {
  const int n = m.ambient_dim;
  if (2 * m.dim() != n) {
    throw NumericalFailure(
        std::string("factorization::spectral_subspaces: ") + name +
        " has dimension " + std::to_string(m.dim()) + ", expected " +
        std::to_string(n) + "/2; neutrality condition cannot hold");
  }
  if (m.dim() == 0) return;
  const double defect = (m.basis.adjoint() * h * m.basis).norm();
  if (defect > 1e-7 * (1.0 + h.norm())) {
    throw NumericalFailure(
        std::string("factorization::spectral_subspaces: H-neutrality failed "
                    "for ") + name + " (defect " + std::to_string(defect) + ")");
  }
}

void check_matching(const SubspaceBasis& x, const SubspaceBasis& y,
                    const char* name) {
  const int n = x.ambient_dim;
  if (x.dim() + y.dim() != n) {
    throw NumericalFailure(
        std::string("factorization::spectral_subspaces: matching condition ") +
        name + " failed: dimensions " + std::to_string(x.dim()) + " + " +
        std::to_string(y.dim()) + " != " + std::to_string(n));
  }
  if (n == 0) return;
  ComplexMatrix joint(n, n);
  joint.leftCols(x.dim()) = x.basis;
  joint.rightCols(y.dim()) = y.basis;
  if (linalg::numerical_rank(joint) < n) {
    throw NumericalFailure(
        std::string("factorization::spectral_subspaces: matching condition ") +
        name + " failed: subspaces are not complementary");
  }
}

std::vector<Complex> axis_eigenvalues(const ComplexMatrix& a) {
  std::vector<Complex> out;
  const double band = tol::axis(a.norm());
  for (const auto& group : linalg::eig(a).groups) {
    if (std::abs(group.value.real()) <= band) out.push_back(group.value);
  }
  return out;
}

}  // namespace

SpectralSubspaces spectral_subspaces(const Realization& r,
                                     const analysis::StructureMatrix& h) {
  r.validate();
  if (r.n_in() != r.n_out()) {
    throw InputError("factorization::spectral_subspaces: function must be square");
  }
  const int n = r.state_dim();
  SpectralSubspaces out;
  if (n == 0) {
    out.M_plus = out.M_minus = out.M_plus_cross = out.M_minus_cross =
        SubspaceBasis{0, ComplexMatrix(0, 0)};
    return out;
  }
  if (linalg::numerical_rank(r.D) < r.D.rows()) {
    throw InputError(
        "factorization::spectral_subspaces: D must be invertible to form the "
        "associated matrix");
  }
  const ComplexMatrix a_cross =
      r.A - r.B * r.D.partialPivLu().solve(r.C);

  auto [plus, minus] = split_subspaces(r.A, "state matrix");
  auto [plus_cross, minus_cross] = split_subspaces(a_cross, "associated matrix");
  out.M_plus = plus;
  out.M_minus = minus;
  out.M_plus_cross = plus_cross;
  out.M_minus_cross = minus_cross;

  check_neutral(out.M_plus, h.H, "M_plus");
  check_neutral(out.M_minus, h.H, "M_minus");
  check_neutral(out.M_plus_cross, h.H, "M_plus_cross");
  check_neutral(out.M_minus_cross, h.H, "M_minus_cross");
  check_matching(out.M_minus, out.M_plus_cross, "M_minus + M_plus_cross");
  check_matching(out.M_plus, out.M_minus_cross, "M_plus + M_minus_cross");
  return out;
}

FactorizationResult pseudo_spectral_factor(const Realization& r, Side side) {
  r.validate();
  if (!realization::minimality_report(r).minimal()) {
    throw InputError(
        "factorization::pseudo_spectral_factor: realization must be minimal");
  }
  const analysis::StructureMatrix h = analysis::solve_structure_H(r);  // evenness
  const auto boundary = analysis::boundary_positivity(r);
  if (boundary.min_eig < -tol::kGpe) {
    throw NotGpeError(
        "factorization::pseudo_spectral_factor: boundary positivity fails "
        "(min eigenvalue " + std::to_string(boundary.min_eig) + ")");
  }
  const ComplexMatrix d_half = psd_sqrt(r.D, 1e-14 * (1.0 + r.D.norm()));
  const ComplexMatrix d_half_inv = d_half.inverse();

  FactorizationResult result;
  result.side = side;
  result.subspaces = spectral_subspaces(r, h);

  const int n = r.state_dim();
  if (n == 0) {
    result.L = Realization::constant(d_half);
    result.projection = ComplexMatrix(0, 0);
    result.residual = 0.0;
    return result;
  }

  // Side `right`: project onto M_minus_cross along M_plus, which places the
  // factor's poles and zeros in the closed left half-plane.
  const SubspaceBasis& range = (side == Side::right)
                                   ? result.subspaces.M_minus_cross
                                   : result.subspaces.M_plus_cross;
  const SubspaceBasis& kernel =
      (side == Side::right) ? result.subspaces.M_plus : result.subspaces.M_minus;
  const ComplexMatrix proj = linalg::projection_along(range, kernel);
  result.projection = proj;

  Realization full;
  full.A = proj * r.A * proj;
  full.B = proj * r.B;
  full.C = d_half_inv * r.C;
  full.D = d_half;
  result.L = realization::minimize(full);

  auto [residual, report] = verify_factorization(r, result.L);
  result.residual = residual;
  const double band = tol::axis(r.A.norm());
  const double pole_side = (side == Side::right) ? report.max_pole_real
                                                 : -report.max_pole_real;
  const double zero_side = (side == Side::right) ? report.max_zero_real
                                                 : -report.max_zero_real;
  if (pole_side > band || zero_side > band) {
    throw NumericalFailure(
        "factorization::pseudo_spectral_factor: factor poles or zeros landed "
        "in the wrong half-plane");
  }
  const double scale = 1.0 + r.D.norm();
  if (result.residual > 1e-7 * scale) {
    throw NumericalFailure(
        "factorization::pseudo_spectral_factor: residual " +
        std::to_string(result.residual) + " exceeds tolerance");
  }
  return result;
}

FactorizationResult factor_regularized(const Realization& r, Side side) {
  r.validate();
  const Realization rm = realization::minimize(r);
  if (!analysis::is_even(rm)) {
    throw NotEvenError("factorization::factor_regularized: function is not even");
  }
  const auto boundary = analysis::boundary_positivity(rm);
  if (boundary.min_eig < -tol::kGpe) {
    throw NotGpeError(
        "factorization::factor_regularized: boundary positivity fails (min "
        "eigenvalue " + std::to_string(boundary.min_eig) + ")");
  }
  {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> dsolve(
        0.5 * (rm.D + rm.D.adjoint()));
    if (rm.D.rows() > 0 && dsolve.eigenvalues().minCoeff() < -tol::kGpe) {
      throw NotGpeError(
          "factorization::factor_regularized: D has a negative eigenvalue");
    }
    if (rm.D.rows() == 0 || dsolve.eigenvalues().minCoeff() > 1e-8) {
      return pseudo_spectral_factor(rm, side);  // already definite at infinity
    }
  }

  const ComplexMatrix eye =
      ComplexMatrix::Identity(rm.n_out(), rm.n_in());
  std::optional<FactorizationResult> previous;
  std::vector<std::pair<double, double>> path;
  for (int k = 1; k <= 14; ++k) {
    const double eps = std::pow(10.0, -k);
    Realization shifted = rm;
    shifted.D = rm.D + eps * eye;
    FactorizationResult current = pseudo_spectral_factor(shifted, side);
    double distance = std::numeric_limits<double>::quiet_NaN();
    if (previous) {
      distance = realization::evaluation_distance(previous->L, current.L, 20);
      path.emplace_back(eps, distance);
      if (distance < 1e-6) {
        current.epsilon_path = path;
        return current;
      }
    } else {
      path.emplace_back(eps, 0.0);
    }
    previous = std::move(current);
  }
  throw NumericalFailure(
      "factorization::factor_regularized: epsilon schedule exhausted without "
      "factor convergence (last distance " +
      std::to_string(path.back().second) + ")");
}

poly::Polynomial factor_scalar_polynomial(const poly::Polynomial& phi, Side side) {
  if (phi.is_zero()) {
    throw InputError("factorization::factor_scalar_polynomial: zero polynomial");
  }
  if (!phi.is_even(1e-10)) {
    throw NotGpeError(
        "factorization::factor_scalar_polynomial: polynomial is not even");
  }
  // Sampled positivity on the axis.
  for (int m = 0; m <= 64; ++m) {
    const double y = (m == 0) ? 0.0 : 0.05 * std::pow(200.0, (m - 1) / 63.0);
    for (double sign : {1.0, -1.0}) {
      const Complex value = phi(Complex(0, sign * y));
      if (value.real() < -1e-9 * (1.0 + std::abs(value)) ||
          std::abs(value.imag()) > 1e-8 * (1.0 + std::abs(value))) {
        throw NotGpeError(
            "factorization::factor_scalar_polynomial: negative value " +
            std::to_string(value.real()) + " on the imaginary axis");
      }
      if (m == 0) break;
    }
  }
  if (phi.degree() == 0) {
    const double c = phi.coeff(0).real();
    if (c < 0) {
      throw NotGpeError(
          "factorization::factor_scalar_polynomial: negative constant");
    }
    return poly::Polynomial::constant(std::sqrt(c));
  }
  if (phi.degree() % 2 != 0) {
    throw NotGpeError(
        "factorization::factor_scalar_polynomial: odd degree cannot be even");
  }

  const std::vector<Complex> all_roots = poly::roots(phi);
  double scale = 1.0;
  for (const Complex& root : all_roots) scale = std::max(scale, std::abs(root));
  const double band = 1e-8 * scale;

  // Cluster roots so multiple axis roots can be split evenly.
  std::vector<std::pair<Complex, int>> clusters;
  for (const Complex& root : all_roots) {
    bool merged = false;
    for (auto& [center, count] : clusters) {
      if (std::abs(root - center) <= 1e-6 * scale) {
        center = (center * static_cast<double>(count) + root) /
                 static_cast<double>(count + 1);
        ++count;
        merged = true;
        break;
      }
    }
    if (!merged) clusters.emplace_back(root, 1);
  }

  std::vector<Complex> selected;
  for (const auto& [center, count] : clusters) {
    if (std::abs(center.real()) <= band) {
      if (count % 2 != 0) {
        throw NotGpeError(
            "factorization::factor_scalar_polynomial: axis root of odd "
            "multiplicity at " + std::to_string(center.imag()) + "i");
      }
      for (int t = 0; t < count / 2; ++t) {
        selected.push_back(Complex(0.0, center.imag()));
      }
    } else if ((side == Side::right) == (center.real() < 0)) {
      // `right` factor keeps the closed-left-half-plane roots.
      for (int t = 0; t < count; ++t) selected.push_back(center);
    }
  }
  if (static_cast<int>(selected.size()) * 2 != phi.degree()) {
    throw NumericalFailure(
        "factorization::factor_scalar_polynomial: root selection does not "
        "halve the degree");
  }

  poly::Polynomial monic = poly::Polynomial::from_roots(selected);
  // Positive constant fixed by leading-coefficient comparison with L L#.
  const poly::Polynomial probe = monic * monic.sharp();
  const Complex lead_ratio =
      phi.coeff(phi.degree()) / probe.coeff(phi.degree());
  if (std::abs(lead_ratio.imag()) > 1e-8 * std::abs(lead_ratio) ||
      lead_ratio.real() <= 0) {
    throw NumericalFailure(
        "factorization::factor_scalar_polynomial: normalization constant is "
        "not positive");
  }
  poly::Polynomial factor = monic * Complex(std::sqrt(lead_ratio.real()), 0);

  const poly::Polynomial rebuilt = factor * factor.sharp();
  const poly::Polynomial diff = rebuilt - phi;
  double err = 0, mag = 0;
  for (const Complex& c : diff.coeffs()) err = std::max(err, std::abs(c));
  for (const Complex& c : phi.coeffs()) mag = std::max(mag, std::abs(c));
  if (err > 1e-8 * (1.0 + mag)) {
    throw NumericalFailure(
        "factorization::factor_scalar_polynomial: reconstruction error " +
        std::to_string(err));
  }
  return factor;
}

std::pair<double, PoleZeroReport> verify_factorization(const Realization& phi,
                                                       const Realization& l,
                                                       int samples) {
  PoleZeroReport report;
  report.factor_poles = realization::poles(l);
  report.factor_zeros = realization::zeros(l);
  auto max_real = [](const std::vector<Complex>& values) {
    double worst = -std::numeric_limits<double>::infinity();
    for (const Complex& v : values) worst = std::max(worst, v.real());
    return values.empty() ? 0.0 : worst;
  };
  report.max_pole_real = max_real(report.factor_poles);
  report.max_zero_real = max_real(report.factor_zeros);

  double residual = 0.0;
  for (const Complex& z : realization::sample_points(phi, samples)) {
    try {
      const ComplexMatrix lz = realization::evaluate(l, z);
      const ComplexMatrix ls = realization::evaluate(l, -std::conj(z)).adjoint();
      residual = std::max(
          residual, (realization::evaluate(phi, z) - ls * lz).norm());
    } catch (const PoleError&) {
    }
  }
  return {residual, report};
}

}  // namespace gpe::factorization
