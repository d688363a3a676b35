#include "gpe/analysis.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace gpe::analysis {

using quat::Quaternion;
using quat::QuatMatrix;
using realization::QuatRealization;
using realization::Realization;

StructureMatrix solve_structure_H(const Realization& r) {
  r.validate();
  if (r.n_in() != r.n_out()) {
    throw InputError("analysis::solve_structure_H: function must be square");
  }
  if (!realization::minimality_report(r).minimal()) {
    throw InputError("analysis::solve_structure_H: realization must be minimal");
  }
  const double dscale = 1.0 + r.D.norm();
  if ((r.D - r.D.adjoint()).norm() > 1e-9 * dscale) {
    throw NotEvenError("analysis::solve_structure_H: D is not Hermitian");
  }
  const int n = r.state_dim();
  StructureMatrix out;
  if (n == 0) {
    out.H = ComplexMatrix(0, 0);
    out.skew_hermitian = true;
    out.min_singular_value = std::numeric_limits<double>::infinity();
    return out;
  }
  const int n_io = r.n_in();
  const int rows = n * n + 2 * n * n_io;
  ComplexMatrix k = ComplexMatrix::Zero(rows, n * n);
  ComplexVector rhs = ComplexVector::Zero(rows);
  // vec(HA + A*H) = (A^T (x) I + I (x) A*) vec H = 0
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      for (int t = 0; t < n; ++t) {
        k(i + j * n, i + t * n) += r.A(t, j);
        k(i + j * n, t + j * n) += std::conj(r.A(t, i));
      }
    }
  }
  int row0 = n * n;
  // vec(HB) = (B^T (x) I) vec H = vec(C*)
  for (int j = 0; j < n_io; ++j) {
    for (int i = 0; i < n; ++i) {
      for (int t = 0; t < n; ++t) k(row0 + i + j * n, i + t * n) += r.B(t, j);
      rhs(row0 + i + j * n) = std::conj(r.C(j, i));
    }
  }
  row0 += n * n_io;
  // vec(B* H) = (I (x) B*) vec H = vec(-C)
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n_io; ++i) {
      for (int t = 0; t < n; ++t) {
        k(row0 + i + j * n_io, t + j * n) += std::conj(r.B(t, i));
      }
      rhs(row0 + i + j * n_io) = -r.C(i, j);
    }
  }
  Eigen::CompleteOrthogonalDecomposition<ComplexMatrix> cod(k);
  const ComplexVector h_vec = cod.solve(rhs);
  ComplexMatrix h(n, n);
  for (int j = 0; j < n; ++j) h.col(j) = h_vec.segment(j * n, n);
  // The exact solution is skew-Hermitian; enforce it and re-check.
  h = 0.5 * (h - h.adjoint());
  const double scale =
      (1.0 + r.A.norm() + r.B.norm() + r.C.norm()) * (1.0 + h.norm());
  const double residual = (h * r.A + r.A.adjoint() * h).norm() +
                          (h * r.B - r.C.adjoint()).norm() +
                          (r.B.adjoint() * h + r.C).norm();
  if (residual > 1e-8 * scale) {
    throw NotEvenError(
        "analysis::solve_structure_H: structure equations are inconsistent "
        "(residual " + std::to_string(residual) + "); function is not even");
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(h);
  out.H = h;
  out.skew_hermitian = true;
  out.relation_residual = residual;
  out.min_singular_value = svd.singularValues()(n - 1);
  if (linalg::numerical_rank(h) < n) {
    throw NumericalFailure(
        "analysis::solve_structure_H: structure matrix is singular");
  }
  return out;
}

LmiReport verify_positive_real_lmi(const Realization& r, const ComplexMatrix& h) {
  r.validate();
  const int n = r.state_dim();
  if (h.rows() != n || h.cols() != n) {
    throw InputError("analysis::verify_positive_real_lmi: H has wrong size");
  }
  if ((h - h.adjoint()).norm() > 1e-9 * (1.0 + h.norm())) {
    throw InputError("analysis::verify_positive_real_lmi: H must be Hermitian");
  }
  LmiReport out;
  out.Q = h * r.A + r.A.adjoint() * h;
  out.S = h * r.B + r.C.adjoint();
  out.R = r.D + r.D.adjoint();
  const int m = n + r.n_in();
  ComplexMatrix lmi(m, m);
  lmi.topLeftCorner(n, n) = out.Q;
  lmi.topRightCorner(n, r.n_in()) = out.S;
  lmi.bottomLeftCorner(r.n_in(), n) = out.S.adjoint();
  lmi.bottomRightCorner(r.n_in(), r.n_in()) = out.R;
  lmi = 0.5 * (lmi + lmi.adjoint()).eval();
  if (m == 0) {
    out.holds = true;
    out.min_eig = 0.0;
    return out;
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(lmi);
  out.min_eig = solver.eigenvalues().minCoeff();
  out.holds = out.min_eig >= -1e-9 * (1.0 + lmi.norm());
  return out;
}

namespace {

std::vector<int> nested_sizes(int count) {
  std::vector<int> sizes;
  for (int s : {(count + 3) / 4, (count + 1) / 2, count}) {
    if (sizes.empty() || s > sizes.back()) sizes.push_back(s);
  }
  return sizes;
}

KernelInertiaReport finish_report(KernelInertiaReport report) {
  report.kappa_estimate = report.gram_inertia.back().n_minus;
  const size_t levels = report.gram_inertia.size();
  report.stabilized =
      levels >= 2 && report.gram_inertia[levels - 1].n_minus ==
                         report.gram_inertia[levels - 2].n_minus;
  return report;
}

}  // namespace

KernelInertiaReport negative_squares(KernelKind kind, const ComplexFunction& f,
                                     const std::vector<Complex>& grid) {
  if (kind == KernelKind::quat_carat) {
    throw InputError(
        "analysis::negative_squares: quaternionic kernel needs a quaternionic "
        "function handle");
  }
  if (grid.empty()) {
    throw InputError("analysis::negative_squares: empty grid");
  }
  for (const Complex& z : grid) {
    if (z.real() <= 0) {
      throw InputError(
          "analysis::negative_squares: grid must lie in the open right "
          "half-plane");
    }
  }
  std::vector<ComplexMatrix> values;
  values.reserve(grid.size());
  try {
    for (const Complex& z : grid) values.push_back(f(z));
  } catch (const PoleError& e) {
    throw InputError(std::string("analysis::negative_squares: grid point on a "
                                 "pole: ") + e.what());
  }
  const int n = static_cast<int>(values[0].rows());
  const int m = static_cast<int>(grid.size());

  ComplexMatrix gram(n * m, n * m);
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      const Complex denom = grid[a] + std::conj(grid[b]);
      ComplexMatrix num;
      if (kind == KernelKind::carat) {
        num = values[a] + values[b].adjoint();
      } else {
        num = id - values[a] * values[b].adjoint();
      }
      gram.block(a * n, b * n, n, n) = num / denom;
    }
  }
  gram = 0.5 * (gram + gram.adjoint()).eval();

  KernelInertiaReport report;
  report.grid_complex = grid;
  for (int size : nested_sizes(m)) {
    const ComplexMatrix sub = gram.topLeftCorner(size * n, size * n);
    report.gram_inertia.push_back(
        linalg::inertia(sub, 1e-8 * (1.0 + sub.norm())));
  }
  return finish_report(std::move(report));
}

KernelInertiaReport negative_squares(const slicefun::QuatFunction& f,
                                     const std::vector<Quaternion>& grid) {
  if (grid.empty()) {
    throw InputError("analysis::negative_squares: empty grid");
  }
  for (const Quaternion& p : grid) {
    if (p.real() <= 0) {
      throw InputError(
          "analysis::negative_squares: grid must lie in the open right "
          "half-space");
    }
  }
  const int m = static_cast<int>(grid.size());
  std::vector<std::vector<QuatMatrix>> blocks(static_cast<size_t>(m));
  int n = 0;
  try {
    for (int a = 0; a < m; ++a) {
      blocks[a].reserve(static_cast<size_t>(m));
      for (int b = 0; b < m; ++b) {
        blocks[a].push_back(slicefun::carat_kernel(f, grid[a], grid[b]));
      }
    }
    n = blocks[0][0].rows();
  } catch (const PoleError& e) {
    throw InputError(std::string("analysis::negative_squares: grid point on a "
                                 "pole sphere: ") + e.what());
  }

  KernelInertiaReport report;
  report.grid_quat = grid;
  for (int size : nested_sizes(m)) {
    QuatMatrix gram(size * n, size * n);
    for (int a = 0; a < size; ++a) {
      for (int b = 0; b < size; ++b) {
        const QuatMatrix& blk = blocks[a][b];
        for (int i = 0; i < n; ++i) {
          for (int j = 0; j < n; ++j) gram(a * n + i, b * n + j) = blk(i, j);
        }
      }
    }
    QuatMatrix sym = (gram + gram.adjoint()) * 0.5;
    report.gram_inertia.push_back(
        quat::quat_hermitian_inertia(sym, 1e-8 * (1.0 + sym.norm())));
  }
  return finish_report(std::move(report));
}

namespace {

double golden_fraction(int m) {
  const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
  const double t = m / golden;
  return t - std::floor(t);
}

}  // namespace

std::vector<Complex> default_complex_grid(int count) {
  std::vector<Complex> out;
  out.reserve(static_cast<size_t>(count));
  for (int m = 0; m < count; ++m) {
    const double r = 0.1 * std::pow(50.0, count > 1 ? m / (count - 1.0) : 0.5);
    const double theta = (golden_fraction(m) - 0.5) * (M_PI - 0.2);
    out.push_back(std::polar(r, theta));
  }
  return out;
}

std::vector<Quaternion> default_quat_grid(int count) {
  const auto units = quat::unit_sphere_samples(std::max(8, count / 2));
  std::vector<Quaternion> out;
  out.reserve(static_cast<size_t>(count));
  for (int m = 0; m < count; ++m) {
    const double r = 0.1 * std::pow(50.0, count > 1 ? m / (count - 1.0) : 0.5);
    const double theta = (golden_fraction(m) - 0.5) * (M_PI - 0.2);
    const Complex z = std::polar(r, theta);
    const Quaternion unit = (m % 3 == 0)
                                ? Quaternion::i()
                                : units[static_cast<size_t>(m) % units.size()];
    out.push_back(Quaternion(z.real(), 0, 0, 0) + std::abs(z.imag()) * unit);
  }
  return out;
}

namespace {

template <typename Value, typename Report>
void fold_boundary(Report& report, bool& any, double eig, const Value& point) {
  if (!any || eig < report.min_eig) {
    report.min_eig = eig;
    report.worst_point = point;
  }
  any = true;
}

std::vector<double> boundary_parameters(int samples) {
  std::vector<double> ts{0.0};
  const int half = std::max(1, (samples - 1) / 2);
  for (int m = 0; m < half; ++m) {
    const double t = 0.01 * std::pow(10.0, 4.0 * m / std::max(1, half - 1));
    ts.push_back(t);
    ts.push_back(-t);
  }
  return ts;
}

double min_eig_hermitian_part(const ComplexMatrix& m) {
  const ComplexMatrix herm = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(herm);
  return solver.eigenvalues().minCoeff();
}

}  // namespace

BoundaryReport boundary_positivity(const Realization& r, int samples) {
  BoundaryReport report;
  bool any = false;
  for (double y : boundary_parameters(samples)) {
    const Complex z(0, y);
    try {
      fold_boundary(report, any, min_eig_hermitian_part(realization::evaluate(r, z)),
                    z);
    } catch (const PoleError&) {
    }
  }
  if (!any) {
    throw InputError("analysis::boundary_positivity: all samples hit poles");
  }
  return report;
}

BoundaryReport boundary_positivity(const poly::MatrixPolynomial& phi, int samples) {
  BoundaryReport report;
  bool any = false;
  for (double y : boundary_parameters(samples)) {
    const Complex z(0, y);
    fold_boundary(report, any, min_eig_hermitian_part(phi(z)), z);
  }
  return report;
}

double quat_min_eig_hermitian_part(const QuatMatrix& m) {
  const QuatMatrix herm = (m + m.adjoint()) * 0.5;
  const ComplexMatrix lift = quat::chi(herm);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(
      0.5 * (lift + lift.adjoint()));
  return solver.eigenvalues().minCoeff();
}

namespace {

template <typename Eval>
QuatBoundaryReport quat_boundary_impl(const Eval& eval, int samples) {
  QuatBoundaryReport report;
  bool any = false;
  const auto units = quat::unit_sphere_samples(20);
  const auto ts = boundary_parameters(std::max(5, samples / 4));
  for (double t : ts) {
    for (const Quaternion& unit : units) {
      const Quaternion p = t * unit;
      try {
        fold_boundary(report, any, quat_min_eig_hermitian_part(eval(p)), p);
      } catch (const PoleError&) {
      }
      if (t == 0.0) break;  // t = 0 gives the same point for every unit
    }
  }
  if (!any) {
    throw InputError("analysis::boundary_positivity: all samples hit poles");
  }
  return report;
}

}  // namespace

QuatBoundaryReport boundary_positivity(const QuatRealization& r, int samples) {
  return quat_boundary_impl(
      [&](const Quaternion& p) { return realization::evaluate_slice(r, p); },
      samples);
}

QuatBoundaryReport boundary_positivity(const slicefun::SlicePolynomial& phi,
                                       int samples) {
  return quat_boundary_impl([&](const Quaternion& p) { return phi(p); }, samples);
}

bool is_even(const Realization& r) {
  const Realization m = realization::minimize(r);
  try {
    solve_structure_H(m);
    return true;
  } catch (const NotEvenError&) {
    return false;
  }
}

bool is_even(const QuatRealization& r) {
  const QuatRealization rs = realization::sharp(r);
  const Realization lift = realization::chi_lift(r);
  // Real sample points off the lifted spectrum.
  double radius = 1.0;
  for (const Complex& p : realization::poles(lift)) {
    radius = std::max(radius, std::abs(p));
  }
  double scale = 0.0;
  double defect = 0.0;
  int used = 0;
  for (int m = 0; m < 24 && used < 8; ++m) {
    const double x = (m % 2 == 0 ? 1.0 : -1.0) *
                     radius * (1.1 + 0.3 * (m / 2)) ;
    const Quaternion p(x, 0, 0, 0);
    try {
      const QuatMatrix a = realization::evaluate_slice(r, p);
      const QuatMatrix b = realization::evaluate_slice(rs, p);
      defect = std::max(defect, (a - b).norm());
      scale = std::max(scale, a.norm());
      ++used;
    } catch (const PoleError&) {
    }
  }
  if (used == 0) return false;
  if (defect > 1e-8 * (1.0 + scale)) return false;
  return is_even(realization::minimize(lift));
}

}  // namespace gpe::analysis
