#include "gpe/realization.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace gpe::realization {

using quat::QuatMatrix;
using quat::Quaternion;

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw InputError(msg);
}

std::vector<Complex> spectrum(const ComplexMatrix& a) {
  if (a.rows() == 0) return {};
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(a, false);
  if (solver.info() != Eigen::Success) {
    throw NumericalFailure("realization: eigenvalue computation failed");
  }
  return {solver.eigenvalues().data(), solver.eigenvalues().data() + a.rows()};
}

// Deterministic low-discrepancy angle sequence.
double golden_angle(int m) {
  const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
  const double t = m / golden;
  return 2.0 * M_PI * (t - std::floor(t)) - M_PI;
}

QuatMatrix quat_block_embed(const QuatMatrix& a11, const QuatMatrix& a12,
                            const QuatMatrix& a21, const QuatMatrix& a22) {
  QuatMatrix out(a11.rows() + a21.rows(), a11.cols() + a12.cols());
  for (int i = 0; i < a11.rows(); ++i) {
    for (int j = 0; j < a11.cols(); ++j) out(i, j) = a11(i, j);
    for (int j = 0; j < a12.cols(); ++j) out(i, j + a11.cols()) = a12(i, j);
  }
  for (int i = 0; i < a21.rows(); ++i) {
    for (int j = 0; j < a21.cols(); ++j) out(i + a11.rows(), j) = a21(i, j);
    for (int j = 0; j < a22.cols(); ++j)
      out(i + a11.rows(), j + a11.cols()) = a22(i, j);
  }
  return out;
}

QuatMatrix quat_vstack(const QuatMatrix& top, const QuatMatrix& bottom) {
  QuatMatrix out(top.rows() + bottom.rows(), top.cols());
  for (int i = 0; i < top.rows(); ++i)
    for (int j = 0; j < top.cols(); ++j) out(i, j) = top(i, j);
  for (int i = 0; i < bottom.rows(); ++i)
    for (int j = 0; j < bottom.cols(); ++j) out(i + top.rows(), j) = bottom(i, j);
  return out;
}

QuatMatrix quat_hstack(const QuatMatrix& left, const QuatMatrix& right) {
  QuatMatrix out(left.rows(), left.cols() + right.cols());
  for (int i = 0; i < left.rows(); ++i) {
    for (int j = 0; j < left.cols(); ++j) out(i, j) = left(i, j);
    for (int j = 0; j < right.cols(); ++j) out(i, j + left.cols()) = right(i, j);
  }
  return out;
}

}  // namespace

Realization Realization::constant(const ComplexMatrix& d) {
  Realization r;
  r.A = ComplexMatrix(0, 0);
  r.B = ComplexMatrix(0, d.cols());
  r.C = ComplexMatrix(d.rows(), 0);
  r.D = d;
  return r;
}

void Realization::validate() const {
  require(A.rows() == A.cols(), "Realization: A must be square");
  require(B.rows() == A.rows(), "Realization: B row count != state dim");
  require(C.cols() == A.rows(), "Realization: C col count != state dim");
  require(D.rows() == C.rows() && D.cols() == B.cols(),
          "Realization: D dimensions inconsistent with B, C");
  if (!A.allFinite() || !B.allFinite() || !C.allFinite() || !D.allFinite()) {
    throw InputError("Realization: non-finite entries");
  }
}

QuatRealization QuatRealization::constant(const QuatMatrix& d) {
  QuatRealization r;
  r.A = QuatMatrix(0, 0);
  r.B = QuatMatrix(0, d.cols());
  r.C = QuatMatrix(d.rows(), 0);
  r.D = d;
  return r;
}

void QuatRealization::validate() const {
  require(A.rows() == A.cols(), "QuatRealization: A must be square");
  require(B.rows() == A.rows(), "QuatRealization: B row count != state dim");
  require(C.cols() == A.rows(), "QuatRealization: C col count != state dim");
  require(D.rows() == C.rows() && D.cols() == B.cols(),
          "QuatRealization: D dimensions inconsistent with B, C");
}

ComplexMatrix evaluate(const Realization& r, Complex z) {
  r.validate();
  if (r.state_dim() == 0) return r.D;
  const double guard = tol::pole(r.A.norm());
  Complex nearest(0, 0);
  double dist = -1;
  for (const Complex& lambda : spectrum(r.A)) {
    const double d = std::abs(z - lambda);
    if (dist < 0 || d < dist) {
      dist = d;
      nearest = lambda;
    }
  }
  if (dist >= 0 && dist < guard) {
    throw PoleError("realization::evaluate: point within pole tolerance", nearest);
  }
  const int n = r.state_dim();
  ComplexMatrix resolvent =
      (z * ComplexMatrix::Identity(n, n) - r.A).partialPivLu().solve(r.B);
  return r.D + r.C * resolvent;
}

std::vector<Complex> poles(const Realization& r) { return spectrum(r.A); }

std::vector<Complex> zeros(const Realization& r) {
  require(r.D.rows() == r.D.cols(), "realization::zeros: D must be square");
  Eigen::PartialPivLU<ComplexMatrix> lu(r.D);
  const ComplexMatrix dinv_c = lu.solve(r.C);
  return spectrum(r.A - r.B * dinv_c);
}

Realization product(const Realization& alpha, const Realization& beta) {
  alpha.validate();
  beta.validate();
  require(alpha.n_in() == beta.n_out(),
          "realization::product: inner dimensions do not match");
  const int na = alpha.state_dim(), nb = beta.state_dim();
  Realization out;
  out.A = ComplexMatrix::Zero(na + nb, na + nb);
  out.A.topLeftCorner(na, na) = alpha.A;
  out.A.topRightCorner(na, nb) = alpha.B * beta.C;
  out.A.bottomRightCorner(nb, nb) = beta.A;
  out.B = ComplexMatrix(na + nb, beta.n_in());
  out.B.topRows(na) = alpha.B * beta.D;
  out.B.bottomRows(nb) = beta.B;
  out.C = ComplexMatrix(alpha.n_out(), na + nb);
  out.C.leftCols(na) = alpha.C;
  out.C.rightCols(nb) = alpha.D * beta.C;
  out.D = alpha.D * beta.D;
  return out;
}

Realization sharp(const Realization& r) {
  Realization out;
  out.A = -r.A.adjoint();
  out.B = r.C.adjoint();
  out.C = -r.B.adjoint();
  out.D = r.D.adjoint();
  return out;
}

Realization gpe_from_factor(const Realization& l) {
  l.validate();
  const int n = l.state_dim();
  Realization out;
  out.A = ComplexMatrix::Zero(2 * n, 2 * n);
  out.A.topLeftCorner(n, n) = l.A;
  out.A.topRightCorner(n, n) = l.B * l.B.adjoint();
  out.A.bottomRightCorner(n, n) = -l.A.adjoint();
  out.B = ComplexMatrix(2 * n, l.n_out());
  out.B.topRows(n) = l.B * l.D.adjoint();
  out.B.bottomRows(n) = -l.C.adjoint();
  out.C = ComplexMatrix(l.n_out(), 2 * n);
  out.C.leftCols(n) = l.C;
  out.C.rightCols(n) = l.D * l.B.adjoint();
  out.D = l.D * l.D.adjoint();
  return out;
}

MinimalityReport minimality_report(const Realization& r) {
  r.validate();
  const int n = r.state_dim();
  MinimalityReport report;
  report.controllable = true;
  report.observable = true;
  if (n == 0) return report;
  const auto eigvals = spectrum(r.A);
  for (const Complex& lambda : eigvals) {
    const ComplexMatrix shifted =
        r.A - lambda * ComplexMatrix::Identity(n, n);
    ComplexMatrix ctrb(n, n + r.n_in());
    ctrb.leftCols(n) = shifted;
    ctrb.rightCols(r.n_in()) = r.B;
    if (linalg::numerical_rank(ctrb) < n) {
      report.controllable = false;
      ComplexMatrix left_null = linalg::nullspace(ctrb.adjoint());
      if (left_null.cols() > 0) {
        report.uncontrollable_witnesses.emplace_back(lambda, left_null.col(0));
      }
    }
    ComplexMatrix obs(n + r.n_out(), n);
    obs.topRows(n) = shifted;
    obs.bottomRows(r.n_out()) = r.C;
    if (linalg::numerical_rank(obs) < n) {
      report.observable = false;
      ComplexMatrix right_null = linalg::nullspace(obs);
      if (right_null.cols() > 0) {
        report.unobservable_witnesses.emplace_back(lambda, right_null.col(0));
      }
    }
  }
  return report;
}

Realization minimize(const Realization& r) {
  r.validate();
  const int n = r.state_dim();
  if (n == 0) return r;

  // Controllable restriction.
  ComplexMatrix krylov(n, n * r.n_in());
  ComplexMatrix block = r.B;
  for (int k = 0; k < n; ++k) {
    krylov.middleCols(k * r.n_in(), r.n_in()) = block;
    block = r.A * block;
  }
  const ComplexMatrix u = linalg::orthonormal_range(krylov);
  ComplexMatrix a1 = u.adjoint() * r.A * u;
  ComplexMatrix b1 = u.adjoint() * r.B;
  ComplexMatrix c1 = r.C * u;

  // Quotient of the unobservable subspace.
  const int m = static_cast<int>(a1.rows());
  ComplexMatrix obs(m * r.n_out(), std::max(m, 0));
  if (m > 0) {
    ComplexMatrix row = c1;
    for (int k = 0; k < m; ++k) {
      obs.middleRows(k * r.n_out(), r.n_out()) = row;
      row = row * a1;
    }
  }
  const ComplexMatrix w = linalg::orthonormal_range(obs.adjoint());
  Realization out;
  out.A = w.adjoint() * a1 * w;
  out.B = w.adjoint() * b1;
  out.C = c1 * w;
  out.D = r.D;
  return out;
}

Degrees degrees(const Realization& r, Complex z0) {
  const Realization m = minimize(r);
  Degrees out;
  out.mcmillan = m.state_dim();
  const double close = 1e-6 * (1.0 + m.A.norm() + std::abs(z0));
  for (const Complex& lambda : spectrum(m.A)) {
    if (std::abs(lambda - z0) <= close) ++out.local;
  }
  return out;
}

ComplexMatrix similarity(const Realization& r1, const Realization& r2) {
  r1.validate();
  r2.validate();
  require(r1.state_dim() == r2.state_dim() && r1.n_in() == r2.n_in() &&
              r1.n_out() == r2.n_out(),
          "realization::similarity: dimensions differ");
  const double dscale = 1.0 + r1.D.norm() + r2.D.norm();
  if ((r1.D - r2.D).norm() > 1e-9 * dscale) {
    throw InputError("realization::similarity: realizations have different D");
  }
  if (!minimality_report(r1).minimal() || !minimality_report(r2).minimal()) {
    throw InputError("realization::similarity: both realizations must be minimal");
  }
  const int n = r1.state_dim();
  if (n == 0) return ComplexMatrix::Identity(0, 0);

  const int n_in = r1.n_in(), n_out = r1.n_out();
  const int rows = n * n + n * n_in + n_out * n;
  ComplexMatrix k = ComplexMatrix::Zero(rows, n * n);
  ComplexVector rhs = ComplexVector::Zero(rows);
  // vec(S A1) = (A1^T (x) I) vec S, vec(A2 S) = (I (x) A2) vec S.
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      for (int t = 0; t < n; ++t) {
        k(i + j * n, i + t * n) += r1.A(t, j);  // (A1^T (x) I)
      }
      for (int t = 0; t < n; ++t) {
        k(i + j * n, t + j * n) -= r2.A(i, t);  // -(I (x) A2)
      }
    }
  }
  int row0 = n * n;
  // vec(S B1) = (B1^T (x) I) vec S = vec(B2)
  for (int j = 0; j < n_in; ++j) {
    for (int i = 0; i < n; ++i) {
      for (int t = 0; t < n; ++t) {
        k(row0 + i + j * n, i + t * n) += r1.B(t, j);
      }
      rhs(row0 + i + j * n) = r2.B(i, j);
    }
  }
  row0 += n * n_in;
  // vec(C2 S) = (I (x) C2) vec S = vec(C1)
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n_out; ++i) {
      for (int t = 0; t < n; ++t) {
        k(row0 + i + j * n_out, t + j * n) += r2.C(i, t);
      }
      rhs(row0 + i + j * n_out) = r1.C(i, j);
    }
  }
  Eigen::CompleteOrthogonalDecomposition<ComplexMatrix> cod(k);
  const ComplexVector s_vec = cod.solve(rhs);
  const double residual = (k * s_vec - rhs).norm();
  ComplexMatrix s(n, n);
  for (int j = 0; j < n; ++j) s.col(j) = s_vec.segment(j * n, n);
  const double scale = 1.0 + r1.A.norm() + r2.A.norm() + r1.B.norm() +
                       r2.B.norm() + r1.C.norm() + r2.C.norm();
  if (residual > 1e-7 * scale * (1.0 + s.norm())) {
    throw InputError(
        "realization::similarity: realizations are not similar (residual " +
        std::to_string(residual) + ")");
  }
  if (linalg::numerical_rank(s) < n) {
    throw NumericalFailure("realization::similarity: intertwiner is singular");
  }
  return s;
}

std::vector<Complex> sample_points(const Realization& r, int count) {
  std::vector<Complex> avoid = poles(r);
  if (r.D.rows() == r.D.cols() && r.D.rows() > 0 &&
      linalg::numerical_rank(r.D) == r.D.rows()) {
    const auto zs = zeros(r);
    avoid.insert(avoid.end(), zs.begin(), zs.end());
  }
  double radius = 1.0;
  for (const Complex& p : avoid) radius = std::max(radius, std::abs(p));
  const double lo = 0.35 * radius, hi = 2.6 * radius;
  const double clearance = 1e-3 * (1.0 + radius);

  std::vector<Complex> out;
  int m = 0;
  while (static_cast<int>(out.size()) < count && m < 80 * count + 200) {
    const double frac = (m % 37) / 36.0;
    const double rr = lo * std::pow(hi / lo, frac);
    const Complex z = std::polar(rr, golden_angle(m));
    ++m;
    bool ok = true;
    for (const Complex& p : avoid) {
      if (std::abs(z - p) < clearance) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(z);
  }
  if (static_cast<int>(out.size()) < count) {
    throw NumericalFailure("realization::sample_points: annulus exhausted");
  }
  return out;
}

double evaluation_distance(const Realization& r1, const Realization& r2,
                           int count) {
  const auto pts = sample_points(r1, count);
  double worst = 0;
  for (const Complex& z : pts) {
    try {
      worst = std::max(worst, (evaluate(r1, z) - evaluate(r2, z)).norm());
    } catch (const PoleError&) {
      // Skip samples that collide with poles of the other realization.
    }
  }
  return worst;
}

// --- quaternionic side -----------------------------------------------------

Realization chi_lift(const QuatRealization& r) {
  Realization out;
  out.A = quat::chi(r.A);
  out.B = quat::chi(r.B);
  out.C = quat::chi(r.C);
  out.D = quat::chi(r.D);
  return out;
}

quat::QuatMatrix evaluate_slice(const QuatRealization& r, const Quaternion& p) {
  r.validate();
  const Realization lift = chi_lift(r);
  const auto sd = quat::slice_decompose(p);
  const Complex zp(sd.x, sd.y), zm(sd.x, -sd.y);

  const int n_out = r.n_out(), n_in = r.n_in();
  auto slice_value = [&](Complex z) {
    const ComplexMatrix f = evaluate(lift, z);
    QuatMatrix q(n_out, n_in);
    for (int i = 0; i < n_out; ++i) {
      for (int j = 0; j < n_in; ++j) {
        q(i, j) = Quaternion::from_parts(f(i, j), f(i, j + n_in));
      }
    }
    return q;
  };

  const QuatMatrix f_plus = slice_value(zp);
  if (sd.y == 0.0) return f_plus;
  const QuatMatrix f_minus = slice_value(zm);
  const QuatMatrix alpha = (f_plus + f_minus) * 0.5;
  const QuatMatrix beta =
      (f_plus - f_minus).scale_left(Quaternion(0, -0.5, 0, 0));
  return alpha + beta.scale_left(*sd.I);
}

QuatRealization product(const QuatRealization& alpha, const QuatRealization& beta) {
  alpha.validate();
  beta.validate();
  require(alpha.n_in() == beta.n_out(),
          "realization::product: inner dimensions do not match");
  const int na = alpha.state_dim(), nb = beta.state_dim();
  QuatRealization out;
  out.A = quat_block_embed(alpha.A, alpha.B * beta.C,
                           QuatMatrix::zero(nb, na), beta.A);
  out.B = quat_vstack(alpha.B * beta.D, beta.B);
  out.C = quat_hstack(alpha.C, alpha.D * beta.C);
  out.D = alpha.D * beta.D;
  return out;
}

QuatRealization sharp(const QuatRealization& r) {
  QuatRealization out;
  out.A = r.A.adjoint() * (-1.0);
  out.B = r.C.adjoint();
  out.C = r.B.adjoint() * (-1.0);
  out.D = r.D.adjoint();
  return out;
}

QuatRealization gpe_from_factor(const QuatRealization& l) {
  l.validate();
  const int n = l.state_dim();
  QuatRealization out;
  out.A = quat_block_embed(l.A, l.B * l.B.adjoint(), QuatMatrix::zero(n, n),
                           l.A.adjoint() * (-1.0));
  out.B = quat_vstack(l.B * l.D.adjoint(), l.C.adjoint() * (-1.0));
  out.C = quat_hstack(l.C, l.D * l.B.adjoint());
  out.D = l.D * l.D.adjoint();
  return out;
}

Realization restore_chi_structure(const Realization& minimal_lift) {
  const Realization& r = minimal_lift;
  r.validate();
  if (r.state_dim() % 2 != 0 || r.n_out() % 2 != 0 || r.n_in() % 2 != 0) {
    throw NumericalFailure(
        "realization::restore_chi_structure: odd lifted dimensions");
  }
  const int m = r.state_dim() / 2;
  const int no = r.n_out() / 2, ni = r.n_in() / 2;
  if (m == 0) {
    Realization out = r;
    return out;
  }
  const ComplexMatrix e_out = quat::e_matrix(no);
  const ComplexMatrix e_in = quat::e_matrix(ni);
  if (quat::chi_symmetry_defect(r.D) > 1e-8 * (1.0 + r.D.norm())) {
    throw NumericalFailure(
        "realization::restore_chi_structure: value at infinity is not in the "
        "range of chi");
  }

  Realization conjugated;
  conjugated.A = r.A.conjugate();
  conjugated.B = r.B.conjugate() * e_in;
  conjugated.C = -e_out * r.C.conjugate();  // E^{-1} = -E
  conjugated.D = r.D;

  const ComplexMatrix s = similarity(r, conjugated);
  const ComplexMatrix ss_bar = s * s.conjugate();
  const int two_m = 2 * m;
  if ((ss_bar + ComplexMatrix::Identity(two_m, two_m)).norm() >
      1e-7 * (1.0 + s.norm() * s.norm())) {
    throw NumericalFailure(
        "realization::restore_chi_structure: intertwiner fails S conj(S) = -I");
  }

  // Antilinear structure J x = -conj(S x); greedy J-invariant basis.
  auto apply_j = [&](const ComplexVector& v) -> ComplexVector {
    return -(s * v).conjugate();
  };
  ComplexMatrix q(two_m, two_m);
  int filled = 0;
  while (filled < m) {
    ComplexMatrix span(two_m, 2 * filled);
    for (int t = 0; t < filled; ++t) {
      span.col(2 * t) = q.col(t);
      span.col(2 * t + 1) = q.col(m + t);
    }
    const ComplexMatrix ortho = linalg::orthonormal_range(span);
    double best = -1;
    ComplexVector pick;
    for (int c = 0; c < two_m; ++c) {
      ComplexVector cand = ComplexVector::Zero(two_m);
      cand(c) = 1.0;
      if (ortho.cols() > 0) cand -= ortho * (ortho.adjoint() * cand);
      if (cand.norm() > best) {
        best = cand.norm();
        pick = cand;
      }
    }
    pick.normalize();
    q.col(filled) = pick;
    q.col(m + filled) = apply_j(pick);
    ++filled;
  }
  const ComplexMatrix t = q.inverse();

  Realization out;
  out.A = t * r.A * q;
  out.B = t * r.B;
  out.C = r.C * q;
  out.D = r.D;
  const double scale = 1.0 + out.A.norm() + out.B.norm() + out.C.norm();
  const double defect =
      quat::chi_symmetry_defect(out.A) + quat::chi_symmetry_defect(out.B) +
      quat::chi_symmetry_defect(out.C) + quat::chi_symmetry_defect(out.D);
  if (defect > 1e-7 * scale) {
    throw NumericalFailure(
        "realization::restore_chi_structure: transformed realization left the "
        "range of chi (defect " + std::to_string(defect) + ")");
  }
  return out;
}

QuatRealization minimize(const QuatRealization& r) {
  r.validate();
  const Realization lift = chi_lift(r);
  const Realization ml = minimize(lift);
  if (ml.state_dim() == lift.state_dim()) return r;  // already minimal
  const Realization structured = restore_chi_structure(ml);
  QuatRealization out;
  out.A = quat::chi_inverse(structured.A);
  out.B = quat::chi_inverse(structured.B);
  out.C = quat::chi_inverse(structured.C);
  out.D = quat::chi_inverse(structured.D);
  return out;
}

std::vector<Quaternion> quat_sample_points(const QuatRealization& r, int count) {
  const Realization lift = chi_lift(r);
  const auto pole_set = poles(lift);
  double radius = 1.0;
  for (const Complex& p : pole_set) radius = std::max(radius, std::abs(p));
  const double lo = 0.35 * radius, hi = 2.6 * radius;
  const double clearance = 1e-3 * (1.0 + radius);
  const auto units = quat::unit_sphere_samples(std::max(8, count));

  std::vector<Quaternion> out;
  int m = 0;
  while (static_cast<int>(out.size()) < count && m < 80 * count + 200) {
    const double frac = (m % 37) / 36.0;
    const double rr = lo * std::pow(hi / lo, frac);
    const Complex z = std::polar(rr, golden_angle(m));
    const int idx = m++;
    // A pole sphere is hit exactly when x + i|y| meets the lifted spectrum.
    bool ok = true;
    for (const Complex& p : pole_set) {
      if (std::abs(Complex(z.real(), std::abs(z.imag())) - p) < clearance) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    Quaternion unit = (idx % 3 == 0)
                          ? Quaternion::i()
                          : units[static_cast<size_t>(idx) % units.size()];
    out.push_back(Quaternion(z.real(), 0, 0, 0) + std::abs(z.imag()) * unit);
  }
  if (static_cast<int>(out.size()) < count) {
    throw NumericalFailure("realization::quat_sample_points: annulus exhausted");
  }
  return out;
}

double evaluation_distance(const QuatRealization& r1, const QuatRealization& r2,
                           int count) {
  const auto pts = quat_sample_points(r1, count);
  double worst = 0;
  for (const Quaternion& p : pts) {
    try {
      worst = std::max(worst,
                       (evaluate_slice(r1, p) - evaluate_slice(r2, p)).norm());
    } catch (const PoleError&) {
    }
  }
  return worst;
}

}  // namespace gpe::realization
