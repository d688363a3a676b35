#include "gpe/linalg.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace gpe::linalg {

namespace {

void check_finite(const ComplexMatrix& m, const char* who) {
  if (!m.allFinite()) {
    throw InputError(std::string(who) + ": matrix has non-finite entries");
  }
}

Eigen::JacobiSVD<ComplexMatrix> svd_of(const ComplexMatrix& m) {
  return Eigen::JacobiSVD<ComplexMatrix>(
      m, Eigen::ComputeThinU | Eigen::ComputeFullV);
}

int rank_from_svd(const Eigen::JacobiSVD<ComplexMatrix>& svd, int max_dim) {
  if (svd.singularValues().size() == 0) return 0;
  const double thresh = tol::rank(max_dim, svd.singularValues()(0));
  int r = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i) {
    if (svd.singularValues()(i) > thresh) ++r;
  }
  return r;
}

}  // namespace

int EigenStructure::dimension() const {
  int n = 0;
  for (const auto& g : groups) n += g.algebraic_multiplicity;
  return n;
}

int numerical_rank(const ComplexMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  auto svd = svd_of(m);
  return rank_from_svd(svd, static_cast<int>(std::max(m.rows(), m.cols())));
}

ComplexMatrix orthonormal_range(const ComplexMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return ComplexMatrix(m.rows(), 0);
  auto svd = svd_of(m);
  const int r = rank_from_svd(svd, static_cast<int>(std::max(m.rows(), m.cols())));
  return svd.matrixU().leftCols(r);
}

ComplexMatrix nullspace(const ComplexMatrix& m) {
  if (m.cols() == 0) return ComplexMatrix(0, 0);
  if (m.rows() == 0) return ComplexMatrix::Identity(m.cols(), m.cols());
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullV);
  const int r = rank_from_svd(svd, static_cast<int>(std::max(m.rows(), m.cols())));
  return svd.matrixV().rightCols(m.cols() - r);
}

EigenStructure eig(const ComplexMatrix& a) {
  check_finite(a, "linalg::eig");
  if (a.rows() != a.cols()) {
    throw InputError("linalg::eig: matrix must be square");
  }
  const int n = static_cast<int>(a.rows());
  EigenStructure out;
  out.rank_tolerance = tol::rank(n, a.norm());
  if (n == 0) return out;

  Eigen::ComplexEigenSolver<ComplexMatrix> solver(a, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw NumericalFailure("linalg::eig: eigenvalue iteration did not converge");
  }
  std::vector<Complex> vals(solver.eigenvalues().data(),
                            solver.eigenvalues().data() + n);
  std::sort(vals.begin(), vals.end(), [](Complex l, Complex r) {
    if (l.real() != r.real()) return l.real() < r.real();
    return l.imag() < r.imag();
  });

  const double cluster_tol = tol::cluster(a.norm());
  std::vector<std::vector<Complex>> clusters;
  for (const Complex& v : vals) {
    bool merged = false;
    for (auto& c : clusters) {
      Complex center(0, 0);
      for (const Complex& x : c) center += x;
      center /= static_cast<double>(c.size());
      if (std::abs(v - center) <= cluster_tol) {
        c.push_back(v);
        merged = true;
        break;
      }
    }
    if (!merged) clusters.push_back({v});
  }

  for (const auto& c : clusters) {
    Complex lambda(0, 0);
    for (const Complex& x : c) lambda += x;
    lambda /= static_cast<double>(c.size());
    const int mult = static_cast<int>(c.size());

    EigenvalueGroup group;
    group.value = lambda;
    group.algebraic_multiplicity = mult;

    // Nested nullspaces of (A - lambda I)^j until the generalized eigenspace
    // has full algebraic dimension.
    const ComplexMatrix shifted = a - lambda * ComplexMatrix::Identity(n, n);
    std::vector<ComplexMatrix> kernels;  // kernels[j-1] = null (shifted^j)
    ComplexMatrix power = ComplexMatrix::Identity(n, n);
    int reached = 0;
    for (int j = 1; j <= n; ++j) {
      power = shifted * power;
      ComplexMatrix k = nullspace(power);
      kernels.push_back(k);
      reached = static_cast<int>(k.cols());
      if (reached >= mult) break;
    }
    if (reached < mult) {
      throw NumericalFailure(
          "linalg::eig: generalized eigenspace dimension did not reach the "
          "algebraic multiplicity");
    }
    const int s = static_cast<int>(kernels.size());
    auto level_dim = [&](int j) {
      if (j <= 0) return 0;
      if (j > s) return static_cast<int>(kernels.back().cols());
      return static_cast<int>(kernels[j - 1].cols());
    };

    // Pick chain heads from the top level down: at level j we need
    // (d_j - d_{j-1}) - (d_{j+1} - d_j) new chains of exact length j.
    std::vector<ComplexVector> used;  // vectors whose span a new head must leave
    for (int j = s; j >= 1; --j) {
      const int want = (level_dim(j) - level_dim(j - 1)) -
                       (j < s ? level_dim(j + 1) - level_dim(j) : 0);
      for (int t = 0; t < want; ++t) {
        // Span to avoid: K_{j-1} plus level-j vectors of existing chains.
        ComplexMatrix avoid(n, 0);
        if (j >= 2) avoid = kernels[j - 2];
        for (const auto& chain : group.chains) {
          if (chain.length() >= j) {
            avoid.conservativeResize(n, avoid.cols() + 1);
            avoid.col(avoid.cols() - 1) = chain.vectors[j - 1];
          }
        }
        ComplexMatrix q = orthonormal_range(avoid);
        // Candidate with the largest component outside the avoided span.
        const ComplexMatrix& kj = kernels[j - 1];
        double best = -1.0;
        ComplexVector head;
        for (int cidx = 0; cidx < kj.cols(); ++cidx) {
          ComplexVector res = kj.col(cidx);
          if (q.cols() > 0) res -= q * (q.adjoint() * res);
          if (res.norm() > best) {
            best = res.norm();
            head = res;
          }
        }
        if (best <= out.rank_tolerance) {
          throw NumericalFailure(
              "linalg::eig: failed to extract an independent Jordan chain head");
        }
        head.normalize();
        JordanChain chain;
        chain.vectors.assign(static_cast<size_t>(j), ComplexVector());
        chain.vectors[j - 1] = head;
        for (int t2 = j - 1; t2 >= 1; --t2) {
          chain.vectors[t2 - 1] = shifted * chain.vectors[t2];
        }
        const double base = chain.vectors[0].norm();
        if (base > 0) {
          for (auto& v : chain.vectors) v /= base;
        }
        group.chains.push_back(std::move(chain));
      }
    }
    std::stable_sort(group.chains.begin(), group.chains.end(),
                     [](const JordanChain& l, const JordanChain& r) {
                       return l.length() > r.length();
                     });
    out.groups.push_back(std::move(group));
  }
  return out;
}

SylvesterResult solve_sylvester(const ComplexMatrix& p, const ComplexMatrix& q,
                                const ComplexMatrix& r) {
  check_finite(p, "linalg::solve_sylvester");
  check_finite(q, "linalg::solve_sylvester");
  check_finite(r, "linalg::solve_sylvester");
  if (p.rows() != p.cols() || q.rows() != q.cols()) {
    throw InputError("linalg::solve_sylvester: P and Q must be square");
  }
  if (r.rows() != p.rows() || r.cols() != q.cols()) {
    throw InputError("linalg::solve_sylvester: R dimensions do not match P, Q");
  }
  const int n = static_cast<int>(p.rows());
  const int m = static_cast<int>(q.rows());

  // vec(P X - X Q) = (I (x) P - Q^T (x) I) vec(X), column-major vec.
  ComplexMatrix k = ComplexMatrix::Zero(n * m, n * m);
  for (int j = 0; j < m; ++j) {
    k.block(j * n, j * n, n, n) += p;
    for (int i = 0; i < m; ++i) {
      k.block(i * n, j * n, n, n) -= q(j, i) * ComplexMatrix::Identity(n, n);
    }
  }
  ComplexVector rhs(n * m);
  for (int j = 0; j < m; ++j) rhs.segment(j * n, n) = r.col(j);

  Eigen::CompleteOrthogonalDecomposition<ComplexMatrix> cod(k);
  ComplexVector x = cod.solve(rhs);
  const double scale = p.norm() + q.norm() + 1.0;
  SylvesterResult result;
  result.residual = (k * x - rhs).norm();
  ComplexMatrix xm(n, m);
  for (int j = 0; j < m; ++j) xm.col(j) = x.segment(j * n, n);
  const double accept =
      1e-9 * scale * (xm.norm() + 1.0) + 1e-9 * (r.norm() + 1.0);
  if (result.residual <= accept) {
    result.solved = true;
    result.X = xm;
  }
  return result;
}

Inertia inertia(const ComplexMatrix& h, double tolerance) {
  check_finite(h, "linalg::inertia");
  if (h.rows() != h.cols()) {
    throw InputError("linalg::inertia: matrix must be square");
  }
  const double herm_defect = (h - h.adjoint()).norm();
  if (herm_defect > tolerance * (1.0 + h.norm())) {
    throw InputError("linalg::inertia: matrix is not Hermitian within tolerance");
  }
  ComplexMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw NumericalFailure("linalg::inertia: eigenvalue solve failed");
  }
  Inertia out;
  for (int i = 0; i < solver.eigenvalues().size(); ++i) {
    const double v = solver.eigenvalues()(i);
    if (v > tolerance) {
      ++out.n_plus;
    } else if (v < -tolerance) {
      ++out.n_minus;
    } else {
      ++out.n_zero;
    }
  }
  return out;
}

ComplexMatrix projection_along(const SubspaceBasis& range_space,
                               const SubspaceBasis& kernel_space) {
  const int n = range_space.ambient_dim;
  if (kernel_space.ambient_dim != n) {
    throw InputError("linalg::projection_along: ambient dimensions differ");
  }
  const int p = range_space.dim();
  const int q = kernel_space.dim();
  if (p + q != n) {
    throw InputError(
        "linalg::projection_along: matching condition failed, dim(range) + "
        "dim(kernel) = " +
        std::to_string(p + q) + " but ambient dimension is " + std::to_string(n));
  }
  if (n == 0) return ComplexMatrix(0, 0);
  ComplexMatrix m(n, n);
  if (p > 0) m.leftCols(p) = range_space.basis;
  if (q > 0) m.rightCols(q) = kernel_space.basis;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  const double smin = svd.singularValues()(n - 1);
  if (smin <= tol::rank(n, svd.singularValues()(0))) {
    throw InputError(
        "linalg::projection_along: matching condition failed, range and kernel "
        "do not form a direct sum (smallest singular value " +
        std::to_string(smin) + ")");
  }
  ComplexMatrix target = ComplexMatrix::Zero(n, n);
  if (p > 0) target.leftCols(p) = range_space.basis;
  // P [U W] = [U 0]  =>  P = [U 0] [U W]^{-1}
  return m.transpose()
      .colPivHouseholderQr()
      .solve(target.transpose())
      .transpose();
}

}  // namespace gpe::linalg
