#include "gpe/interp.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <Eigen/Eigenvalues>

namespace gpe::interp {

using poly::MatrixPolynomial;
using poly::Polynomial;
using quat::Quaternion;
using quat::QuatMatrix;
using slicefun::SlicePolynomial;

namespace {

struct MatrixCondition {
  Complex point;
  ComplexMatrix value;
};
struct VectorCondition {
  Complex point;
  ComplexVector direction;
  ComplexVector target;
};

/// Least-norm coefficient solve for the smallest degree meeting every
/// condition. Matrix conditions fix P(w) entirely; vector ones fix P(w) d = t.
MatrixPolynomial solve_polynomial_conditions(
    int n_rows, int n_cols, const std::vector<MatrixCondition>& matrix_conds,
    const std::vector<VectorCondition>& vector_conds, int max_degree) {
  const int unknown_block = n_rows * n_cols;
  double scale = 1.0;
  for (const auto& c : matrix_conds) scale = std::max(scale, c.value.norm());
  for (const auto& c : vector_conds) scale = std::max(scale, c.target.norm());

  for (int degree = 0; degree <= max_degree; ++degree) {
    const int cols = unknown_block * (degree + 1);
    const int rows = unknown_block * static_cast<int>(matrix_conds.size()) +
                     n_rows * static_cast<int>(vector_conds.size());
    ComplexMatrix k = ComplexMatrix::Zero(rows, cols);
    ComplexVector rhs = ComplexVector::Zero(rows);
    int row0 = 0;
    for (const auto& cond : matrix_conds) {
      Complex power(1, 0);
      for (int a = 0; a <= degree; ++a) {
        for (int e = 0; e < unknown_block; ++e) {
          k(row0 + e, a * unknown_block + e) = power;
        }
        power *= cond.point;
      }
      for (int j = 0; j < n_cols; ++j) {
        for (int i = 0; i < n_rows; ++i) {
          rhs(row0 + i + j * n_rows) = cond.value(i, j);
        }
      }
      row0 += unknown_block;
    }
    for (const auto& cond : vector_conds) {
      Complex power(1, 0);
      for (int a = 0; a <= degree; ++a) {
        for (int i = 0; i < n_rows; ++i) {
          for (int j = 0; j < n_cols; ++j) {
            // coefficient of T_a(i,j), stored column-major inside the block
            k(row0 + i, a * unknown_block + i + j * n_rows) =
                power * cond.direction(j);
          }
        }
        power *= cond.point;
      }
      rhs.segment(row0, n_rows) = cond.target;
      row0 += n_rows;
    }

    Eigen::CompleteOrthogonalDecomposition<ComplexMatrix> cod(k);
    const ComplexVector x = cod.solve(rhs);
    if ((k * x - rhs).norm() <= 1e-9 * (1.0 + scale) * (1.0 + x.norm())) {
      std::vector<ComplexMatrix> coeffs;
      coeffs.reserve(static_cast<size_t>(degree + 1));
      for (int a = 0; a <= degree; ++a) {
        ComplexMatrix c(n_rows, n_cols);
        for (int j = 0; j < n_cols; ++j) {
          c.col(j) = x.segment(a * unknown_block + j * n_rows, n_rows);
        }
        coeffs.push_back(std::move(c));
      }
      MatrixPolynomial out(std::move(coeffs));
      if (out.degree() < 0) out = MatrixPolynomial::constant(
          ComplexMatrix::Zero(n_rows, n_cols));
      return out;
    }
  }
  throw InfeasibleError(
      "interp: polynomial conditions are not satisfiable up to degree " +
      std::to_string(max_degree));
}

ComplexMatrix psd_root(const ComplexMatrix& a) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (a + a.adjoint()));
  RealVector vals = solver.eigenvalues().cwiseMax(0.0);
  return solver.eigenvectors() * vals.array().sqrt().matrix().asDiagonal() *
         solver.eigenvectors().adjoint();
}

bool near_axis(Complex w) { return std::abs(w.real()) <= 1e-9 * (1.0 + std::abs(w)); }

}  // namespace

ComplexMatrix positive_matrix_for(const ComplexVector& xi, const ComplexVector& eta) {
  const double xi_norm = xi.norm();
  if (xi_norm == 0) {
    throw InputError("interp::positive_matrix_for: xi must be nonzero");
  }
  const int n = static_cast<int>(xi.size());
  if (eta.size() != n) {
    throw InputError("interp::positive_matrix_for: dimension mismatch");
  }
  const double eta_norm = eta.norm();
  if (eta_norm <= 1e-14 * xi_norm) {
    return ComplexMatrix::Identity(n, n) -
           (xi * xi.adjoint()) / Complex(xi_norm * xi_norm, 0);
  }
  const Complex pairing = xi.dot(eta);  // xi* eta
  const double mag = xi_norm * eta_norm;
  if (std::abs(pairing.imag()) > 1e-10 * mag || pairing.real() <= 1e-12 * mag) {
    throw InfeasibleError(
        "interp::positive_matrix_for: xi* eta must be positive (got " +
        std::to_string(pairing.real()) + " + " +
        std::to_string(pairing.imag()) + "i)");
  }
  return (eta * eta.adjoint()) / std::conj(pairing);  // eta* xi
}

poly::MatrixPolynomial lagrange_matrix_polynomial(
    const std::vector<Constraint>& constraints) {
  if (constraints.empty()) {
    throw InputError("interp::lagrange_matrix_polynomial: no constraints");
  }
  const int n_rows = static_cast<int>(constraints[0].matrix.rows());
  const int n_cols = static_cast<int>(constraints[0].matrix.cols());
  std::vector<MatrixCondition> conds;
  for (const auto& c : constraints) {
    if (c.matrix.rows() != n_rows || c.matrix.cols() != n_cols) {
      throw InputError("interp::lagrange_matrix_polynomial: shape mismatch");
    }
    if (c.kind == ConstraintKind::value) {
      conds.push_back({c.point, c.matrix});
    } else {
      conds.push_back({-std::conj(c.point), c.matrix.adjoint()});
    }
  }
  for (size_t a = 0; a < conds.size(); ++a) {
    for (size_t b = a + 1; b < conds.size(); ++b) {
      if (std::abs(conds[a].point - conds[b].point) <
          1e-12 * (1.0 + std::abs(conds[a].point))) {
        throw InputError(
            "interp::lagrange_matrix_polynomial: constraint points collide "
            "after mapping sharp-values");
      }
    }
  }
  return solve_polynomial_conditions(n_rows, n_cols, conds, {},
                                     static_cast<int>(conds.size()) - 1);
}

// --- quaternionic two-sided Lagrange ---------------------------------------

namespace {

/// 4x4 real matrices of left and right quaternion multiplication.
Eigen::Matrix4d left_mult(const Quaternion& q) {
  Eigen::Matrix4d m;
  m << q.w, -q.x, -q.y, -q.z,
       q.x,  q.w, -q.z,  q.y,
       q.y,  q.z,  q.w, -q.x,
       q.z, -q.y,  q.x,  q.w;
  return m;
}

Eigen::Matrix4d right_mult(const Quaternion& q) {
  Eigen::Matrix4d m;
  m << q.w, -q.x, -q.y, -q.z,
       q.x,  q.w,  q.z, -q.y,
       q.y, -q.z,  q.w,  q.x,
       q.z,  q.y, -q.x,  q.w;
  return m;
}

Eigen::Vector4d quat_vec(const Quaternion& q) { return {q.w, q.x, q.y, q.z}; }

Quaternion vec_quat(const Eigen::Vector4d& v) { return {v(0), v(1), v(2), v(3)}; }

bool same_sphere(const Quaternion& a, const Quaternion& b) {
  const double scale = 1.0 + a.norm() + b.norm();
  return std::abs(a.real() - b.real()) <= 1e-10 * scale &&
         std::abs(a.imag().norm() - b.imag().norm()) <= 1e-10 * scale;
}

/// Solvability of q X - X s = C - D for scalar-entry lifting (entrywise).
bool sylvester_pair_solvable(const Quaternion& q, const Quaternion& s,
                             const QuatMatrix& rhs) {
  const Eigen::Matrix4d op = left_mult(q) - right_mult(s);
  Eigen::CompleteOrthogonalDecomposition<Eigen::Matrix4d> cod(op);
  for (int i = 0; i < rhs.rows(); ++i) {
    for (int j = 0; j < rhs.cols(); ++j) {
      const Eigen::Vector4d b = quat_vec(rhs(i, j));
      const Eigen::Vector4d x = cod.solve(b);
      if ((op * x - b).norm() > 1e-9 * (1.0 + b.norm())) return false;
    }
  }
  return true;
}

struct QuatLeftCondition {
  Quaternion point;
  QuatMatrix value;
};
struct QuatRightCondition {
  Quaternion point;
  QuatMatrix value;
};

SlicePolynomial solve_quat_conditions(
    int n_rows, int n_cols, const std::vector<QuatLeftCondition>& left,
    const std::vector<QuatRightCondition>& right, int max_degree) {
  const int entries = n_rows * n_cols;
  double scale = 1.0;
  for (const auto& c : left) scale = std::max(scale, c.value.norm());
  for (const auto& c : right) scale = std::max(scale, c.value.norm());

  for (int degree = 0; degree <= max_degree; ++degree) {
    const int cols = 4 * entries * (degree + 1);
    const int rows = 4 * entries * static_cast<int>(left.size() + right.size());
    RealMatrix k = RealMatrix::Zero(rows, cols);
    RealVector rhs = RealVector::Zero(rows);
    int row0 = 0;
    auto emit = [&](const Quaternion& point, const QuatMatrix& value, bool is_left) {
      Quaternion power = Quaternion::one();
      for (int a = 0; a <= degree; ++a) {
        const Eigen::Matrix4d op = is_left ? left_mult(power) : right_mult(power);
        for (int e = 0; e < entries; ++e) {
          k.block<4, 4>(row0 + 4 * e, (a * entries + e) * 4) = op;
        }
        power = power * point;
      }
      for (int i = 0; i < n_rows; ++i) {
        for (int j = 0; j < n_cols; ++j) {
          const int e = i * n_cols + j;
          rhs.segment<4>(row0 + 4 * e) = quat_vec(value(i, j));
        }
      }
      row0 += 4 * entries;
    };
    for (const auto& c : left) emit(c.point, c.value, true);
    for (const auto& c : right) emit(c.point, c.value, false);

    Eigen::CompleteOrthogonalDecomposition<RealMatrix> cod(k);
    const RealVector x = cod.solve(rhs);
    if ((k * x - rhs).norm() <= 1e-9 * (1.0 + scale) * (1.0 + x.norm())) {
      std::vector<QuatMatrix> coeffs;
      for (int a = 0; a <= degree; ++a) {
        QuatMatrix c(n_rows, n_cols);
        for (int i = 0; i < n_rows; ++i) {
          for (int j = 0; j < n_cols; ++j) {
            const int e = i * n_cols + j;
            c(i, j) = vec_quat(x.segment<4>((a * entries + e) * 4));
          }
        }
        coeffs.push_back(std::move(c));
      }
      return SlicePolynomial(std::move(coeffs));
    }
  }
  throw InfeasibleError(
      "interp: quaternionic polynomial conditions are not satisfiable up to "
      "degree " + std::to_string(max_degree));
}

}  // namespace

SlicePolynomial quat_lagrange_polynomial(
    const std::vector<QuatConstraint>& constraints) {
  if (constraints.empty()) {
    throw InputError("interp::quat_lagrange_polynomial: no constraints");
  }
  const int n_rows = constraints[0].matrix.rows();
  const int n_cols = constraints[0].matrix.cols();
  std::vector<QuatLeftCondition> left;
  std::vector<QuatRightCondition> right;
  for (const auto& c : constraints) {
    if (c.matrix.rows() != n_rows || c.matrix.cols() != n_cols) {
      throw InputError("interp::quat_lagrange_polynomial: shape mismatch");
    }
    if (c.kind == ConstraintKind::value) {
      left.push_back({c.point, c.matrix});
    } else {
      // T#(r) = V  <=>  sum_a T_a (-conj r)^a = V*.
      right.push_back({-c.point.conj(), c.matrix.adjoint()});
    }
  }
  // Compatibility: the pairwise mixing equations must be solvable whenever a
  // left point shares a sphere with a right point.
  for (size_t jj = 0; jj < left.size(); ++jj) {
    for (size_t kk = 0; kk < right.size(); ++kk) {
      if (!same_sphere(left[jj].point, right[kk].point)) continue;
      const QuatMatrix gap = left[jj].value - right[kk].value;
      if (!sylvester_pair_solvable(left[jj].point, right[kk].point, gap)) {
        throw InfeasibleError(
            "interp::quat_lagrange_polynomial: mixing equation unsolvable for "
            "left constraint " + std::to_string(jj) + " and sharp constraint " +
            std::to_string(kk) + " on a shared sphere");
      }
    }
  }
  const int max_degree =
      static_cast<int>(left.size() + right.size());
  return solve_quat_conditions(n_rows, n_cols, left, right, max_degree);
}

// --- directional GPE interpolation ------------------------------------------

GpeInterpolationResult gpe_interpolate(const DirectionalSpec& spec) {
  const int count = static_cast<int>(spec.nodes.size());
  if (count == 0 || spec.directions.size() != spec.nodes.size() ||
      spec.targets.size() != spec.nodes.size()) {
    throw InputError("interp::gpe_interpolate: inconsistent specification");
  }
  const int n = static_cast<int>(spec.directions[0].size());
  for (int u = 0; u < count; ++u) {
    if (spec.directions[u].size() != n || spec.targets[u].size() != n) {
      throw InputError("interp::gpe_interpolate: inconsistent vector sizes");
    }
    if (spec.directions[u].norm() == 0) {
      throw InputError("interp::gpe_interpolate: zero direction");
    }
    for (int v = u + 1; v < count; ++v) {
      if (std::abs(spec.nodes[u] - spec.nodes[v]) <
          1e-12 * (1.0 + std::abs(spec.nodes[u]))) {
        throw InputError("interp::gpe_interpolate: nodes must be distinct");
      }
    }
  }

  // Classify: axis nodes, symmetric pairs, regular nodes.
  std::vector<int> role(static_cast<size_t>(count), 0);  // 0 regular, 1 axis, 2 pair
  std::vector<int> partner(static_cast<size_t>(count), -1);
  for (int u = 0; u < count; ++u) {
    if (near_axis(spec.nodes[u])) role[u] = 1;
    for (int v = 0; v < count; ++v) {
      if (v != u && std::abs(spec.nodes[u] + std::conj(spec.nodes[v])) <=
                        1e-9 * (1.0 + std::abs(spec.nodes[u]))) {
        role[u] = 2;
        partner[u] = v;
      }
    }
  }

  const int max_degree = count + 1;
  MatrixPolynomial phi(n, n);
  phi = MatrixPolynomial::constant(ComplexMatrix::Zero(n, n));
  std::vector<MatrixPolynomial> factor_blocks;

  std::vector<bool> done(static_cast<size_t>(count), false);
  for (int u = 0; u < count; ++u) {
    if (done[u]) continue;
    if (role[u] == 1) {
      // Axis node: sandwich A^{1/2} (P# P) A^{1/2} with P(w_u) = I.
      const Complex pairing = spec.directions[u].dot(spec.targets[u]);
      const double mag =
          spec.directions[u].norm() * (spec.targets[u].norm() + 1.0);
      if (pairing.real() < -1e-10 * mag || std::abs(pairing.imag()) > 1e-10 * mag) {
        throw InfeasibleError(
            "interp::gpe_interpolate: axis node requires xi* eta >= 0");
      }
      const ComplexMatrix a = positive_matrix_for(spec.directions[u],
                                                  spec.targets[u]);
      const ComplexMatrix root = psd_root(a);
      std::vector<MatrixCondition> mconds{
          {spec.nodes[u], ComplexMatrix::Identity(n, n)}};
      std::vector<VectorCondition> vconds;
      for (int j = 0; j < count; ++j) {
        if (j == u) continue;
        const ComplexVector dir = root * spec.directions[j];
        if (dir.norm() <= 1e-13 * spec.directions[j].norm()) continue;
        vconds.push_back({spec.nodes[j], dir, ComplexVector::Zero(n)});
      }
      const MatrixPolynomial p =
          solve_polynomial_conditions(n, n, mconds, vconds, max_degree);
      const MatrixPolynomial block = p.conjugate_by(ComplexMatrix::Identity(n, n),
                                                    root);
      phi = phi + block.sharp() * block;
      factor_blocks.push_back(block);
      done[u] = true;
    } else if (role[u] == 2) {
      const int v = partner[u];
      if (done[v]) continue;
      // Coupled pair: one factor block Q with Q(w_u) = I, Q(w_v) = W*,
      // where W xi_u = eta_u and W* xi_v = eta_v.
      const Complex lhs = spec.directions[v].dot(spec.targets[u]);
      const Complex rhs = spec.targets[v].dot(spec.directions[u]);
      const double mag = 1.0 + std::abs(lhs) + std::abs(rhs);
      if (std::abs(lhs - rhs) > 1e-9 * mag) {
        throw InfeasibleError(
            "interp::gpe_interpolate: symmetric pair is incompatible "
            "(xi_v* eta_u != eta_v* xi_u)");
      }
      ComplexMatrix k = ComplexMatrix::Zero(2 * n, n * n);
      ComplexVector r2 = ComplexVector::Zero(2 * n);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          k(i, i + j * n) = spec.directions[u](j);  // (W xi_u)_i = eta_u(i)
          // W* xi_v = eta_v, rewritten as the linear rows xi_v* W = eta_v*.
          k(n + j, j + i * n) = std::conj(spec.directions[v](i));
        }
      }
      r2.head(n) = spec.targets[u];
      r2.tail(n) = spec.targets[v].conjugate();
      Eigen::CompleteOrthogonalDecomposition<ComplexMatrix> cod(k);
      const ComplexVector w_vec = cod.solve(r2);
      if ((k * w_vec - r2).norm() > 1e-9 * (1.0 + r2.norm() + w_vec.norm())) {
        throw InfeasibleError(
            "interp::gpe_interpolate: symmetric pair system is unsolvable");
      }
      ComplexMatrix w(n, n);
      for (int j = 0; j < n; ++j) w.col(j) = w_vec.segment(j * n, n);

      std::vector<MatrixCondition> mconds{
          {spec.nodes[u], ComplexMatrix::Identity(n, n)},
          {spec.nodes[v], w.adjoint()}};
      std::vector<VectorCondition> vconds;
      for (int j = 0; j < count; ++j) {
        if (j == u || j == v) continue;
        vconds.push_back({spec.nodes[j], spec.directions[j], ComplexVector::Zero(n)});
      }
      const MatrixPolynomial q =
          solve_polynomial_conditions(n, n, mconds, vconds, max_degree);
      phi = phi + q.sharp() * q;
      factor_blocks.push_back(q);
      done[u] = done[v] = true;
    } else {
      // Regular node: P(w_j) xi_j = 0, P(-conj w_u) = I, P(w_u) xi_u = eta_u.
      std::vector<MatrixCondition> mconds{
          {-std::conj(spec.nodes[u]), ComplexMatrix::Identity(n, n)}};
      std::vector<VectorCondition> vconds{
          {spec.nodes[u], spec.directions[u], spec.targets[u]}};
      for (int j = 0; j < count; ++j) {
        if (j == u) continue;
        vconds.push_back({spec.nodes[j], spec.directions[j], ComplexVector::Zero(n)});
      }
      const MatrixPolynomial p =
          solve_polynomial_conditions(n, n, mconds, vconds, max_degree);
      phi = phi + p.sharp() * p;
      factor_blocks.push_back(p);
      done[u] = true;
    }
  }

  GpeInterpolationResult out;
  out.Phi = phi;
  if (n == 1) {
    std::vector<Complex> scalar;
    for (const auto& c : phi.coeffs()) scalar.push_back(c(0, 0));
    const Polynomial factor =
        factorization::factor_scalar_polynomial(Polynomial(scalar), Side::right);
    std::vector<ComplexMatrix> lift;
    for (const Complex& c : factor.coeffs()) {
      lift.push_back(ComplexMatrix::Constant(1, 1, c));
    }
    out.L = MatrixPolynomial(std::move(lift));
  } else {
    MatrixPolynomial stacked = factor_blocks[0];
    for (size_t b = 1; b < factor_blocks.size(); ++b) {
      stacked = MatrixPolynomial::vstack(stacked, factor_blocks[b]);
    }
    out.L = stacked;
  }

  // Node conditions must hold on the assembled interpolant.
  for (int u = 0; u < count; ++u) {
    const ComplexVector lhs = out.Phi(spec.nodes[u]) * spec.directions[u];
    if ((lhs - spec.targets[u]).norm() >
        1e-8 * (1.0 + spec.targets[u].norm() + lhs.norm())) {
      throw NumericalFailure(
          "interp::gpe_interpolate: assembled interpolant missed node " +
          std::to_string(u));
    }
  }
  return out;
}

EvenInterpolationResult even_polynomial_interpolate(
    const std::vector<Complex>& nodes, const std::vector<Complex>& values) {
  if (nodes.empty() || nodes.size() != values.size()) {
    throw InputError("interp::even_polynomial_interpolate: bad specification");
  }
  // Symmetric extension w -> -w with the same value.
  std::vector<std::pair<Complex, Complex>> data;
  auto add_point = [&](Complex w, Complex v) {
    for (const auto& [pw, pv] : data) {
      if (std::abs(pw - w) <= 1e-12 * (1.0 + std::abs(w))) {
        if (std::abs(pv - v) > 1e-10 * (1.0 + std::abs(v))) {
          throw InputError(
              "interp::even_polynomial_interpolate: conflicting values at a "
              "symmetric node");
        }
        return;
      }
    }
    data.emplace_back(w, v);
  };
  for (size_t u = 0; u < nodes.size(); ++u) {
    add_point(nodes[u], values[u]);
    add_point(-nodes[u], values[u]);
  }
  // Real even interpolants need conjugation-closed data.
  for (const auto& [w, v] : data) {
    bool found = false;
    for (const auto& [w2, v2] : data) {
      if (std::abs(std::conj(w) - w2) <= 1e-10 * (1.0 + std::abs(w)) &&
          std::abs(std::conj(v) - v2) <= 1e-8 * (1.0 + std::abs(v))) {
        found = true;
        break;
      }
    }
    if (!found) {
      throw InfeasibleError(
          "interp::even_polynomial_interpolate: data is not closed under "
          "conjugation");
    }
  }

  const int m = static_cast<int>(data.size());
  ComplexMatrix vand(m, m);
  ComplexVector rhs(m);
  for (int r = 0; r < m; ++r) {
    Complex power(1, 0);
    for (int c = 0; c < m; ++c) {
      vand(r, c) = power;
      power *= data[static_cast<size_t>(r)].first;
    }
    rhs(r) = data[static_cast<size_t>(r)].second;
  }
  const ComplexVector coeff_vec = vand.colPivHouseholderQr().solve(rhs);
  if ((vand * coeff_vec - rhs).norm() > 1e-8 * (1.0 + rhs.norm())) {
    throw NumericalFailure(
        "interp::even_polynomial_interpolate: Vandermonde solve failed");
  }
  EvenInterpolationResult out;
  out.coeffs.assign(coeff_vec.data(), coeff_vec.data() + m);
  const Polynomial p{std::vector<Complex>(out.coeffs)};

  // Factored perturbation vanishing at every extended node: q# q with one
  // root per orbit of w -> -conj(w).
  std::vector<Complex> q_roots;
  std::vector<bool> used(data.size(), false);
  for (size_t a = 0; a < data.size(); ++a) {
    if (used[a]) continue;
    used[a] = true;
    const Complex w = data[a].first;
    q_roots.push_back(w);
    const Complex mirror = -std::conj(w);
    for (size_t b = a + 1; b < data.size(); ++b) {
      if (!used[b] &&
          std::abs(data[b].first - mirror) <= 1e-10 * (1.0 + std::abs(mirror))) {
        used[b] = true;
        break;
      }
    }
  }
  const Polynomial q = Polynomial::from_roots(q_roots);
  const Polynomial phi0 = q.sharp() * q;

  for (int shift = 0; shift <= 17; ++shift) {
    const double beta = (shift == 0) ? 0.0 : std::pow(2.0, shift - 1);
    const Polynomial candidate = p + phi0 * Complex(beta, 0);
    try {
      out.factor = factorization::factor_scalar_polynomial(candidate, Side::left);
    } catch (const NotGpeError&) {
      continue;
    }
    out.beta = beta;
    out.Phi = candidate;
    return out;
  }
  throw InfeasibleError(
      "interp::even_polynomial_interpolate: no beta up to 2^16 certified "
      "positivity (not a proof of nonexistence)");
}

SlicePolynomial quat_gpe_interpolate(const QuatInterpolationSpec& spec) {
  const int count = static_cast<int>(spec.nodes.size());
  if (count == 0 || spec.values.size() != spec.nodes.size()) {
    throw InputError("interp::quat_gpe_interpolate: bad specification");
  }
  const int n = spec.values[0].rows();
  for (const auto& v : spec.values) {
    if (v.rows() != n || v.cols() != n) {
      throw InputError("interp::quat_gpe_interpolate: value shapes differ");
    }
  }
  for (int u = 0; u < count; ++u) {
    for (int v = u + 1; v < count; ++v) {
      if ((spec.nodes[u] - spec.nodes[v]).norm() <=
          1e-12 * (1.0 + spec.nodes[u].norm())) {
        throw InputError("interp::quat_gpe_interpolate: nodes must be distinct");
      }
    }
  }
  // No three nodes on a common sphere.
  for (int a = 0; a < count; ++a) {
    int shared = 0;
    for (int b = 0; b < count; ++b) {
      if (same_sphere(spec.nodes[a], spec.nodes[b])) ++shared;
    }
    if (shared >= 3) {
      throw InputError(
          "interp::quat_gpe_interpolate: three nodes lie on a common sphere");
    }
  }

  const QuatMatrix eye = QuatMatrix::identity(n);
  SlicePolynomial phi(n, n);
  for (int u = 0; u < count; ++u) {
    std::vector<QuatConstraint> constraints;
    for (int j = 0; j < count; ++j) {
      constraints.push_back({spec.nodes[j], ConstraintKind::value,
                             j == u ? eye : QuatMatrix::zero(n, n)});
    }
    constraints.push_back(
        {spec.nodes[u], ConstraintKind::sharp_value, spec.values[u]});
    const SlicePolynomial l = quat_lagrange_polynomial(constraints);
    phi = phi + slicefun::star_product(l, l.sharp());
  }

  for (int u = 0; u < count; ++u) {
    const QuatMatrix got = phi(spec.nodes[u]);
    if ((got - spec.values[u]).norm() >
        1e-8 * (1.0 + got.norm() + spec.values[u].norm())) {
      throw NumericalFailure(
          "interp::quat_gpe_interpolate: node condition missed at index " +
          std::to_string(u));
    }
  }
  return phi;
}

}  // namespace gpe::interp
