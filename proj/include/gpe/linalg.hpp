#pragma once

#include <optional>
#include <vector>

#include "gpe/types.hpp"

namespace gpe::linalg {

/// One Jordan chain at an eigenvalue: vectors[0] is the eigenvector and
/// (A - lambda I) vectors[j+1] = vectors[j].
struct JordanChain {
  std::vector<ComplexVector> vectors;
  int length() const { return static_cast<int>(vectors.size()); }
};

struct EigenvalueGroup {
  Complex value;
  int algebraic_multiplicity = 0;
  std::vector<JordanChain> chains;
};

/// Eigenvalues with clustered multiplicities and Jordan chains, ordered by
/// (Re, Im) of the eigenvalue and by decreasing chain length.
struct EigenStructure {
  std::vector<EigenvalueGroup> groups;
  double rank_tolerance = 0.0;
  int dimension() const;
};

struct SubspaceBasis {
  int ambient_dim = 0;
  ComplexMatrix basis;  // ambient_dim x k, columns linearly independent; k may be 0
  int dim() const { return static_cast<int>(basis.cols()); }
};

struct SylvesterResult {
  std::optional<ComplexMatrix> X;  // least-norm solution when consistent
  double residual = 0.0;           // residual norm of the linear system
  bool solved = false;
};

struct Inertia {
  int n_plus = 0;
  int n_zero = 0;
  int n_minus = 0;
};

/// Numerical rank via singular values (threshold max_dim * eps * sigma_max).
int numerical_rank(const ComplexMatrix& m);

/// Orthonormal basis of the column space (empty-width matrix for rank 0).
ComplexMatrix orthonormal_range(const ComplexMatrix& m);

/// Orthonormal basis of the nullspace.
ComplexMatrix nullspace(const ComplexMatrix& m);

/// Eigen-structure of a square matrix with Jordan chains recovered from
/// nested nullspaces of (A - lambda I)^k. Nearby eigenvalues are clustered
/// (width 1e-8 * (1 + |A|)) and treated as one.
EigenStructure eig(const ComplexMatrix& a);

/// Solves P X - X Q = R by Kronecker linearization. Singular-but-consistent
/// systems yield the least-norm solution; inconsistent systems are reported,
/// not thrown.
SylvesterResult solve_sylvester(const ComplexMatrix& p, const ComplexMatrix& q,
                                const ComplexMatrix& r);

/// Counts of eigenvalues of a Hermitian matrix above, inside, below [-tol, tol].
Inertia inertia(const ComplexMatrix& h, double tolerance);

/// Idempotent P with range(P) = span(range_space), ker(P) = span(kernel_space).
/// Requires the two spans to be complementary.
ComplexMatrix projection_along(const SubspaceBasis& range_space,
                               const SubspaceBasis& kernel_space);

}  // namespace gpe::linalg
