#pragma once

#include <functional>
#include <vector>

#include "gpe/polynomial.hpp"
#include "gpe/realization.hpp"
#include "gpe/slicefun.hpp"

namespace gpe::analysis {

using ComplexFunction = std::function<ComplexMatrix(Complex)>;

/// Skew-Hermitian H tied to a minimal realization: H A = -A* H, H B = C*,
/// B* H = -C (equivalently), with D = D*.
struct StructureMatrix {
  ComplexMatrix H;
  bool skew_hermitian = false;
  double min_singular_value = 0.0;
  double relation_residual = 0.0;
};

struct LmiReport {
  bool holds = false;
  double min_eig = 0.0;
  ComplexMatrix Q, S, R;
};

enum class KernelKind { carat, schur, quat_carat };

struct KernelInertiaReport {
  std::vector<Complex> grid_complex;
  std::vector<quat::Quaternion> grid_quat;
  std::vector<linalg::Inertia> gram_inertia;  // one entry per nested grid
  int kappa_estimate = 0;
  bool stabilized = false;
};

struct BoundaryReport {
  double min_eig = 0.0;
  Complex worst_point;
};

struct QuatBoundaryReport {
  double min_eig = 0.0;
  quat::Quaternion worst_point;
};

/// Solves the structure equations of an even function on a minimal
/// realization. Throws NotEvenError when the system is inconsistent and
/// NumericalFailure when H comes out singular.
StructureMatrix solve_structure_H(const realization::Realization& r);

/// Assembles [[HA + A*H, HB + C*], [B*H + C, D + D*]] for a Hermitian H and
/// reports its minimal eigenvalue together with the three blocks.
LmiReport verify_positive_real_lmi(const realization::Realization& r,
                                   const ComplexMatrix& h);

/// Sampled-Gram negative-squares estimate on nested sub-grids. The grid must
/// lie in the open right half-plane off the poles of f.
KernelInertiaReport negative_squares(KernelKind kind, const ComplexFunction& f,
                                     const std::vector<Complex>& grid);

/// Quaternionic variant through the slice kernel; the grid must lie in the
/// open right half-space off the pole spheres.
KernelInertiaReport negative_squares(const slicefun::QuatFunction& f,
                                     const std::vector<quat::Quaternion>& grid);

/// Default grids: log-spaced radii 0.1..5, angles inside (-pi/2, pi/2).
std::vector<Complex> default_complex_grid(int count);
std::vector<quat::Quaternion> default_quat_grid(int count);

/// Minimal eigenvalue of the Hermitian part of Phi(iy) over a deterministic
/// sample range (the value itself is Hermitian for even functions).
BoundaryReport boundary_positivity(const realization::Realization& r,
                                   int samples = 40);
BoundaryReport boundary_positivity(const poly::MatrixPolynomial& phi,
                                   int samples = 40);

/// Quaternionic boundary test: Re Phi(t I) sampled over t and unit I.
QuatBoundaryReport boundary_positivity(const realization::QuatRealization& r,
                                       int samples = 40);
QuatBoundaryReport boundary_positivity(const slicefun::SlicePolynomial& phi,
                                       int samples = 40);

/// Evenness tests: structure solve for the complex field, coefficient test at
/// real points plus lift evenness for the quaternionic one.
bool is_even(const realization::Realization& r);
bool is_even(const realization::QuatRealization& r);

/// Minimal eigenvalue of the Hermitian part (M + M*)/2 of a quaternion matrix.
double quat_min_eig_hermitian_part(const quat::QuatMatrix& m);

}  // namespace gpe::analysis
