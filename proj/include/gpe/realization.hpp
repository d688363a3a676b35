#pragma once

#include <vector>

#include "gpe/linalg.hpp"
#include "gpe/quat.hpp"
#include "gpe/types.hpp"

namespace gpe::realization {

/// State-space realization of D + C (zI - A)^{-1} B over the complex field.
struct Realization {
  ComplexMatrix A, B, C, D;

  int state_dim() const { return static_cast<int>(A.rows()); }
  int n_out() const { return static_cast<int>(D.rows()); }
  int n_in() const { return static_cast<int>(D.cols()); }

  static Realization constant(const ComplexMatrix& d);
  void validate() const;  // dimension conformability, finite entries
};

/// Quaternionic realization of D + C * (pI - A)^{-*} * B (star product).
struct QuatRealization {
  quat::QuatMatrix A, B, C, D;

  int state_dim() const { return A.rows(); }
  int n_out() const { return D.rows(); }
  int n_in() const { return D.cols(); }

  static QuatRealization constant(const quat::QuatMatrix& d);
  void validate() const;
};

struct MinimalityReport {
  bool controllable = false;
  bool observable = false;
  // Popov-Belevich-Hautus failures: eigenvalue plus the witness vector.
  std::vector<std::pair<Complex, ComplexVector>> uncontrollable_witnesses;
  std::vector<std::pair<Complex, ComplexVector>> unobservable_witnesses;
  bool minimal() const { return controllable && observable; }
};

struct Degrees {
  int mcmillan = 0;
  int local = 0;
};

/// Evaluates D + C (zI - A)^{-1} B. Throws PoleError when z is within
/// 1e-10 (1 + |A|) of the spectrum of A.
ComplexMatrix evaluate(const Realization& r, Complex z);

/// Spectrum of A (with multiplicity, unordered beyond the eig convention).
std::vector<Complex> poles(const Realization& r);

/// Spectrum of A - B D^{-1} C (the zeros); requires D invertible.
std::vector<Complex> zeros(const Realization& r);

/// Series (cascade) connection: realizes the pointwise product over C.
Realization product(const Realization& alpha, const Realization& beta);

/// Realization of Phi#(z) = Phi(-conj(z))^*: the quadruple (-A*, C*, -B*, D*).
Realization sharp(const Realization& r);

/// Block realization of L * L# built directly from the factor L.
Realization gpe_from_factor(const Realization& l);

/// PBH eigenvector tests at every eigenvalue of A.
MinimalityReport minimality_report(const Realization& r);

/// Kalman reduction: restrict to the controllable subspace, then quotient the
/// unobservable one. Evaluations are preserved.
Realization minimize(const Realization& r);

/// McMillan degree and the local degree (algebraic multiplicity of z0 in the
/// minimal realization's state matrix).
Degrees degrees(const Realization& r, Complex z0);

/// Unique invertible S with S A1 = A2 S, S B1 = B2, C1 = C2 S for two minimal
/// realizations of the same function. Throws when no such S exists.
ComplexMatrix similarity(const Realization& r1, const Realization& r2);

/// Deterministic sample points in an annulus avoiding the poles (and the
/// zeros when D is invertible).
std::vector<Complex> sample_points(const Realization& r, int count);

/// Max norm difference of the two transfer functions on shared sample points.
double evaluation_distance(const Realization& r1, const Realization& r2,
                           int count = 30);

// --- quaternionic counterparts -------------------------------------------

/// chi of all four matrices: a complex realization of the lifted function.
Realization chi_lift(const QuatRealization& r);

/// Slice evaluation through the lift: decompose p = x + J y, evaluate on the
/// i-slice at x +/- iy, and reassemble alpha + J beta.
quat::QuatMatrix evaluate_slice(const QuatRealization& r, const quat::Quaternion& p);

/// Series connection over the quaternions: realizes the star product.
QuatRealization product(const QuatRealization& alpha, const QuatRealization& beta);

/// Quaternionic sharp: (-A*, C*, -B*, D*).
QuatRealization sharp(const QuatRealization& r);

/// Block realization of L * L# over the quaternions.
QuatRealization gpe_from_factor(const QuatRealization& l);

/// Minimization through the lift: minimize chi(R), restore the quaternionic
/// structure of the minimal lift, and pull back with chi_inverse.
QuatRealization minimize(const QuatRealization& r);

/// Rewrites a minimal complex realization of a chi-symmetric function in a
/// basis where all four matrices lie in the range of chi.
Realization restore_chi_structure(const Realization& minimal_lift);

/// Deterministic quaternionic sample points off the pole spheres; roughly a
/// third on the i-slice, the rest with genuine j/k parts.
std::vector<quat::Quaternion> quat_sample_points(const QuatRealization& r, int count);

/// Max norm difference of slice evaluations on shared quaternionic samples.
double evaluation_distance(const QuatRealization& r1, const QuatRealization& r2,
                           int count = 20);

}  // namespace gpe::realization
