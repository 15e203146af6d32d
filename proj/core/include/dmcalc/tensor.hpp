#pragma once

#include "dmcalc/density.hpp"

namespace dmcalc {

/// Kronecker (direct) product in block form.
Matrix kron(const Matrix& e, const Matrix& f);
Vector kron_vec(const Vector& a, const Vector& b);

/// Partial traces of a matrix over the joint space A (x) B, with A of
/// dimension na and B of dimension nb.  partial_trace_a sums the diagonal
/// blocks (traces out A, result nb x nb); partial_trace_b takes per-block
/// traces (traces out B, result na x na).
Matrix partial_trace_a(const Matrix& g, int na, int nb);
Matrix partial_trace_b(const Matrix& g, int na, int nb);

/// Density matrix over a tensor-product space with explicit factor
/// dimensions; nothing is ever inferred from a bare matrix.
class JointDensity {
public:
  JointDensity(const DensityMatrix& density, int na, int nb);

  int dim_a() const { return na_; }
  int dim_b() const { return nb_; }
  int dim() const { return density_.dim(); }
  const DensityMatrix& density() const { return density_; }
  const Matrix& matrix() const { return density_.matrix(); }

private:
  DensityMatrix density_;
  int na_, nb_;
};

/// Marginals: marginal_a traces out B and returns the density over A.
DensityMatrix marginal_a(const JointDensity& j);
DensityMatrix marginal_b(const JointDensity& j);

/// Joint probability of the product dyad (a (x) b)(a (x) b)^T.
double joint_prob(const JointDensity& j, const UnitVector& a, const UnitVector& b);

/// D(A, b) = tr_B(J (I_A (x) bb^T)): positive semidefinite over A with trace
/// equal to the marginal probability of b.
PsdMatrix joint_slice_b(const JointDensity& j, const UnitVector& b);

/// D(a, B) = tr_A(J (aa^T (x) I_B)): the mirrored slice over B.
PsdMatrix joint_slice_a(const JointDensity& j, const UnitVector& a);

/// Independent coupling D(A) (x) D(B).
JointDensity independent_join(const DensityMatrix& wa, const DensityMatrix& wb);

} // namespace dmcalc
