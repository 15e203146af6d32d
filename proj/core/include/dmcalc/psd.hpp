#pragma once

#include "dmcalc/linalg.hpp"

namespace dmcalc {

/// Symmetric positive semidefinite matrix with cached eigendecomposition,
/// numerical rank and range basis.  Eigenvalues at or below the rank
/// threshold are clamped to exactly zero for all spectral operations.
class PsdMatrix {
public:
  explicit PsdMatrix(const SymmetricMatrix& s);
  explicit PsdMatrix(const Matrix& m) : PsdMatrix(SymmetricMatrix(m)) {}
  static PsdMatrix zero(int dim);
  static PsdMatrix identity(int dim);
  static PsdMatrix diagonal(const Vector& d);

  int dim() const { return base_.dim(); }
  const SymmetricMatrix& sym() const { return base_; }
  const Matrix& matrix() const { return base_.matrix(); }
  double trace() const { return base_.trace(); }

  /// Clamped eigenvalues, sorted descending.
  const Vector& eigenvalues() const { return eigvals_; }
  const Matrix& eigenvectors() const { return eigvecs_; }
  int rank() const { return rank_; }
  bool full_rank() const { return rank_ == dim(); }
  OrthonormalBasis range() const;
  Matrix range_projector() const;

  double det() const;

private:
  SymmetricMatrix base_;
  Vector eigvals_;
  Matrix eigvecs_;
  int rank_;
};

/// Modified matrix logarithm: ln on positive eigenvalues, zero eigenvalues
/// left at zero.  Rank-0 input gives the zero matrix.
SymmetricMatrix logm_plus(const PsdMatrix& a);

/// Eigenvalue map x -> 1/x on the positive part.
PsdMatrix pseudoinverse(const PsdMatrix& a);

/// Eigenvalue map x -> x^r on the positive part (r >= 0); zeros stay zero.
PsdMatrix psd_pow(const PsdMatrix& a, double r);

/// Projection matrix R R^T of a subspace; eigenvalues in {0,1}.
PsdMatrix projector(const OrthonormalBasis& r);

/// True when range(inner) is contained in range(outer) within
/// tol::range_member.
bool range_contained(const PsdMatrix& inner, const PsdMatrix& outer);

/// Residual distance of u from range(a): norm of (I - P_A) u.
double range_residual(const PsdMatrix& a, const UnitVector& u);

} // namespace dmcalc
