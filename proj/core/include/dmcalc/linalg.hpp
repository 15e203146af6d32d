#pragma once

#include <Eigen/Dense>
#include <functional>

#include "dmcalc/errors.hpp"

namespace dmcalc {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Numerical tolerances used across the library.  The spectral thresholds
// (psd, rank) are relative to max(1, lambda_max) of the matrix at hand.
namespace tol {
inline constexpr double sym = 1e-8;          // symmetry check at construction
inline constexpr double orth = 1e-8;         // orthonormality of bases
inline constexpr double unit = 1e-8;         // unit-vector norm
inline constexpr double psd = 1e-10;         // admissible negative eigenvalue
inline constexpr double rank = 1e-10;        // eigenvalue clamp / rank decision
inline constexpr double range_member = 1e-8; // residual for u in range(A)
inline constexpr double prob = 1e-12;        // conditioning denominators
inline constexpr double decoupled = 1e-6;    // n_B - tr(cond) below this counts as decoupled
inline double recon(int dim) { return 1e-9 * dim; }
} // namespace tol

double max_abs(const Matrix& m);
bool all_finite(const Matrix& m);

/// Square real matrix, symmetric within tol::sym; stored form is exactly
/// (M + M^T)/2.
class SymmetricMatrix {
public:
  explicit SymmetricMatrix(const Matrix& m);
  static SymmetricMatrix zero(int dim);
  static SymmetricMatrix identity(int dim);
  static SymmetricMatrix diagonal(const Vector& d);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  double trace() const { return m_.trace(); }

private:
  Matrix m_;
};

/// Unit-norm direction; renormalized exactly on construction.
class UnitVector {
public:
  explicit UnitVector(const Vector& v);
  static UnitVector axis(int dim, int i);

  int dim() const { return static_cast<int>(v_.size()); }
  const Vector& vector() const { return v_; }
  Matrix dyad() const { return v_ * v_.transpose(); }

private:
  Vector v_;
};

/// ambient_dim x k column-orthonormal matrix; k = 0 is a valid empty basis.
class OrthonormalBasis {
public:
  OrthonormalBasis(int ambient_dim, const Matrix& cols);
  static OrthonormalBasis empty(int ambient_dim);
  static OrthonormalBasis full(int ambient_dim);

  int ambient() const { return ambient_; }
  int k() const { return static_cast<int>(cols_.cols()); }
  const Matrix& columns() const { return cols_; }
  UnitVector column(int i) const { return UnitVector(cols_.col(i)); }
  Matrix projector_matrix() const { return cols_ * cols_.transpose(); }

private:
  int ambient_;
  Matrix cols_;
};

/// Eigenvalues sorted descending; eigenvector columns carry a deterministic
/// sign (largest-magnitude entry positive).
struct EigenSystem {
  Vector values;
  Matrix vectors;
};

EigenSystem eigendecompose(const SymmetricMatrix& s);

SymmetricMatrix matrix_function(const SymmetricMatrix& s,
                                const std::function<double(double)>& f);
SymmetricMatrix expm(const SymmetricMatrix& s);
/// Strict matrix logarithm; throws SingularLog unless every eigenvalue is
/// positive after the rank clamp.
SymmetricMatrix logm(const SymmetricMatrix& s);
SymmetricMatrix sym_pow(const SymmetricMatrix& s, double r);

/// Column-pivoted modified Gram-Schmidt with rank cutoff tol::rank.
/// `prefix` columns (assumed orthonormal) are kept fixed and deflated away;
/// only directions found in `cols` beyond the prefix are returned.
OrthonormalBasis orthonormal_basis(int ambient_dim, const Matrix& cols);
OrthonormalBasis complement(const OrthonormalBasis& r);
OrthonormalBasis union_basis(const OrthonormalBasis& a, const OrthonormalBasis& b);
/// Basis of range(a) ∩ range(b), computed as (a^perp ∪ b^perp)^perp.
OrthonormalBasis intersect_ranges(const OrthonormalBasis& a, const OrthonormalBasis& b);

} // namespace dmcalc
