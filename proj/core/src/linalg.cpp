#include "dmcalc/linalg.hpp"

#include <cmath>

namespace dmcalc {

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool all_finite(const Matrix& m) {
  return m.allFinite();
}

SymmetricMatrix::SymmetricMatrix(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw InvalidInput("SymmetricMatrix: matrix must be square and non-empty");
  if (!all_finite(m))
    throw InvalidInput("SymmetricMatrix: non-finite entries");
  const double scale = max_abs(m);
  const double asym = max_abs(m - m.transpose());
  if (asym > tol::sym * std::max(1.0, scale))
    throw InvalidInput("SymmetricMatrix: asymmetry " + std::to_string(asym) +
                       " exceeds tolerance");
  m_ = 0.5 * (m + m.transpose());
}

SymmetricMatrix SymmetricMatrix::zero(int dim) {
  return SymmetricMatrix(Matrix::Zero(dim, dim));
}

SymmetricMatrix SymmetricMatrix::identity(int dim) {
  return SymmetricMatrix(Matrix::Identity(dim, dim));
}

SymmetricMatrix SymmetricMatrix::diagonal(const Vector& d) {
  return SymmetricMatrix(Matrix(d.asDiagonal()));
}

UnitVector::UnitVector(const Vector& v) {
  if (v.size() == 0 || !v.allFinite())
    throw InvalidInput("UnitVector: empty or non-finite");
  const double n = v.norm();
  if (std::abs(n - 1.0) > tol::unit)
    throw InvalidInput("UnitVector: norm " + std::to_string(n) + " is not 1");
  v_ = v / n;
}

UnitVector UnitVector::axis(int dim, int i) {
  Vector v = Vector::Zero(dim);
  v(i) = 1.0;
  return UnitVector(v);
}

OrthonormalBasis::OrthonormalBasis(int ambient_dim, const Matrix& cols)
    : ambient_(ambient_dim), cols_(cols) {
  if (ambient_dim <= 0 || cols.rows() != ambient_dim || cols.cols() > ambient_dim)
    throw InvalidInput("OrthonormalBasis: bad dimensions");
  if (!cols.allFinite())
    throw InvalidInput("OrthonormalBasis: non-finite entries");
  if (cols.cols() > 0) {
    const Matrix gram = cols.transpose() * cols;
    const Matrix eye = Matrix::Identity(cols.cols(), cols.cols());
    if (max_abs(gram - eye) > tol::orth)
      throw InvalidInput("OrthonormalBasis: columns not orthonormal");
  }
}

OrthonormalBasis OrthonormalBasis::empty(int ambient_dim) {
  return OrthonormalBasis(ambient_dim, Matrix(ambient_dim, 0));
}

OrthonormalBasis OrthonormalBasis::full(int ambient_dim) {
  return OrthonormalBasis(ambient_dim, Matrix::Identity(ambient_dim, ambient_dim));
}

EigenSystem eigendecompose(const SymmetricMatrix& s) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(s.matrix());
  if (solver.info() != Eigen::Success)
    throw InvalidInput("eigendecompose: solver failed");
  const int n = s.dim();
  EigenSystem out;
  out.values = Vector(n);
  out.vectors = Matrix(n, n);
  // Eigen returns ascending order; flip to descending and fix signs so the
  // largest-magnitude entry of every eigenvector is positive.
  for (int i = 0; i < n; ++i) {
    out.values(i) = solver.eigenvalues()(n - 1 - i);
    Vector v = solver.eigenvectors().col(n - 1 - i);
    int arg = 0;
    for (int j = 1; j < n; ++j)
      if (std::abs(v(j)) > std::abs(v(arg))) arg = j;
    if (v(arg) < 0.0) v = -v;
    out.vectors.col(i) = v;
  }
  return out;
}

SymmetricMatrix matrix_function(const SymmetricMatrix& s,
                                const std::function<double(double)>& f) {
  const EigenSystem es = eigendecompose(s);
  Vector fv(es.values.size());
  for (int i = 0; i < fv.size(); ++i) {
    fv(i) = f(es.values(i));
    if (!std::isfinite(fv(i)))
      throw InvalidInput("matrix_function: f not finite on spectrum");
  }
  const Matrix m = es.vectors * fv.asDiagonal() * es.vectors.transpose();
  return SymmetricMatrix(0.5 * (m + m.transpose()));
}

SymmetricMatrix expm(const SymmetricMatrix& s) {
  return matrix_function(s, [](double x) { return std::exp(x); });
}

SymmetricMatrix logm(const SymmetricMatrix& s) {
  const EigenSystem es = eigendecompose(s);
  const double scale = std::max(1.0, es.values.size() ? es.values(0) : 0.0);
  for (int i = 0; i < es.values.size(); ++i)
    if (es.values(i) <= tol::rank * scale)
      throw SingularLog("logm: eigenvalue " + std::to_string(es.values(i)) +
                        " is not strictly positive");
  Vector lv(es.values.size());
  for (int i = 0; i < lv.size(); ++i) lv(i) = std::log(es.values(i));
  const Matrix m = es.vectors * lv.asDiagonal() * es.vectors.transpose();
  return SymmetricMatrix(0.5 * (m + m.transpose()));
}

SymmetricMatrix sym_pow(const SymmetricMatrix& s, double r) {
  return matrix_function(s, [r](double x) { return std::pow(x, r); });
}

namespace {

// Pivoted modified Gram-Schmidt over the columns of `cols`, deflating against
// the fixed orthonormal `prefix` first.  Returns only the new directions.
Matrix mgs_beyond(int n, const Matrix& prefix, const Matrix& cols) {
  Matrix work = cols;
  // Deflate the fixed prefix out of every candidate column.
  for (int p = 0; p < prefix.cols(); ++p)
    for (int j = 0; j < work.cols(); ++j)
      work.col(j) -= prefix.col(p) * prefix.col(p).dot(work.col(j));

  Matrix q(n, n);
  int k = 0;
  std::vector<bool> used(static_cast<size_t>(work.cols()), false);
  while (k + prefix.cols() < n) {
    int best = -1;
    double best_norm = tol::rank;
    for (int j = 0; j < work.cols(); ++j) {
      if (used[static_cast<size_t>(j)]) continue;
      const double nj = work.col(j).norm();
      if (nj > best_norm) {
        best_norm = nj;
        best = j;
      }
    }
    if (best < 0) break;
    used[static_cast<size_t>(best)] = true;
    Vector v = work.col(best) / best_norm;
    // One re-orthogonalization pass keeps the basis orthonormal to ~1e-15.
    for (int p = 0; p < prefix.cols(); ++p) v -= prefix.col(p) * prefix.col(p).dot(v);
    for (int i = 0; i < k; ++i) v -= q.col(i) * q.col(i).dot(v);
    const double vn = v.norm();
    if (vn <= tol::rank) continue;
    v /= vn;
    q.col(k++) = v;
    for (int j = 0; j < work.cols(); ++j) {
      if (used[static_cast<size_t>(j)]) continue;
      work.col(j) -= v * v.dot(work.col(j));
    }
  }
  return q.leftCols(k);
}

} // namespace

OrthonormalBasis orthonormal_basis(int ambient_dim, const Matrix& cols) {
  if (cols.rows() != ambient_dim)
    throw InvalidInput("orthonormal_basis: row count mismatch");
  return OrthonormalBasis(ambient_dim, mgs_beyond(ambient_dim, Matrix(ambient_dim, 0), cols));
}

OrthonormalBasis complement(const OrthonormalBasis& r) {
  const int n = r.ambient();
  return OrthonormalBasis(n, mgs_beyond(n, r.columns(), Matrix::Identity(n, n)));
}

OrthonormalBasis union_basis(const OrthonormalBasis& a, const OrthonormalBasis& b) {
  if (a.ambient() != b.ambient())
    throw InvalidInput("union_basis: ambient dimension mismatch");
  Matrix joined(a.ambient(), a.k() + b.k());
  joined << a.columns(), b.columns();
  return orthonormal_basis(a.ambient(), joined);
}

OrthonormalBasis intersect_ranges(const OrthonormalBasis& a, const OrthonormalBasis& b) {
  if (a.ambient() != b.ambient())
    throw InvalidInput("intersect_ranges: ambient dimension mismatch");
  return complement(union_basis(complement(a), complement(b)));
}

} // namespace dmcalc
