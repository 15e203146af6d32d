#include "dmcalc/psd.hpp"

#include <cmath>

namespace dmcalc {

PsdMatrix::PsdMatrix(const SymmetricMatrix& s) : base_(s) {
  EigenSystem es = eigendecompose(s);
  const double scale = std::max(1.0, es.values(0));
  if (es.values(es.values.size() - 1) < -tol::psd * scale)
    throw InvalidInput("PsdMatrix: eigenvalue " +
                       std::to_string(es.values(es.values.size() - 1)) +
                       " below the PSD tolerance");
  rank_ = 0;
  for (int i = 0; i < es.values.size(); ++i) {
    if (es.values(i) > tol::rank * scale)
      ++rank_;
    else
      es.values(i) = 0.0;
  }
  eigvals_ = std::move(es.values);
  eigvecs_ = std::move(es.vectors);
}

PsdMatrix PsdMatrix::zero(int dim) { return PsdMatrix(SymmetricMatrix::zero(dim)); }
PsdMatrix PsdMatrix::identity(int dim) { return PsdMatrix(SymmetricMatrix::identity(dim)); }
PsdMatrix PsdMatrix::diagonal(const Vector& d) { return PsdMatrix(SymmetricMatrix::diagonal(d)); }

OrthonormalBasis PsdMatrix::range() const {
  return OrthonormalBasis(dim(), eigvecs_.leftCols(rank_));
}

Matrix PsdMatrix::range_projector() const {
  return eigvecs_.leftCols(rank_) * eigvecs_.leftCols(rank_).transpose();
}

double PsdMatrix::det() const {
  double d = 1.0;
  for (int i = 0; i < eigvals_.size(); ++i) d *= eigvals_(i);
  return d;
}

namespace {

Matrix eigen_map(const PsdMatrix& a, const std::function<double(double)>& f) {
  Vector fv(a.dim());
  for (int i = 0; i < a.dim(); ++i)
    fv(i) = a.eigenvalues()(i) > 0.0 ? f(a.eigenvalues()(i)) : 0.0;
  Matrix m = a.eigenvectors() * fv.asDiagonal() * a.eigenvectors().transpose();
  return 0.5 * (m + m.transpose());
}

} // namespace

SymmetricMatrix logm_plus(const PsdMatrix& a) {
  return SymmetricMatrix(eigen_map(a, [](double x) { return std::log(x); }));
}

PsdMatrix pseudoinverse(const PsdMatrix& a) {
  return PsdMatrix(eigen_map(a, [](double x) { return 1.0 / x; }));
}

PsdMatrix psd_pow(const PsdMatrix& a, double r) {
  if (r < 0.0)
    throw InvalidInput("psd_pow: negative exponent; use pseudoinverse");
  return PsdMatrix(eigen_map(a, [r](double x) { return std::pow(x, r); }));
}

PsdMatrix projector(const OrthonormalBasis& r) {
  return PsdMatrix(SymmetricMatrix(r.projector_matrix()));
}

bool range_contained(const PsdMatrix& inner, const PsdMatrix& outer) {
  if (inner.dim() != outer.dim())
    throw InvalidInput("range_contained: dimension mismatch");
  if (outer.full_rank() || inner.rank() == 0) return true;
  const Matrix ri = inner.eigenvectors().leftCols(inner.rank());
  const Matrix resid = ri - outer.range_projector() * ri;
  for (int j = 0; j < resid.cols(); ++j)
    if (resid.col(j).norm() > tol::range_member) return false;
  return true;
}

double range_residual(const PsdMatrix& a, const UnitVector& u) {
  if (a.dim() != u.dim())
    throw InvalidInput("range_residual: dimension mismatch");
  if (a.full_rank()) return 0.0;
  return (u.vector() - a.range_projector() * u.vector()).norm();
}

} // namespace dmcalc
