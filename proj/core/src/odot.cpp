#include "dmcalc/odot.hpp"

#include <cmath>

namespace dmcalc {

PsdMatrix odot(const PsdMatrix& a, const PsdMatrix& b) {
  if (a.dim() != b.dim())
    throw InvalidInput("odot: dimension mismatch");
  const int n = a.dim();

  if (a.full_rank() && b.full_rank()) {
    const Matrix sum = logm_plus(a).matrix() + logm_plus(b).matrix();
    return PsdMatrix(expm(SymmetricMatrix(sum)));
  }

  const OrthonormalBasis isect = intersect_ranges(a.range(), b.range());
  if (isect.k() == 0) return PsdMatrix::zero(n);

  const Matrix sum = logm_plus(a).matrix() + logm_plus(b).matrix();
  const Matrix compressed =
      isect.columns().transpose() * sum * isect.columns();
  const Matrix core = expm(SymmetricMatrix(compressed)).matrix();
  Matrix lifted = isect.columns() * core * isect.columns().transpose();
  return PsdMatrix(SymmetricMatrix(0.5 * (lifted + lifted.transpose())));
}

Matrix odot_limit(const PsdMatrix& a, const PsdMatrix& b, long n) {
  if (a.dim() != b.dim())
    throw InvalidInput("odot_limit: dimension mismatch");
  if (n < 1 || (n & (n - 1)) != 0 || n > (1L << 20))
    throw InvalidInput("odot_limit: n must be a power of two, at most 2^20");
  if (n == 1) return a.matrix() * b.matrix();

  const double r = 1.0 / static_cast<double>(n);
  Matrix m = psd_pow(a, r).matrix() * psd_pow(b, r).matrix();
  for (long p = n; p > 1; p >>= 1) m = m * m;
  return m;
}

double odot_dyad_trace(const PsdMatrix& a, const UnitVector& u) {
  if (a.dim() != u.dim())
    throw InvalidInput("odot_dyad_trace: dimension mismatch");
  if (a.rank() == 0) return 0.0;
  if (!a.full_rank() && range_residual(a, u) > tol::range_member) return 0.0;
  const double x = u.vector().dot(logm_plus(a).matrix() * u.vector());
  return std::exp(x);
}

} // namespace dmcalc
