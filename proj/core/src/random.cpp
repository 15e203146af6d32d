#include "dmcalc/random.hpp"

#include <cmath>

namespace dmcalc {

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform();
}

double Rng::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * M_PI * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

int Rng::uniform_int(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(engine_() % span);
}

UnitVector random_unit(Rng& rng, int n) {
  Vector v(n);
  double norm = 0.0;
  while (norm < 1e-6) {
    for (int i = 0; i < n; ++i) v(i) = rng.gaussian();
    norm = v.norm();
  }
  return UnitVector(v / norm);
}

Matrix random_orthogonal(Rng& rng, int n) {
  Matrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = rng.gaussian();
  return orthonormal_basis(n, g).columns();
}

OrthonormalBasis random_orthonormal_system(Rng& rng, int n) {
  return OrthonormalBasis(n, random_orthogonal(rng, n));
}

OrthonormalBasis random_subspace(Rng& rng, int n, int k) {
  if (k < 0 || k > n) throw InvalidInput("random_subspace: bad k");
  return OrthonormalBasis(n, random_orthogonal(rng, n).leftCols(k));
}

Vector random_prob_vector(Rng& rng, int n) {
  Vector v(n);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    v(i) = -std::log(1.0 - rng.uniform());
    sum += v(i);
  }
  return v / sum;
}

namespace {

Matrix with_spectrum(Rng& rng, int n, const Vector& spectrum) {
  const Matrix q = random_orthogonal(rng, n);
  Matrix m = q * spectrum.asDiagonal() * q.transpose();
  return 0.5 * (m + m.transpose());
}

} // namespace

SymmetricMatrix random_symmetric(Rng& rng, int n, double lo, double hi) {
  Vector s(n);
  for (int i = 0; i < n; ++i) s(i) = rng.uniform(lo, hi);
  return SymmetricMatrix(with_spectrum(rng, n, s));
}

PsdMatrix random_spd(Rng& rng, int n, double lo, double hi) {
  Vector s(n);
  for (int i = 0; i < n; ++i) s(i) = rng.uniform(lo, hi);
  return PsdMatrix(with_spectrum(rng, n, s));
}

PsdMatrix random_psd_rank(Rng& rng, int n, int rank, double lo, double hi) {
  if (rank < 0 || rank > n) throw InvalidInput("random_psd_rank: bad rank");
  Vector s = Vector::Zero(n);
  for (int i = 0; i < rank; ++i) s(i) = rng.uniform(lo, hi);
  return PsdMatrix(with_spectrum(rng, n, s));
}

DensityMatrix random_density(Rng& rng, int n) {
  const Vector p = random_prob_vector(rng, n);
  return DensityMatrix(PsdMatrix(with_spectrum(rng, n, p)));
}

DensityMatrix random_density_rank(Rng& rng, int n, int rank) {
  if (rank < 1 || rank > n) throw InvalidInput("random_density_rank: bad rank");
  const Vector p = random_prob_vector(rng, rank);
  Vector s = Vector::Zero(n);
  s.head(rank) = p;
  return DensityMatrix(PsdMatrix(with_spectrum(rng, n, s)));
}

JointDensity random_joint(Rng& rng, int na, int nb) {
  return JointDensity(random_density(rng, na * nb), na, nb);
}

JointDensity random_product_joint(Rng& rng, int na, int nb) {
  return independent_join(random_density(rng, na), random_density(rng, nb));
}

JointDensity random_decoupled_joint(Rng& rng, int na, int nb) {
  const Matrix wa = random_orthogonal(rng, na);
  const Matrix wb = random_orthogonal(rng, nb);
  const Vector omega = random_prob_vector(rng, na * nb);
  Matrix joint = Matrix::Zero(na * nb, na * nb);
  int idx = 0;
  for (int i = 0; i < na; ++i) {
    const Matrix dyad_a = wa.col(i) * wa.col(i).transpose();
    for (int j = 0; j < nb; ++j, ++idx)
      joint += omega(idx) * kron(dyad_a, wb.col(j) * wb.col(j).transpose());
  }
  return JointDensity(DensityMatrix(PsdMatrix(joint)), na, nb);
}

} // namespace dmcalc
