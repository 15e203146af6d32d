#pragma once

#include <cstdint>
#include <random>

#include "dmcalc/tensor.hpp"

namespace dmcalc {

/// Seeded generator for the property suites.  Uniform and gaussian draws are
/// derived from raw mt19937_64 output directly, so a fixed seed reproduces
/// the same instances regardless of the standard library's distribution
/// implementations.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(); // [0, 1)
  double uniform(double lo, double hi);
  double gaussian();
  int uniform_int(int lo, int hi); // inclusive

private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

UnitVector random_unit(Rng& rng, int n);
Matrix random_orthogonal(Rng& rng, int n);
OrthonormalBasis random_orthonormal_system(Rng& rng, int n);
OrthonormalBasis random_subspace(Rng& rng, int n, int k);
Vector random_prob_vector(Rng& rng, int n);

SymmetricMatrix random_symmetric(Rng& rng, int n, double lo = -2.0, double hi = 2.0);
PsdMatrix random_spd(Rng& rng, int n, double lo = 0.2, double hi = 2.5);
PsdMatrix random_psd_rank(Rng& rng, int n, int rank, double lo = 0.2, double hi = 2.5);
DensityMatrix random_density(Rng& rng, int n);
DensityMatrix random_density_rank(Rng& rng, int n, int rank);

JointDensity random_joint(Rng& rng, int na, int nb);
JointDensity random_product_joint(Rng& rng, int na, int nb);
/// Joint whose eigensystem is a Kronecker product of two orthogonal systems.
JointDensity random_decoupled_joint(Rng& rng, int na, int nb);

} // namespace dmcalc
