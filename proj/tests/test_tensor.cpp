#include "dmcalc/tensor.hpp"
#include "dmcalc/odot.hpp"
#include "dmcalc/random.hpp"
#include "helpers.hpp"

using namespace dmcalc;
using dmtest::frob_diff;

TEST_CASE("kron basics") {
  CHECK(frob_diff(kron(Matrix::Identity(2, 2), Matrix::Identity(3, 3)),
                  Matrix::Identity(6, 6)) == 0.0);
  Rng rng(301);
  for (int t = 0; t < 10; ++t) {
    Matrix e(2, 2), f(3, 3);
    for (int i = 0; i < 4; ++i) e(i / 2, i % 2) = rng.gaussian();
    for (int i = 0; i < 9; ++i) f(i / 3, i % 3) = rng.gaussian();
    CHECK(kron(e, f).trace() == doctest::Approx(e.trace() * f.trace()).epsilon(1e-12));
  }
}

TEST_CASE("kron distributes over odot") {
  Rng rng(303);
  const PsdMatrix a = random_spd(rng, 2), c = random_spd(rng, 2);
  const PsdMatrix b = random_spd(rng, 3), d = random_spd(rng, 3);
  const Matrix lhs =
      odot(PsdMatrix(kron(a.matrix(), b.matrix())), PsdMatrix(kron(c.matrix(), d.matrix())))
          .matrix();
  CHECK(frob_diff(lhs, kron(odot(a, c).matrix(), odot(b, d).matrix())) < 1e-10);
}

namespace {

// Index-looping reference for both partial traces.
Matrix naive_trace_a(const Matrix& g, int na, int nb) {
  Matrix out = Matrix::Zero(nb, nb);
  for (int i = 0; i < na; ++i)
    for (int r = 0; r < nb; ++r)
      for (int c = 0; c < nb; ++c) out(r, c) += g(i * nb + r, i * nb + c);
  return out;
}

Matrix naive_trace_b(const Matrix& g, int na, int nb) {
  Matrix out = Matrix::Zero(na, na);
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < na; ++j)
      for (int r = 0; r < nb; ++r) out(i, j) += g(i * nb + r, j * nb + r);
  return out;
}

} // namespace

TEST_CASE("partial traces match the naive index oracle exactly") {
  Rng rng(307);
  for (int t = 0; t < 10; ++t) {
    const int na = rng.uniform_int(2, 3), nb = rng.uniform_int(2, 3);
    Matrix g(na * nb, na * nb);
    for (int i = 0; i < g.size(); ++i) g(i / g.cols(), i % g.cols()) = rng.gaussian();
    CHECK(frob_diff(partial_trace_a(g, na, nb), naive_trace_a(g, na, nb)) == 0.0);
    CHECK(frob_diff(partial_trace_b(g, na, nb), naive_trace_b(g, na, nb)) == 0.0);
  }
}

TEST_CASE("partial trace identities") {
  Rng rng(311);
  Matrix e(2, 2), f(3, 3);
  for (int i = 0; i < 4; ++i) e(i / 2, i % 2) = rng.gaussian();
  for (int i = 0; i < 9; ++i) f(i / 3, i % 3) = rng.gaussian();
  CHECK(frob_diff(partial_trace_a(kron(e, f), 2, 3), e.trace() * f) < 1e-13);
  CHECK(frob_diff(partial_trace_b(kron(e, f), 2, 3), f.trace() * e) < 1e-13);

  Matrix g(6, 6);
  for (int i = 0; i < 36; ++i) g(i / 6, i % 6) = rng.gaussian();
  CHECK(partial_trace_a(g, 2, 3).trace() == doctest::Approx(g.trace()).epsilon(1e-14));
  CHECK(partial_trace_b(g, 2, 3).trace() == doctest::Approx(g.trace()).epsilon(1e-14));
  CHECK_THROWS_AS(partial_trace_a(g, 2, 2), InvalidInput);
}

TEST_CASE("marginals of product joints recover the factors") {
  Rng rng(313);
  const DensityMatrix wa = random_density(rng, 2), wb = random_density(rng, 3);
  const JointDensity j = independent_join(wa, wb);
  CHECK(frob_diff(marginal_a(j).matrix(), wa.matrix()) < 1e-12);
  CHECK(frob_diff(marginal_b(j).matrix(), wb.matrix()) < 1e-12);
}

TEST_CASE("marginals of random joints are densities") {
  Rng rng(317);
  for (int t = 0; t < 10; ++t) {
    const JointDensity j = random_joint(rng, 2, 3);
    CHECK(marginal_a(j).matrix().trace() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(marginal_b(j).matrix().trace() == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("decoupled joint marginal eigenvalues are column sums") {
  Rng rng(319);
  const int na = 2, nb = 3;
  const Matrix wa = random_orthogonal(rng, na), wb = random_orthogonal(rng, nb);
  const Vector p = random_prob_vector(rng, na * nb);
  Matrix joint = Matrix::Zero(na * nb, na * nb);
  Vector omega_j = Vector::Zero(nb);
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j) {
      omega_j(j) += p(i * nb + j);
      joint += p(i * nb + j) * kron(wa.col(i) * wa.col(i).transpose(),
                                    wb.col(j) * wb.col(j).transpose());
    }
  const Vector got = marginal_b(JointDensity(DensityMatrix(PsdMatrix(joint)), na, nb))
                         .psd()
                         .eigenvalues();
  std::sort(omega_j.data(), omega_j.data() + nb, std::greater<>());
  CHECK((got - omega_j).norm() < 1e-12);
}

TEST_CASE("joint_prob") {
  Rng rng(323);
  const DensityMatrix wa = random_density(rng, 2), wb = random_density(rng, 2);
  const JointDensity prod = independent_join(wa, wb);
  const UnitVector a = random_unit(rng, 2), b = random_unit(rng, 2);
  CHECK(joint_prob(prod, a, b) ==
        doctest::Approx(prob_dyad(wa, a) * prob_dyad(wb, b)).epsilon(1e-12));

  const UnitVector ab(kron_vec(a.vector(), b.vector()));
  const JointDensity pure(DensityMatrix::dyad(ab), 2, 2);
  CHECK(joint_prob(pure, a, b) == doctest::Approx(1.0).epsilon(1e-12));

  const JointDensity j = random_joint(rng, 2, 2);
  CHECK(joint_prob(j, a, b) == doctest::Approx(prob_dyad(j.density(), ab)).epsilon(1e-12));
}

TEST_CASE("joint_slice_b") {
  Rng rng(327);
  const DensityMatrix wa = random_density(rng, 3), wb = random_density(rng, 2);
  const JointDensity prod = independent_join(wa, wb);
  const UnitVector b = random_unit(rng, 2);
  CHECK(frob_diff(joint_slice_b(prod, b).matrix(), prob_dyad(wb, b) * wa.matrix()) < 1e-12);

  const JointDensity j = random_joint(rng, 3, 2);
  CHECK(joint_slice_b(j, b).trace() ==
        doctest::Approx(prob_dyad(marginal_b(j), b)).epsilon(1e-12));

  const OrthonormalBasis sys = random_orthonormal_system(rng, 2);
  Matrix total = Matrix::Zero(3, 3);
  for (int i = 0; i < 2; ++i) total += joint_slice_b(j, sys.column(i)).matrix();
  CHECK(frob_diff(total, marginal_a(j).matrix()) < 1e-12);
}

TEST_CASE("joint slices satisfy the marginal-probability identity") {
  Rng rng(331);
  const JointDensity j = random_joint(rng, 2, 3);
  for (int t = 0; t < 50; ++t) {
    const UnitVector a = random_unit(rng, 2), b = random_unit(rng, 3);
    const double via_slice = a.vector().dot(joint_slice_b(j, b).matrix() * a.vector());
    CHECK(std::abs(via_slice - joint_prob(j, a, b)) < 1e-10);
    const double via_slice_a = b.vector().dot(joint_slice_a(j, a).matrix() * b.vector());
    CHECK(std::abs(via_slice_a - joint_prob(j, a, b)) < 1e-10);
  }
}

TEST_CASE("JointDensity validates its factorization") {
  Rng rng(337);
  CHECK_THROWS_AS(JointDensity(random_density(rng, 5), 2, 2), InvalidInput);
}
