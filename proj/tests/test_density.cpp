#include <cmath>

#include "dmcalc/density.hpp"
#include "dmcalc/random.hpp"
#include "helpers.hpp"

using namespace dmcalc;
using dmtest::frob_diff;
using dmtest::mat2;
using dmtest::vec;

namespace {

// Normalized 4x4 Hadamard system: columns are +-1/2 vectors.
Matrix hadamard4() {
  Matrix h(4, 4);
  h << 1, 1, 1, 1, 1, -1, 1, -1, 1, 1, -1, -1, 1, -1, -1, 1;
  return 0.5 * h;
}

} // namespace

TEST_CASE("prob_dyad") {
  const DensityMatrix uniform = DensityMatrix::uniform(2);
  Rng rng(201);
  CHECK(prob_dyad(uniform, random_unit(rng, 2)) == doctest::Approx(0.5).epsilon(1e-12));

  const DensityMatrix w{mat2(0.35, 0.15, 0.15, 0.65)};
  CHECK(prob_dyad(w, UnitVector::axis(2, 0)) == doctest::Approx(0.35).epsilon(1e-12));

  const UnitVector u = random_unit(rng, 3);
  const OrthonormalBasis comp = complement(OrthonormalBasis(3, Matrix(u.vector())));
  CHECK(prob_dyad(DensityMatrix::dyad(u), comp.column(0)) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("prob_event") {
  const DensityMatrix w = DensityMatrix::uniform(4);
  CHECK(prob_event(w, EventMatrix::from_basis(OrthonormalBasis::full(4))) ==
        doctest::Approx(1.0));
  CHECK(prob_event(w, EventMatrix::from_basis(OrthonormalBasis::empty(4))) == 0.0);

  Rng rng(203);
  const DensityMatrix rand = random_density(rng, 4);
  Matrix two(4, 2);
  two.col(0) = rand.psd().eigenvectors().col(0);
  two.col(1) = rand.psd().eigenvectors().col(2);
  const double expected = rand.psd().eigenvalues()(0) + rand.psd().eigenvalues()(2);
  CHECK(prob_event(rand, EventMatrix::from_basis(OrthonormalBasis(4, two))) ==
        doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("prob_event is decomposition independent") {
  Rng rng(205);
  // Build W from a redundant non-orthogonal mixture and check tr(WP) equals
  // the weighted variance sum over that mixture.
  const int n = 4, m = 7;
  const Vector weights = random_prob_vector(rng, m);
  std::vector<UnitVector> dirs;
  Matrix w = Matrix::Zero(n, n);
  for (int i = 0; i < m; ++i) {
    dirs.push_back(random_unit(rng, n));
    w += weights(i) * dirs.back().dyad();
  }
  const DensityMatrix density{PsdMatrix(w)};
  const EventMatrix event = EventMatrix::from_basis(random_subspace(rng, n, 2));
  double via_mixture = 0.0;
  for (int i = 0; i < m; ++i)
    via_mixture += weights(i) * dirs[i].vector().dot(event.matrix() * dirs[i].vector());
  CHECK(prob_event(density, event) == doctest::Approx(via_mixture).epsilon(1e-12));
}

TEST_CASE("expectation") {
  Rng rng(207);
  const DensityMatrix w = random_density(rng, 3);
  CHECK(expectation(w, SymmetricMatrix::identity(3)) == doctest::Approx(1.0));

  const Vector dw = vec({0.2, 0.5, 0.3}), ds = vec({-1.0, 2.0, 0.25});
  CHECK(expectation(DensityMatrix::diagonal(dw), SymmetricMatrix::diagonal(ds)) ==
        doctest::Approx(dw.dot(ds)).epsilon(1e-14));
}

TEST_CASE("expectation: Hadamard eigensystem averages away diagonal densities") {
  Rng rng(209);
  const Matrix h = hadamard4();
  for (int t = 0; t < 10; ++t) {
    Vector sigma(4);
    for (int i = 0; i < 4; ++i) sigma(i) = rng.uniform(-2.0, 2.0);
    const SymmetricMatrix s(h * sigma.asDiagonal() * h.transpose());
    const DensityMatrix w = DensityMatrix::diagonal(random_prob_vector(rng, 4));
    CHECK(std::abs(expectation(w, s) - s.trace() / 4.0) < 1e-10);
  }
}

TEST_CASE("collapse") {
  Rng rng(211);
  const SymmetricMatrix s = random_symmetric(rng, 3);
  const auto outcomes = collapse(DensityMatrix::uniform(3), s);
  double total = 0.0;
  for (const auto& o : outcomes) {
    CHECK(o.probability == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    total += o.probability;
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-9));

  const EigenSystem es = eigendecompose(s);
  const DensityMatrix pure = DensityMatrix::dyad(UnitVector(Vector(es.vectors.col(0))));
  CHECK(collapse(pure, s)[0].probability == doctest::Approx(1.0).epsilon(1e-12));

  const DensityMatrix w = random_density(rng, 3);
  for (const auto& o : collapse(w, s))
    CHECK(o.probability == doctest::Approx(prob_dyad(w, o.direction)).epsilon(1e-12));
}

TEST_CASE("mixture_to_density: two-component figure") {
  const double r = std::sqrt(2.0) / 2.0;
  const DensityMatrix w = mixture_to_density(
      {0.2, 0.3, 0.5},
      {UnitVector::axis(2, 0), UnitVector(vec({r, r})), UnitVector::axis(2, 1)});
  CHECK(frob_diff(w.matrix(), mat2(0.35, 0.15, 0.15, 0.65)) < 1e-12);
}

TEST_CASE("mixture_to_density: degenerate and diagonal cases") {
  Rng rng(213);
  const UnitVector u = random_unit(rng, 3);
  CHECK(frob_diff(mixture_to_density({1.0}, {u}).matrix(), u.dyad()) < 1e-14);

  const Vector p = vec({0.1, 0.6, 0.3});
  const DensityMatrix diag = mixture_to_density(
      {p(0), p(1), p(2)},
      {UnitVector::axis(3, 0), UnitVector::axis(3, 1), UnitVector::axis(3, 2)});
  CHECK(frob_diff(diag.matrix(), Matrix(p.asDiagonal())) < 1e-14);

  CHECK_THROWS_AS(mixture_to_density({0.5, 0.2}, {u, u}), InvalidInput);
  CHECK_THROWS_AS(mixture_to_density({1.5, -0.5}, {u, u}), InvalidInput);
}

TEST_CASE("relative_entropy") {
  Rng rng(217);
  const DensityMatrix w = random_density(rng, 4);
  CHECK(relative_entropy(w, w) == doctest::Approx(0.0).epsilon(1e-10));

  const Vector p = vec({0.3, 0.7}), q = vec({0.6, 0.4});
  const double kl = p(0) * std::log(p(0) / q(0)) + p(1) * std::log(p(1) / q(1));
  CHECK(relative_entropy(DensityMatrix::diagonal(p), DensityMatrix::diagonal(q)) ==
        doctest::Approx(kl).epsilon(1e-12));

  const DensityMatrix full = random_density(rng, 3);
  const DensityMatrix low = random_density_rank(rng, 3, 2);
  CHECK(std::isinf(relative_entropy(full, low)));

  for (int t = 0; t < 10; ++t) {
    const DensityMatrix a = random_density(rng, 3), b = random_density(rng, 3);
    const double d = relative_entropy(a, b);
    CHECK(d >= -1e-12);
    // Zero only at equality: independent draws must stay strictly apart.
    CHECK(d > 1e-8);
  }
}

TEST_CASE("von_neumann_entropy") {
  Rng rng(219);
  CHECK(von_neumann_entropy(DensityMatrix::dyad(random_unit(rng, 4))) ==
        doctest::Approx(0.0).epsilon(1e-10));
  CHECK(von_neumann_entropy(DensityMatrix::uniform(5)) ==
        doctest::Approx(std::log(5.0)).epsilon(1e-12));
}

TEST_CASE("von_neumann_entropy: eigendecomposition minimizes mixture entropy") {
  Rng rng(223);
  for (int t = 0; t < 10; ++t) {
    const int n = 3, m = 6;
    const Vector weights = random_prob_vector(rng, m);
    Matrix w = Matrix::Zero(n, n);
    double mixture_entropy = 0.0;
    for (int i = 0; i < m; ++i) {
      w += weights(i) * random_unit(rng, n).dyad();
      mixture_entropy -= weights(i) * std::log(weights(i));
    }
    CHECK(von_neumann_entropy(DensityMatrix{PsdMatrix(w)}) <= mixture_entropy + 1e-12);
  }
}

TEST_CASE("remote_pinching") {
  Rng rng(227);
  const PsdMatrix a = random_spd(rng, 4);
  const Vector on_eigvecs = remote_pinching(a, OrthonormalBasis(4, a.eigenvectors()));
  CHECK((on_eigvecs - a.eigenvalues()).norm() < 1e-12);

  const Vector ones = remote_pinching(PsdMatrix::identity(4), random_orthonormal_system(rng, 4));
  CHECK((ones - Vector::Ones(4)).norm() < 1e-12);

  const Vector pinched = remote_pinching(a, random_orthonormal_system(rng, 4));
  CHECK(pinched.prod() == doctest::Approx(a.det()).epsilon(1e-10));

  CHECK_THROWS_AS(remote_pinching(a, random_subspace(rng, 4, 2)), InvalidInput);
}

TEST_CASE("remote pinching never exceeds plain pinching") {
  Rng rng(229);
  const PsdMatrix a = random_spd(rng, 4);
  const OrthonormalBasis sys = random_orthonormal_system(rng, 4);
  const Vector remote = remote_pinching(a, sys);
  for (int i = 0; i < 4; ++i) {
    const Vector u = sys.columns().col(i);
    CHECK(remote(i) <= u.dot(a.matrix() * u) + 1e-10);
  }
}

TEST_CASE("DensityMatrix construction") {
  CHECK_THROWS_AS(DensityMatrix{mat2(0.8, 0.0, 0.0, 0.5)}, InvalidInput);
  const DensityMatrix renorm{mat2(0.5 + 2e-7, 0.0, 0.0, 0.5)};
  CHECK(renorm.matrix().trace() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("EventMatrix rejects non-projectors") {
  CHECK_THROWS_AS(EventMatrix{PsdMatrix(mat2(0.5, 0.0, 0.0, 1.0))}, InvalidInput);
}
