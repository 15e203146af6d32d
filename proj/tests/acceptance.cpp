// Acceptance suite: end-to-end checks of the calculus at its published
// operating points.  Prints one line per criterion and exits nonzero if any
// of them fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "dmcalc/random.hpp"
#include "dmcalc/verify.hpp"

using namespace dmcalc;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
  std::printf("criterion %d: %s  %s\n", criterion, pass ? "PASS" : "FAIL",
              detail.c_str());
  if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", x);
  return buf;
}

// Criterion 1: the two-component mixture figure, exact matrix and rounded
// caption eigensystem.
void criterion_1() {
  const auto t0 = std::chrono::steady_clock::now();
  const double r = std::sqrt(2.0) / 2.0;
  const DensityMatrix w = mixture_to_density(
      {0.2, 0.3, 0.5},
      {UnitVector::axis(2, 0), UnitVector(Vector((Vector(2) << r, r).finished())),
       UnitVector::axis(2, 1)});
  Matrix expected(2, 2);
  expected << 0.35, 0.15, 0.15, 0.65;
  const double entry_err = max_abs(w.matrix() - expected);

  const EigenSystem es = eigendecompose(w.psd().sym());
  const double val_err =
      std::max(std::abs(es.values(0) - 0.71), std::abs(es.values(1) - 0.29));
  Vector cap0(2), cap1(2);
  cap0 << 0.38, 0.92;
  cap1 << -0.92, 0.38;
  auto vec_err = [](const Vector& got, const Vector& want) {
    return std::min((got - want).cwiseAbs().maxCoeff(), (got + want).cwiseAbs().maxCoeff());
  };
  const double dir_err =
      std::max(vec_err(es.vectors.col(0), cap0), vec_err(es.vectors.col(1), cap1));
  const double elapsed = seconds_since(t0);
  report(1, entry_err <= 1e-12 && val_err <= 0.01 && dir_err <= 0.01 && elapsed < 1.0,
         "mixture entries err " + fmt(entry_err) + ", eigenvalue err " +
             fmt(val_err) + ", eigenvector err " + fmt(dir_err) +
             ", " + fmt(elapsed) + " s");
}

// Criterion 2: iterated conventional Bayes with a fixed likelihood crosses
// over and then concentrates all weight on the largest likelihood.
void criterion_2() {
  const auto t0 = std::chrono::steady_clock::now();
  Vector current(4), lik(4);
  current << 0.29, 0.4, 0.3, 0.01;
  lik << 0.7, 0.84, 0.85, 0.9;
  bool crossing_seen = false;   // component 3 > component 2 while 4 not maximal
  int component4_maximal_at = -1;
  int converged_at = -1;
  for (int t = 1; t <= 500; ++t) {
    current = conventional_bayes(current, lik).posterior;
    const bool comp4_max =
        current(3) > current(0) && current(3) > current(1) && current(3) > current(2);
    if (!comp4_max && current(2) > current(1)) crossing_seen = true;
    if (comp4_max && component4_maximal_at < 0) component4_maximal_at = t;
    if (current(3) > 1.0 - 1e-6 && converged_at < 0) converged_at = t;
  }
  const double elapsed = seconds_since(t0);
  report(2,
         crossing_seen && component4_maximal_at > 0 && converged_at > 0 &&
             converged_at <= 500 && elapsed < 1.0,
         "crossing " + std::string(crossing_seen ? "seen" : "missing") +
             ", component 4 maximal from step " + std::to_string(component4_maximal_at) +
             ", > 1-1e-6 at step " + std::to_string(converged_at) + ", " +
             fmt(elapsed) + " s");
}

// Criterion 3: iterated generalized Bayes with a rotated likelihood; the
// projection onto the likelihood's top eigendirection must exceed 1 - 1e-6
// within 2000 steps and be monotone past some reported step T.
//
// The projection's limit is 1 but its tail is algebraic, not geometric: the
// leading eigenvector of logm(prior) + t*logm(likelihood) approaches the
// likelihood's top eigenvector at angle O(1/t), so 1 - projection decays
// like (kappa/t)^2 with kappa = coupling/log-gap (~10-50 for random
// rotations of this spectrum).  Reaching 1e-6 therefore needs on the order
// of 10^4 steps, and the step-2000 value measured here lands near 1e-4.
// This check is reported as specified; see the detail string for the
// measured floor.  The monotonicity half of the claim does hold.
void criterion_3() {
  Rng rng(17);
  const Matrix u = random_orthogonal(rng, 4);
  Vector spectrum(4), prior_diag(4);
  spectrum << 0.7, 0.84, 0.85, 0.9;
  prior_diag << 0.29, 0.4, 0.3, 0.01;
  const PsdMatrix lik(u * spectrum.asDiagonal() * u.transpose());
  const Vector top = lik.eigenvectors().col(0);
  const BayesProblem p{DensityMatrix::diagonal(prior_diag), lik};

  DensityMatrix current = p.prior;
  std::vector<double> proj;
  proj.push_back(top.dot(current.matrix() * top));
  int reached_at = -1;
  for (int t = 1; t <= 2000; ++t) {
    current = generalized_bayes(BayesProblem{current, lik}).posterior;
    proj.push_back(top.dot(current.matrix() * top));
    if (proj.back() > 1.0 - 1e-6 && reached_at < 0) reached_at = t;
  }
  int last_decrease = 0;
  for (size_t t = 1; t < proj.size(); ++t)
    if (proj[t] < proj[t - 1]) last_decrease = static_cast<int>(t);
  const int monotone_from = last_decrease + 1;

  // Clamp-free closed form of the same iterate, for reference.
  const double exact_gap = 1.0 - top.dot(bayes_flow(p, 2000.0).matrix() * top);

  report(3, reached_at > 0 && reached_at <= 2000 && monotone_from <= 2000,
         "1-projection after 2000 steps: " + fmt(1.0 - proj.back()) +
             " stepwise / " + fmt(exact_gap) +
             " closed-form (threshold 1e-6" +
             (reached_at > 0 ? ", reached at step " + std::to_string(reached_at)
                             : ", not reached; the tail is O(1/t^2)") +
             "), monotone from step T=" + std::to_string(monotone_from));
}

// Criterion 4: the full property-rule suites at 100 seeded trials.
void criterion_4() {
  const auto t0 = std::chrono::steady_clock::now();
  VerifyOptions opt;
  opt.seed = 7;
  opt.trials = 100;
  int failed = 0;
  int total = 0;
  std::string first_fail;
  for (const RuleResult& r : run_all_suites(opt)) {
    ++total;
    if (!r.pass) {
      ++failed;
      if (first_fail.empty()) first_fail = r.id + " (" + r.note + ")";
    }
  }
  const double elapsed = seconds_since(t0);
  report(4, failed == 0 && elapsed < 60.0,
         std::to_string(total) + " rules, " + std::to_string(failed) + " failed" +
             (first_fail.empty() ? "" : ", first: " + first_fail) + ", " +
             fmt(elapsed) + " s");
}

// Criterion 5: finite product-formula stages approximate the product and
// their traces decrease monotonically.
void criterion_5() {
  Rng rng(2024);
  double worst_residual = 0.0;
  double worst_increase = 0.0;
  for (int t = 0; t < 20; ++t) {
    const PsdMatrix a = random_spd(rng, 3);
    const PsdMatrix b = random_spd(rng, 3);
    const Matrix lim = odot_limit(a, b, 1L << 12);
    const Matrix sym = 0.5 * (lim + lim.transpose());
    const Matrix exact = odot(a, b).matrix();
    worst_residual = std::max(worst_residual, (sym - exact).norm() / exact.norm());

    double prev = odot_limit(a, b, 1).trace();
    for (long n = 2; n <= 256; n <<= 1) {
      const double tr = odot_limit(a, b, n).trace();
      worst_increase = std::max(worst_increase, tr - prev);
      prev = tr;
    }
  }
  report(5, worst_residual < 1e-3 && worst_increase <= 1e-12,
         "worst residual " + fmt(worst_residual) + ", worst trace increase " +
             fmt(worst_increase));
}

// Criterion 6: fixed-point recovery of the conditioned-on marginal from
// forward-constructed conditionals.
void criterion_6() {
  Rng rng(99);
  int converged = 0, accurate = 0, worst_iters = 0;
  for (int t = 0; t < 20; ++t) {
    const int nb = (t % 2) ? 3 : 2;
    const JointDensity j = random_joint(rng, 2, nb);
    const EmResult r = em_recover(cond_full(j), 10000, 1e-9);
    if (r.converged) ++converged;
    if ((r.marginal.matrix() - marginal_b(j).matrix()).norm() < 1e-6) ++accurate;
    worst_iters = std::max(worst_iters, r.iterations);
  }
  report(6, converged >= 18 && accurate >= 18,
         std::to_string(converged) + "/20 converged, " + std::to_string(accurate) +
             "/20 within 1e-6 of the true marginal, max iterations " +
             std::to_string(worst_iters) +
             (converged < 20 ? " (convergence is conjectural)" : ""));
}

// Criterion 7: the continuous update matches the one-shot posterior at t=1
// and satisfies its log-domain differential equation.
void criterion_7() {
  Rng rng(311);
  double worst_posterior = 0.0, worst_ode = 0.0;
  for (int t = 0; t < 5; ++t) {
    const int n = 4;
    const BayesProblem p{random_density(rng, n), random_spd(rng, n)};
    const GeneralizedPosterior gp = generalized_bayes(p);
    worst_posterior = std::max(
        worst_posterior, (bayes_flow(p, 1.0).matrix() - gp.posterior.matrix()).norm());

    const double h = 1e-4;
    const Matrix log_lik = logm_plus(p.likelihood).matrix();
    for (const double tt : {0.25, 0.5, 0.75}) {
      const Matrix fd = (logm(bayes_flow(p, tt + h).psd().sym()).matrix() -
                         logm(bayes_flow(p, tt - h).psd().sym()).matrix()) /
                        (2.0 * h);
      const double drift = (bayes_flow(p, tt).matrix() * log_lik).trace();
      worst_ode = std::max(
          worst_ode, (fd - (log_lik - drift * Matrix::Identity(n, n))).norm());
    }
  }
  report(7, worst_posterior <= 1e-10 && worst_ode <= 1e-5,
         "posterior mismatch " + fmt(worst_posterior) + ", ODE residual " +
             fmt(worst_ode));
}

// Criterion 8: diagonal densities only see the eigenvalue average of a
// Hadamard-eigensystem random variable.
void criterion_8() {
  Matrix h(4, 4);
  h << 1, 1, 1, 1, 1, -1, 1, -1, 1, 1, -1, -1, 1, -1, -1, 1;
  h *= 0.5;
  Rng rng(8);
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    Vector sigma(4);
    for (int i = 0; i < 4; ++i) sigma(i) = rng.uniform(-2.0, 2.0);
    const SymmetricMatrix s(h * sigma.asDiagonal() * h.transpose());
    const DensityMatrix w = DensityMatrix::diagonal(random_prob_vector(rng, 4));
    worst = std::max(worst, std::abs(expectation(w, s) - s.trace() / 4.0));
  }
  report(8, worst <= 1e-10, "worst deviation from tr(S)/4: " + fmt(worst));
}

} // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  std::printf("%s\n", g_failures == 0 ? "all criteria passed" : "FAILURES PRESENT");
  return g_failures;
}
