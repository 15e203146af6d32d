#include "dmcalc/bayes.hpp"

#include <cmath>
#include <limits>

namespace dmcalc {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

BayesProblem::BayesProblem(DensityMatrix prior_in, PsdMatrix likelihood_in)
    : prior(std::move(prior_in)), likelihood(std::move(likelihood_in)) {
  if (prior.dim() != likelihood.dim())
    throw InvalidInput("BayesProblem: prior/likelihood dimension mismatch");
}

ConventionalPosterior conventional_bayes(const Vector& prior, const Vector& likelihood) {
  if (prior.size() == 0 || prior.size() != likelihood.size())
    throw InvalidInput("conventional_bayes: size mismatch");
  if (!prior.allFinite() || !likelihood.allFinite())
    throw InvalidInput("conventional_bayes: non-finite entries");
  double sum = 0.0;
  for (Eigen::Index i = 0; i < prior.size(); ++i) {
    if (prior(i) < -1e-12 || likelihood(i) < -1e-12)
      throw InvalidInput("conventional_bayes: negative component");
    sum += prior(i);
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw InvalidInput("conventional_bayes: prior sums to " + std::to_string(sum));
  const double evidence = prior.dot(likelihood);
  if (evidence <= 0.0)
    throw ZeroEvidence("conventional_bayes: evidence is zero");
  return {prior.cwiseProduct(likelihood) / evidence, evidence};
}

GeneralizedPosterior generalized_bayes(const BayesProblem& p) {
  const PsdMatrix mixed = odot(p.prior.psd(), p.likelihood);
  const double evidence = mixed.trace();
  if (mixed.rank() == 0 || evidence <= 0.0)
    throw ZeroEvidence("generalized_bayes: prior and likelihood ranges do not meet");
  return {DensityMatrix(PsdMatrix(SymmetricMatrix(mixed.matrix() / evidence))), evidence};
}

namespace {

// tr(W logm+ A) under the range convention: -infinity when range(W) is not
// contained in range(A).
double trace_log(const PsdMatrix& w, const PsdMatrix& a) {
  if (!range_contained(w, a)) return -kInf;
  double value = 0.0;
  for (int j = 0; j < a.dim(); ++j) {
    const double av = a.eigenvalues()(j);
    if (av <= 0.0) continue;
    const Vector aj = a.eigenvectors().col(j);
    value += aj.dot(w.matrix() * aj) * std::log(av);
  }
  return value;
}

} // namespace

double bayes_objective(const DensityMatrix& w, const BayesProblem& p) {
  if (w.dim() != p.prior.dim())
    throw InvalidInput("bayes_objective: dimension mismatch");
  const double divergence = relative_entropy(w, p.prior);
  if (std::isinf(divergence)) return kInf;
  const double data_term = trace_log(w.psd(), p.likelihood);
  if (std::isinf(data_term)) return kInf;
  return divergence - data_term;
}

double total_probability_1(const JointDensity& j, const UnitVector& a,
                           const OrthonormalBasis& basis_b) {
  if (basis_b.ambient() != j.dim_b() || basis_b.k() != j.dim_b())
    throw InvalidInput("total_probability_1: need a full basis of B");
  const DensityMatrix db = marginal_b(j);
  double total = 0.0;
  for (int i = 0; i < basis_b.k(); ++i) {
    const UnitVector bi = basis_b.column(i);
    const double pb = prob_dyad(db, bi);
    if (pb <= tol::prob) continue;
    total += cond_scalar(j, a, bi) * pb;
  }
  return total;
}

DensityMatrix total_probability_2(const JointDensity& j, const OrthonormalBasis& basis_b) {
  if (basis_b.ambient() != j.dim_b() || basis_b.k() != j.dim_b())
    throw InvalidInput("total_probability_2: need a full basis of B");
  Matrix sum = Matrix::Zero(j.dim_a(), j.dim_a());
  for (int i = 0; i < basis_b.k(); ++i)
    sum += joint_slice_b(j, basis_b.column(i)).matrix();
  return DensityMatrix(PsdMatrix(sum));
}

DensityMatrix total_probability_3(const JointDensity& j) {
  const ConditionalMatrix c = cond_full(j);
  const Matrix joint = joint_from_conditional(c, marginal_b(j));
  return DensityMatrix(PsdMatrix(partial_trace_b(joint, j.dim_a(), j.dim_b())));
}

ExpectedVarianceBounds expected_variance_bounds(const JointDensity& j, const UnitVector& a) {
  const PsdMatrix cond = cond_a_given_B(j, a);
  const DensityMatrix db = marginal_b(j);
  ExpectedVarianceBounds out{};
  out.exact = odot(cond, db.psd()).trace();
  out.bound_variance = 0.0;
  for (int i = 0; i < db.dim(); ++i) {
    const Vector wi = db.psd().eigenvectors().col(i);
    out.bound_variance += db.psd().eigenvalues()(i) * wi.dot(cond.matrix() * wi);
  }
  out.bound_measurement = 0.0;
  for (int i = 0; i < cond.dim(); ++i) {
    const Vector ui = cond.eigenvectors().col(i);
    out.bound_measurement += ui.dot(db.matrix() * ui) * cond.eigenvalues()(i);
  }
  return out;
}

ConditionalMatrix bayes_rule_1(const ConditionalMatrix& c, const DensityMatrix& db) {
  if (c.kind != CondKind::FullGivenB)
    throw InvalidInput("bayes_rule_1: expects a D(A|B) conditional");
  const PsdMatrix lifted_b(kron(Matrix::Identity(c.na, c.na), db.matrix()));
  const PsdMatrix joint = odot(lifted_b, c.psd);
  const PsdMatrix da(partial_trace_b(joint.matrix(), c.na, c.nb));
  if (!da.full_rank())
    throw ConditioningOnNull("bayes_rule_1: D(A) is singular");
  const PsdMatrix lifted_a_inv(
      kron(pseudoinverse(da).matrix(), Matrix::Identity(c.nb, c.nb)));
  PsdMatrix result = odot(joint, lifted_a_inv);
  return ConditionalMatrix{std::move(result), c.na, c.nb, CondKind::FullGivenA};
}

PsdMatrix bayes_rule_2(double prob_a, const DensityMatrix& cond_B_given_a,
                       const DensityMatrix& db) {
  if (cond_B_given_a.dim() != db.dim())
    throw InvalidInput("bayes_rule_2: dimension mismatch");
  if (!db.psd().full_rank())
    throw ConditioningOnNull("bayes_rule_2: D(B) is singular");
  const PsdMatrix scaled(SymmetricMatrix(prob_a * cond_B_given_a.matrix()));
  return odot(scaled, pseudoinverse(db.psd()));
}

GeneralizedPosterior bayes_rule_3(const DensityMatrix& db, const PsdMatrix& cond_a_B) {
  return generalized_bayes(BayesProblem{db, cond_a_B});
}

double bayes_rule_4(double cond_a_given_b, double prob_b, double evidence_a) {
  if (evidence_a <= tol::prob)
    throw ConditioningOnNull("bayes_rule_4: D(a) is zero");
  return cond_a_given_b * prob_b / evidence_a;
}

ChainResult chain_update(const DensityMatrix& prior,
                         const std::vector<PsdMatrix>& likelihoods) {
  if (likelihoods.empty())
    throw InvalidInput("chain_update: no likelihoods");
  DensityMatrix current = prior;
  double total = 1.0;
  std::vector<double> steps;
  steps.reserve(likelihoods.size());
  for (const PsdMatrix& lik : likelihoods) {
    GeneralizedPosterior gp = generalized_bayes(BayesProblem{current, lik});
    total *= gp.evidence;
    steps.push_back(gp.evidence);
    current = std::move(gp.posterior);
  }
  return ChainResult{std::move(current), total, std::move(steps)};
}

namespace {

double quad_log_plus(const PsdMatrix& a, const UnitVector& m) {
  // m^T logm+ A m with the range convention (-infinity off-range).
  if (!a.full_rank() && range_residual(a, m) > tol::range_member) return -kInf;
  return m.vector().dot(logm_plus(a).matrix() * m.vector());
}

} // namespace

MapBoundTerms map_bound_terms(const BayesProblem& p, const UnitVector& m) {
  const PsdMatrix mixed = odot(p.prior.psd(), p.likelihood);
  MapBoundTerms t{};
  const double q = m.vector().dot(mixed.matrix() * m.vector());
  t.prob_domain = q > 0.0 ? -std::log(q) : kInf;
  const double lr = quad_log_plus(mixed, m);
  t.log_remote = std::isinf(lr) ? kInf : -lr;
  const double ll = quad_log_plus(p.likelihood, m);
  const double lp = quad_log_plus(p.prior.psd(), m);
  t.log_split = (std::isinf(ll) || std::isinf(lp)) ? kInf : -ll - lp;
  return t;
}

MapBoundChain map_bound(const BayesProblem& p, const std::vector<UnitVector>& extra) {
  const PsdMatrix mixed = odot(p.prior.psd(), p.likelihood);
  const double evidence = mixed.trace();

  std::vector<UnitVector> candidates;
  for (int i = 0; i < p.prior.dim(); ++i) {
    candidates.emplace_back(Vector(p.prior.psd().eigenvectors().col(i)));
    candidates.emplace_back(Vector(p.likelihood.eigenvectors().col(i)));
    candidates.emplace_back(Vector(mixed.eigenvectors().col(i)));
  }
  candidates.insert(candidates.end(), extra.begin(), extra.end());

  MapBoundChain out{};
  out.neg_log_evidence = evidence > 0.0 ? -std::log(evidence) : kInf;
  out.min_prob_domain = kInf;
  out.min_log_remote = kInf;
  out.min_log_split = kInf;
  for (const UnitVector& m : candidates) {
    const MapBoundTerms t = map_bound_terms(p, m);
    out.min_prob_domain = std::min(out.min_prob_domain, t.prob_domain);
    out.min_log_remote = std::min(out.min_log_remote, t.log_remote);
    out.min_log_split = std::min(out.min_log_split, t.log_split);
  }
  const double slack = 1e-9;
  out.chain_holds = out.neg_log_evidence <= out.min_prob_domain + slack &&
                    out.min_prob_domain <= out.min_log_remote + slack &&
                    out.min_log_remote <= out.min_log_split + slack;
  return out;
}

MaxLikelihoodBound max_likelihood_bound(const BayesProblem& p) {
  const PsdMatrix mixed = odot(p.prior.psd(), p.likelihood);
  return {mixed.trace(), p.likelihood.eigenvalues()(0)};
}

DensityMatrix bayes_flow(const BayesProblem& p, double t) {
  if (t < 0.0) throw InvalidInput("bayes_flow: t must be nonnegative");
  if (!p.prior.psd().full_rank() || !p.likelihood.full_rank())
    throw InvalidInput("bayes_flow: prior and likelihood must be strictly positive definite");
  const Matrix s = logm_plus(p.prior.psd()).matrix() + t * logm_plus(p.likelihood).matrix();
  // Shift the spectrum before exponentiating; the normalization cancels the
  // shift and the entries stay representable for large t.
  const EigenSystem es = eigendecompose(SymmetricMatrix(s));
  Vector w(es.values.size());
  for (int i = 0; i < w.size(); ++i) w(i) = std::exp(es.values(i) - es.values(0));
  const Matrix d = es.vectors * (w / w.sum()).asDiagonal() * es.vectors.transpose();
  return DensityMatrix(PsdMatrix(SymmetricMatrix(0.5 * (d + d.transpose()))));
}

PinchedObjective pinched_bayes_check(const BayesProblem& p, const OrthonormalBasis& basis) {
  if (basis.ambient() != p.prior.dim() || basis.k() != p.prior.dim())
    throw InvalidInput("pinched_bayes_check: need a full basis");
  double s = 0.0;
  for (int i = 0; i < basis.k(); ++i) {
    const UnitVector wi = basis.column(i);
    s += odot_dyad_trace(p.prior.psd(), wi) * odot_dyad_trace(p.likelihood, wi);
  }
  const PsdMatrix mixed = odot(p.prior.psd(), p.likelihood);
  PinchedObjective out{};
  out.objective = s > 0.0 ? -std::log(s) : kInf;
  const double ev = mixed.trace();
  out.floor = ev > 0.0 ? -std::log(ev) : kInf;
  return out;
}

} // namespace dmcalc
