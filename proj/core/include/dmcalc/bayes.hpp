#pragma once

#include "dmcalc/conditional.hpp"

namespace dmcalc {

/// Prior density over the model space plus a data-likelihood matrix: any
/// positive semidefinite matrix of the same dimension, no trace constraint.
struct BayesProblem {
  DensityMatrix prior;
  PsdMatrix likelihood;

  BayesProblem(DensityMatrix prior, PsdMatrix likelihood);
};

struct ConventionalPosterior {
  Vector posterior;
  double evidence;
};

/// P(M_i|y) = P(M_i) P(y|M_i) / P(y) on plain probability vectors.
ConventionalPosterior conventional_bayes(const Vector& prior, const Vector& likelihood);

struct GeneralizedPosterior {
  DensityMatrix posterior;
  double evidence;
};

/// Posterior (prior (.) likelihood) / evidence with evidence
/// tr(prior (.) likelihood); throws ZeroEvidence when the ranges do not meet.
GeneralizedPosterior generalized_bayes(const BayesProblem& p);

/// Relative-entropy objective whose unique minimizer is the generalized
/// posterior: Delta(W, prior) - tr(W logm+ likelihood), +infinity whenever a
/// range condition is violated.  The minimum value is -log(evidence).
double bayes_objective(const DensityMatrix& w, const BayesProblem& p);

/// Theorems of total probability, each cross-checkable against the direct
/// marginal of the joint the inputs came from.
double total_probability_1(const JointDensity& j, const UnitVector& a,
                           const OrthonormalBasis& basis_b);
DensityMatrix total_probability_2(const JointDensity& j, const OrthonormalBasis& basis_b);
DensityMatrix total_probability_3(const JointDensity& j);

struct ExpectedVarianceBounds {
  double exact;             // tr(D(a|B) (.) D(B)) = D(a)
  double bound_variance;    // sum_i w_i  u_i^T D(a|B) u_i  over D(B) eigenpairs
  double bound_measurement; // sum_i D(u_i) lambda_i        over D(a|B) eigenpairs
};

ExpectedVarianceBounds expected_variance_bounds(const JointDensity& j, const UnitVector& a);

/// Bayes rules expressing one conditional through the reverse one.
ConditionalMatrix bayes_rule_1(const ConditionalMatrix& cond_a_given_b_full,
                               const DensityMatrix& db);
PsdMatrix bayes_rule_2(double prob_a, const DensityMatrix& cond_B_given_a,
                       const DensityMatrix& db);
GeneralizedPosterior bayes_rule_3(const DensityMatrix& db, const PsdMatrix& cond_a_B);
double bayes_rule_4(double cond_a_given_b, double prob_b, double evidence_a);

struct ChainResult {
  DensityMatrix posterior;
  double total_evidence;
  std::vector<double> step_evidences;
};

/// Sequential generalized Bayes updates; the product of stepwise evidences
/// equals the evidence of the single (.)-chained update.
ChainResult chain_update(const DensityMatrix& prior, const std::vector<PsdMatrix>& likelihoods);

struct MapBoundChain {
  double neg_log_evidence;
  double min_prob_domain; // min_m -log m^T (prior (.) lik) m
  double min_log_remote;  // min_m -m^T logm+(prior (.) lik) m
  double min_log_split;   // min_m -m^T logm+ lik m - m^T logm+ prior m
  bool chain_holds;       // neg_log_evidence <= min1 <= min2 <= min3
};

struct MapBoundTerms {
  double prob_domain;
  double log_remote;
  double log_split;
};

/// The three inner values of the MAP bound chain at a single direction m
/// (+infinity outside the relevant ranges).
MapBoundTerms map_bound_terms(const BayesProblem& p, const UnitVector& m);

/// Minimizes the chain over a finite candidate set: the eigenvectors of the
/// prior, of the likelihood and of their (.) product, plus any extra
/// directions supplied by the caller.
MapBoundChain map_bound(const BayesProblem& p, const std::vector<UnitVector>& extra = {});

struct MaxLikelihoodBound {
  double evidence; // tr(prior (.) likelihood)
  double bound;    // lambda_max(likelihood)
};

MaxLikelihoodBound max_likelihood_bound(const BayesProblem& p);

/// Continuous Bayes flow D(M|t) = (prior (.) likelihood^t) / trace; t = 0 is
/// the prior, t = 1 the generalized posterior.  Requires strictly positive
/// definite inputs.
DensityMatrix bayes_flow(const BayesProblem& p, double t);

struct PinchedObjective {
  double objective; // -log sum_i tr(prior (.) w_i w_i^T) tr(lik (.) w_i w_i^T)
  double floor;     // -log tr(prior (.) lik)
};

/// Pinched-Bayes objective over a full orthonormal system; always at least
/// the floor, with equality on an eigensystem of prior (.) likelihood.
PinchedObjective pinched_bayes_check(const BayesProblem& p, const OrthonormalBasis& basis);

} // namespace dmcalc
