#pragma once

#include "dmcalc/tensor.hpp"

namespace dmcalc {

enum class CondKind {
  FullGivenB,  // D(A|B): PSD over the joint space, trace <= n_B
  FullGivenA,  // D(B|A): PSD over the joint space, trace <= n_A
};

/// Conditional density matrix over the joint space, with the factor
/// dimensions and which side is conditioned on.
struct ConditionalMatrix {
  PsdMatrix psd;
  int na;
  int nb;
  CondKind kind;
};

/// D(A|B) = D(A,B) (.) (I_A (x) D(B))^-1; requires an invertible D(B).
ConditionalMatrix cond_full(const JointDensity& j);
/// D(B|A) = D(A,B) (.) (D(A) (x) I_B)^-1, the same construction with the
/// roles of the factors swapped (the result still lives on A (x) B).
ConditionalMatrix cond_full_given_a(const JointDensity& j);

/// D(A|b) = D(A,b) / D(b).
DensityMatrix cond_A_given_b(const JointDensity& j, const UnitVector& b);

/// D(a|B) = D(a,B) (.) D(B)^-1.
PsdMatrix cond_a_given_B(const JointDensity& j, const UnitVector& a);

/// D(a|b) = D(a,b) / D(b).
double cond_scalar(const JointDensity& j, const UnitVector& a, const UnitVector& b);

/// Reassemble the joint D(A,B) = D(A|B) (.) (I_A (x) W) from a conditional of
/// FullGivenB kind and a candidate marginal W for D(B).
Matrix joint_from_conditional(const ConditionalMatrix& c, const DensityMatrix& w);

/// Marginalization rules for conditionals.  Each takes the full conditional
/// D(A|B) plus the marginal D(B) it was normalized with (mc4/mc5 take the
/// smaller conditionals instead) and produces the smaller conditional.
double mc1(const ConditionalMatrix& c, const DensityMatrix& db,
           const UnitVector& a, const UnitVector& b);
DensityMatrix mc2(const ConditionalMatrix& c, const DensityMatrix& db,
                  const UnitVector& b);
PsdMatrix mc3(const ConditionalMatrix& c, const DensityMatrix& db,
              const UnitVector& a);
double mc4(const DensityMatrix& cond_A_b, const UnitVector& a);
double mc5(const PsdMatrix& cond_a_B, const DensityMatrix& db, const UnitVector& b);

/// Both sides of the (.)-form conditional identity
///   tr(D(A|B) (.) (aa^T (x) bb^T)) = tr(D(A,B) (.) (aa^T (x) bb^T)) / tr(D(B) (.) bb^T).
std::pair<double, double> odot_conditional_identity(const JointDensity& j,
                                                    const UnitVector& a,
                                                    const UnitVector& b);

/// Decoupled iff tr(D(A|B)) is within tol::decoupled of n_B.
bool is_decoupled(const ConditionalMatrix& c);

struct EmResult {
  DensityMatrix marginal;
  int iterations;
  double residual;             // ||W_{t+1} - W_t||_F at exit
  double reconstruction_error; // ||cond_full(C (.) (I (x) W)) - C||_F
  bool converged;
  std::vector<double> history; // residual after each iteration
};

/// Fixed-point recovery of D(B) from a non-decoupled conditional D(A|B):
///   W_{t+1} = tr_A(C (.) (I_A (x) W_t)) / tr(C (.) (I_A (x) W_t)),
/// starting from W_0 = I_B / n_B.  Convergence is a conjecture; em_recover
/// reports the outcome, em_recover_marginal throws NotConverged instead.
EmResult em_recover(const ConditionalMatrix& c, int max_iter = 10000,
                    double tolerance = 1e-9);
DensityMatrix em_recover_marginal(const ConditionalMatrix& c, int max_iter = 10000,
                                  double tolerance = 1e-9);

/// D(a|b) realized as two successive measurements of the joint: collapse by
/// the event I_A (x) bb^T, then measure aa^T (x) I_B.
double two_measurement_conditional(const JointDensity& j, const UnitVector& a,
                                   const UnitVector& b);

} // namespace dmcalc
