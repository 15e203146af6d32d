#include "dmcalc/conditional.hpp"

#include <cmath>
#include <limits>

namespace dmcalc {

namespace {

PsdMatrix lifted_inverse_b(const DensityMatrix& db, int na) {
  if (!db.psd().full_rank())
    throw ConditioningOnNull("cond_full: D(B) is singular");
  return PsdMatrix(kron(Matrix::Identity(na, na), pseudoinverse(db.psd()).matrix()));
}

PsdMatrix lifted_inverse_a(const DensityMatrix& da, int nb) {
  if (!da.psd().full_rank())
    throw ConditioningOnNull("cond_full_given_a: D(A) is singular");
  return PsdMatrix(kron(pseudoinverse(da.psd()).matrix(), Matrix::Identity(nb, nb)));
}

} // namespace

ConditionalMatrix cond_full(const JointDensity& j) {
  const DensityMatrix db = marginal_b(j);
  PsdMatrix c = odot(j.density().psd(), lifted_inverse_b(db, j.dim_a()));
  if (c.trace() > j.dim_b() + 1e-9)
    throw InvalidInput("cond_full: trace exceeds n_B beyond tolerance");
  return ConditionalMatrix{std::move(c), j.dim_a(), j.dim_b(), CondKind::FullGivenB};
}

ConditionalMatrix cond_full_given_a(const JointDensity& j) {
  const DensityMatrix da = marginal_a(j);
  PsdMatrix c = odot(j.density().psd(), lifted_inverse_a(da, j.dim_b()));
  if (c.trace() > j.dim_a() + 1e-9)
    throw InvalidInput("cond_full_given_a: trace exceeds n_A beyond tolerance");
  return ConditionalMatrix{std::move(c), j.dim_a(), j.dim_b(), CondKind::FullGivenA};
}

DensityMatrix cond_A_given_b(const JointDensity& j, const UnitVector& b) {
  const PsdMatrix slice = joint_slice_b(j, b);
  const double den = slice.trace();
  if (den <= tol::prob)
    throw ConditioningOnNull("cond_A_given_b: D(b) is zero");
  return DensityMatrix(PsdMatrix(SymmetricMatrix(slice.matrix() / den)));
}

PsdMatrix cond_a_given_B(const JointDensity& j, const UnitVector& a) {
  const DensityMatrix db = marginal_b(j);
  if (!db.psd().full_rank())
    throw ConditioningOnNull("cond_a_given_B: D(B) is singular");
  return odot(joint_slice_a(j, a), pseudoinverse(db.psd()));
}

double cond_scalar(const JointDensity& j, const UnitVector& a, const UnitVector& b) {
  const double den = prob_dyad(marginal_b(j), b);
  if (den <= tol::prob)
    throw ConditioningOnNull("cond_scalar: D(b) is zero");
  return joint_prob(j, a, b) / den;
}

Matrix joint_from_conditional(const ConditionalMatrix& c, const DensityMatrix& w) {
  if (c.kind != CondKind::FullGivenB)
    throw InvalidInput("joint_from_conditional: expects a D(A|B) conditional");
  if (w.dim() != c.nb)
    throw InvalidInput("joint_from_conditional: marginal dimension mismatch");
  const PsdMatrix lifted(kron(Matrix::Identity(c.na, c.na), w.matrix()));
  return odot(c.psd, lifted).matrix();
}

double mc1(const ConditionalMatrix& c, const DensityMatrix& db,
           const UnitVector& a, const UnitVector& b) {
  const Matrix jp = joint_from_conditional(c, db);
  const double den = b.vector().dot(db.matrix() * b.vector());
  if (den <= tol::prob) throw ConditioningOnNull("mc1: D(b) is zero");
  const Vector u = kron_vec(a.vector(), b.vector());
  return u.dot(jp * u) / den;
}

DensityMatrix mc2(const ConditionalMatrix& c, const DensityMatrix& db,
                  const UnitVector& b) {
  const JointDensity jp(DensityMatrix(PsdMatrix(joint_from_conditional(c, db))), c.na, c.nb);
  const double den = b.vector().dot(db.matrix() * b.vector());
  if (den <= tol::prob) throw ConditioningOnNull("mc2: D(b) is zero");
  const PsdMatrix slice = joint_slice_b(jp, b);
  return DensityMatrix(PsdMatrix(SymmetricMatrix(slice.matrix() / den)));
}

PsdMatrix mc3(const ConditionalMatrix& c, const DensityMatrix& db,
              const UnitVector& a) {
  const JointDensity jp(DensityMatrix(PsdMatrix(joint_from_conditional(c, db))), c.na, c.nb);
  if (!db.psd().full_rank())
    throw ConditioningOnNull("mc3: D(B) is singular");
  return odot(joint_slice_a(jp, a), pseudoinverse(db.psd()));
}

double mc4(const DensityMatrix& cond_A_b, const UnitVector& a) {
  return prob_dyad(cond_A_b, a);
}

double mc5(const PsdMatrix& cond_a_B, const DensityMatrix& db, const UnitVector& b) {
  const double den = b.vector().dot(db.matrix() * b.vector());
  if (den <= tol::prob) throw ConditioningOnNull("mc5: D(b) is zero");
  const Matrix mixed = odot(cond_a_B, db.psd()).matrix();
  return b.vector().dot(mixed * b.vector()) / den;
}

std::pair<double, double> odot_conditional_identity(const JointDensity& j,
                                                    const UnitVector& a,
                                                    const UnitVector& b) {
  const ConditionalMatrix c = cond_full(j);
  const UnitVector u(kron_vec(a.vector(), b.vector()));
  const double lhs = odot_dyad_trace(c.psd, u);
  const double den = odot_dyad_trace(marginal_b(j).psd(), b);
  if (den <= tol::prob)
    throw ConditioningOnNull("odot_conditional_identity: tr(D(B) (.) bb^T) is zero");
  const double rhs = odot_dyad_trace(j.density().psd(), u) / den;
  return {lhs, rhs};
}

bool is_decoupled(const ConditionalMatrix& c) {
  const double n = c.kind == CondKind::FullGivenB ? c.nb : c.na;
  return n - c.psd.trace() < tol::decoupled;
}

EmResult em_recover(const ConditionalMatrix& c, int max_iter, double tolerance) {
  if (c.kind != CondKind::FullGivenB)
    throw InvalidInput("em_recover: expects a D(A|B) conditional");
  if (is_decoupled(c))
    throw InvalidInput("em_recover: conditional is decoupled; the marginal is not unique");

  const Matrix eye_a = Matrix::Identity(c.na, c.na);
  Matrix w = Matrix::Identity(c.nb, c.nb) / c.nb;
  double residual = std::numeric_limits<double>::infinity();
  int iters = 0;
  bool converged = false;
  std::vector<double> history;
  history.reserve(64);
  while (iters < max_iter) {
    const PsdMatrix lifted(kron(eye_a, w));
    const Matrix jt = odot(c.psd, lifted).matrix();
    const Matrix num = partial_trace_a(jt, c.na, c.nb);
    const double den = num.trace();
    if (den <= tol::prob)
      throw ConditioningOnNull("em_recover: iterate trace vanished");
    const Matrix next = num / den;
    residual = (next - w).norm();
    w = next;
    ++iters;
    history.push_back(residual);
    if (residual <= tolerance) {
      converged = true;
      break;
    }
  }

  DensityMatrix marginal{PsdMatrix(w)};
  double recon = std::numeric_limits<double>::quiet_NaN();
  if (converged) {
    const Matrix rebuilt = joint_from_conditional(c, marginal);
    const JointDensity jr(DensityMatrix(PsdMatrix(rebuilt)), c.na, c.nb);
    recon = (cond_full(jr).psd.matrix() - c.psd.matrix()).norm();
  }
  return EmResult{std::move(marginal), iters, residual, recon, converged,
                  std::move(history)};
}

DensityMatrix em_recover_marginal(const ConditionalMatrix& c, int max_iter,
                                  double tolerance) {
  EmResult r = em_recover(c, max_iter, tolerance);
  if (!r.converged)
    throw NotConverged("em_recover_marginal: no fixed point after " +
                           std::to_string(r.iterations) + " iterations",
                       r.iterations, r.residual);
  return r.marginal;
}

double two_measurement_conditional(const JointDensity& j, const UnitVector& a,
                                   const UnitVector& b) {
  const Matrix event_b = kron(Matrix::Identity(j.dim_a(), j.dim_a()), b.dyad());
  const Matrix collapsed = event_b * j.matrix() * event_b;
  const double den = collapsed.trace();
  if (den <= tol::prob)
    throw ConditioningOnNull("two_measurement_conditional: D(b) is zero");
  const Matrix event_a = kron(a.dyad(), Matrix::Identity(j.dim_b(), j.dim_b()));
  return (collapsed * event_a).trace() / den;
}

} // namespace dmcalc
