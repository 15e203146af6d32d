#pragma once

#include <utility>
#include <vector>

#include "dmcalc/odot.hpp"

namespace dmcalc {

/// Positive semidefinite matrix of unit trace: a generalized probability
/// distribution over dyads.  Construction renormalizes traces within 1e-6 of
/// one and rejects anything further off.
class DensityMatrix {
public:
  explicit DensityMatrix(const PsdMatrix& p);
  explicit DensityMatrix(const Matrix& m) : DensityMatrix(PsdMatrix(m)) {}
  static DensityMatrix uniform(int dim);
  static DensityMatrix diagonal(const Vector& probs);
  static DensityMatrix dyad(const UnitVector& u);

  int dim() const { return psd_.dim(); }
  const PsdMatrix& psd() const { return psd_; }
  const Matrix& matrix() const { return psd_.matrix(); }

private:
  PsdMatrix psd_;
};

/// Projection matrix viewed as an event: eigenvalues in {0,1}.
class EventMatrix {
public:
  explicit EventMatrix(const PsdMatrix& p);
  static EventMatrix from_basis(const OrthonormalBasis& r);

  int dim() const { return psd_.dim(); }
  const PsdMatrix& psd() const { return psd_; }
  const Matrix& matrix() const { return psd_.matrix(); }

private:
  PsdMatrix psd_;
};

/// Generalized probability of the dyad uu^T: u^T W u, clamped to [0,1].
double prob_dyad(const DensityMatrix& w, const UnitVector& u);

/// tr(W P): sum of the probabilities of the event's eigendyads.
double prob_event(const DensityMatrix& w, const EventMatrix& p);

/// Expectation tr(W S) of the random variable S.
double expectation(const DensityMatrix& w, const SymmetricMatrix& s);

struct CollapseOutcome {
  double probability;
  UnitVector direction;
};

/// Measurement of W with instrument S: outcome probabilities over an
/// eigenbasis of S (descending eigenvalue order).
std::vector<CollapseOutcome> collapse(const DensityMatrix& w, const SymmetricMatrix& s);

/// Mixture sum_i weights[i] * v_i v_i^T; weights must be a probability vector.
DensityMatrix mixture_to_density(const std::vector<double>& weights,
                                 const std::vector<UnitVector>& vectors);

/// Quantum relative entropy tr(A (logm+ A - logm+ B)); +infinity unless
/// range(A) is contained in range(B).
double relative_entropy(const DensityMatrix& a, const DensityMatrix& b);

/// -sum_i lambda_i ln lambda_i over the eigenvalues (0 ln 0 = 0).
double von_neumann_entropy(const DensityMatrix& w);

/// Remote pinching of A onto a full orthonormal system: component i is
/// tr(A (.) u_i u_i^T).
Vector remote_pinching(const PsdMatrix& a, const OrthonormalBasis& basis);

} // namespace dmcalc
