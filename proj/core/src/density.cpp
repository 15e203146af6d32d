#include "dmcalc/density.hpp"

#include <cmath>
#include <limits>

namespace dmcalc {

namespace {

PsdMatrix normalized_trace_one(const PsdMatrix& p) {
  const double tr = p.trace();
  if (std::abs(tr - 1.0) > 1e-6)
    throw InvalidInput("DensityMatrix: trace " + std::to_string(tr) +
                       " too far from 1");
  if (tr == 1.0) return p;
  return PsdMatrix(SymmetricMatrix(p.matrix() / tr));
}

} // namespace

DensityMatrix::DensityMatrix(const PsdMatrix& p) : psd_(normalized_trace_one(p)) {}

DensityMatrix DensityMatrix::uniform(int dim) {
  return DensityMatrix(PsdMatrix(Matrix::Identity(dim, dim) / dim));
}

DensityMatrix DensityMatrix::diagonal(const Vector& probs) {
  return DensityMatrix(PsdMatrix::diagonal(probs));
}

DensityMatrix DensityMatrix::dyad(const UnitVector& u) {
  return DensityMatrix(PsdMatrix(SymmetricMatrix(u.dyad())));
}

EventMatrix::EventMatrix(const PsdMatrix& p) : psd_(p) {
  const double scale = std::max(1.0, p.eigenvalues()(0));
  for (int i = 0; i < p.dim(); ++i) {
    const double ev = p.eigenvalues()(i);
    if (std::min(std::abs(ev), std::abs(ev - 1.0)) > tol::rank * scale)
      throw InvalidInput("EventMatrix: eigenvalue " + std::to_string(ev) +
                         " is not in {0,1}");
  }
}

EventMatrix EventMatrix::from_basis(const OrthonormalBasis& r) {
  return EventMatrix(projector(r));
}

namespace {

double clamp_probability(double p, const char* who) {
  if (p < -1e-10 || p > 1.0 + 1e-10)
    throw InvalidInput(std::string(who) + ": value " + std::to_string(p) +
                       " outside [0,1] beyond tolerance");
  return std::min(1.0, std::max(0.0, p));
}

} // namespace

double prob_dyad(const DensityMatrix& w, const UnitVector& u) {
  if (w.dim() != u.dim()) throw InvalidInput("prob_dyad: dimension mismatch");
  return clamp_probability(u.vector().dot(w.matrix() * u.vector()), "prob_dyad");
}

double prob_event(const DensityMatrix& w, const EventMatrix& p) {
  if (w.dim() != p.dim()) throw InvalidInput("prob_event: dimension mismatch");
  return clamp_probability((w.matrix() * p.matrix()).trace(), "prob_event");
}

double expectation(const DensityMatrix& w, const SymmetricMatrix& s) {
  if (w.dim() != s.dim()) throw InvalidInput("expectation: dimension mismatch");
  return (w.matrix() * s.matrix()).trace();
}

std::vector<CollapseOutcome> collapse(const DensityMatrix& w, const SymmetricMatrix& s) {
  if (w.dim() != s.dim()) throw InvalidInput("collapse: dimension mismatch");
  const EigenSystem es = eigendecompose(s);
  std::vector<CollapseOutcome> out;
  out.reserve(static_cast<size_t>(w.dim()));
  for (int i = 0; i < w.dim(); ++i) {
    UnitVector dir{Vector(es.vectors.col(i))};
    out.push_back({prob_dyad(w, dir), dir});
  }
  return out;
}

DensityMatrix mixture_to_density(const std::vector<double>& weights,
                                 const std::vector<UnitVector>& vectors) {
  if (weights.empty() || weights.size() != vectors.size())
    throw InvalidInput("mixture_to_density: weights/vectors size mismatch");
  const int n = vectors.front().dim();
  double sum = 0.0;
  Matrix m = Matrix::Zero(n, n);
  for (size_t i = 0; i < weights.size(); ++i) {
    if (vectors[i].dim() != n)
      throw InvalidInput("mixture_to_density: mixed dimensions");
    if (weights[i] < -1e-12)
      throw InvalidInput("mixture_to_density: negative weight");
    sum += weights[i];
    m += weights[i] * vectors[i].dyad();
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw InvalidInput("mixture_to_density: weights sum to " + std::to_string(sum));
  return DensityMatrix(PsdMatrix(SymmetricMatrix(m)));
}

double relative_entropy(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim())
    throw InvalidInput("relative_entropy: dimension mismatch");
  if (!range_contained(a.psd(), b.psd()))
    return std::numeric_limits<double>::infinity();
  double value = 0.0;
  for (int i = 0; i < a.dim(); ++i) {
    const double av = a.psd().eigenvalues()(i);
    if (av > 0.0) value += av * std::log(av);
  }
  // tr(A logm+ B) via B's eigendyads.
  for (int j = 0; j < b.dim(); ++j) {
    const double bv = b.psd().eigenvalues()(j);
    if (bv <= 0.0) continue;
    const Vector bj = b.psd().eigenvectors().col(j);
    value -= bj.dot(a.matrix() * bj) * std::log(bv);
  }
  return value;
}

double von_neumann_entropy(const DensityMatrix& w) {
  double h = 0.0;
  for (int i = 0; i < w.dim(); ++i) {
    const double ev = w.psd().eigenvalues()(i);
    if (ev > 0.0) h -= ev * std::log(ev);
  }
  return h;
}

Vector remote_pinching(const PsdMatrix& a, const OrthonormalBasis& basis) {
  if (basis.ambient() != a.dim())
    throw InvalidInput("remote_pinching: dimension mismatch");
  if (basis.k() != a.dim())
    throw InvalidInput("remote_pinching: basis must be full");
  Vector out(a.dim());
  for (int i = 0; i < a.dim(); ++i)
    out(i) = odot_dyad_trace(a, basis.column(i));
  return out;
}

} // namespace dmcalc
