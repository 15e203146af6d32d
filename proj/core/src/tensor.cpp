#include "dmcalc/tensor.hpp"

namespace dmcalc {

Matrix kron(const Matrix& e, const Matrix& f) {
  Matrix out(e.rows() * f.rows(), e.cols() * f.cols());
  for (Eigen::Index i = 0; i < e.rows(); ++i)
    for (Eigen::Index j = 0; j < e.cols(); ++j)
      out.block(i * f.rows(), j * f.cols(), f.rows(), f.cols()) = e(i, j) * f;
  return out;
}

Vector kron_vec(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

namespace {

void check_joint_dims(const Matrix& g, int na, int nb, const char* who) {
  if (na <= 0 || nb <= 0 || g.rows() != g.cols() ||
      g.rows() != static_cast<Eigen::Index>(na) * nb)
    throw InvalidInput(std::string(who) + ": matrix is not (na*nb) x (na*nb)");
}

} // namespace

Matrix partial_trace_a(const Matrix& g, int na, int nb) {
  check_joint_dims(g, na, nb, "partial_trace_a");
  Matrix out = Matrix::Zero(nb, nb);
  for (int i = 0; i < na; ++i)
    out += g.block(i * nb, i * nb, nb, nb);
  return out;
}

Matrix partial_trace_b(const Matrix& g, int na, int nb) {
  check_joint_dims(g, na, nb, "partial_trace_b");
  Matrix out(na, na);
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < na; ++j)
      out(i, j) = g.block(i * nb, j * nb, nb, nb).trace();
  return out;
}

JointDensity::JointDensity(const DensityMatrix& density, int na, int nb)
    : density_(density), na_(na), nb_(nb) {
  if (na <= 0 || nb <= 0 || density.dim() != na * nb)
    throw InvalidInput("JointDensity: dim != na*nb");
}

DensityMatrix marginal_a(const JointDensity& j) {
  return DensityMatrix(PsdMatrix(partial_trace_b(j.matrix(), j.dim_a(), j.dim_b())));
}

DensityMatrix marginal_b(const JointDensity& j) {
  return DensityMatrix(PsdMatrix(partial_trace_a(j.matrix(), j.dim_a(), j.dim_b())));
}

double joint_prob(const JointDensity& j, const UnitVector& a, const UnitVector& b) {
  if (a.dim() != j.dim_a() || b.dim() != j.dim_b())
    throw InvalidInput("joint_prob: factor dimension mismatch");
  const Vector u = kron_vec(a.vector(), b.vector());
  const double p = u.dot(j.matrix() * u);
  if (p < -1e-10 || p > 1.0 + 1e-10)
    throw InvalidInput("joint_prob: value outside [0,1] beyond tolerance");
  return std::min(1.0, std::max(0.0, p));
}

PsdMatrix joint_slice_b(const JointDensity& j, const UnitVector& b) {
  if (b.dim() != j.dim_b())
    throw InvalidInput("joint_slice_b: dimension mismatch");
  const int na = j.dim_a(), nb = j.dim_b();
  Matrix out(na, na);
  for (int i = 0; i < na; ++i)
    for (int k = 0; k < na; ++k)
      out(i, k) = b.vector().dot(j.matrix().block(i * nb, k * nb, nb, nb) * b.vector());
  return PsdMatrix(SymmetricMatrix(0.5 * (out + out.transpose())));
}

PsdMatrix joint_slice_a(const JointDensity& j, const UnitVector& a) {
  if (a.dim() != j.dim_a())
    throw InvalidInput("joint_slice_a: dimension mismatch");
  const int na = j.dim_a(), nb = j.dim_b();
  Matrix out = Matrix::Zero(nb, nb);
  for (int i = 0; i < na; ++i)
    for (int k = 0; k < na; ++k)
      out += a.vector()(i) * a.vector()(k) * j.matrix().block(i * nb, k * nb, nb, nb);
  return PsdMatrix(SymmetricMatrix(0.5 * (out + out.transpose())));
}

JointDensity independent_join(const DensityMatrix& wa, const DensityMatrix& wb) {
  return JointDensity(DensityMatrix(PsdMatrix(kron(wa.matrix(), wb.matrix()))),
                      wa.dim(), wb.dim());
}

} // namespace dmcalc
