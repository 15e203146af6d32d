#pragma once

#include "dmcalc/psd.hpp"

namespace dmcalc {

/// Commutative product of positive semidefinite matrices.
///
/// Full-rank arguments: expm(logm A + logm B).  In general the sum of the
/// modified logarithms is compressed onto the intersection of the ranges:
///   A (.) B = R expm(R^T (logm+ A + logm+ B) R) R^T,
/// with R an orthonormal basis of range(A) ∩ range(B); an empty intersection
/// gives the zero matrix.  The result's range is the intersection, so the
/// operation is discontinuous at rank boundaries.
PsdMatrix odot(const PsdMatrix& a, const PsdMatrix& b);

/// Finite stage (A^{1/n} B^{1/n})^n of the product-formula limit; n must be a
/// power of two, at most 2^20.  An oracle: not symmetric or PSD for finite n.
Matrix odot_limit(const PsdMatrix& a, const PsdMatrix& b, long n);

/// tr(A (.) uu^T): exp(u^T logm+ A u) when u lies in range(A), else 0.
double odot_dyad_trace(const PsdMatrix& a, const UnitVector& u);

} // namespace dmcalc
