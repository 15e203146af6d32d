#pragma once

#include <doctest.h>

#include "dmcalc/linalg.hpp"

namespace dmtest {

inline double frob_diff(const dmcalc::Matrix& a, const dmcalc::Matrix& b) {
  return (a - b).norm();
}

inline dmcalc::Matrix mat2(double a, double b, double c, double d) {
  dmcalc::Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

inline dmcalc::Vector vec(std::initializer_list<double> xs) {
  dmcalc::Vector v(static_cast<int>(xs.size()));
  int i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

} // namespace dmtest
