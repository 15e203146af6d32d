#include "dmcalc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dmcalc/random.hpp"

namespace dmcalc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t fnv1a(const char* s) {
  std::uint64_t h = 1469598103934665603ull;
  for (; *s; ++s) {
    h ^= static_cast<unsigned char>(*s);
    h *= 1099511628211ull;
  }
  return h;
}

struct Ctx {
  Ctx(Rng r, const VerifyOptions& o) : rng(r), opt(o) {}

  Rng rng;
  const VerifyOptions& opt;
  double max_err = 0.0;
  bool hard_fail = false;
  std::string note;

  int dim() { return rng.uniform_int(opt.dim_min, opt.dim_max); }

  std::pair<int, int> joint_dims() {
    // Factor pairs whose joint dimension stays at desk scale.
    static const std::pair<int, int> pairs[] = {{2, 2}, {2, 3}, {3, 2}};
    std::pair<int, int> p = pairs[rng.uniform_int(0, 2)];
    if (p.first * p.second > std::max(4, opt.dim_max)) p = {2, 2};
    return p;
  }

  void observe(double err) { max_err = std::max(max_err, err); }

  void require(bool ok, const std::string& msg) {
    if (!ok) {
      hard_fail = true;
      if (note.empty()) note = msg;
    }
  }
};

using RuleBody = void (*)(Ctx&);

struct RuleSpec {
  const char* id;
  double tolerance;
  RuleBody body;
};

double rel(double actual, double expected) {
  return std::abs(actual - expected) / std::max(1.0, std::abs(expected));
}

double mat_rel(const Matrix& actual, const Matrix& expected) {
  return (actual - expected).norm() / std::max(1.0, expected.norm());
}

// Probability vectors bounded away from zero, so spectra stay clear of the
// rank threshold across all seeds.
Vector floored_probs(Rng& rng, int n) {
  const Vector p = random_prob_vector(rng, n);
  return 0.85 * p + Vector::Constant(n, 0.15 / n);
}

DensityMatrix vdensity(Rng& rng, int n) {
  const Matrix q = random_orthogonal(rng, n);
  const Vector p = floored_probs(rng, n);
  return DensityMatrix(PsdMatrix(q * p.asDiagonal() * q.transpose()));
}

JointDensity vjoint(Ctx& c) {
  const auto [na, nb] = c.joint_dims();
  return JointDensity(vdensity(c.rng, na * nb), na, nb);
}

PsdMatrix mixed_rank_psd(Rng& rng, int n) {
  const int r = rng.uniform() < 0.5 ? n : rng.uniform_int(1, std::max(1, n - 1));
  return random_psd_rank(rng, n, r);
}

UnitVector unit_in_range(Rng& rng, const PsdMatrix& a) {
  Vector g(a.rank());
  for (int i = 0; i < a.rank(); ++i) g(i) = rng.gaussian();
  Vector v = a.eigenvectors().leftCols(a.rank()) * g;
  if (v.norm() < 1e-6) v = a.eigenvectors().col(0);
  return UnitVector(v / v.norm());
}

struct Decoupled {
  JointDensity joint;
  Matrix wa, wb;
  Matrix omega; // na x nb joint eigenvalues
};

Decoupled make_decoupled(Rng& rng, int na, int nb) {
  const Matrix wa = random_orthogonal(rng, na);
  const Matrix wb = random_orthogonal(rng, nb);
  const Vector p = floored_probs(rng, na * nb);
  Matrix omega(na, nb);
  Matrix joint = Matrix::Zero(na * nb, na * nb);
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j) {
      omega(i, j) = p(i * nb + j);
      joint += omega(i, j) * kron(wa.col(i) * wa.col(i).transpose(),
                                  wb.col(j) * wb.col(j).transpose());
    }
  return Decoupled{JointDensity(DensityMatrix(PsdMatrix(joint)), na, nb), wa, wb, omega};
}

Matrix random_rect(Rng& rng, int rows, int cols) {
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = rng.gaussian();
  return m;
}

// ---------------------------------------------------------------------------
// OP suite
// ---------------------------------------------------------------------------

void op1_body(Ctx& c) {
  for (int t = 0; t < c.opt.trials; ++t) {
    const int n = c.dim();
    const PsdMatrix a = mixed_rank_psd(c.rng, n);
    const PsdMatrix b = mixed_rank_psd(c.rng, n);
    const PsdMatrix prod = odot(a, b);
    const OrthonormalBasis isect = intersect_ranges(a.range(), b.range());
    c.observe((prod.range_projector() - isect.projector_matrix()).norm());
  }
}

void op2_body(Ctx& c) {
  for (int t = 0; t < c.opt.trials; ++t) {
    const int n = c.dim();
    const PsdMatrix a = mixed_rank_psd(c.rng, n);
    // Compression route of the modified log versus the eigenvalue map.
    const OrthonormalBasis r = a.range();
    Matrix via_range = Matrix::Zero(n, n);
    if (r.k() > 0) {
      const Matrix compressed = r.columns().transpose() * a.matrix() * r.columns();
      via_range = r.columns() *
                  logm(SymmetricMatrix(0.5 * (compressed + compressed.transpose()))).matrix() *
                  r.columns().transpose();
    }
    c.observe(mat_rel(via_range, logm_plus(a).matrix()));
  }
  c.require((logm_plus(PsdMatrix::zero(3)).matrix()).norm() == 0.0,
            "logm_plus(0) must be the zero matrix");
}

void op3_body(Ctx& c) {
  for (int t = 0; t < c.opt.trials; ++t) {
    const int n = c.dim();
    const Matrix q = random_orthogonal(c.rng, n);
    Vector sa(n), sb(n);
    for (int i = 0; i < n; ++i) {
      sa(i) = c.rng.uniform(0.2, 2.5);
      sb(i) = c.rng.uniform(0.2, 2.5);
    }
    const PsdMatrix a(q * sa.asDiagonal() * q.transpose());
    const PsdMatrix b(q * sb.asDiagonal() * q.transpose());
    c.observe(mat_rel(odot(a, b).matrix(), a.matrix() * b.matrix()));
  }
}

void op4_body(Ctx& c) {
  for (int t = 0; t < c.opt.trials; ++t) {
    const int n = c.dim();
    const PsdMatrix a = mixed_rank_psd(c.rng, n);
    const PsdMatrix b = mixed_rank_psd(c.rng, n);
    c.observe(mat_rel(odot(a, b).matrix(), odot(b, a).matrix()));
  }
}

void op5_body(Ctx& c) {
  for (int t = 0; t < c.opt.trials; ++t) {
    const int n = c.dim();
    const PsdMatrix a = mixed_rank_psd(c.rng, n);
    c.observe(mat_rel(odot(a, PsdMatrix::identity(n)).matrix(), a.matrix()));
  }
}

void op6_body(Ctx& c) {
  for (int t = 0; t < c.opt.trials; ++t) {
    const int n = c.dim();
    const PsdMatrix a = mixed_rank_psd(c.rng, n);
    const PsdMatrix b = mixed_rank_psd(c.rng, n);
    const double scale = c.rng.uniform(0.1, 5.0);
    const PsdMatrix scaled(SymmetricMatrix(scale * a.matrix()));
    c.observe(mat_rel(odot(scaled, b).matrix(), scale * odot(a, b).matrix()));
  }
}

void op7_body(Ctx& c) {
  for (int t = 0; t < c.opt.trials; ++t) {
    const int n = c.dim();
    const PsdMatrix full = random_spd(c.rng, n);
    c.observe(mat_rel(odot(full, pseudoinverse(full)).matrix(), Matrix::Identity(n, n)));
    if (n >= 2) {
      const PsdMatrix lowrank = random_psd_rank(c.rng, n, n - 1);
      c.observe(mat_rel(odot(lowrank, pseudoinverse(lowrank)).matrix(),
                        lowrank.range_projector()));
    }
  }
}

void op8_body(Ctx& c) {
  for (int t = 0; t < c.opt.trials; ++t) {
    const int n = std::max(3, c.dim());
    auto draw = [&](int) {
      const int r = c.rng.uniform() < 0.5 ? n : n - 1;
      return random_psd_rank(c.rng, n, r);
    };
    const PsdMatrix a = draw(0), b = draw(1), d = draw(2);
    c.observe(mat_rel(odot(odot(a, b), d).matrix(), odot(a, odot(b, d)).matrix()));
  }
}

void op9_body(Ctx& c) {
  for (int t = 0; t < c.opt.trials; ++t) {
    const int n = c.dim();
    const PsdMatrix a = random_spd(c.rng, n);
    const PsdMatrix b = random_spd(c.rng, n);
    double prev = kInf;
    for (long m = 1; m <= 256; m <<= 1) {
      const double tr = odot_limit(a, b, m).trace();
      c.observe(std::max(0.0, tr - prev));
      prev = tr;
    }
  }
}

void op10_body(Ctx& c) {
  for (int t = 0; t < c.opt.trials; ++t) {
    const int n = c.dim();
    const PsdMatrix a = random_spd(c.rng, n);
    const PsdMatrix b = random_spd(c.rng, n);
    const double gap = odot(a, b).trace() - (a.matrix() * b.matrix()).trace();
    c.observe(std::max(0.0, gap - 1e-10) > 0 ? gap : 0.0);

    const Matrix q = random_orthogonal(c.rng, n);
    Vector sa(n), sb(n);
    for (int i = 0; i < n; ++i) {
      sa(i) = c.rng.uniform(0.2, 2.5);
      sb(i) = c.rng.uniform(0.2, 2.5);
    }
    const PsdMatrix ca(q * sa.asDiagonal() * q.transpose());
    const PsdMatrix cb(q * sb.asDiagonal() * q.transpose());
    const double commuting_gap =
        std::abs(odot(ca, cb).trace() - (ca.matrix() * cb.matrix()).trace());
    c.require(commuting_gap <= 1e-9, "commuting equality in OP10 violated");
  }
  // The three-factor analogue fails: exhibit a triple with
  // tr(A (.) B (.) C) > tr(ABC).
  bool found = false;
  double best = 0.0;
  for (int t = 0; t < std::max(2000, c.opt.trials * 20) && !found; ++t) {
    const int n = c.rng.uniform_int(2, 3);
    const PsdMatrix a = random_spd(c.rng, n, 0.05, 4.0);
    const PsdMatrix b = random_spd(c.rng, n, 0.05, 4.0);
    const PsdMatrix d = random_spd(c.rng, n, 0.05, 4.0);
    const double lhs = odot(odot(a, b), d).trace();
    const double rhs = (a.matrix() * b.matrix() * d.matrix()).trace();
    best = std::max(best, lhs - rhs);
    if (lhs > rhs + 1e-6) found = true;
  }
  c.require(found, "no triple with tr(A(.)B(.)C) > tr(ABC) found");
  if (found) c.note = "triple exhibit margin " + std::to_string(best);
}

void op11_body(Ctx& c) {
  for (int t = 0; t < c.opt.trials; ++t) {
    const int n = std::max(2, c.dim());
    const PsdMatrix a = random_psd_rank(c.rng, n, c.rng.uniform_int(1, n));
    const UnitVector u = unit_in_range(c.rng, a);
    const PsdMatrix dyad(SymmetricMatrix(u.dyad()));
    const double s = odot_dyad_trace(a, u);
    c.observe(mat_rel(odot(a, dyad).matrix(), s * u.dyad()));
  }
}

void op12_body(Ctx& c) {
  for (int t = 0; t < c.opt.trials; ++t) {
    const int n = c.dim();
    const PsdMatrix a = random_spd(c.rng, n);
    const UnitVector u = random_unit(c.rng, n);
    double arith = 0.0, geo = 1.0;
    for (int i = 0; i < n; ++i) {
      const double w = std::pow(a.eigenvectors().col(i).dot(u.vector()), 2);
      arith += w * a.eigenvalues()(i);
      geo *= std::pow(a.eigenvalues()(i), w);
    }
    c.observe(rel(u.vector().dot(a.matrix() * u.vector()), arith));
    c.observe(rel(odot_dyad_trace(a, u), geo));
  }
}

void op13_body(Ctx& c) {
  for (int t = 0; t < c.opt.trials; ++t) {
    const int n = c.dim();
    const PsdMatrix a = random_spd(c.rng, n);
    const PsdMatrix b = random_spd(c.rng, n);
    const double expected = a.det() * b.det();
    c.observe(std::abs(odot(a, b).det() - expected) / std::max(1e-3, std::abs(expected)));
  }
}

void op14_body(Ctx& c) {
  for (int t = 0; t < c.opt.trials; ++t) {
    const int n = c.dim();
    const PsdMatrix a = random_spd(c.rng, n);
    const OrthonormalBasis sys = random_orthonormal_system(c.rng, n);
    double prod = 1.0;
    for (int i = 0; i < n; ++i) prod *= odot_dyad_trace(a, sys.column(i));
    c.observe(rel(prod, a.det()));
    if (n >= 2) {
      const PsdMatrix low = random_psd_rank(c.rng, n, n - 1);
      const OrthonormalBasis sys2 = random_orthonormal_system(c.rng, n);
      double prod2 = 1.0;
      for (int i = 0; i < n; ++i) prod2 *= odot_dyad_trace(low, sys2.column(i));
      c.observe(std::abs(prod2));
    }
  }
}

void op15_body(Ctx& c) {
  for (int t = 0; t < c.opt.trials; ++t) {
    const int n = c.dim();
    const PsdMatrix a = random_spd(c.rng, n);
    const PsdMatrix b = random_spd(c.rng, n);
    const UnitVector u = random_unit(c.rng, n);
    const double lhs = odot_dyad_trace(odot(a, b), u);
    c.observe(rel(lhs, odot_dyad_trace(a, u) * odot_dyad_trace(b, u)));
  }
}

void op16_body(Ctx& c) {
  for (int t = 0; t < c.opt.trials; ++t) {
    const int n = std::max(2, c.dim());
    const PsdMatrix a = random_psd_rank(c.rng, n, c.rng.uniform_int(1, n));
    const UnitVector u = unit_in_range(c.rng, a);
    c.observe(rel(odot_dyad_trace(pseudoinverse(a), u), 1.0 / odot_dyad_trace(a, u)));
  }
}

void gt_body(Ctx& c) {
  for (int t = 0; t < c.opt.trials; ++t) {
    const int n = c.dim();
    const SymmetricMatrix s = random_symmetric(c.rng, n);
    const SymmetricMatrix w = random_symmetric(c.rng, n);
    const double lhs = (expm(s).matrix() * expm(w).matrix()).trace();
    const double rhs = expm(SymmetricMatrix(s.matrix() + w.matrix())).trace();
    c.observe(std::max(0.0, rhs - lhs) / std::max(1.0, rhs));

    const Matrix q = random_orthogonal(c.rng, n);
    Vector e1(n), e2(n);
    for (int i = 0; i < n; ++i) {
      e1(i) = c.rng.uniform(-1.5, 1.5);
      e2(i) = c.rng.uniform(-1.5, 1.5);
    }
    const SymmetricMatrix cs(q * e1.asDiagonal() * q.transpose());
    const SymmetricMatrix cw(q * e2.asDiagonal() * q.transpose());
    const double clhs = (expm(cs).matrix() * expm(cw).matrix()).trace();
    const double crhs = expm(SymmetricMatrix(cs.matrix() + cw.matrix())).trace();
    c.require(std::abs(clhs - crhs) <= 1e-9 * std::max(1.0, std::abs(crhs)),
              "Golden-Thompson equality for commuting arguments violated");
  }
}

void logsum_body(Ctx& c) {
  for (int t = 0; t < c.opt.trials; ++t) {
    const int n = c.dim();
    const SymmetricMatrix s = random_symmetric(c.rng, n);
    const SymmetricMatrix w = random_symmetric(c.rng, n);
    const PsdMatrix mixed = odot(PsdMatrix(expm(s).matrix()), PsdMatrix(expm(w).matrix()));
    c.observe(mat_rel(logm(mixed.sym()).matrix(), s.matrix() + w.matrix()));
  }
}

// ---------------------------------------------------------------------------
// KP suite
// ---------------------------------------------------------------------------

void kp1_body(Ctx& c) {
  for (int t = 0; t < c.opt.trials; ++t) {
    const Matrix e = random_rect(c.rng, c.rng.uniform_int(1, 3), c.rng.uniform_int(1, 3));
    const Matrix f = random_rect(c.rng, c.rng.uniform_int(1, 3), c.rng.uniform_int(1, 3));
    c.observe(max_abs(kron(e, f).transpose() - kron(e.transpose(), f.transpose())));
  }
}

void kp2_body(Ctx& c) {
  for (int t = 0; t < c.opt.trials; ++t) {
    const int n = c.rng.uniform_int(1, 3), m = c.rng.uniform_int(1, 3);
    const int p = c.rng.uniform_int(1, 3), q = c.rng.uniform_int(1, 3);
    const int r = c.rng.uniform_int(1, 3), s = c.rng.uniform_int(1, 3);
    const Matrix e = random_rect(c.rng, n, m), g = random_rect(c.rng, m, p);
    const Matrix f = random_rect(c.rng, q, r), h = random_rect(c.rng, r, s);
    c.observe(mat_rel(kron(e, f) * kron(g, h), kron(e * g, f * h)));
  }
}

void kp3_body(Ctx& c) {
  for (int t = 0; t < c.opt.trials; ++t) {
    const int n = c.rng.uniform_int(1, 4), m = c.rng.uniform_int(1, 4);
    const Matrix e = random_rect(c.rng, n, n), f = random_rect(c.rng, m, m);
    c.observe(rel(kron(e, f).trace(), e.trace() * f.trace()));
  }
}

void kp4_body(Ctx& c) {
  for (int t = 0; t < c.opt.trials; ++t) {
    const int na = c.rng.uniform_int(2, 3), nb = c.rng.uniform_int(2, 3);
    const SymmetricMatrix s = random_symmetric(c.rng, na);
    const SymmetricMatrix w = random_symmetric(c.rng, nb);
    const EigenSystem joint = eigendecompose(SymmetricMatrix(kron(s.matrix(), w.matrix())));
    const EigenSystem es = eigendecompose(s), ew = eigendecompose(w);
    std::vector<double> products;
    for (int i = 0; i < na; ++i)
      for (int j = 0; j < nb; ++j) products.push_back(es.values(i) * ew.values(j));
    std::sort(products.begin(), products.end(), std::greater<>());
    for (int i = 0; i < na * nb; ++i)
      c.observe(std::abs(joint.values(i) - products[static_cast<size_t>(i)]));
  }
}

void kp5_body(Ctx& c) {
  for (int t = 0; t < c.opt.trials; ++t) {
    const int na = c.rng.uniform_int(2, 3), nb = na == 3 ? 2 : c.rng.uniform_int(2, 3);
    const PsdMatrix a = random_spd(c.rng, na), d2 = random_spd(c.rng, na);
    const PsdMatrix b = random_spd(c.rng, nb), d = random_spd(c.rng, nb);
    const Matrix lhs = odot(PsdMatrix(kron(a.matrix(), b.matrix())),
                            PsdMatrix(kron(d2.matrix(), d.matrix())))
                           .matrix();
    const Matrix rhs = kron(odot(a, d2).matrix(), odot(b, d).matrix());
    c.observe(mat_rel(lhs, rhs));
  }
}

// ---------------------------------------------------------------------------
// PT suite
// ---------------------------------------------------------------------------

void pt1_body(Ctx& c) {
  for (int t = 0; t < c.opt.trials; ++t) {
    const int na = c.rng.uniform_int(2, 3), nb = c.rng.uniform_int(2, 3);
    const Matrix e = random_rect(c.rng, na, na), f = random_rect(c.rng, nb, nb);
    c.observe(mat_rel(partial_trace_a(kron(e, f), na, nb), e.trace() * f));
    c.observe(mat_rel(partial_trace_b(kron(e, f), na, nb), f.trace() * e));
  }
}

void pt2_body(Ctx& c) {
  for (int t = 0; t < c.opt.trials; ++t) {
    const int na = c.rng.uniform_int(2, 3), nb = c.rng.uniform_int(2, 3);
    const Matrix g = random_rect(c.rng, na * nb, na * nb);
    c.observe(rel(partial_trace_a(g, na, nb).trace(), g.trace()));
    c.observe(rel(partial_trace_b(g, na, nb).trace(), g.trace()));
  }
}

void pt3_body(Ctx& c) {
  for (int t = 0; t < c.opt.trials; ++t) {
    const int na = c.rng.uniform_int(2, 3), nb = c.rng.uniform_int(2, 3);
    const Matrix g = random_rect(c.rng, na * nb, na * nb);
    const Matrix f = random_rect(c.rng, nb, nb);
    const Matrix lift = kron(Matrix::Identity(na, na), f);
    c.observe(mat_rel(partial_trace_a(g * lift, na, nb), partial_trace_a(g, na, nb) * f));
    c.observe(mat_rel(partial_trace_a(lift * g, na, nb), f * partial_trace_a(g, na, nb)));
  }
}

void pt4_body(Ctx& c) {
  for (int t = 0; t < c.opt.trials; ++t) {
    const int na = c.rng.uniform_int(2, 3), nb = c.rng.uniform_int(2, 3);
    const Matrix g = random_rect(c.rng, na * nb, na * nb);
    const Matrix e = random_rect(c.rng, na, na), f = random_rect(c.rng, nb, nb);
    const double lhs = (g * kron(e, f)).trace();
    const Matrix inner = partial_trace_b(g * kron(Matrix::Identity(na, na), f), na, nb);
    c.observe(rel(lhs, (inner * e).trace()));
  }
}

// ---------------------------------------------------------------------------
// MJ suite
// ---------------------------------------------------------------------------

void mj1_body(Ctx& c) {
  for (int t = 0; t < c.opt.trials; ++t) {
    const int n = c.dim();
    const DensityMatrix w = vdensity(c.rng, n);
    const OrthonormalBasis sys = random_orthonormal_system(c.rng, n);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += prob_dyad(w, sys.column(i));
    c.observe(std::abs(sum - 1.0));
  }
}

void mj2_body(Ctx& c) {
  for (int t = 0; t < c.opt.trials; ++t) {
    const auto [na, nb] = c.joint_dims();
    const DensityMatrix wa = vdensity(c.rng, na), wb = vdensity(c.rng, nb);
    const JointDensity j = independent_join(wa, wb);
    c.observe(mat_rel(marginal_a(j).matrix(), wa.matrix()));
    c.observe(mat_rel(marginal_b(j).matrix(), wb.matrix()));

    const Decoupled d = make_decoupled(c.rng, na, nb);
    const Vector col_sums = d.omega.colwise().sum().transpose();
    Vector sorted = col_sums;
    std::sort(sorted.data(), sorted.data() + sorted.size(), std::greater<>());
    const Vector got = marginal_b(d.joint).psd().eigenvalues();
    for (int i = 0; i < nb; ++i) c.observe(std::abs(got(i) - sorted(i)));
  }
}

void l1_body(Ctx& c) {
  for (int t = 0; t < c.opt.trials; ++t) {
    const JointDensity j = vjoint(c);
    for (const DensityMatrix& m : {marginal_a(j), marginal_b(j)}) {
      c.observe(std::abs(m.matrix().trace() - 1.0));
      c.observe(std::max(0.0, -m.psd().eigenvalues().minCoeff()));
      c.observe(max_abs(m.matrix() - m.matrix().transpose()));
    }
  }
}

void mj3_body(Ctx& c) {
  for (int t = 0; t < c.opt.trials; ++t) {
    const JointDensity j = vjoint(c);
    const UnitVector a = random_unit(c.rng, j.dim_a());
    const UnitVector b = random_unit(c.rng, j.dim_b());
    const UnitVector ab(kron_vec(a.vector(), b.vector()));
    c.observe(std::abs(joint_prob(j, a, b) - prob_dyad(j.density(), ab)));

    const JointDensity prod = independent_join(vdensity(c.rng, j.dim_a()),
                                               vdensity(c.rng, j.dim_b()));
    c.observe(std::abs(joint_prob(prod, a, b) -
                       prob_dyad(marginal_a(prod), a) * prob_dyad(marginal_b(prod), b)));
  }
}

void mj4_body(Ctx& c) {
  for (int t = 0; t < c.opt.trials; ++t) {
    const JointDensity j = vjoint(c);
    const UnitVector b = random_unit(c.rng, j.dim_b());
    const PsdMatrix slice = joint_slice_b(j, b);
    c.observe(std::abs(slice.trace() - prob_dyad(marginal_b(j), b)));

    const OrthonormalBasis sys = random_orthonormal_system(c.rng, j.dim_b());
    Matrix sum = Matrix::Zero(j.dim_a(), j.dim_a());
    for (int i = 0; i < sys.k(); ++i) sum += joint_slice_b(j, sys.column(i)).matrix();
    c.observe(mat_rel(sum, marginal_a(j).matrix()));
  }
}

void mj5_body(Ctx& c) {
  for (int t = 0; t < c.opt.trials; ++t) {
    const JointDensity j = vjoint(c);
    for (int k = 0; k < 5; ++k) {
      const UnitVector a = random_unit(c.rng, j.dim_a());
      const UnitVector b = random_unit(c.rng, j.dim_b());
      const PsdMatrix slice = joint_slice_b(j, b);
      c.observe(std::abs(a.vector().dot(slice.matrix() * a.vector()) - joint_prob(j, a, b)));
    }
  }
}

// ---------------------------------------------------------------------------
// CP suite
// ---------------------------------------------------------------------------

void cp1_body(Ctx& c) {
  for (int t = 0; t < c.opt.trials; ++t) {
    const auto [na, nb] = c.joint_dims();
    const DensityMatrix wa = vdensity(c.rng, na), wb = vdensity(c.rng, nb);
    const ConditionalMatrix cp = cond_full(independent_join(wa, wb));
    c.observe(mat_rel(cp.psd.matrix(),
                      kron(wa.matrix(), Matrix::Identity(nb, nb))));
    c.observe(std::max(0.0, cp.psd.trace() - nb));

    const Decoupled d = make_decoupled(c.rng, na, nb);
    const Vector col_sums = d.omega.colwise().sum().transpose();
    Matrix expected = Matrix::Zero(na * nb, na * nb);
    for (int i = 0; i < na; ++i)
      for (int jj = 0; jj < nb; ++jj)
        expected += d.omega(i, jj) / col_sums(jj) *
                    kron(d.wa.col(i) * d.wa.col(i).transpose(),
                         d.wb.col(jj) * d.wb.col(jj).transpose());
    c.observe(mat_rel(cond_full(d.joint).psd.matrix(), expected));
  }
}

void cp2_body(Ctx& c) {
  for (int t = 0; t < c.opt.trials; ++t) {
    const auto [na, nb] = c.joint_dims();
    const DensityMatrix wa = vdensity(c.rng, na), wb = vdensity(c.rng, nb);
    const UnitVector b = random_unit(c.rng, nb);
    c.observe(mat_rel(cond_A_given_b(independent_join(wa, wb), b).matrix(), wa.matrix()));

    const JointDensity j = vjoint(c);
    const UnitVector a2 = random_unit(c.rng, j.dim_a());
    const UnitVector b2 = random_unit(c.rng, j.dim_b());
    c.observe(std::abs(prob_dyad(cond_A_given_b(j, b2), a2) - cond_scalar(j, a2, b2)));

    // Diagonal joint: the conventional column conditional.
    Matrix table(na, nb);
    const Vector p = floored_probs(c.rng, na * nb);
    Vector flat(na * nb);
    for (int i = 0; i < na; ++i)
      for (int jj = 0; jj < nb; ++jj) {
        table(i, jj) = p(i * nb + jj);
        flat(i * nb + jj) = table(i, jj);
      }
    const JointDensity diag(DensityMatrix(PsdMatrix::diagonal(flat)), na, nb);
    const int col = c.rng.uniform_int(0, nb - 1);
    const DensityMatrix cond = cond_A_given_b(diag, UnitVector::axis(nb, col));
    for (int i = 0; i < na; ++i)
      c.observe(std::abs(cond.matrix()(i, i) - table(i, col) / table.col(col).sum()));
  }
}

void cp3_body(Ctx& c) {
  for (int t = 0; t < c.opt.trials; ++t) {
    const auto [na, nb] = c.joint_dims();
    const DensityMatrix wa = vdensity(c.rng, na), wb = vdensity(c.rng, nb);
    const UnitVector a = random_unit(c.rng, na);
    const double pa = prob_dyad(wa, a);
    c.observe(mat_rel(cond_a_given_B(independent_join(wa, wb), a).matrix(),
                      pa * Matrix::Identity(nb, nb)));

    const Decoupled d = make_decoupled(c.rng, na, nb);
    const Vector col_sums = d.omega.colwise().sum().transpose();
    const UnitVector a2 = random_unit(c.rng, na);
    Matrix expected = Matrix::Zero(nb, nb);
    for (int i = 0; i < na; ++i)
      for (int jj = 0; jj < nb; ++jj) {
        const double w = std::pow(d.wa.col(i).dot(a2.vector()), 2);
        expected += d.omega(i, jj) * w / col_sums(jj) *
                    (d.wb.col(jj) * d.wb.col(jj).transpose());
      }
    c.observe(mat_rel(cond_a_given_B(d.joint, a2).matrix(), expected));
  }
}

void cp4_body(Ctx& c) {
  for (int t = 0; t < c.opt.trials; ++t) {
    const auto [na, nb] = c.joint_dims();
    const DensityMatrix wa = vdensity(c.rng, na), wb = vdensity(c.rng, nb);
    const UnitVector a = random_unit(c.rng, na), b = random_unit(c.rng, nb);
    c.observe(std::abs(cond_scalar(independent_join(wa, wb), a, b) - prob_dyad(wa, a)));

    const JointDensity j = vjoint(c);
    const UnitVector a2 = random_unit(c.rng, j.dim_a());
    const UnitVector b2 = random_unit(c.rng, j.dim_b());
    c.observe(std::abs(cond_scalar(j, a2, b2) - two_measurement_conditional(j, a2, b2)));
  }
}

void cp2p_body(Ctx& c) {
  for (int t = 0; t < c.opt.trials; ++t) {
    const JointDensity j = vjoint(c);
    const int na = j.dim_a(), nb = j.dim_b();
    const UnitVector b = random_unit(c.rng, nb);
    const Matrix db = marginal_b(j).matrix();
    const PsdMatrix left(SymmetricMatrix(
        partial_trace_b(j.matrix() * kron(Matrix::Identity(na, na), b.dyad()), na, nb)));
    const Matrix norm =
        partial_trace_b(kron(Matrix::Identity(na, na), db) *
                            kron(Matrix::Identity(na, na), b.dyad()),
                        na, nb);
    const PsdMatrix norm_inv = pseudoinverse(PsdMatrix(norm));
    const Matrix primed = odot(left, norm_inv).matrix();
    c.observe(mat_rel(primed, cond_A_given_b(j, b).matrix()));
  }
}

void cp3p_body(Ctx& c) {
  for (int t = 0; t < c.opt.trials; ++t) {
    const JointDensity j = vjoint(c);
    const int na = j.dim_a(), nb = j.dim_b();
    const UnitVector a = random_unit(c.rng, na);
    const PsdMatrix left(SymmetricMatrix(partial_trace_a(
        j.matrix() * kron(a.dyad(), Matrix::Identity(nb, nb)), na, nb)));
    const Matrix norm = partial_trace_a(
        kron(Matrix::Identity(na, na), marginal_b(j).matrix()) *
            kron(a.dyad(), Matrix::Identity(nb, nb)),
        na, nb);
    const Matrix primed = odot(left, pseudoinverse(PsdMatrix(norm))).matrix();
    c.observe(mat_rel(primed, cond_a_given_B(j, a).matrix()));
  }
}

void cp4p_body(Ctx& c) {
  for (int t = 0; t < c.opt.trials; ++t) {
    const JointDensity j = vjoint(c);
    const UnitVector a = random_unit(c.rng, j.dim_a());
    const UnitVector b = random_unit(c.rng, j.dim_b());
    const Matrix dyads = kron(a.dyad(), b.dyad());
    const double num = (j.matrix() * dyads).trace();
    const double den = (kron(Matrix::Identity(j.dim_a(), j.dim_a()),
                             marginal_b(j).matrix()) *
                        dyads)
                           .trace();
    c.observe(std::abs(num / den - cond_scalar(j, a, b)));
  }
}

void l2_body(Ctx& c) {
  for (int t = 0; t < c.opt.trials; ++t) {
    const auto [na, nb] = c.joint_dims();
    const Decoupled d = make_decoupled(c.rng, na, nb);
    c.observe(std::abs(cond_full(d.joint).psd.trace() - nb));

    const JointDensity generic = vjoint(c);
    const double tr = cond_full(generic).psd.trace();
    c.require(tr < generic.dim_b() - 1e-6,
              "generic joint reached the decoupled trace bound");
  }
}

void l3_body(Ctx& c) {
  for (int t = 0; t < c.opt.trials; ++t) {
    const auto [na, nb] = c.joint_dims();
    const Decoupled d = make_decoupled(c.rng, na, nb);
    const ConditionalMatrix cp = cond_full(d.joint);
    for (int k = 0; k < 2; ++k) {
      const UnitVector a = random_unit(c.rng, na);
      const Matrix rhs = partial_trace_a(
          cp.psd.matrix() * kron(a.dyad(), Matrix::Identity(nb, nb)), na, nb);
      c.observe(mat_rel(rhs, cond_a_given_B(d.joint, a).matrix()));
    }
  }
}

void cpodot_body(Ctx& c) {
  for (int t = 0; t < c.opt.trials; ++t) {
    const JointDensity j = vjoint(c);
    const UnitVector a = random_unit(c.rng, j.dim_a());
    const UnitVector b = random_unit(c.rng, j.dim_b());
    const auto [lhs, rhs] = odot_conditional_identity(j, a, b);
    c.observe(std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));

    const auto [na, nb] = c.joint_dims();
    const Decoupled d = make_decoupled(c.rng, na, nb);
    const UnitVector a2 = random_unit(c.rng, na);
    const UnitVector b2 = random_unit(c.rng, nb);
    const auto [l2v, r2v] = odot_conditional_identity(d.joint, a2, b2);
    c.observe(std::abs(l2v - r2v) / std::max(1.0, std::abs(r2v)));
  }
}

void cpnon_body(Ctx& c) {
  // The plain-product marginalization of D(A|B) is NOT D(a|b): exhibit a
  // decoupled joint and a non-eigen pair where the two differ.
  bool found = false;
  for (int t = 0; t < std::max(200, c.opt.trials) && !found; ++t) {
    const auto [na, nb] = c.joint_dims();
    const Decoupled d = make_decoupled(c.rng, na, nb);
    const ConditionalMatrix cp = cond_full(d.joint);
    const UnitVector a = random_unit(c.rng, na);
    const UnitVector b = random_unit(c.rng, nb);
    const double plain = (cp.psd.matrix() * kron(a.dyad(), b.dyad())).trace();
    const double direct = cond_scalar(d.joint, a, b);
    if (std::abs(plain - direct) > 1e-3) found = true;
  }
  c.require(found, "no counterexample to the plain-product marginalization found");
}

void appa_body(Ctx& c) {
  for (int t = 0; t < c.opt.trials; ++t) {
    const JointDensity j = vjoint(c);
    const UnitVector a = random_unit(c.rng, j.dim_a());
    const UnitVector b = random_unit(c.rng, j.dim_b());
    c.observe(std::abs(two_measurement_conditional(j, a, b) - cond_scalar(j, a, b)));
  }
}

void colstoch_body(Ctx& c) {
  for (int t = 0; t < c.opt.trials; ++t) {
    const auto [na, nb] = c.joint_dims();
    const Vector flat = floored_probs(c.rng, na * nb);
    const JointDensity diag(DensityMatrix(PsdMatrix::diagonal(flat)), na, nb);
    for (int jj = 0; jj < nb; ++jj) {
      double colsum = 0.0;
      for (int i = 0; i < na; ++i)
        colsum += cond_scalar(diag, UnitVector::axis(na, i), UnitVector::axis(nb, jj));
      c.observe(std::abs(colsum - 1.0));
    }
  }
}

// ---------------------------------------------------------------------------
// MC suite
// ---------------------------------------------------------------------------

void mc1_rule(Ctx& c) {
  for (int t = 0; t < c.opt.trials; ++t) {
    const JointDensity j = vjoint(c);
    const ConditionalMatrix cp = cond_full(j);
    const DensityMatrix db = marginal_b(j);
    const UnitVector a = random_unit(c.rng, j.dim_a());
    const UnitVector b = random_unit(c.rng, j.dim_b());
    c.observe(std::abs(mc1(cp, db, a, b) - cond_scalar(j, a, b)));
  }
}

void mc2_rule(Ctx& c) {
  for (int t = 0; t < c.opt.trials; ++t) {
    const JointDensity j = vjoint(c);
    const UnitVector b = random_unit(c.rng, j.dim_b());
    c.observe(mat_rel(mc2(cond_full(j), marginal_b(j), b).matrix(),
                      cond_A_given_b(j, b).matrix()));
  }
}

void mc3_rule(Ctx& c) {
  for (int t = 0; t < c.opt.trials; ++t) {
    const JointDensity j = vjoint(c);
    const UnitVector a = random_unit(c.rng, j.dim_a());
    c.observe(mat_rel(mc3(cond_full(j), marginal_b(j), a).matrix(),
                      cond_a_given_B(j, a).matrix()));
  }
}

void mc4_rule(Ctx& c) {
  for (int t = 0; t < c.opt.trials; ++t) {
    const JointDensity j = vjoint(c);
    const UnitVector a = random_unit(c.rng, j.dim_a());
    const UnitVector b = random_unit(c.rng, j.dim_b());
    c.observe(std::abs(mc4(cond_A_given_b(j, b), a) - cond_scalar(j, a, b)));
  }
}

void mc5_rule(Ctx& c) {
  for (int t = 0; t < c.opt.trials; ++t) {
    const JointDensity j = vjoint(c);
    const UnitVector a = random_unit(c.rng, j.dim_a());
    const UnitVector b = random_unit(c.rng, j.dim_b());
    c.observe(std::abs(mc5(cond_a_given_B(j, a), marginal_b(j), b) -
                       cond_scalar(j, a, b)));
  }
}

// ---------------------------------------------------------------------------
// TP suite
// ---------------------------------------------------------------------------

void tp1_body(Ctx& c) {
  for (int t = 0; t < c.opt.trials; ++t) {
    const JointDensity j = vjoint(c);
    const UnitVector a = random_unit(c.rng, j.dim_a());
    const OrthonormalBasis sys = random_orthonormal_system(c.rng, j.dim_b());
    c.observe(std::abs(total_probability_1(j, a, sys) - prob_dyad(marginal_a(j), a)));
  }
}

void tp2_body(Ctx& c) {
  for (int t = 0; t < c.opt.trials; ++t) {
    const JointDensity j = vjoint(c);
    const OrthonormalBasis sys = random_orthonormal_system(c.rng, j.dim_b());
    c.observe(mat_rel(total_probability_2(j, sys).matrix(), marginal_a(j).matrix()));
  }
}

void tp3_body(Ctx& c) {
  for (int t = 0; t < c.opt.trials; ++t) {
    const JointDensity j = vjoint(c);
    c.observe(mat_rel(total_probability_3(j).matrix(), marginal_a(j).matrix()));
  }
}

void evar_body(Ctx& c) {
  for (int t = 0; t < c.opt.trials; ++t) {
    const JointDensity j = vjoint(c);
    const UnitVector a = random_unit(c.rng, j.dim_a());
    const ExpectedVarianceBounds ev = expected_variance_bounds(j, a);
    c.observe(std::max(0.0, ev.exact - ev.bound_variance));
    c.observe(std::abs(ev.bound_variance - ev.bound_measurement));

    const JointDensity prod = independent_join(vdensity(c.rng, j.dim_a()),
                                               vdensity(c.rng, j.dim_b()));
    const ExpectedVarianceBounds evp = expected_variance_bounds(prod, a);
    c.require(std::abs(evp.exact - evp.bound_variance) <= 1e-9,
              "commuting expected-variance bound is not tight");
  }
}

// ---------------------------------------------------------------------------
// BR suite
// ---------------------------------------------------------------------------

void br1_body(Ctx& c) {
  for (int t = 0; t < c.opt.trials; ++t) {
    const JointDensity j = vjoint(c);
    const ConditionalMatrix reversed = bayes_rule_1(cond_full(j), marginal_b(j));
    c.observe(mat_rel(reversed.psd.matrix(), cond_full_given_a(j).psd.matrix()));
  }
}

void br2_body(Ctx& c) {
  for (int t = 0; t < c.opt.trials; ++t) {
    const JointDensity j = vjoint(c);
    const UnitVector a = random_unit(c.rng, j.dim_a());
    const double pa = prob_dyad(marginal_a(j), a);
    const PsdMatrix slice = joint_slice_a(j, a);
    const DensityMatrix cond_b_a(PsdMatrix(SymmetricMatrix(slice.matrix() / pa)));
    c.observe(mat_rel(bayes_rule_2(pa, cond_b_a, marginal_b(j)).matrix(),
                      cond_a_given_B(j, a).matrix()));
  }
}

void br3_body(Ctx& c) {
  for (int t = 0; t < c.opt.trials; ++t) {
    const JointDensity j = vjoint(c);
    const UnitVector a = random_unit(c.rng, j.dim_a());
    const GeneralizedPosterior gp = bayes_rule_3(marginal_b(j), cond_a_given_B(j, a));
    const double pa = prob_dyad(marginal_a(j), a);
    const Matrix direct = joint_slice_a(j, a).matrix() / pa;
    c.observe(mat_rel(gp.posterior.matrix(), direct));
    c.observe(rel(gp.evidence, pa));
  }
}

void br4_body(Ctx& c) {
  for (int t = 0; t < c.opt.trials; ++t) {
    const JointDensity j = vjoint(c);
    const UnitVector a = random_unit(c.rng, j.dim_a());
    const UnitVector b = random_unit(c.rng, j.dim_b());
    const OrthonormalBasis sys = random_orthonormal_system(c.rng, j.dim_b());
    const double ev = total_probability_1(j, a, sys);
    const double got = bayes_rule_4(cond_scalar(j, a, b), prob_dyad(marginal_b(j), b), ev);
    const double direct = joint_prob(j, a, b) / prob_dyad(marginal_a(j), a);
    c.observe(std::abs(got - direct));
  }
}

// ---------------------------------------------------------------------------
// bounds suite
// ---------------------------------------------------------------------------

void chain_body(Ctx& c) {
  for (int t = 0; t < c.opt.trials; ++t) {
    const int n = c.dim();
    const DensityMatrix prior = vdensity(c.rng, n);
    const PsdMatrix l1 = random_spd(c.rng, n), l2 = random_spd(c.rng, n);
    const ChainResult chain = chain_update(prior, {l1, l2});
    const double direct = odot(odot(prior.psd(), l1), l2).trace();
    c.observe(rel(chain.total_evidence, direct));

    const ChainResult single = chain_update(prior, {l1});
    const GeneralizedPosterior gp = generalized_bayes(BayesProblem{prior, l1});
    c.observe(mat_rel(single.posterior.matrix(), gp.posterior.matrix()));
    c.observe(rel(single.total_evidence, gp.evidence));

    // Upper bound on the two-step data probability with plain products.
    const double bound = (gp.posterior.matrix() * l2.matrix()).trace() *
                         (prior.matrix() * l1.matrix()).trace();
    c.observe(std::max(0.0, chain.total_evidence - bound));

    // Diagonal chaining is the conventional chain rule.
    Vector dp = floored_probs(c.rng, n), dl1(n), dl2(n);
    for (int i = 0; i < n; ++i) {
      dl1(i) = c.rng.uniform(0.05, 1.0);
      dl2(i) = c.rng.uniform(0.05, 1.0);
    }
    const ChainResult dchain = chain_update(DensityMatrix::diagonal(dp),
                                            {PsdMatrix::diagonal(dl1), PsdMatrix::diagonal(dl2)});
    const ConventionalPosterior c1 = conventional_bayes(dp, dl1);
    const ConventionalPosterior c2 = conventional_bayes(c1.posterior, dl2);
    c.observe(rel(dchain.total_evidence, c1.evidence * c2.evidence));
    for (int i = 0; i < n; ++i)
      c.observe(std::abs(dchain.posterior.matrix()(i, i) - c2.posterior(i)));
  }
}

void mapb_body(Ctx& c) {
  for (int t = 0; t < c.opt.trials; ++t) {
    const int n = c.dim();
    const BayesProblem p{vdensity(c.rng, n), random_spd(c.rng, n)};
    std::vector<UnitVector> extra;
    for (int i = 0; i < 8; ++i) extra.push_back(random_unit(c.rng, n));
    const MapBoundChain mb = map_bound(p, extra);
    c.require(mb.chain_holds, "MAP bound chain violated");
    c.observe(std::max({0.0, mb.neg_log_evidence - mb.min_prob_domain,
                        mb.min_prob_domain - mb.min_log_remote,
                        mb.min_log_remote - mb.min_log_split}));

    // Diagonal case reduces to the componentwise MAP bound.
    Vector dp = floored_probs(c.rng, n), dl(n);
    for (int i = 0; i < n; ++i) dl(i) = c.rng.uniform(0.05, 1.0);
    const BayesProblem dprob{DensityMatrix::diagonal(dp), PsdMatrix::diagonal(dl)};
    const MapBoundChain dmb = map_bound(dprob);
    double best = kInf;
    for (int i = 0; i < n; ++i) best = std::min(best, -std::log(dl(i)) - std::log(dp(i)));
    c.observe(std::abs(dmb.min_log_split - best));
  }
}

void mlb_body(Ctx& c) {
  for (int t = 0; t < c.opt.trials; ++t) {
    const int n = c.dim();
    const DensityMatrix prior = vdensity(c.rng, n);
    const PsdMatrix lik = random_spd(c.rng, n);
    const MaxLikelihoodBound mlb = max_likelihood_bound(BayesProblem{prior, lik});
    const double intermediate = (lik.matrix() * prior.matrix()).trace();
    c.observe(std::max(0.0, mlb.evidence - intermediate));
    c.observe(std::max(0.0, intermediate - mlb.bound));

    // Tight when the prior is the top eigendyad of the likelihood.
    const UnitVector top(Vector(lik.eigenvectors().col(0)));
    const MaxLikelihoodBound tight =
        max_likelihood_bound(BayesProblem{DensityMatrix::dyad(top), lik});
    c.observe(rel(tight.evidence, tight.bound));
  }
}

double conventional_objective(const Vector& w, const Vector& prior, const Vector& lik) {
  double v = 0.0;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (w(i) <= 0.0) continue;
    v += w(i) * std::log(w(i) / prior(i)) - w(i) * std::log(lik(i));
  }
  return v;
}

void th3_body(Ctx& c) {
  for (int t = 0; t < c.opt.trials; ++t) {
    const int n = c.dim();
    const Vector prior = floored_probs(c.rng, n);
    Vector lik(n);
    for (int i = 0; i < n; ++i) lik(i) = c.rng.uniform(0.05, 1.0);
    const ConventionalPosterior cp = conventional_bayes(prior, lik);
    const double opt_value = conventional_objective(cp.posterior, prior, lik);
    c.observe(std::abs(opt_value + std::log(cp.evidence)));
    for (int k = 0; k < 3; ++k) {
      const Vector w = floored_probs(c.rng, n);
      c.observe(std::max(0.0, opt_value - conventional_objective(w, prior, lik)));
    }
  }
}

void th4_body(Ctx& c) {
  for (int t = 0; t < c.opt.trials; ++t) {
    const int n = c.dim();
    const BayesProblem p{vdensity(c.rng, n), random_spd(c.rng, n)};
    const GeneralizedPosterior gp = generalized_bayes(p);
    const double opt_value = bayes_objective(gp.posterior, p);
    c.observe(rel(opt_value, -std::log(gp.evidence)));
    for (int k = 0; k < 3; ++k) {
      const double mix = c.rng.uniform(0.05, 0.95);
      const Matrix perturbed =
          mix * gp.posterior.matrix() + (1.0 - mix) * vdensity(c.rng, n).matrix();
      const double value = bayes_objective(DensityMatrix(PsdMatrix(perturbed)), p);
      c.observe(std::max(0.0, opt_value - value));
    }
  }
}

void pinch_body(Ctx& c) {
  for (int t = 0; t < c.opt.trials; ++t) {
    const int n = c.dim();
    const BayesProblem p{vdensity(c.rng, n), random_spd(c.rng, n)};
    const PsdMatrix mixed = odot(p.prior.psd(), p.likelihood);
    const PinchedObjective opt_basis =
        pinched_bayes_check(p, OrthonormalBasis(n, mixed.eigenvectors()));
    c.observe(std::abs(opt_basis.objective - opt_basis.floor));
    for (int k = 0; k < 2; ++k) {
      const PinchedObjective random_basis =
          pinched_bayes_check(p, random_orthonormal_system(c.rng, n));
      c.observe(std::max(0.0, random_basis.floor - random_basis.objective));
    }
  }
}

void flow_body(Ctx& c) {
  for (int t = 0; t < c.opt.trials; ++t) {
    const int n = c.dim();
    const BayesProblem p{vdensity(c.rng, n), random_spd(c.rng, n)};
    c.require(mat_rel(bayes_flow(p, 0.0).matrix(), p.prior.matrix()) <= 1e-12,
              "flow at t=0 is not the prior");
    const GeneralizedPosterior gp = generalized_bayes(p);
    c.require(mat_rel(bayes_flow(p, 1.0).matrix(), gp.posterior.matrix()) <= 1e-10,
              "flow at t=1 is not the posterior");

    const double h = 1e-4;
    const Matrix log_lik = logm_plus(p.likelihood).matrix();
    for (const double tt : {0.25, 0.5, 0.75}) {
      const Matrix fd = (logm(bayes_flow(p, tt + h).psd().sym()).matrix() -
                         logm(bayes_flow(p, tt - h).psd().sym()).matrix()) /
                        (2.0 * h);
      const double drift = (bayes_flow(p, tt).matrix() * log_lik).trace();
      const Matrix expected = log_lik - drift * Matrix::Identity(n, n);
      c.observe((fd - expected).norm());
    }
  }
}

// ---------------------------------------------------------------------------

const std::vector<std::pair<std::string, std::vector<RuleSpec>>>& registry() {
  static const std::vector<std::pair<std::string, std::vector<RuleSpec>>> reg = {
      {"OP",
       {
           {"OP1", 1e-8, op1_body},
           {"OP2", 1e-8, op2_body},
           {"OP3", 1e-8, op3_body},
           {"OP4", 1e-8, op4_body},
           {"OP5", 1e-8, op5_body},
           {"OP6", 1e-8, op6_body},
           {"OP7", 1e-8, op7_body},
           {"OP8", 1e-8, op8_body},
           {"OP9", 1e-12, op9_body},
           {"OP10", 1e-10, op10_body},
           {"OP11", 1e-8, op11_body},
           {"OP12", 1e-8, op12_body},
           {"OP13", 1e-6, op13_body},
           {"OP14", 1e-8, op14_body},
           {"OP15", 1e-8, op15_body},
           {"OP16", 1e-8, op16_body},
           {"GT", 1e-10, gt_body},
           {"LOGSUM", 1e-8, logsum_body},
       }},
      {"KP",
       {
           {"KP1", 1e-14, kp1_body},
           {"KP2", 1e-10, kp2_body},
           {"KP3", 1e-12, kp3_body},
           {"KP4", 1e-9, kp4_body},
           {"KP5", 1e-8, kp5_body},
       }},
      {"PT",
       {
           {"PT1", 1e-12, pt1_body},
           {"PT2", 1e-12, pt2_body},
           {"PT3", 1e-10, pt3_body},
           {"PT4", 1e-10, pt4_body},
       }},
      {"MJ",
       {
           {"MJ1", 1e-9, mj1_body},
           {"MJ2", 1e-9, mj2_body},
           {"MJ3", 1e-10, mj3_body},
           {"MJ4", 1e-9, mj4_body},
           {"MJ5", 1e-10, mj5_body},
           {"L1", 1e-9, l1_body},
       }},
      {"CP",
       {
           {"CP1", 1e-8, cp1_body},
           {"CP2", 1e-8, cp2_body},
           {"CP3", 1e-8, cp3_body},
           {"CP4", 1e-9, cp4_body},
           {"CP2P", 1e-8, cp2p_body},
           {"CP3P", 1e-8, cp3p_body},
           {"CP4P", 1e-9, cp4p_body},
           {"L2", 1e-8, l2_body},
           {"L3", 1e-9, l3_body},
           {"CPODOT", 1e-9, cpodot_body},
           {"CPNON", 1.0, cpnon_body},
           {"APPA", 1e-10, appa_body},
           {"COLSTOCH", 1e-12, colstoch_body},
       }},
      {"MC",
       {
           {"MC1", 1e-9, mc1_rule},
           {"MC2", 1e-9, mc2_rule},
           {"MC3", 1e-9, mc3_rule},
           {"MC4", 1e-9, mc4_rule},
           {"MC5", 1e-9, mc5_rule},
       }},
      {"TP",
       {
           {"TP1", 1e-9, tp1_body},
           {"TP2", 1e-9, tp2_body},
           {"TP3", 1e-9, tp3_body},
           {"EVAR", 1e-10, evar_body},
       }},
      {"BR",
       {
           {"BR1", 1e-8, br1_body},
           {"BR2", 1e-8, br2_body},
           {"BR3", 1e-8, br3_body},
           {"BR4", 1e-8, br4_body},
       }},
      {"bounds",
       {
           {"CHAIN", 1e-8, chain_body},
           {"MAPB", 1e-9, mapb_body},
           {"MLB", 1e-9, mlb_body},
           {"TH3", 1e-12, th3_body},
           {"TH4", 1e-8, th4_body},
           {"PINCH", 1e-8, pinch_body},
           {"FLOW", 1e-5, flow_body},
       }},
  };
  return reg;
}

RuleResult run_rule(const RuleSpec& spec, const VerifyOptions& opt) {
  Ctx ctx{Rng(opt.seed ^ fnv1a(spec.id)), opt};
  RuleResult result{spec.id, false, opt.trials, 0.0, spec.tolerance, ""};
  try {
    spec.body(ctx);
    result.max_err = ctx.max_err;
    result.note = ctx.note;
    result.pass = !ctx.hard_fail && ctx.max_err <= spec.tolerance;
  } catch (const Error& e) {
    result.pass = false;
    result.note = std::string("exception: ") + e.what();
    result.max_err = kInf;
  }
  return result;
}

} // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, rules] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

std::vector<RuleResult> run_suite(const std::string& suite, const VerifyOptions& options) {
  for (const auto& [name, rules] : registry()) {
    if (name != suite) continue;
    std::vector<RuleResult> out;
    out.reserve(rules.size());
    for (const RuleSpec& spec : rules) out.push_back(run_rule(spec, options));
    return out;
  }
  throw InvalidInput("run_suite: unknown suite " + suite);
}

std::vector<RuleResult> run_all_suites(const VerifyOptions& options) {
  std::vector<RuleResult> out;
  for (const auto& [name, rules] : registry())
    for (const RuleSpec& spec : rules) out.push_back(run_rule(spec, options));
  return out;
}

} // namespace dmcalc
