#include "cvnn/criteria.hpp"

#include <cmath>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "cvnn/lp.hpp"

namespace cvnn {

namespace {
inline double pos(double x) { return x > 0.0 ? x : 0.0; }
}

Family family_at(int index) {
  static const Family all[kFamilyCount] = {
      Family::InfT1T2,   Family::InfT3T4,   Family::InfT5T6,  Family::OneT7T8,
      Family::OneT9T10,  Family::OneT11T12, Family::TwoT13T14, Family::TwoT15T16,
      Family::TwoT17T18, Family::MMatrix};
  return all[index];
}

bool requires_h1(Family f) {
  switch (f) {
    case Family::InfT1T2:
    case Family::InfT3T4:
    case Family::OneT7T8:
    case Family::OneT9T10:
    case Family::TwoT13T14:
    case Family::TwoT15T16:
      return true;
    default:
      return false;
  }
}

bool has_rate_term(Family f) {
  return f == Family::InfT1T2 || f == Family::OneT7T8 || f == Family::TwoT13T14;
}

Family rate_family(Family f) {
  switch (f) {
    case Family::InfT3T4: return Family::InfT1T2;
    case Family::OneT9T10: return Family::OneT7T8;
    case Family::TwoT15T16: return Family::TwoT13T14;
    case Family::MMatrix: return Family::InfT5T6;
    default: return f;
  }
}

const char* family_name(Family f) {
  switch (f) {
    case Family::InfT1T2: return "inf_t1t2";
    case Family::InfT3T4: return "inf_t3t4";
    case Family::InfT5T6: return "inf_t5t6";
    case Family::OneT7T8: return "one_t7t8";
    case Family::OneT9T10: return "one_t9t10";
    case Family::OneT11T12: return "one_t11t12";
    case Family::TwoT13T14: return "two_t13t14";
    case Family::TwoT15T16: return "two_t15t16";
    case Family::TwoT17T18: return "two_t17t18";
    case Family::MMatrix: return "m_matrix";
  }
  return "?";
}

std::optional<Family> family_from_string(const std::string& name) {
  for (int i = 0; i < kFamilyCount; ++i)
    if (name == family_name(family_at(i))) return family_at(i);
  return std::nullopt;
}

TwoNormParams TwoNormParams::ones(int n) {
  TwoNormParams p;
  p.pi1 = p.pi2 = p.pi3 = p.pi4 = Mat::Ones(n, n);
  p.om1 = p.om2 = p.om3 = p.om4 = Mat::Ones(n, n);
  return p;
}

void TwoNormParams::validate(int n) const {
  for (const Mat* m : {&pi1, &pi2, &pi3, &pi4, &om1, &om2, &om3, &om4}) {
    if (m->rows() != n || m->cols() != n)
      throw std::invalid_argument("two-norm params must be n x n");
    if ((m->array() <= 0.0).any())
      throw std::invalid_argument("two-norm params must be positive");
  }
}

bool Margins::satisfied(bool strict) const {
  for (int i = 0; i < rows.size(); ++i) {
    if (strict ? !(rows[i] < 0.0) : !(rows[i] <= 0.0)) return false;
  }
  return true;
}

namespace detail {

namespace {

struct Ctx {
  int n;
  const Vec& d;
  Mat aR, aI, bR, bI;      // entrywise absolute values
  Mat AR, AI;              // signed real/imag parts of A
  Mat tau;                 // n x n delay upper bounds
  const ActivationBounds& bd;
  const Vec& x;            // first n weights
  const Vec& p;            // last n weights
  double eps;
};

Ctx make_ctx(const RealSystem& sys, const ActivationBounds& bd, const Vec& w, double eps) {
  const NetworkSpec& net = *sys.net;
  const int n = sys.n;
  Ctx c{n, net.d, Mat(n, n), Mat(n, n), Mat(n, n), Mat(n, n), Mat(n, n), Mat(n, n),
        sys.tau_upper.topLeftCorner(n, n), bd, w.head(n), w.tail(n), eps};
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      c.AR(j, k) = net.A(j, k).real();
      c.AI(j, k) = net.A(j, k).imag();
      c.aR(j, k) = std::abs(c.AR(j, k));
      c.aI(j, k) = std::abs(c.AI(j, k));
      c.bR(j, k) = std::abs(net.B(j, k).real());
      c.bI(j, k) = std::abs(net.B(j, k).imag());
    }
  return c;
}

// Infinity-norm rows. sign_aware selects the diagonal {.}^+ form with the
// k != j exclusions; otherwise the full-magnitude form.
Vec rows_inf(const Ctx& c, bool sign_aware) {
  const int n = c.n;
  Vec out(2 * n);
  for (int j = 0; j < n; ++j) {
    double m1, m2;
    if (sign_aware) {
      m1 = c.x[j] * (-c.d[j] + c.eps + pos(c.AR(j, j)) * c.bd.lamRR[j] + pos(-c.AI(j, j)) * c.bd.lamIR[j]);
      m2 = c.p[j] * (-c.d[j] + c.eps + pos(c.AR(j, j)) * c.bd.lamII[j] + pos(c.AI(j, j)) * c.bd.lamRI[j]);
    } else {
      m1 = c.x[j] * (-c.d[j] + c.eps);
      m2 = c.p[j] * (-c.d[j] + c.eps);
    }
    for (int k = 0; k < n; ++k) {
      const bool off = !sign_aware || k != j;
      if (off) m1 += c.x[k] * c.aR(j, k) * c.bd.lamRR[k];
      m1 += c.p[k] * c.aR(j, k) * c.bd.lamRI[k];
      if (off) m1 += c.x[k] * c.aI(j, k) * c.bd.lamIR[k];
      m1 += c.p[k] * c.aI(j, k) * c.bd.lamII[k];

      m2 += c.x[k] * c.aR(j, k) * c.bd.lamIR[k];
      if (off) m2 += c.p[k] * c.aR(j, k) * c.bd.lamII[k];
      m2 += c.x[k] * c.aI(j, k) * c.bd.lamRR[k];
      if (off) m2 += c.p[k] * c.aI(j, k) * c.bd.lamRI[k];

      const double e = std::exp(c.eps * c.tau(j, k));
      m1 += e * (c.x[k] * c.bR(j, k) * c.bd.muRR[k] + c.p[k] * c.bR(j, k) * c.bd.muRI[k] +
                 c.x[k] * c.bI(j, k) * c.bd.muIR[k] + c.p[k] * c.bI(j, k) * c.bd.muII[k]);
      m2 += e * (c.x[k] * c.bR(j, k) * c.bd.muIR[k] + c.p[k] * c.bR(j, k) * c.bd.muII[k] +
                 c.x[k] * c.bI(j, k) * c.bd.muRR[k] + c.p[k] * c.bI(j, k) * c.bd.muRI[k]);
    }
    out[j] = m1;
    out[n + j] = m2;
  }
  return out;
}

// One-norm (column) rows.
Vec rows_one(const Ctx& c, bool sign_aware) {
  const int n = c.n;
  Vec out(2 * n);
  for (int k = 0; k < n; ++k) {
    double m1 = c.x[k] * (-c.d[k] + c.eps);
    double m2 = c.p[k] * (-c.d[k] + c.eps);
    double e1 = 0.0, e2 = 0.0, e3 = 0.0, e4 = 0.0;  // bracketed column sums
    if (sign_aware) {
      e1 = c.x[k] * c.AR(k, k);
      e2 = -c.x[k] * c.AI(k, k);
      e3 = c.p[k] * c.AR(k, k);
      e4 = c.p[k] * c.AI(k, k);
    }
    for (int j = 0; j < n; ++j) {
      const bool off = !sign_aware || j != k;
      if (off) e1 += c.x[j] * c.aR(j, k);
      e1 += c.p[j] * c.aI(j, k);
      if (off) e2 += c.x[j] * c.aI(j, k);
      e2 += c.p[j] * c.aR(j, k);
      if (off) e3 += c.p[j] * c.aR(j, k);
      e3 += c.x[j] * c.aI(j, k);
      if (off) e4 += c.p[j] * c.aI(j, k);
      e4 += c.x[j] * c.aR(j, k);

      const double e = std::exp(c.eps * c.tau(j, k));
      m1 += e * (c.x[j] * (c.bR(j, k) * c.bd.muRR[k] + c.bI(j, k) * c.bd.muIR[k]) +
                 c.p[j] * (c.bR(j, k) * c.bd.muIR[k] + c.bI(j, k) * c.bd.muRR[k]));
      m2 += e * (c.x[j] * (c.bR(j, k) * c.bd.muRI[k] + c.bI(j, k) * c.bd.muII[k]) +
                 c.p[j] * (c.bR(j, k) * c.bd.muII[k] + c.bI(j, k) * c.bd.muRI[k]));
    }
    if (sign_aware) {
      m1 += pos(e1) * c.bd.lamRR[k] + pos(e2) * c.bd.lamIR[k];
      m2 += pos(e3) * c.bd.lamII[k] + pos(e4) * c.bd.lamRI[k];
    } else {
      m1 += e1 * c.bd.lamRR[k] + e2 * c.bd.lamIR[k];
      m2 += e3 * c.bd.lamII[k] + e4 * c.bd.lamRI[k];
    }
    out[k] = m1;
    out[n + k] = m2;
  }
  return out;
}

// Two-norm rows. The printed expressions bound selected cross terms for f with
// mu constants; lambda_consistent swaps those slots to the matching lambda.
Vec rows_two(const Ctx& c, bool sign_aware, const TwoNormParams& pr, bool lamvar) {
  const int n = c.n;
  const Vec& xIR = lamvar ? c.bd.lamIR : c.bd.muIR;
  const Vec& xRR = lamvar ? c.bd.lamRR : c.bd.muRR;
  const Vec& xII = lamvar ? c.bd.lamII : c.bd.muII;
  const Vec& xRI = lamvar ? c.bd.lamRI : c.bd.muRI;
  const Vec& dII = lamvar ? c.bd.lamII : c.bd.muRR;
  const Vec& dRI = lamvar ? c.bd.lamRI : c.bd.muRI;
  Vec out(2 * n);
  for (int j = 0; j < n; ++j) {
    double m1, m2;
    if (sign_aware) {
      m1 = 2.0 * c.x[j] * (-c.d[j] + c.eps + pos(c.AR(j, j)) * c.bd.lamRR[j] + pos(-c.AI(j, j)) * c.bd.lamIR[j]);
      m2 = 2.0 * c.p[j] * (-c.d[j] + c.eps + pos(c.AR(j, j)) * dII[j] + pos(c.AI(j, j)) * dRI[j]);
    } else {
      m1 = 2.0 * c.x[j] * (-c.d[j] + c.eps);
      m2 = 2.0 * c.p[j] * (-c.d[j] + c.eps);
    }
    for (int k = 0; k < n; ++k) {
      const bool off = !sign_aware || k != j;
      if (off) {
        m1 += c.x[j] * (c.aR(j, k) * c.bd.lamRR[k] + c.aI(j, k) * c.bd.lamIR[k]) * pr.pi1(j, k);
        m1 += c.x[k] * (c.aR(k, j) * c.bd.lamRR[j] + c.aI(k, j) * c.bd.lamIR[j]) / pr.pi1(k, j);
      }
      m1 += c.x[j] * (c.aR(j, k) * c.bd.lamRI[k] + c.aI(j, k) * c.bd.lamII[k]) * pr.pi2(j, k);
      m1 += c.x[j] * (c.bR(j, k) * c.bd.muRR[k] + c.bI(j, k) * c.bd.muIR[k]) * pr.pi3(j, k);
      m1 += c.x[j] * (c.bR(j, k) * c.bd.muRI[k] + c.bI(j, k) * c.bd.muII[k]) * pr.pi4(j, k);
      m1 += c.p[k] * (c.aR(k, j) * xIR[j] + c.aI(k, j) * xRR[j]) / pr.om1(k, j);
      const double ein = std::exp(2.0 * c.eps * c.tau(k, j));
      m1 += ein * (c.x[k] * (c.bR(k, j) * c.bd.muRR[j] + c.bI(k, j) * c.bd.muIR[j]) / pr.pi3(k, j) +
                   c.p[k] * (c.bR(k, j) * c.bd.muIR[j] + c.bI(k, j) * c.bd.muRR[j]) / pr.om3(k, j));

      m2 += c.p[j] * (c.aR(j, k) * xIR[k] + c.aI(j, k) * xRR[k]) * pr.om1(j, k);
      if (off) {
        m2 += c.p[j] * (c.aR(j, k) * xII[k] + c.aI(j, k) * xRI[k]) * pr.om2(j, k);
        m2 += c.p[k] * (c.aR(k, j) * xII[j] + c.aI(k, j) * xRI[j]) / pr.om2(k, j);
      }
      m2 += c.p[j] * (c.bR(j, k) * c.bd.muIR[k] + c.bI(j, k) * c.bd.muRR[k]) * pr.om3(j, k);
      m2 += c.p[j] * (c.bR(j, k) * c.bd.muII[k] + c.bI(j, k) * c.bd.muRI[k]) * pr.om4(j, k);
      m2 += c.x[k] * (c.aR(k, j) * c.bd.lamRI[j] + c.aI(k, j) * c.bd.lamII[j]) / pr.pi2(k, j);
      m2 += ein * (c.x[k] * (c.bR(k, j) * c.bd.muRI[j] + c.bI(k, j) * c.bd.muII[j]) / pr.pi4(k, j) +
                   c.p[k] * (c.bR(k, j) * c.bd.muII[j] + c.bI(k, j) * c.bd.muRI[j]) / pr.om4(k, j));
    }
    out[j] = m1;
    out[n + j] = m2;
  }
  return out;
}

}  // namespace

Vec margin_rows(Family family, const RealSystem& sys, const ActivationBounds& bounds, const Vec& w,
                double eps, const TwoNormParams* params, bool lamvar) {
  Ctx c = make_ctx(sys, bounds, w, eps);
  switch (family) {
    case Family::InfT1T2:
    case Family::InfT3T4:
      return rows_inf(c, true);
    case Family::InfT5T6:
      return rows_inf(c, false);
    case Family::OneT7T8:
    case Family::OneT9T10:
      return rows_one(c, true);
    case Family::OneT11T12:
      return rows_one(c, false);
    case Family::TwoT13T14:
    case Family::TwoT15T16:
    case Family::TwoT17T18: {
      const bool sign_aware = family != Family::TwoT17T18;
      if (params) return rows_two(c, sign_aware, *params, lamvar);
      return rows_two(c, sign_aware, TwoNormParams::ones(sys.n), lamvar);
    }
    case Family::MMatrix: {
      if (eps != 0.0) return rows_inf(c, false);
      return -(sys.comparison_matrix() * w);
    }
  }
  throw std::logic_error("margin_rows: unknown family");
}

}  // namespace detail

Margins eval_criterion(Family family, const RealSystem& sys, const ActivationBounds& bounds,
                       const Vec& xi, double epsilon, const TwoNormParams* params,
                       const EvalOptions& opts) {
  const int n = sys.n;
  if (bounds.n != n) throw std::invalid_argument("eval_criterion: bounds dimension mismatch");
  if (xi.size() != 2 * n) throw std::invalid_argument("eval_criterion: xi must have length 2n");
  if ((xi.array() <= 0.0).any()) throw std::domain_error("eval_criterion: weights must be positive");
  if (!(epsilon >= 0.0)) throw std::domain_error("eval_criterion: epsilon must be >= 0");
  if (!has_rate_term(family) && epsilon != 0.0)
    throw std::invalid_argument(std::string("eval_criterion: family ") + family_name(family) +
                                " is rate-free; epsilon must be 0");
  if (requires_h1(family) && !bounds.f_is_h1)
    throw ClassMismatchError(std::string("eval_criterion: family ") + family_name(family) +
                             " requires strictly positive partials for f, but the bounds only "
                             "certify the magnitude class");
  const bool is_two = family == Family::TwoT13T14 || family == Family::TwoT15T16 ||
                      family == Family::TwoT17T18;
  std::shared_ptr<const TwoNormParams> pr;
  if (is_two) {
    auto owned = params ? std::make_shared<TwoNormParams>(*params)
                        : std::make_shared<TwoNormParams>(TwoNormParams::ones(n));
    owned->validate(n);
    pr = owned;
  }
  Margins m;
  m.family = family;
  m.xi = xi;
  m.epsilon = epsilon;
  m.lambda_consistent = is_two && opts.lambda_consistent;
  m.params = pr;
  m.rows = detail::margin_rows(family, sys, bounds, xi, epsilon, pr.get(), m.lambda_consistent);
  return m;
}

MMatrixResult is_m_matrix(const Mat& C) {
  const int m = static_cast<int>(C.rows());
  if (C.cols() != m) throw std::invalid_argument("is_m_matrix: matrix must be square");
  for (int j = 0; j < m; ++j)
    for (int k = 0; k < m; ++k)
      if (j != k && C(j, k) > 1e-12)
        throw std::invalid_argument("is_m_matrix: positive off-diagonal entry at (" +
                                    std::to_string(j) + "," + std::to_string(k) +
                                    "): not a Z-matrix");

  MMatrixResult out;

  // max s subject to C xi >= s, xi in [1e-9, 1]
  lp::Problem p;
  p.A = Mat::Zero(m, m + 1);
  p.A.leftCols(m) = -C;
  p.A.rightCols(1).setOnes();
  p.b = Vec::Zero(m);
  p.c = Vec::Zero(m + 1);
  p.c[m] = 1.0;
  p.lb = Vec::Constant(m + 1, 1e-9);
  p.lb[m] = -1e6;
  p.ub = Vec::Ones(m + 1);
  p.ub[m] = 1e6;
  const lp::Solution sol = lp::solve(p);
  if (sol.status != lp::Status::Optimal) throw std::runtime_error("is_m_matrix: feasibility LP failed");
  out.slack = sol.x[m];
  out.is_m = out.slack > 1e-9;
  if (out.is_m) out.xi = sol.x.head(m);

  Eigen::EigenSolver<Mat> es(C);
  out.eigenvalues = es.eigenvalues();
  const double min_real = out.eigenvalues.real().minCoeff();
  out.eig_agrees = (min_real > 0.0) == out.is_m;

  if (m <= 6) {
    bool minors_positive = true;
    for (int k = 1; k <= m; ++k) {
      if (C.topLeftCorner(k, k).determinant() <= 0.0) {
        minors_positive = false;
        break;
      }
    }
    out.minors_agree = (minors_positive == out.is_m);
  }
  return out;
}

double matrix_measure(const Mat& A, const Vec& xi, NormKind kind) {
  const int m = static_cast<int>(A.rows());
  if (A.cols() != m || xi.size() != m) throw std::invalid_argument("matrix_measure: dimension mismatch");
  if ((xi.array() <= 0.0).any()) throw std::domain_error("matrix_measure: weights must be positive");
  switch (kind) {
    case NormKind::Inf: {
      double best = -lp::kInf;
      for (int i = 0; i < m; ++i) {
        double s = A(i, i);
        for (int j = 0; j < m; ++j)
          if (j != i) s += (xi[j] / xi[i]) * std::abs(A(i, j));
        best = std::max(best, s);
      }
      return best;
    }
    case NormKind::One: {
      double best = -lp::kInf;
      for (int j = 0; j < m; ++j) {
        double s = A(j, j);
        for (int i = 0; i < m; ++i)
          if (i != j) s += (xi[i] / xi[j]) * std::abs(A(i, j));
        best = std::max(best, s);
      }
      return best;
    }
    case NormKind::Two: {
      const Mat Xi = xi.asDiagonal();
      const Mat Q = Xi * A + A.transpose() * Xi;
      Eigen::GeneralizedSelfAdjointEigenSolver<Mat> es(Q, Xi);
      return es.eigenvalues().maxCoeff();
    }
  }
  throw std::logic_error("matrix_measure: unknown norm kind");
}

}  // namespace cvnn
