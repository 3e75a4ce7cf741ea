#include "cvnn/certify.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "cvnn/lp.hpp"

namespace cvnn {

namespace {

constexpr double kSlackBound = 1e6;

bool is_rate_free(Family f) { return !has_rate_term(f); }

// Margin matrix M with margin_rows(w) == M w, valid for the families whose
// conditions are linear in the weights.
Mat margin_matrix(Family family, const RealSystem& sys, const ActivationBounds& bounds,
                  const TwoNormParams* params, bool lamvar) {
  const int dim = 2 * sys.n;
  Mat M(dim, dim);
  Vec e = Vec::Zero(dim);
  for (int i = 0; i < dim; ++i) {
    e[i] = 1.0;
    M.col(i) = detail::margin_rows(family, sys, bounds, e, 0.0, params, lamvar);
    e[i] = 0.0;
  }
  return M;
}

struct LpOutcome {
  Vec w;
  double slack = -lp::kInf;
};

LpOutcome solve_linear_family(Family family, const RealSystem& sys, const ActivationBounds& bounds,
                              const TwoNormParams* params, bool lamvar) {
  const int dim = 2 * sys.n;
  const Mat M = margin_matrix(family, sys, bounds, params, lamvar);
  lp::Problem p;
  p.A = Mat::Zero(dim, dim + 1);
  p.A.leftCols(dim) = M;
  p.A.rightCols(1).setOnes();  // M w + s <= 0
  p.b = Vec::Zero(dim);
  p.c = Vec::Zero(dim + 1);
  p.c[dim] = 1.0;
  p.lb = Vec::Constant(dim + 1, kWeightFloor);
  p.lb[dim] = -kSlackBound;
  p.ub = Vec::Ones(dim + 1);
  p.ub[dim] = kSlackBound;
  const lp::Solution sol = lp::solve(p);
  if (sol.status != lp::Status::Optimal)
    throw std::runtime_error("find_weights: feasibility LP did not reach an optimum");
  return {sol.x.head(dim), sol.x[dim]};
}

// One-norm sign-aware conditions: the {.}^+ arguments are linear in the
// weights, so each gets an epigraph variable t >= max(expr, 0) that replaces
// it in the criterion row. Exact because the {.}^+ multipliers are >= 0.
LpOutcome solve_one_norm_sign(const RealSystem& sys, const ActivationBounds& bounds) {
  const NetworkSpec& net = *sys.net;
  const int n = sys.n;
  const int dim = 2 * n;
  const int nv = dim + 4 * n + 1;  // weights, epigraph vars, slack
  const int s_ix = nv - 1;
  auto t1 = [&](int k) { return dim + k; };
  auto t2 = [&](int k) { return dim + n + k; };
  auto t3 = [&](int k) { return dim + 2 * n + k; };
  auto t4 = [&](int k) { return dim + 3 * n + k; };

  Mat aR(n, n), aI(n, n), bR(n, n), bI(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      aR(j, k) = std::abs(net.A(j, k).real());
      aI(j, k) = std::abs(net.A(j, k).imag());
      bR(j, k) = std::abs(net.B(j, k).real());
      bI(j, k) = std::abs(net.B(j, k).imag());
    }

  std::vector<Vec> rows;
  std::vector<double> rhs;
  auto add_row = [&](const Vec& r) {
    rows.push_back(r);
    rhs.push_back(0.0);
  };

  for (int k = 0; k < n; ++k) {
    // epigraph rows: expr - t <= 0
    Vec r1 = Vec::Zero(nv), r2 = Vec::Zero(nv), r3 = Vec::Zero(nv), r4 = Vec::Zero(nv);
    r1[k] += net.A(k, k).real();
    r2[k] += -net.A(k, k).imag();
    r3[n + k] += net.A(k, k).real();
    r4[n + k] += net.A(k, k).imag();
    for (int j = 0; j < n; ++j) {
      if (j != k) r1[j] += aR(j, k);
      r1[n + j] += aI(j, k);
      if (j != k) r2[j] += aI(j, k);
      r2[n + j] += aR(j, k);
      if (j != k) r3[n + j] += aR(j, k);
      r3[j] += aI(j, k);
      if (j != k) r4[n + j] += aI(j, k);
      r4[j] += aR(j, k);
    }
    r1[t1(k)] = -1.0;
    r2[t2(k)] = -1.0;
    r3[t3(k)] = -1.0;
    r4[t4(k)] = -1.0;
    add_row(r1);
    add_row(r2);
    add_row(r3);
    add_row(r4);

    // criterion rows with the epigraph substitution
    Vec m1 = Vec::Zero(nv), m2 = Vec::Zero(nv);
    m1[k] += -net.d[k];
    m2[n + k] += -net.d[k];
    m1[t1(k)] = bounds.lamRR[k];
    m1[t2(k)] = bounds.lamIR[k];
    m2[t3(k)] = bounds.lamII[k];
    m2[t4(k)] = bounds.lamRI[k];
    for (int j = 0; j < n; ++j) {
      m1[j] += bR(j, k) * bounds.muRR[k] + bI(j, k) * bounds.muIR[k];
      m1[n + j] += bR(j, k) * bounds.muIR[k] + bI(j, k) * bounds.muRR[k];
      m2[j] += bR(j, k) * bounds.muRI[k] + bI(j, k) * bounds.muII[k];
      m2[n + j] += bR(j, k) * bounds.muII[k] + bI(j, k) * bounds.muRI[k];
    }
    m1[s_ix] = 1.0;
    m2[s_ix] = 1.0;
    add_row(m1);
    add_row(m2);
  }

  lp::Problem p;
  p.A = Mat::Zero(static_cast<int>(rows.size()), nv);
  for (size_t r = 0; r < rows.size(); ++r) p.A.row(static_cast<int>(r)) = rows[r];
  p.b = Vec::Zero(static_cast<int>(rows.size()));
  p.c = Vec::Zero(nv);
  p.c[s_ix] = 1.0;
  p.lb = Vec::Zero(nv);
  p.lb.head(dim).setConstant(kWeightFloor);
  p.lb[s_ix] = -kSlackBound;
  p.ub = Vec::Constant(nv, lp::kInf);
  p.ub.head(dim).setOnes();
  p.ub[s_ix] = kSlackBound;
  const lp::Solution sol = lp::solve(p);
  if (sol.status != lp::Status::Optimal)
    throw std::runtime_error("find_weights: epigraph LP did not reach an optimum");
  return {sol.x.head(dim), sol.x[s_ix]};
}

LpOutcome solve_family(Family family, const RealSystem& sys, const ActivationBounds& bounds,
                       const TwoNormParams* params, bool lamvar) {
  if (family == Family::OneT9T10) return solve_one_norm_sign(sys, bounds);
  return solve_linear_family(family, sys, bounds, params, lamvar);
}

// Coordinate descent over the 2-norm free parameters, one multiplicative
// line search per entry, re-solving the weight LP at each trial.
TwoNormParams refine_params(Family family, const RealSystem& sys, const ActivationBounds& bounds,
                            bool lamvar, int max_sweeps, double& best_slack) {
  const int n = sys.n;
  TwoNormParams params = TwoNormParams::ones(n);
  best_slack = solve_family(family, sys, bounds, &params, lamvar).slack;
  static constexpr double kFactors[] = {0.5, 0.8, 1.25, 2.0};
  Mat* mats[] = {&params.pi1, &params.pi2, &params.pi3, &params.pi4,
                 &params.om1, &params.om2, &params.om3, &params.om4};
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool improved = false;
    for (Mat* m : mats) {
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          const double base = (*m)(j, k);
          double best = base;
          for (const double f : kFactors) {
            (*m)(j, k) = base * f;
            const double s = solve_family(family, sys, bounds, &params, lamvar).slack;
            if (s > best_slack + 1e-10) {
              best_slack = s;
              best = base * f;
              improved = true;
            }
          }
          (*m)(j, k) = best;
        }
    }
    if (!improved) break;
  }
  return params;
}

std::vector<int> binding_rows_of(const Vec& rows, double slack) {
  std::vector<int> out;
  const double tol = 1e-7 * std::max(1.0, std::abs(slack));
  for (int i = 0; i < rows.size(); ++i)
    if (rows[i] >= -slack - tol) out.push_back(i);
  return out;
}

}  // namespace

Certificate find_weights(Family family, const RealSystem& sys, const ActivationBounds& bounds,
                         const CertifyOptions& opts) {
  if (!is_rate_free(family))
    throw std::invalid_argument(std::string("find_weights: ") + family_name(family) +
                                " carries a rate term; search runs on its rate-free counterpart");
  if (requires_h1(family) && !bounds.f_is_h1)
    throw ClassMismatchError(std::string("find_weights: family ") + family_name(family) +
                             " requires strictly positive partials for f");

  const bool is_two = family == Family::TwoT15T16 || family == Family::TwoT17T18;
  std::shared_ptr<TwoNormParams> params;
  LpOutcome lp_out;
  if (is_two && family == Family::TwoT15T16 && opts.refine_two_norm_params) {
    double slack = 0.0;
    params = std::make_shared<TwoNormParams>(
        refine_params(family, sys, bounds, opts.lambda_consistent, opts.refine_max_sweeps, slack));
    lp_out = solve_family(family, sys, bounds, params.get(), opts.lambda_consistent);
  } else {
    if (is_two) params = std::make_shared<TwoNormParams>(TwoNormParams::ones(sys.n));
    lp_out = solve_family(family, sys, bounds, params.get(), opts.lambda_consistent);
  }

  Certificate cert;
  cert.family = family;
  cert.xi = lp_out.w;
  cert.slack = lp_out.slack;
  cert.feasible = lp_out.slack > kFeasibleSlack;
  cert.epsilon = 0.0;
  cert.margins = eval_criterion(family, sys, bounds, cert.xi, 0.0, params.get(),
                                {.lambda_consistent = opts.lambda_consistent});
  cert.binding_rows = binding_rows_of(cert.margins.rows, cert.slack);
  if (cert.feasible) cert.rate = max_rate(family, sys, bounds, cert.xi, params.get(), opts);
  return cert;
}

double max_rate(Family family, const RealSystem& sys, const ActivationBounds& bounds, const Vec& xi,
                const CertifyOptions& opts) {
  return max_rate(family, sys, bounds, xi, nullptr, opts);
}

double max_rate(Family family, const RealSystem& sys, const ActivationBounds& bounds, const Vec& xi,
                const TwoNormParams* params, const CertifyOptions& opts) {
  const Family rf = rate_family(family);
  auto rows_at = [&](double eps) {
    return detail::margin_rows(rf, sys, bounds, xi, eps, params, opts.lambda_consistent);
  };
  const Vec at_zero = rows_at(0.0);
  if (!(at_zero.maxCoeff() < 0.0))
    throw std::invalid_argument(
        "max_rate: margins at epsilon = 0 must be strictly negative; run find_weights first");
  double hi = sys.net->d.maxCoeff();
  if (rows_at(hi).maxCoeff() <= 0.0) return hi;
  double lo = 0.0;
  while (hi - lo > opts.rate_tol) {
    const double mid = 0.5 * (lo + hi);
    if (rows_at(mid).maxCoeff() <= 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

std::vector<Certificate> certify_all(const RealSystem& sys, const ActivationBounds& bounds,
                                     const CertifyOptions& opts) {
  std::map<Family, Certificate> base;
  for (const Family f : {Family::InfT3T4, Family::InfT5T6, Family::OneT9T10, Family::OneT11T12,
                         Family::TwoT15T16, Family::TwoT17T18, Family::MMatrix}) {
    if (requires_h1(f) && !bounds.f_is_h1) continue;
    base.emplace(f, find_weights(f, sys, bounds, opts));
  }

  std::vector<Certificate> out;
  for (int i = 0; i < kFamilyCount; ++i) {
    const Family f = family_at(i);
    if (requires_h1(f) && !bounds.f_is_h1) continue;
    if (!has_rate_term(f)) {
      out.push_back(base.at(f));
      continue;
    }
    // rate-bearing family: reuse the rate-free counterpart's weights
    Family counterpart = f == Family::InfT1T2    ? Family::InfT3T4
                         : f == Family::OneT7T8  ? Family::OneT9T10
                                                 : Family::TwoT15T16;
    const Certificate& b = base.at(counterpart);
    Certificate cert;
    cert.family = f;
    cert.feasible = b.feasible;
    cert.xi = b.xi;
    cert.slack = b.slack;
    cert.binding_rows = b.binding_rows;
    cert.epsilon = b.feasible ? b.rate : 0.0;
    cert.rate = cert.epsilon;
    const TwoNormParams* params = b.margins.params.get();
    cert.margins = eval_criterion(f, sys, bounds, cert.xi, cert.epsilon, params,
                                  {.lambda_consistent = opts.lambda_consistent});
    out.push_back(std::move(cert));
  }
  return out;
}

}  // namespace cvnn
