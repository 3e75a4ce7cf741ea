#pragma once

#include <limits>

#include "cvnn/model.hpp"

namespace cvnn::lp {

/// maximize c^T x  subject to  A x <= b,  lb <= x <= ub.
/// Lower bounds must be finite; upper bounds may be +infinity.
struct Problem {
  Mat A;
  Vec b;
  Vec c;
  Vec lb;
  Vec ub;
};

enum class Status { Optimal, Infeasible, Unbounded, IterationLimit };

struct Solution {
  Status status = Status::Infeasible;
  Vec x;
  double objective = 0.0;
};

/// Dense two-phase tableau simplex with Bland's rule. Intended for the small
/// feasibility programs this project generates (tens of variables).
Solution solve(const Problem& p);

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace cvnn::lp
