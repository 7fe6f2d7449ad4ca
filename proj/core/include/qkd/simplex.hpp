#pragma once

#include <vector>

namespace qkd {

// Small dense linear program:
//   minimize c.x  subject to  A_ub x <= b_ub,  A_eq x = b_eq,  0 <= x <= upper.
// Solved by a two-phase primal simplex with Bland's rule (deterministic).
struct LpProblem {
    int n_vars = 0;
    std::vector<std::vector<double>> a_ub;
    std::vector<double> b_ub;
    std::vector<std::vector<double>> a_eq;
    std::vector<double> b_eq;
    std::vector<double> upper;  // per-variable upper bound (lower bound is 0)
};

struct LpResult {
    bool feasible = false;
    double objective = 0.0;
    std::vector<double> x;
};

LpResult lp_minimize(const std::vector<double>& c, const LpProblem& problem);

}  // namespace qkd
