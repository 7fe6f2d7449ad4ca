#include "qkd/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>

namespace qkd {
namespace {

constexpr double kTol = 1e-11;

struct Tableau {
    int rows = 0;
    int cols = 0;  // total columns excluding RHS
    std::vector<std::vector<double>> a;  // rows x (cols + 1); last entry is RHS
    std::vector<int> basis;              // basic column per row

    double& rhs(int r) { return a[r][cols]; }

    void pivot(int r, int c) {
        const double piv = a[r][c];
        for (double& v : a[r]) v /= piv;
        for (int i = 0; i < rows; ++i) {
            if (i == r) continue;
            const double factor = a[i][c];
            if (factor == 0.0) continue;
            for (int j = 0; j <= cols; ++j) a[i][j] -= factor * a[r][j];
        }
        basis[r] = c;
    }
};

// Minimizes cost over the current tableau with Bland's rule. `allowed` marks
// columns that may enter the basis. Returns false on unboundedness.
bool simplex_iterate(Tableau& t, std::vector<double>& cost, double& objective,
                     const std::vector<bool>& allowed) {
    // Reduced-cost row kept explicitly: cost[] and objective are updated by
    // the same pivots as the constraint rows.
    for (;;) {
        int enter = -1;
        for (int j = 0; j < t.cols; ++j) {
            if (allowed[j] && cost[j] < -kTol) {
                enter = j;
                break;  // Bland: smallest index
            }
        }
        if (enter < 0) return true;
        int leave = -1;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (int i = 0; i < t.rows; ++i) {
            const double coeff = t.a[i][enter];
            if (coeff > kTol) {
                const double ratio = t.rhs(i) / coeff;
                if (ratio < best_ratio - kTol ||
                    (ratio < best_ratio + kTol &&
                     (leave < 0 || t.basis[i] < t.basis[leave]))) {
                    best_ratio = ratio;
                    leave = i;
                }
            }
        }
        if (leave < 0) return false;  // unbounded
        t.pivot(leave, enter);
        // Update the cost row.
        const double factor = cost[enter];
        if (factor != 0.0) {
            for (int j = 0; j <= t.cols; ++j) {
                if (j < t.cols) {
                    cost[j] -= factor * t.a[leave][j];
                } else {
                    // The entering variable takes the value rhs(leave) after
                    // the pivot; the objective moves by its reduced cost times
                    // that value.
                    objective += factor * t.rhs(leave);
                }
            }
        }
    }
}

}  // namespace

LpResult lp_minimize(const std::vector<double>& c, const LpProblem& problem) {
    LpResult result;
    const int n = problem.n_vars;

    // Collect all rows as (coeffs, rhs, is_equality); upper bounds become
    // dedicated inequality rows.
    struct Row {
        std::vector<double> a;
        double b = 0.0;
        bool eq = false;
    };
    std::vector<Row> rows;
    rows.reserve(problem.a_ub.size() + problem.a_eq.size() + problem.upper.size());
    for (std::size_t i = 0; i < problem.a_ub.size(); ++i) {
        rows.push_back({problem.a_ub[i], problem.b_ub[i], false});
    }
    for (std::size_t i = 0; i < problem.a_eq.size(); ++i) {
        rows.push_back({problem.a_eq[i], problem.b_eq[i], true});
    }
    for (std::size_t i = 0; i < problem.upper.size() && int(i) < n; ++i) {
        if (!std::isfinite(problem.upper[i])) continue;
        Row row;
        row.a.assign(n, 0.0);
        row.a[i] = 1.0;
        row.b = problem.upper[i];
        rows.push_back(std::move(row));
    }

    const int m = int(rows.size());
    // Column layout: [0,n) structural, [n, n+n_slack) slack/surplus,
    // [n+n_slack, ...) artificials.
    int n_slack = 0;
    for (const Row& row : rows) {
        if (!row.eq) ++n_slack;
    }
    // Every equality row and every inequality row with negative RHS (after sign
    // normalization its slack enters with -1) needs an artificial.
    std::vector<int> slack_col(m, -1), art_col(m, -1);
    int next_slack = n;
    int n_art = 0;
    for (int i = 0; i < m; ++i) {
        if (!rows[i].eq) slack_col[i] = next_slack++;
    }
    const int art_base = next_slack;
    for (int i = 0; i < m; ++i) {
        const bool negative = rows[i].b < 0.0;
        if (rows[i].eq || negative) art_col[i] = art_base + n_art++;
    }

    Tableau t;
    t.rows = m;
    t.cols = art_base + n_art;
    t.a.assign(m, std::vector<double>(t.cols + 1, 0.0));
    t.basis.assign(m, -1);
    for (int i = 0; i < m; ++i) {
        const double sign = rows[i].b < 0.0 ? -1.0 : 1.0;
        for (int j = 0; j < n && j < int(rows[i].a.size()); ++j) {
            t.a[i][j] = sign * rows[i].a[j];
        }
        if (slack_col[i] >= 0) t.a[i][slack_col[i]] = sign;
        t.rhs(i) = sign * rows[i].b;
        if (art_col[i] >= 0) {
            t.a[i][art_col[i]] = 1.0;
            t.basis[i] = art_col[i];
        } else {
            t.basis[i] = slack_col[i];
        }
    }

    std::vector<bool> allowed(t.cols, true);

    // Phase 1: minimize the sum of artificials.
    if (n_art > 0) {
        std::vector<double> cost1(t.cols, 0.0);
        double obj1 = 0.0;
        for (int i = 0; i < m; ++i) {
            if (art_col[i] < 0) continue;
            // Price out the basic artificial from the phase-1 cost row.
            for (int j = 0; j < t.cols; ++j) {
                if (j != art_col[i]) cost1[j] -= t.a[i][j];
            }
            obj1 += t.rhs(i);
        }
        if (!simplex_iterate(t, cost1, obj1, allowed)) return result;
        if (obj1 > 1e-7) return result;  // infeasible
        // Artificials may not re-enter in phase 2.
        for (int j = art_base; j < t.cols; ++j) allowed[j] = false;
        // Pivot any artificial still basic (at zero) out on a structural or
        // slack column; if its row is entirely zero it is redundant.
        for (int i = 0; i < m; ++i) {
            if (t.basis[i] < art_base) continue;
            int col = -1;
            for (int j = 0; j < art_base; ++j) {
                if (std::fabs(t.a[i][j]) > kTol) {
                    col = j;
                    break;
                }
            }
            if (col >= 0) t.pivot(i, col);
        }
    }

    // Phase 2: minimize the true objective.
    std::vector<double> cost2(t.cols, 0.0);
    for (int j = 0; j < n && j < int(c.size()); ++j) cost2[j] = c[j];
    double obj2 = 0.0;
    for (int i = 0; i < m; ++i) {
        const int b = t.basis[i];
        if (b < 0 || b >= t.cols) continue;
        const double factor = cost2[b];
        if (factor == 0.0) continue;
        for (int j = 0; j < t.cols; ++j) {
            if (j != b) cost2[j] -= factor * t.a[i][j];
        }
        obj2 += factor * t.rhs(i);
        cost2[b] = 0.0;
    }
    if (!simplex_iterate(t, cost2, obj2, allowed)) return result;

    result.feasible = true;
    result.x.assign(n, 0.0);
    for (int i = 0; i < m; ++i) {
        if (t.basis[i] >= 0 && t.basis[i] < n) {
            result.x[t.basis[i]] = t.rhs(i);
        }
    }
    result.objective = 0.0;
    for (int j = 0; j < n && j < int(c.size()); ++j) {
        result.objective += c[j] * result.x[j];
    }
    return result;
}

}  // namespace qkd
