#ifndef MN22_LP_HPP
#define MN22_LP_HPP

// Self-contained dense linear-program solver: two-phase primal simplex with
// Bland's anti-cycling rule.
//
// Problems are stated as: maximize c'x subject to rows (a'x <= b or a'x = b)
// and per-variable bounds.  Default bounds are x_j >= 0 with no upper bound;
// free variables are supported (split internally), finite bounds are turned
// into rows.  All arithmetic is double precision with explicit tolerances;
// an Optimal result is re-verified against every original constraint before
// it is returned, and exceeding the pivot budget raises LPError rather than
// returning a possibly-wrong answer.

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "mn22/errors.hpp"

namespace mn22 {

struct LPRow {
  std::vector<double> coef;
  char rel = '<';  // '<' for <=, '=' for equality
  double rhs = 0.0;
};

struct LPProblem {
  int num_vars = 0;
  std::vector<double> objective;  // length num_vars; maximized
  std::vector<LPRow> rows;
  std::vector<double> lower;  // default 0; -inf marks a free variable
  std::vector<double> upper;  // default +inf

  static LPProblem make(int num_vars) {
    if (num_vars < 1) throw StructuralError("LPProblem: need at least one variable");
    LPProblem p;
    p.num_vars = num_vars;
    p.objective.assign(static_cast<std::size_t>(num_vars), 0.0);
    p.lower.assign(static_cast<std::size_t>(num_vars), 0.0);
    p.upper.assign(static_cast<std::size_t>(num_vars),
                   std::numeric_limits<double>::infinity());
    return p;
  }

  void add_row(std::vector<double> coef, char rel, double rhs) {
    if (coef.size() != static_cast<std::size_t>(num_vars)) {
      throw StructuralError("LPProblem: row length mismatch");
    }
    if (rel != '<' && rel != '=') throw StructuralError("LPProblem: relation must be '<' or '='");
    rows.push_back({std::move(coef), rel, rhs});
  }
};

enum class LPStatus { Optimal, Infeasible, Unbounded };

struct LPSolution {
  LPStatus status = LPStatus::Infeasible;
  double value = 0.0;
  std::vector<double> point;  // original variables, when Optimal
  long pivots = 0;
};

struct ToleranceConfig {
  double pivot_tol = 1e-9;
  double feas_tol = 1e-8;
  long max_pivots = 1000000;
};

namespace lpdetail {

// Standard-form tableau: maximize over x >= 0 with equality rows Bx = b,
// b >= 0, starting basis given by slack/artificial columns.
class SimplexTableau {
 public:
  // rows: m x total_cols (structural + slack + artificial), rhs separate.
  std::vector<std::vector<double>> a;
  std::vector<double> b;
  std::vector<int> basis;        // basis[i] = column basic in row i
  int num_total = 0;             // all columns
  int num_artificial_start = 0;  // columns >= this are artificial

  long pivots = 0;

  void pivot(int row, int col) {
    const double piv = a[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)];
    auto& prow = a[static_cast<std::size_t>(row)];
    const double inv = 1.0 / piv;
    for (double& v : prow) v *= inv;
    b[static_cast<std::size_t>(row)] *= inv;
    prow[static_cast<std::size_t>(col)] = 1.0;  // kill roundoff on the pivot itself
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (static_cast<int>(i) == row) continue;
      const double factor = a[i][static_cast<std::size_t>(col)];
      if (factor == 0.0) continue;
      auto& irow = a[i];
      for (std::size_t j = 0; j < irow.size(); ++j) irow[j] -= factor * prow[j];
      irow[static_cast<std::size_t>(col)] = 0.0;
      b[i] -= factor * b[static_cast<std::size_t>(row)];
    }
    basis[static_cast<std::size_t>(row)] = col;
    ++pivots;
  }

  // Reduced-cost row for objective c (length num_total, maximize):
  // z_j - c_j = c_B' (B^-1 A)_j - c_j.  Entering is any column with
  // z_j - c_j < -tol; Bland picks the smallest index.
  std::vector<double> reduced_costs(const std::vector<double>& c) const {
    std::vector<double> z(static_cast<std::size_t>(num_total), 0.0);
    for (std::size_t j = 0; j < z.size(); ++j) z[j] = -c[j];
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double cb = c[static_cast<std::size_t>(basis[i])];
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j < z.size(); ++j) z[j] += cb * a[i][j];
    }
    return z;
  }

  double objective_value(const std::vector<double>& c) const {
    double v = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
      v += c[static_cast<std::size_t>(basis[i])] * b[i];
    return v;
  }

  // Runs simplex iterations for objective c (maximize).  allow_cols limits the
  // entering choice (used in phase 2 to exclude artificials).  Returns false
  // when an unbounded ray is found.
  bool iterate(const std::vector<double>& c, int allow_cols, const ToleranceConfig& tol) {
    for (;;) {
      if (pivots > tol.max_pivots) {
        throw LPError("simplex exceeded pivot budget (" + std::to_string(tol.max_pivots) + ")");
      }
      const std::vector<double> z = reduced_costs(c);
      int enter = -1;
      for (int j = 0; j < allow_cols; ++j) {
        if (z[static_cast<std::size_t>(j)] < -tol.pivot_tol) {
          enter = j;
          break;  // Bland: smallest improving index
        }
      }
      if (enter < 0) return true;  // optimal
      int leave = -1;
      double best_ratio = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i) {
        const double aij = a[i][static_cast<std::size_t>(enter)];
        if (aij <= tol.pivot_tol) continue;
        const double ratio = b[i] / aij;
        // Bland: among minimum ratios, leave with the smallest basic index.
        if (leave < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis[i] < basis[static_cast<std::size_t>(leave)])) {
          leave = static_cast<int>(i);
          best_ratio = ratio;
        }
      }
      if (leave < 0) return false;  // unbounded in direction 'enter'
      pivot(leave, enter);
    }
  }
};

}  // namespace lpdetail

inline LPSolution solve(const LPProblem& problem, const ToleranceConfig& tol = {}) {
  const int n_orig = problem.num_vars;
  if (problem.lower.size() != static_cast<std::size_t>(n_orig) ||
      problem.upper.size() != static_cast<std::size_t>(n_orig) ||
      problem.objective.size() != static_cast<std::size_t>(n_orig)) {
    throw StructuralError("solve: inconsistent problem dimensions");
  }
  const double inf = std::numeric_limits<double>::infinity();

  // Internal variables: x_j = base_j (+ split negative part for free vars).
  // Free variable  -> x_j = u_j - v_j with u, v >= 0.
  // Finite lower l -> shifted: x_j = l + u_j, u_j >= 0 (fold into rows/rhs).
  // Finite upper   -> extra row x_j <= u.
  std::vector<int> pos_col(static_cast<std::size_t>(n_orig), -1);
  std::vector<int> neg_col(static_cast<std::size_t>(n_orig), -1);
  std::vector<double> shift(static_cast<std::size_t>(n_orig), 0.0);
  int n_internal = 0;
  for (int j = 0; j < n_orig; ++j) {
    const double lo = problem.lower[static_cast<std::size_t>(j)];
    if (std::isnan(lo) || lo == inf) throw StructuralError("solve: bad lower bound");
    pos_col[static_cast<std::size_t>(j)] = n_internal++;
    if (lo == -inf) {
      neg_col[static_cast<std::size_t>(j)] = n_internal++;
    } else {
      shift[static_cast<std::size_t>(j)] = lo;
    }
  }

  struct NormRow {
    std::vector<double> coef;  // over internal variables
    char rel;
    double rhs;
  };
  std::vector<NormRow> rows;
  auto convert_row = [&](const std::vector<double>& coef, char rel, double rhs) {
    NormRow r;
    r.coef.assign(static_cast<std::size_t>(n_internal), 0.0);
    r.rel = rel;
    r.rhs = rhs;
    for (int j = 0; j < n_orig; ++j) {
      const double c = coef[static_cast<std::size_t>(j)];
      if (c == 0.0) continue;
      r.coef[static_cast<std::size_t>(pos_col[static_cast<std::size_t>(j)])] += c;
      if (neg_col[static_cast<std::size_t>(j)] >= 0)
        r.coef[static_cast<std::size_t>(neg_col[static_cast<std::size_t>(j)])] -= c;
      r.rhs -= c * shift[static_cast<std::size_t>(j)];
    }
    rows.push_back(std::move(r));
  };
  for (const auto& row : problem.rows) convert_row(row.coef, row.rel, row.rhs);
  for (int j = 0; j < n_orig; ++j) {
    const double up = problem.upper[static_cast<std::size_t>(j)];
    if (up != inf) {
      std::vector<double> coef(static_cast<std::size_t>(n_orig), 0.0);
      coef[static_cast<std::size_t>(j)] = 1.0;
      convert_row(coef, '<', up);
    }
  }

  // Build the tableau: normalize rhs >= 0, add slack for '<' rows (surplus for
  // flipped ones), artificial for '=' rows and for rows whose slack cannot
  // start basic.
  const int m = static_cast<int>(rows.size());
  int num_slack = 0;
  for (const auto& r : rows)
    if (r.rel == '<') ++num_slack;
  lpdetail::SimplexTableau tab;
  int col_slack = n_internal;
  int col_art = n_internal + num_slack;
  tab.num_artificial_start = col_art;
  // Count artificials first.
  int num_art = 0;
  {
    for (const auto& r : rows) {
      const bool flip = r.rhs < 0.0;
      if (r.rel == '=') ++num_art;
      else if (flip) ++num_art;  // '<' with negative rhs becomes '>=' after flip
    }
  }
  tab.num_total = n_internal + num_slack + num_art;
  tab.a.assign(static_cast<std::size_t>(m),
               std::vector<double>(static_cast<std::size_t>(tab.num_total), 0.0));
  tab.b.assign(static_cast<std::size_t>(m), 0.0);
  tab.basis.assign(static_cast<std::size_t>(m), -1);

  int next_slack = col_slack;
  int next_art = col_art;
  for (int i = 0; i < m; ++i) {
    const auto& r = rows[static_cast<std::size_t>(i)];
    const bool flip = r.rhs < 0.0;
    const double sign = flip ? -1.0 : 1.0;
    auto& arow = tab.a[static_cast<std::size_t>(i)];
    for (int j = 0; j < n_internal; ++j)
      arow[static_cast<std::size_t>(j)] = sign * r.coef[static_cast<std::size_t>(j)];
    tab.b[static_cast<std::size_t>(i)] = sign * r.rhs;
    if (r.rel == '<') {
      arow[static_cast<std::size_t>(next_slack)] = sign;  // slack (or surplus if flipped)
      if (!flip) {
        tab.basis[static_cast<std::size_t>(i)] = next_slack;
      } else {
        arow[static_cast<std::size_t>(next_art)] = 1.0;
        tab.basis[static_cast<std::size_t>(i)] = next_art;
        ++next_art;
      }
      ++next_slack;
    } else {
      arow[static_cast<std::size_t>(next_art)] = 1.0;
      tab.basis[static_cast<std::size_t>(i)] = next_art;
      ++next_art;
    }
  }

  // Phase 1: maximize -(sum of artificials).
  LPSolution sol;
  if (num_art > 0) {
    std::vector<double> c1(static_cast<std::size_t>(tab.num_total), 0.0);
    for (int j = col_art; j < tab.num_total; ++j) c1[static_cast<std::size_t>(j)] = -1.0;
    const bool bounded = tab.iterate(c1, tab.num_total, tol);
    (void)bounded;  // phase-1 objective is bounded above by 0 by construction
    const double infeas = -tab.objective_value(c1);
    if (infeas > tol.feas_tol) {
      sol.status = LPStatus::Infeasible;
      sol.pivots = tab.pivots;
      return sol;
    }
    // Drive remaining artificials out of the basis where possible.
    for (int i = 0; i < m; ++i) {
      if (tab.basis[static_cast<std::size_t>(i)] >= col_art) {
        int enter = -1;
        for (int j = 0; j < col_art; ++j) {
          if (std::abs(tab.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) >
              tol.pivot_tol) {
            enter = j;
            break;
          }
        }
        if (enter >= 0) tab.pivot(i, enter);
        // else: redundant row; the artificial stays basic at value ~0, which is
        // harmless because phase 2 excludes artificial columns from entering.
      }
    }
  }

  // Phase 2: maximize the real objective over non-artificial columns.
  std::vector<double> c2(static_cast<std::size_t>(tab.num_total), 0.0);
  double const_term = 0.0;
  for (int j = 0; j < n_orig; ++j) {
    const double c = problem.objective[static_cast<std::size_t>(j)];
    if (c == 0.0) continue;
    c2[static_cast<std::size_t>(pos_col[static_cast<std::size_t>(j)])] += c;
    if (neg_col[static_cast<std::size_t>(j)] >= 0)
      c2[static_cast<std::size_t>(neg_col[static_cast<std::size_t>(j)])] -= c;
    const_term += c * shift[static_cast<std::size_t>(j)];
  }
  const bool bounded = tab.iterate(c2, tab.num_artificial_start, tol);
  if (!bounded) {
    sol.status = LPStatus::Unbounded;
    sol.pivots = tab.pivots;
    return sol;
  }

  // Internal optimality certificate: no admissible reduced cost improves.
  {
    const std::vector<double> z = tab.reduced_costs(c2);
    for (int j = 0; j < tab.num_artificial_start; ++j) {
      if (z[static_cast<std::size_t>(j)] < -10.0 * tol.pivot_tol) {
        throw LPError("optimality certificate failed: improving reduced cost after termination");
      }
    }
  }

  // Recover the original-variable point.
  std::vector<double> internal(static_cast<std::size_t>(tab.num_total), 0.0);
  for (int i = 0; i < m; ++i)
    internal[static_cast<std::size_t>(tab.basis[static_cast<std::size_t>(i)])] =
        tab.b[static_cast<std::size_t>(i)];
  sol.point.assign(static_cast<std::size_t>(n_orig), 0.0);
  for (int j = 0; j < n_orig; ++j) {
    double v = shift[static_cast<std::size_t>(j)] +
               internal[static_cast<std::size_t>(pos_col[static_cast<std::size_t>(j)])];
    if (neg_col[static_cast<std::size_t>(j)] >= 0)
      v -= internal[static_cast<std::size_t>(neg_col[static_cast<std::size_t>(j)])];
    sol.point[static_cast<std::size_t>(j)] = v;
  }
  sol.value = tab.objective_value(c2) + const_term;
  sol.status = LPStatus::Optimal;
  sol.pivots = tab.pivots;

  // Feasibility re-verification on the original constraints.
  for (const auto& row : problem.rows) {
    double lhs = 0.0;
    for (int j = 0; j < n_orig; ++j)
      lhs += row.coef[static_cast<std::size_t>(j)] * sol.point[static_cast<std::size_t>(j)];
    const double slack = row.rhs - lhs;
    if (row.rel == '<' ? slack < -tol.feas_tol : std::abs(slack) > tol.feas_tol) {
      throw LPError("returned point violates a constraint by " + std::to_string(-slack));
    }
  }
  for (int j = 0; j < n_orig; ++j) {
    const double v = sol.point[static_cast<std::size_t>(j)];
    if (v < problem.lower[static_cast<std::size_t>(j)] - tol.feas_tol ||
        v > problem.upper[static_cast<std::size_t>(j)] + tol.feas_tol) {
      throw LPError("returned point violates a variable bound");
    }
  }
  return sol;
}

}  // namespace mn22

#endif  // MN22_LP_HPP
