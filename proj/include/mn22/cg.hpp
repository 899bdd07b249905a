#ifndef MN22_CG_HPP
#define MN22_CG_HPP

// Collins-Gisin (CG) representation of two-outcome bipartite behaviors and of
// Bell functionals over them.
//
// A behavior with n_a settings for Alice and n_b for Bob, two outcomes each,
// is parameterized by
//   alice[x-1] = P(A_x)    = p_A(a=0 | x)                    (x = 1..n_a)
//   bob[y-1]   = P(B_y)    = p_B(b=0 | y)                    (y = 1..n_b)
//   joint[y-1][x-1] = P(A_x B_y) = p(a=0, b=0 | x, y)
// The joint block is stored Bob-major (rows = Bob settings) so a printed
// table reads the same way as the usual inequality tables.  Normalization and
// no-signaling are implicit in this parametrization; the only nontrivial
// constraints are the nonnegativity of the four reconstructed outcome
// probabilities per setting pair.

#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "mn22/errors.hpp"

namespace mn22 {

struct CGTable {
  int n_a = 0;
  int n_b = 0;
  std::vector<double> alice;               // length n_a
  std::vector<double> bob;                 // length n_b
  std::vector<std::vector<double>> joint;  // n_b rows, n_a columns

  static CGTable zeros(int n_a, int n_b) {
    if (n_a < 1 || n_b < 1) throw DomainError("CGTable: setting counts must be >= 1");
    CGTable t;
    t.n_a = n_a;
    t.n_b = n_b;
    t.alice.assign(static_cast<std::size_t>(n_a), 0.0);
    t.bob.assign(static_cast<std::size_t>(n_b), 0.0);
    t.joint.assign(static_cast<std::size_t>(n_b),
                   std::vector<double>(static_cast<std::size_t>(n_a), 0.0));
    return t;
  }
};

struct BellFunctional {
  int n_a = 0;
  int n_b = 0;
  std::vector<double> alice_coef;               // length n_a
  std::vector<double> bob_coef;                 // length n_b
  std::vector<std::vector<double>> joint_coef;  // n_b rows, n_a columns
  double bound = 0.0;

  static BellFunctional zeros(int n_a, int n_b) {
    if (n_a < 1 || n_b < 1) throw DomainError("BellFunctional: setting counts must be >= 1");
    BellFunctional f;
    f.n_a = n_a;
    f.n_b = n_b;
    f.alice_coef.assign(static_cast<std::size_t>(n_a), 0.0);
    f.bob_coef.assign(static_cast<std::size_t>(n_b), 0.0);
    f.joint_coef.assign(static_cast<std::size_t>(n_b),
                        std::vector<double>(static_cast<std::size_t>(n_a), 0.0));
    return f;
  }
};

// Full conditional distribution p(a,b|x,y), a,b in {0,1}.  prob[y][x][a][b].
struct FullDistribution {
  int n_a = 0;
  int n_b = 0;
  std::vector<std::vector<std::array<std::array<double, 2>, 2>>> prob;
};

namespace detail {

inline void check_table_shape(const CGTable& t) {
  if (t.n_a < 1 || t.n_b < 1 ||
      t.alice.size() != static_cast<std::size_t>(t.n_a) ||
      t.bob.size() != static_cast<std::size_t>(t.n_b) ||
      t.joint.size() != static_cast<std::size_t>(t.n_b)) {
    throw StructuralError("CGTable: inconsistent dimensions");
  }
  for (const auto& row : t.joint) {
    if (row.size() != static_cast<std::size_t>(t.n_a)) {
      throw StructuralError("CGTable: joint row length mismatch");
    }
  }
}

inline void check_functional_shape(const BellFunctional& f) {
  if (f.n_a < 1 || f.n_b < 1 ||
      f.alice_coef.size() != static_cast<std::size_t>(f.n_a) ||
      f.bob_coef.size() != static_cast<std::size_t>(f.n_b) ||
      f.joint_coef.size() != static_cast<std::size_t>(f.n_b)) {
    throw StructuralError("BellFunctional: inconsistent dimensions");
  }
  for (const auto& row : f.joint_coef) {
    if (row.size() != static_cast<std::size_t>(f.n_a)) {
      throw StructuralError("BellFunctional: joint row length mismatch");
    }
  }
}

}  // namespace detail

// One violated validity constraint, e.g. "p(01|x=2,y=1) = -0.3 < 0".
struct ValidityViolation {
  std::string constraint;
  double amount = 0.0;  // magnitude of the violation (positive)
};

struct ValidityReport {
  std::vector<ValidityViolation> violations;
  bool ok() const { return violations.empty(); }
};

// Checks that every reconstructed outcome probability
//   p(00) = J,  p(01) = P(A_x) - J,  p(10) = P(B_y) - J,
//   p(11) = 1 - P(A_x) - P(B_y) + J
// is >= -tol and that marginals lie in [-tol, 1+tol].
inline ValidityReport validate(const CGTable& t, double tol = 1e-9) {
  detail::check_table_shape(t);
  ValidityReport report;
  auto flag = [&](const std::string& what, double amount) {
    report.violations.push_back({what, amount});
  };
  for (int x = 0; x < t.n_a; ++x) {
    const double a = t.alice[static_cast<std::size_t>(x)];
    if (a < -tol) flag("P(A_" + std::to_string(x + 1) + ") < 0", -a);
    if (a > 1.0 + tol) flag("P(A_" + std::to_string(x + 1) + ") > 1", a - 1.0);
  }
  for (int y = 0; y < t.n_b; ++y) {
    const double b = t.bob[static_cast<std::size_t>(y)];
    if (b < -tol) flag("P(B_" + std::to_string(y + 1) + ") < 0", -b);
    if (b > 1.0 + tol) flag("P(B_" + std::to_string(y + 1) + ") > 1", b - 1.0);
  }
  for (int y = 0; y < t.n_b; ++y) {
    for (int x = 0; x < t.n_a; ++x) {
      const double a = t.alice[static_cast<std::size_t>(x)];
      const double b = t.bob[static_cast<std::size_t>(y)];
      const double j = t.joint[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)];
      const std::string xy = "|x=" + std::to_string(x + 1) + ",y=" + std::to_string(y + 1) + ")";
      if (j < -tol) flag("p(00" + xy + " < 0", -j);
      if (a - j < -tol) flag("p(01" + xy + " < 0", j - a);
      if (b - j < -tol) flag("p(10" + xy + " < 0", j - b);
      if (1.0 - a - b + j < -tol) flag("p(11" + xy + " < 0", a + b - j - 1.0);
    }
  }
  return report;
}

// Value of a functional on a behavior:
//   sum_x alice_coef[x] P(A_x) + sum_y bob_coef[y] P(B_y)
//   + sum_{x,y} joint_coef[y][x] P(A_x B_y).
inline double evaluate(const BellFunctional& f, const CGTable& t) {
  detail::check_functional_shape(f);
  detail::check_table_shape(t);
  if (f.n_a != t.n_a || f.n_b != t.n_b) {
    throw StructuralError("evaluate: functional/table shape mismatch");
  }
  double v = 0.0;
  for (int x = 0; x < f.n_a; ++x)
    v += f.alice_coef[static_cast<std::size_t>(x)] * t.alice[static_cast<std::size_t>(x)];
  for (int y = 0; y < f.n_b; ++y)
    v += f.bob_coef[static_cast<std::size_t>(y)] * t.bob[static_cast<std::size_t>(y)];
  for (int y = 0; y < f.n_b; ++y)
    for (int x = 0; x < f.n_a; ++x)
      v += f.joint_coef[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)] *
           t.joint[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)];
  return v;
}

// Expands a CG table into the full conditional distribution.
inline FullDistribution to_full(const CGTable& t) {
  detail::check_table_shape(t);
  FullDistribution d;
  d.n_a = t.n_a;
  d.n_b = t.n_b;
  d.prob.assign(static_cast<std::size_t>(t.n_b),
                std::vector<std::array<std::array<double, 2>, 2>>(
                    static_cast<std::size_t>(t.n_a)));
  for (int y = 0; y < t.n_b; ++y) {
    for (int x = 0; x < t.n_a; ++x) {
      const double a = t.alice[static_cast<std::size_t>(x)];
      const double b = t.bob[static_cast<std::size_t>(y)];
      const double j = t.joint[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)];
      auto& cell = d.prob[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)];
      cell[0][0] = j;
      cell[0][1] = a - j;
      cell[1][0] = b - j;
      cell[1][1] = 1.0 - a - b + j;
    }
  }
  return d;
}

// Collapses a full distribution back to CG coordinates.  Marginals are
// averaged over the other party's settings (symmetric treatment of numeric
// noise); inputs that signal beyond tol are rejected with the largest
// discrepancy reported.
inline CGTable from_full(const FullDistribution& d, double tol = 1e-9) {
  if (d.n_a < 1 || d.n_b < 1 || d.prob.size() != static_cast<std::size_t>(d.n_b)) {
    throw StructuralError("from_full: inconsistent dimensions");
  }
  for (const auto& row : d.prob) {
    if (row.size() != static_cast<std::size_t>(d.n_a)) {
      throw StructuralError("from_full: row length mismatch");
    }
  }
  for (int y = 0; y < d.n_b; ++y) {
    for (int x = 0; x < d.n_a; ++x) {
      const auto& cell = d.prob[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)];
      const double sum = cell[0][0] + cell[0][1] + cell[1][0] + cell[1][1];
      if (std::abs(sum - 1.0) > tol) {
        throw StructuralError("from_full: cell (x=" + std::to_string(x + 1) + ",y=" +
                              std::to_string(y + 1) + ") sums to " + std::to_string(sum));
      }
    }
  }
  // No-signaling check: Alice's marginal must not depend on y, Bob's not on x.
  double worst = 0.0;
  std::string worst_what;
  CGTable t = CGTable::zeros(d.n_a, d.n_b);
  for (int x = 0; x < d.n_a; ++x) {
    double mean = 0.0;
    for (int y = 0; y < d.n_b; ++y) {
      const auto& cell = d.prob[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)];
      mean += cell[0][0] + cell[0][1];
    }
    mean /= d.n_b;
    for (int y = 0; y < d.n_b; ++y) {
      const auto& cell = d.prob[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)];
      const double dev = std::abs(cell[0][0] + cell[0][1] - mean);
      if (dev > worst) {
        worst = dev;
        worst_what = "p_A(0|x=" + std::to_string(x + 1) + ") varies with y";
      }
    }
    t.alice[static_cast<std::size_t>(x)] = mean;
  }
  for (int y = 0; y < d.n_b; ++y) {
    double mean = 0.0;
    for (int x = 0; x < d.n_a; ++x) {
      const auto& cell = d.prob[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)];
      mean += cell[0][0] + cell[1][0];
    }
    mean /= d.n_a;
    for (int x = 0; x < d.n_a; ++x) {
      const auto& cell = d.prob[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)];
      const double dev = std::abs(cell[0][0] + cell[1][0] - mean);
      if (dev > worst) {
        worst = dev;
        worst_what = "p_B(0|y=" + std::to_string(y + 1) + ") varies with x";
      }
    }
    t.bob[static_cast<std::size_t>(y)] = mean;
  }
  if (worst > tol) {
    throw StructuralError("from_full: signaling detected (" + worst_what +
                          ", max deviation " + std::to_string(worst) + ")");
  }
  for (int y = 0; y < d.n_b; ++y)
    for (int x = 0; x < d.n_a; ++x)
      t.joint[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)] =
          d.prob[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)][0][0];
  return t;
}

namespace detail {

inline void check_keep(const std::vector<int>& keep, int n, const char* who) {
  if (keep.empty()) throw StructuralError(std::string("restrict: empty ") + who + " index set");
  int prev = 0;
  for (int idx : keep) {
    if (idx < 1 || idx > n) {
      throw StructuralError(std::string("restrict: ") + who + " index " +
                            std::to_string(idx) + " out of range 1.." + std::to_string(n));
    }
    if (idx <= prev) {
      throw StructuralError(std::string("restrict: ") + who +
                            " indices must be strictly increasing");
    }
    prev = idx;
  }
}

}  // namespace detail

// Sub-table on the kept settings (1-based, strictly increasing index sets).
inline CGTable restrict_table(const CGTable& t, const std::vector<int>& alice_keep,
                              const std::vector<int>& bob_keep) {
  detail::check_table_shape(t);
  detail::check_keep(alice_keep, t.n_a, "alice");
  detail::check_keep(bob_keep, t.n_b, "bob");
  CGTable r = CGTable::zeros(static_cast<int>(alice_keep.size()),
                             static_cast<int>(bob_keep.size()));
  for (std::size_t i = 0; i < alice_keep.size(); ++i)
    r.alice[i] = t.alice[static_cast<std::size_t>(alice_keep[i] - 1)];
  for (std::size_t j = 0; j < bob_keep.size(); ++j)
    r.bob[j] = t.bob[static_cast<std::size_t>(bob_keep[j] - 1)];
  for (std::size_t j = 0; j < bob_keep.size(); ++j)
    for (std::size_t i = 0; i < alice_keep.size(); ++i)
      r.joint[j][i] = t.joint[static_cast<std::size_t>(bob_keep[j] - 1)]
                             [static_cast<std::size_t>(alice_keep[i] - 1)];
  return r;
}

// Convex combination alpha*t1 + (1-alpha)*t2 of two same-shape tables.
inline CGTable mix(const CGTable& t1, const CGTable& t2, double alpha) {
  detail::check_table_shape(t1);
  detail::check_table_shape(t2);
  if (t1.n_a != t2.n_a || t1.n_b != t2.n_b) {
    throw StructuralError("mix: shape mismatch");
  }
  if (alpha < 0.0 || alpha > 1.0) throw DomainError("mix: alpha must be in [0,1]");
  CGTable t = CGTable::zeros(t1.n_a, t1.n_b);
  for (int x = 0; x < t.n_a; ++x)
    t.alice[static_cast<std::size_t>(x)] =
        alpha * t1.alice[static_cast<std::size_t>(x)] +
        (1.0 - alpha) * t2.alice[static_cast<std::size_t>(x)];
  for (int y = 0; y < t.n_b; ++y)
    t.bob[static_cast<std::size_t>(y)] =
        alpha * t1.bob[static_cast<std::size_t>(y)] +
        (1.0 - alpha) * t2.bob[static_cast<std::size_t>(y)];
  for (int y = 0; y < t.n_b; ++y)
    for (int x = 0; x < t.n_a; ++x)
      t.joint[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)] =
          alpha * t1.joint[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)] +
          (1.0 - alpha) * t2.joint[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)];
  return t;
}

}  // namespace mn22

#endif  // MN22_CG_HPP
