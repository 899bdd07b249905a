#ifndef MN22_POLYTOPE_HPP
#define MN22_POLYTOPE_HPP

// Polytope-side verification: exhaustive local (deterministic-vertex) maxima,
// no-signaling maxima via LP, membership of a table in a restricted local
// polytope, pairwise-local ("some pair of Bob settings behaves locally")
// maxima, and pointwise domination between functionals on the no-signaling
// set.
//
// Conventions: a deterministic strategy assigns an outcome in {0,1} to every
// setting; its encoding is the bit string (a_1 .. a_{n_a} b_1 .. b_{n_b}) read
// as an integer, most significant bit first.  Enumeration and tie-breaking
// follow that encoding in ascending order.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "mn22/cg.hpp"
#include "mn22/errors.hpp"
#include "mn22/inequalities.hpp"
#include "mn22/lp.hpp"
#include "mn22/parallel.hpp"

namespace mn22 {

struct DeterministicStrategy {
  std::vector<int> alice;  // alice[x-1] in {0,1}
  std::vector<int> bob;    // bob[y-1] in {0,1}
};

inline CGTable vertex_table(const DeterministicStrategy& s) {
  const int n_a = static_cast<int>(s.alice.size());
  const int n_b = static_cast<int>(s.bob.size());
  CGTable t = CGTable::zeros(n_a, n_b);
  for (int x = 1; x <= n_a; ++x)
    t.alice[static_cast<std::size_t>(x - 1)] =
        (s.alice[static_cast<std::size_t>(x - 1)] == 0) ? 1.0 : 0.0;
  for (int y = 1; y <= n_b; ++y)
    t.bob[static_cast<std::size_t>(y - 1)] =
        (s.bob[static_cast<std::size_t>(y - 1)] == 0) ? 1.0 : 0.0;
  for (int y = 1; y <= n_b; ++y)
    for (int x = 1; x <= n_a; ++x)
      t.joint[static_cast<std::size_t>(y - 1)][static_cast<std::size_t>(x - 1)] =
          t.alice[static_cast<std::size_t>(x - 1)] * t.bob[static_cast<std::size_t>(y - 1)];
  return t;
}

namespace detail {

inline void check_enumeration_guard(int n_a, int n_b) {
  if (n_a < 1 || n_b < 1) throw DomainError("scenario needs at least one setting per side");
  if (n_a + n_b > 24) {
    throw GuardError("deterministic enumeration refused: 2^(" + std::to_string(n_a) + "+" +
                     std::to_string(n_b) + ") vertices exceeds the 2^24 guard");
  }
}

inline DeterministicStrategy strategy_from_encoding(int n_a, int n_b, std::uint64_t code) {
  DeterministicStrategy s;
  s.alice.resize(static_cast<std::size_t>(n_a));
  s.bob.resize(static_cast<std::size_t>(n_b));
  for (int x = 1; x <= n_a; ++x)
    s.alice[static_cast<std::size_t>(x - 1)] =
        static_cast<int>((code >> (n_a + n_b - x)) & 1u);
  for (int y = 1; y <= n_b; ++y)
    s.bob[static_cast<std::size_t>(y - 1)] = static_cast<int>((code >> (n_b - y)) & 1u);
  return s;
}

}  // namespace detail

// Invokes fn(strategy, table) for every deterministic strategy in ascending
// encoding order.
template <typename Fn>
void for_each_det_vertex(int n_a, int n_b, Fn&& fn) {
  detail::check_enumeration_guard(n_a, n_b);
  const std::uint64_t total = std::uint64_t{1} << (n_a + n_b);
  for (std::uint64_t code = 0; code < total; ++code) {
    const DeterministicStrategy s = detail::strategy_from_encoding(n_a, n_b, code);
    fn(s, vertex_table(s));
  }
}

inline std::vector<CGTable> det_vertices(int n_a, int n_b) {
  std::vector<CGTable> out;
  out.reserve(static_cast<std::size_t>(std::uint64_t{1} << (n_a + n_b)));
  for_each_det_vertex(n_a, n_b, [&](const DeterministicStrategy&, const CGTable& t) {
    out.push_back(t);
  });
  return out;
}

struct LocalMaxResult {
  double value = 0.0;
  DeterministicStrategy witness;
};

// Exact maximum of f over all deterministic strategies; ties resolved in
// favor of the lowest strategy encoding.
inline LocalMaxResult local_max(const BellFunctional& f) {
  detail::check_enumeration_guard(f.n_a, f.n_b);
  const int n_a = f.n_a;
  const int n_b = f.n_b;
  const std::uint64_t n_amask = std::uint64_t{1} << n_a;
  const std::uint64_t n_bmask = std::uint64_t{1} << n_b;

  // Per Alice mask: best value over Bob masks and the first Bob mask reaching
  // it.  Filled independently per mask, merged serially afterwards so the
  // result does not depend on the thread count.
  std::vector<double> best_val(static_cast<std::size_t>(n_amask));
  std::vector<std::uint64_t> best_bmask(static_cast<std::size_t>(n_amask));
  parallel_for(static_cast<long>(n_amask), [&](long am_) {
    const std::uint64_t amask = static_cast<std::uint64_t>(am_);
    double alice_part = 0.0;
    std::vector<double> alpha(static_cast<std::size_t>(n_a));
    for (int x = 1; x <= n_a; ++x) {
      const double ax = ((amask >> (n_a - x)) & 1u) == 0 ? 1.0 : 0.0;
      alpha[static_cast<std::size_t>(x - 1)] = ax;
      alice_part += ax * f.alice_coef[static_cast<std::size_t>(x - 1)];
    }
    std::vector<double> row_gain(static_cast<std::size_t>(n_b));
    for (int y = 1; y <= n_b; ++y) {
      double g = f.bob_coef[static_cast<std::size_t>(y - 1)];
      for (int x = 1; x <= n_a; ++x)
        g += f.joint_coef[static_cast<std::size_t>(y - 1)][static_cast<std::size_t>(x - 1)] *
             alpha[static_cast<std::size_t>(x - 1)];
      row_gain[static_cast<std::size_t>(y - 1)] = g;
    }
    double best = -std::numeric_limits<double>::infinity();
    std::uint64_t arg = 0;
    for (std::uint64_t bmask = 0; bmask < n_bmask; ++bmask) {
      double v = alice_part;
      for (int y = 1; y <= n_b; ++y)
        if (((bmask >> (n_b - y)) & 1u) == 0) v += row_gain[static_cast<std::size_t>(y - 1)];
      if (v > best) {
        best = v;
        arg = bmask;
      }
    }
    best_val[static_cast<std::size_t>(amask)] = best;
    best_bmask[static_cast<std::size_t>(amask)] = arg;
  });

  std::uint64_t amax = 0;
  for (std::uint64_t amask = 1; amask < n_amask; ++amask)
    if (best_val[static_cast<std::size_t>(amask)] > best_val[static_cast<std::size_t>(amax)])
      amax = amask;
  LocalMaxResult r;
  r.value = best_val[static_cast<std::size_t>(amax)];
  const std::uint64_t code =
      (amax << n_b) | best_bmask[static_cast<std::size_t>(amax)];
  r.witness = detail::strategy_from_encoding(n_a, n_b, code);
  return r;
}

// Linear description of the no-signaling set in CG coordinates: for every
// setting pair, all four outcome probabilities are nonnegative; marginals lie
// in [0,1].
struct NSConstraintSystem {
  int n_a = 0;
  int n_b = 0;

  static NSConstraintSystem for_scenario(int n_a, int n_b) {
    if (n_a < 1 || n_b < 1) throw DomainError("scenario needs at least one setting per side");
    return NSConstraintSystem{n_a, n_b};
  }

  int num_vars() const { return n_a + n_b + n_a * n_b; }
  long num_logical_constraints() const {
    return 4L * n_a * n_b + 2L * (n_a + n_b);
  }
  int a_var(int x) const { return x - 1; }
  int b_var(int y) const { return n_a + y - 1; }
  int j_var(int x, int y) const { return n_a + n_b + (y - 1) * n_a + (x - 1); }

  // Variables: [alice marginals | bob marginals | joints], all >= 0;
  // marginals additionally <= 1.  Rows encode joint <= each marginal and the
  // nonnegativity of the both-outcome-1 probability.
  LPProblem base_problem() const {
    LPProblem p = LPProblem::make(num_vars());
    for (int x = 1; x <= n_a; ++x) p.upper[static_cast<std::size_t>(a_var(x))] = 1.0;
    for (int y = 1; y <= n_b; ++y) p.upper[static_cast<std::size_t>(b_var(y))] = 1.0;
    for (int y = 1; y <= n_b; ++y) {
      for (int x = 1; x <= n_a; ++x) {
        std::vector<double> r1(static_cast<std::size_t>(num_vars()), 0.0);
        r1[static_cast<std::size_t>(j_var(x, y))] = 1.0;
        r1[static_cast<std::size_t>(a_var(x))] = -1.0;
        p.add_row(std::move(r1), '<', 0.0);  // p(01|xy) >= 0
        std::vector<double> r2(static_cast<std::size_t>(num_vars()), 0.0);
        r2[static_cast<std::size_t>(j_var(x, y))] = 1.0;
        r2[static_cast<std::size_t>(b_var(y))] = -1.0;
        p.add_row(std::move(r2), '<', 0.0);  // p(10|xy) >= 0
        std::vector<double> r3(static_cast<std::size_t>(num_vars()), 0.0);
        r3[static_cast<std::size_t>(a_var(x))] = 1.0;
        r3[static_cast<std::size_t>(b_var(y))] = 1.0;
        r3[static_cast<std::size_t>(j_var(x, y))] = -1.0;
        p.add_row(std::move(r3), '<', 1.0);  // p(11|xy) >= 0
      }
    }
    return p;
  }

  std::vector<double> objective_from(const BellFunctional& f) const {
    if (f.n_a != n_a || f.n_b != n_b) throw StructuralError("objective scenario mismatch");
    std::vector<double> c(static_cast<std::size_t>(num_vars()), 0.0);
    for (int x = 1; x <= n_a; ++x)
      c[static_cast<std::size_t>(a_var(x))] = f.alice_coef[static_cast<std::size_t>(x - 1)];
    for (int y = 1; y <= n_b; ++y)
      c[static_cast<std::size_t>(b_var(y))] = f.bob_coef[static_cast<std::size_t>(y - 1)];
    for (int y = 1; y <= n_b; ++y)
      for (int x = 1; x <= n_a; ++x)
        c[static_cast<std::size_t>(j_var(x, y))] =
            f.joint_coef[static_cast<std::size_t>(y - 1)][static_cast<std::size_t>(x - 1)];
    return c;
  }

  CGTable table_from_point(const std::vector<double>& p) const {
    if (p.size() < static_cast<std::size_t>(num_vars()))
      throw StructuralError("point too short for scenario");
    CGTable t = CGTable::zeros(n_a, n_b);
    for (int x = 1; x <= n_a; ++x)
      t.alice[static_cast<std::size_t>(x - 1)] = p[static_cast<std::size_t>(a_var(x))];
    for (int y = 1; y <= n_b; ++y)
      t.bob[static_cast<std::size_t>(y - 1)] = p[static_cast<std::size_t>(b_var(y))];
    for (int y = 1; y <= n_b; ++y)
      for (int x = 1; x <= n_a; ++x)
        t.joint[static_cast<std::size_t>(y - 1)][static_cast<std::size_t>(x - 1)] =
            p[static_cast<std::size_t>(j_var(x, y))];
    return t;
  }
};

namespace detail {

inline LPSolution solve_expect_optimal(const LPProblem& p, const std::string& what,
                                       const ToleranceConfig& tol = {}) {
  const LPSolution s = solve(p, tol);
  if (s.status != LPStatus::Optimal) {
    throw LPError(what + ": expected an attained optimum, got " +
                  (s.status == LPStatus::Infeasible ? std::string("infeasible")
                                                    : std::string("unbounded")));
  }
  return s;
}

}  // namespace detail

struct NSMaxResult {
  double value = 0.0;
  CGTable witness;
};

// Maximum of f over the full no-signaling set.
inline NSMaxResult ns_max(const BellFunctional& f) {
  const NSConstraintSystem sys = NSConstraintSystem::for_scenario(f.n_a, f.n_b);
  LPProblem p = sys.base_problem();
  p.objective = sys.objective_from(f);
  const LPSolution s = detail::solve_expect_optimal(p, "ns_max");
  NSMaxResult r;
  r.value = s.value;
  r.witness = sys.table_from_point(s.point);
  validate(r.witness, 1e-7);
  return r;
}

// Smallest uniform deviation delta such that the table is within delta
// (entrywise on CG coordinates) of a convex combination of deterministic
// vertices of its own scenario.
inline double local_membership_deviation(const CGTable& t) {
  if (t.n_a + t.n_b > 16) {
    throw GuardError("local membership LP refused: more than 2^16 vertex weights");
  }
  const std::vector<CGTable> verts = det_vertices(t.n_a, t.n_b);
  const int n_coords = t.n_a + t.n_b + t.n_a * t.n_b;
  const int n_verts = static_cast<int>(verts.size());
  const int delta_var = n_verts;
  LPProblem p = LPProblem::make(n_verts + 1);
  p.objective[static_cast<std::size_t>(delta_var)] = -1.0;  // minimize delta

  auto coord_of = [&](const CGTable& tab, int c) -> double {
    if (c < tab.n_a) return tab.alice[static_cast<std::size_t>(c)];
    if (c < tab.n_a + tab.n_b) return tab.bob[static_cast<std::size_t>(c - tab.n_a)];
    const int k = c - tab.n_a - tab.n_b;
    return tab.joint[static_cast<std::size_t>(k / tab.n_a)][static_cast<std::size_t>(k % tab.n_a)];
  };
  for (int c = 0; c < n_coords; ++c) {
    const double target = coord_of(t, c);
    std::vector<double> up(static_cast<std::size_t>(n_verts + 1), 0.0);
    for (int v = 0; v < n_verts; ++v)
      up[static_cast<std::size_t>(v)] = coord_of(verts[static_cast<std::size_t>(v)], c);
    std::vector<double> down = up;
    for (double& x : down) x = -x;
    up[static_cast<std::size_t>(delta_var)] = -1.0;
    down[static_cast<std::size_t>(delta_var)] = -1.0;
    p.add_row(std::move(up), '<', target);
    p.add_row(std::move(down), '<', -target);
  }
  std::vector<double> sum_row(static_cast<std::size_t>(n_verts + 1), 0.0);
  for (int v = 0; v < n_verts; ++v) sum_row[static_cast<std::size_t>(v)] = 1.0;
  p.add_row(std::move(sum_row), '=', 1.0);
  const LPSolution s = detail::solve_expect_optimal(p, "local_membership");
  return -s.value;
}

// Does the restriction of t to the chosen settings admit a local model, up to
// uniform deviation tol on CG coordinates?
inline bool local_membership(const CGTable& t, const std::vector<int>& alice_keep,
                             const std::vector<int>& bob_keep, double tol = 1e-8) {
  return local_membership_deviation(restrict_table(t, alice_keep, bob_keep)) <= tol;
}

// Maximum of f over no-signaling tables whose restriction to Bob settings
// {s,t} (with all Alice settings) is local.  Locality is imposed by explicit
// convex weights over the restricted scenario's deterministic vertices.
inline double pairwise_local_max(const BellFunctional& f, PairLabel pair) {
  if (f.n_a > 8) {
    throw GuardError("pairwise-local LP refused: " + std::to_string(f.n_a) +
                     " Alice settings exceeds the n <= 8 guard");
  }
  check_pair(pair, f.n_b);
  const NSConstraintSystem sys = NSConstraintSystem::for_scenario(f.n_a, f.n_b);
  const std::vector<CGTable> verts = det_vertices(f.n_a, 2);
  const int n_verts = static_cast<int>(verts.size());
  const int n_cg = sys.num_vars();
  const int total = n_cg + n_verts;

  LPProblem base = sys.base_problem();
  LPProblem p = LPProblem::make(total);
  for (auto& row : base.rows) {
    row.coef.resize(static_cast<std::size_t>(total), 0.0);
    p.add_row(std::move(row.coef), row.rel, row.rhs);
  }
  for (int j = 0; j < n_cg; ++j) {
    p.lower[static_cast<std::size_t>(j)] = base.lower[static_cast<std::size_t>(j)];
    p.upper[static_cast<std::size_t>(j)] = base.upper[static_cast<std::size_t>(j)];
  }

  // Binding rows: each coordinate of the (all Alice) x {s,t} block equals the
  // corresponding mixture coordinate.
  auto bind = [&](int cg_index, auto&& vertex_coord) {
    std::vector<double> row(static_cast<std::size_t>(total), 0.0);
    row[static_cast<std::size_t>(cg_index)] = 1.0;
    for (int v = 0; v < n_verts; ++v)
      row[static_cast<std::size_t>(n_cg + v)] = -vertex_coord(verts[static_cast<std::size_t>(v)]);
    p.add_row(std::move(row), '=', 0.0);
  };
  for (int x = 1; x <= f.n_a; ++x)
    bind(sys.a_var(x),
         [x](const CGTable& v) { return v.alice[static_cast<std::size_t>(x - 1)]; });
  const int bobs[2] = {pair.s, pair.t};
  for (int k = 0; k < 2; ++k) {
    bind(sys.b_var(bobs[k]), [k](const CGTable& v) { return v.bob[static_cast<std::size_t>(k)]; });
    for (int x = 1; x <= f.n_a; ++x)
      bind(sys.j_var(x, bobs[k]), [k, x](const CGTable& v) {
        return v.joint[static_cast<std::size_t>(k)][static_cast<std::size_t>(x - 1)];
      });
  }
  std::vector<double> sum_row(static_cast<std::size_t>(total), 0.0);
  for (int v = 0; v < n_verts; ++v) sum_row[static_cast<std::size_t>(n_cg + v)] = 1.0;
  p.add_row(std::move(sum_row), '=', 1.0);

  const std::vector<double> obj = sys.objective_from(f);
  for (int j = 0; j < n_cg; ++j)
    p.objective[static_cast<std::size_t>(j)] = obj[static_cast<std::size_t>(j)];

  return detail::solve_expect_optimal(
             p, "pairwise_local_max(" + std::to_string(pair.s) + "," + std::to_string(pair.t) + ")")
      .value;
}

struct GNSMaxResult {
  double value = 0.0;
  PairLabel worst{1, 2};
};

// Maximum of pairwise_local_max over all Bob-setting pairs; reports the
// lexicographically smallest pair achieving it.
inline GNSMaxResult gns_max(const BellFunctional& f, int n) {
  if (n != f.n_b) throw DomainError("gns_max: pair range must match the functional's Bob settings");
  if (n < 2) throw DomainError("gns_max: need at least two Bob settings");
  std::vector<PairLabel> pairs;
  for (int s = 1; s <= n; ++s)
    for (int t = s + 1; t <= n; ++t) pairs.push_back({s, t});
  std::vector<double> vals(pairs.size());
  parallel_for(static_cast<long>(pairs.size()), [&](long i) {
    vals[static_cast<std::size_t>(i)] = pairwise_local_max(f, pairs[static_cast<std::size_t>(i)]);
  });
  GNSMaxResult r;
  r.value = vals[0];
  r.worst = pairs[0];
  for (std::size_t i = 1; i < pairs.size(); ++i) {
    if (vals[i] > r.value) {
      r.value = vals[i];
      r.worst = pairs[i];
    }
  }
  return r;
}

// Maximum of evaluate(f,.) - evaluate(g,.) over the no-signaling set.  A value
// <= tol certifies that every no-signaling violation of f's bound is also a
// violation of g's.
inline double domination_check(const BellFunctional& f, const BellFunctional& g) {
  if (f.n_a != g.n_a || f.n_b != g.n_b)
    throw StructuralError("domination_check: scenario mismatch");
  const NSConstraintSystem sys = NSConstraintSystem::for_scenario(f.n_a, f.n_b);
  LPProblem p = sys.base_problem();
  const std::vector<double> cf = sys.objective_from(f);
  const std::vector<double> cg = sys.objective_from(g);
  for (std::size_t j = 0; j < cf.size(); ++j) p.objective[j] = cf[j] - cg[j];
  return detail::solve_expect_optimal(p, "domination_check").value;
}

// LP counterpart of local_max: maximum of f over the convex hull of the
// deterministic vertices, stated with explicit mixture weights.  Used to
// cross-check enumeration against the solver.
inline double lp_local_max(const BellFunctional& f) {
  if (f.n_a + f.n_b > 16) {
    throw GuardError("local hull LP refused: more than 2^16 vertex weights");
  }
  const std::vector<CGTable> verts = det_vertices(f.n_a, f.n_b);
  const int n_verts = static_cast<int>(verts.size());
  LPProblem p = LPProblem::make(n_verts);
  for (int v = 0; v < n_verts; ++v)
    p.objective[static_cast<std::size_t>(v)] = evaluate(f, verts[static_cast<std::size_t>(v)]);
  std::vector<double> sum_row(static_cast<std::size_t>(n_verts), 1.0);
  p.add_row(std::move(sum_row), '=', 1.0);
  return detail::solve_expect_optimal(p, "lp_local_max").value;
}

}  // namespace mn22

#endif  // MN22_POLYTOPE_HPP
