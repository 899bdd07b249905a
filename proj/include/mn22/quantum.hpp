#ifndef MN22_QUANTUM_HPP
#define MN22_QUANTUM_HPP

// The explicit quantum construction violating m_nn22(n) for every n >= 2.
//
// State (Schmidt-diagonal, real):
//   |Psi> = sum_{k=1}^{n-1} sqrt((1-eps^2)/(n-1)) |kk> + eps |nn>,
//   eps^2 = (1-q0^2) / (1 + [(n-1)^2 - 1] q0^2),  q0 in [0,1].
//
// Measurement directions (unit vectors in R^n, coordinates 1..n):
//   A_1 = (0, ..., 0, 1)
//   A_x (2 <= x <= n-1): coordinate n-x is -p_x, coordinate n-k is p_k/(n-k)
//                        for k = 1..x-1, coordinate n is p_0, zeros below.
//   A_n = A_{n-1} with the first coordinate's sign flipped to +p_{n-1}.
//   B_y analogous with q_k, B_1 = (0, ..., 0, -q_1, q_0).
// with p_0^2 = 1/n, p_1^2 = (n-1)/n, q_1^2 = 1 - q_0^2 and the shared
// recursion s_{k+1}^2 = (1 - 1/(n-k)^2) s_k^2 for k >= 1.
//
// Outcome convention of the construction (this is what produces the violating
// behavior; see behavior() below):
//   * Alice, setting 1: outcome 0 clicks on the rank-one projector
//     |a_1><a_1|.
//   * Alice, setting x >= 2: outcome 0 clicks on the complementary projector
//     1 - |a_x><a_x| (rank n-1).
//   * Bob, setting y: outcome 0 clicks on |b_{r(y)}><b_{r(y)}| where
//     r(1) = 1 and r(y) = n+2-y for y >= 2; i.e. the vector list is paired
//     with Bob's settings in reverse order beyond the first.
// Under this convention the Bell value of m_nn22(n) equals the closed form
// eps^2 (n q0^2 - (n-1)) to machine precision for all n and q0; plain
// rank-one assignments in list order do not produce a violation.

#include <cmath>
#include <string>
#include <vector>

#include "mn22/cg.hpp"
#include "mn22/errors.hpp"
#include "mn22/inequalities.hpp"

namespace mn22 {

struct QuantumConstruction {
  int n = 0;
  double q0 = 0.0;
  double eps = 0.0;                             // eps >= 0, eps^2 as above
  std::vector<double> p_seq;                    // p_0..p_{n-1}
  std::vector<double> q_seq;                    // q_0..q_{n-1}
  std::vector<std::vector<double>> alice_vecs;  // alice_vecs[x-1][i-1], x,i = 1..n
  std::vector<std::vector<double>> bob_vecs;    // bob_vecs[y-1][i-1]
  std::vector<double> schmidt;                  // lambda_1..lambda_n
};

namespace detail {

// p_0..p_{n-1} (or q_0..q_{n-1}) from the two leading squares and the
// recursion s_{k+1}^2 = (1 - 1/(n-k)^2) s_k^2.
inline std::vector<double> amplitude_sequence(int n, double s0_sq, double s1_sq) {
  std::vector<double> s(static_cast<std::size_t>(n), 0.0);
  s[0] = std::sqrt(s0_sq);
  if (n >= 2) s[1] = std::sqrt(s1_sq);
  for (int k = 1; k + 1 <= n - 1; ++k) {
    const double factor = 1.0 - 1.0 / (static_cast<double>(n - k) * (n - k));
    s[static_cast<std::size_t>(k + 1)] = std::sqrt(factor) * s[static_cast<std::size_t>(k)];
  }
  return s;
}

// Shared layout of A_x (x >= 2) and B_y (y >= 2): leading entry -s_m at
// coordinate n-m, then s_k/(n-k) at coordinate n-k for k = 1..m-1, then s_0
// at coordinate n.  The last list entry (m = n-1 with flipped leading sign)
// is handled by the callers.
inline std::vector<double> staircase_vector(int n, int m, const std::vector<double>& s,
                                            bool flip_leading) {
  std::vector<double> v(static_cast<std::size_t>(n), 0.0);
  v[static_cast<std::size_t>(n - m - 1)] = flip_leading ? s[static_cast<std::size_t>(m)]
                                                        : -s[static_cast<std::size_t>(m)];
  for (int k = 1; k < m; ++k)
    v[static_cast<std::size_t>(n - k - 1)] = s[static_cast<std::size_t>(k)] / (n - k);
  v[static_cast<std::size_t>(n - 1)] = s[0];
  return v;
}

// Vector lists and Schmidt amplitudes for a given (q0, eps) pair.
inline QuantumConstruction assemble(int n, double q0, double eps) {
  QuantumConstruction c;
  c.n = n;
  c.q0 = q0;
  c.eps = eps;
  const double q0_sq = q0 * q0;
  const double eps_sq = eps * eps;
  c.p_seq = detail::amplitude_sequence(n, 1.0 / n, static_cast<double>(n - 1) / n);
  c.q_seq = detail::amplitude_sequence(n, q0_sq, 1.0 - q0_sq);

  c.schmidt.assign(static_cast<std::size_t>(n), std::sqrt((1.0 - eps_sq) / (n - 1)));
  c.schmidt[static_cast<std::size_t>(n - 1)] = c.eps;

  c.alice_vecs.assign(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n), 0.0));
  c.alice_vecs[0][static_cast<std::size_t>(n - 1)] = 1.0;
  for (int x = 2; x <= n - 1; ++x)
    c.alice_vecs[static_cast<std::size_t>(x - 1)] = detail::staircase_vector(n, x, c.p_seq, false);
  if (n >= 2)
    c.alice_vecs[static_cast<std::size_t>(n - 1)] = detail::staircase_vector(n, n - 1, c.p_seq, true);

  c.bob_vecs.assign(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n), 0.0));
  for (int y = 1; y <= n - 1; ++y)
    c.bob_vecs[static_cast<std::size_t>(y - 1)] = detail::staircase_vector(n, y, c.q_seq, false);
  c.bob_vecs[static_cast<std::size_t>(n - 1)] = detail::staircase_vector(n, n - 1, c.q_seq, true);
  return c;
}

}  // namespace detail

inline QuantumConstruction build(int n, double q0) {
  if (n < 2) throw DomainError("build: n must be >= 2");
  if (!(q0 >= 0.0 && q0 <= 1.0)) throw DomainError("build: q0 must lie in [0,1]");
  const double q0_sq = q0 * q0;
  const double eps_sq = (1.0 - q0_sq) / (1.0 + (static_cast<double>(n - 1) * (n - 1) - 1.0) * q0_sq);
  return detail::assemble(n, q0, std::sqrt(eps_sq));
}

// Exploration constructor decoupling eps from q0.  The violating family uses
// build(), which ties eps to q0; an independent eps keeps every structural
// invariant (unit vectors, normalized Schmidt amplitudes, valid behavior) but
// the Bell value no longer matches bell_value_closed.
inline QuantumConstruction build_with_eps(int n, double q0, double eps) {
  if (n < 2) throw DomainError("build_with_eps: n must be >= 2");
  if (!(q0 >= 0.0 && q0 <= 1.0)) throw DomainError("build_with_eps: q0 must lie in [0,1]");
  if (!(eps >= 0.0 && eps <= 1.0)) throw DomainError("build_with_eps: eps must lie in [0,1]");
  return detail::assemble(n, q0, eps);
}

namespace detail {

// <v | Lambda | w> with Lambda = diag(schmidt).
inline double schmidt_overlap(const std::vector<double>& schmidt,
                              const std::vector<double>& v, const std::vector<double>& w) {
  double s = 0.0;
  for (std::size_t k = 0; k < schmidt.size(); ++k) s += schmidt[k] * v[k] * w[k];
  return s;
}

// <v | Lambda^2 | v>: probability of the rank-one event |v><v| on the state.
inline double rank_one_marginal(const std::vector<double>& schmidt,
                                const std::vector<double>& v) {
  double s = 0.0;
  for (std::size_t k = 0; k < schmidt.size(); ++k) s += schmidt[k] * schmidt[k] * v[k] * v[k];
  return s;
}

}  // namespace detail

// The behavior of the construction in CG coordinates, with the outcome
// convention described at the top of this header:
//   alice[0]    = <a_1|Lam^2|a_1>
//   alice[x-1]  = 1 - <a_x|Lam^2|a_x>                          (x >= 2)
//   bob[y-1]    = <b_{r(y)}|Lam^2|b_{r(y)}>
//   joint[y][0]   = <a_1|Lam|b_{r(y)}>^2
//   joint[y][x-1] = bob[y] - <a_x|Lam|b_{r(y)}>^2              (x >= 2)
// where r(1) = 1, r(y) = n+2-y, and Lam = diag(schmidt amplitudes).
inline CGTable behavior(const QuantumConstruction& c) {
  const int n = c.n;
  CGTable t = CGTable::zeros(n, n);
  std::vector<int> r(static_cast<std::size_t>(n), 0);  // 0-based printed index per setting
  r[0] = 0;
  for (int y = 2; y <= n; ++y) r[static_cast<std::size_t>(y - 1)] = n + 2 - y - 1;

  t.alice[0] = detail::rank_one_marginal(c.schmidt, c.alice_vecs[0]);
  for (int x = 2; x <= n; ++x)
    t.alice[static_cast<std::size_t>(x - 1)] =
        1.0 - detail::rank_one_marginal(c.schmidt, c.alice_vecs[static_cast<std::size_t>(x - 1)]);
  for (int y = 1; y <= n; ++y)
    t.bob[static_cast<std::size_t>(y - 1)] = detail::rank_one_marginal(
        c.schmidt, c.bob_vecs[static_cast<std::size_t>(r[static_cast<std::size_t>(y - 1)])]);

  for (int y = 1; y <= n; ++y) {
    const auto& b = c.bob_vecs[static_cast<std::size_t>(r[static_cast<std::size_t>(y - 1)])];
    for (int x = 1; x <= n; ++x) {
      const double ov = detail::schmidt_overlap(c.schmidt, c.alice_vecs[static_cast<std::size_t>(x - 1)], b);
      t.joint[static_cast<std::size_t>(y - 1)][static_cast<std::size_t>(x - 1)] =
          (x == 1) ? ov * ov : t.bob[static_cast<std::size_t>(y - 1)] - ov * ov;
    }
  }
  return t;
}

struct ClosedFormEntry {
  std::string entry;
  double direct = 0.0;
  double closed = 0.0;
  double abs_diff = 0.0;
};

// Compares the rank-one probabilities of the vector lists against their
// closed forms.  Covered entries (list indices, not table settings):
//   <a_1|Lam^2|a_1>          = eps^2
//   <b_y|Lam^2|b_y>          = (1-eps^2)(1-q0^2)/(n-1) + eps^2 q0^2
//   <a_1|Lam|b_y>^2          = eps^2 q0^2                       (all y)
//   <a_x|Lam|b_x>^2          = (sqrt((1-eps^2)/(n-1)) p1 q1 + eps p0 q0)^2   (x >= 2)
//   <a_x|Lam|b_y>^2          = (sqrt((1-eps^2)/(n-1)) p1 q1/(1-n) + eps p0 q0)^2  (x > y >= 1)
inline std::vector<ClosedFormEntry> closed_form_check(const QuantumConstruction& c) {
  const int n = c.n;
  const double eps_sq = c.eps * c.eps;
  const double q0_sq = c.q0 * c.q0;
  const double lam = std::sqrt((1.0 - eps_sq) / (n - 1));
  const double diag = lam * c.p_seq[1] * c.q_seq[1] + c.eps * c.p_seq[0] * c.q_seq[0];
  const double off = lam * c.p_seq[1] * c.q_seq[1] / (1.0 - n) + c.eps * c.p_seq[0] * c.q_seq[0];

  std::vector<ClosedFormEntry> out;
  auto push = [&](std::string entry, double direct, double closed) {
    out.push_back({std::move(entry), direct, closed, std::abs(direct - closed)});
  };
  push("Q(A_1)", detail::rank_one_marginal(c.schmidt, c.alice_vecs[0]), eps_sq);
  for (int y = 1; y <= n; ++y) {
    push("Q(B_" + std::to_string(y) + ")",
         detail::rank_one_marginal(c.schmidt, c.bob_vecs[static_cast<std::size_t>(y - 1)]),
         (1.0 - eps_sq) * (1.0 - q0_sq) / (n - 1) + eps_sq * q0_sq);
    const double ov = detail::schmidt_overlap(c.schmidt, c.alice_vecs[0],
                                              c.bob_vecs[static_cast<std::size_t>(y - 1)]);
    push("Q(A_1 B_" + std::to_string(y) + ")", ov * ov, eps_sq * q0_sq);
  }
  for (int x = 2; x <= n; ++x) {
    const double ov = detail::schmidt_overlap(c.schmidt, c.alice_vecs[static_cast<std::size_t>(x - 1)],
                                              c.bob_vecs[static_cast<std::size_t>(x - 1)]);
    push("Q(A_" + std::to_string(x) + " B_" + std::to_string(x) + ")", ov * ov, diag * diag);
  }
  for (int x = 2; x <= n; ++x) {
    for (int y = 1; y < x; ++y) {
      const double ov = detail::schmidt_overlap(c.schmidt, c.alice_vecs[static_cast<std::size_t>(x - 1)],
                                                c.bob_vecs[static_cast<std::size_t>(y - 1)]);
      push("Q(A_" + std::to_string(x) + " B_" + std::to_string(y) + ")", ov * ov, off * off);
    }
  }
  return out;
}

inline double max_closed_form_discrepancy(const QuantumConstruction& c) {
  double worst = 0.0;
  for (const auto& e : closed_form_check(c)) worst = std::max(worst, e.abs_diff);
  return worst;
}

// Closed-form Bell value eps^2 (n q0^2 - (n-1)); positive exactly on
// sqrt((n-1)/n) < q0 < 1.
inline double bell_value_closed(int n, double q0) {
  if (n < 2) throw DomainError("bell_value_closed: n must be >= 2");
  if (!(q0 >= 0.0 && q0 <= 1.0)) throw DomainError("bell_value_closed: q0 must lie in [0,1]");
  const double q0_sq = q0 * q0;
  const double eps_sq = (1.0 - q0_sq) / (1.0 + (static_cast<double>(n - 1) * (n - 1) - 1.0) * q0_sq);
  return eps_sq * (q0_sq * n - (n - 1));
}

struct Optimum {
  double q0_star = 0.0;
  double value_star = 0.0;
};

// Maximizes bell_value_closed over q0: coarse grid on (sqrt((n-1)/n), 1)
// followed by golden-section refinement to abs_tol in q0.
inline Optimum optimize_q0(int n, double abs_tol = 1e-10) {
  if (n < 2) throw DomainError("optimize_q0: n must be >= 2");
  const double lo = std::sqrt(static_cast<double>(n - 1) / n);
  const double hi = 1.0;
  const int grid = 10000;
  int best_i = 1;
  double best_v = -1.0;
  for (int i = 1; i < grid; ++i) {
    const double q0 = lo + (hi - lo) * i / grid;
    const double v = bell_value_closed(n, q0);
    if (v > best_v) {
      best_v = v;
      best_i = i;
    }
  }
  double a = lo + (hi - lo) * (best_i - 1) / grid;
  double b = lo + (hi - lo) * (best_i + 1) / grid;
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c1 = b - invphi * (b - a);
  double c2 = a + invphi * (b - a);
  double f1 = bell_value_closed(n, c1);
  double f2 = bell_value_closed(n, c2);
  while (b - a > abs_tol) {
    if (f1 < f2) {
      a = c1;
      c1 = c2;
      f1 = f2;
      c2 = a + invphi * (b - a);
      f2 = bell_value_closed(n, c2);
    } else {
      b = c2;
      c2 = c1;
      f2 = f1;
      c1 = b - invphi * (b - a);
      f1 = bell_value_closed(n, c1);
    }
  }
  Optimum opt;
  opt.q0_star = 0.5 * (a + b);
  opt.value_star = bell_value_closed(n, opt.q0_star);
  return opt;
}

}  // namespace mn22

#endif  // MN22_QUANTUM_HPP
