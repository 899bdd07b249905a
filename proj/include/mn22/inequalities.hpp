#ifndef MN22_INEQUALITIES_HPP
#define MN22_INEQUALITIES_HPP

// Generators for the inequality families used throughout:
//
//   chsh()              CHSH in CG form (2 settings).
//   m_nn22(n)           the n-setting family: Alice coefficient -(n-1) on
//                       setting 1, Bob coefficients -(n-y), and the triangular
//                       joint pattern +1 (x+y <= n+1), -1 (x+y = n+2), 0 else.
//   i_nn22(n)           same but Alice coefficient -1 (m_nn22 = i_nn22 minus
//                       (n-2) times Alice's first marginal).
//   reduced_chsh(n,st)  the CHSH lifting supported on Alice {1, n+2-t} and
//                       Bob {s, t}; violation of m_nn22 forces violation of
//                       every one of these.
//   sub_embedding(n)    m_(n-1)(n-1)22 plus the restriction map (drop Alice
//                       setting n, drop Bob setting 1) under which it
//                       dominates m_nn22 over no-signaling behaviors.
//
// All coefficients are small integers stored exactly in doubles; bounds are 0.

#include <string>
#include <vector>

#include "mn22/cg.hpp"
#include "mn22/errors.hpp"

namespace mn22 {

// Bob setting pair (s, t), 1 <= s < t <= n.
struct PairLabel {
  int s = 0;
  int t = 0;
};

inline void check_pair(const PairLabel& p, int n) {
  if (p.s < 1 || p.t <= p.s || p.t > n) {
    throw DomainError("pair (" + std::to_string(p.s) + "," + std::to_string(p.t) +
                      ") invalid: need 1 <= s < t <= " + std::to_string(n));
  }
}

inline BellFunctional m_nn22(int n) {
  if (n < 2) throw DomainError("m_nn22: n must be >= 2");
  BellFunctional f = BellFunctional::zeros(n, n);
  f.alice_coef[0] = -(n - 1);
  for (int y = 1; y <= n; ++y) f.bob_coef[static_cast<std::size_t>(y - 1)] = -(n - y);
  for (int y = 1; y <= n; ++y) {
    for (int x = 1; x <= n; ++x) {
      double c = 0.0;
      if (x + y <= n + 1) c = 1.0;
      else if (x + y == n + 2) c = -1.0;
      f.joint_coef[static_cast<std::size_t>(y - 1)][static_cast<std::size_t>(x - 1)] = c;
    }
  }
  f.bound = 0.0;
  return f;
}

inline BellFunctional i_nn22(int n) {
  if (n < 2) throw DomainError("i_nn22: n must be >= 2");
  BellFunctional f = m_nn22(n);
  f.alice_coef[0] = -1.0;
  return f;
}

inline BellFunctional chsh() { return m_nn22(2); }

// CHSH lifted to the n-setting scenario for Bob pair (s, t):
//   +P(A_1 B_s) +P(A_{n+2-t} B_s) +P(A_1 B_t) -P(A_{n+2-t} B_t)
//   -P(A_1) -P(B_s)  <= 0.
inline BellFunctional reduced_chsh(int n, const PairLabel& pair) {
  if (n < 2) throw DomainError("reduced_chsh: n must be >= 2");
  check_pair(pair, n);
  const int a2 = n + 2 - pair.t;  // Alice's partner setting
  BellFunctional f = BellFunctional::zeros(n, n);
  f.alice_coef[0] = -1.0;
  f.bob_coef[static_cast<std::size_t>(pair.s - 1)] = -1.0;
  f.joint_coef[static_cast<std::size_t>(pair.s - 1)][0] = 1.0;
  f.joint_coef[static_cast<std::size_t>(pair.s - 1)][static_cast<std::size_t>(a2 - 1)] = 1.0;
  f.joint_coef[static_cast<std::size_t>(pair.t - 1)][0] = 1.0;
  f.joint_coef[static_cast<std::size_t>(pair.t - 1)][static_cast<std::size_t>(a2 - 1)] = -1.0;
  f.bound = 0.0;
  return f;
}

struct SubEmbedding {
  BellFunctional functional;    // m_(n-1)(n-1)22
  std::vector<int> alice_keep;  // {1, ..., n-1}
  std::vector<int> bob_keep;    // {2, ..., n}
};

// The (n-1)-setting inequality together with the setting restriction under
// which it dominates m_nn22(n): a violation of m_nn22 on a no-signaling
// behavior forces a violation of m_(n-1)(n-1)22 on the restricted behavior.
inline SubEmbedding sub_embedding(int n) {
  if (n < 3) throw DomainError("sub_embedding: n must be >= 3");
  SubEmbedding e;
  e.functional = m_nn22(n - 1);
  for (int x = 1; x <= n - 1; ++x) e.alice_keep.push_back(x);
  for (int y = 2; y <= n; ++y) e.bob_keep.push_back(y);
  return e;
}

// Zero-pads a sub-scenario functional back into an (n_a, n_b) scenario, with
// kept-setting lists giving the position of each sub-setting (1-based).
inline BellFunctional lift(const BellFunctional& f, int n_a, int n_b,
                           const std::vector<int>& alice_keep,
                           const std::vector<int>& bob_keep) {
  detail::check_functional_shape(f);
  detail::check_keep(alice_keep, n_a, "alice");
  detail::check_keep(bob_keep, n_b, "bob");
  if (alice_keep.size() != static_cast<std::size_t>(f.n_a) ||
      bob_keep.size() != static_cast<std::size_t>(f.n_b)) {
    throw StructuralError("lift: keep-set sizes must match functional shape");
  }
  BellFunctional g = BellFunctional::zeros(n_a, n_b);
  g.bound = f.bound;
  for (std::size_t i = 0; i < alice_keep.size(); ++i)
    g.alice_coef[static_cast<std::size_t>(alice_keep[i] - 1)] = f.alice_coef[i];
  for (std::size_t j = 0; j < bob_keep.size(); ++j)
    g.bob_coef[static_cast<std::size_t>(bob_keep[j] - 1)] = f.bob_coef[j];
  for (std::size_t j = 0; j < bob_keep.size(); ++j)
    for (std::size_t i = 0; i < alice_keep.size(); ++i)
      g.joint_coef[static_cast<std::size_t>(bob_keep[j] - 1)]
                  [static_cast<std::size_t>(alice_keep[i] - 1)] = f.joint_coef[j][i];
  return g;
}

}  // namespace mn22

#endif  // MN22_INEQUALITIES_HPP
