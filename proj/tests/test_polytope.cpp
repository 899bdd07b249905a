#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "mn22/mn22.hpp"
#include "test_helpers.hpp"

using namespace mn22;
using mn22test::random_functional;

TEST_CASE("vertex counts", "[polytope]") {
  CHECK(det_vertices(1, 1).size() == 4);
  CHECK(det_vertices(3, 3).size() == 64);
}

TEST_CASE("every vertex is a valid table", "[polytope]") {
  for (const CGTable& t : det_vertices(3, 3)) {
    CHECK(validate(t, 0.0).ok());
  }
}

TEST_CASE("vertex tables are products of indicator marginals", "[polytope]") {
  for_each_det_vertex(2, 2, [](const DeterministicStrategy& s, const CGTable& t) {
    for (int x = 0; x < 2; ++x) CHECK(t.alice[x] == (s.alice[x] == 0 ? 1.0 : 0.0));
    for (int y = 0; y < 2; ++y) CHECK(t.bob[y] == (s.bob[y] == 0 ? 1.0 : 0.0));
    for (int y = 0; y < 2; ++y)
      for (int x = 0; x < 2; ++x) CHECK(t.joint[y][x] == t.alice[x] * t.bob[y]);
  });
}

TEST_CASE("enumeration guard", "[polytope]") {
  CHECK_THROWS_AS(det_vertices(13, 12), GuardError);
  CHECK_THROWS_AS(local_max(BellFunctional::zeros(13, 12)), GuardError);
}

TEST_CASE("local maximum of chsh is zero", "[polytope]") {
  const LocalMaxResult r = local_max(chsh());
  CHECK(r.value == 0.0);
}

TEST_CASE("local maximum of the family is zero", "[polytope]") {
  for (int n = 2; n <= 6; ++n) {
    const LocalMaxResult r = local_max(m_nn22(n));
    CHECK(r.value == 0.0);
    // The witness value must be reproducible from the witness strategy.
    CHECK(evaluate(m_nn22(n), vertex_table(r.witness)) == r.value);
  }
}

TEST_CASE("local maximum of every reduced functional is zero", "[polytope]") {
  for (int n = 2; n <= 5; ++n) {
    for (int s = 1; s <= n; ++s) {
      for (int t = s + 1; t <= n; ++t) {
        CHECK(local_max(reduced_chsh(n, {s, t})).value == 0.0);
      }
    }
  }
}

TEST_CASE("tie-breaking picks the lowest strategy encoding", "[polytope]") {
  // The zero functional makes every strategy optimal; the reported witness
  // must be the all-outcome-0 assignment (encoding 0).
  const LocalMaxResult r = local_max(BellFunctional::zeros(3, 2));
  CHECK(r.witness.alice == std::vector<int>{0, 0, 0});
  CHECK(r.witness.bob == std::vector<int>{0, 0});
}

TEST_CASE("local_max agrees with brute-force evaluation over vertices", "[polytope]") {
  std::mt19937 rng(37);
  for (int rep = 0; rep < 20; ++rep) {
    const int n_a = 1 + static_cast<int>(rng() % 3);
    const int n_b = 1 + static_cast<int>(rng() % 3);
    const BellFunctional f = random_functional(rng, n_a, n_b);
    double best = -1e300;
    for (const CGTable& t : det_vertices(n_a, n_b)) best = std::max(best, evaluate(f, t));
    CHECK(local_max(f).value == Catch::Approx(best).margin(1e-12));
  }
}

TEST_CASE("constraint system counts", "[polytope]") {
  const NSConstraintSystem sys = NSConstraintSystem::for_scenario(3, 4);
  CHECK(sys.num_vars() == 3 + 4 + 12);
  CHECK(sys.num_logical_constraints() == 4 * 12 + 2 * 7);
}

TEST_CASE("no-signaling maximum of chsh is one half", "[polytope]") {
  const NSMaxResult r = ns_max(chsh());
  CHECK(r.value == Catch::Approx(0.5).margin(1e-9));
  CHECK(validate(r.witness, 1e-8).ok());
  CHECK(evaluate(chsh(), r.witness) == Catch::Approx(0.5).margin(1e-9));
}

TEST_CASE("no-signaling maximum of the zero functional is zero", "[polytope]") {
  CHECK(ns_max(BellFunctional::zeros(2, 3)).value == 0.0);
}

TEST_CASE("no-signaling maximum dominates the quantum violation", "[polytope]") {
  for (int n = 2; n <= 6; ++n) {
    const Optimum opt = optimize_q0(n);
    CHECK(ns_max(m_nn22(n)).value >= opt.value_star - 1e-9);
  }
}

TEST_CASE("deterministic tables are local members", "[polytope]") {
  const CGTable t = det_vertices(2, 2)[5];
  CHECK(local_membership(t, {1, 2}, {1, 2}));
}

TEST_CASE("the uniform table is a local member", "[polytope]") {
  CGTable t = CGTable::zeros(2, 2);
  for (auto& a : t.alice) a = 0.5;
  for (auto& b : t.bob) b = 0.5;
  for (auto& row : t.joint)
    for (auto& j : row) j = 0.25;
  CHECK(local_membership(t, {1, 2}, {1, 2}));
}

TEST_CASE("optimal quantum behavior restricted to a Bob pair is nonlocal", "[polytope]") {
  const Optimum opt = optimize_q0(3);
  const CGTable t = behavior(build(3, opt.q0_star));
  CHECK_FALSE(local_membership(t, {1, 2, 3}, {1, 2}, 1e-8));
  // The deviation is a real margin, not solver noise.
  CHECK(local_membership_deviation(restrict_table(t, {1, 2, 3}, {1, 2})) > 1e-4);
}

TEST_CASE("pairwise-local maxima of the displayed cases vanish", "[polytope]") {
  CHECK(std::abs(pairwise_local_max(chsh(), {1, 2})) <= 1e-7);
  CHECK(std::abs(pairwise_local_max(m_nn22(3), {1, 2})) <= 1e-7);
  CHECK(std::abs(pairwise_local_max(m_nn22(4), {2, 3})) <= 1e-7);
}

TEST_CASE("pairwise-local guard and pair validation", "[polytope]") {
  CHECK_THROWS_AS(pairwise_local_max(BellFunctional::zeros(9, 9), {1, 2}), GuardError);
  CHECK_THROWS_AS(pairwise_local_max(m_nn22(3), {3, 3}), DomainError);
}

TEST_CASE("gns maxima vanish for n=3 and n=4", "[polytope]") {
  for (int n : {3, 4}) {
    const GNSMaxResult r = gns_max(m_nn22(n), n);
    CHECK(std::abs(r.value) <= 1e-7);
  }
}

TEST_CASE("gns of the zero functional reports the first pair", "[polytope]") {
  const GNSMaxResult r = gns_max(BellFunctional::zeros(3, 3), 3);
  CHECK(r.value == 0.0);
  CHECK(r.worst.s == 1);
  CHECK(r.worst.t == 2);
}

TEST_CASE("gns maximum dominates the local maximum", "[polytope]") {
  std::mt19937 rng(41);
  for (int rep = 0; rep < 5; ++rep) {
    const BellFunctional f = random_functional(rng, 3, 3);
    CHECK(gns_max(f, 3).value >= local_max(f).value - 1e-8);
  }
  CHECK(gns_max(m_nn22(3), 3).value >= local_max(m_nn22(3)).value - 1e-8);
}

TEST_CASE("gns argument validation", "[polytope]") {
  CHECK_THROWS_AS(gns_max(m_nn22(3), 4), DomainError);
}

TEST_CASE("self-domination is exactly zero", "[polytope]") {
  CHECK(domination_check(m_nn22(3), m_nn22(3)) == 0.0);
}

TEST_CASE("reduced functionals dominate the family", "[polytope]") {
  for (int n = 2; n <= 4; ++n) {
    for (int s = 1; s <= n; ++s) {
      for (int t = s + 1; t <= n; ++t) {
        CHECK(domination_check(m_nn22(n), reduced_chsh(n, {s, t})) <= 1e-7);
      }
    }
  }
}

TEST_CASE("the lifted sub-scenario functional dominates the family", "[polytope]") {
  for (int n = 3; n <= 4; ++n) {
    const SubEmbedding e = sub_embedding(n);
    const BellFunctional lifted = lift(e.functional, n, n, e.alice_keep, e.bob_keep);
    CHECK(domination_check(m_nn22(n), lifted) <= 1e-7);
  }
}

TEST_CASE("domination requires matching scenarios", "[polytope]") {
  CHECK_THROWS_AS(domination_check(m_nn22(3), m_nn22(4)), StructuralError);
}

TEST_CASE("enumeration and hull LP agree on fixed functionals", "[polytope]") {
  for (const BellFunctional& f :
       {chsh(), m_nn22(3), reduced_chsh(3, {1, 3}), i_nn22(3)}) {
    CHECK(std::abs(lp_local_max(f) - local_max(f).value) <= 1e-8);
  }
}

TEST_CASE("pairwise-local sweep at n=5", "[.extended][extended]") {
  const GNSMaxResult r = gns_max(m_nn22(5), 5);
  CHECK(std::abs(r.value) <= 1e-7);
}
