#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "mn22/mn22.hpp"

using namespace mn22;

namespace {

double norm_sq(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

}  // namespace

TEST_CASE("construction domain guards", "[quantum]") {
  CHECK_THROWS_AS(build(1, 0.9), DomainError);
  CHECK_THROWS_AS(build(3, -0.1), DomainError);
  CHECK_THROWS_AS(build(3, 1.5), DomainError);
  CHECK_THROWS_AS(bell_value_closed(1, 0.9), DomainError);
  CHECK_THROWS_AS(optimize_q0(1), DomainError);
  CHECK_THROWS_AS(build_with_eps(1, 0.9, 0.2), DomainError);
  CHECK_THROWS_AS(build_with_eps(3, 0.9, -0.2), DomainError);
  CHECK_THROWS_AS(build_with_eps(3, 0.9, 1.2), DomainError);
}

TEST_CASE("decoupled-epsilon constructor", "[quantum]") {
  SECTION("matches build when eps is tied to q0") {
    const int n = 4;
    const double q0 = 0.93;
    const QuantumConstruction tied = build(n, q0);
    const QuantumConstruction free = build_with_eps(n, q0, tied.eps);
    CHECK(free.eps == tied.eps);
    CHECK(free.alice_vecs == tied.alice_vecs);
    CHECK(free.bob_vecs == tied.bob_vecs);
    CHECK(free.schmidt == tied.schmidt);
  }
  SECTION("keeps structural invariants for an independent eps") {
    const QuantumConstruction c = build_with_eps(3, 0.9, 0.3);
    for (const auto& v : c.alice_vecs) CHECK(std::abs(norm_sq(v) - 1.0) <= 1e-12);
    for (const auto& v : c.bob_vecs) CHECK(std::abs(norm_sq(v) - 1.0) <= 1e-12);
    CHECK(std::abs(norm_sq(c.schmidt) - 1.0) <= 1e-12);
    CHECK(max_closed_form_discrepancy(c) <= 1e-12);
    CHECK(validate(behavior(c), 1e-12).ok());
  }
}

TEST_CASE("measurement vectors and state are normalized", "[quantum]") {
  for (int n : {2, 3, 5, 9, 16}) {
    for (double q0 : {0.35, 0.9, 0.97}) {
      const QuantumConstruction c = build(n, q0);
      for (const auto& v : c.alice_vecs) CHECK(std::abs(norm_sq(v) - 1.0) <= 1e-12);
      for (const auto& v : c.bob_vecs) CHECK(std::abs(norm_sq(v) - 1.0) <= 1e-12);
      CHECK(std::abs(norm_sq(c.schmidt) - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("amplitude sequences satisfy their defining relations", "[quantum]") {
  const int n = 6;
  const QuantumConstruction c = build(n, 0.93);
  CHECK(c.p_seq[0] * c.p_seq[0] == Catch::Approx(1.0 / n).margin(1e-15));
  CHECK(c.p_seq[1] * c.p_seq[1] == Catch::Approx((n - 1.0) / n).margin(1e-15));
  CHECK(c.q_seq[0] == Catch::Approx(0.93).margin(1e-15));
  CHECK(c.q_seq[0] * c.q_seq[0] + c.q_seq[1] * c.q_seq[1] == Catch::Approx(1.0).margin(1e-15));
  for (int k = 1; k + 1 <= n - 1; ++k) {
    const double lhs = c.p_seq[k + 1] * c.p_seq[k + 1];
    const double rhs = (1.0 - 1.0 / ((n - k) * (n - k))) * c.p_seq[k] * c.p_seq[k];
    CHECK(lhs == Catch::Approx(rhs).margin(1e-15));
  }
}

TEST_CASE("behavior marginals have their closed-form values", "[quantum]") {
  for (int n : {2, 3, 4, 6}) {
    const double q0 = 0.91;
    const QuantumConstruction c = build(n, q0);
    const CGTable t = behavior(c);
    const double eps_sq = c.eps * c.eps;
    CHECK(std::abs(t.alice[0] - eps_sq) <= 1e-14);
    for (int x = 2; x <= n; ++x) {
      // The complement projector leaves exactly 1 - 1/n, independent of q0.
      CHECK(std::abs(t.alice[x - 1] - (1.0 - 1.0 / n)) <= 1e-13);
    }
    const double beta = (1.0 - eps_sq) * (1.0 - q0 * q0) / (n - 1) + eps_sq * q0 * q0;
    for (int y = 1; y <= n; ++y) CHECK(std::abs(t.bob[y - 1] - beta) <= 1e-14);
    for (int y = 1; y <= n; ++y)
      CHECK(std::abs(t.joint[y - 1][0] - eps_sq * q0 * q0) <= 1e-14);
  }
}

TEST_CASE("vector-level closed forms hold to machine precision", "[quantum]") {
  for (int n : {2, 3, 4, 5, 6}) {
    for (double q0 : {0.5, 0.9, 0.96}) {
      CHECK(max_closed_form_discrepancy(build(n, q0)) <= 1e-12);
    }
  }
}

TEST_CASE("direct evaluation matches the closed-form Bell value", "[quantum]") {
  for (int n : {2, 3, 4}) {
    const BellFunctional f = m_nn22(n);
    const double lo = std::sqrt((n - 1.0) / n);
    for (int k = 1; k <= 10; ++k) {
      const double q0 = lo + (1.0 - lo) * k / 11.0;
      const double direct = evaluate(f, behavior(build(n, q0)));
      CHECK(std::abs(direct - bell_value_closed(n, q0)) <= 1e-9);
    }
  }
}

TEST_CASE("behavior is a valid no-signaling table", "[quantum]") {
  for (int n : {2, 3, 5, 8}) {
    for (double q0 : {0.2, 0.91, 0.99}) {
      CHECK(validate(behavior(build(n, q0)), 1e-12).ok());
    }
  }
}

TEST_CASE("closed-form value vanishes at the interval ends", "[quantum]") {
  for (int n : {2, 3, 5}) {
    CHECK(bell_value_closed(n, 1.0) == 0.0);
    const double lo = std::sqrt((n - 1.0) / n);
    CHECK(std::abs(bell_value_closed(n, lo)) <= 1e-15);
    CHECK(bell_value_closed(n, 0.5 * lo) < 0.0);
    CHECK(bell_value_closed(n, 0.5 * (lo + 1.0)) > 0.0);
  }
}

TEST_CASE("optimized violations", "[quantum]") {
  const Optimum o2 = optimize_q0(2);
  CHECK(std::abs(o2.value_star - 0.125) <= 1e-12);
  CHECK(std::abs(o2.q0_star - std::sqrt(3.0) / 2.0) <= 1e-6);

  const Optimum o3 = optimize_q0(3);
  CHECK(std::abs(o3.value_star - 0.023932256575) <= 1e-10);
  CHECK(std::abs(o3.q0_star - 0.906293111357) <= 1e-6);

  const Optimum o5 = optimize_q0(5);
  CHECK(std::abs(o5.value_star - 0.003457551029) <= 1e-10);

  // Violations decrease with n.
  double prev = o2.value_star;
  for (int n = 3; n <= 8; ++n) {
    const double v = optimize_q0(n).value_star;
    CHECK(v > 0.0);
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("epsilon matches its defining formula", "[quantum]") {
  for (int n : {2, 4, 7}) {
    for (double q0 : {0.3, 0.88}) {
      const QuantumConstruction c = build(n, q0);
      const double expected =
          (1.0 - q0 * q0) / (1.0 + ((n - 1.0) * (n - 1.0) - 1.0) * q0 * q0);
      CHECK(c.eps * c.eps == Catch::Approx(expected).margin(1e-15));
    }
  }
}

TEST_CASE("explicit vectors at n=3", "[quantum]") {
  const QuantumConstruction c = build(3, 0.9);
  const double p0 = 1.0 / std::sqrt(3.0);
  const double p1 = std::sqrt(2.0 / 3.0);
  const double p2 = p1 * std::sqrt(1.0 - 0.25);
  // A_1 = e_3; A_2 = (-p_2, p_1/2, p_0); A_3 = (+p_2, p_1/2, p_0).
  CHECK(c.alice_vecs[0] == std::vector<double>{0.0, 0.0, 1.0});
  CHECK(c.alice_vecs[1][0] == Catch::Approx(-p2).margin(1e-15));
  CHECK(c.alice_vecs[1][1] == Catch::Approx(p1 / 2.0).margin(1e-15));
  CHECK(c.alice_vecs[1][2] == Catch::Approx(p0).margin(1e-15));
  CHECK(c.alice_vecs[2][0] == Catch::Approx(p2).margin(1e-15));
  CHECK(c.alice_vecs[2][1] == c.alice_vecs[1][1]);
  CHECK(c.alice_vecs[2][2] == c.alice_vecs[1][2]);
  // B_1 = (0, -q_1, q_0).
  const double q1 = std::sqrt(1.0 - 0.81);
  CHECK(c.bob_vecs[0][0] == 0.0);
  CHECK(c.bob_vecs[0][1] == Catch::Approx(-q1).margin(1e-15));
  CHECK(c.bob_vecs[0][2] == Catch::Approx(0.9).margin(1e-15));
}
