#ifndef MN22_VERIFY_HPP
#define MN22_VERIFY_HPP

// Verification pipelines.  Each claim produces one VerificationReport; a
// claim group for a given n is a deterministic list of reports sorted by
// claim id.  Groups:
//
//   local       enumeration maxima: m_nn22(n) and every reduced functional
//               have local maximum exactly 0.
//   gns         every pairwise-local LP maximum of m_nn22(n) is <= 0 (up to
//               tolerance), and so is their maximum over pairs.
//   domination  m_nn22(n) - reduced_chsh(n,(s,t)) <= 0 over no-signaling
//               behaviors, for every pair.
//   embedding   m_nn22(n) - lifted m_(n-1)(n-1)22 <= 0 over no-signaling
//               behaviors.
//   quantum     construction invariants (norms, validity), closed-form vs
//               direct agreement, and strict positivity of the optimized
//               violation.
//
// Pass semantics: "eq" claims need |computed - expected| <= tolerance,
// "upper-bound" claims need computed <= expected + tolerance, "lower-bound"
// claims need computed > expected + tolerance.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mn22/cg.hpp"
#include "mn22/errors.hpp"
#include "mn22/inequalities.hpp"
#include "mn22/io.hpp"
#include "mn22/polytope.hpp"
#include "mn22/quantum.hpp"

namespace mn22 {

struct VerificationReport {
  std::string claim;
  nlohmann::json parameters;
  double computed = 0.0;
  double expected = 0.0;
  std::string kind;  // "eq" | "upper-bound" | "lower-bound"
  double tolerance = 0.0;
  bool pass = false;
  long runtime_ms = 0;
};

inline nlohmann::json to_json(const VerificationReport& r) {
  nlohmann::json j;
  j["claim"] = r.claim;
  j["parameters"] = r.parameters;
  j["computed"] = r.computed;
  j["expected"] = r.expected;
  j["kind"] = r.kind;
  j["tolerance"] = r.tolerance;
  j["pass"] = r.pass;
  j["runtime_ms"] = r.runtime_ms;
  return j;
}

namespace detail {

inline bool claim_passes(const std::string& kind, double computed, double expected, double tol) {
  if (kind == "eq") return std::abs(computed - expected) <= tol;
  if (kind == "upper-bound") return computed <= expected + tol;
  if (kind == "lower-bound") return computed > expected + tol;
  throw StructuralError("unknown claim kind '" + kind + "'");
}

// Builds one report, timing the computation of `computed`.
template <typename Fn>
VerificationReport make_report(const std::string& claim, nlohmann::json parameters,
                               const std::string& kind, double expected, double default_tol,
                               const std::optional<double>& tol_override, Fn&& compute) {
  const auto start = std::chrono::steady_clock::now();
  const double computed = compute(parameters);
  const auto stop = std::chrono::steady_clock::now();
  VerificationReport r;
  r.claim = claim;
  r.parameters = std::move(parameters);
  r.computed = computed;
  r.expected = expected;
  r.kind = kind;
  r.tolerance = tol_override.value_or(default_tol);
  r.pass = claim_passes(kind, computed, expected, r.tolerance);
  r.runtime_ms = static_cast<long>(
      std::chrono::duration_cast<std::chrono::milliseconds>(stop - start).count());
  return r;
}

}  // namespace detail

inline std::vector<VerificationReport> claims_local(int n, std::optional<double> tol = {}) {
  std::vector<VerificationReport> out;
  out.push_back(detail::make_report(
      "local.mnn22", {{"n", n}}, "eq", 0.0, 0.0, tol,
      [&](nlohmann::json&) { return local_max(m_nn22(n)).value; }));
  for (int s = 1; s <= n; ++s) {
    for (int t = s + 1; t <= n; ++t) {
      out.push_back(detail::make_report(
          "local.reduced." + std::to_string(s) + "." + std::to_string(t),
          {{"n", n}, {"pair", {s, t}}}, "eq", 0.0, 0.0, tol,
          [&](nlohmann::json&) { return local_max(reduced_chsh(n, {s, t})).value; }));
    }
  }
  return out;
}

inline std::vector<VerificationReport> claims_gns(int n, std::optional<double> tol = {}) {
  std::vector<VerificationReport> out;
  const BellFunctional f = m_nn22(n);
  out.push_back(detail::make_report(
      "gns.max", {{"n", n}}, "upper-bound", 0.0, 1e-7, tol, [&](nlohmann::json& params) {
        const GNSMaxResult r = gns_max(f, n);
        params["worst_pair"] = {r.worst.s, r.worst.t};
        return r.value;
      }));
  for (int s = 1; s <= n; ++s) {
    for (int t = s + 1; t <= n; ++t) {
      out.push_back(detail::make_report(
          "gns.pair." + std::to_string(s) + "." + std::to_string(t),
          {{"n", n}, {"pair", {s, t}}}, "upper-bound", 0.0, 1e-7, tol,
          [&](nlohmann::json&) { return pairwise_local_max(f, {s, t}); }));
    }
  }
  return out;
}

inline std::vector<VerificationReport> claims_domination(int n, std::optional<double> tol = {}) {
  std::vector<VerificationReport> out;
  const BellFunctional f = m_nn22(n);
  for (int s = 1; s <= n; ++s) {
    for (int t = s + 1; t <= n; ++t) {
      out.push_back(detail::make_report(
          "domination.reduced." + std::to_string(s) + "." + std::to_string(t),
          {{"n", n}, {"pair", {s, t}}}, "upper-bound", 0.0, 1e-7, tol,
          [&](nlohmann::json&) { return domination_check(f, reduced_chsh(n, {s, t})); }));
    }
  }
  return out;
}

inline std::vector<VerificationReport> claims_embedding(int n, std::optional<double> tol = {}) {
  if (n < 3) throw DomainError("embedding claims need n >= 3");
  std::vector<VerificationReport> out;
  out.push_back(detail::make_report(
      "domination.embedding", {{"n", n}}, "upper-bound", 0.0, 1e-7, tol,
      [&](nlohmann::json&) {
        const SubEmbedding e = sub_embedding(n);
        const BellFunctional lifted = lift(e.functional, n, n, e.alice_keep, e.bob_keep);
        return domination_check(m_nn22(n), lifted);
      }));
  return out;
}

inline std::vector<VerificationReport> claims_quantum(int n, std::optional<double> tol = {}) {
  std::vector<VerificationReport> out;
  const Optimum opt = optimize_q0(n);

  out.push_back(detail::make_report(
      "quantum.agreement", {{"n", n}, {"samples", 25}}, "upper-bound", 0.0, 1e-9, tol,
      [&](nlohmann::json&) {
        const BellFunctional f = m_nn22(n);
        const double lo = std::sqrt(static_cast<double>(n - 1) / n);
        double worst = 0.0;
        for (int k = 1; k <= 25; ++k) {
          const double q0 = lo + (1.0 - lo) * k / 26.0;
          const QuantumConstruction c = build(n, q0);
          worst = std::max(worst,
                           std::abs(evaluate(f, behavior(c)) - bell_value_closed(n, q0)));
        }
        return worst;
      }));
  out.push_back(detail::make_report(
      "quantum.closedform", {{"n", n}, {"q0", opt.q0_star}}, "upper-bound", 0.0, 1e-9, tol,
      [&](nlohmann::json&) { return max_closed_form_discrepancy(build(n, opt.q0_star)); }));
  out.push_back(detail::make_report(
      "quantum.norms", {{"n", n}, {"q0", opt.q0_star}}, "upper-bound", 0.0, 1e-12, tol,
      [&](nlohmann::json&) {
        const QuantumConstruction c = build(n, opt.q0_star);
        double worst = 0.0;
        auto norm_dev = [](const std::vector<double>& v) {
          double s = 0.0;
          for (double x : v) s += x * x;
          return std::abs(s - 1.0);
        };
        for (const auto& v : c.alice_vecs) worst = std::max(worst, norm_dev(v));
        for (const auto& v : c.bob_vecs) worst = std::max(worst, norm_dev(v));
        worst = std::max(worst, norm_dev(c.schmidt));
        return worst;
      }));
  out.push_back(detail::make_report(
      "quantum.validity", {{"n", n}, {"q0", opt.q0_star}}, "upper-bound", 0.0, 1e-12, tol,
      [&](nlohmann::json&) {
        const ValidityReport rep = validate(behavior(build(n, opt.q0_star)), 0.0);
        double worst = 0.0;
        for (const auto& v : rep.violations) worst = std::max(worst, v.amount);
        return worst;
      }));
  out.push_back(detail::make_report(
      "quantum.violation", {{"n", n}, {"q0_star", opt.q0_star}}, "lower-bound", 0.0, 1e-7, tol,
      [&](nlohmann::json&) { return opt.value_star; }));
  return out;
}

// Runs a claim group ("all" or one of local/gns/domination/embedding/quantum)
// and returns reports sorted by claim id.
inline std::vector<VerificationReport> run_claims(int n, const std::string& group,
                                                  std::optional<double> tol = {}) {
  std::vector<VerificationReport> out;
  auto append = [&](std::vector<VerificationReport> v) {
    for (auto& r : v) out.push_back(std::move(r));
  };
  if (group == "local") {
    append(claims_local(n, tol));
  } else if (group == "gns") {
    append(claims_gns(n, tol));
  } else if (group == "domination") {
    append(claims_domination(n, tol));
  } else if (group == "embedding") {
    append(claims_embedding(n, tol));
  } else if (group == "quantum") {
    append(claims_quantum(n, tol));
  } else if (group == "all") {
    append(claims_local(n, tol));
    append(claims_gns(n, tol));
    append(claims_domination(n, tol));
    if (n >= 3) append(claims_embedding(n, tol));
    append(claims_quantum(n, tol));
  } else {
    throw DomainError("unknown claim group '" + group + "'");
  }
  std::sort(out.begin(), out.end(), [](const VerificationReport& a, const VerificationReport& b) {
    return a.claim < b.claim;
  });
  return out;
}

}  // namespace mn22

#endif  // MN22_VERIFY_HPP
