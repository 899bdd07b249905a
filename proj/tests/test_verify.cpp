#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "mn22/mn22.hpp"

using namespace mn22;

TEST_CASE("all claims pass at n=3", "[verify]") {
  const std::vector<VerificationReport> reports = run_claims(3, "all");
  REQUIRE_FALSE(reports.empty());
  for (const auto& r : reports) {
    INFO(r.claim << " computed=" << r.computed);
    CHECK(r.pass);
    CHECK(r.runtime_ms >= 0);
  }
  CHECK(std::is_sorted(reports.begin(), reports.end(),
                       [](const VerificationReport& a, const VerificationReport& b) {
                         return a.claim < b.claim;
                       }));
}

TEST_CASE("group selection matches claim prefixes", "[verify]") {
  for (const auto& r : run_claims(3, "gns")) {
    CHECK(r.claim.rfind("gns.", 0) == 0);
  }
  const auto quantum = run_claims(4, "quantum");
  CHECK(quantum.size() == 5);
  for (const auto& r : quantum) CHECK(r.pass);
}

TEST_CASE("local claims are exact", "[verify]") {
  for (const auto& r : run_claims(4, "local")) {
    CHECK(r.kind == "eq");
    CHECK(r.tolerance == 0.0);
    CHECK(r.computed == 0.0);
    CHECK(r.pass);
  }
}

TEST_CASE("gns reports carry the worst pair", "[verify]") {
  const auto reports = run_claims(3, "gns");
  const auto it = std::find_if(reports.begin(), reports.end(),
                               [](const VerificationReport& r) { return r.claim == "gns.max"; });
  REQUIRE(it != reports.end());
  REQUIRE(it->parameters.contains("worst_pair"));
  CHECK(it->parameters["worst_pair"].size() == 2);
}

TEST_CASE("embedding group needs n at least 3", "[verify]") {
  CHECK_THROWS_AS(run_claims(2, "embedding"), DomainError);
}

TEST_CASE("unknown group is rejected", "[verify]") {
  CHECK_THROWS_AS(run_claims(3, "everything"), DomainError);
}

TEST_CASE("tolerance override is applied uniformly", "[verify]") {
  // An absurdly large tolerance makes the strict lower-bound claim fail:
  // the violation is no longer strictly above expected + tolerance.
  const auto reports = run_claims(3, "quantum", 10.0);
  const auto it =
      std::find_if(reports.begin(), reports.end(),
                   [](const VerificationReport& r) { return r.claim == "quantum.violation"; });
  REQUIRE(it != reports.end());
  CHECK(it->tolerance == 10.0);
  CHECK_FALSE(it->pass);
}

TEST_CASE("report JSON has the full schema", "[verify]") {
  const auto reports = run_claims(3, "embedding");
  REQUIRE(reports.size() == 1);
  const nlohmann::json j = to_json(reports[0]);
  for (const char* key :
       {"claim", "parameters", "computed", "expected", "kind", "tolerance", "pass", "runtime_ms"}) {
    CHECK(j.contains(key));
  }
  CHECK(j["kind"] == "upper-bound");
}

TEST_CASE("pass semantics per claim kind", "[verify]") {
  CHECK(detail::claim_passes("eq", 0.5, 0.5, 0.0));
  CHECK(detail::claim_passes("eq", 0.5 + 1e-9, 0.5, 1e-8));
  CHECK_FALSE(detail::claim_passes("eq", 0.6, 0.5, 1e-8));
  CHECK(detail::claim_passes("upper-bound", -1.0, 0.0, 0.0));
  CHECK(detail::claim_passes("upper-bound", 1e-9, 0.0, 1e-8));
  CHECK_FALSE(detail::claim_passes("upper-bound", 1e-6, 0.0, 1e-8));
  CHECK(detail::claim_passes("lower-bound", 0.02, 0.0, 1e-7));
  CHECK_FALSE(detail::claim_passes("lower-bound", 0.0, 0.0, 1e-7));
  CHECK_THROWS_AS(detail::claim_passes("sideways", 0.0, 0.0, 0.0), StructuralError);
}
