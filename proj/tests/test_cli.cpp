#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include <sys/wait.h>

#include "mn22/mn22.hpp"

namespace {

struct CliResult {
  int exit_code = -1;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(MN22_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliResult r;
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    const std::size_t nl = text.find('\n', start);
    if (nl == std::string::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  return lines;
}

}  // namespace

TEST_CASE("ineq csv output", "[cli]") {
  const CliResult r = run_cli("ineq mnn22 --n 3 --format csv");
  CHECK(r.exit_code == 0);
  CHECK(r.out == mn22::emit_csv(mn22::m_nn22(3)));
}

TEST_CASE("ineq json output parses back to the same functional", "[cli]") {
  const CliResult r = run_cli("ineq reduced --n 3 --pair 2,3");
  REQUIRE(r.exit_code == 0);
  const mn22::BellFunctional f = mn22::deserialize_functional(r.out);
  const mn22::BellFunctional expected = mn22::reduced_chsh(3, {2, 3});
  CHECK(f.alice_coef == expected.alice_coef);
  CHECK(f.bob_coef == expected.bob_coef);
  CHECK(f.joint_coef == expected.joint_coef);
}

TEST_CASE("ineq chsh needs no n", "[cli]") {
  const CliResult r = run_cli("ineq chsh");
  CHECK(r.exit_code == 0);
  CHECK(mn22::deserialize_functional(r.out).n_a == 2);
}

TEST_CASE("ineq embedding includes keep sets", "[cli]") {
  const CliResult r = run_cli("ineq embedding --n 4");
  REQUIRE(r.exit_code == 0);
  const nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j["bob_keep"] == nlohmann::json({2, 3, 4}));
}

TEST_CASE("ineq usage errors exit 64", "[cli]") {
  CHECK(run_cli("ineq mnn22 --n 1").exit_code == 64);
  CHECK(run_cli("ineq mnn22").exit_code == 64);          // missing --n
  CHECK(run_cli("ineq nosuch --n 3").exit_code == 64);   // unknown family
  CHECK(run_cli("ineq reduced --n 3").exit_code == 64);  // missing --pair
  CHECK(run_cli("ineq reduced --n 3 --pair 3,3").exit_code == 64);
  CHECK(run_cli("ineq mnn22 --n 3 --format yaml").exit_code == 64);
}

TEST_CASE("quantum optimize emits the starred values", "[cli]") {
  const CliResult r = run_cli("quantum --n 3 --optimize");
  REQUIRE(r.exit_code == 0);
  const nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(std::abs(j["value_star"].get<double>() - 0.0239) <= 5e-4);
  CHECK(std::abs(j["value_closed"].get<double>() - j["value_direct"].get<double>()) <= 1e-9);
  CHECK(j["q0"] == j["q0_star"]);
}

TEST_CASE("quantum at q0=1 gives a zero value", "[cli]") {
  const CliResult r = run_cli("quantum --n 3 --q0 1.0");
  REQUIRE(r.exit_code == 0);
  const nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(std::abs(j["value_closed"].get<double>()) <= 1e-12);
  CHECK(std::abs(j["value_direct"].get<double>()) <= 1e-12);
}

TEST_CASE("quantum scan emits one record per grid point", "[cli]") {
  const CliResult r = run_cli("quantum --n 3 --scan 0.9:0.95:5");
  REQUIRE(r.exit_code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 6);
  for (const auto& line : lines) {
    const nlohmann::json j = nlohmann::json::parse(line);
    const double q0 = j["q0"].get<double>();
    CHECK(std::abs(j["value_closed"].get<double>() - mn22::bell_value_closed(3, q0)) <= 1e-15);
  }
}

TEST_CASE("quantum mode flags are mutually exclusive", "[cli]") {
  CHECK(run_cli("quantum --n 3").exit_code == 64);
  CHECK(run_cli("quantum --n 3 --q0 0.9 --optimize").exit_code == 64);
  CHECK(run_cli("quantum --n 3 --q0 1.5").exit_code == 64);
  CHECK(run_cli("quantum --n 3 --scan 0.9:0.8:5").exit_code == 64);
  CHECK(run_cli("quantum --n 1 --optimize").exit_code == 64);
}

TEST_CASE("verify quantum claims pass at n=3", "[cli]") {
  const CliResult r = run_cli("verify --n 3 --claims quantum");
  CHECK(r.exit_code == 0);
  for (const auto& line : lines_of(r.out)) {
    const nlohmann::json j = nlohmann::json::parse(line);
    CHECK(j["pass"].get<bool>());
  }
}

TEST_CASE("verify all claims pass at n=3", "[cli]") {
  const CliResult r = run_cli("verify --n 3 --claims all");
  CHECK(r.exit_code == 0);
  CHECK_FALSE(lines_of(r.out).empty());
}

TEST_CASE("verify output is deterministic", "[cli]") {
  const CliResult a = run_cli("verify --n 3 --claims domination");
  const CliResult b = run_cli("verify --n 3 --claims domination");
  // runtime_ms may differ between runs; compare everything else.
  const auto al = lines_of(a.out);
  const auto bl = lines_of(b.out);
  REQUIRE(al.size() == bl.size());
  for (std::size_t i = 0; i < al.size(); ++i) {
    nlohmann::json ja = nlohmann::json::parse(al[i]);
    nlohmann::json jb = nlohmann::json::parse(bl[i]);
    ja.erase("runtime_ms");
    jb.erase("runtime_ms");
    CHECK(ja == jb);
  }
}

TEST_CASE("verify claim failures exit 2", "[cli]") {
  // A huge uniform tolerance makes the strict-positivity claim fail.
  const CliResult r = run_cli("verify --n 3 --claims quantum --tol 10.0");
  CHECK(r.exit_code == 2);
}

TEST_CASE("verify usage errors exit 64", "[cli]") {
  CHECK(run_cli("verify --n 3 --claims nosuch").exit_code == 64);
  CHECK(run_cli("verify --claims all").exit_code == 64);  // missing --n
  CHECK(run_cli("verify --n 2 --claims embedding").exit_code == 64);
}

TEST_CASE("verify guard violations exit 65", "[cli]") {
  CHECK(run_cli("verify --n 9 --claims gns").exit_code == 65);
}

TEST_CASE("scan-table emits a decreasing positive violation column", "[cli]") {
  const CliResult r = run_cli("scan-table --n-range 2:6");
  REQUIRE(r.exit_code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 6);
  CHECK(lines[0] == "n,q0_star,violation");
  double prev = 1e9;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::string& line = lines[i];
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    REQUIRE(c2 != std::string::npos);
    CHECK(std::stoi(line.substr(0, c1)) == static_cast<int>(i) + 1);
    const double v = std::stod(line.substr(c2 + 1));
    CHECK(v > 0.0);
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("scan-table range errors exit 64", "[cli]") {
  CHECK(run_cli("scan-table --n-range 1:5").exit_code == 64);
  CHECK(run_cli("scan-table --n-range 5:3").exit_code == 64);
  CHECK(run_cli("scan-table --n-range banana").exit_code == 64);
}

TEST_CASE("unknown subcommands exit 64", "[cli]") {
  CHECK(run_cli("frobnicate").exit_code == 64);
  CHECK(run_cli("").exit_code == 64);
}
