// mn22 command-line tool: inequality generators, quantum evaluation/scans,
// and the verification pipeline.  Machine output (JSON/CSV/NDJSON) goes to
// stdout only; diagnostics go to stderr.
//
// Exit codes: 0 success / all claims pass, 2 at least one claim failed,
// 64 usage or parameter error, 65 resource guard refused the computation,
// 1 unexpected internal error.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mn22/mn22.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitClaimFailed = 2;
constexpr int kExitUsage = 64;
constexpr int kExitGuard = 65;
constexpr int kExitInternal = 1;

bool g_verbose = false;

void log_info(const std::string& msg) {
  if (g_verbose) std::cerr << "[mn22] " << msg << "\n";
}

mn22::PairLabel parse_pair(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) {
    throw mn22::ParseError("--pair expects 's,t', got '" + text + "'");
  }
  try {
    const int s = std::stoi(text.substr(0, comma));
    const int t = std::stoi(text.substr(comma + 1));
    return {s, t};
  } catch (const std::exception&) {
    throw mn22::ParseError("--pair expects integers 's,t', got '" + text + "'");
  }
}

struct ScanRange {
  double lo = 0.0;
  double hi = 0.0;
  int steps = 0;
};

ScanRange parse_scan(const std::string& text) {
  const auto c1 = text.find(':');
  const auto c2 = text.find(':', c1 == std::string::npos ? c1 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos) {
    throw mn22::ParseError("--scan expects 'lo:hi:steps', got '" + text + "'");
  }
  ScanRange r;
  try {
    r.lo = std::stod(text.substr(0, c1));
    r.hi = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
    r.steps = std::stoi(text.substr(c2 + 1));
  } catch (const std::exception&) {
    throw mn22::ParseError("--scan expects numbers 'lo:hi:steps', got '" + text + "'");
  }
  if (!(r.lo >= 0.0 && r.hi <= 1.0 && r.lo <= r.hi)) {
    throw mn22::DomainError("--scan range must satisfy 0 <= lo <= hi <= 1");
  }
  if (r.steps < 1) throw mn22::DomainError("--scan needs steps >= 1");
  return r;
}

std::pair<int, int> parse_n_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw mn22::ParseError("--n-range expects 'lo:hi', got '" + text + "'");
  }
  int lo = 0;
  int hi = 0;
  try {
    lo = std::stoi(text.substr(0, colon));
    hi = std::stoi(text.substr(colon + 1));
  } catch (const std::exception&) {
    throw mn22::ParseError("--n-range expects integers 'lo:hi', got '" + text + "'");
  }
  if (lo < 2 || hi < lo) throw mn22::DomainError("--n-range needs 2 <= lo <= hi");
  if (hi > 4096) throw mn22::GuardError("--n-range upper end above 4096 refused");
  return {lo, hi};
}

nlohmann::json quantum_record(int n, double q0) {
  const mn22::QuantumConstruction c = mn22::build(n, q0);
  nlohmann::json rec;
  rec["q0"] = q0;
  rec["value_closed"] = mn22::bell_value_closed(n, q0);
  rec["value_direct"] = mn22::evaluate(mn22::m_nn22(n), mn22::behavior(c));
  return rec;
}

int run_ineq(const std::string& family, int n, const std::string& pair_text,
             const std::string& format) {
  mn22::BellFunctional f;
  std::optional<mn22::SubEmbedding> emb;
  if (family == "chsh") {
    f = mn22::chsh();
  } else if (family == "mnn22") {
    f = mn22::m_nn22(n);
  } else if (family == "innn22") {
    f = mn22::i_nn22(n);
  } else if (family == "reduced") {
    if (pair_text.empty()) throw mn22::DomainError("family 'reduced' requires --pair s,t");
    f = mn22::reduced_chsh(n, parse_pair(pair_text));
  } else if (family == "embedding") {
    emb = mn22::sub_embedding(n);
    f = emb->functional;
  } else {
    throw mn22::DomainError("unknown family '" + family +
                            "' (expected chsh|innn22|mnn22|reduced|embedding)");
  }
  if (format == "json") {
    std::cout << (emb ? mn22::to_json(*emb) : mn22::to_json(f)).dump() << "\n";
  } else if (format == "csv") {
    std::cout << mn22::emit_csv(f);
  } else {
    throw mn22::DomainError("unknown format '" + format + "' (expected json|csv)");
  }
  return kExitOk;
}

int run_quantum(int n, std::optional<double> q0, bool optimize, const std::string& scan_text) {
  const int modes = (q0.has_value() ? 1 : 0) + (optimize ? 1 : 0) + (scan_text.empty() ? 0 : 1);
  if (modes != 1) {
    throw mn22::DomainError("choose exactly one of --q0, --optimize, --scan");
  }
  if (q0.has_value()) {
    std::cout << quantum_record(n, *q0).dump() << "\n";
    return kExitOk;
  }
  if (optimize) {
    const mn22::Optimum opt = mn22::optimize_q0(n);
    nlohmann::json rec = quantum_record(n, opt.q0_star);
    rec["q0_star"] = opt.q0_star;
    rec["value_star"] = opt.value_star;
    std::cout << rec.dump() << "\n";
    return kExitOk;
  }
  const ScanRange r = parse_scan(scan_text);
  for (int i = 0; i <= r.steps; ++i) {
    const double q = r.lo + (r.hi - r.lo) * i / r.steps;
    std::cout << quantum_record(n, q).dump() << "\n";
  }
  return kExitOk;
}

int run_verify(int n, const std::string& claims, std::optional<double> tol) {
  log_info("running claim group '" + claims + "' at n=" + std::to_string(n));
  const std::vector<mn22::VerificationReport> reports = mn22::run_claims(n, claims, tol);
  bool all_pass = true;
  for (const auto& r : reports) {
    std::cout << mn22::to_json(r).dump() << "\n";
    all_pass = all_pass && r.pass;
  }
  return all_pass ? kExitOk : kExitClaimFailed;
}

int run_scan_table(const std::string& range_text) {
  const auto [lo, hi] = parse_n_range(range_text);
  std::cout << "n,q0_star,violation\n";
  for (int n = lo; n <= hi; ++n) {
    const mn22::Optimum opt = mn22::optimize_q0(n);
    std::cout << n << "," << mn22::detail::format_double(opt.q0_star) << ","
              << mn22::detail::format_double(opt.value_star) << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"M_nn22 inequality family: generators, quantum violations, verification"};
  app.require_subcommand(1);
  app.add_flag("-v,--verbose", g_verbose, "diagnostics on stderr");

  // ineq
  auto* ineq = app.add_subcommand("ineq", "emit an inequality coefficient table");
  std::string family;
  int ineq_n = 0;
  std::string pair_text;
  std::string format = "json";
  ineq->add_option("family", family, "chsh|innn22|mnn22|reduced|embedding")->required();
  ineq->add_option("--n", ineq_n, "number of settings per side");
  ineq->add_option("--pair", pair_text, "Bob setting pair 's,t' (family 'reduced')");
  ineq->add_option("--format", format, "json|csv (default json)");

  // quantum
  auto* quantum = app.add_subcommand("quantum", "evaluate the quantum construction");
  int q_n = 0;
  double q0_value = -1.0;
  bool optimize = false;
  std::string scan_text;
  quantum->add_option("--n", q_n, "number of settings per side")->required();
  auto* q0_opt = quantum->add_option("--q0", q0_value, "evaluate at this q0");
  quantum->add_flag("--optimize", optimize, "maximize over q0");
  quantum->add_option("--scan", scan_text, "grid 'lo:hi:steps' over q0");

  // verify
  auto* verify = app.add_subcommand("verify", "run verification claims");
  int v_n = 0;
  std::string claims = "all";
  double tol_value = -1.0;
  verify->add_option("--n", v_n, "number of settings per side")->required();
  verify->add_option("--claims", claims, "all|local|gns|domination|embedding|quantum");
  auto* tol_opt = verify->add_option("--tol", tol_value, "override all claim tolerances");

  // scan-table
  auto* scan_table = app.add_subcommand("scan-table", "CSV of (n, q0*, violation*)");
  std::string n_range = "2:8";
  scan_table->add_option("--n-range", n_range, "inclusive range 'lo:hi' (default 2:8)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*ineq) {
      if (family != "chsh" && ineq_n == 0) {
        throw mn22::DomainError("family '" + family + "' requires --n");
      }
      return run_ineq(family, family == "chsh" ? 2 : ineq_n, pair_text, format);
    }
    if (*quantum) {
      std::optional<double> q0;
      if (q0_opt->count() > 0) q0 = q0_value;
      return run_quantum(q_n, q0, optimize, scan_text);
    }
    if (*verify) {
      std::optional<double> tol;
      if (tol_opt->count() > 0) {
        if (tol_value < 0.0) throw mn22::DomainError("--tol must be nonnegative");
        tol = tol_value;
      }
      return run_verify(v_n, claims, tol);
    }
    if (*scan_table) {
      return run_scan_table(n_range);
    }
    std::cerr << "usage error: no subcommand\n";
    return kExitUsage;
  } catch (const mn22::GuardError& e) {
    std::cerr << "resource guard: " << e.what() << "\n";
    return kExitGuard;
  } catch (const mn22::DomainError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const mn22::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
