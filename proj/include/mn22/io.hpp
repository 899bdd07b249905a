#ifndef MN22_IO_HPP
#define MN22_IO_HPP

// JSON and CSV serialization for tables and functionals.
//
// Canonical JSON: {"n_a": int, "n_b": int, "alice": [..], "bob": [..],
// "joint": [[..]]} with joint[y-1][x-1]; functionals carry an extra "bound".
// Numbers round-trip exactly (shortest representation).  CSV layout: first
// row is a blank cell followed by the Alice entries; each following row is
// the Bob entry for setting y followed by joint row y.

#include <charconv>
#include <string>
#include <vector>

#include <json.hpp>

#include "mn22/cg.hpp"
#include "mn22/errors.hpp"
#include "mn22/inequalities.hpp"

namespace mn22 {

namespace detail {

inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline nlohmann::json table_body_json(int n_a, int n_b, const std::vector<double>& alice,
                                      const std::vector<double>& bob,
                                      const std::vector<std::vector<double>>& joint) {
  nlohmann::json j;
  j["n_a"] = n_a;
  j["n_b"] = n_b;
  j["alice"] = alice;
  j["bob"] = bob;
  j["joint"] = joint;
  return j;
}

inline void read_table_body(const nlohmann::json& j, const char* what, int& n_a, int& n_b,
                            std::vector<double>& alice, std::vector<double>& bob,
                            std::vector<std::vector<double>>& joint) {
  try {
    n_a = j.at("n_a").get<int>();
    n_b = j.at("n_b").get<int>();
    alice = j.at("alice").get<std::vector<double>>();
    bob = j.at("bob").get<std::vector<double>>();
    joint = j.at("joint").get<std::vector<std::vector<double>>>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
  if (n_a < 1 || n_b < 1) throw ParseError(std::string(what) + ": setting counts must be >= 1");
  if (alice.size() != static_cast<std::size_t>(n_a))
    throw ParseError(std::string(what) + ": 'alice' length != n_a");
  if (bob.size() != static_cast<std::size_t>(n_b))
    throw ParseError(std::string(what) + ": 'bob' length != n_b");
  if (joint.size() != static_cast<std::size_t>(n_b))
    throw ParseError(std::string(what) + ": 'joint' row count != n_b");
  for (const auto& row : joint)
    if (row.size() != static_cast<std::size_t>(n_a))
      throw ParseError(std::string(what) + ": 'joint' row length != n_a");
}

inline nlohmann::json parse_json(const std::string& text, const char* what) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string(what) + ": " + e.what());  // includes byte position
  }
}

}  // namespace detail

inline nlohmann::json to_json(const CGTable& t) {
  return detail::table_body_json(t.n_a, t.n_b, t.alice, t.bob, t.joint);
}

inline nlohmann::json to_json(const BellFunctional& f) {
  nlohmann::json j = detail::table_body_json(f.n_a, f.n_b, f.alice_coef, f.bob_coef, f.joint_coef);
  j["bound"] = f.bound;
  return j;
}

inline nlohmann::json to_json(const SubEmbedding& e) {
  nlohmann::json j = to_json(e.functional);
  j["alice_keep"] = e.alice_keep;
  j["bob_keep"] = e.bob_keep;
  return j;
}

inline std::string serialize(const CGTable& t) { return to_json(t).dump(); }
inline std::string serialize(const BellFunctional& f) { return to_json(f).dump(); }

inline CGTable table_from_json(const nlohmann::json& j) {
  CGTable t;
  detail::read_table_body(j, "CGTable", t.n_a, t.n_b, t.alice, t.bob, t.joint);
  return t;
}

inline BellFunctional functional_from_json(const nlohmann::json& j) {
  BellFunctional f;
  detail::read_table_body(j, "BellFunctional", f.n_a, f.n_b, f.alice_coef, f.bob_coef,
                          f.joint_coef);
  try {
    f.bound = j.at("bound").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("BellFunctional: ") + e.what());
  }
  return f;
}

inline CGTable deserialize_table(const std::string& text) {
  return table_from_json(detail::parse_json(text, "CGTable"));
}

inline BellFunctional deserialize_functional(const std::string& text) {
  return functional_from_json(detail::parse_json(text, "BellFunctional"));
}

namespace detail {

inline std::string csv_body(int n_a, int n_b, const std::vector<double>& alice,
                            const std::vector<double>& bob,
                            const std::vector<std::vector<double>>& joint) {
  std::string out;
  for (int x = 1; x <= n_a; ++x) {
    out += ',';
    out += format_double(alice[static_cast<std::size_t>(x - 1)]);
  }
  out += '\n';
  for (int y = 1; y <= n_b; ++y) {
    out += format_double(bob[static_cast<std::size_t>(y - 1)]);
    for (int x = 1; x <= n_a; ++x) {
      out += ',';
      out += format_double(joint[static_cast<std::size_t>(y - 1)][static_cast<std::size_t>(x - 1)]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace detail

inline std::string emit_csv(const CGTable& t) {
  return detail::csv_body(t.n_a, t.n_b, t.alice, t.bob, t.joint);
}

inline std::string emit_csv(const BellFunctional& f) {
  return detail::csv_body(f.n_a, f.n_b, f.alice_coef, f.bob_coef, f.joint_coef);
}

}  // namespace mn22

#endif  // MN22_IO_HPP
