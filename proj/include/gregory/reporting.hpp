#pragma once

#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace gregory {

// Deterministic decimal rendering: 17 significant digits, lowercase
// exponent, '.' separator; integral values keep a trailing ".0".
inline std::string render_real(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  bool plain_integer = true;
  for (char c : s)
    if (c != '-' && (c < '0' || c > '9')) {
      plain_integer = false;
      break;
    }
  if (plain_integer) s += ".0";
  return s;
}

// One named verification: expected vs computed plus the pass policy.
// policy is one of "exact" (string equality), "abs" (absError <= tolerance),
// "rel" (relError <= tolerance), "combined" (absError <= summed quadrature
// error estimates, carried in tolerance) or "info" (reported, not asserted).
struct VerificationRecord {
  std::string check_name;
  std::string expected;
  std::string computed;
  double abs_error = 0.0;
  double rel_error = 0.0;
  double tolerance = 0.0;
  std::string policy;
  bool passed = false;
  std::string anchor;  // the identity under test, emitted as paperAnchor
};

inline VerificationRecord check_abs(std::string name, double expected, double computed,
                                    double tolerance, std::string anchor) {
  VerificationRecord rec;
  rec.check_name = std::move(name);
  rec.expected = render_real(expected);
  rec.computed = render_real(computed);
  rec.abs_error = std::abs(computed - expected);
  rec.rel_error = expected != 0.0 ? rec.abs_error / std::abs(expected)
                                  : (computed == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
  rec.tolerance = tolerance;
  rec.policy = "abs";
  rec.passed = rec.abs_error <= tolerance;
  rec.anchor = std::move(anchor);
  return rec;
}

inline VerificationRecord check_rel(std::string name, double expected, double computed,
                                    double tolerance, std::string anchor) {
  VerificationRecord rec = check_abs(std::move(name), expected, computed, tolerance, std::move(anchor));
  rec.policy = "rel";
  rec.passed = rec.rel_error <= tolerance;
  return rec;
}

inline VerificationRecord check_exact(std::string name, std::string expected, std::string computed,
                                      std::string anchor) {
  VerificationRecord rec;
  rec.check_name = std::move(name);
  rec.expected = std::move(expected);
  rec.computed = std::move(computed);
  rec.passed = rec.expected == rec.computed;
  rec.abs_error = rec.passed ? 0.0 : 1.0;
  rec.rel_error = rec.abs_error;
  rec.tolerance = 0.0;
  rec.policy = "exact";
  rec.anchor = std::move(anchor);
  return rec;
}

enum class OutputFormat { Csv, Json };

struct RunConfig {
  int max_n = 50;
  int max_k = 25;
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  bool rel_tol_explicit = false;
  bool abs_tol_explicit = false;
  OutputFormat format = OutputFormat::Csv;
  bool format_explicit = false;
  std::optional<std::string> out_path;
  int jobs = 1;
};

// Reporting tolerance for a check: the pinned value, loosened (never
// tightened) by an explicitly passed --rel-tol / --abs-tol.
inline double effective_tolerance(double pinned, double user, bool user_explicit) {
  return user_explicit ? std::max(pinned, user) : pinned;
}

inline const char* format_name(OutputFormat f) { return f == OutputFormat::Csv ? "csv" : "json"; }

inline nlohmann::ordered_json config_to_json(const RunConfig& cfg) {
  nlohmann::ordered_json j;
  j["maxN"] = cfg.max_n;
  j["maxK"] = cfg.max_k;
  j["relTol"] = cfg.rel_tol;
  j["absTol"] = cfg.abs_tol;
  j["format"] = format_name(cfg.format);
  if (cfg.out_path)
    j["out"] = *cfg.out_path;
  else
    j["out"] = nullptr;
  j["jobs"] = cfg.jobs;
  return j;
}

inline nlohmann::ordered_json record_to_json(const VerificationRecord& rec) {
  nlohmann::ordered_json j;
  j["checkName"] = rec.check_name;
  j["expected"] = rec.expected;
  j["computed"] = rec.computed;
  j["absError"] = rec.abs_error;
  j["relError"] = rec.rel_error;
  j["tolerance"] = rec.tolerance;
  j["policy"] = rec.policy;
  j["passed"] = rec.passed;
  j["paperAnchor"] = rec.anchor;
  return j;
}

// Top-level JSON shape shared by all subcommands: {config, records, summary}.
inline nlohmann::ordered_json records_to_json(const RunConfig& cfg,
                                              std::span<const VerificationRecord> records) {
  nlohmann::ordered_json j;
  j["config"] = config_to_json(cfg);
  auto arr = nlohmann::ordered_json::array();
  int passed = 0;
  for (const auto& rec : records) {
    arr.push_back(record_to_json(rec));
    if (rec.passed) ++passed;
  }
  j["records"] = std::move(arr);
  j["summary"] = {{"total", records.size()},
                  {"passed", passed},
                  {"failed", static_cast<int>(records.size()) - passed},
                  {"allPassed", passed == static_cast<int>(records.size())}};
  return j;
}

inline std::string records_to_csv(std::span<const VerificationRecord> records) {
  std::string out =
      "checkName,expected,computed,absError,relError,tolerance,policy,passed,paperAnchor\n";
  for (const auto& rec : records) {
    out += rec.check_name;
    out += ',';
    out += rec.expected;
    out += ',';
    out += rec.computed;
    out += ',';
    out += render_real(rec.abs_error);
    out += ',';
    out += render_real(rec.rel_error);
    out += ',';
    out += render_real(rec.tolerance);
    out += ',';
    out += rec.policy;
    out += ',';
    out += rec.passed ? "true" : "false";
    out += ',';
    out += rec.anchor;
    out += '\n';
  }
  return out;
}

}  // namespace gregory
