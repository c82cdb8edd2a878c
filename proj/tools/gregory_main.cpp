// gregory: exact and quadrature-based computation of Bernoulli numbers of
// the second kind, plus verification of the Stieltjes-representation
// identities for F(z) = z/((1+z) ln(1+z)).
//
// Subcommands: bk2, verify-cm, eval-f, density, selftest.
// Exit codes: 0 all checks pass, 1 verification failure, 2 usage/I-O error.

#include <algorithm>
#include <complex>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <gregory/gregory.hpp>

namespace {

using namespace gregory;

int emit_text(const RunConfig& cfg, const std::string& text) {
  if (cfg.out_path) {
    std::ofstream out(*cfg.out_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot open output path '" << *cfg.out_path << "'\n";
      return 2;
    }
    out << text;
    out.flush();
    if (!out) {
      std::cerr << "error: failed writing '" << *cfg.out_path << "'\n";
      return 2;
    }
    return 0;
  }
  std::cout << text;
  return 0;
}

std::string records_text(const RunConfig& cfg, const std::vector<VerificationRecord>& records) {
  if (cfg.format == OutputFormat::Json) return records_to_json(cfg, records).dump(2) + "\n";
  return records_to_csv(records);
}

int cmd_bk2(const RunConfig& cfg) {
  if (cfg.max_n < 0) throw std::invalid_argument("bk2: --max-n must be >= 0");
  const std::vector<Bk2Row> rows = make_bk2_rows(cfg);
  const bool all_within = std::all_of(rows.begin(), rows.end(), [&](const Bk2Row& row) {
    return bk2_row_within(row, cfg.rel_tol);
  });
  const std::string text = cfg.format == OutputFormat::Json
                               ? bk2_rows_to_json(cfg, rows, cfg.rel_tol).dump(2) + "\n"
                               : bk2_rows_to_csv(rows);
  const int rc = emit_text(cfg, text);
  if (rc != 0) return rc;
  return all_within ? 0 : 1;
}

int cmd_verify_cm(const RunConfig& cfg, const std::string& inject) {
  std::optional<std::vector<Rational>> injected;
  if (!inject.empty()) {
    std::vector<Rational> seq;
    std::stringstream ss(inject);
    std::string item;
    while (std::getline(ss, item, ',')) seq.push_back(parse_rational(item));
    if (seq.size() < 2)
      throw std::invalid_argument("verify-cm: injected sequence needs at least 2 terms");
    injected = std::move(seq);
  } else {
    if (cfg.max_n < 1) throw std::invalid_argument("verify-cm: --max-n must be >= 1");
    if (cfg.max_k + 1 > cfg.max_n)
      throw std::invalid_argument("verify-cm: requires --max-k + 1 <= --max-n");
    if (cfg.max_k < 0) throw std::invalid_argument("verify-cm: --max-k must be >= 0");
  }
  const CmRunResult run = run_verify_cm(cfg.max_n, cfg.max_k, injected ? &*injected : nullptr);
  const int rc = emit_text(cfg, records_text(cfg, {run.record}));
  if (rc != 0) return rc;
  return run.certificate.holds ? 0 : 1;
}

int cmd_eval_f(const RunConfig& cfg, double re, double im) {
  const double tol = effective_tolerance(1e-8, cfg.rel_tol, cfg.rel_tol_explicit);
  const VerificationRecord rec = eval_f_record(Complex(re, im), tol);
  const int rc = emit_text(cfg, records_text(cfg, {rec}));
  if (rc != 0) return rc;
  return rec.passed ? 0 : 1;
}

int cmd_density(const RunConfig& cfg, double t_min, double t_max, int points) {
  const std::vector<DensitySample> grid = density_grid(t_min, t_max, points);
  std::string text;
  if (cfg.format == OutputFormat::Json) {
    nlohmann::ordered_json j;
    j["config"] = config_to_json(cfg);
    auto arr = nlohmann::ordered_json::array();
    for (const auto& sample : grid) arr.push_back({{"t", sample.t}, {"rho", sample.rho}});
    j["records"] = std::move(arr);
    j["summary"] = {{"total", grid.size()}};
    text = j.dump(2) + "\n";
  } else {
    text = "t,rho\n";
    for (const auto& sample : grid) {
      text += render_real(sample.t);
      text += ',';
      text += render_real(sample.rho);
      text += '\n';
    }
  }
  return emit_text(cfg, text);
}

int cmd_selftest(const RunConfig& cfg) {
  const std::vector<CheckDef> checks = battery_checks(cfg);
  const std::vector<VerificationRecord> records = run_checks(checks, cfg.jobs);
  const bool all_passed =
      std::all_of(records.begin(), records.end(), [](const auto& r) { return r.passed; });
  const int rc = emit_text(cfg, records_text(cfg, records));
  if (rc != 0) return rc;
  return all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "gregory: Bernoulli numbers of the second kind (Gregory coefficients), the Stieltjes "
      "density of F(z) = z/((1+z) ln(1+z)), and a self-test battery for the identities "
      "connecting them"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string format = "csv";
  std::string out_path;
  app.add_option("--max-n", cfg.max_n, "Largest index n")->capture_default_str();
  app.add_option("--max-k", cfg.max_k, "Largest difference order k")->capture_default_str();
  app.add_option("--rel-tol", cfg.rel_tol, "Relative reporting tolerance")->capture_default_str();
  app.add_option("--abs-tol", cfg.abs_tol, "Absolute reporting tolerance")->capture_default_str();
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--out", out_path, "Write output to PATH instead of stdout");
  app.add_option("--jobs", cfg.jobs, "Worker threads for independent checks")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  auto* bk2 = app.add_subcommand("bk2", "Table of b_n: exact rational, decimal, quadrature");
  bk2->fallthrough();

  std::string inject;
  auto* verify = app.add_subcommand("verify-cm", "Certify complete monotonicity of (-1)^n b_(n+1)");
  verify->fallthrough();
  verify->add_option("--inject", inject, "")->group("");  // test hook, hidden

  double eval_re = 0.0;
  double eval_im = 0.0;
  auto* evalf = app.add_subcommand("eval-f", "Evaluate F(z) directly and via its representation");
  evalf->fallthrough();
  evalf->add_option("re", eval_re, "Real part of z")->required();
  evalf->add_option("im", eval_im, "Imaginary part of z")->required();

  double t_min = 1.000001;
  double t_max = 1e6;
  int points = 200;
  auto* density = app.add_subcommand("density", "Export the density rho(t) on a log-spaced grid");
  density->fallthrough();
  density->add_option("--t-min", t_min, "Grid start (> 1)")->capture_default_str();
  density->add_option("--t-max", t_max, "Grid end")->capture_default_str();
  density->add_option("--points", points, "Grid size")->capture_default_str();

  auto* selftest = app.add_subcommand("selftest", "Run the full verification battery");
  selftest->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  cfg.rel_tol_explicit = app.count("--rel-tol") > 0;
  cfg.abs_tol_explicit = app.count("--abs-tol") > 0;
  cfg.format_explicit = app.count("--format") > 0;
  cfg.format = format == "json" ? OutputFormat::Json : OutputFormat::Csv;
  if (!out_path.empty()) cfg.out_path = out_path;
  // selftest is meant for machines first: default to JSON unless overridden
  if (selftest->parsed() && !cfg.format_explicit) cfg.format = OutputFormat::Json;

  try {
    if (bk2->parsed()) return cmd_bk2(cfg);
    if (verify->parsed()) return cmd_verify_cm(cfg, inject);
    if (evalf->parsed()) return cmd_eval_f(cfg, eval_re, eval_im);
    if (density->parsed()) return cmd_density(cfg, t_min, t_max, points);
    if (selftest->parsed()) return cmd_selftest(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  std::cerr << "error: no subcommand\n";
  return 2;
}
