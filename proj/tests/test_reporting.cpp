#include <catch2/catch_amalgamated.hpp>

#include <gregory/battery.hpp>
#include <gregory/reporting.hpp>

using namespace gregory;

TEST_CASE("decimal rendering is fixed at 17 significant digits", "[reporting]") {
  REQUIRE(render_real(1.0) == "1.0");
  REQUIRE(render_real(0.5) == "0.5");
  REQUIRE(render_real(-4.0) == "-4.0");
  REQUIRE(render_real(0.0) == "0.0");
  REQUIRE(render_real(1.0 / 3.0) == "0.33333333333333331");
  REQUIRE(render_real(1e-300).find('e') != std::string::npos);
  REQUIRE(render_real(2.0 / (std::numbers::pi * std::numbers::pi)) == "0.20264236728467555");
}

TEST_CASE("check builders apply their policies", "[reporting]") {
  const VerificationRecord ok = check_abs("a", 1.0, 1.0 + 1e-12, 1e-10, "anchor");
  REQUIRE(ok.passed);
  REQUIRE(ok.policy == "abs");
  REQUIRE(ok.abs_error <= 1.1e-12);

  const VerificationRecord bad = check_abs("b", 1.0, 1.01, 1e-10, "anchor");
  REQUIRE_FALSE(bad.passed);

  const VerificationRecord rel = check_rel("c", 2.0, 2.0 + 1e-9, 1e-8, "anchor");
  REQUIRE(rel.passed);
  REQUIRE(rel.rel_error == Catch::Approx(5e-10).epsilon(1e-3));

  const VerificationRecord ex = check_exact("d", "x", "x", "anchor");
  REQUIRE(ex.passed);
  REQUIRE_FALSE(check_exact("e", "x", "y", "anchor").passed);
}

TEST_CASE("csv emission is headered and comma-free per field", "[reporting]") {
  std::vector<VerificationRecord> records{check_abs("one", 1.0, 1.0, 1e-10, "anchor-a"),
                                          check_rel("two", 2.0, 2.5, 1e-2, "anchor-b")};
  const std::string csv = records_to_csv(records);
  REQUIRE(csv.rfind("checkName,expected,computed,absError,relError,tolerance,policy,passed,"
                    "paperAnchor\n", 0) == 0);
  const auto lines = [&] {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start < csv.size()) {
      const auto nl = csv.find('\n', start);
      out.push_back(csv.substr(start, nl - start));
      start = nl + 1;
    }
    return out;
  }();
  REQUIRE(lines.size() == 3);
  for (const auto& line : lines)
    REQUIRE(std::count(line.begin(), line.end(), ',') == 8);  // 9 fields exactly
}

TEST_CASE("json emission carries config, records and summary", "[reporting]") {
  RunConfig cfg;
  cfg.format = OutputFormat::Json;
  std::vector<VerificationRecord> records{check_abs("one", 1.0, 1.0, 1e-10, "anchor"),
                                          check_abs("bad", 1.0, 2.0, 1e-10, "anchor")};
  const auto j = records_to_json(cfg, records);

  REQUIRE(j.contains("config"));
  REQUIRE(j["config"]["maxN"] == 50);
  REQUIRE(j["config"]["maxK"] == 25);
  REQUIRE(j["config"]["relTol"] == 1e-10);
  REQUIRE(j["config"]["format"] == "json");
  REQUIRE(j["config"]["out"].is_null());
  REQUIRE(j["config"]["jobs"] == 1);

  REQUIRE(j["records"].is_array());
  REQUIRE(j["records"].size() == 2);
  for (const auto& rec : j["records"]) {
    REQUIRE(rec.contains("checkName"));
    REQUIRE(rec["expected"].is_string());
    REQUIRE(rec["computed"].is_string());
    REQUIRE(rec["absError"].is_number());
    REQUIRE(rec["relError"].is_number());
    REQUIRE(rec["tolerance"].is_number());
    REQUIRE(rec["policy"].is_string());
    REQUIRE(rec["passed"].is_boolean());
    REQUIRE(rec["paperAnchor"].is_string());
  }

  REQUIRE(j["summary"]["total"] == 2);
  REQUIRE(j["summary"]["passed"] == 1);
  REQUIRE(j["summary"]["failed"] == 1);
  REQUIRE(j["summary"]["allPassed"] == false);
}

TEST_CASE("tolerances only loosen when explicitly set", "[reporting]") {
  REQUIRE(effective_tolerance(1e-8, 1e-6, true) == 1e-6);
  REQUIRE(effective_tolerance(1e-8, 1e-6, false) == 1e-8);
  REQUIRE(effective_tolerance(1e-8, 1e-12, true) == 1e-8);  // never tightens
}

TEST_CASE("bk2 rows render with blank quadrature at n = 0", "[reporting]") {
  RunConfig cfg;
  cfg.max_n = 2;
  const auto rows = make_bk2_rows(cfg);
  REQUIRE(rows.size() == 3);
  REQUIRE_FALSE(rows[0].quadrature.has_value());
  REQUIRE(rows[1].quadrature.has_value());
  REQUIRE(rows[2].quadrature.has_value());
  REQUIRE(*rows[2].quadrature < 0.0);  // signed reconstruction of b_2

  const std::string csv = bk2_rows_to_csv(rows);
  REQUIRE(csv.rfind("n,exact,decimal,quadrature,absDiff\n", 0) == 0);
  REQUIRE(csv.find("\n0,1,1.0,,\n") != std::string::npos);
  REQUIRE(csv.find("\n2,-1/12,") != std::string::npos);

  const auto j = bk2_rows_to_json(cfg, rows, 1e-10);
  REQUIRE(j["records"][0]["quadrature"].is_null());
  REQUIRE(j["records"][1]["quadrature"].is_number());
  REQUIRE(j["summary"]["allPassed"] == true);
}

TEST_CASE("verify-cm runner emits a certificate record", "[reporting]") {
  const CmRunResult good = run_verify_cm(20, 10);
  REQUIRE(good.certificate.holds);
  REQUIRE(good.record.passed);
  REQUIRE(good.record.policy == "exact");

  const std::vector<Rational> bad_seq{Rational(0), Rational(1)};
  const CmRunResult bad = run_verify_cm(1, 25, &bad_seq);
  REQUIRE_FALSE(bad.certificate.holds);
  REQUIRE_FALSE(bad.record.passed);
  REQUIRE(bad.record.computed.find("violation at k=1 n=0") != std::string::npos);
}

TEST_CASE("eval-f record carries both evaluations", "[reporting]") {
  const VerificationRecord rec = eval_f_record(Complex(1.0, 0.0), 1e-8);
  REQUIRE(rec.passed);
  REQUIRE(rec.abs_error <= 1e-8);
  REQUIRE(rec.expected.find('i') != std::string::npos);
  REQUIRE(rec.policy == "abs");
}

TEST_CASE("battery checks carry unique names and run clean", "[reporting][battery]") {
  RunConfig cfg;
  const auto checks = battery_checks(cfg);
  REQUIRE(checks.size() >= 80);

  std::vector<std::string> names;
  for (const auto& c : checks) names.push_back(c.name);
  std::sort(names.begin(), names.end());
  REQUIRE(std::adjacent_find(names.begin(), names.end()) == names.end());

  // spot-run two cheap groups end to end
  std::vector<CheckDef> subset;
  for (const auto& c : checks)
    if (c.group == "01-paper-table" || c.group == "08-mass-identities") subset.push_back(c);
  const auto records = run_checks(subset, 2);
  REQUIRE(records.size() == subset.size());
  for (const auto& rec : records) {
    CAPTURE(rec.check_name, rec.computed);
    REQUIRE(rec.passed);
  }
  // sorted by name once all pass
  for (std::size_t i = 1; i < records.size(); ++i)
    REQUIRE(records[i - 1].check_name < records[i].check_name);
}
