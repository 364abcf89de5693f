// Exercises the shared-library surface exactly the way a foreign-language
// binding would: opaque config, status codes, strings out, last_error.
#include "pqcscope.h"

#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Cfg {
  pqcscope_config* p;
  Cfg() : p(pqcscope_config_new()) { REQUIRE(p != nullptr); }
  ~Cfg() { pqcscope_config_free(p); }
};

struct Out {
  char* s = nullptr;
  ~Out() { pqcscope_string_free(s); }
  std::string str() const { return s ? std::string(s) : std::string(); }
};

fs::path fresh_dir(const char* tag) {
  fs::path dir = fs::temp_directory_path() / "pqcscope_capi_test" / tag;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("version and trivial lifetime calls are safe") {
  const char* v = pqcscope_version();
  REQUIRE(v != nullptr);
  CHECK(std::string(v) == "1.0.0");
  pqcscope_string_free(nullptr);
  pqcscope_config_free(nullptr);
}

TEST_CASE("null and invalid arguments come back as usage errors with messages") {
  Out out;
  CHECK(pqcscope_run_report(nullptr, &out.s) == PQCSCOPE_ERR_USAGE);
  CHECK(std::strlen(pqcscope_last_error()) > 0);

  Cfg cfg;
  CHECK(pqcscope_config_add_input(cfg.p, nullptr) == PQCSCOPE_ERR_USAGE);
  CHECK(pqcscope_config_set_protocol(cfg.p, "smtp") == PQCSCOPE_ERR_USAGE);
  CHECK(pqcscope_config_set_format(cfg.p, "xml") == PQCSCOPE_ERR_USAGE);
  CHECK(pqcscope_config_set_workers(cfg.p, 0) == PQCSCOPE_ERR_USAGE);
  CHECK(pqcscope_config_set_predicate(cfg.p, "sometimes") == PQCSCOPE_ERR_USAGE);
  CHECK(pqcscope_config_set_malformed_limit(cfg.p, 1.5) == PQCSCOPE_ERR_USAGE);
  CHECK(pqcscope_config_set_range(cfg.p, "not-a-date", nullptr) == PQCSCOPE_ERR_USAGE);
  CHECK(std::strlen(pqcscope_last_error()) > 0);

  CHECK(pqcscope_config_set_protocol(cfg.p, "ssh") == PQCSCOPE_OK);
  CHECK(pqcscope_config_set_format(cfg.p, "csv") == PQCSCOPE_OK);
  CHECK(pqcscope_config_set_workers(cfg.p, 4) == PQCSCOPE_OK);
  CHECK(pqcscope_config_set_range(cfg.p, "2023-01-01", "2024-05-01") == PQCSCOPE_OK);
  CHECK(pqcscope_last_error()[0] == '\0');
}

TEST_CASE("generate then report round-trips through the library") {
  fs::path dir = fresh_dir("roundtrip");
  Out gen;
  REQUIRE(pqcscope_generate("table2-ssh-day", 1.0, 5, dir.string().c_str(), &gen.s) ==
          PQCSCOPE_OK);
  json gen_doc = json::parse(gen.str());
  CHECK(gen_doc.at("schema") == "pqcscope-gen/1");
  CHECK(gen_doc.at("files").size() >= 1);

  Cfg cfg;
  REQUIRE(pqcscope_config_add_input(cfg.p, dir.string().c_str()) == PQCSCOPE_OK);
  Out report;
  REQUIRE(pqcscope_run_report(cfg.p, &report.s) == PQCSCOPE_OK);
  json doc = json::parse(report.str());
  CHECK(doc.at("schema") == "pqcscope-report/1");
  CHECK(doc.at("generated_at").is_null());
  CHECK(doc.at("protocols").at("ssh").at("connections") == 2519);

  // Same config, CSV rendering.
  REQUIRE(pqcscope_config_set_format(cfg.p, "csv") == PQCSCOPE_OK);
  Out csv;
  REQUIRE(pqcscope_run_report(cfg.p, &csv.s) == PQCSCOPE_OK);
  CHECK(csv.str().rfind("section,identifier,count,percent", 0) == 0);
}

TEST_CASE("an unknown profile and a matchless input map to distinct statuses") {
  fs::path dir = fresh_dir("empty");
  Out out;
  CHECK(pqcscope_generate("no-such-profile", 1.0, 0, dir.string().c_str(), &out.s) ==
        PQCSCOPE_ERR_USAGE);

  Cfg cfg;
  REQUIRE(pqcscope_config_add_input(cfg.p, dir.string().c_str()) == PQCSCOPE_OK);
  Out report;
  CHECK(pqcscope_run_report(cfg.p, &report.s) == PQCSCOPE_ERR_INPUT);
  CHECK(std::string(pqcscope_last_error()).find("no input files matched") !=
        std::string::npos);
}

TEST_CASE("simulate reports agreement or a negotiation failure") {
  Out ok;
  REQUIRE(pqcscope_simulate("sntrup761x25519-sha512@openssh.com,curve25519-sha256",
                            "sntrup761x25519-sha512@openssh.com", 1, 2,
                            &ok.s) == PQCSCOPE_OK);
  json doc = json::parse(ok.str());
  CHECK(doc.at("schema") == "pqcscope-handshake/1");
  CHECK(doc.at("hybrid") == true);
  CHECK(doc.at("keys_agree") == true);
  CHECK(doc.at("transcript").size() == 5);
  CHECK(doc.at("final_key").get<std::string>().size() == 128);

  Out fail;
  CHECK(pqcscope_simulate("curve25519-sha256", "ecdh-sha2-nistp256", 1, 2, &fail.s) ==
        PQCSCOPE_ERR_NEGOTIATION);
  CHECK(std::string(pqcscope_last_error()).find("share no key-exchange") !=
        std::string::npos);

  Out bad;
  CHECK(pqcscope_simulate("", "curve25519-sha256", 1, 2, &bad.s) == PQCSCOPE_ERR_USAGE);
}

TEST_CASE("parameter validation returns verdicts rather than failing the call") {
  Out all;
  REQUIRE(pqcscope_validate_params(nullptr, &all.s) == PQCSCOPE_OK);
  json doc = json::parse(all.str());
  CHECK(doc.at("all_passed") == true);
  CHECK(doc.at("reports").size() == 2);

  Out one;
  REQUIRE(pqcscope_validate_params("curve", &one.s) == PQCSCOPE_OK);
  json c = json::parse(one.str());
  CHECK(c.at("reports").size() == 1);
  CHECK(c.at("reports")[0].at("parameter_set") == "x25519-field");

  Out bad;
  CHECK(pqcscope_validate_params("bogus", &bad.s) == PQCSCOPE_ERR_USAGE);
}

TEST_CASE("series and asn runs work through the C surface") {
  fs::path dir = fresh_dir("series");
  Out gen;
  REQUIRE(pqcscope_generate("trend-2023-2024", 1.0, 3, dir.string().c_str(), &gen.s) ==
          PQCSCOPE_OK);

  Cfg cfg;
  REQUIRE(pqcscope_config_add_input(cfg.p, dir.string().c_str()) == PQCSCOPE_OK);
  Out series;
  REQUIRE(pqcscope_run_series(cfg.p, &series.s) == PQCSCOPE_OK);
  json doc = json::parse(series.str());
  CHECK(doc.at("schema") == "pqcscope-series/1");
  CHECK(doc.at("buckets").size() >= 12);
  CHECK(doc.at("trend").at("slope").get<double>() > 0.0);

  fs::path asn_dir = fresh_dir("asn");
  Out gen2;
  REQUIRE(pqcscope_generate("asn-head-tail", 1.0, 3, asn_dir.string().c_str(), &gen2.s) ==
          PQCSCOPE_OK);
  Cfg cfg2;
  REQUIRE(pqcscope_config_add_input(cfg2.p, asn_dir.string().c_str()) == PQCSCOPE_OK);

  // The histogram needs the prefix table; without one the call must say so.
  Out missing;
  CHECK(pqcscope_run_asn(cfg2.p, &missing.s) == PQCSCOPE_ERR_USAGE);

  fs::path table = asn_dir / "asn_table.csv";
  REQUIRE(pqcscope_config_set_asn_table(cfg2.p, table.string().c_str()) == PQCSCOPE_OK);
  Out asn;
  REQUIRE(pqcscope_run_asn(cfg2.p, &asn.s) == PQCSCOPE_OK);
  json asn_doc = json::parse(asn.str());
  CHECK(asn_doc.at("schema") == "pqcscope-asn/1");
  CHECK(asn_doc.at("pqc_total") > 0);
}
