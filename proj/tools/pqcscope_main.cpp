// Command-line front end. Everything goes through the C API in pqcscope.h;
// exit codes are the pqcscope_status values passed straight through.

#include <pqcscope.h>

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

namespace {

constexpr const char* kHybridKex = "sntrup761x25519-sha512@openssh.com";
constexpr const char* kClassicalKex = "curve25519-sha256";

struct CommonOpts {
  std::vector<std::string> inputs;
  std::string protocol;
  std::string registry;
  std::string asn_table;
  std::string from;
  std::string to;
  std::string format = "json";
  std::string predicate = "pqc";
  int workers = 1;
  bool stamp = false;
  double malformed_limit = 0.05;
  int stale_cutoff = 2019;
  std::size_t asn_top = 10;
};

void add_common(CLI::App* sub, CommonOpts& o) {
  sub->add_option("--input,-i", o.inputs,
                  "Log file, directory (recursed for *.log, *.log.gz), or glob")
      ->required();
  sub->add_option("--protocol", o.protocol, "Restrict to one log family: ssh, tls, rdp");
  sub->add_option("--registry", o.registry, "Algorithm classification table file");
  sub->add_option("--asn-table", o.asn_table, "CIDR-to-AS table (prefix,asn,organization)");
  sub->add_option("--from", o.from, "Range start, YYYY-MM-DD or epoch seconds (inclusive)");
  sub->add_option("--to", o.to, "Range end, YYYY-MM-DD or epoch seconds (exclusive)");
  sub->add_option("--format", o.format, "Output format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--workers", o.workers, "Parallel file ingest width")
      ->check(CLI::PositiveNumber);
  sub->add_flag("--stamp", o.stamp, "Stamp reports with wall-clock generation time");
  sub->add_option("--malformed-limit", o.malformed_limit,
                  "Fail when malformed/total line ratio exceeds this");
  sub->add_option("--stale-cutoff", o.stale_cutoff,
                  "Server software from this year or earlier counts as stale");
  sub->add_option("--top", o.asn_top, "Rows in the AS histogram");
}

struct ConfigHandle {
  pqcscope_config* ptr = nullptr;
  ~ConfigHandle() { pqcscope_config_free(ptr); }
};

int report_failure(pqcscope_status st) {
  std::fprintf(stderr, "pqcscope: %s\n", pqcscope_last_error());
  return static_cast<int>(st);
}

// Builds the C config; on failure prints the diagnostic and returns nonzero.
int build_config(const CommonOpts& o, ConfigHandle& handle) {
  handle.ptr = pqcscope_config_new();
  if (!handle.ptr) {
    std::fprintf(stderr, "pqcscope: out of memory\n");
    return static_cast<int>(PQCSCOPE_ERR_INTERNAL);
  }
  pqcscope_config* cfg = handle.ptr;
  for (const auto& in : o.inputs) {
    if (auto st = pqcscope_config_add_input(cfg, in.c_str()); st != PQCSCOPE_OK) {
      return report_failure(st);
    }
  }
  if (!o.protocol.empty()) {
    if (auto st = pqcscope_config_set_protocol(cfg, o.protocol.c_str()); st != PQCSCOPE_OK) {
      return report_failure(st);
    }
  }
  if (!o.registry.empty()) {
    if (auto st = pqcscope_config_set_registry(cfg, o.registry.c_str()); st != PQCSCOPE_OK) {
      return report_failure(st);
    }
  }
  if (!o.asn_table.empty()) {
    if (auto st = pqcscope_config_set_asn_table(cfg, o.asn_table.c_str());
        st != PQCSCOPE_OK) {
      return report_failure(st);
    }
  }
  if (!o.from.empty() || !o.to.empty()) {
    if (auto st = pqcscope_config_set_range(cfg, o.from.empty() ? nullptr : o.from.c_str(),
                                            o.to.empty() ? nullptr : o.to.c_str());
        st != PQCSCOPE_OK) {
      return report_failure(st);
    }
  }
  if (auto st = pqcscope_config_set_format(cfg, o.format.c_str()); st != PQCSCOPE_OK) {
    return report_failure(st);
  }
  if (auto st = pqcscope_config_set_workers(cfg, o.workers); st != PQCSCOPE_OK) {
    return report_failure(st);
  }
  if (auto st = pqcscope_config_set_stamp(cfg, o.stamp ? 1 : 0); st != PQCSCOPE_OK) {
    return report_failure(st);
  }
  if (auto st = pqcscope_config_set_predicate(cfg, o.predicate.c_str());
      st != PQCSCOPE_OK) {
    return report_failure(st);
  }
  if (auto st = pqcscope_config_set_malformed_limit(cfg, o.malformed_limit);
      st != PQCSCOPE_OK) {
    return report_failure(st);
  }
  if (auto st = pqcscope_config_set_stale_cutoff(cfg, o.stale_cutoff); st != PQCSCOPE_OK) {
    return report_failure(st);
  }
  if (auto st = pqcscope_config_set_asn_top(cfg, o.asn_top); st != PQCSCOPE_OK) {
    return report_failure(st);
  }
  return 0;
}

int emit(pqcscope_status st, char* out) {
  if (st != PQCSCOPE_OK) return report_failure(st);
  if (out) std::fputs(out, stdout);
  pqcscope_string_free(out);
  return 0;
}

// "pqc" and "classical" are accepted as shorthands inside preference lists.
std::string expand_kex_list(const std::string& list) {
  std::string out;
  std::size_t start = 0;
  while (start <= list.size()) {
    std::size_t comma = list.find(',', start);
    std::string item = list.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    if (item == "pqc") {
      item = kHybridKex;
    } else if (item == "classical") {
      item = kClassicalKex;
    }
    if (!out.empty()) out += ',';
    out += item;
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Post-quantum adoption measurement over Zeek connection logs"};
  app.set_version_flag("--version", std::string(pqcscope_version()));
  app.require_subcommand(1);

  CommonOpts report_opts, series_opts, asn_opts, alerts_opts;
  auto* report_cmd =
      app.add_subcommand("report", "Full adoption snapshot across the inputs");
  add_common(report_cmd, report_opts);

  auto* series_cmd =
      app.add_subcommand("series", "Monthly key-exchange counts with a linear trend");
  add_common(series_cmd, series_opts);
  series_cmd
      ->add_option("--predicate", series_opts.predicate,
                   "Bucket filter: pqc, classical, deprecated, insecure, any")
      ->check(CLI::IsMember({"pqc", "classical", "deprecated", "insecure", "any"}));

  auto* asn_cmd =
      app.add_subcommand("asn", "Per-AS histogram of post-quantum connections");
  add_common(asn_cmd, asn_opts);

  auto* alerts_cmd = app.add_subcommand(
      "alerts", "Downgrade episodes and deprecated-algorithm sightings");
  add_common(alerts_cmd, alerts_opts);

  std::string gen_profile;
  double gen_scale = 1.0;
  std::uint64_t gen_seed = 0;
  std::string gen_out = ".";
  auto* gen_cmd = app.add_subcommand("gen", "Write a synthetic fixture family");
  gen_cmd
      ->add_option("--profile", gen_profile,
                   "One of: table2-ssh-day, tls-top10, trend-2023-2024, asn-head-tail, "
                   "stale-servers-83, downgrade-episode")
      ->required();
  gen_cmd->add_option("--scale", gen_scale, "Count multiplier, > 0");
  gen_cmd->add_option("--seed", gen_seed, "Generator seed; same seed, same bytes");
  gen_cmd->add_option("--out", gen_out, "Output directory")->required();

  std::string client_kex = "pqc,classical";
  std::string server_kex = "pqc,classical";
  std::uint64_t kem_seed = 1, ecdh_seed = 2;
  bool sim_quiet = false;
  auto* sim_cmd = app.add_subcommand("simulate", "Run the desk-scale hybrid handshake");
  sim_cmd->add_option("--client-kex", client_kex,
                      "Client preference list (comma-separated; 'pqc' and 'classical' "
                      "expand to full identifiers)");
  sim_cmd->add_option("--server-kex", server_kex, "Server preference list");
  sim_cmd->add_option("--kem-seed", kem_seed, "Lattice-side randomness seed");
  sim_cmd->add_option("--ecdh-seed", ecdh_seed, "Curve-side randomness seed");
  sim_cmd->add_flag("--quiet", sim_quiet, "Suppress the transcript document");

  std::string param_set = "all";
  auto* val_cmd =
      app.add_subcommand("validate-params", "Check the modeled key-exchange parameters");
  val_cmd->add_option("--set", param_set, "Which set: sntrup, curve, all")
      ->check(CLI::IsMember({"sntrup", "curve", "all"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(PQCSCOPE_ERR_USAGE);
  }

  if (*report_cmd) {
    ConfigHandle h;
    if (int rc = build_config(report_opts, h); rc != 0) return rc;
    char* out = nullptr;
    auto st = pqcscope_run_report(h.ptr, &out);
    return emit(st, out);
  }
  if (*series_cmd) {
    ConfigHandle h;
    if (int rc = build_config(series_opts, h); rc != 0) return rc;
    char* out = nullptr;
    auto st = pqcscope_run_series(h.ptr, &out);
    return emit(st, out);
  }
  if (*asn_cmd) {
    ConfigHandle h;
    if (int rc = build_config(asn_opts, h); rc != 0) return rc;
    char* out = nullptr;
    auto st = pqcscope_run_asn(h.ptr, &out);
    return emit(st, out);
  }
  if (*alerts_cmd) {
    ConfigHandle h;
    if (int rc = build_config(alerts_opts, h); rc != 0) return rc;
    char* out = nullptr;
    auto st = pqcscope_run_alerts(h.ptr, &out);
    return emit(st, out);
  }
  if (*gen_cmd) {
    char* out = nullptr;
    auto st = pqcscope_generate(gen_profile.c_str(), gen_scale, gen_seed,
                                gen_out.c_str(), &out);
    return emit(st, out);
  }
  if (*sim_cmd) {
    std::string client = expand_kex_list(client_kex);
    std::string server = expand_kex_list(server_kex);
    char* out = nullptr;
    auto st = pqcscope_simulate(client.c_str(), server.c_str(), kem_seed, ecdh_seed, &out);
    if (st != PQCSCOPE_OK) return report_failure(st);
    if (!sim_quiet) std::fputs(out, stdout);
    pqcscope_string_free(out);
    return 0;
  }
  if (*val_cmd) {
    char* out = nullptr;
    auto st = pqcscope_validate_params(param_set.c_str(), &out);
    return emit(st, out);
  }
  return static_cast<int>(PQCSCOPE_ERR_USAGE);
}
