#include "pqcscope.h"

#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pqcscope/analytics.hpp"
#include "pqcscope/kexmodel.hpp"
#include "pqcscope/loggen.hpp"
#include "pqcscope/runner.hpp"
#include "pqcscope/util.hpp"

namespace {

using nlohmann::json;
using namespace pqcscope;

thread_local std::string g_last_error;

pqcscope_status fail(pqcscope_status st, std::string message) {
  g_last_error = std::move(message);
  return st;
}

// Success clears the thread-local message, so last_error always describes
// the most recent call rather than a stale earlier one.
pqcscope_status ok() {
  g_last_error.clear();
  return PQCSCOPE_OK;
}

pqcscope_status deliver(char** out, const std::string& text) {
  if (!out) return fail(PQCSCOPE_ERR_USAGE, "output pointer is null");
  char* buf = static_cast<char*>(std::malloc(text.size() + 1));
  if (!buf) return fail(PQCSCOPE_ERR_INTERNAL, "out of memory");
  std::memcpy(buf, text.data(), text.size() + 1);
  *out = buf;
  return ok();
}

pqcscope_status status_of(const RunnerError& e) {
  switch (e.kind()) {
    case RunnerErrorKind::Usage:
      return PQCSCOPE_ERR_USAGE;
    case RunnerErrorKind::Io:
      return PQCSCOPE_ERR_INPUT;
    case RunnerErrorKind::DataQuality:
      return PQCSCOPE_ERR_DATA_QUALITY;
    case RunnerErrorKind::EmptyInput:
      return PQCSCOPE_ERR_INPUT;
  }
  return PQCSCOPE_ERR_INTERNAL;
}

std::optional<std::int64_t> parse_bound(const char* text) {
  std::string_view s(text);
  if (auto d = parse_date_micros(s)) return d;
  return parse_ts_micros(s);
}

json report_to_json(const ValidationReport& report, std::string_view parameter_set) {
  json checks = json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  }
  json doc = {{"parameter_set", std::string(parameter_set)},
              {"checks", std::move(checks)},
              {"all_passed", report.all_passed()}};
  if (report.w_in_range) doc["w_in_range"] = *report.w_in_range;
  return doc;
}

std::vector<std::string> split_prefs(const char* list) {
  std::vector<std::string> out;
  if (!list) return out;
  std::vector<std::string_view> parts;
  split_into(list, ',', parts);
  for (auto p : parts) {
    auto t = trim(p);
    if (!t.empty()) out.emplace_back(t);
  }
  return out;
}

}  // namespace

struct pqcscope_config {
  pqcscope::RunConfig impl;
};

namespace {

template <typename Fn>
pqcscope_status run_guarded(const pqcscope_config* cfg, char** out, Fn&& fn) {
  if (!cfg) return fail(PQCSCOPE_ERR_USAGE, "null config");
  try {
    return deliver(out, fn(cfg->impl));
  } catch (const RunnerError& e) {
    return fail(status_of(e), e.what());
  } catch (const std::exception& e) {
    return fail(PQCSCOPE_ERR_INTERNAL, e.what());
  }
}

}  // namespace

extern "C" {

pqcscope_config* pqcscope_config_new(void) {
  return new (std::nothrow) pqcscope_config();
}

void pqcscope_config_free(pqcscope_config* cfg) { delete cfg; }

pqcscope_status pqcscope_config_add_input(pqcscope_config* cfg, const char* path) {
  if (!cfg || !path) return fail(PQCSCOPE_ERR_USAGE, "null config or path");
  cfg->impl.inputs.emplace_back(path);
  return ok();
}

pqcscope_status pqcscope_config_set_protocol(pqcscope_config* cfg, const char* protocol) {
  if (!cfg || !protocol) return fail(PQCSCOPE_ERR_USAGE, "null config or protocol");
  std::string_view p(protocol);
  if (p != "ssh" && p != "tls" && p != "rdp") {
    return fail(PQCSCOPE_ERR_USAGE, "protocol must be ssh, tls, or rdp");
  }
  cfg->impl.protocol = std::string(p);
  return ok();
}

pqcscope_status pqcscope_config_set_registry(pqcscope_config* cfg, const char* path) {
  if (!cfg || !path) return fail(PQCSCOPE_ERR_USAGE, "null config or path");
  cfg->impl.registry_path = path;
  return ok();
}

pqcscope_status pqcscope_config_set_asn_table(pqcscope_config* cfg, const char* path) {
  if (!cfg || !path) return fail(PQCSCOPE_ERR_USAGE, "null config or path");
  cfg->impl.asn_table_path = path;
  return ok();
}

pqcscope_status pqcscope_config_set_range(pqcscope_config* cfg, const char* from,
                                          const char* to) {
  if (!cfg) return fail(PQCSCOPE_ERR_USAGE, "null config");
  std::optional<std::int64_t> from_us, to_us;
  if (from) {
    from_us = parse_bound(from);
    if (!from_us) {
      return fail(PQCSCOPE_ERR_USAGE, std::string("unparseable range start: ") + from);
    }
  }
  if (to) {
    to_us = parse_bound(to);
    if (!to_us) {
      return fail(PQCSCOPE_ERR_USAGE, std::string("unparseable range end: ") + to);
    }
  }
  if (from_us && to_us && *from_us > *to_us) {
    return fail(PQCSCOPE_ERR_USAGE, "range start is after its end");
  }
  cfg->impl.from_micros = from_us;
  cfg->impl.to_micros = to_us;
  return ok();
}

pqcscope_status pqcscope_config_set_format(pqcscope_config* cfg, const char* format) {
  if (!cfg || !format) return fail(PQCSCOPE_ERR_USAGE, "null config or format");
  std::string_view f(format);
  if (f == "json") {
    cfg->impl.format = OutputFormat::Json;
  } else if (f == "csv") {
    cfg->impl.format = OutputFormat::Csv;
  } else {
    return fail(PQCSCOPE_ERR_USAGE, "format must be json or csv");
  }
  return ok();
}

pqcscope_status pqcscope_config_set_workers(pqcscope_config* cfg, int workers) {
  if (!cfg) return fail(PQCSCOPE_ERR_USAGE, "null config");
  if (workers < 1) return fail(PQCSCOPE_ERR_USAGE, "worker count must be at least 1");
  cfg->impl.workers = workers;
  return ok();
}

pqcscope_status pqcscope_config_set_stamp(pqcscope_config* cfg, int enabled) {
  if (!cfg) return fail(PQCSCOPE_ERR_USAGE, "null config");
  cfg->impl.stamp = enabled != 0;
  return ok();
}

pqcscope_status pqcscope_config_set_predicate(pqcscope_config* cfg, const char* predicate) {
  if (!cfg || !predicate) return fail(PQCSCOPE_ERR_USAGE, "null config or predicate");
  if (!predicate_from_string(predicate)) {
    return fail(PQCSCOPE_ERR_USAGE, std::string("unknown predicate: ") + predicate);
  }
  cfg->impl.series_predicate = predicate;
  return ok();
}

pqcscope_status pqcscope_config_set_malformed_limit(pqcscope_config* cfg, double limit) {
  if (!cfg) return fail(PQCSCOPE_ERR_USAGE, "null config");
  if (!(limit >= 0.0 && limit <= 1.0)) {
    return fail(PQCSCOPE_ERR_USAGE, "malformed limit must be within [0, 1]");
  }
  cfg->impl.malformed_limit = limit;
  return ok();
}

pqcscope_status pqcscope_config_set_stale_cutoff(pqcscope_config* cfg, int year) {
  if (!cfg) return fail(PQCSCOPE_ERR_USAGE, "null config");
  cfg->impl.stale_cutoff_year = year;
  return ok();
}

pqcscope_status pqcscope_config_set_asn_top(pqcscope_config* cfg, size_t n) {
  if (!cfg) return fail(PQCSCOPE_ERR_USAGE, "null config");
  cfg->impl.asn_top = n;
  return ok();
}

pqcscope_status pqcscope_run_report(const pqcscope_config* cfg, char** out) {
  return run_guarded(cfg, out, [](const RunConfig& c) { return run_report(c); });
}

pqcscope_status pqcscope_run_series(const pqcscope_config* cfg, char** out) {
  return run_guarded(cfg, out, [](const RunConfig& c) { return run_series(c); });
}

pqcscope_status pqcscope_run_asn(const pqcscope_config* cfg, char** out) {
  return run_guarded(cfg, out, [](const RunConfig& c) { return run_asn(c); });
}

pqcscope_status pqcscope_run_alerts(const pqcscope_config* cfg, char** out) {
  return run_guarded(cfg, out, [](const RunConfig& c) { return run_alerts(c); });
}

pqcscope_status pqcscope_generate(const char* profile, double scale, uint64_t seed,
                                  const char* out_dir, char** out) {
  if (!profile || !out_dir) return fail(PQCSCOPE_ERR_USAGE, "null profile or directory");
  auto p = gen_profile_from_string(profile);
  if (!p) return fail(PQCSCOPE_ERR_USAGE, std::string("unknown profile: ") + profile);
  try {
    GenOptions opts;
    opts.profile = *p;
    opts.scale = scale;
    opts.seed = seed;
    opts.out_dir = out_dir;
    auto files = generate(opts);
    json listed = json::array();
    for (const auto& f : files) {
      listed.push_back({{"path", f.path.string()}, {"records", f.records}});
    }
    json doc = {{"schema", "pqcscope-gen/1"},
                {"profile", std::string(to_string(*p))},
                {"scale", scale},
                {"seed", seed},
                {"files", std::move(listed)}};
    return deliver(out, doc.dump(2) + "\n");
  } catch (const std::invalid_argument& e) {
    return fail(PQCSCOPE_ERR_USAGE, e.what());
  } catch (const std::exception& e) {
    return fail(PQCSCOPE_ERR_INPUT, e.what());
  }
}

pqcscope_status pqcscope_validate_params(const char* which, char** out) {
  std::string_view w = which ? std::string_view(which) : std::string_view("all");
  bool want_sntrup = w == "all" || w == "sntrup";
  bool want_curve = w == "all" || w == "curve";
  if (!want_sntrup && !want_curve) {
    return fail(PQCSCOPE_ERR_USAGE, "parameter set must be sntrup, curve, or all");
  }
  try {
    json reports = json::array();
    bool all = true;
    if (want_sntrup) {
      auto r = validate_sntrup_params(SntrupParams{});
      all = all && r.all_passed() && r.w_in_range.value_or(false);
      reports.push_back(report_to_json(r, "sntrup761"));
    }
    if (want_curve) {
      auto r = validate_curve_params(CurveParams{});
      all = all && r.all_passed();
      reports.push_back(report_to_json(r, "x25519-field"));
    }
    json doc = {{"schema", "pqcscope-params/1"},
                {"reports", std::move(reports)},
                {"all_passed", all}};
    return deliver(out, doc.dump(2) + "\n");
  } catch (const std::exception& e) {
    return fail(PQCSCOPE_ERR_INTERNAL, e.what());
  }
}

pqcscope_status pqcscope_simulate(const char* client_prefs, const char* server_prefs,
                                  uint64_t kem_seed, uint64_t ecdh_seed, char** out) {
  try {
    AlgorithmPolicy client(split_prefs(client_prefs));
    AlgorithmPolicy server(split_prefs(server_prefs));
    auto result = simulate_handshake(client, server, kem_seed, ecdh_seed);
    if (!result) {
      return fail(PQCSCOPE_ERR_NEGOTIATION,
                  "endpoints share no key-exchange algorithm");
    }
    json transcript = json::array();
    for (const auto& s : result->transcript) {
      transcript.push_back({{"step", s.name}, {"detail", s.detail}});
    }
    json doc = {{"schema", "pqcscope-handshake/1"},
                {"negotiated", result->negotiated},
                {"hybrid", result->hybrid},
                {"keys_agree", result->keys_agree()},
                {"final_key", to_hex(result->client_key)},
                {"transcript", std::move(transcript)}};
    return deliver(out, doc.dump(2) + "\n");
  } catch (const std::invalid_argument& e) {
    return fail(PQCSCOPE_ERR_USAGE, e.what());
  } catch (const std::exception& e) {
    return fail(PQCSCOPE_ERR_INTERNAL, e.what());
  }
}

void pqcscope_string_free(char* s) { std::free(s); }

const char* pqcscope_last_error(void) { return g_last_error.c_str(); }

const char* pqcscope_version(void) { return "1.0.0"; }

}  // extern "C"
