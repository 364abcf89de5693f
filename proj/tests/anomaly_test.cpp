#include "pqcscope/anomaly.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace pqcscope;

namespace {

constexpr const char* kHybrid = "sntrup761x25519-sha512@openssh.com";
constexpr const char* kClassic = "curve25519-sha256";

KexEvent ev(std::int64_t ts_sec, const char* client, const char* server,
            const char* kex, const char* banner = "SSH-2.0-OpenSSH_9.1p1",
            const char* uid = "C0") {
  KexEvent e;
  e.ts = ts_sec * 1'000'000LL;
  e.client_ip = *IpAddress::parse(client);
  e.server_ip = *IpAddress::parse(server);
  e.kex = kex;
  e.client_banner = banner;
  e.uid = uid;
  return e;
}

const std::chrono::seconds kHour(3600);

}  // namespace

TEST_CASE("a fallback after a hybrid negotiation raises one alert") {
  const auto& reg = CryptoRegistry::builtin();
  std::vector<KexEvent> events{
      ev(1000, "192.0.2.1", "203.0.113.1", kHybrid),
      ev(1500, "192.0.2.1", "203.0.113.1", kClassic),
  };
  auto alerts = detect_downgrades(events, reg, kHour);
  REQUIRE(alerts.size() == 1);
  CHECK(alerts[0].client_ip.str() == "192.0.2.1");
  CHECK(alerts[0].server_ip.str() == "203.0.113.1");
  CHECK(alerts[0].first_pqc_ts == 1000 * 1'000'000LL);
  CHECK(alerts[0].downgraded_ts == 1500 * 1'000'000LL);
  CHECK(alerts[0].pqc_kex == kHybrid);
  CHECK(alerts[0].fallback_kex == kClassic);
}

TEST_CASE("an episode of consecutive fallbacks is a single alert") {
  const auto& reg = CryptoRegistry::builtin();
  std::vector<KexEvent> events{
      ev(1000, "192.0.2.1", "203.0.113.1", kHybrid),
      ev(1100, "192.0.2.1", "203.0.113.1", kClassic, "SSH-2.0-OpenSSH_9.1p1", "C1"),
      ev(1200, "192.0.2.1", "203.0.113.1", kClassic, "SSH-2.0-OpenSSH_9.1p1", "C2"),
      ev(1300, "192.0.2.1", "203.0.113.1", kClassic, "SSH-2.0-OpenSSH_9.1p1", "C3"),
  };
  auto alerts = detect_downgrades(events, reg, kHour);
  REQUIRE(alerts.size() == 1);
  CHECK(alerts[0].downgraded_ts == 1100 * 1'000'000LL);
}

TEST_CASE("a fresh hybrid negotiation re-arms the detector") {
  const auto& reg = CryptoRegistry::builtin();
  std::vector<KexEvent> events{
      ev(1000, "192.0.2.1", "203.0.113.1", kHybrid),
      ev(1100, "192.0.2.1", "203.0.113.1", kClassic),
      ev(1200, "192.0.2.1", "203.0.113.1", kHybrid),
      ev(1300, "192.0.2.1", "203.0.113.1", kClassic),
  };
  auto alerts = detect_downgrades(events, reg, kHour);
  CHECK(alerts.size() == 2);
}

TEST_CASE("fallbacks outside the window or at the same instant do not fire") {
  const auto& reg = CryptoRegistry::builtin();
  std::vector<KexEvent> late{
      ev(1000, "192.0.2.1", "203.0.113.1", kHybrid),
      ev(1000 + 3601, "192.0.2.1", "203.0.113.1", kClassic),
  };
  CHECK(detect_downgrades(late, reg, kHour).empty());

  std::vector<KexEvent> same_instant{
      ev(1000, "192.0.2.1", "203.0.113.1", kHybrid),
      ev(1000, "192.0.2.1", "203.0.113.1", kClassic, "SSH-2.0-OpenSSH_9.1p1", "C9"),
  };
  CHECK(detect_downgrades(same_instant, reg, kHour).empty());

  std::vector<KexEvent> boundary{
      ev(1000, "192.0.2.1", "203.0.113.1", kHybrid),
      ev(1000 + 3600, "192.0.2.1", "203.0.113.1", kClassic),
  };
  CHECK(detect_downgrades(boundary, reg, kHour).size() == 1);  // inclusive edge
}

TEST_CASE("a strictly older client banner suppresses the alert") {
  const auto& reg = CryptoRegistry::builtin();
  std::vector<KexEvent> rollback{
      ev(1000, "192.0.2.1", "203.0.113.1", kHybrid, "SSH-2.0-OpenSSH_9.6"),
      ev(1500, "192.0.2.1", "203.0.113.1", kClassic, "SSH-2.0-OpenSSH_8.9p1"),
  };
  CHECK(detect_downgrades(rollback, reg, kHour).empty());

  std::vector<KexEvent> upgrade{
      ev(1000, "192.0.2.1", "203.0.113.1", kHybrid, "SSH-2.0-OpenSSH_9.1p1"),
      ev(1500, "192.0.2.1", "203.0.113.1", kClassic, "SSH-2.0-OpenSSH_9.6"),
  };
  CHECK(detect_downgrades(upgrade, reg, kHour).size() == 1);

  // Different software is not evidence of a rollback.
  std::vector<KexEvent> swapped{
      ev(1000, "192.0.2.1", "203.0.113.1", kHybrid, "SSH-2.0-OpenSSH_9.6"),
      ev(1500, "192.0.2.1", "203.0.113.1", kClassic, "SSH-2.0-dropbear_2022.83"),
  };
  CHECK(detect_downgrades(swapped, reg, kHour).size() == 1);
}

TEST_CASE("hybrid before classical in wall time fires regardless of input order") {
  const auto& reg = CryptoRegistry::builtin();
  std::vector<KexEvent> events{
      ev(1500, "192.0.2.1", "203.0.113.1", kClassic),
      ev(1000, "192.0.2.1", "203.0.113.1", kHybrid),
  };
  CHECK(detect_downgrades(events, reg, kHour).size() == 1);

  std::vector<KexEvent> reversed{
      ev(1500, "192.0.2.1", "203.0.113.1", kHybrid),
      ev(1000, "192.0.2.1", "203.0.113.1", kClassic),
  };
  CHECK(detect_downgrades(reversed, reg, kHour).empty());
}

TEST_CASE("pairs are independent and interleaving cannot change the alert set") {
  const auto& reg = CryptoRegistry::builtin();
  std::vector<KexEvent> events;
  // Pair A: one episode. Pair B: hybrid only. Pair C: classical only.
  events.push_back(ev(1000, "192.0.2.1", "203.0.113.1", kHybrid));
  events.push_back(ev(1100, "192.0.2.1", "203.0.113.1", kClassic));
  events.push_back(ev(1000, "192.0.2.2", "203.0.113.1", kHybrid));
  events.push_back(ev(1100, "192.0.2.2", "203.0.113.1", kHybrid));
  events.push_back(ev(1000, "192.0.2.3", "203.0.113.1", kClassic));
  events.push_back(ev(1100, "192.0.2.3", "203.0.113.1", kClassic));
  // The same client against another server is a separate pair.
  events.push_back(ev(1050, "192.0.2.1", "203.0.113.2", kClassic));

  auto baseline = detect_downgrades(events, reg, kHour);
  REQUIRE(baseline.size() == 1);
  CHECK(baseline[0].client_ip.str() == "192.0.2.1");

  std::mt19937 rng(11);
  for (int i = 0; i < 20; ++i) {
    auto shuffled = events;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    auto alerts = detect_downgrades(shuffled, reg, kHour);
    REQUIRE(alerts.size() == baseline.size());
    CHECK(alerts[0].downgraded_ts == baseline[0].downgraded_ts);
    CHECK(alerts[0].fallback_kex == baseline[0].fallback_kex);
  }
}

TEST_CASE("events without a kex algorithm are ignored") {
  const auto& reg = CryptoRegistry::builtin();
  std::vector<KexEvent> events{
      ev(1000, "192.0.2.1", "203.0.113.1", kHybrid),
      ev(1100, "192.0.2.1", "203.0.113.1", ""),
  };
  CHECK(detect_downgrades(events, reg, kHour).empty());
}

TEST_CASE("unknown kex values count as fallbacks once a hybrid was seen") {
  const auto& reg = CryptoRegistry::builtin();
  std::vector<KexEvent> events{
      ev(1000, "192.0.2.1", "203.0.113.1", kHybrid),
      ev(1100, "192.0.2.1", "203.0.113.1", "some-custom-kex"),
  };
  auto alerts = detect_downgrades(events, reg, kHour);
  REQUIRE(alerts.size() == 1);
  CHECK(alerts[0].fallback_kex == "some-custom-kex");
}

TEST_CASE("kex events project the fields the detector needs") {
  SshObservation o;
  o.conn.ts = 42;
  o.conn.uid = "Cuid";
  o.conn.orig_ip = *IpAddress::parse("192.0.2.9");
  o.conn.resp_ip = *IpAddress::parse("203.0.113.9");
  o.client_banner = "SSH-2.0-OpenSSH_9.6";
  o.kex_alg = kHybrid;
  auto e = kex_event_from(o);
  CHECK(e.ts == 42);
  CHECK(e.uid == "Cuid");
  CHECK(e.client_ip.str() == "192.0.2.9");
  CHECK(e.server_ip.str() == "203.0.113.9");
  CHECK(e.kex == kHybrid);
  CHECK(e.client_banner == "SSH-2.0-OpenSSH_9.6");
}

TEST_CASE("deprecation scan collects deprecated and insecure sightings") {
  const auto& reg = CryptoRegistry::builtin();
  DeprecationScan scan;

  SshObservation ssh;
  ssh.conn.uid = "Cssh1";
  ssh.kex_alg = "diffie-hellman-group1-sha1";
  ssh.host_key_alg = "ssh-rsa";
  ssh.cipher_alg = "aes128-ctr";  // classical: not a finding
  scan.add_ssh(ssh, reg);

  TlsObservation tls;
  tls.conn.uid = "Ctls1";
  tls.cipher_suite = "TLS_ECDHE_RSA_WITH_NULL_SHA";
  scan.add_tls(tls, reg);

  auto findings = scan.findings();
  REQUIRE(findings.size() == 3);
  // Sorted by protocol, then role: ssh/hostkey, ssh/kex, tls/suite.
  CHECK(findings[0].protocol == "ssh");
  CHECK(findings[0].role == "hostkey");
  CHECK(findings[0].identifier == "ssh-rsa");
  CHECK(findings[1].role == "kex");
  CHECK(findings[2].protocol == "tls");
  CHECK(findings[2].identifier == "TLS-ECDHE-RSA-WITH-NULL-SHA");
  CHECK(findings[2].cls == AlgorithmClass::Insecure);
  CHECK(findings[2].sample_uids == std::vector<std::string>{"Ctls1"});
}

TEST_CASE("deprecation scan caps samples and merges counts") {
  const auto& reg = CryptoRegistry::builtin();
  DeprecationScan a, b;
  for (int i = 0; i < 8; ++i) {
    SshObservation o;
    o.conn.uid = "Ca" + std::to_string(i);
    o.kex_alg = "diffie-hellman-group1-sha1";
    a.add_ssh(o, reg);
  }
  for (int i = 0; i < 8; ++i) {
    SshObservation o;
    o.conn.uid = "Cb" + std::to_string(i);
    o.kex_alg = "diffie-hellman-group1-sha1";
    b.add_ssh(o, reg);
  }
  a.merge(b);
  auto findings = a.findings();
  REQUIRE(findings.size() == 1);
  CHECK(findings[0].count == 16);
  CHECK(findings[0].sample_uids.size() == 10);
}
