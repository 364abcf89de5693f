#include "pqcscope/asn.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "pqcscope/util.hpp"

namespace pqcscope {

namespace {

[[noreturn]] void fail(std::string_view origin, size_t line_no, const std::string& what) {
  std::ostringstream os;
  os << origin << ":" << line_no << ": " << what;
  throw std::runtime_error(os.str());
}

}  // namespace

void AsnTable::insert(size_t entry_idx) {
  const AsEntry& e = entries_[entry_idx];
  std::vector<Node>& trie = e.prefix.v4 ? trie4_ : trie6_;
  std::int32_t cur = 0;
  for (int i = 0; i < e.prefix_len; ++i) {
    int b = e.prefix.bit(i) ? 1 : 0;
    if (trie[cur].child[b] < 0) {
      trie[cur].child[b] = static_cast<std::int32_t>(trie.size());
      trie.emplace_back();
    }
    cur = trie[cur].child[b];
  }
  // Exact duplicate prefix: the later row wins, like a config override.
  trie[cur].entry = static_cast<std::int32_t>(entry_idx);
}

AsnTable AsnTable::load_text(std::string_view text, std::string_view origin) {
  AsnTable table;
  std::vector<std::string_view> lines;
  split_into(text, '\n', lines);
  for (size_t i = 0; i < lines.size(); ++i) {
    std::string_view line = trim(lines[i]);
    size_t line_no = i + 1;
    if (line.empty() || line[0] == '#') continue;
    size_t c1 = line.find(',');
    if (c1 == std::string_view::npos) fail(origin, line_no, "expected CIDR,ASN,org-name");
    size_t c2 = line.find(',', c1 + 1);
    if (c2 == std::string_view::npos) fail(origin, line_no, "expected CIDR,ASN,org-name");
    std::string_view cidr = trim(line.substr(0, c1));
    std::string_view asn_text = trim(line.substr(c1 + 1, c2 - c1 - 1));
    std::string_view org = trim(line.substr(c2 + 1));

    size_t slash = cidr.find('/');
    if (slash == std::string_view::npos) fail(origin, line_no, "CIDR missing '/'");
    auto addr = IpAddress::parse(cidr.substr(0, slash));
    if (!addr) fail(origin, line_no, "bad address in CIDR");
    int len = 0;
    std::string_view len_text = cidr.substr(slash + 1);
    if (len_text.empty() || len_text.size() > 3) fail(origin, line_no, "bad prefix length");
    for (char c : len_text) {
      if (c < '0' || c > '9') fail(origin, line_no, "bad prefix length");
      len = len * 10 + (c - '0');
    }
    if (len > addr->width()) fail(origin, line_no, "prefix length exceeds address width");

    std::uint64_t asn = 0;
    if (asn_text.empty()) fail(origin, line_no, "missing ASN");
    for (char c : asn_text) {
      if (c < '0' || c > '9') fail(origin, line_no, "ASN is not a number");
      asn = asn * 10 + static_cast<std::uint64_t>(c - '0');
      if (asn > 0xFFFFFFFFull) fail(origin, line_no, "ASN out of range");
    }

    AsEntry e;
    e.prefix = *addr;
    e.prefix_len = len;
    // Host bits below the prefix are masked off so lookups only see the net.
    for (int b = len; b < e.prefix.width(); ++b) {
      e.prefix.bytes[b >> 3] &= static_cast<std::uint8_t>(~(1u << (7 - (b & 7))));
    }
    e.asn = static_cast<std::uint32_t>(asn);
    e.org = std::string(org);
    table.entries_.push_back(std::move(e));
    table.insert(table.entries_.size() - 1);
  }
  return table;
}

AsnTable AsnTable::load_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_text(ss.str(), path.string());
}

std::optional<AsEntry> AsnTable::walk(const std::vector<Node>& trie,
                                      const IpAddress& addr) const {
  std::int32_t cur = 0;
  std::int32_t best = trie[0].entry;
  for (int i = 0; i < addr.width(); ++i) {
    cur = trie[cur].child[addr.bit(i) ? 1 : 0];
    if (cur < 0) break;
    if (trie[cur].entry >= 0) best = trie[cur].entry;
  }
  if (best < 0) return std::nullopt;
  return entries_[best];
}

std::optional<AsEntry> AsnTable::lookup(const IpAddress& addr) const {
  return walk(addr.v4 ? trie4_ : trie6_, addr);
}

void AsnCounter::add(const IpAddress& addr, const AsnTable& table) {
  ++total;
  auto hit = table.lookup(addr);
  if (!hit) {
    ++counts[0];
    orgs.emplace(0, "unknown");
    return;
  }
  ++counts[hit->asn];
  orgs.emplace(hit->asn, hit->org);
}

void AsnCounter::merge(const AsnCounter& other) {
  total += other.total;
  for (const auto& [asn, n] : other.counts) counts[asn] += n;
  for (const auto& [asn, org] : other.orgs) orgs.emplace(asn, org);
}

std::vector<AsnHistogramRow> top_asn_histogram(const AsnCounter& counter, size_t n) {
  std::vector<AsnHistogramRow> rows;
  rows.reserve(counter.counts.size());
  for (const auto& [asn, count] : counter.counts) {
    auto org = counter.orgs.find(asn);
    rows.push_back(AsnHistogramRow{asn, org == counter.orgs.end() ? "" : org->second, count});
  }
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    if (a.count != b.count) return a.count > b.count;
    return a.asn < b.asn;
  });
  if (rows.size() > n) rows.resize(n);
  return rows;
}

}  // namespace pqcscope
