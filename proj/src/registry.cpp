#include "pqcscope/registry.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "pqcscope/util.hpp"

namespace pqcscope {

namespace detail {
extern const char* const kDefaultRegistryText;
extern const char* const kDefaultVersionYearText;
}  // namespace detail

std::string_view to_string(AlgorithmClass c) {
  switch (c) {
    case AlgorithmClass::PostQuantumHybrid: return "post-quantum-hybrid";
    case AlgorithmClass::Classical: return "classical";
    case AlgorithmClass::Deprecated: return "deprecated";
    case AlgorithmClass::Insecure: return "insecure";
    case AlgorithmClass::Unknown: break;
  }
  return "unknown";
}

std::optional<AlgorithmClass> algorithm_class_from_string(std::string_view s) {
  if (s == "post-quantum-hybrid") return AlgorithmClass::PostQuantumHybrid;
  if (s == "classical") return AlgorithmClass::Classical;
  if (s == "deprecated") return AlgorithmClass::Deprecated;
  if (s == "insecure") return AlgorithmClass::Insecure;
  if (s == "unknown") return AlgorithmClass::Unknown;
  return std::nullopt;
}

namespace {

constexpr char kKeySep = '\x1F';

std::string make_key(std::string_view protocol, std::string_view role,
                     std::string_view identifier) {
  std::string key;
  key.reserve(protocol.size() + role.size() + identifier.size() + 2);
  key.append(protocol);
  key.push_back(kKeySep);
  key.append(role);
  key.push_back(kKeySep);
  key.append(identifier);
  return key;
}

bool known_role(std::string_view role) {
  return role == "kex" || role == "cipher" || role == "mac" || role == "hostkey" ||
         role == "suite" || role == "security_protocol";
}

[[noreturn]] void fail(std::string_view origin, size_t line_no, const std::string& what) {
  std::ostringstream os;
  os << origin << ":" << line_no << ": " << what;
  throw RegistryError(os.str());
}

std::string read_file_or_throw(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw RegistryError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

void CryptoRegistry::index_entry(size_t idx, std::string_view origin, size_t line_no) {
  const RegistryEntry& e = entries_[idx];
  auto add_key = [&](std::string_view id) {
    auto [it, inserted] = by_key_.emplace(make_key(e.protocol, e.role, id), idx);
    if (!inserted) {
      fail(origin, line_no,
           "duplicate registry key (" + e.protocol + ", " + e.role + ", " + std::string(id) +
               ")");
    }
  };
  add_key(e.identifier);
  if (!e.alias.empty()) add_key(e.alias);
}

CryptoRegistry CryptoRegistry::load_text(std::string_view text, std::string_view origin) {
  CryptoRegistry reg;
  std::vector<std::string_view> lines;
  split_into(text, '\n', lines);
  std::vector<std::string_view> fields;
  std::vector<std::pair<RegistryEntry, size_t>> pending;  // entry + line number
  std::vector<std::tuple<std::string, std::optional<std::string>, size_t>> statuses;

  for (size_t i = 0; i < lines.size(); ++i) {
    std::string_view line = lines[i];
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    size_t line_no = i + 1;
    if (line.empty() || line[0] == '#') continue;
    split_into(line, '\t', fields);
    if (fields.size() < 4 || fields.size() > 5) {
      fail(origin, line_no, "expected 4 or 5 tab-separated fields, got " +
                                std::to_string(fields.size()));
    }
    std::string_view identifier = fields[0];
    std::string_view protocol = fields[1];
    std::string_view role = fields[2];
    std::string_view cls_text = fields[3];
    if (identifier.empty() || protocol.empty() || role.empty()) {
      fail(origin, line_no, "empty field");
    }
    if (role == "status") {
      if (fields.size() != 4 || cls_text != "-") {
        fail(origin, line_no, "status rows take '-' in the class column and no alias");
      }
      std::optional<std::string> descriptor;
      if (identifier != "-") descriptor = std::string(identifier);
      statuses.emplace_back(std::string(protocol), std::move(descriptor), line_no);
      continue;
    }
    if (!known_role(role)) {
      fail(origin, line_no, "unknown role '" + std::string(role) + "'");
    }
    auto cls = algorithm_class_from_string(cls_text);
    if (!cls || *cls == AlgorithmClass::Unknown) {
      fail(origin, line_no, "unknown class '" + std::string(cls_text) + "'");
    }
    RegistryEntry entry{std::string(identifier), std::string(protocol), std::string(role),
                        *cls, fields.size() == 5 ? std::string(fields[4]) : std::string()};
    if (!entry.alias.empty() && entry.alias == entry.identifier) {
      fail(origin, line_no, "alias equals identifier");
    }
    pending.emplace_back(std::move(entry), line_no);
  }

  // Canonical internal order makes serialize() a fixed point of load_text.
  std::stable_sort(pending.begin(), pending.end(), [](const auto& a, const auto& b) {
    return std::tie(a.first.protocol, a.first.role, a.first.identifier) <
           std::tie(b.first.protocol, b.first.role, b.first.identifier);
  });
  reg.entries_.reserve(pending.size());
  for (auto& [entry, line_no] : pending) {
    reg.entries_.push_back(std::move(entry));
    reg.index_entry(reg.entries_.size() - 1, origin, line_no);
  }

  std::stable_sort(statuses.begin(), statuses.end(),
                   [](const auto& a, const auto& b) { return std::get<0>(a) < std::get<0>(b); });
  for (auto& [protocol, descriptor, line_no] : statuses) {
    for (const auto& existing : reg.status_rows_) {
      if (existing.first == protocol) {
        fail(origin, line_no, "duplicate status row for protocol '" + protocol + "'");
      }
    }
    reg.status_rows_.emplace_back(std::move(protocol), std::move(descriptor));
  }
  return reg;
}

CryptoRegistry CryptoRegistry::load_file(const std::filesystem::path& path) {
  return load_text(read_file_or_throw(path), path.string());
}

const CryptoRegistry& CryptoRegistry::builtin() {
  static const CryptoRegistry reg =
      load_text(detail::kDefaultRegistryText, "<builtin-registry>");
  return reg;
}

AlgorithmClass CryptoRegistry::classify(std::string_view protocol, std::string_view role,
                                        std::string_view identifier) const noexcept {
  thread_local std::string key;
  key.clear();
  key.append(protocol);
  key.push_back(kKeySep);
  key.append(role);
  key.push_back(kKeySep);
  key.append(identifier);
  auto it = by_key_.find(std::string_view(key));
  return it == by_key_.end() ? AlgorithmClass::Unknown : entries_[it->second].cls;
}

std::optional<std::string_view> CryptoRegistry::canonical_identifier(
    std::string_view protocol, std::string_view role, std::string_view identifier) const {
  auto it = by_key_.find(std::string_view(make_key(protocol, role, identifier)));
  if (it == by_key_.end()) return std::nullopt;
  return std::string_view(entries_[it->second].identifier);
}

ProtocolStatus CryptoRegistry::protocol_status(std::string_view protocol) const {
  for (const auto& [proto, descriptor] : status_rows_) {
    if (proto == protocol) return ProtocolStatus{proto, descriptor};
  }
  return ProtocolStatus{std::string(protocol), std::nullopt};
}

std::string CryptoRegistry::serialize() const {
  std::string out;
  for (const auto& e : entries_) {
    out += e.identifier;
    out += '\t';
    out += e.protocol;
    out += '\t';
    out += e.role;
    out += '\t';
    out += to_string(e.cls);
    if (!e.alias.empty()) {
      out += '\t';
      out += e.alias;
    }
    out += '\n';
  }
  for (const auto& [protocol, descriptor] : status_rows_) {
    out += descriptor ? *descriptor : "-";
    out += '\t';
    out += protocol;
    out += "\tstatus\t-\n";
  }
  return out;
}

CryptoRegistry::RoleView CryptoRegistry::role_view(std::string_view protocol,
                                                   std::string_view role) const {
  RoleView view;
  view.reg_ = this;
  view.key_prefix_ = make_key(protocol, role, "");
  return view;
}

AlgorithmClass CryptoRegistry::RoleView::classify(std::string_view identifier) const noexcept {
  thread_local std::string key;
  key.assign(key_prefix_);
  key.append(identifier);
  auto it = reg_->by_key_.find(std::string_view(key));
  return it == reg_->by_key_.end() ? AlgorithmClass::Unknown : reg_->entries_[it->second].cls;
}

std::optional<std::string_view> CryptoRegistry::RoleView::canonical(
    std::string_view identifier) const {
  thread_local std::string key;
  key.assign(key_prefix_);
  key.append(identifier);
  auto it = reg_->by_key_.find(std::string_view(key));
  if (it == reg_->by_key_.end()) return std::nullopt;
  return std::string_view(reg_->entries_[it->second].identifier);
}

VersionYearMap VersionYearMap::load_text(std::string_view text, std::string_view origin) {
  VersionYearMap map;
  std::vector<std::string_view> lines;
  split_into(text, '\n', lines);
  std::vector<std::string_view> fields;
  for (size_t i = 0; i < lines.size(); ++i) {
    std::string_view line = lines[i];
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    size_t line_no = i + 1;
    if (line.empty() || line[0] == '#') continue;
    split_into(line, '\t', fields);
    if (fields.size() != 3) {
      fail(origin, line_no, "expected 3 tab-separated fields, got " +
                                std::to_string(fields.size()));
    }
    if (fields[0].empty() || fields[1].empty()) fail(origin, line_no, "empty field");
    int year = 0;
    for (char c : fields[2]) {
      if (c < '0' || c > '9') fail(origin, line_no, "year is not a number");
      year = year * 10 + (c - '0');
    }
    if (year < 1999 || year > 2030) {
      fail(origin, line_no, "year " + std::to_string(year) + " outside [1999, 2030]");
    }
    Entry e{std::string(fields[0]), std::string(fields[1]), year};
    auto key = std::make_pair(e.software, e.version);
    if (map.index_.contains(key)) {
      fail(origin, line_no, "duplicate version entry " + e.software + " " + e.version);
    }
    map.index_.emplace(std::move(key), year);
    map.entries_.push_back(std::move(e));
  }
  std::stable_sort(map.entries_.begin(), map.entries_.end(), [](const auto& a, const auto& b) {
    if (a.software != b.software) return a.software < b.software;
    return compare_dotted_versions(a.version, b.version) < 0;
  });
  return map;
}

VersionYearMap VersionYearMap::load_file(const std::filesystem::path& path) {
  return load_text(read_file_or_throw(path), path.string());
}

const VersionYearMap& VersionYearMap::builtin() {
  static const VersionYearMap map =
      load_text(detail::kDefaultVersionYearText, "<builtin-version-years>");
  return map;
}

std::optional<int> VersionYearMap::release_year(std::string_view banner) const {
  auto info = parse_ssh_banner(banner);
  if (!info) return std::nullopt;
  // Patch components beyond major.minor don't carry their own release year.
  std::string_view v = info->version;
  size_t first = v.find('.');
  std::string short_ver;
  if (first != std::string_view::npos) {
    size_t second = v.find('.', first + 1);
    short_ver = std::string(v.substr(0, second));
  } else {
    short_ver = std::string(v);
  }
  auto it = index_.find(std::make_pair(info->software, short_ver));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::string VersionYearMap::serialize() const {
  std::string out;
  for (const auto& e : entries_) {
    out += e.software;
    out += '\t';
    out += e.version;
    out += '\t';
    out += std::to_string(e.year);
    out += '\n';
  }
  return out;
}

std::optional<BannerInfo> parse_ssh_banner(std::string_view banner) {
  banner = trim(banner);
  if (banner.empty()) return std::nullopt;
  if (starts_with(banner, "SSH-")) {
    size_t dash = banner.find('-', 4);
    if (dash == std::string_view::npos) return std::nullopt;
    banner = banner.substr(dash + 1);
  }
  size_t sp = banner.find(' ');
  std::string_view token = banner.substr(0, sp);
  size_t us = token.find('_');
  if (us == std::string_view::npos || us == 0 || us + 1 >= token.size()) return std::nullopt;
  std::string_view name = token.substr(0, us);
  std::string_view rest = token.substr(us + 1);
  std::string version;
  size_t i = 0;
  while (i < rest.size()) {
    if (rest[i] >= '0' && rest[i] <= '9') {
      version.push_back(rest[i]);
      ++i;
    } else if (rest[i] == '.' && !version.empty() && version.back() != '.' &&
               i + 1 < rest.size() && rest[i + 1] >= '0' && rest[i + 1] <= '9') {
      version.push_back('.');
      ++i;
    } else {
      break;
    }
  }
  if (version.empty()) return std::nullopt;
  return BannerInfo{std::string(name), std::move(version)};
}

int compare_dotted_versions(std::string_view a, std::string_view b) {
  size_t ia = 0, ib = 0;
  while (ia < a.size() || ib < b.size()) {
    unsigned long long va = 0, vb = 0;
    while (ia < a.size() && a[ia] >= '0' && a[ia] <= '9') {
      va = va * 10 + static_cast<unsigned long long>(a[ia] - '0');
      ++ia;
    }
    while (ib < b.size() && b[ib] >= '0' && b[ib] <= '9') {
      vb = vb * 10 + static_cast<unsigned long long>(b[ib] - '0');
      ++ib;
    }
    if (va != vb) return va < vb ? -1 : 1;
    // Skip to the next dot-delimited component; trailing junk within a
    // component ("p1") is not ordering-relevant.
    ia = a.find('.', ia);
    ib = b.find('.', ib);
    ia = (ia == std::string_view::npos) ? a.size() : ia + 1;
    ib = (ib == std::string_view::npos) ? b.size() : ib + 1;
  }
  return 0;
}

}  // namespace pqcscope
