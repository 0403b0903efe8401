#include "sentinet/devsim.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace sentinet::devsim {

using nlohmann::json;

std::pair<double, TraceRecord> replay_next(const DeviceTrace& trace, Rng& rng,
                                           double mean_interval) {
  if (trace.records.empty()) throw std::invalid_argument("trace has no records");
  if (mean_interval <= 0.0) throw std::invalid_argument("mean interval must be positive");
  double delay = rng.exponential_mean(mean_interval);
  const TraceRecord& rec = trace.records[rng.uniform_below(trace.records.size())];
  return {delay, rec};
}

AttackKind attack_kind_from_string(const std::string& name) {
  if (name == "scan") return AttackKind::Scan;
  if (name == "flood") return AttackKind::Flood;
  if (name == "exfil") return AttackKind::Exfil;
  throw std::invalid_argument("unknown attack kind: " + name);
}

std::string attack_kind_name(AttackKind kind) {
  switch (kind) {
    case AttackKind::Scan: return "scan";
    case AttackKind::Flood: return "flood";
    case AttackKind::Exfil: return "exfil";
  }
  return "?";
}

std::vector<size_t> inject_attack(size_t population, const AttackProfile& profile,
                                  Rng& rng, std::string* warning) {
  if (population == 0) throw std::invalid_argument("population must be non-empty");
  profile.validate();
  double expected = profile.fraction * static_cast<double>(population);
  if (expected < 1.0) {
    if (warning && profile.fraction > 0.0)
      *warning = "attack fraction selects no device (fraction * population < 1)";
    return {};
  }
  size_t count = static_cast<size_t>(std::ceil(expected));

  // Partial Fisher-Yates over the index space.
  std::vector<size_t> indices(population);
  for (size_t i = 0; i < population; ++i) indices[i] = i;
  std::vector<size_t> chosen;
  chosen.reserve(count);
  for (size_t i = 0; i < count; ++i) {
    size_t j = i + static_cast<size_t>(rng.uniform_below(population - i));
    std::swap(indices[i], indices[j]);
    chosen.push_back(indices[i]);
  }
  return chosen;
}

TraceRecord attack_record(const AttackProfile& profile, size_t victim_index) {
  switch (profile.kind) {
    case AttackKind::Scan:
      return {Protocol::tcp(), "203.0.113." + std::to_string(victim_index % 250 + 1),
              23, Direction::Remote};
    case AttackKind::Flood:
      return {Protocol::tcp(), "198.51.100." + std::to_string(victim_index % 250 + 1),
              80, Direction::Remote};
    case AttackKind::Exfil:
      return {Protocol::tcp(), "exfil-sink.example", 8443, Direction::Remote};
  }
  throw std::logic_error("unreachable");
}

static DeviceTrace make_lifx_like() {
  DeviceTrace t;
  t.device_type = "lifx-like";
  t.records.push_back({Protocol::udp(), "time1.google.com", 123, Direction::Remote});
  t.records.push_back({Protocol::tcp(), "104.198.46.246", 56700, Direction::Remote});
  return t;
}

static DeviceTrace make_plug_like() {
  DeviceTrace t;
  t.device_type = "plug-like";
  t.records.push_back({Protocol::tcp(), "api.smartplug.example", 443, Direction::Remote});
  t.records.push_back({Protocol::udp(), "0.pool.ntp.org", 123, Direction::Remote});
  t.records.push_back({Protocol::tcp(), "fw.smartplug.example", 8443, Direction::Remote});
  return t;
}

static DeviceTrace make_tablet_like() {
  // General-purpose device: a long tail of distinct endpoints, so observed
  // behavior keeps growing for the whole run.
  DeviceTrace t;
  t.device_type = "tablet-like";
  for (int i = 0; i < 120; ++i)
    t.records.push_back({Protocol::tcp(), "cdn" + std::to_string(i) + ".media.example",
                         443, Direction::Remote});
  for (int i = 0; i < 40; ++i)
    t.records.push_back({Protocol::udp(), "push" + std::to_string(i) + ".apps.example",
                         443, Direction::Remote});
  for (int i = 0; i < 40; ++i)
    t.records.push_back({Protocol::tcp(), "svc" + std::to_string(i) + ".apps.example",
                         8080, Direction::Remote});
  return t;
}

const std::vector<DeviceTrace>& bundled_traces() {
  static const std::vector<DeviceTrace> traces = {make_lifx_like(), make_plug_like(),
                                                  make_tablet_like()};
  return traces;
}

const DeviceTrace& trace_by_label(const std::string& label) {
  for (const DeviceTrace& t : bundled_traces())
    if (t.device_type == label) return t;
  throw std::invalid_argument("unknown trace label: " + label);
}

bool has_trace_label(const std::string& label) {
  for (const DeviceTrace& t : bundled_traces())
    if (t.device_type == label) return true;
  return false;
}

static Protocol protocol_from_string(const std::string& s) {
  if (s == "TCP") return Protocol::tcp();
  if (s == "UDP") return Protocol::udp();
  if (s == "ICMP") return Protocol::icmp();
  if (s.rfind("OTHER", 0) == 0) {
    int code = std::stoi(s.substr(5));
    if (code < 0 || code > 255) throw std::invalid_argument("protocol code out of range");
    return Protocol::other(static_cast<uint8_t>(code));
  }
  throw std::invalid_argument("unknown protocol: " + s);
}

static std::string protocol_to_string(Protocol p) {
  switch (p.kind) {
    case sigcore::ProtocolKind::Tcp: return "TCP";
    case sigcore::ProtocolKind::Udp: return "UDP";
    case sigcore::ProtocolKind::Icmp: return "ICMP";
    case sigcore::ProtocolKind::Other: return "OTHER" + std::to_string(p.other_code);
  }
  return "?";
}

DeviceTrace load_trace(const std::filesystem::path& file, const std::string& label) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open trace file: " + file.string());
  DeviceTrace trace;
  trace.device_type = label;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw std::invalid_argument(file.string() + ":" + std::to_string(lineno) + ": " +
                                  e.what());
    }
    TraceRecord rec;
    rec.protocol = protocol_from_string(j.at("protocol").get<std::string>());
    rec.endpoint = j.at("endpoint").get<std::string>();
    int port = j.at("service_port").get<int>();
    if (port < 0 || port > 65535)
      throw std::invalid_argument("service_port out of range at line " +
                                  std::to_string(lineno));
    rec.service_port = static_cast<uint16_t>(port);
    std::string dir = j.at("direction").get<std::string>();
    if (dir == "L") rec.direction = Direction::Local;
    else if (dir == "R") rec.direction = Direction::Remote;
    else throw std::invalid_argument("direction must be L or R at line " +
                                     std::to_string(lineno));
    // Enforce the signature-field invariants up front.
    sigcore::canonical_signature_string(rec.materialize(0.0, "loader"));
    trace.records.push_back(std::move(rec));
  }
  if (trace.records.empty()) throw std::invalid_argument("trace file has no records");
  return trace;
}

void save_trace(const DeviceTrace& trace, const std::filesystem::path& file) {
  std::ofstream out(file);
  for (const TraceRecord& rec : trace.records) {
    json j;
    j["protocol"] = protocol_to_string(rec.protocol);
    j["endpoint"] = rec.endpoint;
    j["service_port"] = rec.service_port;
    j["direction"] = std::string(1, sigcore::direction_char(rec.direction));
    out << j.dump() << '\n';
  }
}

}  // namespace sentinet::devsim
